#pragma once

#include "presdist/field.hpp"
#include "presdist/gadgets.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace presdist {

struct BalPartSolution {
    std::vector<int> assignment;  // bin index per element
};

struct SolverLimits {
    int max_elements = 20;        // BAL-PART backtracking
    double max_log2_space = 24;   // CI search: stars * log2(q)
};

/// Backtracking over bin assignments with bin-capacity pruning and
/// first-empty-bin symmetry breaking; returns the lexicographically least
/// solution or nullopt. Throws SizeLimitExceeded above the element limit.
std::optional<BalPartSolution> solve_balpart(const BalPartInstance& inst,
                                             const SolverLimits& limits = {});

bool verify_balpart(const BalPartInstance& inst, const BalPartSolution& solution);

/// Enumerates the star entries of A column by column (values ascending, star
/// rows ascending) with incremental column-independence pruning; each
/// full-rank candidate is inverted and checked against the Q pattern. The
/// first hit in this order is returned.
std::optional<CISolutionPair> solve_ci(const CIInstance& inst, std::uint32_t q,
                                       const SolverLimits& limits = {});

/// True iff A*B = I and both zero patterns are respected. Throws
/// std::invalid_argument on shape or modulus mismatch.
bool verify_ci(const CIInstance& inst, const CISolutionPair& solution);

}  // namespace presdist
