#pragma once

#include "presdist/cost.hpp"
#include "presdist/merge_tree.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace presdist {

/// Partial matching between two barcodes; indices refer to positions in the
/// sorted interval lists of the respective barcodes. Pairs plus unmatched
/// lists together cover every interval exactly once.
struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> unmatched_x;
    std::vector<std::size_t> unmatched_y;
};

/// p-cost of a given matching: matched intervals pay the l^p distance of
/// their (birth, death) points, unmatched finite intervals pay the distance
/// to the diagonal, and any matching touching exactly one infinite interval
/// is unbounded. Throws std::invalid_argument on structurally invalid
/// matchings.
Cost p_cost(const Barcode& x, const Barcode& y, const Matching& m, const PExponent& exponent);

struct WassersteinResult {
    Cost cost;
    Matching matching;
};

/// p-Wasserstein distance via exact min-cost assignment on the
/// diagonal-augmented bipartite graph. Finite intervals are solved by the
/// Hungarian algorithm; infinite intervals are matched among themselves in
/// birth order (optimal for 1-d convex costs) and force an unbounded
/// distance when the two sides disagree in number. Requires finite p.
WassersteinResult wasserstein(const Barcode& x, const Barcode& y, const PExponent& exponent);

}  // namespace presdist
