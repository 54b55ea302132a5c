#pragma once

#include "presdist/cost.hpp"
#include "presdist/field.hpp"
#include "presdist/merge_tree.hpp"
#include "presdist/two_param.hpp"

#include <cstdint>
#include <vector>

namespace presdist {

/// Balanced-partition instance: a multiset of positive integers and a bin
/// count k with k | sum and sum >= 2.
struct BalPartInstance {
    std::vector<long long> sizes;
    int k = 1;

    BalPartInstance(std::vector<long long> sizes, int k);

    long long total() const;                          // n
    int element_count() const { return static_cast<int>(sizes.size()); }  // m
    long long bin_target() const { return total() / k; }                  // S-hat
};

/// Constrained-invertibility instance: two n x n zero patterns (true marks
/// a forced zero).
struct CIInstance {
    int n = 2;
    std::vector<std::vector<bool>> zero_p;
    std::vector<std::vector<bool>> zero_q;

    CIInstance(int n, std::vector<std::vector<bool>> zero_p, std::vector<std::vector<bool>> zero_q);

    int zero_count() const;  // K
};

/// Smallest even integer C with C^p >= 4^p * base; exact for integer p.
long long gadget_constant(const PExponent& p, long long base);

struct BalPartGadget {
    MergeTreePresentation tree_m;
    MergeTreePresentation tree_n;
    long long c = 0;
};

/// Merge trees M and N for a BAL-PART instance: n generators at -C on each
/// side; M chains its elements with relations at 0 inside an element and 2
/// between elements, N chains k equal bins with relations at 1 and 3.
BalPartGadget build_balpart_trees(const BalPartInstance& inst, const PExponent& p);

struct BalPartCertificate {
    MergeTreePresentation pres_p;
    MergeTreePresentation pres_q;
    MtSigma sigma;
    Cost cost;
    long long c = 0;
};

/// Rearranges the elements bin-by-bin so both chains are compatible under
/// the identity; every relation grade then differs by exactly 1 and the
/// cost is (n-1)^{1/p}. Throws SolutionInvalid unless the assignment is a
/// balanced partition.
BalPartCertificate balpart_certificate(const BalPartInstance& inst,
                                       const std::vector<int>& assignment, const PExponent& p);

struct AnchorInfo {
    int k = 0;           // 1-based anchor index
    bool from_p = true;  // zero of P (even x) or of Q (odd x)
    int row = 0, col = 0;  // 1-based zero position
    long long slot = 0;    // parity slot i in [-K, K]
    Grade2 point{};
};

struct CIGadget {
    TwoParamPresentation pres_m;
    TwoParamPresentation pres_n;
    long long c = 0;
    std::vector<AnchorInfo> anchors;
};

/// 2-parameter modules for a CI instance: (K+1)n generators and Kn
/// relations g_{k,i} - g_{inf,i} per side, graded around anchor points
/// (5i-5K-3, -5i-5K) with P-zeros on even and Q-zeros on odd x-slots.
CIGadget build_ci_modules(const CIInstance& inst, const PExponent& p, std::uint32_t q);

struct CISolutionPair {
    FieldMatrix a;
    FieldMatrix b;
};

struct CICertificate {
    TwoParamPresentation pres_m;
    TwoParamPresentation pres_n;
    FieldMatrix sigma;
    FieldMatrix iota_m;
    FieldMatrix iota_n;
    Cost cost;
};

/// The regenerated presentation pair realizing d^p = (Kn)^{1/p} from a CI
/// solution (S, T): per anchor, bases are rebuilt so that sigma pairs
/// generators one-to-one with grade gaps of exactly (+-1, 0). The basis of
/// the codimension-1 slice is completed greedily by standard basis vectors
/// in ascending index order. Throws SolutionInvalid unless (S, T) solves
/// the instance.
CICertificate ci_certificate(const CIInstance& inst, const CISolutionPair& solution,
                             const PExponent& p);

}  // namespace presdist
