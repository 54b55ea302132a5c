#pragma once

#include "presdist/cost.hpp"
#include "presdist/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace presdist {

using Grade1 = Rational;

struct MtGenerator {
    int id = 0;
    Grade1 grade{};
};

/// A relation g = g' between two distinct generators, graded at or above
/// both endpoint grades.
struct MtRelation {
    int id = 0;
    int end_a = 0;
    int end_b = 0;
    Grade1 grade{};
};

/// Merge-tree presentation (G, R, gr): finite generator set, multiset of
/// 2-element relations, real grades with gr(r) >= gr(g), gr(g') for every
/// relation {g, g'}. Immutable after construction; the constructor validates
/// all structural invariants.
class MergeTreePresentation {
  public:
    MergeTreePresentation(std::vector<MtGenerator> generators, std::vector<MtRelation> relations);

    const std::vector<MtGenerator>& generators() const { return generators_; }
    const std::vector<MtRelation>& relations() const { return relations_; }

    const MtGenerator& generator_by_id(int id) const;
    const MtRelation& relation_by_id(int id) const;
    bool has_generator(int id) const { return gen_index_.count(id) > 0; }

    std::size_t generator_index(int id) const;

    /// Largest grade appearing among generators and relations.
    Grade1 max_grade() const;

  private:
    std::vector<MtGenerator> generators_;
    std::vector<MtRelation> relations_;
    std::map<int, std::size_t> gen_index_;
    std::map<int, std::size_t> rel_index_;
};

struct Interval {
    Grade1 birth{};
    std::optional<Grade1> death{};  // nullopt = infinite

    bool is_infinite() const { return !death.has_value(); }
    bool is_empty() const { return death.has_value() && *death == birth; }
    bool operator==(const Interval& other) const = default;
};

/// Strict weak order: by birth, then finite deaths ascending, infinite last.
bool interval_less(const Interval& a, const Interval& b);

/// Finite multiset of intervals, kept sorted; repetitions are stored
/// explicitly.
class Barcode {
  public:
    Barcode() = default;
    explicit Barcode(std::vector<Interval> intervals);

    const std::vector<Interval>& intervals() const { return intervals_; }
    std::size_t size() const { return intervals_.size(); }

    bool operator==(const Barcode& other) const = default;

  private:
    std::vector<Interval> intervals_;
};

/// Equivalence classes of generators with grade <= s under relations of
/// grade <= s. Classes are sorted by minimal member id, members ascending.
std::vector<std::vector<int>> components_at(const MergeTreePresentation& p, const Grade1& s);

/// True iff exactly one class remains at the top grade.
bool is_merge_tree(const MergeTreePresentation& p);

/// Earliest s at which g and h lie in the same class of G_s / ~_s. Throws
/// std::invalid_argument on unknown ids or when the generators never merge.
Grade1 mrg(const MergeTreePresentation& p, int g, int h);

/// Degree-0 barcode by the elder rule. Events are processed in (grade,
/// generators-first, id) order; at a merge the class whose eldest member is
/// younger dies (grade ties broken toward the larger id). Duplicate
/// relations pair with nothing and empty intervals are dropped.
Barcode barcode(const MergeTreePresentation& p);

/// Compatibility bijection between two merge-tree presentations.
struct MtSigma {
    std::map<int, int> generator_map;
    std::map<int, int> relation_map;

    static MtSigma identity_for(const MergeTreePresentation& p);
};

/// d^p across a given compatibility bijection. Throws
/// IncompatiblePresentations when sigma is not structure-preserving.
Cost dp_cost(const MergeTreePresentation& p, const MergeTreePresentation& q, const MtSigma& sigma,
             const PExponent& exponent);

struct MinSigmaResult {
    Cost cost;
    MtSigma sigma;
};

/// Brute-force minimum of dp_cost over all compatibility bijections.
/// nullopt when no bijection exists; throws SizeLimitExceeded above
/// max_generators.
std::optional<MinSigmaResult> min_sigma_cost(const MergeTreePresentation& p,
                                             const MergeTreePresentation& q,
                                             const PExponent& exponent,
                                             std::size_t max_generators = 8);

}  // namespace presdist
