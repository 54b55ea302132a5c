#pragma once

#include "presdist/cost.hpp"
#include "presdist/field.hpp"
#include "presdist/merge_tree.hpp"  // Interval, Barcode
#include "presdist/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace presdist {

struct Grade2 {
    Rational x{};
    Rational y{};

    bool operator==(const Grade2& other) const = default;
};

/// Componentwise product order on R^2.
inline bool grade2_leq(const Grade2& a, const Grade2& b) {
    return a.x <= b.x && a.y <= b.y;
}

struct TpGenerator {
    int id = 0;
    Grade2 grade{};
};

/// A relation is an element of F^G: sparse coefficients over generator ids.
struct TpRelation {
    int id = 0;
    std::map<int, std::uint32_t> coeffs;
    Grade2 grade{};
};

/// Element of F^G (or of its quotient by the relations), sparse over
/// generator ids.
using ModuleVector = std::map<int, std::uint32_t>;

/// Presentation of a 2-parameter persistence module over GF(q): graded
/// generators and graded relation vectors with every relation lying in the
/// span of generators at or below its grade. Immutable after validation.
class TwoParamPresentation {
  public:
    TwoParamPresentation(std::uint32_t q, std::vector<TpGenerator> generators,
                         std::vector<TpRelation> relations);

    std::uint32_t modulus() const { return q_; }
    const std::vector<TpGenerator>& generators() const { return generators_; }
    const std::vector<TpRelation>& relations() const { return relations_; }

    std::size_t generator_index(int id) const;
    bool has_generator(int id) const { return gen_index_.count(id) > 0; }

    /// Relation as a dense coordinate vector over generator positions.
    std::vector<std::uint32_t> relation_vector(std::size_t rel_pos) const;
    /// Sparse module vector to dense coordinates.
    std::vector<std::uint32_t> to_dense(const ModuleVector& v) const;

  private:
    std::uint32_t q_;
    std::vector<TpGenerator> generators_;
    std::vector<TpRelation> relations_;
    std::map<int, std::size_t> gen_index_;
};

/// dim M(P)_pt = |G_pt| - rank of the relations graded at or below pt.
std::size_t dim_at(const TwoParamPresentation& p, const Grade2& pt);

/// Whether the class of v in F^G / <R> lies in the image of M(P)_{pt -> inf},
/// i.e. v is in <G_pt> + <R>.
bool in_image(const TwoParamPresentation& p, const ModuleVector& v, const Grade2& pt);

/// d^p across a compatibility isomorphism sigma: F^{G_P} -> F^{G_Q}, given
/// as a matrix whose column at each P-generator position holds the image in
/// Q-generator coordinates. sigma must carry generators exactly to
/// generators and relation vectors exactly to relation vectors, bijectively;
/// when several relations share one vector the cheapest consistent pairing
/// is charged. Throws NotSigmaCompatible otherwise.
Cost dp_cost2(const TwoParamPresentation& p, const TwoParamPresentation& q,
              const FieldMatrix& sigma, const PExponent& exponent);

/// Change of generating basis iota: F^{G_source} -> F^{G_target} claimed to
/// preserve all graded spans.
struct Regeneration {
    TwoParamPresentation source;
    TwoParamPresentation target;
    FieldMatrix iota;

    Regeneration(TwoParamPresentation source, TwoParamPresentation target, FieldMatrix iota);
};

/// True iff <G_pt> = <iota(G'_pt)> and <R_pt> = <iota(R'_pt)> at every point
/// of the finite grid spanned by the coordinates occurring in either
/// presentation. Graded spans are constant between consecutive grid
/// coordinates, so the grid check settles all of R^2.
bool check_regeneration(const Regeneration& reg);

/// One-parameter presentation with the total order (grade, generators
/// before relations, id) baked into the element ordering.
struct Ordered1Param {
    struct Gen {
        int id = 0;
        Rational grade{};
    };
    struct Rel {
        int id = 0;
        std::vector<std::pair<int, std::uint32_t>> coeffs;  // (generator id, value)
        Rational grade{};
    };

    std::uint32_t q = 2;
    std::vector<Gen> gens;  // sorted by (grade, id)
    std::vector<Rel> rels;  // sorted by (grade, id)
};

/// Projection onto the x-axis: grades become x-coordinates.
Ordered1Param project_x(const TwoParamPresentation& p);

struct OneParamPairing {
    std::vector<std::pair<int, int>> pairs;  // (generator id, relation id)
    std::vector<int> unpaired_generators;
};

/// Standard persistence pairing of the ordered relation matrix: columns are
/// reduced left to right, a column pairs with the row of its final lowest
/// nonzero entry. The pairing depends only on the matrix and the order, not
/// on the grade values.
OneParamPairing pairing_1param(const Ordered1Param& p);

/// Barcode of the ordered presentation: [gr(g), gr(r)) per pair, [gr(g),
/// inf) per unpaired generator. Empty intervals are retained.
Barcode barcode_1param(const Ordered1Param& p);

/// t-parameter presentation; grades are length-t coordinate vectors.
struct TParamPresentation {
    struct Gen {
        int id = 0;
        std::vector<Rational> grade;
    };
    struct Rel {
        int id = 0;
        std::map<int, std::uint32_t> coeffs;
        std::vector<Rational> grade;
    };

    int t = 2;
    std::uint32_t q = 2;
    std::vector<Gen> gens;
    std::vector<Rel> rels;
};

/// Pads all grades with zeros in coordinates 3..t. Requires t >= 2.
TParamPresentation lift_to_t(const TwoParamPresentation& p, int t);

/// Drops coordinates beyond the first two; inverse of lift_to_t.
TwoParamPresentation project_to_two(const TParamPresentation& p);

/// d^p for t-parameter presentations across sigma, with the same
/// compatibility contract as dp_cost2.
Cost dp_cost_t(const TParamPresentation& p, const TParamPresentation& q, const FieldMatrix& sigma,
               const PExponent& exponent);

}  // namespace presdist
