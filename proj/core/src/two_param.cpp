#include "presdist/two_param.hpp"

#include "presdist/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace presdist {

TwoParamPresentation::TwoParamPresentation(std::uint32_t q, std::vector<TpGenerator> generators,
                                           std::vector<TpRelation> relations)
    : q_(q), generators_(std::move(generators)), relations_(std::move(relations)) {
    if (!is_prime_modulus(q)) {
        throw std::invalid_argument("presentation modulus must be a prime <= 251");
    }
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (!gen_index_.emplace(generators_[i].id, i).second) {
            throw std::invalid_argument("duplicate generator id " +
                                        std::to_string(generators_[i].id));
        }
    }
    std::set<int> rel_ids;
    for (auto& r : relations_) {
        if (!rel_ids.insert(r.id).second) {
            throw std::invalid_argument("duplicate relation id " + std::to_string(r.id));
        }
        for (auto it = r.coeffs.begin(); it != r.coeffs.end();) {
            it->second %= q_;
            if (it->second == 0) {
                it = r.coeffs.erase(it);
                continue;
            }
            auto g = gen_index_.find(it->first);
            if (g == gen_index_.end()) {
                throw std::invalid_argument("relation " + std::to_string(r.id) +
                                            " references unknown generator " +
                                            std::to_string(it->first));
            }
            if (!grade2_leq(generators_[g->second].grade, r.grade)) {
                throw std::invalid_argument("relation " + std::to_string(r.id) +
                                            " lies outside the span of generators at its grade");
            }
            ++it;
        }
    }
}

std::size_t TwoParamPresentation::generator_index(int id) const {
    auto it = gen_index_.find(id);
    if (it == gen_index_.end()) {
        throw std::invalid_argument("unknown generator id " + std::to_string(id));
    }
    return it->second;
}

std::vector<std::uint32_t> TwoParamPresentation::relation_vector(std::size_t rel_pos) const {
    return to_dense(relations_.at(rel_pos).coeffs);
}

std::vector<std::uint32_t> TwoParamPresentation::to_dense(const ModuleVector& v) const {
    std::vector<std::uint32_t> out(generators_.size(), 0);
    for (const auto& [id, value] : v) out[generator_index(id)] = value % q_;
    return out;
}

std::size_t dim_at(const TwoParamPresentation& p, const Grade2& pt) {
    std::vector<std::size_t> gens_in;
    for (std::size_t i = 0; i < p.generators().size(); ++i) {
        if (grade2_leq(p.generators()[i].grade, pt)) gens_in.push_back(i);
    }
    std::vector<std::vector<std::uint32_t>> rows;
    for (std::size_t r = 0; r < p.relations().size(); ++r) {
        if (!grade2_leq(p.relations()[r].grade, pt)) continue;
        const auto dense = p.relation_vector(r);
        std::vector<std::uint32_t> restricted(gens_in.size(), 0);
        for (std::size_t j = 0; j < gens_in.size(); ++j) restricted[j] = dense[gens_in[j]];
        rows.push_back(std::move(restricted));
    }
    if (rows.empty()) return gens_in.size();
    return gens_in.size() - rank(FieldMatrix::from_rows(rows, p.modulus()));
}

bool in_image(const TwoParamPresentation& p, const ModuleVector& v, const Grade2& pt) {
    const auto target = p.to_dense(v);
    std::vector<std::vector<std::uint32_t>> span;
    for (std::size_t i = 0; i < p.generators().size(); ++i) {
        if (!grade2_leq(p.generators()[i].grade, pt)) continue;
        std::vector<std::uint32_t> e(p.generators().size(), 0);
        e[i] = 1;
        span.push_back(std::move(e));
    }
    for (std::size_t r = 0; r < p.relations().size(); ++r) span.push_back(p.relation_vector(r));
    return solve_membership(span, target, p.modulus()).has_value();
}

namespace {

// Column targets of a sigma that carries basis vectors to basis vectors; a
// bijection or NotSigmaCompatible.
std::vector<std::size_t> sigma_generator_targets(const FieldMatrix& sigma, std::size_t n_from,
                                                 std::size_t n_to) {
    if (sigma.cols() != n_from || sigma.rows() != n_to || n_from != n_to) {
        throw NotSigmaCompatible("sigma has wrong shape for the generator sets");
    }
    if (!invert(sigma).has_value()) throw NotSigmaCompatible("sigma is not invertible");
    std::vector<std::size_t> target(n_from, 0);
    std::vector<bool> used(n_to, false);
    for (std::size_t j = 0; j < n_from; ++j) {
        std::size_t hit = n_to;
        for (std::size_t i = 0; i < n_to; ++i) {
            const std::uint32_t v = sigma.get(i, j);
            if (v == 0) continue;
            if (v != 1 || hit != n_to) {
                throw NotSigmaCompatible("sigma does not carry generators to generators");
            }
            hit = i;
        }
        if (hit == n_to || used[hit]) {
            throw NotSigmaCompatible("sigma does not restrict to a generator bijection");
        }
        used[hit] = true;
        target[j] = hit;
    }
    return target;
}

// Bijection between relation multisets respecting exact vector equality,
// charging the cheapest pairing inside each group of identical vectors.
template <typename CostFn>
Cost match_relations(const std::vector<std::vector<std::uint32_t>>& mapped_p,
                     const std::vector<std::vector<std::uint32_t>>& q_vectors,
                     const PExponent& exponent, CostFn&& pair_term) {
    if (mapped_p.size() != q_vectors.size()) {
        throw NotSigmaCompatible("relation counts differ");
    }
    std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> p_groups, q_groups;
    for (std::size_t i = 0; i < mapped_p.size(); ++i) p_groups[mapped_p[i]].push_back(i);
    for (std::size_t j = 0; j < q_vectors.size(); ++j) q_groups[q_vectors[j]].push_back(j);
    if (p_groups.size() != q_groups.size()) {
        throw NotSigmaCompatible("sigma does not carry relations to relations");
    }

    Cost total = Cost::zero(exponent);
    for (const auto& [vec, ps] : p_groups) {
        auto it = q_groups.find(vec);
        if (it == q_groups.end() || it->second.size() != ps.size()) {
            throw NotSigmaCompatible("sigma does not carry relations to relations");
        }
        const auto& qs = it->second;
        if (ps.size() == 1) {
            total.accumulate(exponent, pair_term(ps[0], qs[0]));
            continue;
        }
        if (ps.size() > 8) {
            throw SizeLimitExceeded("more than 8 relations share one vector");
        }
        std::vector<std::size_t> perm(ps.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::optional<Cost> best;
        do {
            Cost c = Cost::zero(exponent);
            for (std::size_t i = 0; i < ps.size(); ++i) {
                c.accumulate(exponent, pair_term(ps[i], qs[perm[i]]));
            }
            if (!best || compare(c, *best) < 0) best = c;
        } while (std::next_permutation(perm.begin(), perm.end()));
        total.accumulate(exponent, *best);
    }
    return total;
}

}  // namespace

Cost dp_cost2(const TwoParamPresentation& p, const TwoParamPresentation& q,
              const FieldMatrix& sigma, const PExponent& exponent) {
    if (p.modulus() != q.modulus() || sigma.modulus() != p.modulus()) {
        throw NotSigmaCompatible("modulus mismatch");
    }
    const auto target =
        sigma_generator_targets(sigma, p.generators().size(), q.generators().size());

    Cost total = Cost::zero(exponent);
    for (std::size_t j = 0; j < p.generators().size(); ++j) {
        const Grade2& a = p.generators()[j].grade;
        const Grade2& b = q.generators()[target[j]].grade;
        total.accumulate(exponent, Cost::term2(exponent, a.x - b.x, a.y - b.y));
    }

    std::vector<std::vector<std::uint32_t>> mapped_p, q_vectors;
    for (std::size_t r = 0; r < p.relations().size(); ++r) {
        mapped_p.push_back(sigma.apply(p.relation_vector(r)));
    }
    for (std::size_t r = 0; r < q.relations().size(); ++r) {
        q_vectors.push_back(q.relation_vector(r));
    }
    total.accumulate(exponent, match_relations(mapped_p, q_vectors, exponent,
                                               [&](std::size_t i, std::size_t j) {
                                                   const Grade2& a = p.relations()[i].grade;
                                                   const Grade2& b = q.relations()[j].grade;
                                                   return Cost::term2(exponent, a.x - b.x,
                                                                      a.y - b.y);
                                               }));
    return total;
}

Regeneration::Regeneration(TwoParamPresentation source_, TwoParamPresentation target_,
                           FieldMatrix iota_)
    : source(std::move(source_)), target(std::move(target_)), iota(std::move(iota_)) {
    if (source.generators().size() != target.generators().size()) {
        throw std::invalid_argument("regeneration requires equally many generators");
    }
    if (iota.rows() != target.generators().size() || iota.cols() != source.generators().size()) {
        throw std::invalid_argument("iota has the wrong shape");
    }
    if (iota.modulus() != source.modulus() || source.modulus() != target.modulus()) {
        throw std::invalid_argument("modulus mismatch in regeneration");
    }
    if (!invert(iota).has_value()) {
        throw std::invalid_argument("iota must be invertible");
    }
}

namespace {

bool spans_equal(const std::vector<std::vector<std::uint32_t>>& a,
                 const std::vector<std::vector<std::uint32_t>>& b, std::size_t dim,
                 std::uint32_t q) {
    if (a.empty() && b.empty()) return true;
    auto mk = [&](const std::vector<std::vector<std::uint32_t>>& rows) {
        return rows.empty() ? FieldMatrix(0, dim, q) : FieldMatrix::from_rows(rows, q);
    };
    const std::size_t ra = a.empty() ? 0 : rank(mk(a));
    const std::size_t rb = b.empty() ? 0 : rank(mk(b));
    if (ra != rb) return false;
    std::vector<std::vector<std::uint32_t>> both = a;
    both.insert(both.end(), b.begin(), b.end());
    return rank(mk(both)) == ra;
}

}  // namespace

bool check_regeneration(const Regeneration& reg) {
    std::set<Rational> xs, ys;
    auto collect = [&](const TwoParamPresentation& p) {
        for (const auto& g : p.generators()) {
            xs.insert(g.grade.x);
            ys.insert(g.grade.y);
        }
        for (const auto& r : p.relations()) {
            xs.insert(r.grade.x);
            ys.insert(r.grade.y);
        }
    };
    collect(reg.source);
    collect(reg.target);

    const std::size_t dim = reg.target.generators().size();
    const std::uint32_t q = reg.target.modulus();

    for (const auto& x : xs) {
        for (const auto& y : ys) {
            const Grade2 pt{x, y};
            std::vector<std::vector<std::uint32_t>> tgt_gens, src_gens, tgt_rels, src_rels;
            for (std::size_t i = 0; i < reg.target.generators().size(); ++i) {
                if (!grade2_leq(reg.target.generators()[i].grade, pt)) continue;
                std::vector<std::uint32_t> e(dim, 0);
                e[i] = 1;
                tgt_gens.push_back(std::move(e));
            }
            for (std::size_t i = 0; i < reg.source.generators().size(); ++i) {
                if (!grade2_leq(reg.source.generators()[i].grade, pt)) continue;
                src_gens.push_back(reg.iota.col(i));
            }
            if (!spans_equal(tgt_gens, src_gens, dim, q)) return false;
            for (std::size_t r = 0; r < reg.target.relations().size(); ++r) {
                if (!grade2_leq(reg.target.relations()[r].grade, pt)) continue;
                tgt_rels.push_back(reg.target.relation_vector(r));
            }
            for (std::size_t r = 0; r < reg.source.relations().size(); ++r) {
                if (!grade2_leq(reg.source.relations()[r].grade, pt)) continue;
                src_rels.push_back(reg.iota.apply(reg.source.relation_vector(r)));
            }
            if (!spans_equal(tgt_rels, src_rels, dim, q)) return false;
        }
    }
    return true;
}

Ordered1Param project_x(const TwoParamPresentation& p) {
    Ordered1Param out;
    out.q = p.modulus();
    for (const auto& g : p.generators()) out.gens.push_back({g.id, g.grade.x});
    for (const auto& r : p.relations()) {
        Ordered1Param::Rel rel;
        rel.id = r.id;
        rel.grade = r.grade.x;
        for (const auto& [gid, v] : r.coeffs) rel.coeffs.emplace_back(gid, v);
        out.rels.push_back(std::move(rel));
    }
    auto by_grade_id = [](const auto& a, const auto& b) {
        if (a.grade != b.grade) return a.grade < b.grade;
        return a.id < b.id;
    };
    std::sort(out.gens.begin(), out.gens.end(), by_grade_id);
    std::sort(out.rels.begin(), out.rels.end(), by_grade_id);
    return out;
}

OneParamPairing pairing_1param(const Ordered1Param& p) {
    const std::uint32_t q = p.q;
    std::map<int, std::size_t> row_of;
    for (std::size_t i = 0; i < p.gens.size(); ++i) row_of[p.gens[i].id] = i;

    // Sparse columns keyed by row; the pivot is the largest row index.
    using Column = std::map<std::size_t, std::uint32_t>;
    std::map<std::size_t, std::size_t> pivot_owner;  // pivot row -> column index
    std::vector<Column> reduced(p.rels.size());

    OneParamPairing out;
    for (std::size_t c = 0; c < p.rels.size(); ++c) {
        Column col;
        for (const auto& [gid, v] : p.rels[c].coeffs) {
            auto it = row_of.find(gid);
            if (it == row_of.end()) throw std::invalid_argument("relation references unknown id");
            if (v % q != 0) col[it->second] = v % q;
        }
        while (!col.empty()) {
            const std::size_t low = col.rbegin()->first;
            auto owner = pivot_owner.find(low);
            if (owner == pivot_owner.end()) break;
            const Column& other = reduced[owner->second];
            const std::uint32_t factor =
                field_mul(col.rbegin()->second, field_inv(other.rbegin()->second, q), q);
            for (const auto& [row, v] : other) {
                const std::uint32_t delta = field_mul(factor, v, q);
                auto it = col.find(row);
                const std::uint32_t next = field_sub(it == col.end() ? 0 : it->second, delta, q);
                if (next == 0) {
                    if (it != col.end()) col.erase(it);
                } else {
                    col[row] = next;
                }
            }
        }
        if (!col.empty()) {
            const std::size_t low = col.rbegin()->first;
            pivot_owner[low] = c;
            out.pairs.emplace_back(p.gens[low].id, p.rels[c].id);
            reduced[c] = std::move(col);
        }
    }
    for (std::size_t i = 0; i < p.gens.size(); ++i) {
        if (!pivot_owner.count(i)) out.unpaired_generators.push_back(p.gens[i].id);
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

Barcode barcode_1param(const Ordered1Param& p) {
    std::map<int, Rational> gen_grade, rel_grade;
    for (const auto& g : p.gens) gen_grade[g.id] = g.grade;
    for (const auto& r : p.rels) rel_grade[r.id] = r.grade;

    const OneParamPairing pairing = pairing_1param(p);
    std::vector<Interval> out;
    for (const auto& [gid, rid] : pairing.pairs) {
        out.push_back(Interval{gen_grade.at(gid), rel_grade.at(rid)});
    }
    for (int gid : pairing.unpaired_generators) {
        out.push_back(Interval{gen_grade.at(gid), std::nullopt});
    }
    return Barcode(std::move(out));
}

TParamPresentation lift_to_t(const TwoParamPresentation& p, int t) {
    if (t < 2) throw std::invalid_argument("lift requires t >= 2");
    TParamPresentation out;
    out.t = t;
    out.q = p.modulus();
    for (const auto& g : p.generators()) {
        std::vector<Rational> grade(static_cast<std::size_t>(t), Rational(0));
        grade[0] = g.grade.x;
        grade[1] = g.grade.y;
        out.gens.push_back({g.id, std::move(grade)});
    }
    for (const auto& r : p.relations()) {
        std::vector<Rational> grade(static_cast<std::size_t>(t), Rational(0));
        grade[0] = r.grade.x;
        grade[1] = r.grade.y;
        out.rels.push_back({r.id, r.coeffs, std::move(grade)});
    }
    return out;
}

TwoParamPresentation project_to_two(const TParamPresentation& p) {
    std::vector<TpGenerator> gens;
    std::vector<TpRelation> rels;
    for (const auto& g : p.gens) gens.push_back({g.id, Grade2{g.grade.at(0), g.grade.at(1)}});
    for (const auto& r : p.rels) {
        rels.push_back({r.id, r.coeffs, Grade2{r.grade.at(0), r.grade.at(1)}});
    }
    return TwoParamPresentation(p.q, std::move(gens), std::move(rels));
}

Cost dp_cost_t(const TParamPresentation& p, const TParamPresentation& q, const FieldMatrix& sigma,
               const PExponent& exponent) {
    if (p.t != q.t) throw NotSigmaCompatible("parameter counts differ");
    if (p.q != q.q || sigma.modulus() != p.q) throw NotSigmaCompatible("modulus mismatch");
    const auto target = sigma_generator_targets(sigma, p.gens.size(), q.gens.size());

    auto grade_term = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        Cost c = Cost::zero(exponent);
        for (std::size_t i = 0; i < a.size(); ++i) {
            c.accumulate(exponent, Cost::term(exponent, a[i] - b[i]));
        }
        return c;
    };

    Cost total = Cost::zero(exponent);
    for (std::size_t j = 0; j < p.gens.size(); ++j) {
        total.accumulate(exponent, grade_term(p.gens[j].grade, q.gens[target[j]].grade));
    }

    std::map<int, std::size_t> p_pos, q_pos;
    for (std::size_t i = 0; i < p.gens.size(); ++i) p_pos[p.gens[i].id] = i;
    for (std::size_t i = 0; i < q.gens.size(); ++i) q_pos[q.gens[i].id] = i;
    auto dense = [&](const std::map<int, std::uint32_t>& coeffs,
                     const std::map<int, std::size_t>& pos, std::size_t n) {
        std::vector<std::uint32_t> v(n, 0);
        for (const auto& [id, val] : coeffs) v[pos.at(id)] = val % p.q;
        return v;
    };
    std::vector<std::vector<std::uint32_t>> mapped_p, q_vectors;
    for (const auto& r : p.rels) {
        mapped_p.push_back(sigma.apply(dense(r.coeffs, p_pos, p.gens.size())));
    }
    for (const auto& r : q.rels) q_vectors.push_back(dense(r.coeffs, q_pos, q.gens.size()));

    total.accumulate(exponent, match_relations(mapped_p, q_vectors, exponent,
                                               [&](std::size_t i, std::size_t j) {
                                                   return grade_term(p.rels[i].grade,
                                                                     q.rels[j].grade);
                                               }));
    return total;
}

}  // namespace presdist
