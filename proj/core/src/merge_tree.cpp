#include "presdist/merge_tree.hpp"

#include "presdist/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace presdist {

namespace {

// Union-find over generator indices with path compression.
struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    // Returns false if already joined.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

}  // namespace

MergeTreePresentation::MergeTreePresentation(std::vector<MtGenerator> generators,
                                             std::vector<MtRelation> relations)
    : generators_(std::move(generators)), relations_(std::move(relations)) {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (!gen_index_.emplace(generators_[i].id, i).second) {
            throw std::invalid_argument("duplicate generator id " +
                                        std::to_string(generators_[i].id));
        }
    }
    for (std::size_t i = 0; i < relations_.size(); ++i) {
        const MtRelation& r = relations_[i];
        if (!rel_index_.emplace(r.id, i).second) {
            throw std::invalid_argument("duplicate relation id " + std::to_string(r.id));
        }
        if (r.end_a == r.end_b) {
            throw std::invalid_argument("relation " + std::to_string(r.id) +
                                        " must join two distinct generators");
        }
        auto a = gen_index_.find(r.end_a);
        auto b = gen_index_.find(r.end_b);
        if (a == gen_index_.end() || b == gen_index_.end()) {
            throw std::invalid_argument("relation " + std::to_string(r.id) +
                                        " references an unknown generator");
        }
        if (r.grade < generators_[a->second].grade || r.grade < generators_[b->second].grade) {
            throw std::invalid_argument("relation " + std::to_string(r.id) +
                                        " is graded below one of its endpoints");
        }
    }
}

const MtGenerator& MergeTreePresentation::generator_by_id(int id) const {
    auto it = gen_index_.find(id);
    if (it == gen_index_.end()) {
        throw std::invalid_argument("unknown generator id " + std::to_string(id));
    }
    return generators_[it->second];
}

const MtRelation& MergeTreePresentation::relation_by_id(int id) const {
    auto it = rel_index_.find(id);
    if (it == rel_index_.end()) {
        throw std::invalid_argument("unknown relation id " + std::to_string(id));
    }
    return relations_[it->second];
}

std::size_t MergeTreePresentation::generator_index(int id) const {
    return gen_index_.at(id);
}

Grade1 MergeTreePresentation::max_grade() const {
    Grade1 top{};
    bool seen = false;
    for (const auto& g : generators_) {
        if (!seen || g.grade > top) top = g.grade, seen = true;
    }
    for (const auto& r : relations_) {
        if (!seen || r.grade > top) top = r.grade, seen = true;
    }
    return top;
}

bool interval_less(const Interval& a, const Interval& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.is_infinite() != b.is_infinite()) return !a.is_infinite();
    if (a.is_infinite()) return false;
    return *a.death < *b.death;
}

Barcode::Barcode(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
    for (const auto& iv : intervals_) {
        if (!iv.is_infinite() && *iv.death < iv.birth) {
            throw std::invalid_argument("interval death below birth");
        }
    }
    std::sort(intervals_.begin(), intervals_.end(), interval_less);
}

std::vector<std::vector<int>> components_at(const MergeTreePresentation& p, const Grade1& s) {
    const auto& gens = p.generators();
    UnionFind uf(gens.size());
    for (const auto& r : p.relations()) {
        if (r.grade <= s) uf.unite(p.generator_index(r.end_a), p.generator_index(r.end_b));
    }
    std::map<std::size_t, std::vector<int>> classes;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].grade <= s) classes[uf.find(i)].push_back(gens[i].id);
    }
    std::vector<std::vector<int>> out;
    out.reserve(classes.size());
    for (auto& [root, members] : classes) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

bool is_merge_tree(const MergeTreePresentation& p) {
    if (p.generators().empty()) return false;
    return components_at(p, p.max_grade()).size() == 1;
}

Grade1 mrg(const MergeTreePresentation& p, int g, int h) {
    const std::size_t gi = p.generator_index(p.generator_by_id(g).id);
    const std::size_t hi = p.generator_index(p.generator_by_id(h).id);
    const Grade1 base = std::max(p.generator_by_id(g).grade, p.generator_by_id(h).grade);
    if (gi == hi) return base;

    std::vector<const MtRelation*> rels;
    rels.reserve(p.relations().size());
    for (const auto& r : p.relations()) rels.push_back(&r);
    std::sort(rels.begin(), rels.end(), [](const MtRelation* a, const MtRelation* b) {
        if (a->grade != b->grade) return a->grade < b->grade;
        return a->id < b->id;
    });

    UnionFind uf(p.generators().size());
    for (const MtRelation* r : rels) {
        uf.unite(p.generator_index(r->end_a), p.generator_index(r->end_b));
        if (uf.find(gi) == uf.find(hi)) return std::max(base, r->grade);
    }
    throw std::invalid_argument("generators never merge; not a merge tree");
}

Barcode barcode(const MergeTreePresentation& p) {
    const auto& gens = p.generators();

    // Class birth key: (grade, id) of the eldest member; grade ties resolved
    // toward the smaller id, so the surviving class under the elder rule is
    // the one with the smaller key.
    struct Key {
        Grade1 grade;
        int id;
        bool operator<(const Key& o) const {
            if (grade != o.grade) return grade < o.grade;
            return id < o.id;
        }
    };

    std::vector<const MtRelation*> rels;
    rels.reserve(p.relations().size());
    for (const auto& r : p.relations()) rels.push_back(&r);
    std::sort(rels.begin(), rels.end(), [](const MtRelation* a, const MtRelation* b) {
        if (a->grade != b->grade) return a->grade < b->grade;
        return a->id < b->id;
    });

    UnionFind uf(gens.size());
    std::vector<Key> key(gens.size(), Key{Grade1{}, 0});
    for (std::size_t i = 0; i < gens.size(); ++i) key[i] = Key{gens[i].grade, gens[i].id};

    std::vector<Interval> out;
    for (const MtRelation* r : rels) {
        std::size_t a = uf.find(p.generator_index(r->end_a));
        std::size_t b = uf.find(p.generator_index(r->end_b));
        if (a == b) continue;  // duplicate relation, pairs with nothing
        if (key[b] < key[a]) std::swap(a, b);
        // class rooted at b dies
        if (key[b].grade != r->grade) {
            out.push_back(Interval{key[b].grade, r->grade});
        }
        uf.unite(a, b);
        key[uf.find(a)] = key[a];
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (uf.find(i) == i) out.push_back(Interval{key[i].grade, std::nullopt});
    }
    return Barcode(std::move(out));
}

MtSigma MtSigma::identity_for(const MergeTreePresentation& p) {
    MtSigma s;
    for (const auto& g : p.generators()) s.generator_map[g.id] = g.id;
    for (const auto& r : p.relations()) s.relation_map[r.id] = r.id;
    return s;
}

Cost dp_cost(const MergeTreePresentation& p, const MergeTreePresentation& q, const MtSigma& sigma,
             const PExponent& exponent) {
    if (sigma.generator_map.size() != p.generators().size() ||
        sigma.generator_map.size() != q.generators().size() ||
        sigma.relation_map.size() != p.relations().size() ||
        sigma.relation_map.size() != q.relations().size()) {
        throw IncompatiblePresentations("sigma does not cover both presentations");
    }
    std::map<int, int> seen_gen_targets;
    Cost total = Cost::zero(exponent);
    for (const auto& [pid, qid] : sigma.generator_map) {
        const auto& pg = p.generator_by_id(pid);
        const auto& qg = q.generator_by_id(qid);
        if (!seen_gen_targets.emplace(qid, pid).second) {
            throw IncompatiblePresentations("sigma maps two generators to the same target");
        }
        total.accumulate(exponent, Cost::term(exponent, pg.grade - qg.grade));
    }
    std::map<int, int> seen_rel_targets;
    for (const auto& [pid, qid] : sigma.relation_map) {
        const auto& pr = p.relation_by_id(pid);
        const auto& qr = q.relation_by_id(qid);
        if (!seen_rel_targets.emplace(qid, pid).second) {
            throw IncompatiblePresentations("sigma maps two relations to the same target");
        }
        const int ma = sigma.generator_map.at(pr.end_a);
        const int mb = sigma.generator_map.at(pr.end_b);
        const bool same = (ma == qr.end_a && mb == qr.end_b) || (ma == qr.end_b && mb == qr.end_a);
        if (!same) {
            throw IncompatiblePresentations("sigma does not preserve relation endpoints");
        }
        total.accumulate(exponent, Cost::term(exponent, pr.grade - qr.grade));
    }
    return total;
}

namespace {

// Optimal assignment of sorted 1-d grade lists; for convex |.|^p (and for
// the max norm) the in-order pairing is optimal.
Cost sorted_pair_cost(std::vector<Grade1> a, std::vector<Grade1> b, const PExponent& exponent) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    Cost total = Cost::zero(exponent);
    for (std::size_t i = 0; i < a.size(); ++i) {
        total.accumulate(exponent, Cost::term(exponent, a[i] - b[i]));
    }
    return total;
}

}  // namespace

std::optional<MinSigmaResult> min_sigma_cost(const MergeTreePresentation& p,
                                             const MergeTreePresentation& q,
                                             const PExponent& exponent,
                                             std::size_t max_generators) {
    if (p.generators().size() != q.generators().size() ||
        p.relations().size() != q.relations().size()) {
        return std::nullopt;
    }
    if (p.generators().size() > max_generators) {
        throw SizeLimitExceeded("min_sigma_cost limited to " + std::to_string(max_generators) +
                                " generators");
    }

    const std::size_t n = p.generators().size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    std::optional<MinSigmaResult> best;
    do {
        // generator map candidate: p.generators()[i] -> q.generators()[perm[i]]
        Cost gen_cost = Cost::zero(exponent);
        for (std::size_t i = 0; i < n; ++i) {
            gen_cost.accumulate(exponent, Cost::term(exponent, p.generators()[i].grade -
                                                                   q.generators()[perm[i]].grade));
        }

        // Relations must map class-by-class: group by (mapped) endpoint pair.
        std::map<std::pair<int, int>, std::vector<const MtRelation*>> p_groups;
        std::map<std::pair<int, int>, std::vector<const MtRelation*>> q_groups;
        std::map<int, int> gen_map;
        for (std::size_t i = 0; i < n; ++i) {
            gen_map[p.generators()[i].id] = q.generators()[perm[i]].id;
        }
        bool feasible = true;
        for (const auto& r : p.relations()) {
            int a = gen_map.at(r.end_a), b = gen_map.at(r.end_b);
            if (b < a) std::swap(a, b);
            p_groups[{a, b}].push_back(&r);
        }
        for (const auto& r : q.relations()) {
            int a = r.end_a, b = r.end_b;
            if (b < a) std::swap(a, b);
            q_groups[{a, b}].push_back(&r);
        }
        if (p_groups.size() != q_groups.size()) feasible = false;
        Cost rel_cost = Cost::zero(exponent);
        MtSigma sigma;
        sigma.generator_map = gen_map;
        if (feasible) {
            for (const auto& [ends, prs] : p_groups) {
                auto it = q_groups.find(ends);
                if (it == q_groups.end() || it->second.size() != prs.size()) {
                    feasible = false;
                    break;
                }
                std::vector<Grade1> pg, qg;
                for (const auto* r : prs) pg.push_back(r->grade);
                for (const auto* r : it->second) qg.push_back(r->grade);
                rel_cost.accumulate(exponent, sorted_pair_cost(pg, qg, exponent));

                // record the in-order pairing for the returned sigma
                auto ps = prs;
                auto qs = it->second;
                std::sort(ps.begin(), ps.end(), [](const MtRelation* x, const MtRelation* y) {
                    if (x->grade != y->grade) return x->grade < y->grade;
                    return x->id < y->id;
                });
                std::sort(qs.begin(), qs.end(), [](const MtRelation* x, const MtRelation* y) {
                    if (x->grade != y->grade) return x->grade < y->grade;
                    return x->id < y->id;
                });
                for (std::size_t i = 0; i < ps.size(); ++i) {
                    sigma.relation_map[ps[i]->id] = qs[i]->id;
                }
            }
        }
        if (!feasible) continue;
        Cost total = gen_cost;
        total.accumulate(exponent, rel_cost);
        if (!best || compare(total, best->cost) < 0) {
            best = MinSigmaResult{total, std::move(sigma)};
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    return best;
}

}  // namespace presdist
