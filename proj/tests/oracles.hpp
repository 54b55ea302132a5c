// Test-only oracles, deliberately independent of the implementation paths
// they check: the barcode oracle only calls components_at and diffs class
// counts, and the matching oracle enumerates every partial matching.
#pragma once

#include "presdist/matching.hpp"
#include "presdist/merge_tree.hpp"
#include "presdist/two_param.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace presdist::testing {

/// Barcode multiset from rank counts: rank(b, d) = number of classes at
/// grade d containing a generator born at or before b; interval
/// multiplicities follow by inclusion-exclusion over consecutive critical
/// grades. Produces no empty intervals, matching barcode()'s convention.
inline Barcode oracle_merge_barcode(const MergeTreePresentation& p) {
    std::set<Grade1> crit_set;
    for (const auto& g : p.generators()) crit_set.insert(g.grade);
    for (const auto& r : p.relations()) crit_set.insert(r.grade);
    const std::vector<Grade1> crit(crit_set.begin(), crit_set.end());
    if (crit.empty()) return Barcode{};

    auto rank_at = [&](std::ptrdiff_t b, std::ptrdiff_t d) -> int {
        if (b < 0 || d < 0) return 0;
        int count = 0;
        for (const auto& cls : components_at(p, crit[static_cast<std::size_t>(d)])) {
            for (int id : cls) {
                if (p.generator_by_id(id).grade <= crit[static_cast<std::size_t>(b)]) {
                    ++count;
                    break;
                }
            }
        }
        return count;
    };

    std::vector<Interval> out;
    const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(crit.size()) - 1;
    for (std::ptrdiff_t b = 0; b <= last; ++b) {
        for (std::ptrdiff_t d = b + 1; d <= last; ++d) {
            const int mult =
                rank_at(b, d - 1) - rank_at(b, d) - rank_at(b - 1, d - 1) + rank_at(b - 1, d);
            for (int i = 0; i < mult; ++i) {
                out.push_back(Interval{crit[static_cast<std::size_t>(b)],
                                       crit[static_cast<std::size_t>(d)]});
            }
        }
        const int inf_mult = rank_at(b, last) - rank_at(b - 1, last);
        for (int i = 0; i < inf_mult; ++i) {
            out.push_back(Interval{crit[static_cast<std::size_t>(b)], std::nullopt});
        }
    }
    return Barcode(std::move(out));
}

/// Exhaustive minimum over all partial matchings; only sensible for tiny
/// barcodes.
inline Cost oracle_wasserstein(const Barcode& x, const Barcode& y, const PExponent& p) {
    const auto& xs = x.intervals();
    const auto& ys = y.intervals();
    std::vector<bool> used(ys.size(), false);

    Cost best = Cost::infinite();
    auto drop_cost = [&](const Interval& iv) {
        if (iv.is_infinite()) return Cost::infinite();
        const Rational half = (*iv.death - iv.birth) / 2;
        return Cost::term2(p, half, half);
    };
    auto pair_cost = [&](const Interval& a, const Interval& b) {
        if (a.is_infinite() != b.is_infinite()) return Cost::infinite();
        if (a.is_infinite()) return Cost::term(p, a.birth - b.birth);
        return Cost::term2(p, a.birth - b.birth, *a.death - *b.death);
    };

    auto rec = [&](auto&& self, std::size_t i, Cost acc) -> void {
        if (acc.unbounded) return;
        if (i == xs.size()) {
            for (std::size_t j = 0; j < ys.size(); ++j) {
                if (!used[j]) acc.accumulate(p, drop_cost(ys[j]));
            }
            if (compare(acc, best) < 0) best = acc;
            return;
        }
        for (std::size_t j = 0; j < ys.size(); ++j) {
            if (used[j]) continue;
            Cost next = acc;
            next.accumulate(p, pair_cost(xs[i], ys[j]));
            used[j] = true;
            self(self, i + 1, next);
            used[j] = false;
        }
        Cost dropped = acc;
        dropped.accumulate(p, drop_cost(xs[i]));
        self(self, i + 1, dropped);
    };
    rec(rec, 0, Cost::zero(p));
    return best;
}

/// Random valid presentation with occasional grade ties and duplicate
/// relations. With ensure_tree, chain relations above the top grade force a
/// single component.
inline MergeTreePresentation random_merge_presentation(std::mt19937& rng, int max_gens,
                                                       bool ensure_tree) {
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_gens));
    std::vector<MtGenerator> gens;
    for (int i = 0; i < n; ++i) {
        Rational grade(static_cast<int>(rng() % 9) - 4);
        if (rng() % 4 == 0) grade += Rational(1, 2);
        gens.push_back({i, grade});
    }
    std::vector<MtRelation> rels;
    int next_id = 0;
    const int extra = static_cast<int>(rng() % static_cast<unsigned>(n + 2));
    for (int t = 0; t < extra && n >= 2; ++t) {
        if (!rels.empty() && rng() % 5 == 0) {
            MtRelation dup = rels[rng() % rels.size()];
            dup.id = next_id++;
            rels.push_back(dup);
            continue;
        }
        const int a = static_cast<int>(rng() % static_cast<unsigned>(n));
        int b = static_cast<int>(rng() % static_cast<unsigned>(n));
        if (a == b) b = (b + 1) % n;
        Rational grade = std::max(gens[a].grade, gens[b].grade);
        if (rng() % 2 == 0) grade += Rational(static_cast<int>(rng() % 3));
        if (rng() % 4 == 0) grade += Rational(1, 2);
        rels.push_back({next_id++, a, b, grade});
    }
    if (ensure_tree && n >= 2) {
        Rational top(6);
        for (int i = 0; i + 1 < n; ++i) rels.push_back({next_id++, i, i + 1, top});
    }
    return MergeTreePresentation(std::move(gens), std::move(rels));
}

inline Barcode random_barcode(std::mt19937& rng, int max_size, bool allow_infinite = true) {
    const int n = static_cast<int>(rng() % static_cast<unsigned>(max_size + 1));
    std::vector<Interval> out;
    for (int i = 0; i < n; ++i) {
        const Rational birth(static_cast<int>(rng() % 9) - 4);
        if (allow_infinite && rng() % 5 == 0) {
            out.push_back(Interval{birth, std::nullopt});
        } else {
            out.push_back(Interval{birth, birth + Rational(static_cast<int>(rng() % 5))});
        }
    }
    return Barcode(std::move(out));
}

inline TwoParamPresentation random_two_param(std::mt19937& rng, int max_gens, std::uint32_t q) {
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_gens));
    std::vector<TpGenerator> gens;
    for (int i = 0; i < n; ++i) {
        gens.push_back({i, Grade2{Rational(static_cast<int>(rng() % 7) - 3),
                                  Rational(static_cast<int>(rng() % 7) - 3)}});
    }
    std::vector<TpRelation> rels;
    const int count = static_cast<int>(rng() % static_cast<unsigned>(n + 2));
    for (int t = 0; t < count; ++t) {
        TpRelation r;
        r.id = t;
        Grade2 top{Rational(-3), Rational(-3)};
        const int support = 1 + static_cast<int>(rng() % 3u);
        for (int s = 0; s < support; ++s) {
            const int g = static_cast<int>(rng() % static_cast<unsigned>(n));
            r.coeffs[g] = 1 + rng() % (q - 1);
            top.x = std::max(top.x, gens[static_cast<std::size_t>(g)].grade.x);
            top.y = std::max(top.y, gens[static_cast<std::size_t>(g)].grade.y);
        }
        r.grade = Grade2{top.x + Rational(static_cast<int>(rng() % 3)),
                         top.y + Rational(static_cast<int>(rng() % 3))};
        rels.push_back(std::move(r));
    }
    return TwoParamPresentation(q, std::move(gens), std::move(rels));
}

/// Re-grades an ordered presentation along its merged total order: strict
/// gaps stay strict, ties stay ties, so the element order is unchanged.
inline void perturb_order_preserving(Ordered1Param& proj, std::mt19937& rng) {
    struct Item {
        Rational grade;
        bool is_rel;
        std::size_t pos;
    };
    std::vector<Item> items;
    for (std::size_t i = 0; i < proj.gens.size(); ++i) {
        items.push_back({proj.gens[i].grade, false, i});
    }
    for (std::size_t i = 0; i < proj.rels.size(); ++i) {
        items.push_back({proj.rels[i].grade, true, i});
    }
    std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
        if (a.grade != b.grade) return a.grade < b.grade;
        if (a.is_rel != b.is_rel) return !a.is_rel;
        const int ida = a.is_rel ? proj.rels[a.pos].id : proj.gens[a.pos].id;
        const int idb = b.is_rel ? proj.rels[b.pos].id : proj.gens[b.pos].id;
        return ida < idb;
    });
    Rational current(static_cast<int>(rng() % 5) - 10);
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0 && items[i].grade != items[i - 1].grade) {
            current += Rational(1 + static_cast<int>(rng() % 3), 1 + rng() % 2);
        }
        if (items[i].is_rel) {
            proj.rels[items[i].pos].grade = current;
        } else {
            proj.gens[items[i].pos].grade = current;
        }
    }
    auto by_grade_id = [](const auto& a, const auto& b) {
        if (a.grade != b.grade) return a.grade < b.grade;
        return a.id < b.id;
    };
    std::sort(proj.gens.begin(), proj.gens.end(), by_grade_id);
    std::sort(proj.rels.begin(), proj.rels.end(), by_grade_id);
}

}  // namespace presdist::testing
