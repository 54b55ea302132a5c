#include "presdist/merge_tree.hpp"

#include "presdist/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace presdist;

namespace {

// The merge tree M for S = {1, 1, 2}, k = 2, p = 1: four generators at -16,
// one relation at 0 inside the third element, two at 2 between elements.
MergeTreePresentation gadget_m_112() {
    std::vector<MtGenerator> gens{{0, Rational(-16)}, {1, Rational(-16)},
                                  {2, Rational(-16)}, {3, Rational(-16)}};
    std::vector<MtRelation> rels{{0, 2, 3, Rational(0)},
                                 {1, 0, 1, Rational(2)},
                                 {2, 1, 2, Rational(2)}};
    return MergeTreePresentation(std::move(gens), std::move(rels));
}

MergeTreePresentation gadget_n_112() {
    std::vector<MtGenerator> gens{{0, Rational(-16)}, {1, Rational(-16)},
                                  {2, Rational(-16)}, {3, Rational(-16)}};
    std::vector<MtRelation> rels{{0, 0, 1, Rational(1)},
                                 {1, 2, 3, Rational(1)},
                                 {2, 1, 2, Rational(3)}};
    return MergeTreePresentation(std::move(gens), std::move(rels));
}

Barcode bc(std::vector<Interval> ivs) {
    return Barcode(std::move(ivs));
}

}  // namespace

TEST_CASE("presentation validation") {
    CHECK_THROWS_AS(MergeTreePresentation({{0, Rational(0)}, {0, Rational(1)}}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(MergeTreePresentation({{0, Rational(0)}}, {{0, 0, 0, Rational(1)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(MergeTreePresentation({{0, Rational(0)}, {1, Rational(0)}},
                                          {{0, 0, 2, Rational(1)}}),
                    std::invalid_argument);
    // relation graded below an endpoint
    CHECK_THROWS_AS(MergeTreePresentation({{0, Rational(0)}, {1, Rational(3)}},
                                          {{0, 0, 1, Rational(1)}}),
                    std::invalid_argument);
}

TEST_CASE("components_at on the S={1,1,2} gadget") {
    const auto m = gadget_m_112();
    CHECK(components_at(m, Rational(-16)).size() == 4);
    CHECK(components_at(m, Rational(0)) ==
          std::vector<std::vector<int>>{{0}, {1}, {2, 3}});
    CHECK(components_at(m, Rational(2)).size() == 1);
    CHECK(components_at(m, Rational(-17)).empty());
}

TEST_CASE("components_at with no relations gives singletons") {
    MergeTreePresentation p({{0, Rational(0)}, {1, Rational(1)}}, {});
    CHECK(components_at(p, Rational(5)).size() == 2);
}

TEST_CASE("is_merge_tree") {
    CHECK(is_merge_tree(MergeTreePresentation({{0, Rational(0)}}, {})));
    CHECK_FALSE(is_merge_tree(MergeTreePresentation({{0, Rational(0)}, {1, Rational(0)}}, {})));
    CHECK(is_merge_tree(gadget_m_112()));
    CHECK(is_merge_tree(gadget_n_112()));
}

TEST_CASE("mrg on the gadget") {
    const auto m = gadget_m_112();
    CHECK(mrg(m, 0, 0) == Rational(-16));
    CHECK(mrg(m, 2, 3) == Rational(0));
    CHECK(mrg(m, 0, 1) == Rational(2));
    CHECK_THROWS_AS(mrg(m, 0, 99), std::invalid_argument);
}

TEST_CASE("mrg properties on random merge trees") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = testing::random_merge_presentation(rng, 6, true);
        const auto& gens = p.generators();
        for (std::size_t a = 0; a < gens.size(); ++a) {
            for (std::size_t b = 0; b < gens.size(); ++b) {
                const Grade1 ab = mrg(p, gens[a].id, gens[b].id);
                CHECK(ab == mrg(p, gens[b].id, gens[a].id));
                CHECK(ab >= std::max(gens[a].grade, gens[b].grade));
                for (std::size_t c = 0; c < gens.size(); ++c) {
                    CHECK(ab <= std::max(mrg(p, gens[a].id, gens[c].id),
                                         mrg(p, gens[c].id, gens[b].id)));
                }
            }
        }
    }
}

TEST_CASE("barcode of the S={1,1,2} gadgets") {
    CHECK(barcode(gadget_m_112()) == bc({{Rational(-16), std::nullopt},
                                         {Rational(-16), Rational(0)},
                                         {Rational(-16), Rational(2)},
                                         {Rational(-16), Rational(2)}}));
    CHECK(barcode(gadget_n_112()) == bc({{Rational(-16), std::nullopt},
                                         {Rational(-16), Rational(1)},
                                         {Rational(-16), Rational(1)},
                                         {Rational(-16), Rational(3)}}));
}

TEST_CASE("barcode basics") {
    CHECK(barcode(MergeTreePresentation({{0, Rational(0)}}, {})) ==
          bc({{Rational(0), std::nullopt}}));

    // empty interval dropped: generator born and merged at the same grade
    MergeTreePresentation p({{0, Rational(0)}, {1, Rational(1)}}, {{0, 0, 1, Rational(1)}});
    CHECK(barcode(p) == bc({{Rational(0), std::nullopt}}));

    // duplicate relation pairs with nothing
    MergeTreePresentation d({{0, Rational(0)}, {1, Rational(0)}},
                            {{0, 0, 1, Rational(1)}, {1, 0, 1, Rational(2)}});
    CHECK(barcode(d) == bc({{Rational(0), std::nullopt}, {Rational(0), Rational(1)}}));
}

TEST_CASE("barcode agrees with the class-count oracle") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 150; ++trial) {
        const auto p = testing::random_merge_presentation(rng, 8, rng() % 2 == 0);
        CHECK(barcode(p) == testing::oracle_merge_barcode(p));
    }
}

TEST_CASE("barcode size bookkeeping") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const auto p = testing::random_merge_presentation(rng, 8, false);
        const auto b = barcode(p);
        std::size_t infinite = 0;
        for (const auto& iv : b.intervals()) infinite += iv.is_infinite();
        CHECK(infinite == components_at(p, p.max_grade()).size());
        CHECK(b.size() <= p.generators().size());
    }
}

TEST_CASE("dp_cost") {
    const auto p = gadget_m_112();
    const auto exponent = PExponent::integer(1);
    CHECK(dp_cost(p, p, MtSigma::identity_for(p), exponent).value == 0);

    // single generator moved from grade 0 to grade 5, p = 2 -> 5 (payload 25)
    MergeTreePresentation a({{0, Rational(0)}}, {});
    MergeTreePresentation b({{0, Rational(5)}}, {});
    const auto c2 = dp_cost(a, b, MtSigma::identity_for(a), PExponent::integer(2));
    CHECK(c2.value == 25);
    CHECK(c2.to_double(PExponent::integer(2)) == doctest::Approx(5.0));
    CHECK(dp_cost(a, b, MtSigma::identity_for(a), PExponent::infinity()).value == 5);
}

TEST_CASE("dp_cost rejects structure-breaking sigmas") {
    // star with center 0 vs path: swapping 1 and 2 breaks the center edge
    MergeTreePresentation star({{0, Rational(0)}, {1, Rational(0)}, {2, Rational(0)}},
                               {{0, 0, 1, Rational(1)}, {1, 0, 2, Rational(1)}});
    MergeTreePresentation path({{0, Rational(0)}, {1, Rational(0)}, {2, Rational(0)}},
                               {{0, 0, 1, Rational(1)}, {1, 1, 2, Rational(1)}});
    MtSigma sigma = MtSigma::identity_for(star);
    CHECK_THROWS_AS(dp_cost(star, path, sigma, PExponent::integer(1)),
                    IncompatiblePresentations);
}

TEST_CASE("dp_cost is symmetric under the inverse sigma") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        const auto p = testing::random_merge_presentation(rng, 5, false);
        // same structure, jittered grades
        std::vector<MtGenerator> gens = p.generators();
        std::vector<MtRelation> rels = p.relations();
        for (auto& g : gens) g.grade -= Rational(5);  // keep relation validity
        MergeTreePresentation q(gens, rels);
        const auto exponent = PExponent::integer(2);
        const MtSigma sigma = MtSigma::identity_for(p);
        CHECK(dp_cost(p, q, sigma, exponent).value == dp_cost(q, p, sigma, exponent).value);
    }
}

TEST_CASE("min_sigma_cost") {
    const auto exponent = PExponent::integer(1);
    const auto m = gadget_m_112();
    auto self = min_sigma_cost(m, m, exponent);
    REQUIRE(self.has_value());
    CHECK(self->cost.value == 0);

    // star vs path on 4 generators: degree sequences differ, no sigma exists
    MergeTreePresentation star(
        {{0, Rational(0)}, {1, Rational(0)}, {2, Rational(0)}, {3, Rational(0)}},
        {{0, 0, 1, Rational(1)}, {1, 0, 2, Rational(1)}, {2, 0, 3, Rational(1)}});
    MergeTreePresentation path(
        {{0, Rational(0)}, {1, Rational(0)}, {2, Rational(0)}, {3, Rational(0)}},
        {{0, 0, 1, Rational(1)}, {1, 1, 2, Rational(1)}, {2, 2, 3, Rational(1)}});
    CHECK_FALSE(min_sigma_cost(star, path, exponent).has_value());

    // doubled edge cannot map to two distinct edges
    MergeTreePresentation doubled({{0, Rational(0)}, {1, Rational(0)}, {2, Rational(0)}},
                                  {{0, 0, 1, Rational(1)}, {1, 0, 1, Rational(1)}});
    MergeTreePresentation spread({{0, Rational(0)}, {1, Rational(0)}, {2, Rational(0)}},
                                 {{0, 0, 1, Rational(1)}, {1, 1, 2, Rational(1)}});
    CHECK_FALSE(min_sigma_cost(doubled, spread, exponent).has_value());

    // two generators, one relation, grades differing by delta
    MergeTreePresentation a({{0, Rational(0)}, {1, Rational(1)}}, {{0, 0, 1, Rational(2)}});
    MergeTreePresentation b({{0, Rational(0)}, {1, Rational(1)}}, {{0, 0, 1, Rational(5)}});
    auto delta = min_sigma_cost(a, b, exponent);
    REQUIRE(delta.has_value());
    CHECK(delta->cost.value == 3);

    MergeTreePresentation big(
        {{0, Rational(0)}, {1, Rational(0)}, {2, Rational(0)}, {3, Rational(0)},
         {4, Rational(0)}, {5, Rational(0)}, {6, Rational(0)}, {7, Rational(0)},
         {8, Rational(0)}},
        {});
    CHECK_THROWS_AS(min_sigma_cost(big, big, exponent), SizeLimitExceeded);
}

TEST_CASE("min_sigma_cost is subadditive on compatible triples") {
    std::mt19937 rng(41);
    const auto exponent = PExponent::integer(1);
    for (int trial = 0; trial < 20; ++trial) {
        const auto base = testing::random_merge_presentation(rng, 4, false);
        auto jitter = [&](int shift) {
            std::vector<MtGenerator> gens = base.generators();
            std::vector<MtRelation> rels = base.relations();
            for (auto& g : gens) g.grade -= Rational(shift);
            for (auto& r : rels) r.grade += Rational(static_cast<int>(rng() % 3));
            return MergeTreePresentation(gens, rels);
        };
        const auto p = jitter(1), q = jitter(2), r = jitter(3);
        auto pr = min_sigma_cost(p, r, exponent);
        auto pq = min_sigma_cost(p, q, exponent);
        auto qr = min_sigma_cost(q, r, exponent);
        REQUIRE(pr.has_value());
        REQUIRE(pq.has_value());
        REQUIRE(qr.has_value());
        CHECK(pr->cost.value <= pq->cost.value + qr->cost.value);
    }
}
