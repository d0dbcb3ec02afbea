#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace dyadic;
using testutil::q2;

TEST_CASE("oracle defect") {
    auto Q2 = q2();
    CHECK(oracle_defect(Q2.from_integer(1)).is_inf());
    CHECK(oracle_defect(Q2.from_integer(5)) == HalfInt::of(2));
    CHECK(oracle_defect(Q2.from_integer(6)) == HalfInt::of(0));
    CHECK_THROWS_AS(oracle_defect(Q2.zero()), ZeroArgument);
}

TEST_CASE("oracle representation") {
    auto Q2 = q2();
    auto E = [&](std::int64_t n) { return Q2.from_integer(n); };
    GramLattice d12 = diagonal_gram(Q2, {E(1), E(2)});
    CHECK(oracle_represents(d12, E(3)));
    CHECK_FALSE(oracle_represents(d12, E(7)));
    CHECK(oracle_represents(diagonal_gram(Q2, {E(1), E(1), E(1), E(1)}), E(7)));
    CHECK_FALSE(oracle_represents(d12, Q2.from_ratio(1, 1)));  // ord b < 0
    CHECK_THROWS_AS(
        oracle_represents(diagonal_gram(Q2, {Q2.from_ratio(1, 1)}), E(1)),
        NonIntegralLattice);
    CHECK_THROWS_AS(oracle_represents(d12, Q2.zero()), ZeroArgument);
    CHECK_THROWS_AS(oracle_represents(d12, E(3), /*budget=*/4), BudgetExceeded);
    // representation bound beyond the retained digits
    CHECK_THROWS_AS(oracle_represents(d12, Q2.pi_pow(Q2.precision() + 4)),
                    PrecisionTooSmall);
}

TEST_CASE("oracle universality") {
    auto Q2 = q2();
    auto E = [&](std::int64_t n) { return Q2.from_integer(n); };
    GramLattice hyp(Q2, 2,
                    {E(1), Q2.from_ratio(1, 1), Q2.from_ratio(1, 1), Q2.zero()});
    CHECK(oracle_universal(hyp));
    CHECK_FALSE(oracle_universal(diagonal_gram(Q2, {E(1), E(1), E(1)})));
    auto rep = oracle_universal_report(diagonal_gram(Q2, {E(1), E(2), E(8), E(16)}));
    CHECK_FALSE(rep.universal);
    bool missing5 = false, missing7 = false;
    for (const auto& x : rep.missing) {
        if (x == E(5)) missing5 = true;
        if (x == E(7)) missing7 = true;
    }
    CHECK(missing5);
    CHECK(missing7);
}

TEST_CASE("oracle isotropy") {
    auto Q2 = q2();
    auto E = [&](std::int64_t n) { return Q2.from_integer(n); };
    CHECK(oracle_isotropic(DiagonalSpace(Q2, {E(1), E(-1)})));
    CHECK_FALSE(oracle_isotropic(DiagonalSpace(Q2, {E(1), E(1), E(1)})));
    CHECK(oracle_isotropic(DiagonalSpace(Q2, {E(1), E(1), E(1), E(1), E(1)})));
    // scaling invariance: non-integral coefficients are normalized away
    CHECK_FALSE(oracle_isotropic(
        DiagonalSpace(Q2, {Q2.from_ratio(1, 2), Q2.from_ratio(1, 2), Q2.from_ratio(1, 2)})));
}

TEST_CASE("representation depends only on the square class of the target") {
    std::mt19937_64 rng(79);
    for (const auto& field : testutil::all_fields()) {
        auto reps = square_class_reps(field, {0, 1});
        for (int trial = 0; trial < 20; ++trial) {
            GoodBongLattice L = testutil::random_bong(field, rng, 2, 4);
            GramLattice G = bong_to_gram(L);
            if (detail::gram_norm_ord(G) < 0) continue;
            for (const auto& b : reps) {
                // u^2 b for a unit u: same verdict
                FieldElement u = reps[rng() % (reps.size() / 2)];  // a unit class rep
                CHECK(oracle_represents(G, b) == oracle_represents(G, u * u * b));
            }
        }
    }
}

TEST_CASE("level search agrees with the value-set path") {
    auto Q2 = q2();
    auto E = [&](std::int64_t n) { return Q2.from_integer(n); };
    // dense binary block: both enumeration organizations must agree
    GramLattice B(Q2, 2, {E(2), E(1), E(1), E(2)});
    for (const auto& b : square_class_reps(Q2, {0, 1})) {
        bool via_masks = oracle_represents(B, b);
        detail::Budget budget{kDefaultBudget};
        int m = int(b.valuation()) + 2 * Q2.e() + 1;
        detail::QuadraticForm qm = detail::component_form(B, {0, 1}, m);
        bool via_dfs = detail::level_search(qm, detail::fold_element(b, m), m,
                                            /*primitive=*/false, budget);
        CHECK(via_masks == via_dfs);
    }
}

TEST_CASE("search bounds carry their derivations") {
    auto Q2 = q2();
    CHECK(SearchBound::square_cap(Q2).modulus_digits == 3);
    CHECK(SearchBound::isotropy(Q2, 2).modulus_digits == 7);
    CHECK(SearchBound::representation(Q2, 1).modulus_digits == 4);
    CHECK_FALSE(SearchBound::isotropy(Q2, 0).derivation.empty());
}
