#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace dyadic;
using testutil::q2;

namespace {

GoodBongLattice bong(const DyadicField& field, const std::vector<FieldElement>& v) {
    return validate_good_bong(field, v);
}

void check_three_way(const GoodBongLattice& L, bool expect) {
    UniversalityVerdict vt = decide_universal_closed_form(L);
    UniversalityVerdict vl = decide_universal_target_sweep(L);
    CHECK(vt.universal == expect);
    CHECK(vl.universal == expect);
    GramLattice G = bong_to_gram(L);
    if (detail::gram_norm_ord(G) >= 0) CHECK(oracle_universal(G) == expect);
}

}  // namespace

TEST_CASE("pinned verdicts over Q2") {
    auto Q2 = q2();
    auto E = [&](std::int64_t n) { return Q2.from_integer(n); };
    auto H = [&](std::int64_t n, int t) { return Q2.from_ratio(n, t); };

    check_three_way(bong(Q2, {E(1), E(1), E(1)}), false);
    check_three_way(bong(Q2, {E(1), E(1), E(1), E(1)}), true);
    check_three_way(bong(Q2, {E(1), E(2)}), false);
    check_three_way(bong(Q2, {E(1), H(-1, 2)}), true);
    check_three_way(bong(Q2, {E(1), H(3, 2)}), false);  // -a1a2 ~ Delta, I(b) fails
    check_three_way(bong(Q2, {E(1), E(2), E(8), E(16)}), false);
    check_three_way(bong(Q2, {E(1), E(2), E(2), E(4)}), true);
}

TEST_CASE("closed-form traces") {
    auto Q2 = q2();
    auto E = [&](std::int64_t n) { return Q2.from_integer(n); };

    CHECK(decide_universal_closed_form(bong(Q2, {E(1), E(1), E(1)})).trace.clause == "II(c)");
    CHECK(decide_universal_closed_form(bong(Q2, {E(1), E(2), E(8), E(16)})).trace.clause ==
          "II(b)");
    CHECK(decide_universal_closed_form(bong(Q2, {E(1), Q2.from_ratio(3, 2)})).trace.clause ==
          "I(b)");
    CHECK(decide_universal_closed_form(bong(Q2, {E(1)})).trace.clause == "RankOne");
    CHECK(decide_universal_closed_form(bong(Q2, {E(2), E(2)})).trace.clause ==
          "NonIntegralOrWrongNorm");
    CHECK(decide_universal_closed_form(bong(Q2, {Q2.from_ratio(1, 1), E(2)})).trace.clause ==
          "NonIntegralOrWrongNorm");
    CHECK(decide_universal_closed_form(bong(Q2, {E(1), E(4)})).trace.clause == "II(a)");

    auto v = decide_universal_closed_form(bong(Q2, {E(1), E(1), E(1), E(1)}));
    CHECK(v.universal);
    CHECK(v.trace.clause == "II(a)");
}

TEST_CASE("target-sweep witnesses") {
    auto Q2 = q2();
    auto E = [&](std::int64_t n) { return Q2.from_integer(n); };

    // x^2 + 2y^2 misses 5 and 7: first witness in canonical order is 5,
    // rejected at the ambient-space gate
    auto v = decide_universal_target_sweep(bong(Q2, {E(1), E(2)}));
    CHECK_FALSE(v.universal);
    REQUIRE(v.witness.has_value());
    CHECK(*v.witness == E(5));
    CHECK(v.trace.clause == "space");

    // lattices with R1 = 1 fail clause (i) at the first unit target
    auto v1 = decide_universal_target_sweep(bong(Q2, {E(2), E(2)}));
    CHECK_FALSE(v1.universal);
    REQUIRE(v1.witness.has_value());
    CHECK(*v1.witness == E(1));
    CHECK(v1.trace.clause == "(i)");

    // rank 1 is rejected by the space clause at some target
    auto v2 = decide_universal_target_sweep(bong(Q2, {E(1)}));
    CHECK_FALSE(v2.universal);
    CHECK(v2.trace.clause == "space");
}

TEST_CASE("deciders agree on random lattices") {
    std::mt19937_64 rng(53);
    for (const auto& field : testutil::all_fields()) {
        for (int trial = 0; trial < 250; ++trial) {
            GoodBongLattice L = testutil::random_bong(field, rng, 1, 5);
            CHECK(decide_universal_closed_form(L).universal ==
                  decide_universal_target_sweep(L).universal);
        }
    }
}

TEST_CASE("II(a') redundancy: II(a) and II(b) force d[-a12] = 1 - R2") {
    std::mt19937_64 rng(59);
    auto check_lattice = [](const GoodBongLattice& L) {
        if (L.rank() < 3 || L.R(1) != 0) return;
        if (!(L.alpha(1) == HalfInt::of(1))) return;
        bool gate = L.R_ext(2) == HalfInt::of(1) || L.R_ext(3) > HalfInt::of(1);
        if (gate) {
            if (L.rank() < 4) return;
            std::int64_t bound =
                2 * (L.field().e() - detail::floor_div2(L.R(3) - L.R(2))) - 1;
            if (!(L.alpha(3) <= HalfInt::of(bound))) return;
        }
        CHECK(d_bracket_interval(L, -L.field().one(), 1, 2) == HalfInt::of(1 - L.R(2)));
    };
    for (const auto& field : testutil::all_fields())
        for (int trial = 0; trial < 400; ++trial)
            check_lattice(testutil::random_bong(field, rng, 3, 5));
}

TEST_CASE("I(c) equals I(c') on case-I lattices with R3 = 1") {
    // construct every case-I shape directly: R = (0, -2e, 1), -a1 a2 a square
    // or in the Delta class, units from the class representatives
    int seen = 0;
    for (const auto& field : testutil::all_fields()) {
        const std::int64_t e = field.e();
        auto [rho, delta] = find_delta(field);
        auto units = square_class_reps(field, {0});
        for (const FieldElement& u1 : units)
            for (const FieldElement& c : {field.one(), delta})
                for (const FieldElement& u3 : units) {
                    FieldElement a2 = -(c / (u1 * field.pi_pow(2 * e)));
                    GoodBongLattice L =
                        validate_good_bong(field, {u1, a2, field.pi_pow(1) * u3});
                    REQUIRE(L.alpha(1) == HalfInt::of(0));
                    ++seen;
                    CHECK(space_isotropic(L.space(3)) == space_isotropic(L.space(2)));
                }
    }
    CHECK(seen > 0);
}

TEST_CASE("corollary 2.9 consequences at R1 = 0") {
    std::mt19937_64 rng(67);
    for (const auto& field : testutil::all_fields()) {
        const std::int64_t e = field.e();
        for (int trial = 0; trial < 400; ++trial) {
            GoodBongLattice L = testutil::random_bong(field, rng);
            if (L.R(1) != 0) continue;
            HalfInt dbr = d_bracket_interval(L, -field.one(), 1, 2);
            if (L.alpha(1) == HalfInt::of(0)) CHECK(dbr >= HalfInt::of(2 * e));
            if (L.alpha(1) == HalfInt::of(1)) {
                bool shape = L.R(2) == 1 ||
                             (L.R(2) % 2 == 0 && 2 - 2 * e <= L.R(2) && L.R(2) <= 0);
                CHECK(shape);
                CHECK(dbr >= HalfInt::of(1 - L.R(2)));
                if (L.R(2) != 2 - 2 * e) CHECK(dbr == HalfInt::of(1 - L.R(2)));
            }
        }
    }
}

TEST_CASE("universality is not scale invariant, alpha is") {
    auto Q2 = q2();
    auto E = [&](std::int64_t n) { return Q2.from_integer(n); };
    GoodBongLattice L = bong(Q2, {E(1), E(1), E(1), E(1)});
    CHECK(decide_universal_closed_form(L).universal);
    GoodBongLattice L2 = bong(Q2, {E(2), E(2), E(2), E(2)});
    CHECK_FALSE(decide_universal_closed_form(L2).universal);
    CHECK(L2.alphas() == L.alphas());
}

TEST_CASE("remark-1 gate matches the composite threshold form") {
    // under (i) and (ii), for i = 2 = n+1 and R3 > S1:
    //   A1 + (S2 + A2) > 2e + R2  <=>  d[-a12] + d[-a13 b1] > 2e + S1 - R3
    std::mt19937_64 rng(71);
    for (const auto& field : testutil::all_fields()) {
        const std::int64_t e = field.e();
        auto reps = square_class_reps(field, {0, 1});
        int tested = 0;
        for (int trial = 0; trial < 1500 && tested < 150; ++trial) {
            GoodBongLattice M = testutil::random_bong(field, rng, 3, 5);
            const FieldElement& b1 = reps[rng() % reps.size()];
            std::int64_t S1 = b1.valuation();
            GoodBongLattice N = validate_good_bong(field, {b1});
            if (!(M.R(1) <= S1)) continue;                                      // (i)
            if (d_bracket_cross(M, N, field.one(), 1, 1) < a_invariant(M, N, 1))
                continue;                                                       // (ii)
            if (!(M.R(3) > S1)) continue;
            ++tested;
            HalfInt lhs = a_invariant(M, N, 1) + composite_a_invariant(M, N);
            bool via_thresholds = lhs > HalfInt::of(2 * e + M.R(2));
            HalfInt gate = d_bracket_interval(M, -field.one(), 1, 2) +
                           d_bracket_cross(M, N, -field.one(), 3, 1);
            bool via_brackets = gate > HalfInt::of(2 * e + S1 - M.R(3));
            CHECK(via_thresholds == via_brackets);
        }
        CHECK(tested > 0);
    }
}

TEST_CASE("explain renders traces") {
    auto Q2 = q2();
    auto v = decide_universal_closed_form(bong(Q2, {Q2.one()}));
    CHECK(explain(v) == "non-universal [route theorem]: m=1");
    auto u = decide_universal_closed_form(
        bong(Q2, {Q2.one(), Q2.one(), Q2.one(), Q2.one()}));
    CHECK(explain(u).find("universal [route theorem]: case II(a)") == 0);
    auto w = decide_universal_target_sweep(bong(Q2, {Q2.one(), Q2.from_integer(2)}));
    CHECK(explain(w).find("failed clause space") != std::string::npos);
}
