#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace dyadic;
using testutil::q2;

TEST_CASE("element serialization round-trips") {
    std::mt19937_64 rng(83);
    for (const auto& field : testutil::all_fields()) {
        for (int trial = 0; trial < 200; ++trial) {
            FieldElement x = testutil::random_element(field, rng);
            CHECK(io::element_from_json(field, io::element_to_json(x)) == x);
        }
        CHECK(io::element_from_json(field, io::element_to_json(field.zero())).is_zero());
    }
}

TEST_CASE("rational shorthand") {
    auto Q2 = q2();
    CHECK(io::element_from_string(Q2, "9") == Q2.from_integer(9));
    CHECK(io::element_from_string(Q2, "-1/4") == Q2.from_ratio(-1, 2));
    CHECK(io::element_from_string(Q2, "3/2^5") == Q2.from_ratio(3, 5));
    CHECK_THROWS_AS(io::element_from_string(Q2, "1/3"), ParseError);
    CHECK_THROWS_AS(io::element_from_shorthand(Q2, "2x"), ParseError);
    // shorthand is reserved for f = e = 1
    CHECK_THROWS_AS(io::element_from_json(testutil::unramified_f2(), io::json("5/2^1")),
                    ParseError);
}

TEST_CASE("field specs round-trip") {
    for (const auto& field : testutil::all_fields()) {
        DyadicField back = io::field_from_json(io::field_to_json(field));
        CHECK(back.fingerprint() == field.fingerprint());
    }
    CHECK(io::field_from_string("Q2").e() == 1);
    CHECK_THROWS_AS(io::field_from_string("Q3"), ParseError);
    CHECK_THROWS_AS(io::field_from_json(io::json::parse(R"({"base":"Q5"})")), ParseError);
    CHECK_THROWS_AS(
        io::field_from_json(io::json::parse(R"({"unramified":[1,1,2]})")), ParseError);
}

TEST_CASE("bong shorthand and gram parsing") {
    auto Q2 = q2();
    auto entries = io::bong_entries_from_string(Q2, "<1, -1/4>");
    REQUIRE(entries.size() == 2);
    CHECK(entries[0] == Q2.one());
    CHECK(entries[1] == Q2.from_ratio(-1, 2));

    GramLattice G = io::gram_from_string(Q2, "diag(1,2)");
    CHECK(G.rank() == 2);
    CHECK(G.at(1, 1) == Q2.from_integer(2));

    GramLattice H = io::gram_from_json(
        Q2, io::json::parse(R"([1, "1/2", "1/2", 0])"));
    CHECK(H.rank() == 2);
    CHECK(H.at(0, 1) == Q2.from_ratio(1, 1));
    CHECK_THROWS_AS(io::gram_from_json(Q2, io::json::parse("[1, 2, 3]")), ParseError);
}

TEST_CASE("verdict and invariant JSON shapes") {
    auto Q2 = q2();
    auto L = validate_good_bong(
        Q2, {Q2.one(), Q2.one(), Q2.one(), Q2.one()});
    auto j = io::verdict_to_json(decide_universal_closed_form(L));
    CHECK(j["universal"] == true);
    CHECK(j["route"] == "theorem");
    CHECK(j["trace"]["clause"] == "II(a)");
    CHECK(j["trace"]["bindings"].is_object());

    auto vj = io::verdict_to_json(
        decide_universal_target_sweep(validate_good_bong(Q2, {Q2.one(), Q2.from_integer(2)})));
    CHECK(vj["universal"] == false);
    CHECK(vj["route"] == "lemma");
    CHECK(vj["witness"] == 5);

    auto inv = io::invariants_to_json(L);
    CHECK(inv["R"] == io::json::parse("[0,0,0,0]"));
    CHECK(inv["alpha"] == io::json::parse("[1,1,1]"));

    // half-integers and infinity serialize distinguishably
    CHECK(io::halfint_to_json(HalfInt::inf()) == "inf");
    CHECK(io::halfint_to_json(HalfInt::halves(3)) == "3/2");
    CHECK(io::halfint_to_json(HalfInt::of(2)) == 2);
}

TEST_CASE("sweep report is deterministic for a fixed seed") {
    SweepConfig cfg;
    cfg.field = testutil::ramified_e2();
    cfg.mode = SweepConfig::Mode::Random;
    cfg.count = 40;
    cfg.seed = 1234;
    cfg.m_min = 2;
    cfg.m_max = 4;
    std::string a = io::sweep_report_to_json(run_sweep(cfg)).dump();
    std::string b = io::sweep_report_to_json(run_sweep(cfg)).dump();
    CHECK(a == b);
    CHECK(io::json::parse(a)["mismatches"].empty());
}
