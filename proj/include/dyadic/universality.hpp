#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dyadic/bong.hpp"

namespace dyadic {

// Two independent universality deciders over integral lattices in good-BONG
// form: a closed-form case analysis on (R_i, alpha_i) and a sweep of unary
// targets over the square classes of order 0 and 1. Wire names of the routes
// are "theorem" and "lemma".
enum class Route { ClosedForm, TargetSweep };

inline const char* route_name(Route r) {
    return r == Route::ClosedForm ? "theorem" : "lemma";
}

struct CaseTag {
    std::string clause;
    std::vector<std::pair<std::string, std::string>> bindings;

    void bind(const std::string& key, const std::string& value) {
        bindings.emplace_back(key, value);
    }
};

struct UniversalityVerdict {
    bool universal = false;
    Route route = Route::ClosedForm;
    CaseTag trace;
    std::optional<FieldElement> witness;  // failing target of the sweep route
    std::string note;
};

namespace detail {
inline std::int64_t floor_div2(std::int64_t a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }
}  // namespace detail

// ---------------------------------------------------------------------------
// Closed-form route. With the tail convention R_i = +inf for i > rank, the
// decision for an integral lattice with R_1 = 0 is:
//   case I  (alpha_1 = 0):  (b) R_3 > 1             => [a_1,a_2] isotropic
//                           (c) R_3 = 1, R_4 > 2e+1 => [a_1,a_2] isotropic
//   case II (alpha_1 = 1):  (b) R_2 = 1 or R_3 > 1  => m >= 4 and
//                               alpha_3 <= 2(e - floor((R_3-R_2)/2)) - 1
//                           (c) R_2 <= 0, R_3 <= 1, R_4 - R_3 > 2e
//                               => [a_1,a_2,a_3] isotropic
// Anything else is not universal. Clause evaluation order is fixed, so the
// reported trace is deterministic.
// ---------------------------------------------------------------------------

inline UniversalityVerdict decide_universal_closed_form(const GoodBongLattice& L) {
    UniversalityVerdict v;
    v.route = Route::ClosedForm;
    const int m = L.rank();
    const int e = L.field().e();
    if (m < 2) {  // covers the empty lattice as well
        v.trace.clause = "RankOne";
        v.trace.bind("m", std::to_string(m));
        return v;
    }
    v.trace.bind("R1", std::to_string(L.R(1)));
    if (L.R(1) != 0) {
        // R_1 > 0 misses the units; R_1 < 0 is not even integral.
        v.trace.clause = "NonIntegralOrWrongNorm";
        return v;
    }
    const HalfInt R2 = L.R_ext(2), R3 = L.R_ext(3), R4 = L.R_ext(4);
    const HalfInt alpha1 = L.alpha(1);
    v.trace.bind("R2", R2.str());
    v.trace.bind("R3", R3.str());
    v.trace.bind("R4", R4.str());
    v.trace.bind("alpha1", alpha1.str());

    if (alpha1 == HalfInt::of(0)) {  // case I; equivalently R2 = -2e
        std::optional<bool> iso2;
        auto binary_isotropic = [&] {
            if (!iso2) {
                iso2 = space_isotropic(L.space(2));
                v.trace.bind("binary_isotropic", *iso2 ? "true" : "false");
            }
            return *iso2;
        };
        if (R3 > HalfInt::of(1) && !binary_isotropic()) {
            v.trace.clause = "I(b)";
            return v;
        }
        if (R3 == HalfInt::of(1) && R4 > HalfInt::of(2 * e + 1) && !binary_isotropic()) {
            v.trace.clause = "I(c)";
            return v;
        }
        v.universal = true;
        v.trace.clause = "I(a)";
        return v;
    }

    if (alpha1 == HalfInt::of(1)) {  // case II
        if (R2 == HalfInt::of(1) || R3 > HalfInt::of(1)) {
            if (m < 4) {
                v.trace.clause = "II(b)";
                v.trace.bind("m", std::to_string(m));
                return v;
            }
            std::int64_t bound =
                2 * (e - detail::floor_div2(L.R(3) - L.R(2))) - 1;
            v.trace.bind("alpha3", L.alpha(3).str());
            v.trace.bind("alpha3_bound", std::to_string(bound));
            if (!(L.alpha(3) <= HalfInt::of(bound))) {
                v.trace.clause = "II(b)";
                return v;
            }
        }
        if (R2 <= HalfInt::of(0) && R3 <= HalfInt::of(1) && R4 > R3 + HalfInt::of(2 * e)) {
            bool iso3 = space_isotropic(L.space(3));
            v.trace.bind("ternary_isotropic", iso3 ? "true" : "false");
            if (!iso3) {
                v.trace.clause = "II(c)";
                return v;
            }
        }
        v.universal = true;
        v.trace.clause = "II(a)";
        return v;
    }

    v.trace.clause = "II(a)";  // neither case gate applies: alpha_1 >= 2
    return v;
}

// ---------------------------------------------------------------------------
// Target-sweep route. An integral lattice is universal iff it represents
// every unary N = <b_1> with ord b_1 in {0, 1}; per target the checks are
//   space  : b_1 represented by the ambient space FM
//   (i)    : R_1 <= S_1
//   (ii)   : d[a_1 b_1] >= A_1                                (m >= 2)
//   (iii') : R_3 > S_1 and d[-a_{1,2}] + d[-a_{1,3} b_1] > 2e + S_1 - R_3
//            => [b_1] -> [a_1, a_2]                           (m >= 3)
//   (iv)   : R_3 <= S_1 and R_4 - S_1 > 2e
//            => [b_1] -> [a_1, a_2, a_3]                      (m >= 4)
// The first failing target in canonical square-class order is the witness.
// ---------------------------------------------------------------------------

inline UniversalityVerdict decide_universal_target_sweep(const GoodBongLattice& L) {
    UniversalityVerdict v;
    v.route = Route::TargetSweep;
    const DyadicField& field = L.field();
    const int m = L.rank();
    const int e = field.e();
    if (m == 0) {
        v.trace.clause = "RankOne";
        v.trace.bind("m", "0");
        return v;
    }
    // The target conditions characterize N -> M; universality additionally
    // needs Q(M) inside O, which fails outright when R_1 < 0.
    if (L.R(1) < 0) {
        v.trace.clause = "NonIntegralOrWrongNorm";
        v.trace.bind("R1", std::to_string(L.R(1)));
        return v;
    }
    const FieldElement one = field.one();
    DiagonalSpace FM = L.space();

    for (const FieldElement& b1 : square_class_reps(field, {0, 1})) {
        GoodBongLattice N = validate_good_bong(field, {b1});
        const std::int64_t S1 = b1.valuation();
        auto fail = [&](const char* clause) -> UniversalityVerdict& {
            v.trace.clause = clause;
            v.witness = b1;
            v.trace.bind("S1", std::to_string(S1));
            return v;
        };

        if (!space_represents_element(b1, FM)) return fail("space");
        if (!(L.R(1) <= S1)) {
            fail("(i)");
            v.trace.bind("R1", std::to_string(L.R(1)));
            return v;
        }
        if (m >= 2) {
            HalfInt A1 = a_invariant(L, N, 1);
            HalfInt d11 = d_bracket_cross(L, N, one, 1, 1);
            if (d11 < A1) {
                fail("(ii)");
                v.trace.bind("d[a1b1]", d11.str());
                v.trace.bind("A1", A1.str());
                return v;
            }
        }
        if (m >= 3) {
            HalfInt lhs =
                d_bracket_interval(L, -one, 1, 2) + d_bracket_cross(L, N, -one, 3, 1);
            if (HalfInt::of(L.R(3)) > HalfInt::of(S1) &&
                lhs > HalfInt::of(2 * e + S1 - L.R(3))) {
                if (!space_represents_element(b1, L.space(2))) {
                    fail("(iii')");
                    v.trace.bind("gate_sum", lhs.str());
                    return v;
                }
            }
        }
        if (m >= 4 && L.R(3) <= S1 && L.R(4) - S1 > 2 * e) {
            if (!space_represents_element(b1, L.space(3))) {
                fail("(iv)");
                v.trace.bind("R4", std::to_string(L.R(4)));
                return v;
            }
        }
    }
    v.universal = true;
    v.trace.clause = "all targets pass";
    return v;
}

inline UniversalityVerdict decide_universal(const GoodBongLattice& L, Route route) {
    return route == Route::ClosedForm ? decide_universal_closed_form(L)
                                      : decide_universal_target_sweep(L);
}

// ---------------------------------------------------------------------------

inline std::string explain(const UniversalityVerdict& v) {
    std::string s = v.universal ? "universal" : "non-universal";
    s += " [route ";
    s += route_name(v.route);
    s += "]: ";
    if (v.trace.clause == "RankOne") {
        s += "m=1";
        return s;
    }
    s += v.universal ? "case " : "failed clause ";
    s += v.trace.clause;
    for (const auto& [k, val] : v.trace.bindings) s += ", " + k + "=" + val;
    if (!v.note.empty()) s += " (" + v.note + ")";
    return s;
}

}  // namespace dyadic
