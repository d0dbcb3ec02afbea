#pragma once

#include <random>
#include <vector>

#include "dyadic/dyadic.hpp"

namespace testutil {

inline dyadic::DyadicField q2() {
    static dyadic::DyadicField f = dyadic::q2_field();
    return f;
}

// Totally ramified quadratic extension Q_2(sqrt 2): e = 2, f = 1.
inline dyadic::DyadicField ramified_e2() {
    static dyadic::DyadicField f = [] {
        dyadic::FieldSpec s;
        s.eisenstein = {{-2}, {0}};  // x^2 - 2
        return dyadic::make_field(s);
    }();
    return f;
}

// Unramified quadratic extension Q_2(w), w^2 + w + 1 = 0: e = 1, f = 2.
inline dyadic::DyadicField unramified_f2() {
    static dyadic::DyadicField f = [] {
        dyadic::FieldSpec s;
        s.unramified = {1, 1};
        return dyadic::make_field(s);
    }();
    return f;
}

inline std::vector<dyadic::DyadicField> all_fields() {
    return {q2(), ramified_e2(), unramified_f2()};
}

// Seeded random nonzero element: random square-class representative times a
// random square unit times a pi power, exercising generic coordinates.
inline dyadic::FieldElement random_element(const dyadic::DyadicField& field,
                                           std::mt19937_64& rng, int vspan = 6) {
    auto reps = dyadic::square_class_reps(field, {0});
    dyadic::FieldElement u = reps[rng() % reps.size()];
    dyadic::ResidueShape shape = dyadic::residue_shape(field, 2 * field.e() + 1);
    std::uint64_t key = 0;
    while (!dyadic::residue_is_unit(shape, key)) key = rng() % shape.count();
    dyadic::FieldElement s = field.element(0, dyadic::unpack_residue(shape, key));
    std::int64_t v = std::int64_t(rng() % std::uint64_t(2 * vspan + 1)) - vspan;
    return field.pi_pow(v) * u * s * s;
}

inline dyadic::GoodBongLattice random_bong(const dyadic::DyadicField& field,
                                           std::mt19937_64& rng, int m_min = 2, int m_max = 5) {
    std::int64_t e = field.e();
    return dyadic::random_valid_bong(field, rng, m_min, m_max, -2 * e - 2, 2 * e + 4,
                                     dyadic::default_unit_pool(field));
}

}  // namespace testutil
