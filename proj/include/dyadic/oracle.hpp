#pragma once

#include <cstdint>
#include <vector>

#include "dyadic/enumeration.hpp"
#include "dyadic/gram.hpp"
#include "dyadic/symbols.hpp"

namespace dyadic {

// Ground-truth deciders by exhaustive residue enumeration with certified
// lifting bounds. Everything here is independent of the closed-form
// machinery: no alpha invariants, no Hilbert-symbol shortcuts.

// d(a) as max over unit residues x mod pi^{2e+1} of min(ord(eps - x^2), cap),
// computed by subtraction on raw coordinates (no division route).
inline DefectValue oracle_defect(const FieldElement& a) {
    if (a.is_zero()) throw ZeroArgument("oracle_defect of zero");
    if (a.valuation() & 1) return HalfInt::of(0);
    const DyadicField& field = a.field();
    const FieldImpl& F = field.impl();
    const int cap = SearchBound::square_cap(field).modulus_digits;
    ResidueShape shape = residue_shape(field, cap);
    const Coords& eps = a.unit_coords();
    std::int64_t best = 0;
    for (std::uint64_t key = 1; key < shape.count(); ++key) {
        if (!residue_is_unit(shape, key)) continue;
        Coords x = unpack_residue(shape, key);
        Coords diff = F.sub_coords(eps, F.mul_coords(x, x));
        auto o = F.ord_coords(diff);
        std::int64_t val = o ? std::min<std::int64_t>(*o, cap) : cap;
        best = std::max(best, val);
        if (best == cap) break;
    }
    return best == cap ? HalfInt::inf() : HalfInt::of(best);
}

// Primitive zero of the scaled diagonal form mod pi^{2(e+s)+1}.
inline bool oracle_isotropic(const DiagonalSpace& S,
                             std::uint64_t budget = kDefaultBudget) {
    const DyadicField& field = S.field();
    if (S.dim() < 2) return false;
    std::int64_t min_ord = S[0].valuation();
    for (int i = 1; i < S.dim(); ++i) min_ord = std::min(min_ord, S[i].valuation());
    std::vector<FieldElement> scaled;
    int spread = 0;
    for (int i = 0; i < S.dim(); ++i) {
        scaled.push_back(S[i] / field.pi_pow(min_ord));
        spread = std::max<int>(spread, int(S[i].valuation() - min_ord));
    }
    SearchBound bound = SearchBound::isotropy(field, spread);
    if (bound.modulus_digits > field.impl().max_prec())
        throw PrecisionTooSmall("isotropy bound exceeds working precision");
    detail::QuadraticForm q =
        detail::diagonal_form(field, scaled, bound.modulus_digits);
    detail::Budget bt{budget};
    return detail::level_search(q, Coords{}, bound.modulus_digits, /*primitive=*/true, bt);
}

namespace detail {

inline std::int64_t gram_norm_ord(const GramLattice& G) {
    const FieldElement two = G.field().from_integer(2);
    HalfInt norm = HalfInt::inf();
    for (int i = 0; i < G.rank(); ++i)
        for (int j = 0; j < G.rank(); ++j)
            norm = min(norm, i == j ? ord(G.at(i, i)) : ord(two * G.at(i, j)));
    if (norm.is_inf()) throw DegenerateGram("zero matrix");
    return norm.as_int();
}

// Connected components of the off-diagonal support; orthogonal blocks have
// independent value sets.
inline std::vector<std::vector<int>> orthogonal_components(const GramLattice& G) {
    int n = G.rank();
    std::vector<int> comp(std::size_t(n), -1);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < n; ++i) {
        if (comp[std::size_t(i)] >= 0) continue;
        std::vector<int> stack{i}, members;
        comp[std::size_t(i)] = int(out.size());
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (int w = 0; w < n; ++w)
                if (comp[std::size_t(w)] < 0 && !G.at(u, w).is_zero()) {
                    comp[std::size_t(w)] = int(out.size());
                    stack.push_back(w);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

// Q restricted to a component, with Q(x) = sum G_ii x_i^2 + sum 2 G_ij x_i x_j
// folded to integral raw coefficients.
inline QuadraticForm component_form(const GramLattice& G, const std::vector<int>& idx,
                                    int cap) {
    QuadraticForm q;
    q.field = G.field();
    q.n = int(idx.size());
    const FieldElement two = G.field().from_integer(2);
    for (int i = 0; i < q.n; ++i)
        for (int j = i; j < q.n; ++j) {
            FieldElement c =
                i == j ? G.at(idx[std::size_t(i)], idx[std::size_t(i)])
                       : two * G.at(idx[std::size_t(i)], idx[std::size_t(j)]);
            if (c.is_zero()) continue;
            if (c.valuation() >= cap) continue;
            q.terms.push_back({fold_element(c, cap), i, j});
        }
    return q;
}

inline std::uint64_t pow_u64_checked(std::uint64_t base, int exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

}  // namespace detail

// True iff some x over (O/pi^m)^rank has Q(x) = b mod pi^m, m = ord b + 2e+1.
// Orthogonal components are enumerated independently and combined through
// exhaustive residue value sets; a single component too large for that falls
// back to the digit-level odometer search with pruning.
inline bool oracle_represents(const GramLattice& G, const FieldElement& b,
                              std::uint64_t budget = kDefaultBudget) {
    if (b.is_zero()) throw ZeroArgument("oracle_represents: zero target");
    if (!b.field().same_as(G.field())) throw FieldMismatch();
    if (detail::gram_norm_ord(G) < 0)
        throw NonIntegralLattice("oracle_represents: norm not contained in O");
    if (b.valuation() < 0) return false;  // integral lattices take values in O
    const DyadicField& field = G.field();
    SearchBound bound = SearchBound::representation(field, b.valuation());
    const int m = bound.modulus_digits;
    if (m > field.impl().max_prec())
        throw PrecisionTooSmall("representation bound exceeds working precision");
    Coords target = detail::fold_element(b, m);
    ResidueShape vshape = residue_shape(field, m);

    auto components = detail::orthogonal_components(G);
    const std::uint64_t per_coord = vshape.count();
    const std::uint64_t mask_cap = std::uint64_t(1) << 22;

    detail::Budget bt{budget};
    if (components.size() == 1) {
        std::uint64_t cost = detail::pow_u64_checked(per_coord, G.rank(), mask_cap);
        detail::QuadraticForm q = detail::component_form(G, components[0], m);
        if (cost > mask_cap)
            return detail::level_search(q, target, m, /*primitive=*/false, bt);
        detail::ValueMask mask = detail::form_value_mask(q, m, m, bt);
        return mask.test(pack_residue(vshape, target));
    }
    detail::ValueMask acc(vshape);
    acc.set(0);  // empty sum
    for (const auto& members : components) {
        std::uint64_t cost = detail::pow_u64_checked(per_coord, int(members.size()), mask_cap);
        if (cost > mask_cap) throw BudgetExceeded("component too large for value-set path");
        detail::QuadraticForm q = detail::component_form(G, members, m);
        acc = detail::sumset(acc, detail::form_value_mask(q, m, m, bt), bt);
    }
    return acc.test(pack_residue(vshape, target));
}

struct OracleUniversality {
    bool universal = false;
    std::vector<FieldElement> missing;  // canonical class reps not represented
};

inline detail::ValueMask lattice_value_mask(const GramLattice& G, int k,
                                            std::uint64_t budget = kDefaultBudget);

// Universality = representing every square class of order 0 and 1. The
// per-order target batches share one exhaustive value mask of the lattice.
inline OracleUniversality oracle_universal_report(const GramLattice& G,
                                                  std::uint64_t budget = kDefaultBudget) {
    const DyadicField& field = G.field();
    if (detail::gram_norm_ord(G) < 0)
        throw NonIntegralLattice("oracle_universal: norm not contained in O");
    OracleUniversality out;
    auto targets = square_class_reps(field, {0, 1});
    for (std::int64_t o : {0, 1}) {
        const int m = SearchBound::representation(field, o).modulus_digits;
        std::optional<detail::ValueMask> mask;
        try {
            mask = lattice_value_mask(G, m, budget);
        } catch (const BudgetExceeded&) {
            // fall back to per-target searches below
        }
        for (const FieldElement& b : targets) {
            if (b.valuation() != o) continue;
            bool rep = mask ? mask->test(pack_residue(mask->shape, detail::fold_element(b, m)))
                            : oracle_represents(G, b, budget);
            if (!rep) out.missing.push_back(b);
        }
    }
    out.universal = out.missing.empty();
    return out;
}

inline bool oracle_universal(const GramLattice& G, std::uint64_t budget = kDefaultBudget) {
    return oracle_universal_report(G, budget).universal;
}

// Value set of the norm-scaled lattice: all values of pi^c Q mod pi^{k+c}
// with c = max(0, -norm_ord). Isometric lattices share c, so equal masks are
// exactly "identical value sets mod pi^k" for them; integral lattices have
// c = 0 and the mask is the plain value set of Q mod pi^k.
inline detail::ValueMask lattice_value_mask(const GramLattice& G, int k,
                                            std::uint64_t budget) {
    const DyadicField& field = G.field();
    std::int64_t c = std::max<std::int64_t>(0, -detail::gram_norm_ord(G));
    const int kk = int(k + c);
    if (kk > field.impl().max_prec())
        throw PrecisionTooSmall("value-set modulus exceeds working precision");
    ResidueShape vshape = residue_shape(field, kk);
    FieldElement scale = field.pi_pow(c);
    std::vector<FieldElement> scaled;
    for (const FieldElement& x : G.entries()) scaled.push_back(scale * x);
    GramLattice GS(field, G.rank(), std::move(scaled));

    detail::Budget bt{budget};
    detail::ValueMask acc(vshape);
    acc.set(0);
    for (const auto& members : detail::orthogonal_components(GS)) {
        detail::QuadraticForm q = detail::component_form(GS, members, kk);
        acc = detail::sumset(acc, detail::form_value_mask(q, kk, kk, bt), bt);
    }
    return acc;
}

}  // namespace dyadic
