#pragma once

#include <cstdint>
#include <vector>

#include "dyadic/bong.hpp"

namespace dyadic {

// Symmetric Gram matrix B(x_i, x_j) over the field; diagonal entries are the
// Q-values. Entries may be half-integral (2 sL <= nL), rows/columns 0-based.
class GramLattice {
public:
    GramLattice(DyadicField field, int rank, std::vector<FieldElement> entries)
        : field_(std::move(field)), m_(rank), g_(std::move(entries)) {
        if (int(g_.size()) != m_ * m_) throw DegenerateGram("entry count is not rank^2");
        for (int i = 0; i < m_; ++i)
            for (int j = i + 1; j < m_; ++j)
                if (!(at(i, j) == at(j, i))) throw DegenerateGram("matrix not symmetric");
    }

    const DyadicField& field() const { return field_; }
    int rank() const { return m_; }
    const FieldElement& at(int i, int j) const { return g_[std::size_t(i) * m_ + j]; }
    const std::vector<FieldElement>& entries() const { return g_; }

private:
    DyadicField field_;
    int m_;
    std::vector<FieldElement> g_;
};

namespace detail {

// Unit multipliers t = tau * pi^{(R2-R1)/2} with ord(t^2 a1 + a2) >= R1, in
// canonical residue order. Existence for an admissible descent follows from
// R2 - R1 + d(-a1 a2) >= 0; residues mod pi^{ceil((R1-R2)/2)+1} decide the
// condition since the descent is at most 2e.
inline std::vector<std::pair<FieldElement, FieldElement>> admissible_binary_t(
    const DyadicField& field, const FieldElement& a1, const FieldElement& a2) {
    std::int64_t delta = a1.valuation() - a2.valuation();
    assert(delta > 0 && delta % 2 == 0);
    int digits = int(delta / 2) + 1;
    ResidueShape shape = residue_shape(field, digits);
    std::vector<std::pair<FieldElement, FieldElement>> out;
    for (std::uint64_t key = 1; key < shape.count(); ++key) {
        if (!residue_is_unit(shape, key)) continue;
        FieldElement t = field.pi_pow(-delta / 2) * field.element(0, unpack_residue(shape, key));
        auto s = try_add(t * t * a1, a2);
        if (!s) {
            // cancellation past every retained digit: entry is zero to
            // working precision, far above the R1 threshold
            out.emplace_back(t, field.zero());
        } else if (HalfInt::of(a1.valuation()) <= ord(*s)) {
            out.emplace_back(t, *s);
        }
    }
    return out;
}

}  // namespace detail

// Block-diagonal Gram for a good BONG: descending pairs R_{i+1} < R_i become
// binary blocks [[a_i, t a_i], [t a_i, t^2 a_i + a_{i+1}]] on the basis
// {x_i, t x_i + x_{i+1}}; everything else splits off as unary [a_i]. The
// good-BONG ordering R_i <= R_{i+2} keeps descents from chaining, so the
// greedy pairing is well-defined, and det of a binary block is exactly
// a_i a_{i+1}.
inline GramLattice bong_to_gram(const GoodBongLattice& L) {
    const DyadicField& field = L.field();
    const int m = L.rank();
    std::vector<FieldElement> g(std::size_t(m) * m, field.zero());
    auto put = [&](int i, int j, const FieldElement& x) {
        g[std::size_t(i) * m + j] = x;
        g[std::size_t(j) * m + i] = x;
    };
    int i = 1;
    while (i <= m) {
        if (i + 1 <= m && L.R(i + 1) < L.R(i)) {
            auto ts = detail::admissible_binary_t(field, L.a(i), L.a(i + 1));
            if (ts.empty()) throw NoAdmissibleT("no admissible t for descent at " +
                                                std::to_string(i));
            const auto& [t, corner] = ts.front();
            put(i - 1, i - 1, L.a(i));
            put(i - 1, i, t * L.a(i));
            put(i, i, corner);
            i += 2;
        } else {
            put(i - 1, i - 1, L.a(i));
            i += 1;
        }
    }
    return GramLattice(field, m, std::move(g));
}

struct GramInvariants {
    std::int64_t norm_ord = 0;   // ord of the ideal generated by Q(L)
    std::int64_t scale_ord = 0;  // ord of B(L, L)
    FieldElement det;            // exact determinant
    FieldElement det_class;      // canonical square-class representative
    int det_class_id = 0;
};

namespace detail {

inline FieldElement gram_det(const GramLattice& G) {
    // Laplace expansion over the first row; ranks here are small.
    const DyadicField& field = G.field();
    int m = G.rank();
    if (m > 8) throw BudgetExceeded("determinant expansion beyond rank 8");
    std::vector<int> cols;
    for (int j = 0; j < m; ++j) cols.push_back(j);
    struct Rec {
        const GramLattice& G;
        const DyadicField& field;
        FieldElement run(int row, std::vector<int>& cols) {
            if (cols.empty()) return field.one();
            FieldElement acc = field.zero();
            for (std::size_t p = 0; p < cols.size(); ++p) {
                int j = cols[p];
                const FieldElement& pivot = G.at(row, j);
                if (pivot.is_zero()) continue;
                cols.erase(cols.begin() + std::ptrdiff_t(p));
                FieldElement minor = run(row + 1, cols);
                cols.insert(cols.begin() + std::ptrdiff_t(p), j);
                if (minor.is_zero()) continue;
                FieldElement term = pivot * minor;
                acc = (p % 2 == 0) ? acc + term : acc - term;
            }
            return acc;
        }
    } rec{G, field};
    try {
        return rec.run(0, cols);
    } catch (const PrecisionLoss&) {
        throw DegenerateGram("determinant vanishes to working precision");
    }
}

}  // namespace detail

// norm = (diagonal, 2 * off-diagonal) ideal since
// Q(sum x_i e_i) = sum G_ii x_i^2 + 2 sum_{i<j} G_ij x_i x_j; scale is the
// ideal of all entries.
inline GramInvariants gram_invariants(const GramLattice& G) {
    const DyadicField& field = G.field();
    FieldElement two = field.from_integer(2);
    HalfInt norm = HalfInt::inf(), scale = HalfInt::inf();
    for (int i = 0; i < G.rank(); ++i)
        for (int j = 0; j < G.rank(); ++j) {
            const FieldElement& x = G.at(i, j);
            scale = min(scale, ord(x));
            norm = min(norm, i == j ? ord(x) : ord(two * x));
        }
    if (norm.is_inf() || scale.is_inf()) throw DegenerateGram("zero matrix");
    GramInvariants inv;
    inv.norm_ord = norm.as_int();
    inv.scale_ord = scale.as_int();
    inv.det = detail::gram_det(G);
    if (inv.det.is_zero()) throw DegenerateGram("determinant is zero");
    inv.det_class_id = detail::class_id(inv.det);
    inv.det_class = detail::class_rep(field, inv.det_class_id);
    return inv;
}

// Gram of a diagonal lattice <c_1,...,c_n>.
inline GramLattice diagonal_gram(const DyadicField& field,
                                 const std::vector<FieldElement>& coeffs) {
    int n = int(coeffs.size());
    std::vector<FieldElement> g(std::size_t(n) * n, field.zero());
    for (int i = 0; i < n; ++i) g[std::size_t(i) * n + i] = coeffs[std::size_t(i)];
    return GramLattice(field, n, std::move(g));
}

}  // namespace dyadic
