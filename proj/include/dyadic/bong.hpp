#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "dyadic/symbols.hpp"

namespace dyadic {

// ---------------------------------------------------------------------------
// Lattices in good-BONG form <a_1,...,a_m>: ord Q(x_i) <= ord Q(x_{i+2}) and
// each ratio a_{i+1}/a_i admissible (R_{i+1}-R_i >= -2e and
// R_{i+1}-R_i + d(-a_i a_{i+1}) >= 0). Validation computes and caches the
// R_i and the alpha_i; all indices in the public API are 1-based to match
// the invariant names R_1..R_m, alpha_1..alpha_{m-1}.
// ---------------------------------------------------------------------------

class GoodBongLattice {
public:
    const DyadicField& field() const { return field_; }
    int rank() const { return int(a_.size()); }
    const std::vector<FieldElement>& coeffs() const { return a_; }
    const FieldElement& a(int i) const { return a_[std::size_t(i - 1)]; }
    std::int64_t R(int i) const { return R_[std::size_t(i - 1)]; }
    // R_i with the tail convention R_i = +inf for i > m.
    HalfInt R_ext(int i) const {
        return i <= rank() ? HalfInt::of(R(i)) : HalfInt::inf();
    }
    HalfInt alpha(int i) const { return alpha_[std::size_t(i - 1)]; }
    const std::vector<HalfInt>& alphas() const { return alpha_; }

    // d(-a_i a_{i+1}), cached from validation.
    DefectValue pair_defect(int i) const { return dpair_[std::size_t(i - 1)]; }

    // Product a_i ... a_j (empty product = 1 when j = i-1).
    FieldElement interval_product(int i, int j) const {
        FieldElement p = field_.one();
        for (int t = i; t <= j; ++t) p = p * a(t);
        return p;
    }

    DiagonalSpace space(int upto = -1) const {
        if (upto < 0) upto = rank();
        std::vector<FieldElement> c(a_.begin(), a_.begin() + upto);
        return DiagonalSpace(field_, std::move(c));
    }

private:
    friend GoodBongLattice validate_good_bong(const DyadicField&,
                                              const std::vector<FieldElement>&);
    GoodBongLattice() = default;

    DyadicField field_;
    std::vector<FieldElement> a_;
    std::vector<std::int64_t> R_;
    std::vector<HalfInt> alpha_;
    std::vector<DefectValue> dpair_;
};

namespace detail {

// alpha_i as the minimum of the defining set
//   {(R_{i+1}-R_i)/2 + e} u {R_{i+1}-R_j + d(-a_j a_{j+1}) : j <= i}
//                         u {R_{j+1}-R_i + d(-a_j a_{j+1}) : j >= i}.
inline HalfInt alpha_from_definition(const std::vector<std::int64_t>& R,
                                     const std::vector<DefectValue>& dpair, int e, int i) {
    int m = int(R.size());
    assert(1 <= i && i <= m - 1);
    HalfInt best = HalfInt::halves(R[std::size_t(i)] - R[std::size_t(i - 1)] + 2 * e);
    for (int j = 1; j <= i; ++j)
        best = min(best, HalfInt::of(R[std::size_t(i)] - R[std::size_t(j - 1)]) +
                             dpair[std::size_t(j - 1)]);
    for (int j = i; j <= m - 1; ++j)
        best = min(best, HalfInt::of(R[std::size_t(j)] - R[std::size_t(i - 1)]) +
                             dpair[std::size_t(j - 1)]);
    return best;
}

}  // namespace detail

inline GoodBongLattice validate_good_bong(const DyadicField& field,
                                          const std::vector<FieldElement>& a) {
    for (const FieldElement& x : a) {
        if (x.is_zero()) throw ZeroEntry("zero BONG entry");
        if (!x.field().same_as(field)) throw FieldMismatch();
    }
    GoodBongLattice L;
    L.field_ = field;
    L.a_ = a;
    const int m = int(a.size());
    const int e = field.e();
    for (const FieldElement& x : a) L.R_.push_back(x.valuation());
    for (int i = 1; i <= m - 1; ++i) {
        std::int64_t jump = L.R_[std::size_t(i)] - L.R_[std::size_t(i - 1)];
        DefectValue d = quadratic_defect(-(a[std::size_t(i - 1)] * a[std::size_t(i)]));
        L.dpair_.push_back(d);
        if (jump < -2 * e || HalfInt::of(jump) + d < HalfInt::of(0))
            throw NotAdjacentAdmissible(i);
    }
    for (int i = 1; i <= m - 2; ++i)
        if (L.R_[std::size_t(i - 1)] > L.R_[std::size_t(i + 1)]) throw NotGood(i);
    for (int i = 1; i <= m - 1; ++i)
        L.alpha_.push_back(detail::alpha_from_definition(L.R_, L.dpair_, e, i));
    return L;
}

inline std::vector<HalfInt> alpha_invariants(const GoodBongLattice& L) { return L.alphas(); }

// ---------------------------------------------------------------------------
// Truncated defect invariants.
// ---------------------------------------------------------------------------

// d[eps a_{i,j}] = min{ d(eps a_i...a_j), alpha_{i-1}, alpha_j }, where a
// boundary alpha is ignored when its index is 0 or m. Requires
// 1 <= i <= j+1 <= m+1.
inline HalfInt d_bracket_interval(const GoodBongLattice& L, const FieldElement& eps, int i,
                                  int j) {
    const int m = L.rank();
    if (!(1 <= i && i <= j + 1 && j <= m)) throw IndexOutOfRange("d_bracket_interval");
    if (eps.is_zero()) throw ZeroArgument("d_bracket_interval: eps = 0");
    HalfInt v = quadratic_defect(eps * L.interval_product(i, j));
    if (i - 1 != 0 && i - 1 != m) v = min(v, L.alpha(i - 1));
    if (j != 0 && j != m) v = min(v, L.alpha(j));
    return v;
}

// d[eps a_{1,i} b_{1,j}] = min{ d(eps a_{1,i} b_{1,j}), alpha_i, beta_j },
// alpha_i ignored for i in {0,m}, beta_j ignored for j in {0,n}.
inline HalfInt d_bracket_cross(const GoodBongLattice& M, const GoodBongLattice& N,
                               const FieldElement& eps, int i, int j) {
    if (!(0 <= i && i <= M.rank() && 0 <= j && j <= N.rank()))
        throw IndexOutOfRange("d_bracket_cross");
    if (eps.is_zero()) throw ZeroArgument("d_bracket_cross: eps = 0");
    FieldElement p = eps * M.interval_product(1, i) * N.interval_product(1, j);
    HalfInt v = quadratic_defect(p);
    if (i != 0 && i != M.rank()) v = min(v, M.alpha(i));
    if (j != 0 && j != N.rank()) v = min(v, N.alpha(j));
    return v;
}

// ---------------------------------------------------------------------------
// Representation thresholds A_i(M, N) for ranks m >= n.
// ---------------------------------------------------------------------------

// A_i = min{ (R_{i+1}-S_i)/2 + e,
//            R_{i+1}-S_i + d[-a_{1,i+1} b_{1,i-1}],
//            R_{i+1}+R_{i+2}-S_{i-1}-S_i + d[a_{1,i+2} b_{1,i-2}] },
// the last term ignored at i = 1 and i = m-1. Valid for 1 <= i <= min(m-1,n).
inline HalfInt a_invariant(const GoodBongLattice& M, const GoodBongLattice& N, int i) {
    const int m = M.rank(), n = N.rank();
    if (!(1 <= i && i <= std::min(m - 1, n))) throw IndexOutOfRange("a_invariant");
    const int e = M.field().e();
    FieldElement one = M.field().one();
    HalfInt v = HalfInt::halves(M.R(i + 1) - N.R(i) + 2 * e);
    v = min(v, HalfInt::of(M.R(i + 1) - N.R(i)) + d_bracket_cross(M, N, -one, i + 1, i - 1));
    if (i != 1 && i != m - 1)
        v = min(v, HalfInt::of(M.R(i + 1) + M.R(i + 2) - N.R(i - 1) - N.R(i)) +
                       d_bracket_cross(M, N, one, i + 2, i - 2));
    return v;
}

// The composite value S_{n+1} + A_{n+1} for n <= m-2 (S_{n+1} viewed as
// arbitrarily large):
//   min{ R_{n+2} + d[-a_{1,n+2} b_{1,n}],
//        R_{n+2}+R_{n+3}-S_n + d[a_{1,n+3} b_{1,n-1}] },
// the second term ignored when n = m-2.
inline HalfInt composite_a_invariant(const GoodBongLattice& M, const GoodBongLattice& N) {
    const int m = M.rank(), n = N.rank();
    if (!(n <= m - 2)) throw IndexOutOfRange("composite_a_invariant: need n <= m-2");
    FieldElement one = M.field().one();
    HalfInt v = HalfInt::of(M.R(n + 2)) + d_bracket_cross(M, N, -one, n + 2, n);
    if (n != m - 2)
        v = min(v, HalfInt::of(M.R(n + 2) + M.R(n + 3) - N.R(n)) +
                       d_bracket_cross(M, N, one, n + 3, n - 1));
    return v;
}

// ---------------------------------------------------------------------------
// Classification: L ~ K iff FL ~ FK, the R and alpha sequences agree,
// d(a_1..a_i b_1..b_i) >= alpha_i for all i, and the prefix space condition
// [b_1,..,b_{i-1}] -> [a_1,..,a_i] holds whenever alpha_{i-1} + alpha_i > 2e.
// ---------------------------------------------------------------------------

inline bool lattices_isometric(const GoodBongLattice& L, const GoodBongLattice& K) {
    if (!L.field().same_as(K.field())) throw FieldMismatch();
    if (L.rank() != K.rank()) return false;
    if (!space_represents_space(L.space(), K.space())) return false;  // codim 0
    const int m = L.rank();
    const int e = L.field().e();
    for (int i = 1; i <= m; ++i)
        if (L.R(i) != K.R(i)) return false;
    for (int i = 1; i <= m - 1; ++i)
        if (L.alpha(i) != K.alpha(i)) return false;
    for (int i = 1; i <= m - 1; ++i) {
        FieldElement p = L.interval_product(1, i) * K.interval_product(1, i);
        if (quadratic_defect(p) < L.alpha(i)) return false;
    }
    for (int i = 2; i <= m - 1; ++i) {
        if (L.alpha(i - 1) + L.alpha(i) > HalfInt::of(2 * e)) {
            if (!space_represents_space(K.space(i - 1), L.space(i))) return false;
        }
    }
    return true;
}

}  // namespace dyadic
