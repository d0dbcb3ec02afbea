#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dyadic/field.hpp"

namespace dyadic {

// Every finite search in this library runs modulo an explicitly derived
// pi-power. The derivations live here and nowhere else.
struct SearchBound {
    int modulus_digits = 0;
    std::string derivation;

    // Units congruent to 1 mod pi^{2e+1} are squares (local square theorem),
    // so square classes and defects are decided by residues mod pi^{2e+1}.
    static SearchBound square_cap(const DyadicField& field) {
        return {2 * field.e() + 1, "local square theorem cap 2e+1"};
    }

    // Isotropy of a diagonal form with integral coefficients of orders in
    // [0, s]: a primitive zero of Q mod pi^m with m = 2(e+s)+1 has, at a unit
    // coordinate j, ord Q(x) >= m > 2(e+s) >= 2 ord(2 a_j x_j), so Newton
    // lifting produces an exact zero.
    static SearchBound isotropy(const DyadicField& field, int spread) {
        return {2 * (field.e() + spread) + 1,
                "Newton bound 2(e+s)+1, s=" + std::to_string(spread)};
    }

    // Representation of b (ord b >= 0) by an integral lattice: if
    // Q(x) = b mod pi^m with m = ord b + 2e + 1 then Q(x)/b is in
    // 1 + pi^{2e+1} O, a square, so b is represented exactly.
    static SearchBound representation(const DyadicField& field, std::int64_t ord_b) {
        return {int(ord_b) + 2 * field.e() + 1,
                "local square theorem, ord b + 2e + 1"};
    }
};

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t(1) << 26;

namespace detail {

// A quadratic form as an explicit term list sum coef * x_i * x_j (i <= j)
// with integral coefficients already folded to raw coordinates. For a Gram
// matrix the off-diagonal coefficient is 2 G_ij, so integrality of the terms
// is exactly 2 sL <= nL <= O, and Q(x) mod pi^k depends only on x mod pi^k.
struct QTerm {
    Coords coef{};
    int i = 0, j = 0;
};

struct QuadraticForm {
    DyadicField field;
    int n = 0;
    std::vector<QTerm> terms;

    Coords eval(const std::vector<Coords>& x) const {
        const FieldImpl& F = field.impl();
        Coords acc{};
        for (const QTerm& t : terms) {
            Coords p = F.mul_coords(t.coef, F.mul_coords(x[t.i], x[t.j]));
            acc = F.add_coords(acc, p);
        }
        return acc;
    }
};

// pi^v * unit as raw coordinates; elements at or above pi^cap fold to zero.
inline Coords fold_element(const FieldElement& x, int cap) {
    if (x.is_zero()) return Coords{};
    const FieldImpl& F = x.field().impl();
    std::int64_t v = x.valuation();
    if (v < 0) throw NonIntegralLattice("negative valuation where an integer was required");
    if (v >= cap) return Coords{};
    Coords c = x.unit_coords();
    for (std::int64_t i = 0; i < v; ++i) c = F.shift_pi_coords(c);
    return c;
}

inline QuadraticForm diagonal_form(const DyadicField& field,
                                   const std::vector<FieldElement>& coeffs, int cap) {
    QuadraticForm q;
    q.field = field;
    q.n = int(coeffs.size());
    for (int i = 0; i < q.n; ++i) q.terms.push_back({fold_element(coeffs[i], cap), i, i});
    return q;
}

struct Budget {
    std::uint64_t left;
    void spend(std::uint64_t n = 1) {
        if (left < n) throw BudgetExceeded("enumeration budget exhausted");
        left -= n;
    }
};

// Digit-level odometer search: coordinates of x are extended one pi-digit at
// a time and a branch survives level l only if Q(x) = target mod pi^{l+1}.
// `primitive` demands a unit coordinate (a nonzero digit at level 0).
class LevelSearch {
public:
    LevelSearch(const QuadraticForm& q, Coords target, int depth, bool primitive,
                Budget& budget)
        : q_(q),
          F_(q.field.impl()),
          target_(target),
          depth_(depth),
          primitive_(primitive),
          budget_(budget),
          x_(std::size_t(q.n)) {
        if (depth_ > F_.max_prec()) throw PrecisionTooSmall("search depth exceeds precision");
    }

    bool found() { return descend(0); }

private:
    bool level_ok(int level) const {
        Coords diff = F_.sub_coords(q_.eval(x_), target_);
        auto o = F_.ord_coords(diff);
        return !o || *o >= level;
    }

    bool descend(int level) {
        if (level == depth_) return true;
        int fb = F_.f() * q_.n;  // digit bits per level
        int qshift = level / F_.e();
        int col = level % F_.e();
        for (std::uint64_t d = 0; d < (std::uint64_t(1) << fb); ++d) {
            if (primitive_ && level == 0 && d == 0) continue;
            budget_.spend();
            for (int i = 0; i < q_.n; ++i)
                for (int a = 0; a < F_.f(); ++a)
                    if ((d >> (i * F_.f() + a)) & 1)
                        x_[i][F_.idx(a, col)] |= std::uint64_t(1) << qshift;
            if (level_ok(level + 1) && descend(level + 1)) return true;
            for (int i = 0; i < q_.n; ++i)
                for (int a = 0; a < F_.f(); ++a)
                    if ((d >> (i * F_.f() + a)) & 1)
                        x_[i][F_.idx(a, col)] &= ~(std::uint64_t(1) << qshift);
        }
        return false;
    }

    const QuadraticForm& q_;
    const FieldImpl& F_;
    Coords target_;
    int depth_;
    bool primitive_;
    Budget& budget_;
    std::vector<Coords> x_;
};

inline bool level_search(const QuadraticForm& q, const Coords& target, int depth,
                         bool primitive, Budget& budget) {
    return LevelSearch(q, target, depth, primitive, budget).found();
}

// ---------------------------------------------------------------------------
// Value sets as bitmasks over the packed residues of O/pi^k. Orthogonal
// blocks of a Gram matrix contribute independent value sets whose sumset is
// the value set of the whole lattice; this keeps the exhaustive enumerations
// at block size instead of full rank.
// ---------------------------------------------------------------------------

struct ValueMask {
    ResidueShape shape;
    std::vector<std::uint64_t> bits;

    explicit ValueMask(ResidueShape s) : shape(std::move(s)) {
        bits.assign(std::size_t((shape.count() + 63) / 64), 0);
    }
    void set(std::uint64_t id) { bits[id >> 6] |= std::uint64_t(1) << (id & 63); }
    bool test(std::uint64_t id) const {
        return (bits[id >> 6] >> (id & 63)) & 1;
    }
    std::vector<std::uint64_t> ids() const {
        std::vector<std::uint64_t> out;
        for (std::uint64_t id = 0; id < shape.count(); ++id)
            if (test(id)) out.push_back(id);
        return out;
    }
};

// All values Q(x) mod pi^k for x over (O/pi^{vec_digits})^n.
inline ValueMask form_value_mask(const QuadraticForm& q, int vec_digits, int k,
                                 Budget& budget) {
    ResidueShape xshape = residue_shape(q.field, vec_digits);
    ResidueShape vshape = residue_shape(q.field, k);
    ValueMask mask(vshape);
    std::vector<std::uint64_t> key(std::size_t(q.n), 0);
    std::vector<Coords> x(std::size_t(q.n), Coords{});
    while (true) {
        budget.spend();
        mask.set(pack_residue(vshape, q.eval(x)));
        int i = 0;
        for (; i < q.n; ++i) {
            if (++key[i] < xshape.count()) {
                x[i] = unpack_residue(xshape, key[i]);
                break;
            }
            key[i] = 0;
            x[i] = Coords{};
        }
        if (i == q.n) break;
    }
    return mask;
}

inline ValueMask sumset(const ValueMask& a, const ValueMask& b, Budget& budget) {
    const FieldImpl& F = a.shape.field.impl();
    ValueMask out(a.shape);
    auto ida = a.ids();
    auto idb = b.ids();
    budget.spend(std::uint64_t(ida.size()) * idb.size());
    for (std::uint64_t i : ida) {
        Coords ci = unpack_residue(a.shape, i);
        for (std::uint64_t j : idb)
            out.set(pack_residue(a.shape, F.add_coords(ci, unpack_residue(a.shape, j))));
    }
    return out;
}

}  // namespace detail
}  // namespace dyadic
