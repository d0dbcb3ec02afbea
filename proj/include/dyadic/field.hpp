#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dyadic/errors.hpp"
#include "dyadic/half_integer.hpp"

namespace dyadic {

// ---------------------------------------------------------------------------
// A dyadic local field F/Q_2 as an unramified-then-Eisenstein tower:
//
//   Q_2 --(monic g, deg f, irreducible mod 2)--> Q_2(w)
//       --(monic Eisenstein E, deg e over Z_2[w])--> F = Q_2(w)(pi)
//
// Elements of the ring of integers O are stored over the monomial basis
// { w^a pi^b : 0 <= a < f, 0 <= b < e } with coefficients in Z/2^M. This is
// an integral basis, so x is in pi^k O exactly when every coordinate c_{a,b}
// is divisible by 2^ceil((k-b)/e); valuations read directly off coordinates.
//
// A FieldElement is kept normalized as pi^v * unit. Multiplication and
// division are exact modulo the working precision; only addition and
// subtraction can lose digits to cancellation, and an operation that cannot
// certify the valuation of its result throws PrecisionLoss instead of
// guessing. Field handles and elements are immutable values.
// ---------------------------------------------------------------------------

inline constexpr int kMaxTowerDegree = 16;

using Coords = std::array<std::uint64_t, kMaxTowerDegree>;

struct FieldSpec {
    // Non-leading coefficients c_0..c_{f-1} of the unramified polynomial
    // (monic, 2-adic integer coefficients). Empty means f = 1.
    std::vector<std::int64_t> unramified;
    // Non-leading coefficients of the Eisenstein polynomial, each an element
    // of the unramified subring given by its integer coordinates over
    // 1,w,..,w^{f-1}. Empty means e = 1 with pi = 2 (polynomial x - 2).
    std::vector<std::vector<std::int64_t>> eisenstein;
    // Retained pi-adic digits past the valuation; 0 selects the default.
    int precision = 0;
};

class FieldImpl;
class FieldElement;

// Shared, immutable handle. Cheap to copy; safe to use across threads.
class DyadicField {
public:
    DyadicField() = default;
    explicit DyadicField(std::shared_ptr<const FieldImpl> impl) : impl_(std::move(impl)) {}

    const FieldImpl& impl() const {
        assert(impl_);
        return *impl_;
    }
    bool valid() const { return impl_ != nullptr; }

    int e() const;
    int f() const;
    int degree() const;     // e*f
    int precision() const;  // N, pi-digits
    const std::string& fingerprint() const;
    const FieldSpec& spec() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement pi_pow(std::int64_t k) const;
    FieldElement from_integer(std::int64_t n) const;
    // n / 2^t, exact.
    FieldElement from_ratio(std::int64_t n, int t) const;
    // pi^v * (unit given by coordinates); coords must be a unit of O.
    FieldElement element(std::int64_t v, const Coords& unit_coords) const;

    bool same_as(const DyadicField& other) const;

private:
    std::shared_ptr<const FieldImpl> impl_;
};

DyadicField make_field(const FieldSpec& spec);

namespace detail {
inline int ceil_div(int a, int b) { return (a + b - 1) / b; }
}  // namespace detail

class FieldImpl : public std::enable_shared_from_this<FieldImpl> {
public:
    // Use make_field; the constructor validates everything it is given.
    explicit FieldImpl(FieldSpec spec);

    int f() const { return f_; }
    int e() const { return e_; }
    int degree() const { return d_; }
    int precision() const { return N_; }
    int coef_bits() const { return M_; }
    int max_prec() const { return e_ * M_; }  // certified pi-digits cap
    const FieldSpec& spec() const { return spec_; }
    const std::string& fingerprint() const { return fingerprint_; }

    int idx(int a, int b) const { return b * f_ + a; }
    std::uint64_t mask() const { return mask_; }

    // --- raw coordinate arithmetic, exact mod 2^M --------------------------
    Coords zero_coords() const { return Coords{}; }
    Coords one_coords() const {
        Coords c{};
        c[0] = 1;
        return c;
    }
    bool coords_zero(const Coords& x) const {
        for (int i = 0; i < d_; ++i)
            if (x[i] & mask_) return false;
        return true;
    }
    Coords add_coords(const Coords& x, const Coords& y) const {
        Coords r{};
        for (int i = 0; i < d_; ++i) r[i] = (x[i] + y[i]) & mask_;
        return r;
    }
    Coords sub_coords(const Coords& x, const Coords& y) const {
        Coords r{};
        for (int i = 0; i < d_; ++i) r[i] = (x[i] - y[i]) & mask_;
        return r;
    }
    Coords neg_coords(const Coords& x) const {
        Coords r{};
        for (int i = 0; i < d_; ++i) r[i] = (0 - x[i]) & mask_;
        return r;
    }
    Coords mul_coords(const Coords& x, const Coords& y) const;
    Coords shift_pi_coords(const Coords& x) const;  // multiply by pi
    Coords div_pi_coords(const Coords& x) const;    // divide by pi; needs ord >= 1
    Coords invert_coords(const Coords& u) const;    // u must be a unit

    // pi-adic valuation of the element the coordinates describe, or nullopt
    // when every coordinate vanishes mod 2^M.
    std::optional<std::int64_t> ord_coords(const Coords& x) const {
        std::int64_t best = -1;
        for (int b = 0; b < e_; ++b)
            for (int a = 0; a < f_; ++a) {
                std::uint64_t c = x[idx(a, b)] & mask_;
                if (!c) continue;
                std::int64_t o = std::int64_t(e_) * std::countr_zero(c) + b;
                if (best < 0 || o < best) best = o;
            }
        if (best < 0) return std::nullopt;
        return best;
    }

    bool coords_equal_mod(const Coords& x, const Coords& y, int k) const {
        Coords d = sub_coords(x, y);
        auto o = ord_coords(d);
        return !o || *o >= k;
    }

private:
    friend class FieldElement;
    friend class DyadicField;
    friend DyadicField make_field(const FieldSpec&);

    void validate_and_derive();
    void build_tables();

    // residue field F_{2^f} helpers (bitmask polynomials)
    std::uint32_t gf_mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t gf_inv(std::uint32_t a) const;

    FieldSpec spec_;
    int f_ = 1, e_ = 1, d_ = 1;
    int N_ = 0, M_ = 0;
    std::uint64_t mask_ = 0;
    std::vector<std::int64_t> upoly_;                 // c_0..c_{f-1}, exact
    std::vector<std::vector<std::int64_t>> epoly_;    // c_0..c_{e-1}, exact
    std::vector<std::vector<std::uint64_t>> wpow_;    // w^j over w-basis, j in [f, 2f-1)
    std::vector<Coords> pipow_;                       // w^a pi^{e+j} at [j*f + a]
    Coords xi_inv_{};                                 // (pi^e / 2)^{-1}
    std::uint32_t respoly_ = 0;                       // unramified poly mod 2
    std::string fingerprint_;
};

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

class FieldElement {
public:
    FieldElement() = default;

    bool is_zero() const { return zero_; }
    const DyadicField& field() const { return field_; }
    std::int64_t valuation() const {
        assert(!zero_);
        return v_;
    }
    const Coords& unit_coords() const {
        assert(!zero_);
        return unit_;
    }
    // Certified pi-digits of the unit part past the valuation.
    int precision() const { return zero_ ? 0 : prec_; }

    friend HalfInt ord(const FieldElement& a) {
        return a.zero_ ? HalfInt::inf() : HalfInt::of(a.v_);
    }

    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_same_field(b);
        if (a.zero_ || b.zero_) return a.field_.zero();
        const FieldImpl& F = a.field_.impl();
        return FieldElement(a.field_, a.v_ + b.v_, F.mul_coords(a.unit_, b.unit_),
                            std::min(a.prec_, b.prec_));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        a.check_same_field(b);
        if (b.zero_) throw DivisionByZero();
        if (a.zero_) return a.field_.zero();
        const FieldImpl& F = a.field_.impl();
        return FieldElement(a.field_, a.v_ - b.v_, F.mul_coords(a.unit_, F.invert_coords(b.unit_)),
                            std::min(a.prec_, b.prec_));
    }
    friend FieldElement operator-(const FieldElement& a) {
        if (a.zero_) return a;
        return FieldElement(a.field_, a.v_, a.field_.impl().neg_coords(a.unit_), a.prec_);
    }
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        auto r = try_add(a, b);
        if (!r) throw PrecisionLoss("add: cancellation exhausted retained digits");
        return *r;
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        auto r = try_add(a, -b);
        if (!r) throw PrecisionLoss("sub: cancellation exhausted retained digits");
        return *r;
    }

    // Addition that reports an uncertifiable (all retained digits cancelled)
    // result as nullopt instead of throwing.
    friend std::optional<FieldElement> try_add(const FieldElement& a, const FieldElement& b) {
        a.check_same_field(b);
        if (a.zero_) return b;
        if (b.zero_) return a;
        const FieldImpl& F = a.field_.impl();
        const FieldElement& lo = a.v_ <= b.v_ ? a : b;
        const FieldElement& hi = a.v_ <= b.v_ ? b : a;
        std::int64_t gap = hi.v_ - lo.v_;
        if (gap >= lo.prec_) return lo;  // other addend is below certified digits
        Coords shifted = hi.unit_;
        for (std::int64_t i = 0; i < gap; ++i) shifted = F.shift_pi_coords(shifted);
        Coords raw = F.add_coords(lo.unit_, shifted);
        int known = int(std::min<std::int64_t>(lo.prec_, gap + hi.prec_));
        known = std::min(known, F.max_prec());
        auto s = F.ord_coords(raw);
        if (!s || *s >= known) return std::nullopt;
        for (std::int64_t i = 0; i < *s; ++i) raw = F.div_pi_coords(raw);
        return FieldElement(lo.field_, lo.v_ + *s, raw, int(known - *s));
    }
    friend std::optional<FieldElement> try_sub(const FieldElement& a, const FieldElement& b) {
        return try_add(a, -b);
    }

    // Equality modulo the shared certified precision.
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check_same_field(b);
        if (a.zero_ || b.zero_) return a.zero_ && b.zero_;
        if (a.v_ != b.v_) return false;
        int k = std::min(a.prec_, b.prec_);
        return a.field_.impl().coords_equal_mod(a.unit_, b.unit_, k);
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    // Packed residue of the unit part modulo pi^k (for tables and memo keys).
    std::uint64_t unit_key(int k) const;

private:
    friend class DyadicField;
    friend class FieldImpl;

    FieldElement(DyadicField field, std::int64_t v, const Coords& unit, int prec)
        : field_(std::move(field)), v_(v), unit_(unit), prec_(prec), zero_(false) {
        assert(prec_ >= 1);
    }
    explicit FieldElement(DyadicField field)  // zero
        : field_(std::move(field)), zero_(true) {}

    void check_same_field(const FieldElement& b) const {
        if (!field_.same_as(b.field_)) throw FieldMismatch();
    }

    DyadicField field_;
    std::int64_t v_ = 0;
    Coords unit_{};
    int prec_ = 0;
    bool zero_ = true;
};

// ---------------------------------------------------------------------------
// Residue packing: O/pi^k has one coordinate per basis monomial w^a pi^b,
// taken modulo 2^ceil((k-b)/e). Packed keys order columns by (b, a) with
// column 0 in the lowest bits, so over Q_2 the key of an integer residue is
// the integer itself.
// ---------------------------------------------------------------------------

struct ResidueShape {
    DyadicField field;
    int k = 0;
    std::array<int, kMaxTowerDegree> bits{};   // per slot idx(a,b)
    std::array<int, kMaxTowerDegree> shift{};  // bit offset of slot in the key
    int total_bits = 0;

    std::uint64_t count() const { return std::uint64_t(1) << total_bits; }
};

inline ResidueShape residue_shape(const DyadicField& field, int k) {
    const FieldImpl& F = field.impl();
    if (k < 1 || k > F.max_prec()) throw PrecisionTooSmall("residue_shape: k out of range");
    ResidueShape s;
    s.field = field;
    s.k = k;
    int off = 0;
    for (int b = 0; b < F.e(); ++b) {
        int tb = detail::ceil_div(std::max(0, k - b), F.e());
        for (int a = 0; a < F.f(); ++a) {
            int i = F.idx(a, b);
            s.bits[i] = tb;
            s.shift[i] = off;
            off += tb;
        }
    }
    s.total_bits = off;
    if (off > 62) throw BudgetExceeded("residue space exceeds 2^62");
    return s;
}

inline std::uint64_t pack_residue(const ResidueShape& s, const Coords& x) {
    const FieldImpl& F = s.field.impl();
    std::uint64_t key = 0;
    for (int i = 0; i < F.degree(); ++i) {
        std::uint64_t c = x[i] & ((s.bits[i] >= 64) ? ~0ull : ((1ull << s.bits[i]) - 1));
        key |= c << s.shift[i];
    }
    return key;
}

inline Coords unpack_residue(const ResidueShape& s, std::uint64_t key) {
    const FieldImpl& F = s.field.impl();
    Coords x{};
    for (int i = 0; i < F.degree(); ++i)
        x[i] = (key >> s.shift[i]) & ((1ull << s.bits[i]) - 1);
    return x;
}

inline bool residue_is_unit(const ResidueShape& s, std::uint64_t key) {
    const FieldImpl& F = s.field.impl();
    for (int a = 0; a < F.f(); ++a)
        if ((key >> s.shift[F.idx(a, 0)]) & 1) return true;
    return false;
}

inline std::uint64_t FieldElement::unit_key(int k) const {
    assert(!zero_);
    if (prec_ < k) throw PrecisionTooSmall("unit_key: fewer certified digits than requested");
    return pack_residue(residue_shape(field_, k), unit_);
}

// ---------------------------------------------------------------------------
// FieldImpl implementation
// ---------------------------------------------------------------------------

inline FieldImpl::FieldImpl(FieldSpec spec) : spec_(std::move(spec)) {
    validate_and_derive();
    build_tables();
}

inline void FieldImpl::validate_and_derive() {
    upoly_ = spec_.unramified;
    epoly_ = spec_.eisenstein;
    f_ = int(upoly_.empty() ? 1 : upoly_.size());
    if (epoly_.empty()) epoly_ = {{-2}};  // x - 2, pi = 2
    e_ = int(epoly_.size());
    d_ = e_ * f_;
    if (d_ > kMaxTowerDegree)
        throw NotEisenstein("tower degree " + std::to_string(d_) + " exceeds supported maximum");

    N_ = spec_.precision > 0 ? spec_.precision : 8 * e_ + 24;
    spec_.precision = N_;
    if (N_ < 4 * e_ + 4)
        throw PrecisionTooSmall("precision " + std::to_string(N_) + " < " +
                                std::to_string(4 * e_ + 4));
    M_ = detail::ceil_div(N_, e_) + 2;
    if (M_ > 62) throw PrecisionTooSmall("precision exceeds 62 coefficient bits");
    mask_ = (std::uint64_t(1) << M_) - 1;

    // Unramified polynomial: monic given implicitly; irreducible mod 2.
    if (f_ > 1) {
        respoly_ = std::uint32_t(1) << f_;
        for (int a = 0; a < f_; ++a)
            if (upoly_[a] & 1) respoly_ |= std::uint32_t(1) << a;
        if (!(respoly_ & 1))
            throw NotIrreducibleUnramified("constant term even: x divides the reduction");
        // Trial division by every monic polynomial of degree 1..f/2 over F_2.
        for (int dg = 1; 2 * dg <= f_; ++dg) {
            for (std::uint32_t low = 0; low < (std::uint32_t(1) << dg); ++low) {
                std::uint32_t divisor = (std::uint32_t(1) << dg) | low;
                std::uint32_t rem = respoly_;
                while (true) {
                    int dr = 31 - std::countl_zero(rem | 1u);
                    if (rem == 0 || dr < dg) break;
                    rem ^= divisor << (dr - dg);
                }
                if (rem == 0)
                    throw NotIrreducibleUnramified("unramified polynomial reducible mod 2");
            }
        }
    } else {
        respoly_ = 0b10;  // x, unused beyond gf ops on 1-bit field
        if (!upoly_.empty()) upoly_.clear();
    }

    // Eisenstein conditions over the unramified subring, on the exact inputs:
    // ord_2 >= 1 for every non-leading coefficient, ord_2 == 1 for c_0.
    auto ord2_vec = [&](const std::vector<std::int64_t>& c) {
        int best = 1 << 20;
        for (std::int64_t x : c) {
            if (x == 0) continue;
            std::uint64_t u = std::uint64_t(x < 0 ? -x : x);
            best = std::min(best, std::countr_zero(u));
        }
        return best;
    };
    for (auto& c : epoly_) {
        if (int(c.size()) > f_)
            throw NotEisenstein("Eisenstein coefficient has more than f coordinates");
        c.resize(f_, 0);
    }
    if (ord2_vec(epoly_[0]) != 1)
        throw NotEisenstein("constant term must have valuation exactly 1 in the unramified ring");
    for (int i = 1; i < e_; ++i)
        if (ord2_vec(epoly_[i]) < 1)
            throw NotEisenstein("coefficient " + std::to_string(i) + " must be divisible by 2");

    fingerprint_ = "f" + std::to_string(f_) + "e" + std::to_string(e_) + "M" + std::to_string(M_);
    for (auto c : upoly_) fingerprint_ += "u" + std::to_string(c);
    for (auto& c : epoly_) {
        fingerprint_ += "E";
        for (auto x : c) fingerprint_ += "." + std::to_string(x);
    }
}

inline void FieldImpl::build_tables() {
    // w^j for j in [f, 2f-1), coefficients over the w-basis.
    if (f_ > 1) {
        wpow_.assign(std::size_t(f_ - 1), std::vector<std::uint64_t>(f_, 0));
        for (int a = 0; a < f_; ++a) wpow_[0][a] = (0 - std::uint64_t(upoly_[a])) & mask_;
        for (int j = 1; j < f_ - 1; ++j) {
            // w * wpow_[j-1]
            std::vector<std::uint64_t> prev = wpow_[j - 1];
            std::vector<std::uint64_t> cur(f_, 0);
            for (int a = 0; a < f_ - 1; ++a) cur[a + 1] = prev[a];
            std::uint64_t top = prev[f_ - 1];
            for (int a = 0; a < f_; ++a) cur[a] = (cur[a] + top * wpow_[0][a]) & mask_;
            wpow_[j] = cur;
        }
    }

    // pi^e in standard form.
    Coords pie{};
    for (int i = 0; i < e_; ++i)
        for (int a = 0; a < f_; ++a)
            pie[idx(a, i)] = (0 - std::uint64_t(epoly_[i][a])) & mask_;

    // w^a * pi^{e+j}: row j = 0 first (needed by shift_pi), rest by shifting.
    auto wshift = [&](const Coords& x, int a) {
        // multiply by w^a, fold degrees >= f back down
        Coords r{};
        for (int b = 0; b < e_; ++b) {
            std::array<std::uint64_t, 2 * kMaxTowerDegree> col{};
            for (int aa = 0; aa < f_; ++aa) col[aa + a] = x[idx(aa, b)];
            for (int j = f_ + a - 1; j >= f_; --j) {
                std::uint64_t c = col[j];
                if (!c) continue;
                for (int aa = 0; aa < f_; ++aa)
                    col[aa] = (col[aa] + c * wpow_[j - f_][aa]) & mask_;
            }
            for (int aa = 0; aa < f_; ++aa) r[idx(aa, b)] = col[aa] & mask_;
        }
        return r;
    };

    pipow_.assign(std::size_t(e_) * f_, Coords{});
    Coords row = pie;
    for (int j = 0; j < e_; ++j) {
        for (int a = 0; a < f_; ++a) pipow_[std::size_t(j) * f_ + a] = a == 0 ? row : wshift(row, a);
        if (j + 1 < e_) {
            // row <- pi * row
            Coords next{};
            for (int b = 0; b < e_ - 1; ++b)
                for (int a = 0; a < f_; ++a) next[idx(a, b + 1)] = row[idx(a, b)];
            for (int a = 0; a < f_; ++a) {
                std::uint64_t c = row[idx(a, e_ - 1)];
                if (!c) continue;
                const Coords& fold = pipow_[a];  // w^a pi^e
                for (int i = 0; i < d_; ++i) next[i] = (next[i] + c * fold[i]) & mask_;
            }
            row = next;
        }
    }

    // xi = pi^e / 2 = -sum (c_i/2) pi^i, computed from the exact inputs.
    Coords xi{};
    for (int i = 0; i < e_; ++i)
        for (int a = 0; a < f_; ++a) {
            std::int64_t c = epoly_[i][a];
            assert(c % 2 == 0);
            xi[idx(a, i)] = (0 - std::uint64_t(c / 2)) & mask_;
        }
    assert(ord_coords(xi) && *ord_coords(xi) == 0);
    xi_inv_ = invert_coords(xi);

    // Tower sanity: ord(2) = e, and pi^e = 2 * xi.
    Coords two{};
    two[0] = 2;
    assert(ord_coords(two) && *ord_coords(two) == e_);
    assert(coords_equal_mod(mul_coords(two, xi), pie, e_ * M_ - e_));
}

inline Coords FieldImpl::mul_coords(const Coords& x, const Coords& y) const {
    // raw product: w-degree < 2f-1, pi-degree < 2e-1
    std::array<std::uint64_t, (2 * kMaxTowerDegree) * (2 * kMaxTowerDegree)> tmp{};
    const int W = 2 * f_ - 1;
    auto t = [&](int a, int b) -> std::uint64_t& { return tmp[std::size_t(b) * W + a]; };
    for (int b1 = 0; b1 < e_; ++b1)
        for (int a1 = 0; a1 < f_; ++a1) {
            std::uint64_t c1 = x[idx(a1, b1)];
            if (!c1) continue;
            for (int b2 = 0; b2 < e_; ++b2)
                for (int a2 = 0; a2 < f_; ++a2) {
                    std::uint64_t c2 = y[idx(a2, b2)];
                    if (c2) t(a1 + a2, b1 + b2) += c1 * c2;
                }
        }
    // fold w-degrees >= f
    for (int b = 0; b < 2 * e_ - 1; ++b)
        for (int a = 2 * f_ - 2; a >= f_; --a) {
            std::uint64_t c = t(a, b) & mask_;
            if (!c) continue;
            for (int aa = 0; aa < f_; ++aa) t(aa, b) += c * wpow_[a - f_][aa];
        }
    // fold pi-degrees >= e
    Coords out{};
    for (int b = 0; b < e_; ++b)
        for (int a = 0; a < f_; ++a) out[idx(a, b)] = t(a, b) & mask_;
    for (int b = e_; b <= 2 * e_ - 2; ++b)
        for (int a = 0; a < f_; ++a) {
            std::uint64_t c = t(a, b) & mask_;
            if (!c) continue;
            const Coords& fold = pipow_[std::size_t(b - e_) * f_ + a];
            for (int i = 0; i < d_; ++i) out[i] = (out[i] + c * fold[i]) & mask_;
        }
    return out;
}

inline Coords FieldImpl::shift_pi_coords(const Coords& x) const {
    Coords out{};
    for (int b = 0; b < e_ - 1; ++b)
        for (int a = 0; a < f_; ++a) out[idx(a, b + 1)] = x[idx(a, b)];
    for (int a = 0; a < f_; ++a) {
        std::uint64_t c = x[idx(a, e_ - 1)];
        if (!c) continue;
        const Coords& fold = pipow_[a];  // w^a pi^e
        for (int i = 0; i < d_; ++i) out[i] = (out[i] + c * fold[i]) & mask_;
    }
    return out;
}

inline Coords FieldImpl::div_pi_coords(const Coords& x) const {
    // x / pi = sum_{b>=1} C_b pi^{b-1}  +  (C_0/2) xi^{-1} pi^{e-1}
    Coords z{};
    for (int a = 0; a < f_; ++a) {
        std::uint64_t c0 = x[idx(a, 0)] & mask_;
        assert((c0 & 1) == 0 && "div_pi_coords requires ord >= 1");
        z[idx(a, e_ - 1)] = c0 >> 1;
    }
    Coords out = mul_coords(z, xi_inv_);
    for (int b = 1; b < e_; ++b)
        for (int a = 0; a < f_; ++a)
            out[idx(a, b - 1)] = (out[idx(a, b - 1)] + x[idx(a, b)]) & mask_;
    return out;
}

inline std::uint32_t FieldImpl::gf_mul(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t acc = 0;
    for (int i = 0; i < f_; ++i)
        if ((b >> i) & 1) acc ^= a << i;
    for (int j = 2 * f_ - 2; j >= f_; --j)
        if ((acc >> j) & 1) acc ^= respoly_ << (j - f_);
    return acc & ((std::uint32_t(1) << f_) - 1);
}

inline std::uint32_t FieldImpl::gf_inv(std::uint32_t a) const {
    assert(a != 0);
    // a^(2^f - 2)
    std::uint32_t result = 1, base = a;
    std::uint64_t exp = (std::uint64_t(1) << f_) - 2;
    while (exp) {
        if (exp & 1) result = gf_mul(result, base);
        base = gf_mul(base, base);
        exp >>= 1;
    }
    return result;
}

inline Coords FieldImpl::invert_coords(const Coords& u) const {
    // residue-field inverse, then Newton: V <- V(2 - UV)
    std::uint32_t r = 0;
    for (int a = 0; a < f_; ++a) r |= std::uint32_t(u[idx(a, 0)] & 1) << a;
    if (r == 0) throw DivisionByZero("invert_coords: not a unit");
    std::uint32_t rinv = gf_inv(r);
    Coords v{};
    for (int a = 0; a < f_; ++a) v[idx(a, 0)] = (rinv >> a) & 1;
    Coords two{};
    two[0] = 2;
    int goal = e_ * M_;
    for (int correct = 1; correct < goal; correct *= 2)
        v = mul_coords(v, sub_coords(two, mul_coords(u, v)));
    assert(coords_equal_mod(mul_coords(u, v), one_coords(), goal));
    return v;
}

// ---------------------------------------------------------------------------
// DyadicField / factory
// ---------------------------------------------------------------------------

inline int DyadicField::e() const { return impl().e(); }
inline int DyadicField::f() const { return impl().f(); }
inline int DyadicField::degree() const { return impl().degree(); }
inline int DyadicField::precision() const { return impl().precision(); }
inline const std::string& DyadicField::fingerprint() const { return impl().fingerprint(); }
inline const FieldSpec& DyadicField::spec() const { return impl().spec(); }
inline bool DyadicField::same_as(const DyadicField& other) const {
    return impl_ == other.impl_ ||
           (impl_ && other.impl_ && fingerprint() == other.fingerprint());
}

inline FieldElement DyadicField::zero() const { return FieldElement(*this); }

inline FieldElement DyadicField::one() const {
    return FieldElement(*this, 0, impl().one_coords(), impl().max_prec());
}

inline FieldElement DyadicField::pi_pow(std::int64_t k) const {
    return FieldElement(*this, k, impl().one_coords(), impl().max_prec());
}

inline FieldElement DyadicField::from_integer(std::int64_t n) const { return from_ratio(n, 0); }

inline FieldElement DyadicField::from_ratio(std::int64_t n, int t) const {
    if (n == 0) return zero();
    int tz = std::countr_zero(std::uint64_t(n < 0 ? -n : n));
    std::int64_t u = n >> tz;  // odd, exact
    Coords c{};
    c[0] = std::uint64_t(u) & impl().mask();
    std::int64_t v = std::int64_t(impl().e()) * (tz - t);
    return FieldElement(*this, v, c, impl().max_prec());
}

inline FieldElement DyadicField::element(std::int64_t v, const Coords& unit_coords) const {
    Coords c{};
    for (int i = 0; i < impl().degree(); ++i) c[i] = unit_coords[i] & impl().mask();
    auto o = impl().ord_coords(c);
    if (!o) throw ZeroArgument("element: zero coordinates where a unit is required");
    std::int64_t shift = *o;
    for (std::int64_t i = 0; i < shift; ++i) c = impl().div_pi_coords(c);
    return FieldElement(*this, v + shift, c, int(impl().max_prec() - shift));
}

inline DyadicField make_field(const FieldSpec& spec) {
    return DyadicField(std::make_shared<const FieldImpl>(spec));
}

// The base field Q_2 with default precision.
inline DyadicField q2_field(int precision = 0) {
    FieldSpec s;
    s.precision = precision;
    return make_field(s);
}

// ---------------------------------------------------------------------------
// Residue enumeration: one representative per class of O/pi^k (optionally
// units only), in ascending packed-key order. Count is (2^f)^k.
// ---------------------------------------------------------------------------

inline std::vector<FieldElement> enumerate_residues(const DyadicField& field, int k,
                                                    bool units_only = false) {
    const FieldImpl& F = field.impl();
    if (k < 1 || k > F.precision()) throw PrecisionTooSmall("enumerate_residues: bad digit count");
    ResidueShape shape = residue_shape(field, k);
    if (shape.total_bits > 24) throw BudgetExceeded("enumerate_residues: more than 2^24 classes");
    std::vector<FieldElement> out;
    out.reserve(std::size_t(shape.count()) >> (units_only ? 1 : 0));
    for (std::uint64_t key = 0; key < shape.count(); ++key) {
        if (units_only && !residue_is_unit(shape, key)) continue;
        Coords c = unpack_residue(shape, key);
        if (!F.ord_coords(c)) {
            if (!units_only) out.push_back(field.zero());
            continue;
        }
        out.push_back(field.element(0, c));
    }
    return out;
}

}  // namespace dyadic
