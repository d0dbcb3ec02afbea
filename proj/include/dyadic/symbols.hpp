#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "dyadic/enumeration.hpp"
#include "dyadic/field.hpp"

namespace dyadic {

// Order of the relative quadratic defect: 0 for odd valuations, otherwise an
// element of {1,3,...,2e-1} u {2e} u {inf}.
using DefectValue = HalfInt;

class DiagonalSpace {
public:
    DiagonalSpace(DyadicField field, std::vector<FieldElement> coeffs)
        : field_(std::move(field)), coeffs_(std::move(coeffs)) {
        for (const auto& c : coeffs_) {
            if (c.is_zero()) throw DegenerateSpace("zero diagonal coefficient");
            if (!c.field().same_as(field_)) throw FieldMismatch();
        }
    }

    const DyadicField& field() const { return field_; }
    int dim() const { return int(coeffs_.size()); }
    const std::vector<FieldElement>& coeffs() const { return coeffs_; }
    const FieldElement& operator[](int i) const { return coeffs_[std::size_t(i)]; }

    FieldElement det() const {
        FieldElement d = field_.one();
        for (const auto& c : coeffs_) d = d * c;
        return d;
    }

private:
    DyadicField field_;
    std::vector<FieldElement> coeffs_;
};

DefectValue quadratic_defect(const FieldElement& a);
bool is_square(const FieldElement& a);
std::pair<FieldElement, FieldElement> find_delta(const DyadicField& field);
std::vector<FieldElement> square_class_reps(const DyadicField& field,
                                            const std::vector<int>& orders);
int hilbert(const FieldElement& a, const FieldElement& b);
bool space_isotropic(const DiagonalSpace& S);
bool space_represents_element(const FieldElement& b, const DiagonalSpace& S);
bool space_universal(const DiagonalSpace& S);
bool space_represents_space(const DiagonalSpace& U, const DiagonalSpace& V);

// ---------------------------------------------------------------------------
// Per-field tables. Defects, square classes and isotropy verdicts depend only
// on residues mod pi^{2e+1}, so each is computed once per field and shared.
// Keyed by the field fingerprint; guarded by a mutex so field handles stay
// safe to use from multiple threads.
// ---------------------------------------------------------------------------

namespace detail {

constexpr int kDefectInf = -1;

struct FieldCaches {
    std::mutex mu;
    bool defect_built = false;
    std::vector<int> defect_by_unit_key;           // mod pi^{2e+1}; kDefectInf = square
    bool classes_built = false;
    std::vector<FieldElement> unit_class_reps;     // ascending canonical keys
    std::vector<int> class_of_unit_key;            // unit key -> rep index
    std::optional<std::pair<FieldElement, FieldElement>> delta;  // (rho, Delta)
    std::map<std::vector<int>, bool> isotropy_memo;  // sorted class ids -> verdict
};

inline FieldCaches& caches_for(const DyadicField& field) {
    static std::mutex registry_mu;
    static std::map<std::string, std::unique_ptr<FieldCaches>> registry;
    std::lock_guard<std::mutex> lock(registry_mu);
    auto& slot = registry[field.fingerprint()];
    if (!slot) slot = std::make_unique<FieldCaches>();
    return *slot;
}

// Defect of a unit, by maximizing min(ord(eps x^{-2} - 1), 2e+1) over unit
// residues x mod pi^{2e+1}; the cap maps to inf by the local square theorem.
inline int unit_defect_uncached(const DyadicField& field, const FieldElement& eps) {
    const int cap = SearchBound::square_cap(field).modulus_digits;
    int best = 0;
    ResidueShape shape = residue_shape(field, cap);
    for (std::uint64_t key = 1; key < shape.count(); ++key) {
        if (!residue_is_unit(shape, key)) continue;
        FieldElement x = field.element(0, unpack_residue(shape, key));
        auto diff = try_sub(eps / (x * x), field.one());
        int o = cap;
        if (diff) o = int(std::min<std::int64_t>(diff->valuation(), cap));
        best = std::max(best, o);
        if (best == cap) break;
    }
    return best == cap ? kDefectInf : best;
}

inline const std::vector<int>& defect_table(const DyadicField& field) {
    FieldCaches& cache = caches_for(field);
    std::lock_guard<std::mutex> lock(cache.mu);
    if (!cache.defect_built) {
        const int cap = SearchBound::square_cap(field).modulus_digits;
        ResidueShape shape = residue_shape(field, cap);
        cache.defect_by_unit_key.assign(std::size_t(shape.count()), 0);
        for (std::uint64_t key = 0; key < shape.count(); ++key) {
            if (!residue_is_unit(shape, key)) continue;
            FieldElement eps = field.element(0, unpack_residue(shape, key));
            cache.defect_by_unit_key[std::size_t(key)] = unit_defect_uncached(field, eps);
        }
        cache.defect_built = true;
    }
    return cache.defect_by_unit_key;
}

inline void build_classes(const DyadicField& field) {
    FieldCaches& cache = caches_for(field);
    {
        std::lock_guard<std::mutex> lock(cache.mu);
        if (cache.classes_built) return;
    }
    const std::vector<int>& table = defect_table(field);
    const int cap = SearchBound::square_cap(field).modulus_digits;
    ResidueShape shape = residue_shape(field, cap);
    std::vector<FieldElement> reps;
    std::vector<int> class_of(std::size_t(shape.count()), -1);
    for (std::uint64_t key = 0; key < shape.count(); ++key) {
        if (!residue_is_unit(shape, key)) continue;
        FieldElement u = field.element(0, unpack_residue(shape, key));
        int found = -1;
        for (int r = 0; r < int(reps.size()) && found < 0; ++r) {
            FieldElement ratio = u / reps[std::size_t(r)];
            if (table[std::size_t(ratio.unit_key(cap))] == kDefectInf) found = r;
        }
        if (found < 0) {
            found = int(reps.size());
            reps.push_back(u);
        }
        class_of[std::size_t(key)] = found;
    }
    // |O^x / (O^x)^2| = 2^{d+1} for a dyadic field of degree d; verified.
    if (reps.size() != (std::size_t(1) << (field.degree() + 1)))
        throw PrecisionTooSmall("unit square class count mismatch");
    std::lock_guard<std::mutex> lock(cache.mu);
    if (!cache.classes_built) {
        cache.unit_class_reps = std::move(reps);
        cache.class_of_unit_key = std::move(class_of);
        cache.classes_built = true;
    }
}

// Square-class id: 2 * (unit class index) + (valuation parity).
inline int class_id(const FieldElement& a) {
    if (a.is_zero()) throw ZeroArgument("class_id of zero");
    build_classes(a.field());
    FieldCaches& cache = caches_for(a.field());
    const int cap = SearchBound::square_cap(a.field()).modulus_digits;
    int unit_class = cache.class_of_unit_key[std::size_t(a.unit_key(cap))];
    return 2 * unit_class + int(a.valuation() & 1);
}

inline FieldElement class_rep(const DyadicField& field, int id) {
    build_classes(field);
    FieldCaches& cache = caches_for(field);
    FieldElement rep = cache.unit_class_reps[std::size_t(id / 2)];
    return (id & 1) ? field.pi_pow(1) * rep : rep;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline DefectValue quadratic_defect(const FieldElement& a) {
    if (a.is_zero()) throw ZeroArgument("quadratic_defect of zero");
    if (a.valuation() & 1) return HalfInt::of(0);
    const std::vector<int>& table = detail::defect_table(a.field());
    const int cap = SearchBound::square_cap(a.field()).modulus_digits;
    int d = table[std::size_t(a.unit_key(cap))];
    return d == detail::kDefectInf ? HalfInt::inf() : HalfInt::of(d);
}

inline bool is_square(const FieldElement& a) {
    if (a.is_zero()) return true;
    if (a.valuation() & 1) return false;
    return quadratic_defect(a).is_inf();
}

// rho with residue of absolute trace 1, Delta = 1 - 4 rho with d(Delta) = 2e.
inline std::pair<FieldElement, FieldElement> find_delta(const DyadicField& field) {
    detail::FieldCaches& cache = detail::caches_for(field);
    {
        std::lock_guard<std::mutex> lock(cache.mu);
        if (cache.delta) return *cache.delta;
    }
    ResidueShape shape = residue_shape(field, 1);
    FieldElement four = field.from_integer(4);
    for (std::uint64_t key = 1; key < shape.count(); ++key) {
        FieldElement rho = field.element(0, unpack_residue(shape, key));
        FieldElement delta = field.one() - four * rho;
        if (quadratic_defect(delta) == HalfInt::of(2 * field.e())) {
            std::lock_guard<std::mutex> lock(cache.mu);
            if (!cache.delta) cache.delta = std::make_pair(rho, delta);
            return *cache.delta;
        }
    }
    throw PrecisionTooSmall("no Delta = 1 - 4 rho with defect order 2e found");
}

inline std::vector<FieldElement> square_class_reps(const DyadicField& field,
                                                   const std::vector<int>& orders) {
    detail::build_classes(field);
    detail::FieldCaches& cache = detail::caches_for(field);
    std::vector<int> sorted = orders;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<FieldElement> out;
    for (int o : sorted) {
        if (o != 0 && o != 1) throw IndexOutOfRange("square_class_reps: orders must be 0 or 1");
        for (const FieldElement& u : cache.unit_class_reps)
            out.push_back(o == 0 ? u : field.pi_pow(1) * u);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Isotropy and representation of diagonal spaces.
// ---------------------------------------------------------------------------

namespace detail {

// Isotropy depends only on the square classes of the coefficients (up to the
// common pi scaling), so verdicts are memoized per sorted class-id multiset.
inline bool isotropic_by_enumeration(const DiagonalSpace& S, std::uint64_t budget) {
    const DyadicField& field = S.field();
    // canonicalize each coefficient to its square-class representative
    std::vector<int> ids;
    for (int i = 0; i < S.dim(); ++i) ids.push_back(class_id(S[i]));
    std::int64_t min_ord = 2;
    for (int id : ids) min_ord = std::min<std::int64_t>(min_ord, id & 1);
    std::vector<int> key = ids;
    std::sort(key.begin(), key.end());
    key.push_back(int(min_ord));
    FieldCaches& cache = caches_for(field);
    {
        std::lock_guard<std::mutex> lock(cache.mu);
        auto it = cache.isotropy_memo.find(key);
        if (it != cache.isotropy_memo.end()) return it->second;
    }
    std::vector<FieldElement> coeffs;
    int spread = 0;
    for (int id : ids) {
        FieldElement c = class_rep(field, id);
        if (min_ord == 1) c = c / field.pi_pow(1);
        spread = std::max<int>(spread, int((id & 1) - min_ord));
        coeffs.push_back(c);
    }
    SearchBound bound = SearchBound::isotropy(field, spread);
    QuadraticForm q = diagonal_form(field, coeffs, bound.modulus_digits);
    Budget bt{budget};
    bool verdict = level_search(q, Coords{}, bound.modulus_digits, /*primitive=*/true, bt);
    std::lock_guard<std::mutex> lock(cache.mu);
    cache.isotropy_memo.emplace(std::move(key), verdict);
    return verdict;
}

}  // namespace detail

inline bool space_isotropic(const DiagonalSpace& S) {
    switch (S.dim()) {
        case 0:
            return false;
        case 1:
            return false;  // nondegenerate unary spaces have no nonzero zeros
        case 2: {
            FieldElement p = -(S[0] * S[1]);
            return is_square(p);
        }
        case 3:
        case 4:
            return detail::isotropic_by_enumeration(S, kDefaultBudget);
        default:
            return true;  // every space of dimension >= 5 over F is isotropic
    }
}

inline int hilbert(const FieldElement& a, const FieldElement& b) {
    if (a.is_zero() || b.is_zero()) throw ZeroArgument("hilbert symbol of zero");
    DiagonalSpace t(a.field(), {a, b, -a.field().one()});
    return space_isotropic(t) ? 1 : -1;
}

inline bool space_represents_element(const FieldElement& b, const DiagonalSpace& S) {
    if (b.is_zero()) throw ZeroArgument("space_represents_element: zero target");
    switch (S.dim()) {
        case 0:
            return false;
        case 1:
            return is_square(b / S[0]);
        case 2:
            return hilbert(S[0] * b, -(S[0] * S[1])) == 1;
        case 3:
            return !is_square(-(S.det() * b)) || space_isotropic(S);
        default:
            // dim >= 4: isotropic spaces represent everything, and the unique
            // anisotropic quaternary space still represents every class since
            // V _|_ [-b] is 5-dimensional, hence isotropic.
            return true;
    }
}

inline bool space_universal(const DiagonalSpace& S) {
    if (S.dim() <= 1) return false;
    if (S.dim() >= 4) return true;
    return space_isotropic(S);
}

namespace detail {

inline int hasse_invariant(const DiagonalSpace& S) {
    int h = 1;
    for (int i = 0; i < S.dim(); ++i)
        for (int j = i + 1; j < S.dim(); ++j) h *= hilbert(S[i], S[j]);
    return h;
}

inline bool spaces_isometric(const DiagonalSpace& U, const DiagonalSpace& V) {
    if (U.dim() != V.dim()) return false;
    if (!is_square(U.det() * V.det())) return false;
    return hasse_invariant(U) == hasse_invariant(V);
}

}  // namespace detail

// Representation U -> V in codimension 0 or 1 (Witt: for dim V = dim U + 1,
// U -> V iff V is isometric to U _|_ [det U * det V]).
inline bool space_represents_space(const DiagonalSpace& U, const DiagonalSpace& V) {
    int codim = V.dim() - U.dim();
    if (codim != 0 && codim != 1) throw BadCodimension("codimension must be 0 or 1");
    if (codim == 0) return detail::spaces_isometric(U, V);
    std::vector<FieldElement> ext = U.coeffs();
    ext.push_back(U.det() * V.det());
    return detail::spaces_isometric(DiagonalSpace(U.field(), ext), V);
}

}  // namespace dyadic
