#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <string>

namespace dyadic {

// Exact element of (1/2)Z together with +infinity. Valuations, defect
// orders, alpha invariants and representation thresholds all live here;
// comparisons must never go through floating point.
//
// +infinity absorbs addition and compares greater than everything finite.
// There is no -infinity; no computation in this library needs one.
class HalfInt {
public:
    constexpr HalfInt() : twice_(0), inf_(false) {}

    static constexpr HalfInt of(std::int64_t n) { return HalfInt(2 * n, false); }
    static constexpr HalfInt halves(std::int64_t t) { return HalfInt(t, false); }
    static constexpr HalfInt inf() { return HalfInt(0, true); }

    constexpr bool is_inf() const { return inf_; }
    constexpr bool is_integer() const { return !inf_ && twice_ % 2 == 0; }

    // Numerator over 2; only meaningful for finite values.
    constexpr std::int64_t twice() const {
        assert(!inf_);
        return twice_;
    }
    constexpr std::int64_t as_int() const {
        assert(is_integer());
        return twice_ / 2;
    }
    // Largest integer <= value.
    constexpr std::int64_t floor() const {
        assert(!inf_);
        return twice_ >= 0 ? twice_ / 2 : -((-twice_ + 1) / 2);
    }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
        if (a.inf_ || b.inf_) return inf();
        return HalfInt(a.twice_ + b.twice_, false);
    }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
        assert(!b.inf_);  // x - inf never arises
        if (a.inf_) return inf();
        return HalfInt(a.twice_ - b.twice_, false);
    }
    friend constexpr HalfInt operator-(HalfInt a) {
        assert(!a.inf_);
        return HalfInt(-a.twice_, false);
    }

    friend constexpr bool operator==(HalfInt a, HalfInt b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.twice_ == b.twice_;
    }
    friend constexpr std::strong_ordering operator<=>(HalfInt a, HalfInt b) {
        if (a.inf_ && b.inf_) return std::strong_ordering::equal;
        if (a.inf_) return std::strong_ordering::greater;
        if (b.inf_) return std::strong_ordering::less;
        return a.twice_ <=> b.twice_;
    }

    friend constexpr HalfInt min(HalfInt a, HalfInt b) { return a < b ? a : b; }
    friend constexpr HalfInt max(HalfInt a, HalfInt b) { return a < b ? b : a; }

    std::string str() const {
        if (inf_) return "inf";
        if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    constexpr HalfInt(std::int64_t t, bool inf) : twice_(t), inf_(inf) {}

    std::int64_t twice_;
    bool inf_;
};

}  // namespace dyadic
