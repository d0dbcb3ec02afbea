#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dyadic/oracle.hpp"
#include "dyadic/universality.hpp"

namespace dyadic {

// Batch three-way agreement harness: closed form vs target sweep vs oracle
// over boxes of candidate BONGs. Exhaustive mode enumerates every candidate
// (R_i, unit class) tuple in the box exactly once; random mode is
// reproducible from the seed (draws go through a fixed modulo scheme, not
// std distributions, so reports are byte-identical for equal seeds).

struct SweepConfig {
    DyadicField field;
    int m_min = 2, m_max = 4;
    std::int64_t r_min = -2, r_max = 2;
    std::vector<FieldElement> unit_pool;  // empty = unit square-class reps
    enum class Mode { Exhaustive, Random } mode = Mode::Exhaustive;
    int count = 500;         // random mode: valid lattices to produce
    std::uint64_t seed = 0;  // random mode
    std::uint64_t budget = kDefaultBudget;
};

struct SweepMismatch {
    std::vector<FieldElement> bong;
    bool closed_form = false, target_sweep = false, oracle = false;
};

struct SweepReport {
    std::uint64_t total = 0;            // valid lattices examined
    std::uint64_t universal_count = 0;  // agreed-universal among them
    std::uint64_t rejected = 0;         // candidates failing validation
    std::vector<SweepMismatch> mismatches;
};

namespace detail {

inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;  // bias is irrelevant here; portability matters
}

// The oracle refuses non-integral lattices; universality is false for them
// by definition (Q(L) is not contained in O), which the norm order certifies.
inline bool oracle_verdict(const GoodBongLattice& L, std::uint64_t budget) {
    GramLattice G = bong_to_gram(L);
    if (gram_norm_ord(G) < 0) return false;
    return oracle_universal(G, budget);
}

}  // namespace detail

inline std::vector<FieldElement> default_unit_pool(const DyadicField& field) {
    return square_class_reps(field, {0});
}

// Enumerate every valid good BONG with the given rank whose slots come from
// R in [r_min, r_max] and units in the pool; calls fn for each.
inline void enumerate_valid_bongs(const DyadicField& field, int m, std::int64_t r_min,
                                  std::int64_t r_max,
                                  const std::vector<FieldElement>& pool,
                                  const std::function<void(const GoodBongLattice&)>& fn,
                                  std::uint64_t* rejected = nullptr) {
    const std::int64_t r_span = r_max - r_min + 1;
    const std::uint64_t slots = std::uint64_t(r_span) * pool.size();
    std::vector<std::uint64_t> odo(std::size_t(m), 0);
    std::vector<FieldElement> a(std::size_t(m), field.zero());
    while (true) {
        for (int i = 0; i < m; ++i) {
            std::int64_t r = r_min + std::int64_t(odo[std::size_t(i)] % std::uint64_t(r_span));
            const FieldElement& u = pool[std::size_t(odo[std::size_t(i)] / std::uint64_t(r_span))];
            a[std::size_t(i)] = field.pi_pow(r) * u;
        }
        try {
            fn(validate_good_bong(field, a));
        } catch (const NotAdjacentAdmissible&) {
            if (rejected) ++*rejected;
        } catch (const NotGood&) {
            if (rejected) ++*rejected;
        }
        int i = 0;
        for (; i < m; ++i) {
            if (++odo[std::size_t(i)] < slots) break;
            odo[std::size_t(i)] = 0;
        }
        if (i == m) break;
    }
}

// Seeded rejection sampling of a valid good BONG.
inline GoodBongLattice random_valid_bong(const DyadicField& field, std::mt19937_64& rng,
                                         int m_min, int m_max, std::int64_t r_min,
                                         std::int64_t r_max,
                                         const std::vector<FieldElement>& pool) {
    const std::int64_t r_span = r_max - r_min + 1;
    for (int attempt = 0; attempt < 100000; ++attempt) {
        int m = m_min + int(detail::bounded_draw(rng, std::uint64_t(m_max - m_min + 1)));
        std::vector<FieldElement> a;
        for (int i = 0; i < m; ++i) {
            std::int64_t r = r_min + std::int64_t(detail::bounded_draw(rng, std::uint64_t(r_span)));
            const FieldElement& u = pool[detail::bounded_draw(rng, pool.size())];
            a.push_back(field.pi_pow(r) * u);
        }
        try {
            return validate_good_bong(field, a);
        } catch (const NotAdjacentAdmissible&) {
        } catch (const NotGood&) {
        }
    }
    throw BudgetExceeded("random_valid_bong: rejection sampling exhausted");
}

inline SweepReport run_sweep(const SweepConfig& config) {
    SweepReport report;
    std::vector<FieldElement> pool =
        config.unit_pool.empty() ? default_unit_pool(config.field) : config.unit_pool;

    auto check = [&](const GoodBongLattice& L) {
        bool thm = decide_universal_closed_form(L).universal;
        bool lem = decide_universal_target_sweep(L).universal;
        bool orc = detail::oracle_verdict(L, config.budget);
        ++report.total;
        if (thm && thm == lem && lem == orc) ++report.universal_count;
        if (thm != lem || lem != orc)
            report.mismatches.push_back({L.coeffs(), thm, lem, orc});
    };

    if (config.mode == SweepConfig::Mode::Exhaustive) {
        for (int m = config.m_min; m <= config.m_max; ++m)
            enumerate_valid_bongs(config.field, m, config.r_min, config.r_max, pool, check,
                                  &report.rejected);
    } else {
        std::mt19937_64 rng(config.seed);
        for (int i = 0; i < config.count; ++i)
            check(random_valid_bong(config.field, rng, config.m_min, config.m_max,
                                    config.r_min, config.r_max, pool));
    }
    return report;
}

}  // namespace dyadic
