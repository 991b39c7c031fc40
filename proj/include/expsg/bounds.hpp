#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "expsg/semigroup.hpp"

namespace expsg {

// One justification attached to a dimension bound.
struct BoundReason {
    enum class Tag { base, consecutive_run, small_gcd, quotient, multiplicity_class, construction, cmm };
    Tag tag;
    std::string detail;
    long value;  // the bound this reason supports
};

inline const char* bound_reason_name(BoundReason::Tag t) {
    switch (t) {
        case BoundReason::Tag::base: return "base";
        case BoundReason::Tag::consecutive_run: return "consecutive-run";
        case BoundReason::Tag::small_gcd: return "small-gcd";
        case BoundReason::Tag::quotient: return "quotient";
        case BoundReason::Tag::multiplicity_class: return "multiplicity-class";
        case BoundReason::Tag::construction: return "construction";
        case BoundReason::Tag::cmm: return "cmm";
    }
    return "?";
}

struct DimensionBounds {
    long lower = 1;
    long upper = 1;
    std::vector<BoundReason> reasons;
};

// If n, n+1, ..., n+r-1 are members and n+r is not, the dimension
// exceeds r.  Returns 1 + the longest such run below the conductor; at
// least 2 for any S != N (the run {0} always ends at the gap 1).
inline long lower_bound_consecutive(const NumericalSemigroup& s) {
    if (s.is_naturals()) throw std::domain_error("lower_bound_consecutive: S = N");
    long best = 1, run = 0;
    for (long n = 0; n <= s.frobenius() + 1; ++n) {
        if (s.contains(n)) {
            ++run;
        } else {
            best = std::max(best, run);
            run = 0;
        }
    }
    return best + 1;
}

inline long small_elements_gcd(const NumericalSemigroup& s) {
    long g = 0;
    for (long n : s.small_elements()) g = std::gcd(g, n);
    return g;  // 0 when there are no small elements
}

// True iff the nonzero small elements exist and have gcd 1, which rules
// out dimension 2.
inline bool dim2_obstruction(const NumericalSemigroup& s) {
    if (s.is_naturals()) throw std::domain_error("dim2_obstruction: S = N");
    return small_elements_gcd(s) == 1;
}

// Exact dimension for the decidable classes: N itself, multiplicity 2,
// multiplicity 3 via the Apery gap criterion, and the cyclic / ordinary /
// cyclic-union-ordinary families.
inline std::optional<long> classify_low_multiplicity(const Subsemigroup& s) {
    if (s.is_zero()) return 1;  // {0} = S([[1/2]])
    if (!s.is_numerical()) {
        // g * core with g >= 2: only the purely cyclic case is decided here.
        if (s.core().is_naturals()) return 2;
        return std::nullopt;
    }
    const NumericalSemigroup& c = s.core();
    if (c.is_naturals()) return 1;
    long m = c.multiplicity();
    if (m == 2) return 2;
    if (recognize_ordinary(c) || recognize_cyclic_union_ordinary(s)) return 2;
    if (m == 3) {
        std::vector<long> ap = c.apery_set(3);
        return std::abs(ap[1] - ap[2]) <= 2 ? 2 : 3;
    }
    return std::nullopt;
}

inline DimensionBounds combine_bounds(const NumericalSemigroup& s) {
    DimensionBounds b;
    if (s.is_naturals()) {
        b.lower = b.upper = 1;
        b.reasons.push_back({BoundReason::Tag::base, "S = N", 1});
        return b;
    }
    b.upper = s.multiplicity();
    b.lower = 2;
    b.reasons.push_back({BoundReason::Tag::base, "1x1 rational matrices realize only N and {0}", 2});

    long consec = lower_bound_consecutive(s);
    if (consec > b.lower) {
        b.lower = consec;
        b.reasons.push_back({BoundReason::Tag::consecutive_run,
                             "run of " + std::to_string(consec - 1) + " consecutive members", consec});
    }
    if (dim2_obstruction(s) && 3 > b.lower) {
        b.lower = 3;
        b.reasons.push_back({BoundReason::Tag::small_gcd, "small elements with gcd 1", 3});
    }
    long g = small_elements_gcd(s);
    if (g >= 2) {
        // dim S >= dim S/g; recursion terminates since F strictly drops.
        NumericalSemigroup q = s.quotient(g);
        long ql = q.is_naturals() ? 1 : combine_bounds(q).lower;
        if (ql > b.lower) {
            b.lower = ql;
            b.reasons.push_back({BoundReason::Tag::quotient,
                                 "S/" + std::to_string(g) + " needs dimension " + std::to_string(ql),
                                 ql});
        }
    }
    if (auto exact = classify_low_multiplicity(Subsemigroup::numerical(s))) {
        if (*exact > b.lower) {
            b.lower = *exact;
            b.reasons.push_back({BoundReason::Tag::multiplicity_class, "decided class", *exact});
        }
        if (*exact < b.upper) {
            b.upper = *exact;
            b.reasons.push_back({BoundReason::Tag::multiplicity_class, "decided class", *exact});
        }
    }
    return b;
}

// The quotient lower bound alone (2 when there is no useful quotient).
inline long lower_bound_quotient(const NumericalSemigroup& s) {
    if (s.is_naturals()) throw std::domain_error("lower_bound_quotient: S = N");
    long g = small_elements_gcd(s);
    if (g < 2) return 2;
    NumericalSemigroup q = s.quotient(g);
    if (q.is_naturals()) return 2;
    return std::max<long>(2, combine_bounds(q).lower);
}

}  // namespace expsg
