#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace expsg {

// A numerical semigroup: an additive subsemigroup of N with finite
// complement, stored canonically as its gap set, its minimal generators
// and a membership table for 0..F(S)+1.  Membership beyond F(S) is
// constant true.  N itself has frobenius() == -1 and no gaps.
class NumericalSemigroup {
public:
    // Builds the semigroup generated by `gens`; gcd(gens) must be 1.
    // The input need not be minimal and may contain duplicates.
    static NumericalSemigroup from_coprime_generators(std::vector<long> gens) {
        if (gens.empty()) throw std::invalid_argument("empty generator list");
        for (long g : gens)
            if (g < 1) throw std::invalid_argument("generators must be positive");
        long g = 0;
        for (long x : gens) g = std::gcd(g, x);
        if (g != 1) throw std::invalid_argument("generators must have gcd 1");

        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        long lo = gens.front(), hi = gens.back();
        // F(S) <= F(<a,b>) < a*b for any coprime pair in S; when no pair is
        // coprime we grow the sieve until the last `lo` values are all
        // members, which certifies the tail.
        long bound = std::max<long>(lo * hi + 1, 2 * lo + 2);
        for (;;) {
            std::vector<bool> reach(static_cast<size_t>(bound) + 1, false);
            reach[0] = true;
            for (long i = 1; i <= bound; ++i)
                for (long x : gens)
                    if (i >= x && reach[static_cast<size_t>(i - x)]) {
                        reach[static_cast<size_t>(i)] = true;
                        break;
                    }
            bool tail_full = true;
            for (long i = bound - lo + 1; i <= bound; ++i)
                if (!reach[static_cast<size_t>(i)]) tail_full = false;
            if (tail_full) return from_membership(reach);
            bound *= 2;
        }
    }

    // Builds a semigroup from an explicit membership table; table[i] says
    // whether i is a member, and membership must be constant true from
    // some index on (the table must extend past the last gap).
    static NumericalSemigroup from_membership(const std::vector<bool>& table) {
        long frob = -1;
        for (size_t i = 1; i < table.size(); ++i)
            if (!table[i]) frob = static_cast<long>(i);
        NumericalSemigroup s;
        s.frobenius_ = frob;
        s.member_.assign(static_cast<size_t>(frob + 2), true);
        for (long i = 0; i <= frob; ++i) s.member_[static_cast<size_t>(i)] = table[static_cast<size_t>(i)];
        for (long i = 1; i <= frob; ++i)
            if (!s.member_[static_cast<size_t>(i)]) s.gaps_.push_back(i);
        s.compute_min_generators();
        return s;
    }

    static NumericalSemigroup from_gaps(const std::vector<long>& gaps) {
        long frob = gaps.empty() ? -1 : *std::max_element(gaps.begin(), gaps.end());
        std::vector<bool> table(static_cast<size_t>(frob + 2), true);
        for (long g : gaps) table[static_cast<size_t>(g)] = false;
        return from_membership(table);
    }

    static NumericalSemigroup naturals() { return from_gaps({}); }

    const std::vector<long>& min_generators() const { return min_gens_; }
    const std::vector<long>& gaps() const { return gaps_; }
    long frobenius() const { return frobenius_; }
    long genus() const { return static_cast<long>(gaps_.size()); }
    bool is_naturals() const { return frobenius_ == -1; }
    long multiplicity() const { return is_naturals() ? 1 : min_gens_.front(); }
    long conductor() const { return frobenius_ + 1; }

    bool contains(long n) const {
        if (n < 0) return false;
        if (n > frobenius_) return true;
        return member_[static_cast<size_t>(n)];
    }

    // Entry i is the smallest s in S with s = i (mod d); entry 0 is 0.
    std::vector<long> apery_set(long d) const {
        if (d < 1) throw std::invalid_argument("apery_set: d must be >= 1");
        std::vector<long> ap(static_cast<size_t>(d));
        for (long i = 0; i < d; ++i) {
            long n = i == 0 ? 0 : i;
            while (!contains(n)) n += d;
            ap[static_cast<size_t>(i)] = n;
        }
        ap[0] = 0;
        return ap;
    }

    // Nonzero members strictly below the Frobenius number.
    std::vector<long> small_elements() const {
        if (is_naturals()) throw std::domain_error("small_elements: S = N has no Frobenius number");
        std::vector<long> out;
        for (long n = 1; n < frobenius_; ++n)
            if (contains(n)) out.push_back(n);
        return out;
    }

    // S/g = {n : g*n in S}.
    NumericalSemigroup quotient(long g) const {
        if (g < 1) throw std::invalid_argument("quotient: g must be >= 1");
        if (g == 1 || is_naturals()) return g == 1 ? *this : naturals();
        long bound = frobenius_ / g + 2;
        std::vector<bool> table(static_cast<size_t>(bound) + 1, false);
        for (long n = 0; n <= bound; ++n) table[static_cast<size_t>(n)] = contains(g * n);
        return from_membership(table);
    }

    NumericalSemigroup intersect(const NumericalSemigroup& other) const {
        long bound = std::max(frobenius_, other.frobenius_) + 1;
        std::vector<bool> table(static_cast<size_t>(bound) + 1, false);
        for (long n = 0; n <= bound; ++n)
            table[static_cast<size_t>(n)] = contains(n) && other.contains(n);
        return from_membership(table);
    }

    bool operator==(const NumericalSemigroup& o) const { return min_gens_ == o.min_gens_; }
    bool operator!=(const NumericalSemigroup& o) const { return !(*this == o); }
    bool operator<(const NumericalSemigroup& o) const { return min_gens_ < o.min_gens_; }

private:
    void compute_min_generators() {
        min_gens_.clear();
        if (is_naturals()) {
            min_gens_ = {1};
            return;
        }
        long m = 0;
        for (long n = 1; m == 0; ++n)
            if (contains(n)) m = n;
        // Minimal generators are the members of [1, F+m] that are not a
        // sum of two nonzero members.
        for (long n = 1; n <= frobenius_ + m; ++n) {
            if (!contains(n)) continue;
            bool decomposable = false;
            for (long s = m; s <= n - m && !decomposable; ++s)
                if (contains(s) && contains(n - s)) decomposable = true;
            if (!decomposable) min_gens_.push_back(n);
        }
    }

    std::vector<long> min_gens_;
    std::vector<long> gaps_;
    long frobenius_ = -1;
    std::vector<bool> member_;
};

// A general additive subsemigroup of N in canonical form: either {0} or
// scale * core with gcd(core) = 1.  The scale is the gcd of the nonzero
// elements.
class Subsemigroup {
public:
    static Subsemigroup zero() { return Subsemigroup(); }

    static Subsemigroup numerical(NumericalSemigroup s) {
        Subsemigroup out;
        out.scale_ = 1;
        out.core_ = std::move(s);
        return out;
    }

    static Subsemigroup scaled(long scale, NumericalSemigroup core) {
        if (scale < 1) throw std::invalid_argument("scale must be positive");
        Subsemigroup out;
        out.scale_ = scale;
        out.core_ = std::move(core);
        return out;
    }

    // <a> = a*N for a >= 1.
    static Subsemigroup cyclic(long a) { return scaled(a, NumericalSemigroup::naturals()); }

    bool is_zero() const { return scale_ == 0; }
    long scale() const { return scale_; }
    const NumericalSemigroup& core() const {
        if (is_zero()) throw std::domain_error("zero semigroup has no core");
        return core_;
    }
    bool is_numerical() const { return scale_ == 1; }

    bool contains(long n) const {
        if (n == 0) return true;
        if (n < 0 || is_zero()) return false;
        if (n % scale_ != 0) return false;
        return core_.contains(n / scale_);
    }

    Subsemigroup intersect(const Subsemigroup& other) const {
        if (is_zero() || other.is_zero()) return zero();
        long l = std::lcm(scale_, other.scale_);
        NumericalSemigroup joint =
            core_.quotient(l / scale_).intersect(other.core_.quotient(l / other.scale_));
        return scaled(l, joint);
    }

    bool operator==(const Subsemigroup& o) const {
        if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
        return scale_ == o.scale_ && core_ == o.core_;
    }

private:
    long scale_ = 0;  // 0 encodes {0}
    NumericalSemigroup core_;
};

// Canonical subsemigroup generated by `gens` (all >= 1).
inline Subsemigroup from_generators(std::vector<long> gens) {
    if (gens.empty()) throw std::invalid_argument("empty generator list");
    long g = 0;
    for (long x : gens) {
        if (x < 1) throw std::invalid_argument("generators must be positive");
        g = std::gcd(g, x);
    }
    for (long& x : gens) x /= g;
    return Subsemigroup::scaled(g, NumericalSemigroup::from_coprime_generators(gens));
}

inline Subsemigroup intersect(const std::vector<Subsemigroup>& parts) {
    if (parts.empty()) throw std::invalid_argument("intersect: empty list");
    Subsemigroup acc = parts.front();
    for (size_t i = 1; i < parts.size(); ++i) acc = acc.intersect(parts[i]);
    return acc;
}

// All numerical semigroups with Frobenius number exactly f, canonically
// sorted by minimal generators.  Brute force over candidate gap sets:
// subsets of {1..f} containing f whose complement is closed under
// addition; 2^(f-1) candidates.
inline std::vector<NumericalSemigroup> enumerate_by_frobenius(long f) {
    if (f < 1 || f > 20) throw std::invalid_argument("enumerate_by_frobenius: f out of range [1,20]");
    std::vector<NumericalSemigroup> out;
    const long bits = f - 1;  // membership of 1..f-1; f is always a gap
    for (long mask = 0; mask < (1L << bits); ++mask) {
        std::vector<bool> member(static_cast<size_t>(f) + 2, true);
        member[static_cast<size_t>(f)] = false;
        for (long i = 1; i < f; ++i)
            member[static_cast<size_t>(i)] = (mask >> (i - 1)) & 1;
        bool closed = true;
        for (long x = 1; x <= f && closed; ++x) {
            if (!member[static_cast<size_t>(x)]) continue;
            for (long y = x; x + y <= f; ++y)
                if (member[static_cast<size_t>(y)] && !member[static_cast<size_t>(x + y)]) {
                    closed = false;
                    break;
                }
        }
        if (closed) out.push_back(NumericalSemigroup::from_membership(member));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {
inline void genus_tree_walk(const NumericalSemigroup& s, long target,
                            std::vector<NumericalSemigroup>& out) {
    long g = s.genus();
    if (g == target) {
        out.push_back(s);
        return;
    }
    // Children: remove one minimal generator larger than F(S); this walks
    // the standard tree of numerical semigroups rooted at N.
    for (long x : s.min_generators()) {
        if (x <= s.frobenius()) continue;
        std::vector<long> gaps = s.gaps();
        gaps.push_back(x);
        genus_tree_walk(NumericalSemigroup::from_gaps(gaps), target, out);
    }
}
}  // namespace detail

// All numerical semigroups with genus exactly g, canonically sorted.
inline std::vector<NumericalSemigroup> enumerate_by_genus(long g) {
    if (g < 0 || g > 15) throw std::invalid_argument("enumerate_by_genus: g out of range [0,15]");
    std::vector<NumericalSemigroup> out;
    detail::genus_tree_walk(NumericalSemigroup::naturals(), g, out);
    std::sort(out.begin(), out.end());
    return out;
}

// Recognition helpers for the dimension-2 families.

// S == S_b = {0, b, b+1, ...} for some b >= 2.
inline std::optional<long> recognize_ordinary(const NumericalSemigroup& s) {
    if (s.is_naturals()) return std::nullopt;
    long b = s.conductor();
    for (long n = 1; n < b; ++n)
        if (s.contains(n)) return std::nullopt;
    return b >= 2 ? std::optional<long>(b) : std::nullopt;
}

// S == <a> union S_b with a, b >= 2 and both parts visible (S is neither
// purely cyclic nor purely ordinary).
inline std::optional<std::pair<long, long>> recognize_cyclic_union_ordinary(
    const Subsemigroup& s) {
    if (s.is_zero() || !s.is_numerical()) return std::nullopt;
    const NumericalSemigroup& c = s.core();
    if (c.is_naturals()) return std::nullopt;
    long a = c.multiplicity();
    long b = c.conductor();
    if (a < 2 || b < 2 || a >= b) return std::nullopt;  // a >= b means S = S_b
    for (long n = 1; n < b; ++n)
        if (c.contains(n) != (n % a == 0)) return std::nullopt;
    return std::make_pair(a, b);
}

}  // namespace expsg
