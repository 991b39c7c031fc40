#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "expsg/matrix.hpp"
#include "expsg/numbertheory.hpp"
#include "expsg/rational.hpp"
#include "expsg/semigroup.hpp"

namespace expsg {

struct CycleConstructionSpec {
    NumericalSemigroup semigroup;
    long dim;    // d, must lie in S \ {0}
    long prime;  // free choice; 2 gives the smallest entries
};

// Weighted cycle matrix with S(A) = S: the only nonzero entries sit at
// (i+1 mod d, i) and carry p^{l_i} with l_i = (s_i + 1 - s_{i+1 mod d})/d
// computed from the Apery set of S with respect to d.  The division is
// exact because s_i + 1 and s_{i+1 mod d} agree mod d.
inline RationalMatrix cycle_matrix(const CycleConstructionSpec& spec) {
    const NumericalSemigroup& s = spec.semigroup;
    long d = spec.dim;
    if (d < 1 || !s.contains(d)) throw std::invalid_argument("cycle_matrix: d must lie in S \\ {0}");
    if (!is_prime(spec.prime)) throw std::invalid_argument("cycle_matrix: p must be prime");
    std::vector<long> ap = s.apery_set(d);
    RationalMatrix a(static_cast<int>(d));
    for (long i = 0; i < d; ++i) {
        long j = (i + 1) % d;
        long diff = ap[static_cast<size_t>(i)] + 1 - ap[static_cast<size_t>(j)];
        if (diff % d != 0) throw std::logic_error("cycle_matrix: inexact exponent division");
        long l = diff / d;
        BigRat w = 1;
        BigInt pk = 1;
        for (long t = 0; t < std::abs(l); ++t) pk *= spec.prime;
        w = l >= 0 ? BigRat(pk) : BigRat(1, pk);
        a.at(static_cast<int>(j), static_cast<int>(i)) = w;
    }
    return a;
}

// Block-diagonal certificate for an intersection: one cycle block per
// part, so S(A) = intersection of the parts.
inline RationalMatrix intersection_matrix(
    const std::vector<std::pair<NumericalSemigroup, long>>& parts, long prime) {
    if (parts.empty()) throw std::invalid_argument("intersection_matrix: empty part list");
    std::vector<RationalMatrix> blocks;
    blocks.reserve(parts.size());
    for (const auto& [s, d] : parts) blocks.push_back(cycle_matrix({s, d, prime}));
    return direct_sum(blocks);
}

// 2x2 realizations.
struct TwoByTwoSpec {
    enum class Kind { cyclic, ordinary, cyclic_union_ordinary };
    Kind kind;
    long a = 0;     // cyclic part <a>; unused for ordinary
    long b = 0;     // ordinary part S_b; unused for cyclic
    long p = 0;     // prime; must be 1 (mod a) for cyclic/union
    BigInt z = 0;   // order-a element mod p (cyclic) or mod p^b (union)
};

inline TwoByTwoSpec two_by_two_cyclic_spec(long a, std::optional<long> prime = {}) {
    if (a < 2) throw std::invalid_argument("cyclic: a must be >= 2");
    long p = prime ? *prime : find_prime_congruent(a);
    return {TwoByTwoSpec::Kind::cyclic, a, 0, p, element_of_order(a, p, 1)};
}

inline TwoByTwoSpec two_by_two_ordinary_spec(long b, long prime = 2) {
    if (b < 2) throw std::invalid_argument("ordinary: b must be >= 2");
    return {TwoByTwoSpec::Kind::ordinary, 0, b, prime, 0};
}

inline TwoByTwoSpec two_by_two_union_spec(long a, long b, std::optional<long> prime = {},
                                          std::optional<BigInt> z = {}) {
    if (a < 2 || b < 2) throw std::invalid_argument("union: a and b must be >= 2");
    long p = prime ? *prime : find_prime_congruent(a);
    BigInt zz = z ? *z : element_of_order(a, p, b);
    return {TwoByTwoSpec::Kind::cyclic_union_ordinary, a, b, p, zz};
}

// The semigroup each 2x2 construction realizes.
inline Subsemigroup two_by_two_target(const TwoByTwoSpec& spec) {
    switch (spec.kind) {
        case TwoByTwoSpec::Kind::cyclic:
            return Subsemigroup::cyclic(spec.a);
        case TwoByTwoSpec::Kind::ordinary: {
            std::vector<long> gens;
            for (long n = spec.b; n < 2 * spec.b; ++n) gens.push_back(n);
            return from_generators(gens);
        }
        case TwoByTwoSpec::Kind::cyclic_union_ordinary: {
            std::vector<long> gaps;
            for (long n = 1; n < spec.b; ++n)
                if (n % spec.a != 0) gaps.push_back(n);
            return Subsemigroup::numerical(NumericalSemigroup::from_gaps(gaps));
        }
    }
    throw std::logic_error("unreachable");
}

inline RationalMatrix two_by_two(const TwoByTwoSpec& spec) {
    if (!is_prime(spec.p)) throw std::invalid_argument("two_by_two: p must be prime");
    RationalMatrix a(2);
    switch (spec.kind) {
        case TwoByTwoSpec::Kind::cyclic: {
            if (spec.a < 2 || (spec.p - 1) % spec.a != 0)
                throw std::invalid_argument("two_by_two: need p = 1 (mod a)");
            if (!has_multiplicative_order(spec.z, spec.a, spec.p, 1))
                throw std::invalid_argument("two_by_two: z must have order a mod p");
            // [[z, (z-1)/p], [0, 1]]
            a.at(0, 0) = BigRat(spec.z);
            a.at(0, 1) = BigRat(spec.z - 1, BigInt(spec.p));
            a.at(1, 1) = 1;
            return a;
        }
        case TwoByTwoSpec::Kind::ordinary: {
            if (spec.b < 2) throw std::invalid_argument("two_by_two: need b >= 2");
            // [[p^2, (p-1) p^(1-b)], [0, p]]
            BigInt pb1 = 1;
            for (long i = 0; i < spec.b - 1; ++i) pb1 *= spec.p;
            a.at(0, 0) = BigRat(BigInt(spec.p) * spec.p);
            a.at(0, 1) = BigRat(BigInt(spec.p - 1), pb1);
            a.at(1, 1) = BigRat(spec.p);
            return a;
        }
        case TwoByTwoSpec::Kind::cyclic_union_ordinary: {
            if (spec.a < 2 || spec.b < 2 || (spec.p - 1) % spec.a != 0)
                throw std::invalid_argument("two_by_two: need a,b >= 2 and p = 1 (mod a)");
            if (!has_multiplicative_order(spec.z, spec.a, spec.p, spec.b))
                throw std::invalid_argument("two_by_two: z must have order a mod p^b");
            // [[p z, p^(1-b) (z-1)], [0, p]]
            BigInt pb1 = 1;
            for (long i = 0; i < spec.b - 1; ++i) pb1 *= spec.p;
            a.at(0, 0) = BigRat(BigInt(spec.p) * spec.z);
            a.at(0, 1) = BigRat(spec.z - 1, pb1);
            a.at(1, 1) = BigRat(spec.p);
            return a;
        }
    }
    throw std::logic_error("unreachable");
}

// A^g represents S(A)/g.
inline RationalMatrix quotient_matrix(const RationalMatrix& a, long g) {
    return matrix_power_exact(a, g);
}

}  // namespace expsg
