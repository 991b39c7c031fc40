#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "expsg/rational.hpp"

namespace expsg {

// Deterministic primality by trial division; intended for the desk-scale
// searches here (p < 10^7 or so).
inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Smallest prime p = 1 (mod a) not in `avoid`.
inline long find_prime_congruent(long a, const std::set<long>& avoid = {},
                                 long ceiling = 10'000'000) {
    if (a < 2) throw std::invalid_argument("find_prime_congruent: a must be >= 2");
    for (long p = 2; p <= ceiling; ++p)
        if (p % a == 1 && !avoid.count(p) && is_prime(p)) return p;
    throw std::runtime_error("no prime = 1 (mod a) below search ceiling");
}

inline std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

// Checks ord_{p^b}(z) == a exactly: z^a = 1 and z^(a/q) != 1 for every
// prime q dividing a.
inline bool has_multiplicative_order(const BigInt& z, long a, long p, long b) {
    BigInt mod = 1;
    for (long i = 0; i < b; ++i) mod *= p;
    if (z <= 1 || z >= mod || gcd(BigInt(z), mod) != 1) return false;
    if (boost::multiprecision::powm(z, BigInt(a), mod) != 1) return false;
    for (long q : prime_factors(a))
        if (boost::multiprecision::powm(z, BigInt(a / q), mod) == 1) return false;
    return true;
}

// Smallest z in [2, p^b) with ord_{p^b}(z) == a.  Requires p = 1 (mod a)
// prime, which guarantees existence: the unit group mod p^b is cyclic of
// order p^(b-1)(p-1) and a divides p-1.  Candidates are w^(phi/a) for
// w = 2, 3, ...; the first of exact order a is minimized afterwards by
// checking nothing smaller works among the found candidate's powers.
inline BigInt element_of_order(long a, long p, long b) {
    if (a < 2) throw std::invalid_argument("element_of_order: a must be >= 2");
    if (b < 1) throw std::invalid_argument("element_of_order: b must be >= 1");
    if (!is_prime(p) || (p - 1) % a != 0)
        throw std::invalid_argument("element_of_order: need p prime with p = 1 (mod a)");
    BigInt mod = 1;
    for (long i = 0; i < b; ++i) mod *= p;
    BigInt phi = mod / p * (p - 1);
    for (BigInt w = 2; w < mod; ++w) {
        if (w % p == 0) continue;
        BigInt z = boost::multiprecision::powm(w, phi / a, mod);
        if (!has_multiplicative_order(z, a, p, b)) continue;
        // All elements of order a are the powers z^j with gcd(j, a) = 1;
        // take the smallest for determinism.
        BigInt best = z;
        for (long j = 2; j < a; ++j)
            if (std::gcd(j, a) == 1) {
                BigInt cand = boost::multiprecision::powm(z, BigInt(j), mod);
                if (cand < best) best = cand;
            }
        return best;
    }
    throw std::runtime_error("element_of_order: no element found");  // unreachable
}

}  // namespace expsg
