#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "expsg/matrix.hpp"
#include "expsg/rational.hpp"

namespace expsg {

// Dense integer polynomials, coefficients ascending.
namespace polyops {

inline std::vector<BigInt> mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// Exact division; throws if the division leaves a remainder.
inline std::vector<BigInt> div_exact(std::vector<BigInt> a, const std::vector<BigInt>& b) {
    if (b.empty() || b.back() == 0) throw std::invalid_argument("division by zero polynomial");
    if (a.size() < b.size()) throw std::invalid_argument("inexact polynomial division");
    std::vector<BigInt> q(a.size() - b.size() + 1);
    for (size_t k = q.size(); k-- > 0;) {
        BigInt c = a[k + b.size() - 1];
        if (c % b.back() != 0) throw std::invalid_argument("inexact polynomial division");
        q[k] = c / b.back();
        for (size_t j = 0; j < b.size(); ++j) a[k + j] -= q[k] * b[j];
    }
    for (const BigInt& c : a)
        if (c != 0) throw std::invalid_argument("inexact polynomial division");
    return q;
}

}  // namespace polyops

inline std::vector<long> divisors(long n) {
    std::vector<long> out;
    for (long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

inline long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    if (n > 1) result -= result / n;
    return result;
}

// The e-th cyclotomic polynomial, coefficients ascending.
inline std::vector<BigInt> cyclotomic_polynomial(long e) {
    std::vector<BigInt> p(static_cast<size_t>(e) + 1);
    p[0] = -1;
    p[static_cast<size_t>(e)] = 1;  // x^e - 1
    for (long d : divisors(e))
        if (d < e) p = polyops::div_exact(p, cyclotomic_polynomial(d));
    return p;
}

// a^phi(e) * Phi_e(x/a): the irreducible factor of x^k - a^k (over Q,
// for |a| >= 2) whose roots are a times the primitive e-th roots of
// unity.  Integer and monic.
inline IntPolynomial scaled_cyclotomic_factor(long e, long a) {
    std::vector<BigInt> phi = cyclotomic_polynomial(e);
    long deg = static_cast<long>(phi.size()) - 1;
    BigInt scale = 1;
    for (long i = deg - 1; i >= 0; --i) {
        scale *= a;
        phi[static_cast<size_t>(i)] *= scale;
    }
    return IntPolynomial(std::move(phi));
}

// One irreducible factor of x^k - a^k together with the order e of the
// root-of-unity part; the product of a subset of factors has every power
// A^n with lcm(e_i) | n equal to a^n I.
struct RootOfUnityFactor {
    long order;
    IntPolynomial poly;
};

inline std::vector<RootOfUnityFactor> factor_x_pow_minus_a_pow(long k, long a) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (a == 0 || a == 1 || a == -1)
        throw std::invalid_argument("base must satisfy |a| >= 2");
    std::vector<RootOfUnityFactor> out;
    for (long e : divisors(k)) out.push_back({e, scaled_cyclotomic_factor(e, a)});
    return out;
}

}  // namespace expsg
