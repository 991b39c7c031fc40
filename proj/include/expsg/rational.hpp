#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace expsg {

// All arithmetic in this library is exact.  Integers are arbitrary
// precision; rationals are kept reduced with a positive denominator,
// which is exactly the invariant cpp_rational maintains.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt num(const BigRat& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const BigRat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const BigRat& q) { return den(q) == 1; }

// 2-adic valuation of a nonzero integer.
inline long two_valuation(const BigInt& n) {
    if (n == 0) throw std::invalid_argument("two_valuation of zero");
    return static_cast<long>(boost::multiprecision::lsb(abs(n)));
}

inline BigInt odd_part(const BigInt& n) {
    if (n == 0) return 0;
    return n >> two_valuation(n);
}

// Sign / valuation / odd-part decomposition of a rational: value =
// sign * odd * 2^v with odd a positive rational with odd numerator and
// denominator.  The value is dyadic iff the odd part has denominator 1.
struct DyadicEntry {
    bool zero = true;
    int sign = 1;
    long two_valuation = 0;
    BigInt odd_num = 0;  // odd, positive
    BigInt odd_den = 1;  // odd, positive

    bool dyadic() const { return zero || odd_den == 1; }
    bool integral() const { return zero || (odd_den == 1 && two_valuation >= 0); }
};

inline DyadicEntry decompose_dyadic(const BigRat& q) {
    DyadicEntry e;
    if (q == 0) return e;
    e.zero = false;
    e.sign = q < 0 ? -1 : 1;
    BigInt n = abs(num(q));
    BigInt d = den(q);
    long vn = two_valuation(n);
    long vd = two_valuation(d);
    e.two_valuation = vn - vd;
    e.odd_num = n >> vn;
    e.odd_den = d >> vd;
    return e;
}

// Parses a decimal fraction string "num/den" or plain "num".
inline BigRat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return BigRat(BigInt(s));
        BigInt n(s.substr(0, slash));
        BigInt d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return BigRat(n, d);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

inline std::string rational_to_string(const BigRat& q) {
    if (is_integer(q)) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

inline BigInt pow2(long e) {
    if (e < 0) throw std::invalid_argument("pow2 of negative exponent");
    return BigInt(1) << e;
}

// 2^e as an exact rational, e possibly negative.
inline BigRat pow2_rat(long e) {
    if (e >= 0) return BigRat(BigInt(1) << e);
    return BigRat(1, BigInt(1) << (-e));
}

}  // namespace expsg
