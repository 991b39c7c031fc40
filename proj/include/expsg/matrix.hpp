#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <stdexcept>
#include <vector>

#include "expsg/rational.hpp"
#include "expsg/semigroup.hpp"

namespace expsg {

// Thrown when an entry of an exact computation exceeds the configured
// bit-size ceiling; distinguishes pathological growth from logic errors.
struct EntryGrowthError : std::runtime_error {
    explicit EntryGrowthError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr long kDefaultEntryBitLimit = 1'000'000;

// Dense square matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    explicit RationalMatrix(int dim) : dim_(dim), e_(static_cast<size_t>(dim) * dim) {
        if (dim < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    }

    static RationalMatrix identity(int dim) {
        RationalMatrix m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
        return m;
    }

    int dim() const { return dim_; }
    BigRat& at(int i, int j) { return e_[static_cast<size_t>(i) * dim_ + j]; }
    const BigRat& at(int i, int j) const { return e_[static_cast<size_t>(i) * dim_ + j]; }

    bool operator==(const RationalMatrix& o) const { return dim_ == o.dim_ && e_ == o.e_; }

    bool is_integral() const {
        for (const auto& x : e_)
            if (!is_integer(x)) return false;
        return true;
    }

    long max_entry_bits() const {
        size_t bits = 0;
        for (const auto& x : e_) {
            if (x == 0) continue;
            bits = std::max({bits, msb(abs(num(x))) + 1, msb(den(x)) + 1});
        }
        return static_cast<long>(bits);
    }

    RationalMatrix operator*(const RationalMatrix& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
        RationalMatrix r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k < dim_; ++k) {
                const BigRat& a = at(i, k);
                if (a == 0) continue;
                for (int j = 0; j < dim_; ++j) {
                    const BigRat& b = o.at(k, j);
                    if (b == 0) continue;
                    r.at(i, j) += a * b;
                }
            }
        return r;
    }

    RationalMatrix operator+(const RationalMatrix& o) const {
        RationalMatrix r(dim_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }

    RationalMatrix scaled(const BigRat& c) const {
        RationalMatrix r(dim_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = c * e_[i];
        return r;
    }

    BigRat trace() const {
        BigRat t = 0;
        for (int i = 0; i < dim_; ++i) t += at(i, i);
        return t;
    }

private:
    int dim_ = 0;
    std::vector<BigRat> e_;

    static size_t msb(const BigInt& x) { return boost::multiprecision::msb(x); }
};

// Block-diagonal sum; S(direct_sum) = intersection of the S(A_i).
inline RationalMatrix direct_sum(const std::vector<RationalMatrix>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("direct_sum: empty block list");
    int d = 0;
    for (const auto& b : blocks) d += b.dim();
    RationalMatrix r(d);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.dim(); ++i)
            for (int j = 0; j < b.dim(); ++j) r.at(off + i, off + j) = b.at(i, j);
        off += b.dim();
    }
    return r;
}

// Streams (n, A^n) for n = 1, 2, 3, ... by repeated multiplication, with
// a bit-size ceiling on entries.
class PowerStream {
public:
    explicit PowerStream(RationalMatrix a, long entry_bit_limit = kDefaultEntryBitLimit)
        : base_(std::move(a)), current_(RationalMatrix::identity(base_.dim())),
          limit_(entry_bit_limit) {}

    // Advances to the next power and returns (n, A^n).
    std::pair<long, const RationalMatrix&> next() {
        current_ = current_ * base_;
        ++n_;
        if (current_.max_entry_bits() > limit_)
            throw EntryGrowthError("matrix power entries exceeded bit limit");
        return {n_, current_};
    }

private:
    RationalMatrix base_;
    RationalMatrix current_;
    long n_ = 0;
    long limit_;
};

// Exact A^g by square and multiply.
inline RationalMatrix matrix_power_exact(const RationalMatrix& a, long g,
                                         long entry_bit_limit = kDefaultEntryBitLimit) {
    if (g < 1) throw std::invalid_argument("matrix_power_exact: g must be >= 1");
    RationalMatrix base = a;
    RationalMatrix acc = RationalMatrix::identity(a.dim());
    bool acc_used = false;
    while (g > 0) {
        if (g & 1) {
            acc = acc_used ? acc * base : base;
            acc_used = true;
        }
        g >>= 1;
        if (g > 0) base = base * base;
        if (base.max_entry_bits() > entry_bit_limit || acc.max_entry_bits() > entry_bit_limit)
            throw EntryGrowthError("matrix power entries exceeded bit limit");
    }
    return acc;
}

// Membership of the exponent semigroup S(A) = {n : A^n integral} up to a
// cap, with a certified tail when a full run of consecutive members of
// length m (m a member) is found: every n beyond the run start is then a
// member, being (run element) + multiple of m.
struct ExponentSemigroupResult {
    long cap = 0;
    std::vector<long> members;  // sorted, includes 0
    std::optional<long> certified_tail_from;
    bool truncated = true;

    bool contains(long n) const {
        if (n == 0) return true;
        if (certified_tail_from && n >= *certified_tail_from) return true;
        return std::binary_search(members.begin(), members.end(), n);
    }
};

inline ExponentSemigroupResult exponent_semigroup(const RationalMatrix& a, long cap,
                                                  long entry_bit_limit = kDefaultEntryBitLimit) {
    if (cap < 1) throw std::invalid_argument("exponent_semigroup: cap must be >= 1");
    ExponentSemigroupResult res;
    res.cap = cap;
    res.members.push_back(0);
    PowerStream stream(a, entry_bit_limit);
    for (long n = 1; n <= cap; ++n) {
        auto [k, p] = stream.next();
        if (p.is_integral()) res.members.push_back(k);
    }
    // Certification: the earliest window n..n+m-1 of members, for any
    // positive member m.
    std::vector<bool> in(static_cast<size_t>(cap) + 1, false);
    for (long v : res.members) in[static_cast<size_t>(v)] = true;
    std::optional<long> best;
    for (long m : res.members) {
        if (m < 1) continue;
        for (long n = 1; n + m - 1 <= cap; ++n) {
            bool run = true;
            for (long i = 0; i < m && run; ++i)
                if (!in[static_cast<size_t>(n + i)]) run = false;
            if (run) {
                if (!best || n < *best) best = n;
                break;
            }
        }
    }
    res.certified_tail_from = best;
    res.truncated = !best.has_value();
    return res;
}

// Result of checking S(A) == S for a numerical semigroup S.
struct VerificationResult {
    bool ok = false;
    std::optional<long> witness;  // smallest disagreeing exponent
    explicit operator bool() const { return ok; }
};

// Decides S(A) == S exactly.  Agreement is checked for n = 1..F(S)+m(S);
// beyond that window every n is a member of both: n splits as a base in
// [F+1, F+m] plus a multiple of m, with all three checked integral.  For
// S = N it suffices that A itself is integral.
inline VerificationResult verify_representation(const RationalMatrix& a, const NumericalSemigroup& s,
                                                long entry_bit_limit = kDefaultEntryBitLimit) {
    VerificationResult r;
    if (s.is_naturals()) {
        if (a.is_integral()) {
            r.ok = true;
        } else {
            r.witness = 1;
        }
        return r;
    }
    long window = s.frobenius() + s.multiplicity();
    PowerStream stream(a, entry_bit_limit);
    for (long n = 1; n <= window; ++n) {
        auto [k, p] = stream.next();
        if (p.is_integral() != s.contains(k)) {
            r.witness = k;
            return r;
        }
    }
    r.ok = true;
    return r;
}

inline VerificationResult verify_representation(const RationalMatrix& a, const Subsemigroup& s,
                                                long entry_bit_limit = kDefaultEntryBitLimit) {
    if (!s.is_numerical())
        throw std::invalid_argument("verify_representation requires a numerical semigroup");
    return verify_representation(a, s.core(), entry_bit_limit);
}

// Monic integer polynomial, coefficients ascending (constant first),
// including the leading 1.
struct IntPolynomial {
    std::vector<BigInt> coeffs;

    explicit IntPolynomial(std::vector<BigInt> c) : coeffs(std::move(c)) {
        if (coeffs.size() < 2 || coeffs.back() != 1)
            throw std::invalid_argument("polynomial must be monic of degree >= 1");
    }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    bool operator==(const IntPolynomial& o) const { return coeffs == o.coeffs; }
    bool operator<(const IntPolynomial& o) const { return coeffs < o.coeffs; }

    std::string str() const {
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const BigInt& c = coeffs[static_cast<size_t>(k)];
            if (c == 0 && k != degree()) continue;
            if (!out.empty()) out += c < 0 ? " - " : " + ";
            else if (c < 0) out += "-";
            BigInt ac = abs(c);
            if (k == 0) {
                out += ac.str();
            } else {
                if (ac != 1) out += ac.str() + "*";
                out += k == 1 ? "x" : "x^" + std::to_string(k);
            }
        }
        return out;
    }
};

// Companion matrix with 1s on the subdiagonal and the negated
// coefficients down the last column, so (1,d) = -c_0.
inline RationalMatrix companion(const IntPolynomial& f) {
    int d = f.degree();
    RationalMatrix c(d);
    for (int i = 0; i + 1 < d; ++i) c.at(i + 1, i) = 1;
    for (int i = 0; i < d; ++i) c.at(i, d - 1) = BigRat(-f.coeffs[static_cast<size_t>(i)]);
    return c;
}

// Exact monic characteristic polynomial by the Faddeev-LeVerrier
// recurrence; coefficients ascending, leading coefficient 1.
inline std::vector<BigRat> char_poly(const RationalMatrix& a) {
    int d = a.dim();
    std::vector<BigRat> c(static_cast<size_t>(d) + 1);
    c[static_cast<size_t>(d)] = 1;
    RationalMatrix m = RationalMatrix::identity(d);
    for (int k = 1; k <= d; ++k) {
        RationalMatrix n = a * m;
        c[static_cast<size_t>(d - k)] = -n.trace() / k;
        if (k < d) {
            for (int i = 0; i < d; ++i) n.at(i, i) += c[static_cast<size_t>(d - k)];
            m = std::move(n);
        }
    }
    return c;
}

// The characteristic polynomial as an IntPolynomial; throws if any
// coefficient is non-integral.
inline IntPolynomial char_poly_integer(const RationalMatrix& a) {
    auto c = char_poly(a);
    std::vector<BigInt> out;
    out.reserve(c.size());
    for (const auto& q : c) {
        if (!is_integer(q))
            throw std::domain_error("characteristic polynomial has a non-integer coefficient");
        out.push_back(num(q));
    }
    return IntPolynomial(std::move(out));
}

}  // namespace expsg
