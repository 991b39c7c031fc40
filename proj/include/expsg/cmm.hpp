#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "expsg/diffcon.hpp"
#include "expsg/matrix.hpp"
#include "expsg/polynomial.hpp"
#include "expsg/rational.hpp"
#include "expsg/semigroup.hpp"

namespace expsg {

struct CmmConfig {
    long base = 2;                     // divisor-strategy base
    std::vector<long> extra_bases = {3, 4};
    std::optional<long> exponent_cap;  // N_max; defaults to F(S) + m(S)
    bool strategy_divisor = true;
    bool strategy_model = true;
    bool strategy_box = true;
    bool strategy_random = false;
    std::vector<IntPolynomial> model_polys;
    long coefficient_gcd_filter = 1;  // 1 = off
    long box_limit_sparse = 64;       // single nonzero coefficient (degree 3 only)
    long box_limit_d2 = 128;
    long box_limit_d3 = 32;
    long box_limit_d4 = 8;
    long random_budget = 1'000'000;
    std::uint64_t seed = 20240601;    // fixed default; never time-based
    long random_coeff_range = 1L << 13;
    long random_exponent_max = 14;
    long entry_bit_limit = kDefaultEntryBitLimit;

    long effective_cap(const NumericalSemigroup& s) const {
        long window = s.frobenius() + s.multiplicity();
        return exponent_cap ? std::max(*exponent_cap, window) : window;
    }
};

// Symbolic integrality constraints for A = B^-1 C B with
// B = diag(2^x_0, ..., 2^x_{d-1}): entry (i,j) of A^n equals
// (C^n)_{ij} * 2^(x_j - x_i).  Required-integral powers contribute hard
// constraints x_i - x_j <= v; forbidden powers contribute a disjunction
// (some entry must have v + x_j - x_i <= -1).
inline ConstraintProblem symbolic_constraints(const RationalMatrix& c, const NumericalSemigroup& s,
                                              long n_max,
                                              long entry_bit_limit = kDefaultEntryBitLimit) {
    int d = c.dim();
    ConstraintProblem p;
    p.num_vars = d;
    PowerStream stream(c, entry_bit_limit);
    for (long n = 1; n <= n_max && !p.infeasible; ++n) {
        auto [k, power] = stream.next();
        bool required = s.contains(k);
        if (!required && k > s.frobenius()) continue;  // only gaps are forbidden
        std::vector<DifferenceConstraint> group;
        bool auto_satisfied = false;
        for (int i = 0; i < d && !p.infeasible && !auto_satisfied; ++i)
            for (int j = 0; j < d; ++j) {
                DyadicEntry e = decompose_dyadic(power.at(i, j));
                if (e.zero) continue;
                // A non-dyadic odd part is untouched by the 2-power
                // conjugation: it keeps a required power non-integral for
                // every x and auto-satisfies a forbidden power.
                if (required) {
                    if (!e.dyadic() || (i == j && e.two_valuation < 0)) {
                        p.infeasible = true;
                        break;
                    }
                    if (i != j) p.hard.push_back({j, i, e.two_valuation});  // x_i - x_j <= v
                } else {
                    if (!e.dyadic() || (i == j && e.two_valuation < 0)) {
                        auto_satisfied = true;
                        break;
                    }
                    if (i != j) group.push_back({i, j, -e.two_valuation - 1});
                }
            }
        if (!required && !p.infeasible && !auto_satisfied) {
            if (group.empty()) {
                p.infeasible = true;  // the forbidden power is integral for every x
            } else {
                p.disjunctions.push_back(std::move(group));
            }
        }
    }
    return p;
}

// Candidate characteristic polynomials: monic degree-d products of
// distinct irreducible factors of x^k - a^k, for k ranging over
// S with 2 <= k <= F(S)+m(S); duplicates across k removed.
inline std::vector<IntPolynomial> candidate_polynomials_divisor(const NumericalSemigroup& s, int d,
                                                                long a) {
    if (d < 2) throw std::invalid_argument("candidate_polynomials_divisor: d must be >= 2");
    if (a == 0 || a == 1 || a == -1)
        throw std::invalid_argument("candidate_polynomials_divisor: |a| must be >= 2");
    long k_max = s.is_naturals() ? d + 1 : s.frobenius() + s.multiplicity();
    std::set<std::vector<BigInt>> seen;
    std::vector<IntPolynomial> out;
    for (long k = 2; k <= k_max; ++k) {
        if (!s.contains(k)) continue;
        auto factors = factor_x_pow_minus_a_pow(k, a);
        // Subsets with total degree d.
        size_t m = factors.size();
        for (size_t mask = 1; mask < (size_t{1} << m); ++mask) {
            long deg = 0;
            for (size_t t = 0; t < m; ++t)
                if (mask >> t & 1) deg += factors[t].poly.degree();
            if (deg != d) continue;
            std::vector<BigInt> prod{1};
            for (size_t t = 0; t < m; ++t)
                if (mask >> t & 1) prod = polyops::mul(prod, factors[t].poly.coeffs);
            if (seen.insert(prod).second) out.push_back(IntPolynomial(prod));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Model strategy: the characteristic polynomial of a verified
// representing matrix for a compatible model semigroup.
inline std::vector<IntPolynomial> candidate_polynomials_model(const NumericalSemigroup& s,
                                                              const NumericalSemigroup& model,
                                                              const RationalMatrix& certificate) {
    (void)s;
    if (!verify_representation(certificate, model))
        throw std::invalid_argument("model certificate does not represent the model semigroup");
    return {char_poly_integer(certificate)};  // throws if not integral
}

// Cayley-Hamilton coefficient filters for cubic candidates
// x^3 + p x^2 + q x + r.
struct CoefficientFilters {
    bool require_r_nonzero = false;
    bool require_q_nonzero = false;
    bool require_gcd_qr_ge2 = false;

    bool passes(const BigInt& p, const BigInt& q, const BigInt& r) const {
        (void)p;
        if (require_r_nonzero && r == 0) return false;
        if (require_q_nonzero && q == 0) return false;
        if (require_gcd_qr_ge2 && gcd(q, r) < 2) return false;
        return true;
    }
};

inline CoefficientFilters coefficient_filters(const NumericalSemigroup& s, int d = 3) {
    if (d != 3) throw std::invalid_argument("coefficient_filters: only degree 3 is supported");
    CoefficientFilters f;
    if (s.is_naturals()) return f;
    for (long n = 1; n <= s.frobenius(); ++n) {
        if (s.contains(n)) continue;
        if (s.contains(n - 1) && s.contains(n - 2)) f.require_r_nonzero = true;
        if (s.contains(n - 1) && s.contains(n - 3)) f.require_q_nonzero = true;
        if (s.contains(n + 1) && s.contains(n + 2) && s.contains(n + 3) && s.contains(n - 1))
            f.require_gcd_qr_ge2 = true;
    }
    return f;
}

// Small-coefficient candidates, ordered sparse-first then by growing
// coefficient shells; deterministic.
inline std::vector<IntPolynomial> candidate_polynomials_box(const NumericalSemigroup& s, int d,
                                                            const CmmConfig& cfg) {
    std::vector<IntPolynomial> out;
    std::set<std::vector<BigInt>> seen;
    auto add = [&](std::vector<BigInt> coeffs) {
        coeffs.push_back(1);
        if (seen.insert(coeffs).second) out.push_back(IntPolynomial(std::move(coeffs)));
    };
    std::optional<CoefficientFilters> filters;
    if (d == 3) filters = coefficient_filters(s, 3);
    auto admissible = [&](const std::vector<BigInt>& c) {
        if (!filters) return true;
        return filters->passes(c[2], c[1], c[0]);
    };
    if (d == 3 && cfg.box_limit_sparse > 0) {
        // One nonzero coefficient.
        for (long v = 1; v <= cfg.box_limit_sparse; ++v)
            for (long sign : {1, -1})
                for (int pos = 0; pos < d; ++pos) {
                    std::vector<BigInt> c(static_cast<size_t>(d));
                    c[static_cast<size_t>(pos)] = sign * v;
                    if (admissible(c)) add(std::move(c));
                }
    }
    long limit = d == 2 ? cfg.box_limit_d2 : d == 3 ? cfg.box_limit_d3 : d == 4 ? cfg.box_limit_d4 : 0;
    for (long shell = 0; shell <= limit; ++shell) {
        // All coefficient vectors with max |c_i| == shell.
        std::vector<BigInt> c(static_cast<size_t>(d));
        std::function<void(int, bool)> rec = [&](int pos, bool hit) {
            if (pos == d) {
                if (hit && admissible(c)) add(c);
                return;
            }
            for (long v = -shell; v <= shell; ++v) {
                c[static_cast<size_t>(pos)] = v;
                rec(pos + 1, hit || std::abs(v) == shell);
            }
        };
        rec(0, shell == 0);
    }
    return out;
}

struct CmmResult {
    RationalMatrix matrix;
    IntPolynomial poly;
    std::vector<long long> assignment;
};

namespace detail {
// diag(2^x)^-1 * C * diag(2^x), exact.
inline RationalMatrix conjugate_by_diag_pow2(const RationalMatrix& c,
                                             const std::vector<long long>& x) {
    int d = c.dim();
    RationalMatrix a(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (c.at(i, j) == 0) continue;
            a.at(i, j) = c.at(i, j) * pow2_rat(static_cast<long>(x[static_cast<size_t>(j)] -
                                                                 x[static_cast<size_t>(i)]));
        }
    return a;
}
}  // namespace detail

// Tries one candidate polynomial: encode, solve, conjugate, verify.
inline std::optional<CmmResult> cmm_try_candidate(const IntPolynomial& f,
                                                  const NumericalSemigroup& s,
                                                  const CmmConfig& cfg) {
    RationalMatrix c = companion(f);
    ConstraintProblem problem;
    try {
        problem = symbolic_constraints(c, s, cfg.effective_cap(s), cfg.entry_bit_limit);
    } catch (const EntryGrowthError&) {
        return std::nullopt;
    }
    auto assignment = solve_with_disjunctions(problem);
    if (!assignment) return std::nullopt;
    RationalMatrix a = detail::conjugate_by_diag_pow2(c, *assignment);
    if (!verify_representation(a, s, cfg.entry_bit_limit)) return std::nullopt;
    return CmmResult{std::move(a), f, std::move(*assignment)};
}

// The companion-matrix search: iterate candidate characteristic
// polynomials (divisor products, supplied model polynomials, then a
// small-coefficient sweep), reduce each to a difference-constraint
// problem over the diagonal conjugator exponents, and return the first
// verified representing matrix.  Every returned matrix has passed the
// exact power check; the solver's answer is never trusted on its own.
inline std::optional<CmmResult> cmm_search(const NumericalSemigroup& s, int d,
                                           const CmmConfig& cfg = {}) {
    if (d == 1) {
        if (!s.is_naturals()) return std::nullopt;
        RationalMatrix a(1);
        a.at(0, 0) = BigRat(cfg.base);
        return CmmResult{a, IntPolynomial({-BigInt(cfg.base), 1}), {0}};
    }
    if (d < 1) throw std::invalid_argument("cmm_search: d must be >= 1");
    std::vector<IntPolynomial> candidates;
    std::set<std::vector<BigInt>> seen;
    auto push = [&](const IntPolynomial& f) {
        if (seen.insert(f.coeffs).second) candidates.push_back(f);
    };
    if (cfg.strategy_divisor) {
        for (const auto& f : candidate_polynomials_divisor(s, d, cfg.base)) push(f);
        for (long a : cfg.extra_bases)
            for (const auto& f : candidate_polynomials_divisor(s, d, a)) push(f);
    }
    if (cfg.strategy_model)
        for (const auto& f : cfg.model_polys)
            if (f.degree() == d) push(f);
    if (cfg.strategy_box)
        for (const auto& f : candidate_polynomials_box(s, d, cfg)) push(f);
    for (const auto& f : candidates)
        if (auto r = cmm_try_candidate(f, s, cfg)) return r;
    return std::nullopt;
}

// --- randomized lower-triangular search ---

struct RandomCandidate {
    long index = 0;
    IntPolynomial poly{std::vector<BigInt>{0, 1}};
    std::vector<std::vector<BigInt>> b;  // lower triangular, powers of two
    bool accepted = false;
    std::optional<long> first_disagreement;
};

struct RandomSearchResult {
    RationalMatrix matrix;
    IntPolynomial poly;
    std::vector<std::vector<BigInt>> b;
    long tested = 0;
};

namespace detail {

inline std::vector<std::vector<BigInt>> int_identity(int d) {
    std::vector<std::vector<BigInt>> m(static_cast<size_t>(d),
                                       std::vector<BigInt>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return m;
}

inline std::vector<std::vector<BigInt>> int_mul(const std::vector<std::vector<BigInt>>& a,
                                                const std::vector<std::vector<BigInt>>& b) {
    size_t d = a.size();
    std::vector<std::vector<BigInt>> r(d, std::vector<BigInt>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t k = 0; k < d; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < d; ++j) {
                if (b[k][j] == 0) continue;
                r[i][j] += a[i][k] * b[k][j];
            }
        }
    return r;
}

inline BigInt int_det(const std::vector<std::vector<BigInt>>& m) {
    size_t d = m.size();
    if (d == 1) return m[0][0];
    BigInt det = 0;
    for (size_t k = 0; k < d; ++k) {
        if (m[0][k] == 0) continue;
        std::vector<std::vector<BigInt>> minor(d - 1, std::vector<BigInt>(d - 1));
        for (size_t i = 1; i < d; ++i) {
            size_t jj = 0;
            for (size_t j = 0; j < d; ++j) {
                if (j == k) continue;
                minor[i - 1][jj++] = m[i][j];
            }
        }
        BigInt term = m[0][k] * int_det(minor);
        det += (k % 2 == 0) ? term : -term;
    }
    return det;
}

// adj(M) with adj(M) * M = det(M) * I.
inline std::vector<std::vector<BigInt>> int_adjugate(const std::vector<std::vector<BigInt>>& m) {
    size_t d = m.size();
    std::vector<std::vector<BigInt>> adj(d, std::vector<BigInt>(d));
    if (d == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            std::vector<std::vector<BigInt>> minor(d - 1, std::vector<BigInt>(d - 1));
            size_t ii = 0;
            for (size_t r = 0; r < d; ++r) {
                if (r == i) continue;
                size_t jj = 0;
                for (size_t c = 0; c < d; ++c) {
                    if (c == j) continue;
                    minor[ii][jj++] = m[r][c];
                }
                ++ii;
            }
            BigInt cof = int_det(minor);
            adj[j][i] = ((i + j) % 2 == 0) ? cof : -cof;
        }
    return adj;
}

}  // namespace detail

// Seeded random search over pairs (f, B) with f monic of degree d and B
// lower triangular with power-of-two entries: A = B^-1 C_f B is tested
// by computing adj(B) C_f^n B and checking divisibility by det(B) for
// n = 1..F+m, rejecting at the first disagreement with S.  Every
// accepted matrix is re-verified through the exact rational path.
inline std::optional<RandomSearchResult> random_triangular_search(
    const NumericalSemigroup& s, int d, const CmmConfig& cfg,
    const std::function<void(const RandomCandidate&)>& observer = nullptr) {
    if (d < 2) throw std::invalid_argument("random_triangular_search: d must be >= 2");
    if (s.is_naturals()) throw std::invalid_argument("random_triangular_search: S = N needs no search");
    std::mt19937_64 rng(cfg.seed);
    long g = std::max<long>(1, cfg.coefficient_gcd_filter);
    long coeff_units = std::max<long>(1, cfg.random_coeff_range / g);
    std::uniform_int_distribution<long> unit_dist(-coeff_units, coeff_units);
    std::uniform_int_distribution<long> exp_dist(0, cfg.random_exponent_max);
    std::uniform_int_distribution<int> coin(0, 3);
    std::optional<CoefficientFilters> filters;
    if (d == 3) filters = coefficient_filters(s, 3);

    long window = s.frobenius() + s.multiplicity();
    for (long iter = 0; iter < cfg.random_budget; ++iter) {
        std::vector<BigInt> coeffs(static_cast<size_t>(d) + 1);
        coeffs[static_cast<size_t>(d)] = 1;
        for (int i = 0; i < d; ++i) coeffs[static_cast<size_t>(i)] = BigInt(g) * unit_dist(rng);
        if (g > 1) {
            BigInt gg = 0;
            for (int i = 0; i < d; ++i) gg = gcd(gg, coeffs[static_cast<size_t>(i)]);
            if (gg != g) continue;  // exact gcd filter
        }
        if (filters && !filters->passes(coeffs[2], coeffs[1], coeffs[0])) continue;
        IntPolynomial f(coeffs);

        std::vector<std::vector<BigInt>> b(static_cast<size_t>(d),
                                           std::vector<BigInt>(static_cast<size_t>(d)));
        for (int i = 0; i < d; ++i) {
            b[static_cast<size_t>(i)][static_cast<size_t>(i)] = BigInt(1) << exp_dist(rng);
            for (int j = 0; j < i; ++j)
                if (coin(rng) != 0)
                    b[static_cast<size_t>(i)][static_cast<size_t>(j)] = BigInt(1) << exp_dist(rng);
        }
        std::vector<std::vector<BigInt>> adj = detail::int_adjugate(b);
        BigInt det = 1;
        for (int i = 0; i < d; ++i) det *= b[static_cast<size_t>(i)][static_cast<size_t>(i)];
        long det_val = two_valuation(det);

        // Integer companion of f.
        std::vector<std::vector<BigInt>> cf(static_cast<size_t>(d),
                                            std::vector<BigInt>(static_cast<size_t>(d)));
        for (int i = 0; i + 1 < d; ++i) cf[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = 1;
        for (int i = 0; i < d; ++i)
            cf[static_cast<size_t>(i)][static_cast<size_t>(d - 1)] = -coeffs[static_cast<size_t>(i)];

        RandomCandidate cand;
        cand.index = iter;
        cand.poly = f;
        cand.b = b;

        std::vector<std::vector<BigInt>> cn = detail::int_identity(d);
        bool ok = true;
        for (long n = 1; n <= window && ok; ++n) {
            cn = detail::int_mul(cn, cf);
            std::vector<std::vector<BigInt>> num = detail::int_mul(detail::int_mul(adj, cn), b);
            bool integral = true;
            for (int i = 0; i < d && integral; ++i)
                for (int j = 0; j < d; ++j) {
                    const BigInt& e = num[static_cast<size_t>(i)][static_cast<size_t>(j)];
                    if (e != 0 && two_valuation(e) < det_val) {
                        integral = false;
                        break;
                    }
                }
            if (integral != s.contains(n)) {
                cand.first_disagreement = n;
                ok = false;
            }
        }
        cand.accepted = ok;
        if (observer) observer(cand);
        if (!ok) continue;

        // Exact re-verification through the rational path.
        RationalMatrix bq(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) bq.at(i, j) = BigRat(b[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        RationalMatrix binv(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                binv.at(i, j) = BigRat(adj[static_cast<size_t>(i)][static_cast<size_t>(j)], det);
        RationalMatrix a = binv * companion(f) * bq;
        if (!verify_representation(a, s, cfg.entry_bit_limit)) continue;  // never expected
        return RandomSearchResult{std::move(a), f, b, iter + 1};
    }
    return std::nullopt;
}

// Fans the random search out across workers with derived sub-seeds.  A
// single worker is bit-reproducible; with several workers the result is
// a verified certificate but not necessarily the same one every run.
inline std::optional<RandomSearchResult> random_triangular_search_parallel(
    const NumericalSemigroup& s, int d, const CmmConfig& cfg, int workers) {
    if (workers <= 1) return random_triangular_search(s, d, cfg);
    std::optional<RandomSearchResult> found;
    std::mutex mx;
    std::atomic<bool> stop{false};
    auto run = [&](int w) {
        CmmConfig local = cfg;
        local.seed = cfg.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(w + 1);
        local.random_budget = cfg.random_budget / workers + 1;
        auto observer = [&](const RandomCandidate&) {
            if (stop.load(std::memory_order_relaxed)) throw std::runtime_error("stop");
        };
        try {
            auto r = random_triangular_search(s, d, local, observer);
            if (r) {
                std::lock_guard<std::mutex> lock(mx);
                if (!found) found = std::move(r);
                stop.store(true, std::memory_order_relaxed);
            }
        } catch (const std::runtime_error&) {
            // cooperative cancellation
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
    return found;
}

}  // namespace expsg
