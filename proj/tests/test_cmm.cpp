#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "expsg/cmm.hpp"
#include "expsg/io.hpp"
#include "support/oracles.hpp"

using namespace expsg;

namespace {
NumericalSemigroup ns(std::vector<long> gens) {
    return NumericalSemigroup::from_coprime_generators(std::move(gens));
}

IntPolynomial poly(std::vector<long> ascending) {
    std::vector<BigInt> c(ascending.begin(), ascending.end());
    return IntPolynomial(std::move(c));
}

bool satisfies(const std::vector<long long>& x, const DifferenceConstraint& c) {
    return x[static_cast<size_t>(c.j)] - x[static_cast<size_t>(c.i)] <= c.bound;
}

bool satisfies_problem(const std::vector<long long>& x, const ConstraintProblem& p) {
    for (const auto& c : p.hard)
        if (!satisfies(x, c)) return false;
    for (const auto& group : p.disjunctions) {
        bool any = false;
        for (const auto& c : group) any = any || satisfies(x, c);
        if (!any) return false;
    }
    return true;
}
}  // namespace

TEST_CASE("difference system solver") {
    // x1 - x0 <= -1 together with x0 - x1 <= 0 closes a negative cycle.
    CHECK_FALSE(solve_difference_system({{0, 1, -1}, {1, 0, 0}}, 2).has_value());

    auto sol = solve_difference_system({{0, 1, -1}, {1, 0, 3}}, 2);
    REQUIRE(sol);
    CHECK((*sol)[1] - (*sol)[0] <= -1);
    CHECK((*sol)[0] - (*sol)[1] <= 3);
    CHECK(*std::min_element(sol->begin(), sol->end()) == 0);
}

TEST_CASE("solver agrees with exhaustive box search") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> var(0, 4);
    std::uniform_int_distribution<long long> bound(-10, 10);
    std::uniform_int_distribution<int> size(1, 10);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<DifferenceConstraint> cs;
        int m = size(rng);
        for (int k = 0; k < m; ++k) {
            int i = var(rng), j = var(rng);
            if (i == j) continue;
            cs.push_back({i, j, bound(rng)});
        }
        bool feasible = solve_difference_system(cs, 5).has_value();
        CHECK(feasible == oracles::box_feasible(cs, 5));
        if (feasible) {
            auto sol = *solve_difference_system(cs, 5);
            for (const auto& c : cs) CHECK(satisfies(sol, c));
        }
    }
}

TEST_CASE("disjunctive solving") {
    ConstraintProblem p;
    p.num_vars = 2;
    p.disjunctions.push_back({{0, 1, -1}});
    auto sol = solve_with_disjunctions(p);
    REQUIRE(sol);
    CHECK(satisfies_problem(*sol, p));

    // Either branch of the first group conflicts with a hard constraint;
    // the second group's sole option decides the sign.
    ConstraintProblem q;
    q.num_vars = 2;
    q.hard.push_back({0, 1, 2});
    q.disjunctions.push_back({{0, 1, -5}, {1, 0, -1}});
    auto qs = solve_with_disjunctions(q);
    REQUIRE(qs);
    CHECK(satisfies_problem(*qs, q));

    ConstraintProblem infeasible;
    infeasible.num_vars = 2;
    infeasible.infeasible = true;
    CHECK_FALSE(solve_with_disjunctions(infeasible).has_value());

    ConstraintProblem empty;
    empty.num_vars = 3;
    auto es = solve_with_disjunctions(empty);
    REQUIRE(es);
    CHECK(*es == std::vector<long long>(3, 0));
}

TEST_CASE("divisor candidates") {
    auto c457 = candidate_polynomials_divisor(ns({4, 5, 7}), 3, 2);
    auto has = [](const std::vector<IntPolynomial>& v, const IntPolynomial& f) {
        return std::find(v.begin(), v.end(), f) != v.end();
    };
    CHECK(has(c457, poly({-8, 4, -2, 1})));  // (x-2)(x^2+4)

    auto c2 = candidate_polynomials_divisor(ns({2, 3}), 2, 2);
    CHECK(has(c2, poly({-4, 0, 1})));  // (x-2)(x+2)

    // x^6 - 2^6 contributes its four cubic products for <6,7>.
    auto c67 = candidate_polynomials_divisor(ns({6, 7}), 3, 2);
    CHECK(has(c67, poly({-8, 4, -2, 1})));
    CHECK(has(c67, poly({8, 8, 4, 1})));
    CHECK(has(c67, poly({-8, 0, 0, 1})));
    CHECK(has(c67, poly({8, 0, 0, 1})));

    CHECK_THROWS(candidate_polynomials_divisor(ns({4, 5, 7}), 3, 1));
}

TEST_CASE("model candidates") {
    RationalMatrix aprime(3);
    aprime.at(0, 2) = BigRat(1, 512);
    aprime.at(1, 0) = BigRat(16777216);
    aprime.at(1, 2) = BigRat(-16384);
    aprime.at(2, 1) = BigRat(1, 512);
    aprime.at(2, 2) = BigRat(8);
    auto polys = candidate_polynomials_model(ns({5, 6, 13, 14}), ns({6, 7, 11, 15, 16}), aprime);
    REQUIRE(polys.size() == 1);
    CHECK(polys[0] == poly({-64, 32, -8, 1}));

    RationalMatrix two(1);
    two.at(0, 0) = 2;
    auto nat = candidate_polynomials_model(NumericalSemigroup::naturals(),
                                           NumericalSemigroup::naturals(), two);
    REQUIRE(nat.size() == 1);
    CHECK(nat[0] == poly({-2, 1}));

    // A certificate that does not represent the claimed model is rejected.
    CHECK_THROWS_AS(candidate_polynomials_model(ns({4, 5, 7}), ns({4, 5, 6}), aprime),
                    std::invalid_argument);
}

TEST_CASE("coefficient filters") {
    CoefficientFilters f568 = coefficient_filters(ns({5, 6, 8}));
    CHECK(f568.require_r_nonzero);   // n = 7 with 5, 6 members
    CHECK(f568.require_q_nonzero);   // n = 9 with 8, 6 members
    CHECK(f568.require_gcd_qr_ge2);  // n = 9 with 8, 10, 11, 12 members
    CHECK_FALSE(f568.passes(BigInt(1), BigInt(1), BigInt(0)));
    CHECK_FALSE(f568.passes(BigInt(1), BigInt(0), BigInt(1)));
    CHECK_FALSE(f568.passes(BigInt(1), BigInt(2), BigInt(3)));
    CHECK(f568.passes(BigInt(-4048), BigInt(2840), BigInt(48)));

    CoefficientFilters fn = coefficient_filters(NumericalSemigroup::naturals());
    CHECK_FALSE(fn.require_r_nonzero);
    CHECK_FALSE(fn.require_q_nonzero);
    CHECK_FALSE(fn.require_gcd_qr_ge2);

    CoefficientFilters f457 = coefficient_filters(ns({4, 5, 7}));
    CHECK(f457.require_r_nonzero);  // n = 6 with 4, 5 members

    CHECK_THROWS(coefficient_filters(ns({5, 6, 8}), 4));
}

TEST_CASE("symbolic constraints reproduce the published system") {
    RationalMatrix c = companion(poly({-8, 4, -2, 1}));
    ConstraintProblem p = symbolic_constraints(c, ns({4, 5, 7}), 19);
    CHECK_FALSE(p.infeasible);
    CHECK(p.num_vars == 3);

    // The published inequalities, translated to zero-based variables:
    // from A^5: x1-x0 <= 4, x2-x1 <= 4, x1-x2 <= 6, x0-x2 <= 7;
    // from A^7: x2-x0 <= 5, x1-x0 <= 6, x0-x1 <= 8, x2-x1 <= 8.
    auto has_hard = [&](int i, int j, long long b) {
        return std::find(p.hard.begin(), p.hard.end(), DifferenceConstraint{i, j, b}) != p.hard.end();
    };
    CHECK(has_hard(0, 1, 4));
    CHECK(has_hard(1, 2, 4));
    CHECK(has_hard(2, 1, 6));
    CHECK(has_hard(2, 0, 7));
    CHECK(has_hard(0, 2, 5));
    CHECK(has_hard(0, 1, 6));
    CHECK(has_hard(1, 0, 8));
    CHECK(has_hard(1, 2, 8));

    // Forbidden powers 1, 2, 3, 6 each contribute a disjunction group
    // (A^4 = 16 I imposes nothing).
    CHECK(p.disjunctions.size() == 4);

    // The disjunction for n = 1 offers the published choice x0-x1 <= -1.
    bool found = false;
    for (const auto& g : p.disjunctions)
        for (const auto& cst : g)
            if (cst == DifferenceConstraint{1, 0, -1}) found = true;
    CHECK(found);

    // The published solution (0, 3, 5) satisfies the full system.
    CHECK(satisfies_problem({0, 3, 5}, p));

    // And the solver's own answer conjugates to a verified certificate.
    auto sol = solve_with_disjunctions(p);
    REQUIRE(sol);
    CHECK(satisfies_problem(*sol, p));
}

TEST_CASE("symbolic constraints trivial and degenerate cases") {
    RationalMatrix twoI = RationalMatrix::identity(2).scaled(BigRat(2));
    ConstraintProblem p = symbolic_constraints(twoI, NumericalSemigroup::naturals(), 5);
    CHECK_FALSE(p.infeasible);
    CHECK(p.hard.empty());
    CHECK(p.disjunctions.empty());

    // 2I cannot represent a semigroup missing 1: the forbidden power has
    // no adjustable entry.
    ConstraintProblem q = symbolic_constraints(twoI, ns({2, 3}), 5);
    CHECK(q.infeasible);

    // A half-integer diagonal makes required powers unfixable.
    RationalMatrix half = RationalMatrix::identity(2).scaled(BigRat(1, 2));
    ConstraintProblem h = symbolic_constraints(half, NumericalSemigroup::naturals(), 3);
    CHECK(h.infeasible);
}

TEST_CASE("cmm_search rediscovers the 3x3 certificate for <4,5,7>") {
    auto r = cmm_search(ns({4, 5, 7}), 3);
    REQUIRE(r);
    CHECK(r->poly == poly({-8, 4, -2, 1}));
    CHECK(verify_representation(r->matrix, ns({4, 5, 7})).ok);

    // Determinism: identical inputs give identical outputs.
    auto r2 = cmm_search(ns({4, 5, 7}), 3);
    REQUIRE(r2);
    CHECK(r2->matrix == r->matrix);
}

TEST_CASE("cmm_search base cases") {
    auto nat = cmm_search(NumericalSemigroup::naturals(), 1);
    REQUIRE(nat);
    CHECK(nat->matrix == RationalMatrix::identity(1).scaled(BigRat(2)));
    CHECK_FALSE(cmm_search(ns({2, 3}), 1).has_value());
}

TEST_CASE("cmm_search finds a 2x2 certificate for <4,6,9,11> from scratch") {
    auto r = cmm_search(ns({4, 6, 9, 11}), 2);
    REQUIRE(r);
    CHECK(r->matrix.dim() == 2);
    CHECK(verify_representation(r->matrix, ns({4, 6, 9, 11})).ok);
}

TEST_CASE("cmm_search with a model polynomial resolves <5,6,13,14>") {
    CmmConfig cfg;
    cfg.strategy_divisor = false;
    cfg.strategy_box = false;
    cfg.model_polys.push_back(poly({-64, 32, -8, 1}));  // charpoly of the model certificate
    auto r = cmm_search(ns({5, 6, 13, 14}), 3, cfg);
    REQUIRE(r);
    CHECK(r->poly == poly({-64, 32, -8, 1}));
    CHECK(verify_representation(r->matrix, ns({5, 6, 13, 14})).ok);
}

TEST_CASE("random triangular search verifies every accepted candidate") {
    CmmConfig cfg;
    cfg.random_budget = 3000;
    cfg.seed = 424242;
    cfg.random_coeff_range = 64;
    cfg.random_exponent_max = 6;
    long tested = 0;
    std::vector<RandomCandidate> sampled;
    auto observer = [&](const RandomCandidate& c) {
        ++tested;
        if (c.index % 500 == 0 || c.accepted) sampled.push_back(c);
    };
    NumericalSemigroup s = ns({4, 6, 9, 11});
    auto r = random_triangular_search(s, 2, cfg, observer);
    CHECK(tested > 0);
    if (r) CHECK(verify_representation(r->matrix, s).ok);
    // Re-check sampled verdicts against the exact oracle.
    for (const auto& c : sampled) {
        RationalMatrix bq(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) bq.at(i, j) = BigRat(c.b[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        BigInt det = c.b[0][0] * c.b[1][1];
        RationalMatrix binv(2);
        binv.at(0, 0) = BigRat(c.b[1][1], det);
        binv.at(1, 0) = BigRat(-c.b[1][0], det);
        binv.at(1, 1) = BigRat(c.b[0][0], det);
        RationalMatrix a = binv * companion(c.poly) * bq;
        VerificationResult v = verify_representation(a, s);
        CHECK(v.ok == c.accepted);
        if (!v.ok) CHECK(v.witness == c.first_disagreement);
    }
    // Zero budget finds nothing.
    CmmConfig zero = cfg;
    zero.random_budget = 0;
    CHECK_FALSE(random_triangular_search(s, 2, zero).has_value());
}

TEST_CASE("random triangular search is deterministic per seed") {
    CmmConfig cfg;
    cfg.random_budget = 500;
    cfg.seed = 7;
    std::vector<long> a1, a2;
    auto obs1 = [&](const RandomCandidate& c) { a1.push_back(c.first_disagreement.value_or(-1)); };
    auto obs2 = [&](const RandomCandidate& c) { a2.push_back(c.first_disagreement.value_or(-1)); };
    random_triangular_search(ns({5, 6, 8}), 3, cfg, obs1);
    random_triangular_search(ns({5, 6, 8}), 3, cfg, obs2);
    CHECK(a1 == a2);
}

TEST_CASE("constraint encoding matches the exact power pattern") {
    // For a feasible assignment, the conjugated matrix reproduces the
    // integral / non-integral pattern the constraints encoded, power by
    // power, across the whole window.
    NumericalSemigroup s = ns({4, 5, 7});
    for (const IntPolynomial& f :
         {poly({-8, 4, -2, 1}), poly({8, 8, 4, 1}), poly({-2, -8, 0, 1})}) {
        RationalMatrix c = companion(f);
        long window = s.frobenius() + s.multiplicity();
        ConstraintProblem p = symbolic_constraints(c, s, window);
        if (p.infeasible) continue;
        auto sol = solve_with_disjunctions(p);
        if (!sol) continue;
        RationalMatrix a = detail::conjugate_by_diag_pow2(c, *sol);
        PowerStream stream(a);
        for (long n = 1; n <= window; ++n)
            CHECK(stream.next().second.is_integral() == s.contains(n));
    }
}
