#include <catch2/catch_amalgamated.hpp>

#include "expsg/bounds.hpp"
#include "expsg/constructions.hpp"

using namespace expsg;

namespace {
NumericalSemigroup ns(std::vector<long> gens) {
    return NumericalSemigroup::from_coprime_generators(std::move(gens));
}
}  // namespace

TEST_CASE("consecutive-run lower bound") {
    CHECK(lower_bound_consecutive(ns({4, 5, 7})) == 3);
    CHECK(lower_bound_consecutive(ns({5, 6, 7, 8})) == 5);
    CHECK(lower_bound_consecutive(ns({2, 3})) == 2);
    CHECK(lower_bound_consecutive(ns({3, 4})) == 3);
    CHECK_THROWS(lower_bound_consecutive(NumericalSemigroup::naturals()));
}

TEST_CASE("dimension-2 obstruction") {
    CHECK(dim2_obstruction(ns({5, 7, 9, 11, 13})));
    CHECK_FALSE(dim2_obstruction(ns({2, 3})));
    CHECK_FALSE(dim2_obstruction(ns({6, 8, 11, 13, 15})));
    CHECK_THROWS(dim2_obstruction(NumericalSemigroup::naturals()));
}

TEST_CASE("quotient lower bound") {
    CHECK(lower_bound_quotient(ns({6, 8, 11, 13, 15})) == 3);
    CHECK(lower_bound_quotient(ns({2, 3})) == 2);       // no small elements
    CHECK(lower_bound_quotient(ns({4, 6, 9})) == 2);    // S/2 = <2,3> needs only 2
}

TEST_CASE("classification of decidable classes") {
    CHECK(classify_low_multiplicity(from_generators({3, 5, 7})) == 2);
    CHECK(classify_low_multiplicity(from_generators({3, 7, 11})) == 3);
    CHECK(classify_low_multiplicity(from_generators({1})) == 1);
    CHECK(classify_low_multiplicity(from_generators({2, 9})) == 2);
    CHECK(classify_low_multiplicity(from_generators({5, 6, 7, 8, 9})) == 2);  // S_5
    CHECK(classify_low_multiplicity(from_generators({4, 6, 7, 9})) == 2);     // <4> u S_6
    CHECK(classify_low_multiplicity(from_generators({4, 5, 7})) == std::nullopt);
    CHECK(classify_low_multiplicity(Subsemigroup::zero()) == 1);
    CHECK(classify_low_multiplicity(Subsemigroup::cyclic(4)) == 2);
    CHECK(classify_low_multiplicity(from_generators({3, 5})) == 3);  // Apery gap 5
}

TEST_CASE("classification matches the certificate route") {
    for (long f = 1; f <= 8; ++f)
        for (const auto& s : enumerate_by_frobenius(f)) {
            auto cls = classify_low_multiplicity(Subsemigroup::numerical(s));
            if (!cls || *cls != 2) continue;
            TwoByTwoSpec spec = recognize_ordinary(s)
                                    ? two_by_two_ordinary_spec(*recognize_ordinary(s))
                                    : two_by_two_union_spec(s.multiplicity(), s.conductor());
            CHECK(verify_representation(two_by_two(spec), s).ok);
        }
}

TEST_CASE("combined bounds") {
    DimensionBounds b = combine_bounds(ns({4, 5, 7}));
    CHECK(b.lower == 3);
    CHECK(b.upper == 4);

    DimensionBounds nat = combine_bounds(NumericalSemigroup::naturals());
    CHECK(nat.lower == 1);
    CHECK(nat.upper == 1);

    DimensionBounds s5678 = combine_bounds(ns({5, 6, 7, 8}));
    CHECK(s5678.lower == 5);
    CHECK(s5678.upper == 5);

    DimensionBounds q = combine_bounds(ns({6, 8, 11, 13, 15}));
    CHECK(q.lower == 3);
    bool quotient_reason = false;
    for (const auto& r : q.reasons)
        if (r.tag == BoundReason::Tag::quotient) quotient_reason = true;
    CHECK(quotient_reason);
}

TEST_CASE("bounds stay ordered over the full sweep") {
    for (long f = 1; f <= 12; ++f)
        for (const auto& s : enumerate_by_frobenius(f)) {
            DimensionBounds b = combine_bounds(s);
            CHECK(b.lower >= 2);
            CHECK(b.lower <= b.upper);
            CHECK(b.upper <= s.multiplicity());
        }
}
