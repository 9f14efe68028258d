#include <doctest.h>

#include <cmath>
#include <limits>

#include "conefix/cone.hpp"
#include "conefix/sampling.hpp"

using namespace conefix;

namespace {

EVector vec(std::vector<double> v) { return EVector(std::move(v)); }

ConeSpec orthant(std::size_t dim) { return ConeSpec{dim}; }

}  // namespace

TEST_CASE("EVector enforces its invariants") {
    CHECK_THROWS_AS(EVector(std::vector<double>{}), Error);
    CHECK_THROWS_AS(vec({1.0, std::nan(""), 2.0}), Error);
    CHECK_THROWS_AS(vec({1.0, std::numeric_limits<double>::infinity()}), Error);
    const EVector v = vec({3.0, -4.0, 1.0});
    CHECK(v.sup_norm() == 4.0);
    CHECK(v.min_coordinate() == -4.0);
    CHECK_FALSE(v.is_zero());
    CHECK(EVector::zeros(3).is_zero());
    CHECK(EVector::zeros(3).sup_norm() == 0.0);
}

TEST_CASE("cone membership is exact") {
    const ConeSpec cone = orthant(3);
    CHECK(cone_contains(cone, vec({0, 0, 0})));
    CHECK(cone_contains(cone, vec({1, 2, 3})));
    CHECK_FALSE(cone_contains(cone, vec({1, -0.001, 3})));
    CHECK_THROWS_AS(cone_contains(cone, vec({1, 2})), Error);
}

TEST_CASE("interior membership uses the margin") {
    const ConeSpec cone = orthant(2);
    CHECK(cone_interior_contains(cone, vec({1, 1})));
    CHECK_FALSE(cone_interior_contains(cone, vec({1, 0})));
    CHECK_FALSE(cone_interior_contains(cone, vec({1e-13, 1})));
}

TEST_CASE("compare reports the strongest relation") {
    const ConeSpec cone = orthant(2);

    const OrderReport eq = compare(cone, vec({0, 0}), vec({0, 0}));
    CHECK(eq.relation == OrderRelation::leq);

    const OrderReport strict = compare(cone, vec({1, 2}), vec({2, 3}));
    CHECK(strict.relation == OrderRelation::ll);

    const OrderReport inc = compare(cone, vec({1, 2}), vec({2, 1}));
    CHECK(inc.relation == OrderRelation::incomparable);
    REQUIRE(inc.witness.has_value());
    CHECK(*inc.witness == 1);  // (y - x)[1] = -1

    // lt but not ll: dominates weakly, one coordinate on the boundary
    const OrderReport weak = compare(cone, vec({1, 2}), vec({1, 3}));
    CHECK(weak.relation == OrderRelation::lt);
}

TEST_CASE("cone axioms hold for the orthant") {
    const AxiomReport report = verify_cone_axioms(orthant(4), 1000, 7);
    CHECK(report.pass());
    CHECK(report.samples_checked == 1000);
}

TEST_CASE("corrupted membership test yields a P3 counterexample") {
    ConeSpec corrupted = orthant(4);
    corrupted.membership_slack = 0.1;  // accepts coordinates down to -0.1
    const AxiomReport report = verify_cone_axioms(corrupted, 2000, 7);
    CHECK_FALSE(report.pass());
    bool p3 = false;
    for (const auto& v : report.violations) p3 = p3 || v.axiom == "P3";
    CHECK(p3);
}

TEST_CASE("corrupted membership on a single coordinate is found") {
    const ConeSpec cone = orthant(4);
    const auto contains_bad = [&](const EVector& x) {
        if (x[0] < -0.1) return false;
        for (std::size_t i = 1; i < x.dimension(); ++i)
            if (x[i] < 0.0) return false;
        return true;
    };
    const AxiomReport report = verify_cone_axioms(cone, 5000, 11, contains_bad);
    CHECK_FALSE(report.pass());
}

TEST_CASE("axiom verifier rejects zero samples") {
    CHECK_THROWS_AS(verify_cone_axioms(orthant(2), 0, 1), Error);
}

TEST_CASE("normality of the orthant under the sup norm") {
    const NormalityReport report = verify_normality(orthant(5), 2000, 3);
    CHECK(report.pass);
    CHECK(report.k_observed <= 1.0 + 1e-12);
    // the equality pair x = y is always sampled, so the ratio 1 is attained
    CHECK(report.k_observed == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("declared K below 1 fails with the equality pair as witness") {
    ConeSpec cone = orthant(3);
    cone.normal_constant = 0.5;
    const NormalityReport report = verify_normality(cone, 500, 3);
    CHECK_FALSE(report.pass);
    REQUIRE(report.witness_x.has_value());
    REQUIRE(report.witness_y.has_value());
    CHECK(*report.witness_x == *report.witness_y);
}

TEST_CASE("partial order coherence on sampled vectors") {
    const ConeSpec cone = orthant(4);
    Rng rng(99);
    auto member = [&] {
        std::vector<double> c(4);
        for (auto& v : c) v = rng.uniform(0.0, 5.0);
        return EVector(std::move(c));
    };
    auto any = [&] {
        std::vector<double> c(4);
        for (auto& v : c) v = rng.uniform(-5.0, 5.0);
        return EVector(std::move(c));
    };

    for (int i = 0; i < 500; ++i) {
        const EVector x = any();
        // reflexivity: compare(x, x) = leq
        CHECK(compare(cone, x, x).relation == OrderRelation::leq);

        // transitivity via constructed chains x <= y <= z
        const EVector y = x + member();
        const EVector z = y + member();
        const auto rxy = compare(cone, x, y).relation;
        const auto ryz = compare(cone, y, z).relation;
        CHECK(rxy != OrderRelation::incomparable);
        CHECK(ryz != OrderRelation::incomparable);
        CHECK(compare(cone, x, z).relation != OrderRelation::incomparable);

        // ll implies lt implies leq: ll pairs are both lt-eligible and leq
        const auto r = compare(cone, x, y);
        if (r.relation == OrderRelation::ll) {
            CHECK(cone_contains(cone, y - x));
            CHECK_FALSE(x == y);
        }

        // antisymmetry is exact for the orthant
        if (cone_contains(cone, y - x) && cone_contains(cone, x - y)) CHECK(x == y);

        // P2 on sampled tuples
        const double a = rng.uniform(0.0, 10.0);
        const double b = rng.uniform(0.0, 10.0);
        const EVector p = member();
        const EVector q = member();
        CHECK(cone_contains(cone, a * p + b * q));

        // normality with K = 1 under the sup norm: 0 <= u <= v
        const EVector v = member();
        std::vector<double> uc(4);
        for (std::size_t j = 0; j < 4; ++j) uc[j] = rng.uniform() * v[j];
        const EVector u = vec(std::move(uc));
        CHECK(u.sup_norm() <= v.sup_norm() + 1e-15);
    }
}
