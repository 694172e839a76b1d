#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pbcdbscan/geometry.hpp"

using namespace pbcdbscan;

namespace {

DomainSpec unit_periodic_1d() { return DomainSpec::all_periodic(1, 0.0, 1.0); }

PointSet single(std::initializer_list<double> coords) {
    PointSet p(coords.size());
    p.add(coords);
    return p;
}

} // namespace

TEST_CASE("boundary spec validates its interval") {
    CHECK_THROWS_AS(BoundarySpec::periodic(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BoundarySpec::periodic(2.0, 1.0), std::invalid_argument);
    const BoundarySpec b = BoundarySpec::periodic(-1.0, 3.0);
    CHECK(b.period() == 4.0);
    CHECK_FALSE(BoundarySpec::open().is_periodic());
}

TEST_CASE("require_epsilon_valid rejects 2*eps >= period") {
    const DomainSpec domain = unit_periodic_1d();
    CHECK_NOTHROW(domain.require_epsilon_valid(0.49));
    CHECK_THROWS_AS(domain.require_epsilon_valid(0.5), std::invalid_argument);
    CHECK_THROWS_AS(domain.require_epsilon_valid(0.8), std::invalid_argument);
    CHECK_NOTHROW(DomainSpec::all_open(2).require_epsilon_valid(100.0));
}

TEST_CASE("wrap_points maps periodic coordinates into [lower, upper)") {
    const DomainSpec domain = unit_periodic_1d();
    CHECK(wrap_points(single({1.25}), domain).coord(0, 0) == doctest::Approx(0.25));
    CHECK(wrap_points(single({-0.1}), domain).coord(0, 0) == doctest::Approx(0.9));
    CHECK(wrap_points(single({-0.1}), DomainSpec::all_open(1)).coord(0, 0) == -0.1);
}

TEST_CASE("wrap_points leaves in-range coordinates bit-identical") {
    const DomainSpec domain = unit_periodic_1d();
    for (double x : {0.0, 0.3, 0.9999999}) {
        CHECK(wrap_points(single({x}), domain).coord(0, 0) == x);
    }
}

TEST_CASE("wrap_points stays inside the half-open interval at rounding edges") {
    const DomainSpec domain = unit_periodic_1d();
    // -1e-19 + 1.0 rounds to 1.0, which must not leak out as upper
    for (double x : {-1e-19, -1e-16, 1.0, 1.0 + 1e-16, -1.0}) {
        const double w = wrap_points(single({x}), domain).coord(0, 0);
        CHECK(w >= 0.0);
        CHECK(w < 1.0);
    }
    const DomainSpec shifted = DomainSpec::all_periodic(1, 0.1, 0.3);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int k = 0; k < 10000; ++k) {
        const double w = wrap_points(single({u(rng)}), shifted).coord(0, 0);
        CHECK(w >= 0.1);
        CHECK(w < 0.3);
    }
}

TEST_CASE("wrap_points rejects dimension mismatch") {
    CHECK_THROWS_AS(wrap_points(single({0.1, 0.2}), unit_periodic_1d()), std::invalid_argument);
}

TEST_CASE("min_image_distance picks the shorter way around") {
    const DomainSpec periodic = unit_periodic_1d();
    const DomainSpec open = DomainSpec::all_open(1);
    const double a[] = {0.05};
    const double b[] = {0.95};
    CHECK(min_image_distance(a, b, periodic) == doctest::Approx(0.10));
    CHECK(min_image_distance(a, b, open) == doctest::Approx(0.90));
}

TEST_CASE("min_image_distance mixes periodic and open dimensions") {
    DomainSpec domain;
    domain.dims = {BoundarySpec::periodic(0.0, 1.0), BoundarySpec::open()};
    const double a[] = {0.9, 0.1};
    const double b[] = {0.1, 0.2};
    CHECK(min_image_distance(a, b, domain) == doctest::Approx(std::sqrt(0.05)));
}

TEST_CASE("min_image_distance rejects shape mismatch") {
    const double a[] = {0.1};
    const double b[] = {0.1, 0.2};
    CHECK_THROWS_AS(min_image_distance(a, b, unit_periodic_1d()), std::invalid_argument);
}

TEST_CASE("metric properties on random wrapped points") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DomainSpec domain;
    domain.dims = {BoundarySpec::periodic(0.0, 1.0), BoundarySpec::open(),
                   BoundarySpec::periodic(-0.5, 0.5)};
    const DomainSpec all_open = DomainSpec::all_open(3);

    for (int k = 0; k < 2000; ++k) {
        PointSet pts(3);
        pts.add({u(rng), u(rng), u(rng) - 0.5});
        pts.add({u(rng), u(rng), u(rng) - 0.5});
        const auto a = pts.point(0);
        const auto b = pts.point(1);

        // symmetry
        CHECK(min_image_distance(a, b, domain) == min_image_distance(b, a, domain));

        // never longer than the plain Euclidean distance on wrapped coords
        CHECK(min_image_distance(a, b, domain) <= min_image_distance(a, b, all_open) + 1e-15);

        // each periodic contribution is at most half the period
        const double cap = std::sqrt(0.25 + min_image_distance(a, b, all_open) *
                                                min_image_distance(a, b, all_open) +
                                     0.25);
        CHECK(min_image_distance(a, b, domain) <= cap);

        // translation invariance up to rounding
        const double t[] = {u(rng) * 4 - 2, u(rng) * 4 - 2, u(rng) * 4 - 2};
        PointSet moved(3);
        moved.add({a[0] + t[0], a[1] + t[1], a[2] + t[2]});
        moved.add({b[0] + t[0], b[1] + t[1], b[2] + t[2]});
        PointSet rewrapped = wrap_points(moved, domain);
        // open dims shift both points identically, so only wrapped dims move
        const double before = min_image_distance(a, b, domain);
        const double after =
            min_image_distance(rewrapped.point(0), rewrapped.point(1), domain);
        CHECK(after == doctest::Approx(before).epsilon(1e-9));
    }
}

TEST_CASE("zero distance only for the same torus point") {
    const DomainSpec domain = unit_periodic_1d();
    const double a[] = {0.0};
    const double b[] = {0.5};
    CHECK(min_image_distance(a, a, domain) == 0.0);
    CHECK(min_image_distance(a, b, domain) > 0.0);
}

TEST_CASE("point set shape checks") {
    CHECK_THROWS_AS(PointSet(2, {1.0, 2.0, 3.0}), std::invalid_argument);
    PointSet p(2);
    CHECK_THROWS_AS(p.add({1.0}), std::invalid_argument);
    PointSet q(3);
    CHECK_THROWS_AS(p.append(q), std::invalid_argument);
    p.add({1.0, 2.0});
    CHECK(p.size() == 1);
    CHECK(p.point(0)[1] == 2.0);
}
