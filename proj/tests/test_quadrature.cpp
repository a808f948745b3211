#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hesc/errors.hpp"
#include "hesc/quadrature.hpp"

#include <cmath>
#include <limits>
#include <vector>

using namespace hesc;

TEST_CASE("polynomials are integrated to near machine precision") {
    QuadControl ctrl;
    auto r = integrate([](double x) { return x * x; }, 0.0, 1.0, ctrl);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(r.value - 1.0 / 3.0) <= r.error_estimate + 1e-13);

    // Degree 9 still lands inside the exact band of the 15-point rule.
    auto r9 = integrate([](double x) { return std::pow(x, 9) - 3.0 * x * x * x; },
                        -1.0, 2.0, ctrl);
    double exact = (std::pow(2.0, 10) - 1.0) / 10.0 - 3.0 * (16.0 - 1.0) / 4.0;
    CHECK(r9.value == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("classic smooth integrals") {
    QuadControl ctrl;
    auto s = integrate([](double x) { return std::sin(x); }, 0.0,
                       std::acos(-1.0), ctrl);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(s.converged);

    auto g = integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0, ctrl);
    CHECK(g.value == doctest::Approx(std::sqrt(std::acos(-1.0))).epsilon(1e-12));
}

TEST_CASE("integrable endpoint singularity converges under bisection") {
    QuadControl ctrl{1e-10, 0.0, 2000};
    auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, ctrl);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(r.evaluations > 15);  // must have subdivided
}

TEST_CASE("segmented integration captures a narrow spike") {
    // width 1e-4 Gaussian at x = 0.3; a single coarse panel would miss it,
    // the breakpoints pin it down.
    QuadControl ctrl{1e-10, 0.0, 2000};
    auto spike = [](double x) {
        double u = (x - 0.3) / 1e-4;
        return std::exp(-u * u);
    };
    std::vector<double> pts{0.0, 0.29, 0.31, 1.0};
    auto r = integrate_segmented(spike, pts, ctrl);
    double exact = 1e-4 * std::sqrt(std::acos(-1.0));  // tails beyond [0,1] ~ e^-1e7
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("interval budget exhaustion is reported, not hidden") {
    QuadControl ctrl{1e-14, 0.0, 4};
    auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, ctrl);
    CHECK_FALSE(r.converged);
    CHECK(std::isfinite(r.value));
    CHECK(r.error_estimate > 0.0);
}

TEST_CASE("non-finite integrand values throw") {
    QuadControl ctrl;
    CHECK_THROWS_AS(
        integrate([](double x) { return 1.0 / (x - 0.43); }, 0.0, 1.0, ctrl),
        ConvergenceError);
    CHECK_THROWS_AS(
        integrate([](double) { return std::numeric_limits<double>::quiet_NaN(); },
                  0.0, 1.0, ctrl),
        ConvergenceError);
}

TEST_CASE("segment list validation") {
    QuadControl ctrl;
    auto f = [](double x) { return x; };
    CHECK_THROWS_AS(integrate_segmented(f, {1.0}, ctrl), DomainError);
    CHECK_THROWS_AS(integrate_segmented(f, {0.0, 2.0, 1.0}, ctrl), DomainError);
}

TEST_CASE("degenerate and reversed intervals are rejected") {
    QuadControl ctrl;
    auto f = [](double x) { return std::exp(x); };
    CHECK_THROWS_AS(integrate(f, 0.7, 0.7, ctrl), DomainError);
    CHECK_THROWS_AS(integrate(f, 1.0, 0.0, ctrl), DomainError);
}

TEST_CASE("absolute tolerance floor is honoured") {
    // integrand is ~1e-30; with abs_tol 1e-20 one panel suffices.
    QuadControl ctrl{1e-10, 1e-20, 2000};
    auto r = integrate([](double x) { return 1e-30 * std::sin(1000.0 * x); }, 0.0,
                       1.0, ctrl);
    CHECK(r.converged);
    CHECK(std::abs(r.value) < 1e-20);
}
