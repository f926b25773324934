#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vlcsec/error.hpp"
#include "vlcsec/quadrature.hpp"

using namespace vlcsec;

TEST_CASE("polynomials are exact") {
  const auto r = quad::integrate([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 2.0);
  CHECK(r.value == doctest::Approx(3.75).epsilon(1e-15));
  CHECK(r.converged);
}

TEST_CASE("smooth transcendental integrands") {
  const quad::Options opt{.abs_tol = 0.0, .rel_tol = 1e-13, .max_intervals = 500};
  CHECK(quad::integrate([](double x) { return std::exp(-x * x); }, 0.0, 6.0, opt).value ==
        doctest::Approx(std::sqrt(std::numbers::pi) / 2.0 * std::erf(6.0)).epsilon(1e-13));
  CHECK(quad::integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, opt).value ==
        doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-13));
}

TEST_CASE("endpoint singularity is handled by bisection") {
  const quad::Options opt{.abs_tol = 0.0, .rel_tol = 1e-10, .max_intervals = 2000};
  const auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("reversed limits flip the sign") {
  auto f = [](double x) { return std::sin(x); };
  const double fwd = quad::integrate(f, 0.0, 2.0).value;
  const double rev = quad::integrate(f, 2.0, 0.0).value;
  CHECK(rev == doctest::Approx(-fwd).epsilon(1e-14));
}

TEST_CASE("an error floor set by rounding still counts as converged") {
  // Large cancelling values: the panel error estimates cannot drop below a few ulps.
  auto f = [](double x) { return 1e12 * std::cos(x); };
  const quad::Options opt{.abs_tol = 0.0, .rel_tol = 1e-17, .max_intervals = 200};
  const auto r = quad::try_integrate(f, 0.0, std::numbers::pi / 2.0, opt);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1e12).epsilon(1e-14));
}

TEST_CASE("budget exhaustion raises NumericError") {
  const quad::Options opt{.abs_tol = 0.0, .rel_tol = 1e-14, .max_intervals = 3};
  auto f = [](double x) { return std::sin(1.0 / x); };
  CHECK_THROWS_AS(quad::integrate(f, 1e-4, 1.0, opt), NumericError);
}
