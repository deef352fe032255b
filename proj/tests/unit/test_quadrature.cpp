#include <cmath>

#include "cge/quadrature.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cge;

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  // order n is exact through degree 2n-1
  auto poly = [](double x) { return ((3.0 * x - 1.0) * x + 2.0) * x * x; };
  const double exact = 6.0 / 5.0 + 4.0 / 3.0;  // odd term cancels on [-1,1]
  for (int n : {4, 8, 16}) {
    CHECK(quad::fixed_gl(poly, -1.0, 1.0, n) ==
          doctest::Approx(exact).epsilon(1e-14));
  }
  // weights sum to the interval length
  const auto& rule = quad::gauss_legendre(64);
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("escalating rule reaches the requested tolerance") {
  auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  const quad::Estimate est = quad::escalating_gl(f, 0.0, 5.0, 1e-12, 0.0);
  const double oracle = oracles::adaptive_simpson(f, 0.0, 5.0, 1e-14);
  CHECK(est.converged);
  CHECK(est.value == doctest::Approx(oracle).epsilon(1e-11));
}

TEST_CASE("semi-infinite panels reproduce Bose-type integrals") {
  const double zeta3 = 1.2020569031595943;
  auto f2 = [](double y) { return y * y / std::expm1(y); };
  auto f3 = [](double y) { return y * y * y / std::expm1(y); };
  quad::Estimate i2 = quad::semi_infinite(f2, 1e-10, 1e-300);
  quad::Estimate i3 = quad::semi_infinite(f3, 1e-10, 1e-300);
  CHECK(i2.converged);
  CHECK(i2.value == doctest::Approx(2.0 * zeta3).epsilon(1e-9));
  CHECK(i3.value ==
        doctest::Approx(std::pow(M_PI, 4) / 15.0).epsilon(1e-9));
}

TEST_CASE("semi-infinite rule terminates on identically zero integrands") {
  quad::Estimate est =
      quad::semi_infinite([](double) { return 0.0; }, 1e-8, 1e-30);
  CHECK(est.converged);
  CHECK(est.value == 0.0);
  CHECK(est.evals < 2000);
}

TEST_CASE("semi-infinite error estimate is honest vs an independent oracle") {
  auto f = [](double y) {
    return y * y * std::exp(-y) / (1.0 + 0.25 * std::sin(y));
  };
  quad::Estimate est = quad::semi_infinite(f, 1e-9, 1e-300);
  const double oracle = oracles::adaptive_simpson(f, 1e-12, 60.0, 1e-14);
  CHECK(std::fabs(est.value - oracle) <=
        std::fmax(1e-9 * std::fabs(oracle), 10.0 * est.abs_error));
}
