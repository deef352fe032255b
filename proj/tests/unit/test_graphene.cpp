#include <cmath>
#include <random>
#include <stdexcept>

#include "cge/graphene.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cge;
using namespace cge::graphene_detail;

namespace {
constexpr double kVf = 0.003;
}

TEST_CASE("context carries the exact dimensionless parameters") {
  GrapheneSheet sheet;
  sheet.delta_ev = 0.05;
  const DimensionlessContext ctx = make_context(1e-6, 300.0, sheet);
  CHECK(ctx.tau == doctest::Approx(4.0 * M_PI * 1e-6 * units::k_B * 300.0 /
                                   units::hbar_c)
                       .epsilon(1e-15));
  CHECK(ctx.delta_tilde ==
        doctest::Approx(2.0 * 1e-6 * 0.05 * units::eV / units::hbar_c)
            .epsilon(1e-15));
  CHECK(ctx.to_ev(ctx.to_dimensionless(0.05)) ==
        doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("f function") {
  CHECK(f_func(0.0, 1.0, kVf) == doctest::Approx(kVf).epsilon(1e-15));
  CHECK(f_func(2.0, 2.0, 0.42) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f_func(1.0, 2.0, kVf) ==
        doctest::Approx(std::sqrt(kVf * kVf * 4.0 +
                                  (1.0 - kVf * kVf) * 1.0))
            .epsilon(1e-15));
  // bounded between vF y and y
  CHECK(f_func(0.7, 1.9, kVf) >= kVf * 1.9);
  CHECK(f_func(0.7, 1.9, kVf) <= 1.9);
}

TEST_CASE("phi function: gapless limit, bracket zero, strong-gap asymptote") {
  for (double zeta : {1e-3, 0.3, 2.0}) {
    for (double y : {0.5, 1.0, 10.0}) {
      if (y < zeta) continue;
      const double f = f_func(zeta, y, kVf);
      CHECK(phi_func(zeta, y, 0.0, kVf) ==
            doctest::Approx(M_PI * f).epsilon(1e-12));
      // bracket [1 - 4 Dt^2/f^2] vanishes at Dt = f/2
      CHECK(phi_func(zeta, y, 0.5 * f, kVf) ==
            doctest::Approx(2.0 * f).epsilon(1e-12));
    }
  }
  // Phi * Dt / f^2 -> 4/3 when the gap dominates
  const double f = f_func(1.0, 2.0, kVf);
  for (double ratio : {1e2, 1e3}) {
    const double dt = ratio * f;
    CHECK(phi_func(1.0, 2.0, dt, kVf) * dt / (f * f) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-3));
  }
  CHECK_THROWS_AS(phi_func(0.0, 0.0, 0.0, kVf), std::domain_error);
  // smooth through the series/arctan switch at f = 0.02 Dt
  const double dt = 1.0;
  const double below = phi_func(0.0, 0.0199 / kVf, dt, kVf);
  const double above = phi_func(0.0, 0.0201 / kVf, dt, kVf);
  const double scale = std::pow(0.0201 / 0.0199, 2);  // ~ f^2 growth
  CHECK(above / below == doctest::Approx(scale).epsilon(1e-4));
}

TEST_CASE("nonzero-frequency components") {
  const DimensionlessContext ctx = make_context(1e-6, 300.0);
  GrapheneSheet sheet;  // pristine
  sheet.v_f_ratio = kVf;

  // y = zeta kills pi00, not the combo
  const double z = 2.0;
  PolarizationComponents edge =
      polarization_nonzero(1, {z, z}, ctx, sheet);
  CHECK(edge.pi00 == 0.0);
  CHECK(edge.pi_combo ==
        doctest::Approx(units::alpha_fs * M_PI * f_func(z, z, kVf))
            .epsilon(1e-12));

  // hand evaluation chaining f and phi at (zeta=0.1, y=1)
  PolarizationComponents pol =
      polarization_nonzero(1, {0.1, 1.0}, ctx, sheet);
  const double f = std::sqrt(9e-6 + (1.0 - 9e-6) * 0.01);
  CHECK(pol.pi00 ==
        doctest::Approx(units::alpha_fs * M_PI * 0.99 / f).epsilon(1e-12));
  CHECK(pol.pi00 / units::alpha_fs == doctest::Approx(31.088).epsilon(1e-4));

  // algebraic identity of the two components
  for (double zeta : {0.1, 0.9}) {
    for (double y : {1.3, 4.0}) {
      PolarizationComponents p = polarization_nonzero(3, {zeta, y}, ctx, sheet);
      CHECK(p.pi_combo / p.pi00 ==
            doctest::Approx(std::pow(f_func(zeta, y, kVf), 2) /
                            (y * y - zeta * zeta))
                .epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(polarization_nonzero(0, {0.1, 1.0}, ctx, sheet),
                  std::invalid_argument);
}

TEST_CASE("zero-frequency components: limits and guards") {
  GrapheneSheet sheet;
  sheet.v_f_ratio = kVf;
  const DimensionlessContext ctx = make_context(1e-7, 300.0, sheet);

  // y -> 0 with no gap: pi00 -> 8 alpha ln2 tau / (pi vF^2), combo -> 0
  PolarizationComponents small = polarization_zero(1e-6, ctx, sheet);
  CHECK(small.pi00 == doctest::Approx(8.0 * units::alpha_fs * std::log(2.0) *
                                      ctx.tau / (M_PI * kVf * kVf))
                          .epsilon(1e-9));
  CHECK(small.pi_combo >= 0.0);
  CHECK(small.pi_combo < 1e-15);  // killed by the y^2 prefactor

  DimensionlessContext bad = ctx;
  bad.tau = 0.0;
  CHECK_THROWS_AS(polarization_zero(1.0, bad, sheet), std::domain_error);
}

TEST_CASE("theta fold symmetry: folded and unfolded integrals agree") {
  for (double y : {0.5, 5.0, 40.0}) {
    for (double dt : {0.0, 0.2, 2.0}) {
      const double theta_left = theta_func(0.3, y, dt, kVf);
      const double theta_right = theta_func(0.7, y, dt, kVf);
      CHECK(theta_left == doctest::Approx(theta_right).epsilon(1e-15));
      ZeroFreqIntegrals folded =
          zero_freq_x_integrals(y, 0.5, dt, kVf, 1e-13, true);
      ZeroFreqIntegrals unfolded =
          zero_freq_x_integrals(y, 0.5, dt, kVf, 1e-13, false);
      CHECK(folded.log_cosh ==
            doctest::Approx(unfolded.log_cosh).epsilon(1e-12));
      if (dt > 0.0)
        CHECK(folded.gap == doctest::Approx(unfolded.gap).epsilon(1e-12));
      CHECK(folded.transverse ==
            doctest::Approx(unfolded.transverse).epsilon(1e-12));
    }
  }
}

TEST_CASE("x-integrals against an independent adaptive integrator") {
  // brute-force oracle on the unfolded interval with the analytic
  // limiting value substituted where theta -> 0
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> uy(0.05, 30.0);
  std::uniform_real_distribution<double> utau(0.1, 10.0);
  std::uniform_real_distribution<double> udt(0.0, 5.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double y = uy(rng);
    const double tau = utau(rng);
    const double dt = (trial % 2) ? udt(rng) : 0.0;
    const double pot = M_PI / tau;
    auto theta = [&](double x) { return theta_func(x, y, dt, kVf); };
    const double i1 = oracles::adaptive_simpson(
        [&](double x) {
          const double z = pot * theta(x);
          return z > 350.0 ? z : std::log(2.0 * std::cosh(z));
        },
        0.0, 1.0, 1e-14);
    const double i3 = oracles::adaptive_simpson(
        [&](double x) {
          const double th = theta(x);
          const double t = th < 1e-12 ? pot : std::tanh(pot * th) / th;
          return x * (1.0 - x) * t;
        },
        0.0, 1.0, 1e-14);
    ZeroFreqIntegrals ints = zero_freq_x_integrals(y, tau, dt, kVf, 1e-11);
    CHECK(ints.log_cosh == doctest::Approx(i1).epsilon(1e-9));
    CHECK(ints.transverse == doctest::Approx(i3).epsilon(1e-9));
    if (dt > 0.0) {
      const double i2 = oracles::adaptive_simpson(
          [&](double x) {
            const double th = theta(x);
            return th < 1e-12 ? pot : std::tanh(pot * th) / th;
          },
          0.0, 1.0, 1e-14);
      CHECK(ints.gap == doctest::Approx(i2).epsilon(1e-9));
    }
  }
}

TEST_CASE("continuity seam: nonzero-frequency form at zeta->0 meets the "
          "tau->0 limit of the zero-frequency form") {
  for (double y : {5.0, 10.0}) {
    PolarizationComponents nz = polarization_at(1e-8, y, 0.0, kVf);
    PolarizationComponents z =
        polarization_zero_at(y, 1e-4, 0.0, kVf, units::alpha_fs, 1e-11);
    CHECK(z.pi00 == doctest::Approx(nz.pi00).epsilon(1e-6));
    CHECK(z.pi_combo == doctest::Approx(nz.pi_combo).epsilon(1e-6));
  }
}

TEST_CASE("both components scale linearly in alpha") {
  PolarizationComponents one = polarization_at(0.4, 1.7, 0.1, kVf, 1.0);
  PolarizationComponents two = polarization_at(0.4, 1.7, 0.1, kVf, 2.0);
  CHECK(two.pi00 == doctest::Approx(2.0 * one.pi00).epsilon(1e-15));
  CHECK(two.pi_combo == doctest::Approx(2.0 * one.pi_combo).epsilon(1e-15));
  PolarizationComponents z1 =
      polarization_zero_at(1.3, 0.5, 0.0, kVf, 1.0, 1e-10);
  PolarizationComponents z2 =
      polarization_zero_at(1.3, 0.5, 0.0, kVf, 2.0, 1e-10);
  CHECK(z2.pi00 == doctest::Approx(2.0 * z1.pi00).epsilon(1e-15));
  CHECK(z2.pi_combo == doctest::Approx(2.0 * z1.pi_combo).epsilon(1e-15));
}

TEST_CASE("components grow monotonically in y for a gapless sheet") {
  const DimensionlessContext ctx = make_context(2e-7, 300.0);
  GrapheneSheet sheet;
  sheet.v_f_ratio = kVf;
  double prev00 = -1.0, prev_combo = -1.0;
  for (double y = 0.3; y < 30.0; y *= 1.7) {
    PolarizationComponents nz = polarization_nonzero(1, {0.2, y}, ctx, sheet);
    CHECK(nz.pi00 > prev00);
    CHECK(nz.pi_combo > prev_combo);
    prev00 = nz.pi00;
    prev_combo = nz.pi_combo;
  }
  prev00 = -1.0;
  prev_combo = -1.0;
  for (double y = 0.3; y < 30.0; y *= 1.7) {
    PolarizationComponents z = polarization_zero(y, ctx, sheet);
    CHECK(z.pi00 > prev00);
    CHECK(z.pi_combo > prev_combo);
    prev00 = z.pi00;
    prev_combo = z.pi_combo;
  }
}
