#include "cge/graphene.hpp"

#include <cmath>
#include <stdexcept>

#include "cge/quadrature.hpp"

namespace cge {

DimensionlessContext make_context(double separation_m, double temperature_K,
                                  const GrapheneSheet& sheet) {
  if (!(separation_m > 0.0))
    throw std::invalid_argument("make_context: separation must be > 0");
  if (temperature_K < 0.0)
    throw std::invalid_argument("make_context: temperature must be >= 0");
  if (sheet.delta_ev < 0.0)
    throw std::invalid_argument("make_context: mass gap must be >= 0");
  if (!(sheet.v_f_ratio > 0.0 && sheet.v_f_ratio < 1.0))
    throw std::invalid_argument("make_context: need 0 < vF/c < 1");
  DimensionlessContext ctx;
  ctx.separation_m = separation_m;
  ctx.temperature_K = temperature_K;
  ctx.tau = 4.0 * M_PI * separation_m * units::k_B * temperature_K /
            units::hbar_c;
  ctx.delta_tilde = ctx.to_dimensionless(sheet.delta_ev);
  return ctx;
}

double f_func(double zeta, double y, double v_f_ratio) {
  const double v2 = v_f_ratio * v_f_ratio;
  return std::sqrt(v2 * y * y + (1.0 - v2) * zeta * zeta);
}

double phi_func(double zeta, double y, double delta_tilde, double v_f_ratio) {
  const double f = f_func(zeta, y, v_f_ratio);
  if (f == 0.0 && delta_tilde == 0.0)
    throw std::domain_error("phi_func: degenerate point f = delta = 0");
  // gapless branch; arctan(f/(2 Dt)) loses all precision near Dt -> 0
  if (delta_tilde < 1e-12 * f) return M_PI * f;
  const double u = f / (2.0 * delta_tilde);
  if (u < 1e-2) {
    // 2f [ (4/3)u - (8/15)u^3 + (12/35)u^5 ] : the 4Dt - 4Dt cancellation
    // done analytically
    const double u2 = u * u;
    return 2.0 * f * u * (4.0 / 3.0 + u2 * (-8.0 / 15.0 + u2 * 12.0 / 35.0));
  }
  const double bracket = 1.0 - 4.0 * delta_tilde * delta_tilde / (f * f);
  return 4.0 * delta_tilde + 2.0 * f * bracket * std::atan(u);
}

PolarizationComponents polarization_nonzero(int l, const SpectralPoint& point,
                                            const DimensionlessContext& ctx,
                                            const GrapheneSheet& sheet) {
  if (l < 1)
    throw std::invalid_argument(
        "polarization_nonzero: l = 0 must use polarization_zero");
  (void)ctx;
  return graphene_detail::polarization_at(point.zeta, point.y,
                                          ctx.to_dimensionless(sheet.delta_ev),
                                          sheet.v_f_ratio);
}

PolarizationComponents polarization_zero(double y,
                                         const DimensionlessContext& ctx,
                                         const GrapheneSheet& sheet,
                                         double x_rel_tol) {
  if (!(ctx.tau > 0.0))
    throw std::domain_error(
        "polarization_zero: tau <= 0 (the T = 0 path never uses the "
        "zero-frequency tensor)");
  return graphene_detail::polarization_zero_at(
      y, ctx.tau, ctx.to_dimensionless(sheet.delta_ev), sheet.v_f_ratio,
      units::alpha_fs, x_rel_tol);
}

namespace graphene_detail {

double log_2cosh(double z) {
  // ln(2 cosh z) = |z| + ln(1 + e^{-2|z|}); pi theta/tau reaches 1e3
  const double az = std::fabs(z);
  return az + std::log1p(std::exp(-2.0 * az));
}

double theta_func(double x, double y, double delta_tilde, double v_f_ratio) {
  const double vy = v_f_ratio * y;
  return std::sqrt(delta_tilde * delta_tilde + x * (1.0 - x) * vy * vy);
}

PolarizationComponents polarization_at(double zeta, double y,
                                       double delta_tilde, double v_f_ratio,
                                       double alpha) {
  if (!(zeta > 0.0))
    throw std::domain_error("polarization_at: requires zeta > 0");
  const double f = f_func(zeta, y, v_f_ratio);
  const double phi = phi_func(zeta, y, delta_tilde, v_f_ratio);
  PolarizationComponents pol;
  pol.pi_combo = alpha * phi;
  pol.pi00 = alpha * (y * y - zeta * zeta) * phi / (f * f);
  return pol;
}

ZeroFreqIntegrals zero_freq_x_integrals(double y, double tau,
                                        double delta_tilde, double v_f_ratio,
                                        double rel_tol, bool folded) {
  ZeroFreqIntegrals result;
  const double pot = M_PI / tau;
  const bool gapless = delta_tilde == 0.0;

  // tanh(pi theta/tau)/theta with its theta -> 0 limit pi/tau; theta = 0
  // occurs only at the interval endpoints for a gapless sheet and the
  // quadrature nodes are interior, but the limit keeps the form exact.
  auto tanh_over_theta = [&](double theta) {
    const double z = pot * theta;
    if (z < 1e-8) return pot * (1.0 - z * z / 3.0);
    return std::tanh(z) / theta;
  };

  auto integrate = [&](auto&& g) {
    if (folded) {
      quad::Estimate est = quad::escalating_gl(g, 0.0, 0.5, rel_tol, 0.0,
                                               8, 4096);
      return 2.0 * est.value;
    }
    quad::Estimate est = quad::escalating_gl(g, 0.0, 1.0, rel_tol, 0.0,
                                             8, 4096);
    return est.value;
  };

  result.log_cosh = integrate([&](double x) {
    return log_2cosh(pot * theta_func(x, y, delta_tilde, v_f_ratio));
  });
  if (!gapless) {
    result.gap = integrate([&](double x) {
      return tanh_over_theta(theta_func(x, y, delta_tilde, v_f_ratio));
    });
  }
  if (y != 0.0) {
    result.transverse = integrate([&](double x) {
      return x * (1.0 - x) *
             tanh_over_theta(theta_func(x, y, delta_tilde, v_f_ratio));
    });
  }
  return result;
}

PolarizationComponents polarization_zero_at(double y, double tau,
                                            double delta_tilde,
                                            double v_f_ratio, double alpha,
                                            double x_rel_tol) {
  const ZeroFreqIntegrals ints =
      zero_freq_x_integrals(y, tau, delta_tilde, v_f_ratio, x_rel_tol);
  const double v2 = v_f_ratio * v_f_ratio;
  PolarizationComponents pol;
  pol.pi00 = 8.0 * alpha / v2 *
             (tau / M_PI * ints.log_cosh -
              delta_tilde * delta_tilde * ints.gap);
  pol.pi_combo = 8.0 * alpha * v2 * y * y * ints.transverse;
  return pol;
}

}  // namespace graphene_detail

}  // namespace cge
