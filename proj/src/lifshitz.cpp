#include "cge/lifshitz.hpp"

#include <cmath>
#include <stdexcept>

namespace cge {

namespace {

// r1 r2 / (e^y - r1 r2), written with expm1 so the metallic y -> 0 region
// (product -> 1) keeps full precision: e^y - p = expm1(y) + (1 - p).
double mode_sum_term(double product, double y) {
  const double denom = std::expm1(y) + (1.0 - product);
  if (denom <= 0.0)
    throw std::logic_error(
        "lifshitz integrand: e^y - r1 r2 <= 0 (mode singularity; |r| <= 1 "
        "should make this unreachable)");
  return product / denom;
}

struct PreparedPair {
  DimensionlessContext ctx;
  PreparedStack side1;
  PreparedStack side2;
  double pol_rel_tol = 1e-9;
};

PreparedPair prepare_pair(const Scenario& sc, const DimensionlessContext& ctx,
                          double zeta, const QuadratureConfig& cfg) {
  PreparedPair pair;
  pair.ctx = ctx;
  pair.side1 = prepare_stack(sc.side1, ctx, zeta);
  pair.side2 = prepare_stack(sc.side2, ctx, zeta);
  pair.pol_rel_tol = cfg.pol_rel_tol;
  return pair;
}

double integrand_prepared(const SpectralPoint& pt, const PreparedPair& pair) {
  const ReflectionPair r1 = reflect(pt, pair.side1, pair.ctx,
                                    pair.pol_rel_tol);
  const ReflectionPair r2 = reflect(pt, pair.side2, pair.ctx,
                                    pair.pol_rel_tol);
  return pt.y * pt.y * (mode_sum_term(r1.tm * r2.tm, pt.y) +
                        mode_sum_term(r1.te * r2.te, pt.y));
}

quad::PanelPolicy panel_policy(const QuadratureConfig& cfg) {
  quad::PanelPolicy p;
  p.first_width = cfg.panel_width;
  p.growth = cfg.panel_growth;
  p.max_panels = cfg.max_panels;
  p.order0 = cfg.gl_order_min;
  p.order_max = cfg.gl_order_max;
  return p;
}

// Int_{zeta}^inf y^2 [...] dy after the substitution y = zeta + t; the
// open panel rule never evaluates t = 0.
quad::Estimate y_integral(const PreparedPair& pair, double zeta,
                          double rel_tol, double abs_tol,
                          const QuadratureConfig& cfg) {
  auto f = [&](double t) {
    return integrand_prepared({zeta, zeta + t}, pair);
  };
  return quad::semi_infinite(f, rel_tol, abs_tol, panel_policy(cfg));
}

void validate_scenario(const Scenario& sc) {
  if (!(sc.separation_m > 0.0))
    throw std::invalid_argument("Scenario: separation must be > 0");
  if (sc.temperature_K < 0.0)
    throw std::invalid_argument("Scenario: temperature must be >= 0");
}

}  // namespace

double lifshitz_integrand(const SpectralPoint& point, const Scenario& scenario,
                          const QuadratureConfig& cfg) {
  validate_scenario(scenario);
  const DimensionlessContext ctx =
      make_context(scenario.separation_m, scenario.temperature_K);
  return integrand_prepared(
      point, prepare_pair(scenario, ctx, point.zeta, cfg));
}

double matsubara_term(int l, const Scenario& scenario,
                      const QuadratureConfig& cfg) {
  validate_scenario(scenario);
  if (l < 0) throw std::invalid_argument("matsubara_term: l >= 0");
  if (!(scenario.temperature_K > 0.0))
    throw std::invalid_argument("matsubara_term: requires T > 0");
  const DimensionlessContext ctx =
      make_context(scenario.separation_m, scenario.temperature_K);
  const double zeta_l = ctx.tau * l;
  const PreparedPair pair = prepare_pair(scenario, ctx, zeta_l, cfg);
  const double a = scenario.separation_m;
  const double coeff = -units::k_B * scenario.temperature_K /
                       (8.0 * M_PI * a * a * a);
  const double weight = (l == 0) ? 0.5 : 1.0;
  const quad::Estimate I =
      y_integral(pair, zeta_l, 0.3 * cfg.rel_tol,
                 cfg.abs_tol_pa / std::fabs(coeff), cfg);
  return coeff * weight * I.value;
}

PressureResult pressure(const Scenario& scenario, const QuadratureConfig& cfg) {
  validate_scenario(scenario);
  if (!(scenario.temperature_K > 0.0))
    throw std::invalid_argument(
        "pressure: requires T > 0; use pressure_T0 for zero temperature");
  const DimensionlessContext ctx =
      make_context(scenario.separation_m, scenario.temperature_K);
  const double a = scenario.separation_m;
  const double coeff = -units::k_B * scenario.temperature_K /
                       (8.0 * M_PI * a * a * a);
  const double integral_abs_tol = cfg.abs_tol_pa / std::fabs(coeff);

  PressureResult result;
  double sum = 0.0;
  double quad_error = 0.0;
  double prev_term = 0.0;
  int small_streak = 0;

  for (int l = 0; l <= cfg.max_matsubara; ++l) {
    const double zeta_l = ctx.tau * l;
    const PreparedPair pair = prepare_pair(scenario, ctx, zeta_l, cfg);
    const quad::Estimate I =
        y_integral(pair, zeta_l, 0.3 * cfg.rel_tol, integral_abs_tol, cfg);
    const double weight = (l == 0) ? 0.5 : 1.0;
    const double term = coeff * weight * I.value;
    sum += term;
    quad_error += std::fabs(coeff) * weight * I.abs_error;
    result.matsubara_terms = l + 1;
    if (!I.converged) result.converged = false;
    if (cfg.keep_trace) result.trace.push_back({l, zeta_l, term});

    if (l >= 1) {
      // geometric tail bound from the last decay ratio; the rule fires
      // once three consecutive terms keep the projected tail below
      // tolerance, then the tail estimate is added to the sum.
      double ratio = 0.0;
      if (std::fabs(prev_term) > 0.0)
        ratio = std::fmin(std::fabs(term / prev_term), 0.999);
      const double tail = std::fabs(term) * ratio / (1.0 - ratio);
      const double threshold =
          std::fmax(0.3 * cfg.rel_tol * std::fabs(sum), cfg.abs_tol_pa);
      if (tail <= threshold) {
        if (++small_streak >= 3) {
          const double signed_tail =
              term * ratio / (1.0 - ratio);
          result.pressure_pa = sum + signed_tail;
          result.estimated_error_pa =
              quad_error + 0.5 * std::fabs(signed_tail) + cfg.abs_tol_pa;
          return result;
        }
      } else {
        small_streak = 0;
      }
    }
    prev_term = term;
  }

  result.converged = false;
  result.pressure_pa = sum;
  result.estimated_error_pa =
      quad_error + std::fabs(prev_term) + cfg.abs_tol_pa;
  return result;
}

PressureResult pressure_T0(const Scenario& scenario,
                           const QuadratureConfig& cfg) {
  validate_scenario(scenario);
  const DimensionlessContext ctx = make_context(scenario.separation_m, 0.0);
  const double a = scenario.separation_m;
  const double pref =
      -units::hbar_c / (32.0 * M_PI * M_PI * a * a * a * a);
  const double abs_tol = cfg.abs_tol_pa / std::fabs(pref);

  double inner_error = 0.0;
  auto outer = [&](double zeta) {
    const PreparedPair pair = prepare_pair(scenario, ctx, zeta, cfg);
    const quad::Estimate I =
        y_integral(pair, zeta, 0.1 * cfg.rel_tol, 0.1 * abs_tol, cfg);
    inner_error = std::fmax(inner_error, I.abs_error);
    return I.value;
  };
  const quad::Estimate outer_est =
      quad::semi_infinite(outer, 0.3 * cfg.rel_tol, abs_tol,
                          panel_policy(cfg));

  PressureResult result;
  result.pressure_pa = pref * outer_est.value;
  result.estimated_error_pa =
      std::fabs(pref) * outer_est.abs_error +
      0.3 * cfg.rel_tol * std::fabs(result.pressure_pa) + cfg.abs_tol_pa;
  result.converged = outer_est.converged;
  return result;
}

}  // namespace cge
