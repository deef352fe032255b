#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

// Quadrature toolkit used by every numeric path of the engine:
//  - cached Gauss-Legendre rules (nodes computed by Newton iteration),
//  - an order-escalating GL rule for finite smooth integrands,
//  - a semi-infinite rule built from exponentially growing panels,
//    each panel integrated by the escalating rule. The semi-infinite
//    rule never evaluates the lower endpoint (GL nodes are interior),
//    which the reflection coefficients rely on at y = zeta.

namespace cge::quad {

struct GaussRule {
  int order = 0;
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

// Cached, thread-safe. Any order >= 1.
const GaussRule& gauss_legendre(int order);

struct Estimate {
  double value = 0.0;
  double abs_error = 0.0;  // estimate from the last refinement step
  long evals = 0;
  bool converged = true;
};

template <class F>
double fixed_gl(F&& f, double a, double b, int order) {
  const GaussRule& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < rule.order; ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

// Doubles the order until two successive results agree.
template <class F>
Estimate escalating_gl(F&& f, double a, double b, double rel_tol,
                       double abs_tol, int order0 = 8, int order_max = 2048) {
  Estimate est;
  double prev = fixed_gl(f, a, b, order0);
  est.evals += order0;
  for (int n = 2 * order0; n <= order_max; n *= 2) {
    const double cur = fixed_gl(f, a, b, n);
    est.evals += n;
    const double diff = std::fabs(cur - prev);
    est.value = cur;
    est.abs_error = diff;
    if (diff <= std::fmax(abs_tol, rel_tol * std::fabs(cur))) return est;
    prev = cur;
  }
  est.converged = false;
  return est;
}

struct PanelPolicy {
  double first_width = 1.0;
  double growth = 2.0;
  int max_panels = 64;
  int order0 = 8;
  int order_max = 2048;
};

// Integrates f over (0, inf) for integrands with (at least) exponential
// decay. Panels [0,w], [w,gw], [gw,g^2 w], ... are added until two
// consecutive panel contributions fall below the running tolerance.
template <class F>
Estimate semi_infinite(F&& f, double rel_tol, double abs_tol,
                       const PanelPolicy& policy = {}) {
  Estimate total;
  double lo = 0.0;
  double hi = policy.first_width;
  double prev_panel = 0.0;
  int small_streak = 0;
  for (int p = 0; p < policy.max_panels; ++p) {
    const double panel_abs =
        std::fmax(abs_tol, 0.1 * rel_tol * std::fabs(total.value));
    Estimate panel = escalating_gl(f, lo, hi, 0.5 * rel_tol, panel_abs,
                                   policy.order0, policy.order_max);
    total.value += panel.value;
    total.abs_error += panel.abs_error;
    total.evals += panel.evals;
    total.converged = total.converged && panel.converged;

    const double threshold =
        std::fmax(abs_tol, rel_tol * std::fabs(total.value));
    if (std::fabs(panel.value) < 0.5 * threshold) {
      if (++small_streak >= 2) {
        // geometric bound on the remaining tail
        double ratio = std::fabs(prev_panel) > 0.0
                           ? std::fabs(panel.value / prev_panel)
                           : 0.0;
        ratio = std::fmin(ratio, 0.75);
        total.abs_error += std::fabs(panel.value) * ratio / (1.0 - ratio);
        return total;
      }
    } else {
      small_streak = 0;
    }
    prev_panel = panel.value;
    lo = hi;
    hi *= policy.growth;
  }
  total.converged = false;
  return total;
}

}  // namespace cge::quad
