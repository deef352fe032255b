#include "cge/reflection.hpp"

#include <cmath>
#include <stdexcept>

namespace cge {

double k_n(const SpectralPoint& point, double eps) {
  return std::sqrt(point.y * point.y +
                   (eps - 1.0) * point.zeta * point.zeta);
}

double k_of(const SpectralPoint& point, const HalfSpaceResponse& resp) {
  switch (resp.kind) {
    case HalfSpaceResponse::Kind::finite:
      return k_n(point, resp.eps);
    case HalfSpaceResponse::Kind::drude_zero:
      // (eps - 1) zeta^2 -> wp^2 zeta/(zeta + gamma) -> 0
      return point.y;
    case HalfSpaceResponse::Kind::plasma_zero:
      // (eps - 1) zeta^2 -> wp^2
      return std::sqrt(point.y * point.y +
                       resp.omega_p_tilde * resp.omega_p_tilde);
    case HalfSpaceResponse::Kind::ideal:
      break;
  }
  throw std::logic_error("k_of: ideal metal has no wave number");
}

ReflectionPair r_bare(const SpectralPoint& point, double eps) {
  const double k = k_n(point, eps);
  const double y = point.y;
  return {(eps * y - k) / (eps * y + k), (y - k) / (y + k)};
}

ReflectionPair r_bare(const SpectralPoint& point,
                      const HalfSpaceResponse& resp) {
  switch (resp.kind) {
    case HalfSpaceResponse::Kind::finite:
      return r_bare(point, resp.eps);
    case HalfSpaceResponse::Kind::drude_zero:
      return {1.0, 0.0};
    case HalfSpaceResponse::Kind::plasma_zero: {
      const double k = k_of(point, resp);
      return {1.0, (point.y - k) / (point.y + k)};
    }
    case HalfSpaceResponse::Kind::ideal:
      return {1.0, -1.0};
  }
  return {};
}

namespace {

// y Pi00 / (y^2 - zeta^2), with the analytic zeta = 0 limit Pi00/y. The
// quadrature rules are open, so y = zeta is reachable only through a
// direct API call, which is rejected.
double tm_sheet_term(const SpectralPoint& point,
                     const PolarizationComponents& pol) {
  if (point.zeta == 0.0) {
    if (point.y == 0.0)
      throw std::domain_error("r_graphene_coated: y = 0 at zero frequency");
    return pol.pi00 / point.y;
  }
  const double denom = point.y * point.y - point.zeta * point.zeta;
  if (denom <= 0.0)
    throw std::domain_error(
        "r_graphene_coated: y = zeta is the singular integration endpoint");
  return point.y * pol.pi00 / denom;
}

ReflectionPair coated_from_parts(double y, double eps_times_y, double k,
                                 double sheet_tm, double sheet_te) {
  ReflectionPair r;
  r.tm = (eps_times_y + k * (sheet_tm - 1.0)) /
         (eps_times_y + k * (sheet_tm + 1.0));
  r.te = (y - k - sheet_te) / (y + k + sheet_te);
  return r;
}

}  // namespace

ReflectionPair r_graphene_coated(const SpectralPoint& point, double eps,
                                 const PolarizationComponents& pol) {
  const double k = k_n(point, eps);
  return coated_from_parts(point.y, eps * point.y, k,
                           tm_sheet_term(point, pol), pol.pi_combo);
}

ReflectionPair r_graphene_coated(const SpectralPoint& point,
                                 const HalfSpaceResponse& resp,
                                 const PolarizationComponents& pol) {
  switch (resp.kind) {
    case HalfSpaceResponse::Kind::finite:
      return r_graphene_coated(point, resp.eps, pol);
    case HalfSpaceResponse::Kind::drude_zero:
    case HalfSpaceResponse::Kind::plasma_zero: {
      // eps y dominates every finite term: TM -> 1, TE keeps the sheet.
      const double k = k_of(point, resp);
      return {1.0,
              (point.y - k - pol.pi_combo) / (point.y + k + pol.pi_combo)};
    }
    case HalfSpaceResponse::Kind::ideal:
      // eps -> infinity pins TM at 1; k -> infinity swamps the sheet in TE
      return {1.0, -1.0};
  }
  return {};
}

ReflectionPair r_fresnel_interface(const SpectralPoint& point, double eps_f,
                                   double eps_s) {
  const double kf = k_n(point, eps_f);
  const double ks = k_n(point, eps_s);
  return {(eps_s * kf - eps_f * ks) / (eps_s * kf + eps_f * ks),
          (kf - ks) / (kf + ks)};
}

ReflectionPair r_fresnel_interface(const SpectralPoint& point,
                                   const HalfSpaceResponse& film,
                                   const HalfSpaceResponse& substrate) {
  if (film.kind != HalfSpaceResponse::Kind::finite)
    throw std::invalid_argument("r_fresnel_interface: film must be finite");
  switch (substrate.kind) {
    case HalfSpaceResponse::Kind::finite:
      return r_fresnel_interface(point, film.eps, substrate.eps);
    case HalfSpaceResponse::Kind::drude_zero:
      // eps_s -> infinity with k_s -> y = k_f
      return {1.0, 0.0};
    case HalfSpaceResponse::Kind::plasma_zero: {
      const double kf = k_of(point, film);
      const double ks = k_of(point, substrate);
      return {1.0, (kf - ks) / (kf + ks)};
    }
    case HalfSpaceResponse::Kind::ideal:
      return {1.0, -1.0};
  }
  return {};
}

ReflectionPair two_layer_combine(const ReflectionPair& top,
                                 const ReflectionPair& interface,
                                 double damping) {
  ReflectionPair r;
  r.tm = (top.tm + interface.tm * damping) /
         (1.0 + top.tm * interface.tm * damping);
  r.te = (top.te + interface.te * damping) /
         (1.0 + top.te * interface.te * damping);
  return r;
}

PreparedStack prepare_stack(const PlateStack& stack,
                            const DimensionlessContext& ctx, double zeta) {
  PreparedStack side;
  side.zero_mode = (zeta == 0.0);
  side.coating = stack.coating;

  auto resolve = [&](const MaterialModel& m) -> HalfSpaceResponse {
    if (m.is_ideal()) return HalfSpaceResponse::ideal();
    if (!side.zero_mode)
      return HalfSpaceResponse::finite_eps(m.eps(ctx.to_ev(zeta)));
    const ZeroFrequencyClass& z = m.zero_class();
    switch (z.kind) {
      case ZeroFrequencyClass::Kind::finite_static:
        return HalfSpaceResponse::finite_eps(z.eps0);
      case ZeroFrequencyClass::Kind::drude_like:
        return HalfSpaceResponse::drude_zero_freq();
      case ZeroFrequencyClass::Kind::plasma_like:
        return HalfSpaceResponse::plasma_zero_freq(
            ctx.to_dimensionless(z.omega_p_ev));
    }
    return HalfSpaceResponse::finite_eps(1.0);
  };

  side.substrate = resolve(stack.substrate);
  if (stack.film) {
    if (!(stack.film->thickness_m > 0.0))
      throw std::invalid_argument("PlateStack: film thickness must be > 0");
    side.film = resolve(stack.film->material);
    side.d_over_a = stack.film->thickness_m / ctx.separation_m;
  }
  return side;
}

ReflectionPair reflect(const SpectralPoint& point, const PreparedStack& side,
                       const DimensionlessContext& ctx, double pol_rel_tol) {
  PolarizationComponents pol;
  if (side.coating) {
    pol = side.zero_mode
              ? polarization_zero(point.y, ctx, *side.coating, pol_rel_tol)
              : graphene_detail::polarization_at(
                    point.zeta, point.y,
                    ctx.to_dimensionless(side.coating->delta_ev),
                    side.coating->v_f_ratio);
  }

  if (!side.film) {
    return side.coating ? r_graphene_coated(point, side.substrate, pol)
                        : r_bare(point, side.substrate);
  }

  const ReflectionPair top = side.coating
                                 ? r_graphene_coated(point, *side.film, pol)
                                 : r_bare(point, *side.film);
  const ReflectionPair interface =
      r_fresnel_interface(point, *side.film, side.substrate);
  const double damping = std::exp(-side.d_over_a * k_of(point, *side.film));
  return two_layer_combine(top, interface, damping);
}

ReflectionPair r_stack(const SpectralPoint& point, const PlateStack& stack,
                       const DimensionlessContext& ctx, double pol_rel_tol) {
  return reflect(point, prepare_stack(stack, ctx, point.zeta), ctx,
                 pol_rel_tol);
}

}  // namespace cge
