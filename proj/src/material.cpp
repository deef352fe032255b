#include "cge/material.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "cge/quadrature.hpp"

namespace cge {

namespace {

void require_positive_xi(double xi_ev, const char* who) {
  if (!(xi_ev > 0.0))
    throw std::domain_error(std::string(who) +
                            ": xi <= 0; zero frequency must go through the "
                            "ZeroFrequencyClass path");
}

// Int_0^W  w ImepsDrude(w) / (w^2+xi^2) dw  with
// ImepsDrude = wp^2 g / (w (w^2+g^2)), evaluated in closed form.
double drude_segment(double upper_ev, double xi, double wp, double g) {
  if (g <= 0.0) return 0.0;
  const double W = upper_ev;
  if (std::fabs(xi - g) < 1e-8 * g) {
    // confluent case: wp^2 g Int dw/(w^2+g^2)^2
    const double I = (W / (W * W + g * g) + std::atan(W / g) / g) /
                     (2.0 * g * g);
    return wp * wp * g * I;
  }
  const double I =
      (std::atan(W / g) / g - std::atan(W / xi) / xi) / (xi * xi - g * g);
  return wp * wp * g * I;
}

// Int_W^inf  w (B/w^3) / (w^2+xi^2) dw  for the w^-3 high-frequency tail.
double tail_segment(double lower_ev, double B, double xi) {
  const double W = lower_ev;
  const double r = xi / W;
  if (r < 0.1) {
    // series in (xi/W)^2 avoids the 1/W cancellation
    const double r2 = r * r;
    double sum = 0.0, pow = 1.0;
    for (int k = 0; k < 8; ++k) {
      sum += (k % 2 == 0 ? 1.0 : -1.0) * pow / (2.0 * k + 3.0);
      pow *= r2;
    }
    return B / (W * W * W) * sum;
  }
  return B / (xi * xi) * (1.0 / W - std::atan(r) / xi);
}

// Piecewise power-law interpolant of Im eps between table nodes.
struct SegmentInterp {
  double w0, i0, p;  // Im eps(w) = i0 (w/w0)^p
  bool linear;       // fallback when a node value is zero
  double w1, i1;
  double operator()(double w) const {
    if (linear) {
      const double t = (w - w0) / (w1 - w0);
      return i0 + t * (i1 - i0);
    }
    return i0 * std::exp(p * std::log(w / w0));
  }
};

SegmentInterp make_interp(const OpticalRow& a, const OpticalRow& b) {
  SegmentInterp s;
  s.w0 = a.energy_ev;
  s.i0 = a.im_eps;
  s.w1 = b.energy_ev;
  s.i1 = b.im_eps;
  if (a.im_eps > 0.0 && b.im_eps > 0.0) {
    s.linear = false;
    s.p = std::log(b.im_eps / a.im_eps) / std::log(b.energy_ev / a.energy_ev);
  } else {
    s.linear = true;
    s.p = 0.0;
  }
  return s;
}

double kk_table_integral(double xi, const OpticalTable& table) {
  const auto& rows = table.rows();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (rows[i].im_eps == 0.0 && rows[i + 1].im_eps == 0.0) continue;
    const SegmentInterp interp = make_interp(rows[i], rows[i + 1]);
    auto f = [&](double w) { return w * interp(w) / (w * w + xi * xi); };
    quad::Estimate est =
        quad::escalating_gl(f, rows[i].energy_ev, rows[i + 1].energy_ev,
                            1e-11, 1e-300, 8, 64);
    sum += est.value;
  }
  return sum;
}

}  // namespace

OpticalTable::OpticalTable(std::vector<OpticalRow> rows, std::string provenance)
    : rows_(std::move(rows)), provenance_(std::move(provenance)) {
  if (rows_.size() < 2)
    throw std::invalid_argument("OpticalTable: needs at least 2 rows");
  double prev = 0.0;
  for (const auto& r : rows_) {
    if (!(r.energy_ev > prev))
      throw std::invalid_argument(
          "OpticalTable: photon energies must be strictly increasing and > 0");
    if (r.im_eps < 0.0)
      throw std::invalid_argument("OpticalTable: Im eps must be >= 0");
    prev = r.energy_ev;
  }
  if (max_energy() < 10.0 * min_energy())
    provenance_ += " [warning: table spans less than one decade of energy]";
}

double eps_drude(double xi_ev, double omega_p_ev, double gamma_ev) {
  require_positive_xi(xi_ev, "eps_drude");
  return 1.0 + omega_p_ev * omega_p_ev / (xi_ev * (xi_ev + gamma_ev));
}

double eps_plasma(double xi_ev, double omega_p_ev) {
  require_positive_xi(xi_ev, "eps_plasma");
  return 1.0 + omega_p_ev * omega_p_ev / (xi_ev * xi_ev);
}

double eps_oscillator(double xi_ev, const OscillatorSet& set) {
  if (xi_ev < 0.0) throw std::domain_error("eps_oscillator: xi < 0");
  double eps = set.eps_infinity;
  for (const auto& t : set.terms) {
    const double w2 = t.omega_ev * t.omega_ev;
    eps += t.strength * w2 / (w2 + xi_ev * xi_ev + t.gamma_ev * xi_ev);
  }
  if (set.carriers) {
    const auto& fc = *set.carriers;
    eps += (fc.model == MetalModel::drude)
               ? eps_drude(xi_ev, fc.omega_p_ev, fc.gamma_ev) - 1.0
               : eps_plasma(xi_ev, fc.omega_p_ev) - 1.0;
  }
  return eps;
}

double eps_tabulated(double xi_ev, const OpticalTable& table,
                     const TableExtension& extension) {
  require_positive_xi(xi_ev, "eps_tabulated");
  double integral = kk_table_integral(xi_ev, table);

  // high-frequency w^-3 tail matched to the last table row
  const auto& last = table.rows().back();
  if (last.im_eps > 0.0) {
    const double B = last.im_eps * std::pow(last.energy_ev, 3);
    integral += tail_segment(last.energy_ev, B, xi_ev);
  }

  // conductor extension below the lowest tabulated energy: the KK route
  // always uses the Drude form; the plasma prescription swaps the
  // free-carrier term afterwards (generalized plasma model).
  if (extension.low_freq) {
    const auto& fc = *extension.low_freq;
    integral += drude_segment(table.min_energy(), xi_ev, fc.omega_p_ev,
                              fc.gamma_ev);
  }

  double eps = 1.0 + (2.0 / M_PI) * integral;

  if (extension.low_freq && extension.low_freq->model == MetalModel::plasma) {
    const auto& fc = *extension.low_freq;
    eps += fc.omega_p_ev * fc.omega_p_ev / (xi_ev * xi_ev) -
           fc.omega_p_ev * fc.omega_p_ev / (xi_ev * (xi_ev + fc.gamma_ev));
  }
  return eps;
}

// ---------------------------------------------------------------------------

struct MaterialModel::Impl {
  enum class Kind { drude, plasma, oscillators, tabulated, ideal } kind;
  std::string name;
  std::string provenance;

  // drude / plasma
  double omega_p_ev = 0.0;
  double gamma_ev = 0.0;

  std::optional<OscillatorSet> set;

  std::optional<OpticalTable> table;
  TableExtension extension;

  ZeroFrequencyClass zero;

  mutable std::mutex cache_mutex;
  mutable std::unordered_map<double, double> eps_cache;

  double eval(double xi_ev) const {
    switch (kind) {
      case Kind::drude:
        return eps_drude(xi_ev, omega_p_ev, gamma_ev);
      case Kind::plasma:
        return eps_plasma(xi_ev, omega_p_ev);
      case Kind::oscillators:
        return eps_oscillator(xi_ev, *set);
      case Kind::tabulated:
        return eps_tabulated(xi_ev, *table, extension);
      case Kind::ideal:
        throw std::logic_error("ideal metal has no permittivity");
    }
    return 1.0;
  }
};

namespace {

ZeroFrequencyClass classify(const MaterialModel::Impl& impl) {
  using Kind = MaterialModel::Impl::Kind;
  ZeroFrequencyClass z;
  switch (impl.kind) {
    case Kind::drude:
      z.kind = ZeroFrequencyClass::Kind::drude_like;
      break;
    case Kind::plasma:
      z.kind = ZeroFrequencyClass::Kind::plasma_like;
      z.omega_p_ev = impl.omega_p_ev;
      break;
    case Kind::oscillators:
      if (impl.set->carriers) {
        const auto& fc = *impl.set->carriers;
        if (fc.model == MetalModel::plasma || fc.gamma_ev == 0.0) {
          z.kind = ZeroFrequencyClass::Kind::plasma_like;
          z.omega_p_ev = fc.omega_p_ev;
        } else {
          z.kind = ZeroFrequencyClass::Kind::drude_like;
        }
      } else {
        z.kind = ZeroFrequencyClass::Kind::finite_static;
        z.eps0 = impl.set->eps_infinity;
        for (const auto& t : impl.set->terms) z.eps0 += t.strength;
      }
      break;
    case Kind::tabulated:
      if (impl.extension.low_freq) {
        const auto& fc = *impl.extension.low_freq;
        if (fc.model == MetalModel::plasma) {
          z.kind = ZeroFrequencyClass::Kind::plasma_like;
          z.omega_p_ev = fc.omega_p_ev;
        } else {
          z.kind = ZeroFrequencyClass::Kind::drude_like;
        }
      } else {
        // dielectric table: static limit of the KK integral
        z.kind = ZeroFrequencyClass::Kind::finite_static;
        double integral = kk_table_integral(0.0, *impl.table);
        const auto& last = impl.table->rows().back();
        if (last.im_eps > 0.0)
          integral += tail_segment(last.energy_ev,
                                   last.im_eps * std::pow(last.energy_ev, 3),
                                   0.0);
        z.eps0 = 1.0 + (2.0 / M_PI) * integral;
      }
      break;
    case Kind::ideal:
      z.kind = ZeroFrequencyClass::Kind::drude_like;  // unused
      break;
  }
  return z;
}

std::shared_ptr<const MaterialModel::Impl> finalize(
    std::shared_ptr<MaterialModel::Impl> impl) {
  impl->zero = classify(*impl);
  return impl;
}

}  // namespace

MaterialModel::MaterialModel(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

MaterialModel MaterialModel::drude(double omega_p_ev, double gamma_ev,
                                   std::string name) {
  if (!(omega_p_ev > 0.0) || gamma_ev < 0.0)
    throw std::invalid_argument("MaterialModel::drude: wp > 0, gamma >= 0");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::drude;
  impl->name = std::move(name);
  impl->omega_p_ev = omega_p_ev;
  impl->gamma_ev = gamma_ev;
  return MaterialModel(finalize(std::move(impl)));
}

MaterialModel MaterialModel::plasma(double omega_p_ev, std::string name) {
  if (!(omega_p_ev > 0.0))
    throw std::invalid_argument("MaterialModel::plasma: wp > 0");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::plasma;
  impl->name = std::move(name);
  impl->omega_p_ev = omega_p_ev;
  return MaterialModel(finalize(std::move(impl)));
}

MaterialModel MaterialModel::oscillators(OscillatorSet set, std::string name) {
  for (const auto& t : set.terms)
    if (t.strength < 0.0 || !(t.omega_ev > 0.0) || t.gamma_ev < 0.0)
      throw std::invalid_argument(
          "MaterialModel::oscillators: C >= 0, omega > 0, gamma >= 0");
  if (set.carriers && !(set.carriers->omega_p_ev > 0.0))
    throw std::invalid_argument("MaterialModel::oscillators: carrier wp > 0");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::oscillators;
  impl->name = std::move(name);
  impl->set = std::move(set);
  return MaterialModel(finalize(std::move(impl)));
}

MaterialModel MaterialModel::tabulated(OpticalTable table,
                                       TableExtension extension,
                                       std::string name) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::tabulated;
  impl->name = std::move(name);
  impl->provenance = table.provenance();
  impl->table = std::move(table);
  impl->extension = extension;
  return MaterialModel(finalize(std::move(impl)));
}

MaterialModel MaterialModel::ideal_metal() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::ideal;
  impl->name = "ideal-metal";
  return MaterialModel(finalize(std::move(impl)));
}

MaterialModel MaterialModel::vacuum() {
  OscillatorSet set;  // eps == 1 everywhere
  return oscillators(std::move(set), "vacuum");
}

double MaterialModel::eps(double xi_ev) const {
  if (!impl_) throw std::logic_error("MaterialModel: empty");
  if (impl_->kind == Impl::Kind::tabulated) {
    std::lock_guard<std::mutex> lock(impl_->cache_mutex);
    auto it = impl_->eps_cache.find(xi_ev);
    if (it != impl_->eps_cache.end()) return it->second;
    const double value = impl_->eval(xi_ev);
    impl_->eps_cache.emplace(xi_ev, value);
    return value;
  }
  return impl_->eval(xi_ev);
}

const ZeroFrequencyClass& MaterialModel::zero_class() const {
  if (!impl_) throw std::logic_error("MaterialModel: empty");
  return impl_->zero;
}

bool MaterialModel::is_ideal() const {
  return impl_ && impl_->kind == Impl::Kind::ideal;
}

const std::string& MaterialModel::name() const {
  static const std::string empty;
  return impl_ ? impl_->name : empty;
}

const std::string& MaterialModel::provenance() const {
  static const std::string empty;
  return impl_ ? impl_->provenance : empty;
}

MaterialModel MaterialModel::with_metal_model(MetalModel model) const {
  if (!impl_) throw std::logic_error("MaterialModel: empty");
  switch (impl_->kind) {
    case Impl::Kind::drude:
      if (model == MetalModel::plasma)
        return plasma(impl_->omega_p_ev, impl_->name);
      return *this;
    case Impl::Kind::plasma:
      if (model == MetalModel::drude)
        return drude(impl_->omega_p_ev, impl_->gamma_ev, impl_->name);
      return *this;
    case Impl::Kind::oscillators: {
      if (!impl_->set->carriers) return *this;
      OscillatorSet set = *impl_->set;
      set.carriers->model = model;
      return oscillators(std::move(set), impl_->name);
    }
    case Impl::Kind::tabulated: {
      if (!impl_->extension.low_freq) return *this;
      TableExtension ext = impl_->extension;
      ext.low_freq->model = model;
      return tabulated(*impl_->table, ext, impl_->name);
    }
    case Impl::Kind::ideal:
      return *this;
  }
  return *this;
}

std::optional<FreeCarrierTerm> MaterialModel::free_carriers() const {
  if (!impl_) throw std::logic_error("MaterialModel: empty");
  switch (impl_->kind) {
    case Impl::Kind::drude:
      return FreeCarrierTerm{MetalModel::drude, impl_->omega_p_ev,
                             impl_->gamma_ev};
    case Impl::Kind::plasma:
      return FreeCarrierTerm{MetalModel::plasma, impl_->omega_p_ev,
                             impl_->gamma_ev};
    case Impl::Kind::oscillators:
      return impl_->set->carriers;
    case Impl::Kind::tabulated:
      return impl_->extension.low_freq;
    case Impl::Kind::ideal:
      return std::nullopt;
  }
  return std::nullopt;
}

MaterialModel MaterialModel::with_free_carriers(
    const FreeCarrierTerm& term) const {
  if (!impl_) throw std::logic_error("MaterialModel: empty");
  switch (impl_->kind) {
    case Impl::Kind::drude:
    case Impl::Kind::plasma:
      return term.model == MetalModel::drude
                 ? drude(term.omega_p_ev, term.gamma_ev, impl_->name)
                 : plasma(term.omega_p_ev, impl_->name);
    case Impl::Kind::oscillators: {
      OscillatorSet set = *impl_->set;
      set.carriers = term;
      return oscillators(std::move(set), impl_->name);
    }
    case Impl::Kind::tabulated: {
      TableExtension ext = impl_->extension;
      ext.low_freq = term;
      return tabulated(*impl_->table, ext, impl_->name);
    }
    case Impl::Kind::ideal:
      return *this;
  }
  return *this;
}

MaterialModel MaterialModel::with_free_carrier_omega_p(
    double omega_p_ev) const {
  if (!impl_) throw std::logic_error("MaterialModel: empty");
  switch (impl_->kind) {
    case Impl::Kind::drude:
      return drude(omega_p_ev, impl_->gamma_ev, impl_->name);
    case Impl::Kind::plasma:
      return plasma(omega_p_ev, impl_->name);
    case Impl::Kind::oscillators: {
      if (!impl_->set->carriers) return *this;
      OscillatorSet set = *impl_->set;
      set.carriers->omega_p_ev = omega_p_ev;
      return oscillators(std::move(set), impl_->name);
    }
    case Impl::Kind::tabulated: {
      if (!impl_->extension.low_freq) return *this;
      TableExtension ext = impl_->extension;
      ext.low_freq->omega_p_ev = omega_p_ev;
      return tabulated(*impl_->table, ext, impl_->name);
    }
    case Impl::Kind::ideal:
      return *this;
  }
  return *this;
}

}  // namespace cge
