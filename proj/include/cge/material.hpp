#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

// Dielectric permittivity eps(i.xi) of substrate/film materials on the
// imaginary frequency axis. Closed-form models (Drude, plasma,
// Ninham-Parsegian oscillator sums) or tabulated Im eps handbook data
// turned into eps(i.xi) by the Kramers-Kronig transform
//      eps(i.xi) = 1 + (2/pi) Int_0^inf w Im eps(w) / (w^2 + xi^2) dw.
// All energies in eV. Zero frequency is never evaluated directly for
// conductors; callers route l = 0 through ZeroFrequencyClass.

namespace cge {

struct OpticalRow {
  double energy_ev = 0.0;
  double im_eps = 0.0;
};

class OpticalTable {
 public:
  OpticalTable(std::vector<OpticalRow> rows, std::string provenance);

  const std::vector<OpticalRow>& rows() const { return rows_; }
  const std::string& provenance() const { return provenance_; }
  double min_energy() const { return rows_.front().energy_ev; }
  double max_energy() const { return rows_.back().energy_ev; }

 private:
  std::vector<OpticalRow> rows_;
  std::string provenance_;
};

enum class MetalModel { drude, plasma };

// Free-carrier response: Drude wp^2/(xi (xi + g)) or lossless plasma
// wp^2/xi^2. Also doubles as the low-frequency extension descriptor of a
// tabulated conductor (the plasma variant keeps gamma to identify which
// Drude part of the table it replaces).
struct FreeCarrierTerm {
  MetalModel model = MetalModel::drude;
  double omega_p_ev = 0.0;
  double gamma_ev = 0.0;
};

struct Oscillator {
  double strength = 0.0;  // C_j, dimensionless
  double omega_ev = 0.0;  // resonance
  double gamma_ev = 0.0;  // width
};

struct OscillatorSet {
  double eps_infinity = 1.0;
  std::vector<Oscillator> terms;
  std::optional<FreeCarrierTerm> carriers;  // doped semiconductors
};

struct TableExtension {
  std::optional<FreeCarrierTerm> low_freq;  // absent for dielectric tables
};

struct ZeroFrequencyClass {
  enum class Kind { finite_static, drude_like, plasma_like };
  Kind kind = Kind::finite_static;
  double eps0 = 1.0;        // finite_static
  double omega_p_ev = 0.0;  // plasma_like
};

// Closed-form evaluations (xi in eV). Domain errors on xi <= 0 except the
// oscillator form, which has a finite static limit.
double eps_drude(double xi_ev, double omega_p_ev, double gamma_ev);
double eps_plasma(double xi_ev, double omega_p_ev);
double eps_oscillator(double xi_ev, const OscillatorSet& set);
double eps_tabulated(double xi_ev, const OpticalTable& table,
                     const TableExtension& extension);

class MaterialModel {
 public:
  MaterialModel() = default;

  static MaterialModel drude(double omega_p_ev, double gamma_ev,
                             std::string name = "drude");
  static MaterialModel plasma(double omega_p_ev, std::string name = "plasma");
  static MaterialModel oscillators(OscillatorSet set,
                                   std::string name = "oscillator");
  static MaterialModel tabulated(OpticalTable table, TableExtension extension,
                                 std::string name = "tabulated");
  // Unit reflection on both polarizations; reference/testing material.
  static MaterialModel ideal_metal();
  static MaterialModel vacuum();

  double eps(double xi_ev) const;  // xi > 0
  const ZeroFrequencyClass& zero_class() const;
  bool is_ideal() const;
  const std::string& name() const;
  const std::string& provenance() const;

  // Swap the free-carrier description (Drude <-> plasma extrapolation)
  // keeping wp and gamma. No-op for dielectrics.
  MaterialModel with_metal_model(MetalModel model) const;
  // Replace the free-carrier plasma frequency (band scans over the
  // doped-Si uncertainty). No-op for materials without free carriers.
  MaterialModel with_free_carrier_omega_p(double omega_p_ev) const;

  // Free-carrier term of a conductor (Drude/plasma parameters, oscillator
  // carriers, or the low-frequency extension of a table); nullopt for
  // dielectrics.
  std::optional<FreeCarrierTerm> free_carriers() const;
  MaterialModel with_free_carriers(const FreeCarrierTerm& term) const;

  struct Impl;  // defined in material.cpp

 private:
  explicit MaterialModel(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

}  // namespace cge
