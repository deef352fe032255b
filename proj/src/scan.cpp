#include "cge/scan.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "cge/material_registry.hpp"
#include "cge/sphere_plate.hpp"
#include "json.hpp"

namespace cge {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void parallel_rows(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// one aborted row: separation, NaN values, converged = 0
std::vector<double> failed_row(double a, std::size_t columns) {
  std::vector<double> row(columns, kNaN);
  row.front() = a;
  row.back() = 0.0;
  return row;
}

void finish_convergence_flag(ScanTable& table) {
  for (const auto& row : table.rows)
    if (!(row.back() == 1.0)) table.all_converged = false;
}

void fill_metadata(ScanTable& table, const RunConfig& cfg) {
  table.metadata["command"] = cfg.command;
  table.metadata["engine_version"] = "0.1.0";
  table.metadata["config"] = effective_config_text(cfg);
  // provenance hashes of every material file in play
  auto note = [&](const std::string& name) {
    if (name.empty()) return;
    try {
      const std::string path = material_file_path(name);
      if (path.empty()) return;  // synthetic material
      char buf[32];
      std::snprintf(buf, sizeof buf, "0x%016llx",
                    static_cast<unsigned long long>(fnv1a_file(path)));
      table.metadata["material:" + name] = path + " " + buf;
    } catch (const std::exception&) {
      // unresolved names surface as ConfigError when the stack is built
    }
  };
  note(cfg.side1.substrate);
  note(cfg.side2.substrate);
  note(cfg.side1.film_material);
  note(cfg.side2.film_material);
}

// P (uncoated), P_g (side1 coated), P_gg (both coated) scenarios sharing
// one set of resolved materials; plates are made of the side1 material.
struct RatioScenarios {
  Scenario none, one, both;
};

RatioScenarios build_ratio_scenarios(const RunConfig& cfg) {
  SideSpec bare = cfg.side1;
  bare.coated = false;
  SideSpec coated = cfg.side1;
  coated.coated = true;
  const PlateStack bare_stack = build_stack(bare);
  const PlateStack coated_stack = build_stack(coated);

  RatioScenarios out;
  out.none.temperature_K = cfg.geometry.temperature_K;
  out.none.side1 = bare_stack;
  out.none.side2 = bare_stack;
  out.one = out.none;
  out.one.side1 = coated_stack;
  out.both = out.one;
  out.both.side2 = coated_stack;
  return out;
}

// scans run at T = 0 through the continuous-frequency integral
PressureResult scan_pressure(const Scenario& sc, const QuadratureConfig& q) {
  return sc.temperature_K > 0.0 ? pressure(sc, q) : pressure_T0(sc, q);
}

double ratio_error(double num, double num_err, double den, double den_err) {
  if (num == 0.0 || den == 0.0) return 0.0;
  const double r = num / den;
  return std::fabs(r) * std::hypot(num_err / num, den_err / den);
}

SphereExperiment experiment_from(const RunConfig& cfg) {
  SphereExperiment exp;
  exp.radius_m = cfg.sphere.radius_m;
  exp.total_error_pa = cfg.sphere.total_error_pa;
  exp.temperature_K = cfg.geometry.temperature_K;
  exp.plate = build_stack(cfg.side1);
  exp.sphere_material = build_stack(cfg.side2).substrate;
  return exp;
}

void append_traces(double a, const PressureResult* const results[3],
                   std::vector<std::array<double, 5>>& sink) {
  for (int pairing = 0; pairing < 3; ++pairing)
    for (const TermTrace& t : results[pairing]->trace)
      sink.push_back({a, static_cast<double>(pairing),
                      static_cast<double>(t.l), t.zeta, t.term_pa});
}

}  // namespace

ScanTable run_ratio_scan(const RunConfig& cfg) {
  const std::vector<double> grid = separation_grid(cfg.geometry);
  ScanTable table;
  fill_metadata(table, cfg);
  table.columns = {"a_m",
                   "P_pa",        "P_err_pa",
                   "P_g_pa",      "P_g_err_pa",
                   "P_gg_pa",     "P_gg_err_pa",
                   "P_g_over_P",  "P_g_over_P_err",
                   "P_gg_over_P", "P_gg_over_P_err",
                   "converged"};
  table.rows.assign(grid.size(), {});
  const RatioScenarios base = build_ratio_scenarios(cfg);
  QuadratureConfig quad = cfg.quad;
  quad.keep_trace = cfg.trace;
  std::vector<std::vector<std::array<double, 5>>> traces(grid.size());

  parallel_rows(static_cast<int>(grid.size()), cfg.threads, [&](int i) {
    const double a = grid[i];
    try {
      RatioScenarios sc = base;
      sc.none.separation_m = sc.one.separation_m = sc.both.separation_m = a;
      const PressureResult none = scan_pressure(sc.none, quad);
      const PressureResult one = scan_pressure(sc.one, quad);
      const PressureResult both = scan_pressure(sc.both, quad);
      const bool ok = none.converged && one.converged && both.converged;
      table.rows[i] = {
          a,
          none.pressure_pa, none.estimated_error_pa,
          one.pressure_pa, one.estimated_error_pa,
          both.pressure_pa, both.estimated_error_pa,
          one.pressure_pa / none.pressure_pa,
          ratio_error(one.pressure_pa, one.estimated_error_pa,
                      none.pressure_pa, none.estimated_error_pa),
          both.pressure_pa / none.pressure_pa,
          ratio_error(both.pressure_pa, both.estimated_error_pa,
                      none.pressure_pa, none.estimated_error_pa),
          ok ? 1.0 : 0.0};
      if (cfg.trace) {
        const PressureResult* results[3] = {&none, &one, &both};
        append_traces(a, results, traces[i]);
      }
    } catch (const std::exception&) {
      table.rows[i] = failed_row(a, table.columns.size());
    }
  });
  for (auto& rows : traces)
    table.trace.insert(table.trace.end(), rows.begin(), rows.end());
  finish_convergence_flag(table);
  return table;
}

ScanTable run_pressure_scan(const RunConfig& cfg) {
  const std::vector<double> grid = separation_grid(cfg.geometry);
  ScanTable table;
  fill_metadata(table, cfg);
  table.columns = {"a_m",
                   "absP_pa",    "absP_err_pa",
                   "absP_g_pa",  "absP_g_err_pa",
                   "absP_gg_pa", "absP_gg_err_pa",
                   "converged"};
  table.rows.assign(grid.size(), {});
  const RatioScenarios base = build_ratio_scenarios(cfg);
  QuadratureConfig quad = cfg.quad;
  quad.keep_trace = cfg.trace;
  std::vector<std::vector<std::array<double, 5>>> traces(grid.size());

  parallel_rows(static_cast<int>(grid.size()), cfg.threads, [&](int i) {
    const double a = grid[i];
    try {
      RatioScenarios sc = base;
      sc.none.separation_m = sc.one.separation_m = sc.both.separation_m = a;
      const PressureResult none = scan_pressure(sc.none, quad);
      const PressureResult one = scan_pressure(sc.one, quad);
      const PressureResult both = scan_pressure(sc.both, quad);
      const bool ok = none.converged && one.converged && both.converged;
      table.rows[i] = {a,
                       std::fabs(none.pressure_pa), none.estimated_error_pa,
                       std::fabs(one.pressure_pa), one.estimated_error_pa,
                       std::fabs(both.pressure_pa), both.estimated_error_pa,
                       ok ? 1.0 : 0.0};
      if (cfg.trace) {
        const PressureResult* results[3] = {&none, &one, &both};
        append_traces(a, results, traces[i]);
      }
    } catch (const std::exception&) {
      table.rows[i] = failed_row(a, table.columns.size());
    }
  });
  for (auto& rows : traces)
    table.trace.insert(table.trace.end(), rows.begin(), rows.end());
  finish_convergence_flag(table);
  return table;
}

ScanTable run_gradient_and_correction(const RunConfig& cfg) {
  const std::vector<double> grid = separation_grid(cfg.geometry);
  ScanTable table;
  fill_metadata(table, cfg);
  table.columns = {"a_m",
                   "grad_T_pa",        "grad_T_err_pa",
                   "grad_T0_pa",       "grad_T0_err_pa",
                   "thermal_corr_pa",  "thermal_corr_err_pa",
                   "rel_corr",         "rel_corr_err",
                   "error_line_pa",    "rel_error_line",
                   "corr_above_error", "pfa_warning",
                   "converged"};
  table.rows.assign(grid.size(), {});
  const SphereExperiment exp = experiment_from(cfg);

  parallel_rows(static_cast<int>(grid.size()), cfg.threads, [&](int i) {
    const double a = grid[i];
    try {
      const GradientValue lab =
          normalized_gradient(a, exp, cfg.quad, TemperatureMode::lab);
      const GradientValue zero =
          normalized_gradient(a, exp, cfg.quad, TemperatureMode::zero);
      const double corr = lab.value_pa - zero.value_pa;
      const double corr_err = lab.error_pa + zero.error_pa;
      const double rel = lab.value_pa != 0.0 ? corr / lab.value_pa : 0.0;
      const double rel_err =
          (corr != 0.0 && lab.value_pa != 0.0)
              ? std::fabs(rel) * (corr_err / std::fabs(corr) +
                                  lab.error_pa / std::fabs(lab.value_pa))
              : 0.0;
      table.rows[i] = {a,
                       lab.value_pa, lab.error_pa,
                       zero.value_pa, zero.error_pa,
                       corr, corr_err,
                       rel, rel_err,
                       exp.total_error_pa,
                       lab.value_pa != 0.0
                           ? exp.total_error_pa / lab.value_pa
                           : 0.0,
                       corr >= exp.total_error_pa ? 1.0 : 0.0,
                       pfa_accuracy_warning(a, exp.radius_m) ? 1.0 : 0.0,
                       (lab.converged && zero.converged) ? 1.0 : 0.0};
    } catch (const std::exception&) {
      table.rows[i] = failed_row(a, table.columns.size());
    }
  });
  finish_convergence_flag(table);
  return table;
}

ScanTable run_band_compare(const RunConfig& cfg) {
  std::vector<double> grid;
  std::vector<OverlayPoint> overlay;
  if (!cfg.output.overlay_path.empty()) {
    overlay = parse_overlay_csv(cfg.output.overlay_path);
    // evaluate the bands exactly at the measured separations
    for (const auto& pt : overlay) grid.push_back(pt.a_m);
  } else {
    grid = separation_grid(cfg.geometry);
  }

  ScanTable table;
  fill_metadata(table, cfg);
  table.columns = {"a_m",
                   "grad_T_lo_pa",  "grad_T_lo_err_pa",
                   "grad_T_hi_pa",  "grad_T_hi_err_pa",
                   "grad_T0_lo_pa", "grad_T0_lo_err_pa",
                   "grad_T0_hi_pa", "grad_T0_hi_err_pa"};
  const bool with_overlay = !overlay.empty();
  if (with_overlay) {
    table.columns.insert(table.columns.end(),
                         {"data_grad_pa", "data_err_pa", "dist_T_sigma",
                          "dist_T0_sigma"});
  }
  table.columns.push_back("converged");
  table.rows.assign(grid.size(), {});

  const SphereExperiment exp = experiment_from(cfg);
  BandSpec band;
  band.gap_min_ev = cfg.band.gap_min_ev;
  band.gap_max_ev = cfg.band.gap_max_ev;
  band.vary_metal_model = cfg.band.vary_metal_model;
  // the Si plasma-frequency corner only applies to metallic substrates
  if (exp.plate.substrate.free_carriers())
    band.substrate_omega_p_ev = {cfg.band.si_omega_p_min_ev,
                                 cfg.band.si_omega_p_max_ev};

  parallel_rows(static_cast<int>(grid.size()), cfg.threads, [&](int i) {
    const double a = grid[i];
    try {
      const double single[1] = {a};
      const BandPoint lab =
          model_band(single, exp, band, cfg.quad, TemperatureMode::lab)[0];
      const BandPoint zero =
          model_band(single, exp, band, cfg.quad, TemperatureMode::zero)[0];
      std::vector<double> row = {a,
                                 lab.lo_pa,  lab.lo_err_pa,
                                 lab.hi_pa,  lab.hi_err_pa,
                                 zero.lo_pa, zero.lo_err_pa,
                                 zero.hi_pa, zero.hi_err_pa};
      if (with_overlay) {
        const OverlayPoint& pt = overlay[i];
        // distance to the band in units of the data error bar; 0 inside
        auto distance = [&](const BandPoint& b) {
          if (pt.grad_pa >= b.lo_pa && pt.grad_pa <= b.hi_pa) return 0.0;
          const double gap = (pt.grad_pa < b.lo_pa) ? b.lo_pa - pt.grad_pa
                                                    : pt.grad_pa - b.hi_pa;
          return gap / pt.grad_err_pa;
        };
        row.insert(row.end(), {pt.grad_pa, pt.grad_err_pa, distance(lab),
                               distance(zero)});
      }
      row.push_back(1.0);
      table.rows[i] = std::move(row);
    } catch (const std::exception&) {
      table.rows[i] = failed_row(a, table.columns.size());
    }
  });
  finish_convergence_flag(table);
  return table;
}

ScanTable run_dump_eps(const RunConfig& cfg) {
  ScanTable table;
  fill_metadata(table, cfg);
  std::vector<std::pair<std::string, MaterialModel>> mats;
  auto add = [&](const std::string& name) {
    if (name.empty() || name == "ideal-metal") return;
    for (const auto& m : mats)
      if (m.first == name) return;
    mats.emplace_back(name, load_material(name));
  };
  add(cfg.side1.substrate);
  add(cfg.side1.film_material);
  add(cfg.side2.substrate);
  add(cfg.side2.film_material);

  table.columns = {"xi_ev"};
  for (const auto& m : mats) table.columns.push_back("eps_" + m.first);

  for (int i = 0; i < 120; ++i) {
    const double xi = 1e-3 * std::pow(1e6, i / 119.0);
    std::vector<double> row = {xi};
    for (const auto& m : mats) row.push_back(m.second.eps(xi));
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

std::vector<double> dimensionless_grid() {
  std::vector<double> g = {0.0};
  for (int i = 0; i < 24; ++i) g.push_back(1e-2 * std::pow(3e3, i / 23.0));
  return g;
}

}  // namespace

ScanTable run_dump_reflection(const RunConfig& cfg) {
  ScanTable table;
  fill_metadata(table, cfg);
  table.columns = {"zeta", "y", "r_tm_side1", "r_te_side1", "r_tm_side2",
                   "r_te_side2"};
  const PlateStack s1 = build_stack(cfg.side1);
  const PlateStack s2 = build_stack(cfg.side2);
  const DimensionlessContext ctx =
      make_context(cfg.geometry.a_min_m, cfg.geometry.temperature_K);
  for (double zeta : dimensionless_grid()) {
    for (double t : dimensionless_grid()) {
      if (t == 0.0) continue;  // y = zeta is the singular endpoint
      const SpectralPoint pt{zeta, zeta + t};
      const ReflectionPair r1 = r_stack(pt, s1, ctx, cfg.quad.pol_rel_tol);
      const ReflectionPair r2 = r_stack(pt, s2, ctx, cfg.quad.pol_rel_tol);
      table.rows.push_back({zeta, pt.y, r1.tm, r1.te, r2.tm, r2.te});
    }
  }
  return table;
}

ScanTable run_dump_polarization(const RunConfig& cfg) {
  ScanTable table;
  fill_metadata(table, cfg);
  table.columns = {"zeta", "y", "pi00", "pi_combo"};
  GrapheneSheet sheet;
  sheet.delta_ev = cfg.side1.gap_ev;
  sheet.v_f_ratio = cfg.side1.fermi_velocity_mps / units::c;
  const DimensionlessContext ctx =
      make_context(cfg.geometry.a_min_m, cfg.geometry.temperature_K, sheet);
  for (double zeta : dimensionless_grid()) {
    for (double t : dimensionless_grid()) {
      if (zeta == 0.0 && t == 0.0) continue;
      const double y = zeta + t;
      const PolarizationComponents pol =
          (zeta == 0.0)
              ? polarization_zero(y, ctx, sheet, cfg.quad.pol_rel_tol)
              : graphene_detail::polarization_at(
                    zeta, y, ctx.to_dimensionless(sheet.delta_ev),
                    sheet.v_f_ratio);
      table.rows.push_back({zeta, y, pol.pi00, pol.pi_combo});
    }
  }
  return table;
}

ScanTable run_command(const RunConfig& cfg) {
  if (cfg.command == "ratio-scan") return run_ratio_scan(cfg);
  if (cfg.command == "pressure-scan") return run_pressure_scan(cfg);
  if (cfg.command == "gradient-scan" || cfg.command == "thermal-correction")
    return run_gradient_and_correction(cfg);
  if (cfg.command == "band-compare") return run_band_compare(cfg);
  if (cfg.command == "dump-eps") return run_dump_eps(cfg);
  if (cfg.command == "dump-reflection") return run_dump_reflection(cfg);
  if (cfg.command == "dump-polarization") return run_dump_polarization(cfg);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

void write_csv(const ScanTable& table, std::ostream& os) {
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << fmt9(row[i]);
    os << "\n";
  }
}

void write_json(const ScanTable& table, std::ostream& os) {
  nlohmann::json doc;
  doc["metadata"] = table.metadata;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj;
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i)
      obj[table.columns[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << "\n";
}

void write_output(const ScanTable& table, const RunConfig& cfg) {
  auto emit = [&](std::ostream& os) {
    if (cfg.output.format == "json")
      write_json(table, os);
    else
      write_csv(table, os);
  };
  if (cfg.output.path == "-" || cfg.output.path.empty()) {
    emit(std::cout);
  } else {
    std::ofstream out(cfg.output.path);
    if (!out)
      throw InputFileError("cannot open output file '" + cfg.output.path +
                           "'");
    emit(out);
  }
  if (cfg.trace && !table.trace.empty()) {
    const std::string path =
        (cfg.output.path == "-" || cfg.output.path.empty())
            ? "trace.csv"
            : cfg.output.path + ".trace.csv";
    std::ofstream out(path);
    out << "a_m,pairing,l,zeta_l,term_pa\n";
    for (const auto& t : table.trace) {
      out << fmt9(t[0]) << "," << static_cast<int>(t[1]) << ","
          << static_cast<int>(t[2]) << "," << fmt9(t[3]) << "," << fmt9(t[4])
          << "\n";
    }
  }
}

std::vector<OverlayPoint> parse_overlay_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputFileError("cannot open overlay file '" + path + "'");
  std::vector<OverlayPoint> points;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) continue;  // header
    std::string t;
    for (char c : line)
      if (c != ' ' && c != '\r') t += c;
    if (t.empty()) continue;
    OverlayPoint pt;
    double a_nm = 0, a_err_nm = 0;
    if (std::sscanf(t.c_str(), "%lf,%lf,%lf,%lf", &a_nm, &a_err_nm,
                    &pt.grad_pa, &pt.grad_err_pa) != 4)
      throw InputFileError("overlay file '" + path + "' row " +
                           std::to_string(line_no) +
                           ": expected a_nm, a_err_nm, grad_Pa, grad_err_Pa");
    if (!(pt.grad_err_pa > 0.0))
      throw InputFileError("overlay file '" + path + "' row " +
                           std::to_string(line_no) +
                           ": gradient error must be > 0");
    pt.a_m = a_nm * 1e-9;
    pt.a_err_m = a_err_nm * 1e-9;
    points.push_back(pt);
  }
  if (points.empty())
    throw InputFileError("overlay file '" + path + "' has no data rows");
  return points;
}

}  // namespace cge
