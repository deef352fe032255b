#include "cge/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cge/material_registry.hpp"

namespace cge {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& section, const std::string& key,
                 const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("[" + section + "] " + key + ": not a number: '" +
                      value + "'");
  }
}

int to_int(const std::string& section, const std::string& key,
           const std::string& value) {
  const double v = to_double(section, key, value);
  if (v != std::floor(v))
    throw ConfigError("[" + section + "] " + key + ": not an integer");
  return static_cast<int>(v);
}

bool to_bool(const std::string& section, const std::string& key,
             const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("[" + section + "] " + key + ": expected true/false");
}

void apply_side_key(SideSpec& side, const std::string& section,
                    const std::string& key, const std::string& value) {
  if (key == "substrate") {
    side.substrate = value;
  } else if (key == "coating") {
    if (value == "none")
      side.coated = false;
    else if (value == "graphene")
      side.coated = true;
    else
      throw ConfigError("[" + section + "] coating: none|graphene");
  } else if (key == "gap") {
    side.gap_ev = to_double(section, key, value);
    if (side.gap_ev < 0.0)
      throw ConfigError("[" + section + "] gap must be >= 0");
  } else if (key == "fermi_velocity") {
    side.fermi_velocity_mps = to_double(section, key, value);
  } else if (key == "film") {
    if (value == "none") {
      side.film_material.clear();
      side.film_thickness_m = 0.0;
      return;
    }
    const auto colon = value.rfind(':');
    if (colon == std::string::npos)
      throw ConfigError("[" + section + "] film: expected NAME:THICKNESS_m");
    side.film_material = value.substr(0, colon);
    side.film_thickness_m = to_double(section, key, value.substr(colon + 1));
    if (!(side.film_thickness_m > 0.0))
      throw ConfigError("[" + section + "] film thickness must be > 0");
  } else if (key == "metal_model") {
    if (value == "drude")
      side.metal_model = MetalModel::drude;
    else if (value == "plasma")
      side.metal_model = MetalModel::plasma;
    else
      throw ConfigError("[" + section + "] metal_model: drude|plasma");
  } else if (key == "omega_p") {
    side.omega_p_ev = to_double(section, key, value);
  } else if (key == "gamma") {
    side.gamma_ev = to_double(section, key, value);
  } else {
    throw ConfigError("[" + section + "] unknown key '" + key + "'");
  }
}

}  // namespace

RunConfig default_config(const std::string& command) {
  RunConfig cfg;
  cfg.command = command;
  cfg.side1.substrate = "fused-silica";
  cfg.side1.coated = true;
  cfg.side2.substrate = "gold";
  if (command == "gradient-scan" || command == "thermal-correction" ||
      command == "band-compare") {
    cfg.geometry.a_min_m = 2e-7;
    cfg.geometry.a_max_m = 6e-7;
    cfg.geometry.points = 50;
    cfg.geometry.log_spacing = false;
  }
  return cfg;
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
  RunConfig cfg = std::move(base);
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": malformed section header");
      section = t.substr(1, t.size() - 2);
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));

    if (section == "geometry") {
      if (key == "a_min")
        cfg.geometry.a_min_m = to_double(section, key, value);
      else if (key == "a_max")
        cfg.geometry.a_max_m = to_double(section, key, value);
      else if (key == "points")
        cfg.geometry.points = to_int(section, key, value);
      else if (key == "spacing") {
        if (value == "log")
          cfg.geometry.log_spacing = true;
        else if (value == "linear")
          cfg.geometry.log_spacing = false;
        else
          throw ConfigError("[geometry] spacing: log|linear");
      } else if (key == "temperature")
        cfg.geometry.temperature_K = to_double(section, key, value);
      else
        throw ConfigError("[geometry] unknown key '" + key + "'");
    } else if (section == "side1") {
      apply_side_key(cfg.side1, section, key, value);
    } else if (section == "side2") {
      apply_side_key(cfg.side2, section, key, value);
    } else if (section == "sphere") {
      if (key == "radius")
        cfg.sphere.radius_m = to_double(section, key, value);
      else if (key == "total_error")
        cfg.sphere.total_error_pa = to_double(section, key, value);
      else
        throw ConfigError("[sphere] unknown key '" + key + "'");
    } else if (section == "band") {
      if (key == "gap_min")
        cfg.band.gap_min_ev = to_double(section, key, value);
      else if (key == "gap_max")
        cfg.band.gap_max_ev = to_double(section, key, value);
      else if (key == "vary_metal_model")
        cfg.band.vary_metal_model = to_bool(section, key, value);
      else if (key == "si_omega_p_min")
        cfg.band.si_omega_p_min_ev = to_double(section, key, value);
      else if (key == "si_omega_p_max")
        cfg.band.si_omega_p_max_ev = to_double(section, key, value);
      else
        throw ConfigError("[band] unknown key '" + key + "'");
    } else if (section == "quadrature") {
      if (key == "rel_tol")
        cfg.quad.rel_tol = to_double(section, key, value);
      else if (key == "abs_tol")
        cfg.quad.abs_tol_pa = to_double(section, key, value);
      else if (key == "max_matsubara")
        cfg.quad.max_matsubara = to_int(section, key, value);
      else if (key == "pol_rel_tol")
        cfg.quad.pol_rel_tol = to_double(section, key, value);
      else
        throw ConfigError("[quadrature] unknown key '" + key + "'");
    } else if (section == "output") {
      if (key == "path")
        cfg.output.path = value;
      else if (key == "format") {
        if (value != "csv" && value != "json")
          throw ConfigError("[output] format: csv|json");
        cfg.output.format = value;
      } else if (key == "overlay")
        cfg.output.overlay_path = (value == "none") ? "" : value;
      else
        throw ConfigError("[output] unknown key '" + key + "'");
    } else if (section == "run") {
      if (key == "threads")
        cfg.threads = to_int(section, key, value);
      else if (key == "trace")
        cfg.trace = to_bool(section, key, value);
      else
        throw ConfigError("[run] unknown key '" + key + "'");
    } else {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": unknown section '" + section + "'");
    }
  }

  if (!(cfg.geometry.a_min_m > 0.0))
    throw ConfigError("[geometry] a_min must be > 0");
  if (cfg.geometry.points < 1) throw ConfigError("[geometry] points >= 1");
  if (cfg.geometry.points > 1 && !(cfg.geometry.a_max_m > cfg.geometry.a_min_m))
    throw ConfigError("[geometry] a_max must exceed a_min");
  return cfg;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  cfg = parse_config_text(buf.str(), std::move(cfg));
}

std::string effective_config_text(const RunConfig& cfg) {
  std::ostringstream os;
  os << "[geometry]\n";
  os << "a_min = " << fmt(cfg.geometry.a_min_m) << "\n";
  os << "a_max = " << fmt(cfg.geometry.a_max_m) << "\n";
  os << "points = " << cfg.geometry.points << "\n";
  os << "spacing = " << (cfg.geometry.log_spacing ? "log" : "linear") << "\n";
  os << "temperature = " << fmt(cfg.geometry.temperature_K) << "\n";
  const std::pair<const char*, const SideSpec*> sides[] = {
      {"side1", &cfg.side1}, {"side2", &cfg.side2}};
  for (const auto& pair : sides) {
    const SideSpec& s = *pair.second;
    os << "[" << pair.first << "]\n";
    os << "substrate = " << s.substrate << "\n";
    os << "coating = " << (s.coated ? "graphene" : "none") << "\n";
    os << "gap = " << fmt(s.gap_ev) << "\n";
    os << "fermi_velocity = " << fmt(s.fermi_velocity_mps) << "\n";
    if (!s.film_material.empty())
      os << "film = " << s.film_material << ":" << fmt(s.film_thickness_m)
         << "\n";
    else
      os << "film = none\n";
    if (s.metal_model)
      os << "metal_model = "
         << (*s.metal_model == MetalModel::drude ? "drude" : "plasma") << "\n";
    if (s.omega_p_ev) os << "omega_p = " << fmt(*s.omega_p_ev) << "\n";
    if (s.gamma_ev) os << "gamma = " << fmt(*s.gamma_ev) << "\n";
  }
  os << "[sphere]\n";
  os << "radius = " << fmt(cfg.sphere.radius_m) << "\n";
  os << "total_error = " << fmt(cfg.sphere.total_error_pa) << "\n";
  os << "[band]\n";
  os << "gap_min = " << fmt(cfg.band.gap_min_ev) << "\n";
  os << "gap_max = " << fmt(cfg.band.gap_max_ev) << "\n";
  os << "vary_metal_model = " << (cfg.band.vary_metal_model ? "true" : "false")
     << "\n";
  os << "si_omega_p_min = " << fmt(cfg.band.si_omega_p_min_ev) << "\n";
  os << "si_omega_p_max = " << fmt(cfg.band.si_omega_p_max_ev) << "\n";
  os << "[quadrature]\n";
  os << "rel_tol = " << fmt(cfg.quad.rel_tol) << "\n";
  os << "abs_tol = " << fmt(cfg.quad.abs_tol_pa) << "\n";
  os << "max_matsubara = " << cfg.quad.max_matsubara << "\n";
  os << "pol_rel_tol = " << fmt(cfg.quad.pol_rel_tol) << "\n";
  os << "[output]\n";
  os << "path = " << cfg.output.path << "\n";
  os << "format = " << cfg.output.format << "\n";
  os << "overlay = "
     << (cfg.output.overlay_path.empty() ? "none" : cfg.output.overlay_path)
     << "\n";
  os << "[run]\n";
  os << "threads = " << cfg.threads << "\n";
  os << "trace = " << (cfg.trace ? "true" : "false") << "\n";
  return os.str();
}

PlateStack build_stack(const SideSpec& side) {
  PlateStack stack;
  MaterialModel substrate = load_material(side.substrate);
  if (side.metal_model)
    substrate = substrate.with_metal_model(*side.metal_model);
  if (side.omega_p_ev || side.gamma_ev) {
    auto fc = substrate.free_carriers();
    if (!fc)
      throw ConfigError("substrate '" + side.substrate +
                        "' has no free-carrier term to override");
    if (side.omega_p_ev) fc->omega_p_ev = *side.omega_p_ev;
    if (side.gamma_ev) fc->gamma_ev = *side.gamma_ev;
    substrate = substrate.with_free_carriers(*fc);
  }
  stack.substrate = std::move(substrate);
  if (!side.film_material.empty()) {
    FilmLayer film;
    film.material = load_material(side.film_material);
    film.thickness_m = side.film_thickness_m;
    stack.film = std::move(film);
  }
  if (side.coated) {
    GrapheneSheet sheet;
    sheet.delta_ev = side.gap_ev;
    sheet.v_f_ratio = side.fermi_velocity_mps / units::c;
    stack.coating = sheet;
  }
  return stack;
}

std::vector<double> separation_grid(const GeometrySpec& g) {
  std::vector<double> grid;
  grid.reserve(g.points);
  if (g.points == 1) {
    grid.push_back(g.a_min_m);
    return grid;
  }
  for (int i = 0; i < g.points; ++i) {
    const double t = static_cast<double>(i) / (g.points - 1);
    grid.push_back(g.log_spacing
                       ? g.a_min_m * std::pow(g.a_max_m / g.a_min_m, t)
                       : g.a_min_m + (g.a_max_m - g.a_min_m) * t);
  }
  return grid;
}

}  // namespace cge
