#include "cge/material_registry.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cge {

namespace {

#ifndef CGE_DATA_DIR
#define CGE_DATA_DIR "data"
#endif

bool is_readable_file(const std::string& path) {
  std::error_code ec;
  return std::filesystem::is_regular_file(path, ec);
}

std::runtime_error file_error(const std::string& path, const std::string& msg,
                              int line_no = 0) {
  std::ostringstream os;
  os << "material file '" << path << "'";
  if (line_no > 0) os << " line " << line_no;
  os << ": " << msg;
  return std::runtime_error(os.str());
}

}  // namespace

std::vector<std::string> material_search_dirs() {
  std::vector<std::string> dirs;
  if (const char* env = std::getenv("CGE_MATERIAL_PATH")) {
    std::string item;
    std::istringstream is(env);
    while (std::getline(is, item, ':'))
      if (!item.empty()) dirs.push_back(item);
  }
  dirs.push_back(CGE_DATA_DIR);
  return dirs;
}

std::string material_file_path(const std::string& name) {
  if (name == "vacuum" || name == "ideal-metal") return {};
  if (is_readable_file(name)) return name;
  for (const auto& dir : material_search_dirs()) {
    const std::string candidate = dir + "/" + name + ".dat";
    if (is_readable_file(candidate)) return candidate;
  }
  throw std::runtime_error("material '" + name +
                           "' not found in the registry search path");
}

MaterialModel parse_material_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw file_error(path, "cannot open");

  std::string header;
  std::string block;
  std::vector<std::pair<int, std::string>> body;  // line number, content
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') {
      if (header.size() < 4096) header += line.substr(start) + "\n";
      continue;
    }
    if (block.empty()) {
      std::istringstream is(line);
      is >> block;
      if (block != "oscillator" && block != "table")
        throw file_error(path, "expected 'oscillator' or 'table' block",
                         line_no);
      continue;
    }
    body.emplace_back(line_no, line.substr(start));
  }
  if (block.empty()) throw file_error(path, "no data block found");

  const std::string name =
      std::filesystem::path(path).stem().string();

  if (block == "oscillator") {
    OscillatorSet set;
    bool have_eps_inf = false;
    for (const auto& [no, text] : body) {
      std::istringstream is(text);
      if (!have_eps_inf) {
        if (!(is >> set.eps_infinity) || set.eps_infinity < 1.0)
          throw file_error(path, "expected eps_infinity >= 1", no);
        have_eps_inf = true;
        continue;
      }
      std::string word;
      is >> word;
      if (word == "drude" || word == "plasma") {
        FreeCarrierTerm fc;
        fc.model = (word == "drude") ? MetalModel::drude : MetalModel::plasma;
        if (!(is >> fc.omega_p_ev))
          throw file_error(path, "free-carrier line needs omega_p", no);
        if (!(is >> fc.gamma_ev)) fc.gamma_ev = 0.0;
        set.carriers = fc;
        continue;
      }
      Oscillator osc;
      std::istringstream row(text);
      if (!(row >> osc.strength >> osc.omega_ev >> osc.gamma_ev))
        throw file_error(path, "expected 'C omega gamma' triple", no);
      set.terms.push_back(osc);
    }
    if (!have_eps_inf) throw file_error(path, "oscillator block is empty");
    MaterialModel m = MaterialModel::oscillators(std::move(set), name);
    return m;
  }

  // table block
  TableExtension ext;
  std::vector<OpticalRow> rows;
  for (const auto& [no, text] : body) {
    std::istringstream is(text);
    std::string word;
    is >> word;
    if (word == "extension") {
      std::string kind;
      is >> kind;
      if (kind == "none") continue;
      FreeCarrierTerm fc;
      if (kind == "drude")
        fc.model = MetalModel::drude;
      else if (kind == "plasma")
        fc.model = MetalModel::plasma;
      else
        throw file_error(path, "extension must be drude|plasma|none", no);
      if (!(is >> fc.omega_p_ev)) throw file_error(path, "extension needs omega_p", no);
      if (!(is >> fc.gamma_ev)) fc.gamma_ev = 0.0;
      ext.low_freq = fc;
      continue;
    }
    OpticalRow row;
    std::istringstream data(text);
    if (!(data >> row.energy_ev >> row.im_eps))
      throw file_error(path, "expected 'energy_eV im_eps' row", no);
    rows.push_back(row);
  }
  OpticalTable table(std::move(rows), path + "\n" + header);
  return MaterialModel::tabulated(std::move(table), ext, name);
}

MaterialModel load_material(const std::string& name) {
  if (name == "vacuum") return MaterialModel::vacuum();
  if (name == "ideal-metal") return MaterialModel::ideal_metal();
  return parse_material_file(material_file_path(name));
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("fnv1a_file: cannot open " + path);
  std::uint64_t hash = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  return hash;
}

}  // namespace cge
