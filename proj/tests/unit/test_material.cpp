#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cge/material.hpp"
#include "cge/material_registry.hpp"
#include "doctest.h"

using namespace cge;

TEST_CASE("drude permittivity closed form") {
  // plasma special case: xi = wp forces eps = 2
  CHECK(eps_drude(9.0, 9.0, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(eps_drude(9.0, 9.0, 0.035) ==
        doctest::Approx(1.0 + 81.0 / (9.0 * 9.035)).epsilon(1e-15));
  // high-frequency transparency, approached from above
  CHECK(eps_drude(1e6, 9.0, 0.035) > 1.0);
  CHECK(eps_drude(1e6, 9.0, 0.035) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(eps_drude(0.0, 9.0, 0.035), std::domain_error);
  CHECK_THROWS_AS(eps_drude(-1.0, 9.0, 0.035), std::domain_error);
}

TEST_CASE("plasma permittivity closed form") {
  CHECK(eps_plasma(9.0, 9.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(eps_plasma(4.5, 9.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(eps_plasma(90.0, 9.0) == doctest::Approx(1.01).epsilon(1e-15));
  CHECK_THROWS_AS(eps_plasma(0.0, 9.0), std::domain_error);
}

TEST_CASE("drude with zero relaxation equals plasma at every frequency") {
  for (double xi = 1e-3; xi < 1e3; xi *= 3.7) {
    CHECK(eps_drude(xi, 9.0, 0.0) ==
          doctest::Approx(eps_plasma(xi, 9.0)).epsilon(1e-15));
  }
}

TEST_CASE("oscillator sets reproduce the handbook static permittivities") {
  CHECK(load_material("fused-silica").zero_class().eps0 ==
        doctest::Approx(3.8).epsilon(0.03));
  CHECK(load_material("sapphire").zero_class().eps0 ==
        doctest::Approx(10.1).epsilon(0.02));
  CHECK(load_material("mica").zero_class().eps0 ==
        doctest::Approx(5.4).epsilon(0.02));
  CHECK(load_material("silicon").zero_class().eps0 ==
        doctest::Approx(11.7).epsilon(0.02));
  CHECK(load_material("fused-silica").zero_class().kind ==
        ZeroFrequencyClass::Kind::finite_static);
}

TEST_CASE("oscillator evaluation: static value exact, eps_inf at infinity") {
  OscillatorSet set;
  set.eps_infinity = 1.25;
  set.terms = {{2.0, 5.0, 1.0}, {0.5, 0.2, 0.0}};
  CHECK(eps_oscillator(0.0, set) == doctest::Approx(3.75).epsilon(1e-15));
  CHECK(eps_oscillator(1e7, set) == doctest::Approx(1.25).epsilon(1e-9));
  const MaterialModel m = MaterialModel::oscillators(set, "synthetic");
  CHECK(m.zero_class().eps0 == doctest::Approx(3.75).epsilon(1e-15));
}

TEST_CASE("every registry material is >= 1 and non-increasing on a log grid") {
  for (const char* name : {"gold", "silicon", "silicon-doped", "sapphire",
                           "mica", "fused-silica", "vacuum"}) {
    const MaterialModel m = load_material(name);
    double prev = std::numeric_limits<double>::infinity();
    for (double xi = 1e-3; xi < 3e3; xi *= 1.6) {
      const double eps = m.eps(xi);
      CHECK(eps >= 1.0);
      CHECK(eps <= prev * (1.0 + 1e-12));
      prev = eps;
    }
  }
}

TEST_CASE("kramers-kronig of a synthetic lorentzian matches the analytic form") {
  // table built from the known Im eps of a single damped oscillator
  const double C = 2.0, w0 = 5.0, g0 = 1.0;
  std::vector<OpticalRow> rows;
  const int n = 400;
  for (int i = 0; i < n; ++i) {
    const double w = 1e-2 * std::pow(1e5, static_cast<double>(i) / (n - 1));
    const double im = C * w0 * w0 * g0 * w /
                      (std::pow(w0 * w0 - w * w, 2) + g0 * g0 * w * w);
    rows.push_back({w, im});
  }
  OpticalTable table(std::move(rows), "synthetic lorentzian");
  const TableExtension none;
  for (double xi : {0.5, 1.0, 3.0, 20.0}) {
    const double analytic = 1.0 + C * w0 * w0 / (w0 * w0 + xi * xi + g0 * xi);
    CHECK(eps_tabulated(xi, table, none) ==
          doctest::Approx(analytic).epsilon(5e-3));
  }
  // vacuum: empty absorption
  OpticalTable empty({{0.1, 0.0}, {1.0, 0.0}, {10.0, 0.0}}, "vacuum");
  CHECK(eps_tabulated(1.0, empty, none) == doctest::Approx(1.0));
  CHECK_THROWS_AS(eps_tabulated(0.0, table, none), std::domain_error);
}

TEST_CASE("gold table: KK with Drude extension reproduces the source model") {
  const MaterialModel gold = load_material("gold");
  const double om[6] = {3.05, 4.15, 5.4, 8.5, 13.5, 21.5};
  const double gj[6] = {7.091, 41.46, 2.700, 154.7, 44.55, 309.6};
  const double mj[6] = {0.75, 1.85, 1.0, 7.0, 6.0, 9.0};
  for (double xi : {0.1624, 0.5, 2.0, 10.0, 50.0}) {
    double model = 1.0 + 81.0 / (xi * (xi + 0.035));
    for (int j = 0; j < 6; ++j)
      model += gj[j] / (om[j] * om[j] + xi * xi + mj[j] * xi);
    CHECK(gold.eps(xi) == doctest::Approx(model).epsilon(2e-3));
  }
  CHECK(gold.zero_class().kind == ZeroFrequencyClass::Kind::drude_like);
}

TEST_CASE("plasma extrapolation swaps the free-carrier pole") {
  const MaterialModel gold = load_material("gold");
  const MaterialModel gp = gold.with_metal_model(MetalModel::plasma);
  CHECK(gp.zero_class().kind == ZeroFrequencyClass::Kind::plasma_like);
  CHECK(gp.zero_class().omega_p_ev == doctest::Approx(9.0));
  for (double xi : {0.2, 1.0, 5.0}) {
    const double swap = 81.0 / (xi * xi) - 81.0 / (xi * (xi + 0.035));
    CHECK(gp.eps(xi) - gold.eps(xi) == doctest::Approx(swap).epsilon(1e-10));
  }
  // doped silicon carries a Drude free-carrier term over the lattice
  const MaterialModel dsi = load_material("silicon-doped");
  CHECK(dsi.zero_class().kind == ZeroFrequencyClass::Kind::drude_like);
  auto fc = dsi.free_carriers();
  REQUIRE(fc.has_value());
  CHECK(fc->omega_p_ev == doctest::Approx(0.25));
  const MaterialModel widened = dsi.with_free_carrier_omega_p(0.30);
  CHECK(widened.free_carriers()->omega_p_ev == doctest::Approx(0.30));
  CHECK(widened.eps(0.5) > dsi.eps(0.5));
}

TEST_CASE("optical table invariants") {
  CHECK_THROWS_AS(OpticalTable({{1.0, 0.1}}, "one row"),
                  std::invalid_argument);
  CHECK_THROWS_AS(OpticalTable({{1.0, 0.1}, {1.0, 0.2}}, "not increasing"),
                  std::invalid_argument);
  CHECK_THROWS_AS(OpticalTable({{1.0, 0.1}, {2.0, -0.2}}, "negative"),
                  std::invalid_argument);
  CHECK_THROWS_AS(OpticalTable({{-1.0, 0.1}, {2.0, 0.2}}, "nonpositive"),
                  std::invalid_argument);
  // narrow tables carry a provenance warning
  OpticalTable narrow({{1.0, 0.1}, {2.0, 0.2}}, "narrow");
  CHECK(narrow.provenance().find("less than one decade") !=
        std::string::npos);
}

TEST_CASE("material file parser reports bad input with line numbers") {
  auto write_file = [](const std::string& text) {
    const std::string path = "bad_material_test.dat";
    std::ofstream out(path);
    out << text;
    return path;
  };
  const std::string path = write_file("# comment only\n");
  CHECK_THROWS_WITH_AS(parse_material_file(path).eps(1.0),
                       doctest::Contains("no data block"),
                       std::runtime_error);
  write_file("lorentz\n1.0\n");
  CHECK_THROWS_WITH_AS(parse_material_file(path),
                       doctest::Contains("'oscillator' or 'table'"),
                       std::runtime_error);
  write_file("oscillator\n0.5\n");
  CHECK_THROWS_WITH_AS(parse_material_file(path),
                       doctest::Contains("eps_infinity"),
                       std::runtime_error);
  write_file("oscillator\n1.0\n2.0 5.0\n");
  CHECK_THROWS_WITH_AS(parse_material_file(path),
                       doctest::Contains("triple"), std::runtime_error);
  write_file("table\nextension maybe 9.0 0.035\n0.1 1.0\n1.0 0.5\n");
  CHECK_THROWS_WITH_AS(parse_material_file(path),
                       doctest::Contains("drude|plasma|none"),
                       std::runtime_error);
  write_file("table\n0.1 1.0\nnot_a_number 0.5\n");
  CHECK_THROWS_WITH_AS(parse_material_file(path), doctest::Contains("row"),
                       std::runtime_error);
  // a well-formed file parses and evaluates
  write_file("# provenance\noscillator\n1.0\n2.703 0.1 0.0\n");
  CHECK(parse_material_file(path).zero_class().eps0 ==
        doctest::Approx(3.703));
  std::remove(path.c_str());
}

TEST_CASE("registry resolves names and rejects unknowns") {
  CHECK_NOTHROW(load_material("gold"));
  CHECK(load_material("vacuum").eps(1.0) == doctest::Approx(1.0));
  CHECK(load_material("ideal-metal").is_ideal());
  CHECK_THROWS(load_material("unobtainium"));
  CHECK(!material_file_path("gold").empty());
  CHECK(material_file_path("vacuum").empty());
  CHECK(fnv1a_file(material_file_path("gold")) ==
        fnv1a_file(material_file_path("gold")));
}

TEST_CASE("CGE_MATERIAL_PATH prepends the search path") {
  std::filesystem::create_directory("override_dir");
  {
    std::ofstream out("override_dir/gold.dat");
    out << "# user override\noscillator\n1.0\n1.5 2.0 0.0\n";
  }
  const char* saved = std::getenv("CGE_MATERIAL_PATH");
  setenv("CGE_MATERIAL_PATH", "override_dir", 1);
  CHECK(load_material("gold").zero_class().eps0 == doctest::Approx(2.5));
  // a direct path beats the registry either way
  CHECK(load_material("override_dir/gold.dat").zero_class().eps0 ==
        doctest::Approx(2.5));
  if (saved)
    setenv("CGE_MATERIAL_PATH", saved, 1);
  else
    unsetenv("CGE_MATERIAL_PATH");
  CHECK(load_material("gold").zero_class().kind ==
        ZeroFrequencyClass::Kind::drude_like);
  std::filesystem::remove_all("override_dir");
}
