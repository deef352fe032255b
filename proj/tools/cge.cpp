// cge: Casimir pressures, force gradients and thermal corrections for
// layered plates with optional graphene coatings.
//
// Exit codes: 0 success, 2 config error, 3 convergence failure,
// 4 input-file error.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cge/scan.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::optional<double> a_min, a_max, temperature;
  std::optional<int> points;
  std::optional<std::string> substrate, coated, film, output, format;
  std::optional<int> threads;
  bool trace = false;
  bool print_config = false;
};

void attach_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config_path, "run configuration file");
  cmd->add_option("--a-min", flags.a_min, "smallest separation [m]");
  cmd->add_option("--a-max", flags.a_max, "largest separation [m]");
  cmd->add_option("--points", flags.points, "grid points");
  cmd->add_option("--temperature", flags.temperature,
                  "laboratory temperature [K]");
  cmd->add_option("--substrate", flags.substrate,
                  "substrate material name for both sides");
  cmd->add_option("--coated", flags.coated,
                  "graphene coating: one|both|none")
      ->check(CLI::IsMember({"one", "both", "none"}));
  cmd->add_option("--film", flags.film,
                  "film on side 1 as NAME:THICKNESS_m (or 'none')");
  cmd->add_option("--output", flags.output, "output path ('-' = stdout)");
  cmd->add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", flags.threads, "worker threads (0 = auto)");
  cmd->add_flag("--trace", flags.trace, "dump per-term Matsubara traces");
  cmd->add_flag("--print-config", flags.print_config,
                "print the effective configuration and exit");
}

cge::RunConfig assemble(const std::string& command, const Flags& flags) {
  cge::RunConfig cfg = cge::default_config(command);
  if (!flags.config_path.empty())
    cge::apply_config_file(cfg, flags.config_path);

  if (flags.a_min) cfg.geometry.a_min_m = *flags.a_min;
  if (flags.a_max) cfg.geometry.a_max_m = *flags.a_max;
  if (flags.points) cfg.geometry.points = *flags.points;
  if (flags.temperature) cfg.geometry.temperature_K = *flags.temperature;
  if (flags.substrate) {
    cfg.side1.substrate = *flags.substrate;
    cfg.side2.substrate = *flags.substrate;
  }
  if (flags.coated) {
    cfg.side1.coated = (*flags.coated == "one" || *flags.coated == "both");
    cfg.side2.coated = (*flags.coated == "both");
  }
  if (flags.film) {
    std::string spec = "film = " + *flags.film;
    cfg = cge::parse_config_text("[side1]\n" + spec + "\n", std::move(cfg));
  }
  if (flags.output) cfg.output.path = *flags.output;
  if (flags.format) cfg.output.format = *flags.format;
  if (flags.threads) cfg.threads = *flags.threads;
  if (flags.trace) cfg.trace = true;

  if (!(cfg.geometry.a_min_m > 0.0))
    throw cge::ConfigError("a_min must be > 0");
  if (cfg.geometry.points < 1) throw cge::ConfigError("points must be >= 1");
  if (cfg.geometry.points > 1 &&
      !(cfg.geometry.a_max_m > cfg.geometry.a_min_m))
    throw cge::ConfigError("a_max must exceed a_min");
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cge: Casimir pressure and PFA force-gradient engine for material "
      "stacks with graphene coatings"};
  app.require_subcommand(1);

  const char* commands[] = {"pressure-scan",  "ratio-scan",
                            "gradient-scan",  "thermal-correction",
                            "band-compare",   "dump-eps",
                            "dump-reflection", "dump-polarization"};
  const char* descriptions[] = {
      "|P| between uncoated / one-coated / two-coated plates",
      "P_g/P and P_gg/P against the uncoated pressure",
      "sphere-plate F'/R at T and at 0 K with thermal corrections",
      "same table as gradient-scan (correction-centred view)",
      "model-uncertainty envelopes at T and 0 K, optional data overlay",
      "permittivities on the imaginary frequency axis",
      "TM/TE reflection grids of both sides",
      "graphene polarization-tensor grids"};

  Flags flags;
  for (std::size_t i = 0; i < std::size(commands); ++i)
    attach_flags(app.add_subcommand(commands[i], descriptions[i]), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    const cge::RunConfig cfg = assemble(command, flags);
    if (flags.print_config) {
      std::cout << cge::effective_config_text(cfg);
      return 0;
    }
    const cge::ScanTable table = cge::run_command(cfg);
    cge::write_output(table, cfg);
    if (!table.all_converged) {
      std::cerr << "cge: one or more rows did not converge\n";
      return 3;
    }
    return 0;
  } catch (const cge::InputFileError& e) {
    std::cerr << "cge: " << e.what() << "\n";
    return 4;
  } catch (const cge::ConfigError& e) {
    std::cerr << "cge: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "cge: " << e.what() << "\n";
    return 2;
  }
}
