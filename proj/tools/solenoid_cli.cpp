// solenoid: flux maps, wavepacket evolution, interaction sweeps and oracle checks.
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "solenoid/commands.hpp"
#include "solenoid/errors.hpp"
#include "solenoid/parallel.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

struct Args {
  std::string config;
  std::string out;
  std::vector<double> lambdas;
  bool lambdas_given = false;
};

void add_common(CLI::App* sub, Args& args) {
  sub->add_option("--config", args.config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", args.out, "output directory (default: outputs.directory from the config)");
}

std::filesystem::path out_dir(const Args& args, const solenoid::RunConfig& cfg) {
  return args.out.empty() ? std::filesystem::path(cfg.outputs.directory) : std::filesystem::path(args.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laser-assisted tunnelling on optical lattices driven by Laguerre-Gauss beams"};
  app.require_subcommand(1);
  Args args;
  auto* fluxmap = app.add_subcommand("fluxmap", "plaquette flux map of a square lattice");
  auto* evolve = app.add_subcommand("evolve", "wavepacket evolution and interference verdict");
  auto* sweep = app.add_subcommand("sweep", "one evolve run per interaction strength");
  auto* oracle = app.add_subcommand("oracle-check", "integrator against dense diagonalization");
  for (auto* sub : {fluxmap, evolve, sweep, oracle}) add_common(sub, args);
  sweep->add_option("--lambdas", args.lambdas, "interaction strengths (default: sweep.lambdas from the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    const solenoid::RunConfig cfg = solenoid::load_config(args.config);
    const auto out = out_dir(args, cfg);
    if (fluxmap->parsed()) {
      const auto summary = solenoid::cmd_fluxmap(cfg, out);
      std::cout << "centre-region flux sum " << summary["centre_region"]["sum"].get<double>() << "\n";
    } else if (evolve->parsed()) {
      const auto res = solenoid::cmd_evolve(cfg, out);
      std::cout << "verdict " << solenoid::to_string(res.verdict) << ", probe max " << res.metrics.max << "\n";
    } else if (sweep->parsed()) {
      const auto lambdas = sweep->count("--lambdas") > 0 ? args.lambdas : cfg.sweep_lambdas;
      const auto rows = solenoid::cmd_sweep(cfg, lambdas, out, solenoid::worker_count());
      for (const auto& r : rows) {
        std::cout << "lambda " << r.lambda << ": " << solenoid::to_string(r.verdict) << ", probe max " << r.probe_max
                  << "\n";
      }
    } else if (oracle->parsed()) {
      const auto rep = solenoid::cmd_oracle_check(cfg, out);
      std::cout << (rep.passed ? "oracle check passed" : "oracle check FAILED") << "\n";
      if (!rep.passed) return kExitNumerical;
    }
  } catch (const solenoid::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const solenoid::NumericalGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
