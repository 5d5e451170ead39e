#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "solenoid/config.hpp"
#include "solenoid/observables.hpp"

namespace solenoid {

Lattice make_lattice(const RunConfig& cfg);
// Beam used for the integral model. Zero field swaps in an l = 0 beam whose
// amplitude is fitted to the configured one.
BeamField make_beam(const RunConfig& cfg, const Lattice& lattice);
// U(1) (or trivial) hopping with max |J| = hop_scale.
HoppingMatrix make_abelian_hopping(const RunConfig& cfg, const Lattice& lattice);
// As above, lifted to SU(2) links when the field asks for it.
HoppingMatrix make_hopping(const RunConfig& cfg, const Lattice& lattice);
StateVector make_initial_state(const RunConfig& cfg, const Lattice& lattice, const HoppingMatrix& h);

struct ProbeSpec {
  std::vector<int> sites;
  double eps_destructive = 0.0;
  double theta_constructive = 0.0;
};

ProbeSpec make_probe(const RunConfig& cfg, const Lattice& lattice);

struct EvolveResult {
  Trajectory trajectory;
  ProbeSpec probe;
  InterferenceMetrics metrics;
  Verdict verdict = Verdict::mixed;
  nlohmann::json metrics_json;
  nlohmann::json manifest;
};

/// Runs the configured evolution without touching the filesystem.
EvolveResult run_evolve(const RunConfig& cfg);

nlohmann::json cmd_fluxmap(const RunConfig& cfg, const std::filesystem::path& out);
EvolveResult cmd_evolve(const RunConfig& cfg, const std::filesystem::path& out);

struct SweepRow {
  double lambda = 0.0;
  double probe_max = 0.0;
  Verdict verdict = Verdict::mixed;
};

/// One evolve run per lambda in out/lambda_<k>/, plus out/sweep.csv.
std::vector<SweepRow> cmd_sweep(const RunConfig& cfg, const std::vector<double>& lambdas,
                                const std::filesystem::path& out, int workers);

struct OracleReport {
  nlohmann::json report;
  bool passed = false;
};

OracleReport cmd_oracle_check(const RunConfig& cfg, const std::filesystem::path& out);

}  // namespace solenoid
