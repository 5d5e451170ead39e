#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "solenoid/dynamics.hpp"
#include "solenoid/gauge.hpp"
#include "solenoid/hopping.hpp"
#include "solenoid/lattice.hpp"
#include "solenoid/lg_optics.hpp"

namespace solenoid {

struct GeometryConfig {
  LatticeKind kind = LatticeKind::ring;
  int sites = 100;  // ring
  int side = 40;    // square
};

struct BeamModeConfig {
  int p = 0;
  int l = 1;
  Complex coefficient{1.0, 0.0};
};

struct BeamConfig {
  std::vector<BeamModeConfig> modes{BeamModeConfig{}};
  double waist = 0.0;  // resolved: N_S a / 2 (square), ring radius (ring), a (dimer)
  Vec2 center_offset;
  ExponentConvention convention = ExponentConvention::paper;
};

enum class HoppingMode { phase_only, integral };

struct HoppingConfig {
  HoppingMode mode = HoppingMode::phase_only;
  double sigma = 0.25;  // Wannier width, lattice units; default a / 4
  QuadratureSpec quadrature;
};

struct PacketConfig {
  int site = 0;
  int width = 3;
  std::array<double, 2> spin_weights{1.0, 1.0};
  bool transport = true;  // dress with zero-current link phases
};

struct OutputConfig {
  std::string directory = "out";
  bool csv = true;
  bool images = false;
  std::optional<double> eps_destructive;
  std::optional<double> theta_constructive;
};

struct OracleConfig {
  std::vector<double> times{10.0, 100.0};
  double tolerance = 1e-8;
};

struct RunConfig {
  GeometryConfig geometry;
  double lattice_constant = 1.0;
  BeamConfig beam;
  FieldType field = FieldType::u1;
  HoppingConfig hopping;
  double hop_scale = 0.05;
  PacketConfig packet;
  EvolveParams evolve;
  OutputConfig outputs;
  OracleConfig oracle;
  std::vector<double> sweep_lambdas;
};

/// Parses a run configuration, filling defaults that depend on the geometry and
/// re-validating every module precondition. Unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved configuration (no output directory), as embedded in manifests.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace solenoid
