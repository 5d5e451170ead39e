#include "solenoid/commands.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "solenoid/dynamics.hpp"
#include "solenoid/errors.hpp"
#include "solenoid/gauge.hpp"
#include "solenoid/io.hpp"
#include "solenoid/parallel.hpp"

namespace solenoid {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNormDriftLimit = 1e-8;
constexpr double kEnergyDriftLimit = 1e-7;
constexpr double kHermiticityLimit = 1e-12;
constexpr double kMirrorLimit = 1e-7;
constexpr double kCentreRegionRadius = 3.0;  // lattice constants

int beam_winding(const RunConfig& cfg) {
  return cfg.field == FieldType::zero ? 0 : cfg.beam.modes.front().l;
}

json state_summary(const Lattice& lattice, const HoppingMatrix& h) {
  return {{"kind", std::string(to_string(lattice.kind()))},
          {"sites", lattice.size()},
          {"links", lattice.links().size()},
          {"spin_dim", h.spin_dim()},
          {"field", std::string(to_string(h.field()))}};
}

json series_json(const InterferenceMetrics& m) {
  json times = json::array();
  json values = json::array();
  for (const auto& p : m.series) {
    times.push_back(p.time);
    values.push_back(p.value);
  }
  return {{"time", times}, {"value", values}};
}

Heatmap square_map(const Lattice& lattice, const std::vector<double>& per_site) {
  const int n = lattice.extent();
  Heatmap map{n, n, std::vector<double>(static_cast<std::size_t>(n * n))};
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) map.values[(n - 1 - r) * n + c] = per_site[lattice.square_index(r, c)];
  }
  return map;
}

}  // namespace

Lattice make_lattice(const RunConfig& cfg) {
  switch (cfg.geometry.kind) {
    case LatticeKind::ring: return build_ring(cfg.geometry.sites, cfg.lattice_constant);
    case LatticeKind::square: return build_square(cfg.geometry.side, cfg.lattice_constant, cfg.beam.center_offset);
    case LatticeKind::dimer: return build_dimer(cfg.lattice_constant);
  }
  throw ValidationError("cli_io: unknown geometry");
}

BeamField make_beam(const RunConfig& cfg, const Lattice& lattice) {
  BeamField beam;
  beam.center = lattice.beam_center();
  beam.convention = cfg.beam.convention;
  if (cfg.field == FieldType::zero) {
    const auto& m = cfg.beam.modes.front();
    const AmplitudeFit fit = match_l0_amplitude(lattice, LGMode{m.p, m.l, cfg.beam.waist}, cfg.beam.convention);
    beam.terms.push_back({LGMode{0, 0, cfg.beam.waist}, fit.c0});
    if (fit.c1 != 0.0) beam.terms.push_back({LGMode{1, 0, cfg.beam.waist}, fit.c1});
  } else {
    for (const auto& m : cfg.beam.modes) beam.terms.push_back({LGMode{m.p, m.l, cfg.beam.waist}, m.coefficient});
  }
  validate(beam);
  return beam;
}

HoppingMatrix make_abelian_hopping(const RunConfig& cfg, const Lattice& lattice) {
  if (cfg.hopping.mode == HoppingMode::phase_only) {
    return phase_only_hopping(lattice, beam_winding(cfg), cfg.hop_scale);
  }
  const BeamField beam = make_beam(cfg, lattice);
  const HoppingMatrix raw = compute_hopping(lattice, beam, cfg.hopping.sigma, cfg.hopping.quadrature, 1.0);
  return normalize_hopping(raw, cfg.hop_scale);
}

HoppingMatrix make_hopping(const RunConfig& cfg, const Lattice& lattice) {
  HoppingMatrix h = make_abelian_hopping(cfg, lattice);
  if (cfg.field == FieldType::su2) return build_nonabelian(h);
  return h;
}

StateVector make_initial_state(const RunConfig& cfg, const Lattice& lattice, const HoppingMatrix& h) {
  if (cfg.packet.site < 0 || cfg.packet.site >= lattice.size()) {
    throw ValidationError("cli_io: packet.site " + std::to_string(cfg.packet.site) + " is outside the lattice");
  }
  StateVector psi = prepare_packet(lattice, cfg.packet.site, cfg.packet.width, h.spin_dim(), cfg.packet.spin_weights);
  if (cfg.packet.transport) psi = transport_phases(psi, lattice, h, cfg.packet.site);
  return psi;
}

ProbeSpec make_probe(const RunConfig& cfg, const Lattice& lattice) {
  ProbeSpec probe;
  const int start = cfg.packet.site;
  switch (lattice.kind()) {
    case LatticeKind::ring:
      probe.sites = {(start + lattice.size() / 2) % lattice.size()};
      probe.theta_constructive = 2.0 / lattice.size();
      break;
    case LatticeKind::square: {
      probe.sites = opposite_block(lattice, start);
      const auto annulus = start_annulus(lattice, start);
      probe.theta_constructive = 2.0 * static_cast<double>(probe.sites.size()) / static_cast<double>(annulus.size());
      break;
    }
    case LatticeKind::dimer:
      probe.sites = {1 - start};
      probe.theta_constructive = 0.5;
      break;
  }
  const bool exact_cancellation = lattice.kind() == LatticeKind::ring && cfg.hopping.mode == HoppingMode::phase_only &&
                                  cfg.evolve.lambda == 0.0 && cfg.field == FieldType::u1;
  probe.eps_destructive = exact_cancellation ? 1e-6 : 5e-3;
  if (cfg.outputs.eps_destructive) probe.eps_destructive = *cfg.outputs.eps_destructive;
  if (cfg.outputs.theta_constructive) probe.theta_constructive = *cfg.outputs.theta_constructive;
  return probe;
}

EvolveResult run_evolve(const RunConfig& cfg) {
  const Lattice lattice = make_lattice(cfg);
  const HoppingMatrix h = make_hopping(cfg, lattice);
  const StateVector psi0 = make_initial_state(cfg, lattice, h);

  EvolveResult res;
  res.trajectory = cfg.evolve.lambda == 0.0 ? evolve_linear(h, psi0, cfg.evolve) : evolve_gpe(h, psi0, cfg.evolve);
  res.probe = make_probe(cfg, lattice);
  res.metrics = probe_region_series(res.trajectory, res.probe.sites);
  res.verdict = interference_verdict(res.metrics, res.probe.eps_destructive, res.probe.theta_constructive);

  json metrics = {
      {"probe_sites", res.probe.sites},
      {"eps_destructive", res.probe.eps_destructive},
      {"theta_constructive", res.probe.theta_constructive},
      {"verdict", std::string(to_string(res.verdict))},
      {"probe_max", res.metrics.max},
      {"time_of_max", res.metrics.time_of_max},
      {"probe_mean", res.metrics.mean},
      {"series", series_json(res.metrics)},
  };
  if (h.spin_dim() == 2) {
    // spin texture around the probe: sites within graph distance 3
    const int centre = lattice.kind() == LatticeKind::square ? opposite_site(lattice, cfg.packet.site)
                                                             : res.probe.sites.front();
    const auto dist = lattice.graph_distances(centre);
    std::vector<int> near;
    for (int i = 0; i < lattice.size(); ++i) {
      if (dist[i] >= 0 && dist[i] <= 3) near.push_back(i);
    }
    double charge_max = 0.0;
    double spin_min = 0.0;
    double spin_max = 0.0;
    for (const auto& rec : res.trajectory.records) {
      const auto charge = charge_density(rec);
      const auto spin = spin_density(rec);
      double c = 0.0;
      for (int s : res.probe.sites) c += charge[s];
      charge_max = std::max(charge_max, c);
      for (int s : near) {
        spin_min = std::min(spin_min, spin[s]);
        spin_max = std::max(spin_max, spin[s]);
      }
    }
    metrics["spin_texture"] = {
        {"sites", near}, {"charge_max", charge_max}, {"spin_min", spin_min}, {"spin_max", spin_max}};
  }
  res.metrics_json = metrics;

  const auto& checks = res.trajectory.checks;
  const double herm = h.hermiticity_error();
  json invariants = {
      {"norm_drift", checks.norm_drift},
      {"norm_drift_ok", checks.norm_drift < kNormDriftLimit},
      {"energy_drift", checks.energy_drift},
      {"energy_drift_ok", checks.energy_drift < kEnergyDriftLimit},
      {"hermiticity_error", herm},
      {"hermiticity_ok", herm <= kHermiticityLimit},
  };
  if (lattice.kind() == LatticeKind::ring) {
    const double mirror = ring_mirror_error(res.trajectory, cfg.packet.site);
    invariants["mirror_error"] = mirror;
    invariants["mirror_ok"] = mirror < kMirrorLimit;
  }
  res.manifest = {
      {"config", to_json(cfg)},
      {"lattice", state_summary(lattice, h)},
      {"hopping", {{"max_row_sum", h.max_row_sum()}, {"hop_scale", h.hop_scale()}}},
      {"time_unit", {{"name", "hbar/E_R"}, {"E_R_over_hbar", "2*pi*900 Hz"}, {"seconds", 1.0 / (kTwoPi * 900.0)}}},
      {"snapshots", res.trajectory.records.size()},
      {"invariants", invariants},
  };
  return res;
}

EvolveResult cmd_evolve(const RunConfig& cfg, const fs::path& out) {
  EvolveResult res = run_evolve(cfg);
  const Trajectory& traj = res.trajectory;
  const Lattice lattice = make_lattice(cfg);
  std::vector<std::string> files{"metrics.json", "manifest.json"};

  std::vector<double> times;
  for (const auto& rec : traj.records) times.push_back(rec.time);
  if (cfg.outputs.csv) {
    if (traj.meta.spin_dim == 1) {
      std::vector<std::vector<double>> rows;
      for (const auto& rec : traj.records) rows.push_back(rec.values);
      write_text(out / "density.csv", density_csv(times, rows));
      files.push_back("density.csv");
    } else {
      std::vector<std::vector<double>> up, down, charge, spin;
      for (const auto& rec : traj.records) {
        std::vector<double> a, b;
        for (int i = 0; i < rec.num_sites(); ++i) {
          a.push_back(rec.at(i, 0));
          b.push_back(rec.at(i, 1));
        }
        up.push_back(std::move(a));
        down.push_back(std::move(b));
        charge.push_back(charge_density(rec));
        spin.push_back(spin_density(rec));
      }
      write_text(out / "density_spin1.csv", density_csv(times, up));
      write_text(out / "density_spin2.csv", density_csv(times, down));
      write_text(out / "charge.csv", density_csv(times, charge));
      write_text(out / "spin.csv", density_csv(times, spin));
      files.insert(files.end(), {"density_spin1.csv", "density_spin2.csv", "charge.csv", "spin.csv"});
    }
  }

  if (cfg.outputs.images && !traj.records.empty()) {
    if (lattice.kind() == LatticeKind::ring) {
      Heatmap kymo{lattice.size(), static_cast<int>(traj.records.size()), {}};
      for (const auto& rec : traj.records) {
        const auto row = traj.meta.spin_dim == 2 ? spin_density(rec) : rec.totals();
        kymo.values.insert(kymo.values.end(), row.begin(), row.end());
      }
      write_ppm(out / "kymograph.ppm", kymo, traj.meta.spin_dim == 2);
      files.push_back("kymograph.ppm");
    } else if (lattice.kind() == LatticeKind::square) {
      const auto& last = traj.records.back();
      if (traj.meta.spin_dim == 2) {
        std::vector<double> a, b;
        for (int i = 0; i < last.num_sites(); ++i) {
          a.push_back(last.at(i, 0));
          b.push_back(last.at(i, 1));
        }
        write_ppm(out / "density_final.ppm", side_by_side(square_map(lattice, a), square_map(lattice, b)), false);
        write_ppm(out / "spin_final.ppm", square_map(lattice, spin_density(last)), true);
        files.insert(files.end(), {"density_final.ppm", "spin_final.ppm"});
      } else {
        write_ppm(out / "density_final.ppm", square_map(lattice, last.totals()), false);
        files.push_back("density_final.ppm");
      }
    }
  }

  res.manifest["files"] = files;
  write_json(out / "metrics.json", res.metrics_json);
  write_json(out / "manifest.json", res.manifest);
  return res;
}

json cmd_fluxmap(const RunConfig& cfg, const fs::path& out) {
  if (cfg.geometry.kind != LatticeKind::square) {
    throw ValidationError("cli_io: fluxmap needs geometry.kind = square (a " +
                          std::string(to_string(cfg.geometry.kind)) + " has no plaquettes)");
  }
  const Lattice lattice = make_lattice(cfg);
  const HoppingMatrix h = make_abelian_hopping(cfg, lattice);
  const FluxMap map = flux_map(lattice, h);

  std::string csv = "row,col,flux\n";
  for (int r = 0; r < map.rows; ++r) {
    for (int c = 0; c < map.cols; ++c) {
      csv += std::to_string(r) + "," + std::to_string(c) + "," + format_number(map.at(r, c)) + "\n";
    }
  }
  write_text(out / "fluxmap.csv", csv);
  write_text(out / "hopping.csv", hopping_csv(h));

  const double a = lattice.spacing();
  double region_sum = 0.0;
  int region_count = 0;
  double far_max = 0.0;
  int far_row = -1, far_col = -1;
  for (const auto& p : lattice.plaquettes()) {
    const Vec2 centre = lattice.site(p.sites[0]).position + Vec2{0.5 * a, 0.5 * a};
    const double r = norm(centre - lattice.beam_center());
    const double f = map.at(p.row, p.col);
    if (r <= kCentreRegionRadius * a) {
      region_sum += f;
      ++region_count;
    } else if (std::abs(f) > far_max) {
      far_max = std::abs(f);
      far_row = p.row;
      far_col = p.col;
    }
  }

  const Plaquette& centre = centre_plaquette(lattice);
  json blocks = json::object();
  for (int k = 2; k <= 6; ++k) {
    const int row0 = std::clamp(centre.row - (k - 1) / 2, 0, std::max(0, map.rows - k));
    const int col0 = std::clamp(centre.col - (k - 1) / 2, 0, std::max(0, map.cols - k));
    if (k <= map.rows) blocks[std::to_string(k)] = wrap_angle(map.block_sum(row0, col0, k));
  }

  json summary = {
      {"config", to_json(cfg)},
      {"centre_plaquette", {{"row", centre.row}, {"col", centre.col}, {"flux", map.at(centre.row, centre.col)}}},
      {"loop_phase", map.loops},
      {"centre_region", {{"radius", kCentreRegionRadius * a}, {"plaquettes", region_count}, {"sum", wrap_angle(region_sum)}}},
      {"block_sums", blocks},
      {"far_cells", {{"min_radius", kCentreRegionRadius * a}, {"max_abs_flux", far_max}, {"row", far_row}, {"col", far_col}}},
      {"hermiticity_error", h.hermiticity_error()},
  };
  std::vector<std::string> files{"fluxmap.csv", "hopping.csv", "summary.json"};
  if (cfg.outputs.images) {
    Heatmap img{map.cols, map.rows, std::vector<double>(map.flux.size())};
    for (int r = 0; r < map.rows; ++r) {
      for (int c = 0; c < map.cols; ++c) img.values[(map.rows - 1 - r) * map.cols + c] = map.at(r, c);
    }
    write_ppm(out / "fluxmap.ppm", img, true);
    files.push_back("fluxmap.ppm");
  }
  summary["files"] = files;
  write_json(out / "summary.json", summary);
  return summary;
}

std::vector<SweepRow> cmd_sweep(const RunConfig& cfg, const std::vector<double>& lambdas, const fs::path& out,
                                int workers) {
  if (lambdas.empty()) throw ValidationError("cli_io: sweep needs a non-empty lambda list");
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw ValidationError("cli_io: sweep lambda must be finite and >= 0");
  }
  std::vector<SweepRow> rows(lambdas.size());
  parallel_for(lambdas.size(), workers, [&](std::size_t k) {
    RunConfig run = cfg;
    run.evolve.lambda = lambdas[k];
    const EvolveResult res = cmd_evolve(run, out / ("lambda_" + std::to_string(k)));
    rows[k] = {lambdas[k], res.metrics.max, res.verdict};
  });
  std::string csv = "lambda,probe_max,verdict\n";
  for (const auto& r : rows) {
    csv += format_number(r.lambda) + "," + format_number(r.probe_max) + "," + std::string(to_string(r.verdict)) + "\n";
  }
  write_text(out / "sweep.csv", csv);
  return rows;
}

OracleReport cmd_oracle_check(const RunConfig& cfg, const fs::path& out) {
  const Lattice lattice = make_lattice(cfg);
  const HoppingMatrix h = make_hopping(cfg, lattice);
  if (h.dimension() > kExactDimensionCap) {
    throw ValidationError("cli_io: oracle-check needs dimension <= " + std::to_string(kExactDimensionCap) + " (got " +
                          std::to_string(h.dimension()) + ")");
  }
  const StateVector psi0 = make_initial_state(cfg, lattice, h);
  const double tol = cfg.oracle.tolerance;

  OracleReport rep;
  rep.passed = true;
  json checkpoints = json::array();
  for (double t : cfg.oracle.times) {
    EvolveParams p = cfg.evolve;
    p.lambda = 0.0;
    p.t_end = t;
    p.record_stride = std::max(1, static_cast<int>(std::lround(t / p.dt)));
    const Trajectory traj = evolve_linear(h, psi0, p);
    const StateVector exact = exact_evolve_small(h, psi0, t);
    double err = 0.0;
    for (std::size_t i = 0; i < exact.amplitudes.size(); ++i) {
      err = std::max(err, std::abs(traj.final_state.amplitudes[i] - exact.amplitudes[i]));
    }
    rep.passed = rep.passed && err < tol;
    checkpoints.push_back({{"time", t}, {"max_amplitude_error", err}, {"passed", err < tol}});
  }
  rep.report = {
      {"config", to_json(cfg)},
      {"dimension", h.dimension()},
      {"tolerance", tol},
      {"checkpoints", checkpoints},
  };

  if (lattice.kind() == LatticeKind::dimer && cfg.packet.width == 0) {
    // all weight starts on one site: n_other(t) = sin^2(|J| t)
    const double J = h.spin_dim() == 1 ? std::abs(h.amplitude(0)) : std::abs(h.block(0)(1, 0));
    EvolveParams p = cfg.evolve;
    p.lambda = 0.0;
    p.record_stride = 1;
    const Trajectory traj = evolve_linear(h, psi0, p);
    const int other = 1 - cfg.packet.site;
    double err = 0.0;
    for (const auto& rec : traj.records) {
      const double s = std::sin(J * rec.time);
      err = std::max(err, std::abs(rec.site_total(other) - s * s));
    }
    rep.passed = rep.passed && err < tol;
    rep.report["analytic_two_site"] = {
        {"hopping", J}, {"t_end", p.t_end}, {"max_density_error", err}, {"passed", err < tol}};
  }
  rep.report["passed"] = rep.passed;
  write_json(out / "report.json", rep.report);
  return rep;
}

}  // namespace solenoid
