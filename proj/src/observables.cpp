#include "solenoid/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "solenoid/errors.hpp"

namespace solenoid {

double DensityRecord::site_total(int site) const {
  double s = 0.0;
  for (int c = 0; c < spin_dim; ++c) s += at(site, c);
  return s;
}

std::vector<double> DensityRecord::totals() const {
  std::vector<double> out(static_cast<std::size_t>(num_sites()));
  for (int i = 0; i < num_sites(); ++i) out[static_cast<std::size_t>(i)] = site_total(i);
  return out;
}

double DensityRecord::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

DensityRecord density(const StateVector& psi, double time) {
  DensityRecord rec{time, psi.spin_dim, std::vector<double>(psi.amplitudes.size())};
  for (std::size_t k = 0; k < psi.amplitudes.size(); ++k) rec.values[k] = std::norm(psi.amplitudes[k]);
  return rec;
}

namespace {

void require_spinor(const DensityRecord& rec, const char* what) {
  if (rec.spin_dim != 2) {
    throw ValidationError(std::string("observables: ") + what + " density needs two spin components");
  }
}

InterferenceMetrics summarize(const Trajectory& traj, std::vector<int> sites) {
  InterferenceMetrics m;
  m.probe_sites = std::move(sites);
  m.max = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (const auto& rec : traj.records) {
    double v = 0.0;
    for (int s : m.probe_sites) v += rec.site_total(s);
    m.series.push_back({rec.time, v});
    total += v;
    if (v > m.max) {
      m.max = v;
      m.time_of_max = rec.time;
    }
  }
  if (m.series.empty()) throw ValidationError("observables: trajectory has no snapshots");
  m.mean = total / static_cast<double>(m.series.size());
  return m;
}

}  // namespace

std::vector<double> charge_density(const DensityRecord& rec) {
  require_spinor(rec, "charge");
  std::vector<double> out(static_cast<std::size_t>(rec.num_sites()));
  for (int i = 0; i < rec.num_sites(); ++i) out[static_cast<std::size_t>(i)] = rec.at(i, 0) + rec.at(i, 1);
  return out;
}

std::vector<double> spin_density(const DensityRecord& rec) {
  require_spinor(rec, "spin");
  std::vector<double> out(static_cast<std::size_t>(rec.num_sites()));
  for (int i = 0; i < rec.num_sites(); ++i) out[static_cast<std::size_t>(i)] = rec.at(i, 0) - rec.at(i, 1);
  return out;
}

InterferenceMetrics opposite_site_series(const Trajectory& traj, int start_site) {
  if (traj.meta.lattice_kind != LatticeKind::ring) {
    throw ValidationError("observables: opposite_site_series needs a ring; use probe_region_series for " +
                          std::string(to_string(traj.meta.lattice_kind)) + " lattices");
  }
  const int n = traj.meta.num_sites;
  if (start_site < 0 || start_site >= n) throw ValidationError("observables: start site is outside the ring");
  return summarize(traj, {(start_site + n / 2) % n});
}

InterferenceMetrics probe_region_series(const Trajectory& traj, std::span<const int> region) {
  if (region.empty()) throw ValidationError("observables: probe region is empty");
  for (int s : region) {
    if (s < 0 || s >= traj.meta.num_sites) {
      throw ValidationError("observables: probe site " + std::to_string(s) + " is outside the lattice");
    }
  }
  return summarize(traj, {region.begin(), region.end()});
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::destructive: return "destructive";
    case Verdict::constructive: return "constructive";
    case Verdict::mixed: return "mixed";
  }
  return "unknown";
}

Verdict interference_verdict(const InterferenceMetrics& metrics, double eps_destructive, double theta_constructive) {
  if (!(eps_destructive > 0.0) || !(eps_destructive < theta_constructive)) {
    throw ValidationError("observables: thresholds must satisfy 0 < eps_destructive < theta_constructive");
  }
  if (metrics.max < eps_destructive) return Verdict::destructive;
  if (metrics.max > theta_constructive) return Verdict::constructive;
  return Verdict::mixed;
}

int opposite_site(const Lattice& lattice, int start_site) {
  const Vec2 target = 2.0 * lattice.beam_center() - lattice.site(start_site).position;
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& s : lattice.sites()) {
    const double d = norm(s.position - target);
    if (d < best_d - 1e-12) {
      best_d = d;
      best = s.index;
    }
  }
  return best;
}

std::vector<int> opposite_block(const Lattice& lattice, int start_site, int half) {
  if (lattice.kind() != LatticeKind::square) throw ValidationError("observables: opposite_block needs a square lattice");
  const int centre = opposite_site(lattice, start_site);
  const int n = lattice.extent();
  const int row = centre / n;
  const int col = centre % n;
  std::vector<int> out;
  for (int r = std::max(0, row - half); r <= std::min(n - 1, row + half); ++r) {
    for (int c = std::max(0, col - half); c <= std::min(n - 1, col + half); ++c) out.push_back(r * n + c);
  }
  return out;
}

std::vector<int> start_annulus(const Lattice& lattice, int start_site, double half_width) {
  const double r0 = norm(lattice.site(start_site).position - lattice.beam_center());
  std::vector<int> out;
  for (const auto& s : lattice.sites()) {
    if (std::abs(norm(s.position - lattice.beam_center()) - r0) <= half_width * lattice.spacing()) {
      out.push_back(s.index);
    }
  }
  return out;
}

double ring_mirror_error(const Trajectory& traj, int start_site) {
  if (traj.meta.lattice_kind != LatticeKind::ring) throw ValidationError("observables: mirror check needs a ring");
  const int n = traj.meta.num_sites;
  double worst = 0.0;
  for (const auto& rec : traj.records) {
    for (int k = 1; k < n / 2; ++k) {
      const double a = rec.site_total((start_site + k) % n);
      const double b = rec.site_total(((start_site - k) % n + n) % n);
      worst = std::max(worst, std::abs(a - b));
    }
  }
  return worst;
}

}  // namespace solenoid
