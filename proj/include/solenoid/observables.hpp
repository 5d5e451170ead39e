#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "solenoid/lattice.hpp"
#include "solenoid/state.hpp"

namespace solenoid {

DensityRecord density(const StateVector& psi, double time = 0.0);

// n_1 + n_2 per site. spin_dim 2 only.
std::vector<double> charge_density(const DensityRecord& rec);
// n_1 - n_2 per site. spin_dim 2 only.
std::vector<double> spin_density(const DensityRecord& rec);

struct SeriesPoint {
  double time;
  double value;
};

struct InterferenceMetrics {
  std::vector<int> probe_sites;
  std::vector<SeriesPoint> series;
  double max = 0.0;
  double time_of_max = 0.0;
  double mean = 0.0;
};

/// Density at the ring site antipodal to start_site, over every snapshot.
InterferenceMetrics opposite_site_series(const Trajectory& traj, int start_site);

/// Summed density over a set of sites, over every snapshot.
InterferenceMetrics probe_region_series(const Trajectory& traj, std::span<const int> region);

enum class Verdict { destructive, constructive, mixed };
std::string_view to_string(Verdict v);

Verdict interference_verdict(const InterferenceMetrics& metrics, double eps_destructive,
                             double theta_constructive);

/// Site obtained by point reflection of start_site through the beam centre.
int opposite_site(const Lattice& lattice, int start_site);

/// (2 half + 1)^2 block of square-lattice sites centred on opposite_site, clipped
/// to the lattice.
std::vector<int> opposite_block(const Lattice& lattice, int start_site, int half = 1);

/// Sites whose distance to the beam centre is within half_width of start_site's.
std::vector<int> start_annulus(const Lattice& lattice, int start_site, double half_width = 1.5);

/// max over snapshots and k of |n(start + k) - n(start - k)| on a ring.
double ring_mirror_error(const Trajectory& traj, int start_site);

}  // namespace solenoid
