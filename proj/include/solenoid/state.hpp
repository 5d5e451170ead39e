#pragma once

#include <complex>
#include <vector>

#include "solenoid/hopping.hpp"

namespace solenoid {

/// Wavepacket amplitudes, site-major: index = site * spin_dim + component.
struct StateVector {
  int spin_dim = 1;
  std::vector<Complex> amplitudes;

  int num_sites() const { return static_cast<int>(amplitudes.size()) / spin_dim; }
  Complex& at(int site, int component) {
    return amplitudes[static_cast<std::size_t>(site * spin_dim + component)];
  }
  Complex at(int site, int component) const {
    return amplitudes[static_cast<std::size_t>(site * spin_dim + component)];
  }
  double norm() const;
};

/// Per-site, per-component density fractions at one instant.
struct DensityRecord {
  double time = 0.0;
  int spin_dim = 1;
  std::vector<double> values;  // site-major like StateVector

  int num_sites() const { return static_cast<int>(values.size()) / spin_dim; }
  double at(int site, int component) const {
    return values[static_cast<std::size_t>(site * spin_dim + component)];
  }
  double site_total(int site) const;
  std::vector<double> totals() const;
  double sum() const;
};

struct TrajectoryMeta {
  LatticeKind lattice_kind = LatticeKind::ring;
  int lattice_extent = 0;
  int num_sites = 0;
  int spin_dim = 1;
  FieldType field = FieldType::zero;
  double lambda = 0.0;
};

struct InvariantChecks {
  double norm_drift = 0.0;    // max |sum |psi|^2 - 1| over snapshots
  double energy_drift = 0.0;  // max relative drift of the conserved energy
};

struct Trajectory {
  TrajectoryMeta meta;
  std::vector<DensityRecord> records;
  StateVector final_state;
  InvariantChecks checks;
};

}  // namespace solenoid
