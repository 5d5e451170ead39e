#pragma once

#include <array>
#include <optional>

#include "solenoid/hopping.hpp"
#include "solenoid/lattice.hpp"
#include "solenoid/state.hpp"

namespace solenoid {

// Largest dt * max_row_sum(|J|) the fixed-step integrator accepts.
inline constexpr double kStepBound = 0.1;
// Dimension cap for the dense-eigensolver propagator.
inline constexpr std::size_t kExactDimensionCap = 512;

struct EvolveParams {
  double dt = 0.05;         // hbar / E_R
  double t_end = 0.0;       // hbar / E_R; must be a whole number of steps
  double lambda = 0.0;      // U<n> / 2J, >= 0
  int record_stride = 1;    // steps between density snapshots
};

void validate(const EvolveParams& params);

/// Real Gaussian packet exp(-d^2 / 2 s^2) over graph distance d <= width from
/// center_site, s = width / 3, normalized. width 0 gives a single occupied site.
/// spin_weights (default equal) fill the two components when spin_dim is 2.
StateVector prepare_packet(const Lattice& lattice, int center_site, int width, int spin_dim = 1,
                           std::optional<std::array<double, 2>> spin_weights = std::nullopt);

/// Parallel-transports the packet's phase (or spinor) outward from center_site
/// along a breadth-first tree so every tree bond carries zero current:
/// psi_c <- U(c, p) psi_p / |psi_p| * |psi_c| with U the normalized link.
StateVector transport_phases(const StateVector& packet, const Lattice& lattice,
                             const HoppingMatrix& h, int center_site);

/// i dpsi/dt = H psi with classical RK4 at fixed dt. lambda is ignored.
Trajectory evolve_linear(const HoppingMatrix& h, const StateVector& psi0,
                         const EvolveParams& params);

/// Discrete Gross-Pitaevskii: i dpsi_i/dt = (H psi)_i + lambda J_ref n_i psi_i,
/// J_ref = h.hop_scale(), n_i the total density on site i.
Trajectory evolve_gpe(const HoppingMatrix& h, const StateVector& psi0, const EvolveParams& params);

/// exp(-i H t) psi0 by dense eigendecomposition. dimension <= 512.
StateVector exact_evolve_small(const HoppingMatrix& h, const StateVector& psi0, double t);

/// <psi|H|psi> + (lambda J_ref / 2) sum_i n_i^2.
double energy(const HoppingMatrix& h, const StateVector& psi, double lambda = 0.0);

}  // namespace solenoid
