#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "solenoid/hopping.hpp"
#include "solenoid/lattice.hpp"
#include "solenoid/lg_optics.hpp"

namespace solenoid {

// Tensor-product Gauss-Legendre rule on a square window centred at the link
// midpoint. `window` is the half-width in units of the Wannier width.
struct QuadratureSpec {
  int points_per_axis = 24;
  double window = 4.0;
};

void validate(const QuadratureSpec& quad);

/// Laser-assisted hopping from Gaussian Wannier overlaps:
///   J_ij = hop_scale * Int w(r - r_i) conj(E(r)) w(r - r_j) d^2r,  i in G, j in E,
/// with w normalized and isotropic of width sigma. Each integral is repeated with
/// points_per_axis + 4 nodes; a relative change above 1e-6 is a NumericalGuardError.
/// Links are split across SOLENOID_WORKERS threads.
HoppingMatrix compute_hopping(const Lattice& lattice, const BeamField& beam, double sigma,
                              const QuadratureSpec& quad, double hop_scale);

/// Idealized hopping J_ij = j0 exp(-i l phi_mid) on every G -> E link.
HoppingMatrix phase_only_hopping(const Lattice& lattice, int l, double j0);

/// Rescales so the largest |J_ij| equals target; hop_scale becomes target.
HoppingMatrix normalize_hopping(const HoppingMatrix& h, double target);

/// arg J_a - arg J_b + arg J_c - arg J_d over the four canonical links of the
/// cell, taken counterclockwise from its G corner, reduced once to (-pi, pi].
double plaquette_flux(const HoppingMatrix& h, const Plaquette& plaquette);

/// sum_k arg J(s_k, s_k+1) along a closed cycle, reduced once to (-pi, pi].
double loop_phase(const HoppingMatrix& h, std::span<const int> loop);

/// Spin-flip links [[0, |J|], [J, 0]] built from an Abelian l = 1 hopping matrix.
HoppingMatrix build_nonabelian(const HoppingMatrix& abelian);

/// Ordered product U(s_0, s_1) U(s_1, s_2) ... U(s_n-1, s_0) of the links
/// normalized to unit |det|.
Eigen::Matrix2cd wilson_loop(const HoppingMatrix& h, std::span<const int> loop);

struct AmplitudeFit {
  double c0 = 0.0;  // weight of the p = 0, l = 0 mode
  double c1 = 0.0;  // weight of the p = 1, l = 0 mode
  double residual = 0.0;  // relative RMS misfit over link midpoints
};

/// Least-squares c0 f_00 + c1 f_10 ~= |target| over all link midpoints, so the
/// l = 0 drive matches the l = 1 drive in amplitude. Rank-deficient systems
/// (one distinct radius) get the minimum-norm solution; rank zero throws.
AmplitudeFit match_l0_amplitude(const Lattice& lattice, const LGMode& target,
                                ExponentConvention convention = ExponentConvention::paper,
                                double target_scale = 1.0);

struct FluxMap {
  int rows = 0;
  int cols = 0;
  std::vector<double> flux;  // row-major, plaquette (row, col)
  std::map<std::string, double> loops;

  double at(int row, int col) const { return flux.at(static_cast<std::size_t>(row * cols + col)); }
  // Sum of fluxes over the block [row0, row0+n) x [col0, col0+n), unreduced.
  double block_sum(int row0, int col0, int n) const;
};

/// Per-plaquette flux of a square lattice plus the loop phase around the cell
/// holding the beam centre ("centre_cell") and around the lattice boundary.
FluxMap flux_map(const Lattice& lattice, const HoppingMatrix& h);

/// Plaquette containing the beam centre (nearest by cell centre).
const Plaquette& centre_plaquette(const Lattice& lattice);

}  // namespace solenoid
