#include "solenoid/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "solenoid/errors.hpp"
#include "solenoid/observables.hpp"

namespace solenoid {

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return s;
}

void validate(const EvolveParams& params) {
  if (!(params.dt > 0.0) || !std::isfinite(params.dt)) throw ValidationError("dynamics: dt must be positive");
  if (!(params.t_end >= 0.0) || !std::isfinite(params.t_end)) throw ValidationError("dynamics: t_end must be >= 0");
  if (!(params.lambda >= 0.0) || !std::isfinite(params.lambda)) throw ValidationError("dynamics: lambda must be >= 0");
  if (params.record_stride < 1) throw ValidationError("dynamics: record_stride must be >= 1");
  const double steps = std::round(params.t_end / params.dt);
  if (std::abs(steps * params.dt - params.t_end) > 1e-9 * std::max(1.0, params.t_end)) {
    throw ValidationError("dynamics: t_end (" + std::to_string(params.t_end) +
                          ") must be a whole number of steps of dt (" + std::to_string(params.dt) + ")");
  }
}

StateVector prepare_packet(const Lattice& lattice, int center_site, int width, int spin_dim,
                           std::optional<std::array<double, 2>> spin_weights) {
  if (center_site < 0 || center_site >= lattice.size()) {
    throw ValidationError("dynamics: packet centre site " + std::to_string(center_site) + " is outside the lattice");
  }
  if (width < 0) throw ValidationError("dynamics: packet width must be >= 0");
  if (spin_dim != 1 && spin_dim != 2) throw ValidationError("dynamics: spin_dim must be 1 or 2");
  std::array<double, 2> w{1.0, 0.0};
  if (spin_dim == 2) {
    w = spin_weights.value_or(std::array<double, 2>{1.0, 1.0});
    const double wn = std::hypot(w[0], w[1]);
    if (!(wn > 0.0) || w[0] < 0.0 || w[1] < 0.0) {
      throw ValidationError("dynamics: spin weights must be non-negative and not both zero");
    }
    w = {w[0] / wn, w[1] / wn};
  }

  const std::vector<int> dist = lattice.graph_distances(center_site);
  const double s = width / 3.0;
  StateVector psi{spin_dim, std::vector<Complex>(static_cast<std::size_t>(lattice.size() * spin_dim))};
  double total = 0.0;
  for (int i = 0; i < lattice.size(); ++i) {
    const int d = dist[static_cast<std::size_t>(i)];
    if (d < 0 || d > width) continue;
    const double g = width == 0 ? 1.0 : std::exp(-0.5 * d * d / (s * s));
    for (int c = 0; c < spin_dim; ++c) psi.at(i, c) = g * w[static_cast<std::size_t>(c)];
    total += g * g;
  }
  const double scale = 1.0 / std::sqrt(total);
  for (auto& a : psi.amplitudes) a *= scale;
  return psi;
}

StateVector transport_phases(const StateVector& packet, const Lattice& lattice, const HoppingMatrix& h,
                             int center_site) {
  if (packet.spin_dim != h.spin_dim() || packet.num_sites() != lattice.size() || h.num_sites() != lattice.size()) {
    throw ValidationError("dynamics: packet, lattice and hopping matrix do not match");
  }
  if (center_site < 0 || center_site >= lattice.size()) {
    throw ValidationError("dynamics: transport centre site " + std::to_string(center_site) + " is outside the lattice");
  }
  const auto n = static_cast<std::size_t>(lattice.size());
  std::vector<SpinBlock> frame(n, SpinBlock::Identity());
  std::vector<bool> seen(n, false);
  std::queue<int> frontier;
  seen[static_cast<std::size_t>(center_site)] = true;
  frontier.push(center_site);
  while (!frontier.empty()) {
    const int p = frontier.front();
    frontier.pop();
    for (int c : lattice.neighbors(p)) {
      if (seen[static_cast<std::size_t>(c)]) continue;
      seen[static_cast<std::size_t>(c)] = true;
      SpinBlock u = SpinBlock::Identity();
      if (h.spin_dim() == 1) {
        const Complex j = *h.entry(c, p);
        if (std::abs(j) > 0.0) u(0, 0) = j / std::abs(j);
      } else {
        const SpinBlock b = *h.block_entry(c, p);
        const double det = std::abs(b.determinant());
        if (det > 0.0) u = b / std::sqrt(det);
      }
      frame[static_cast<std::size_t>(c)] = u * frame[static_cast<std::size_t>(p)];
      frontier.push(c);
    }
  }
  StateVector out = packet;
  for (int i = 0; i < lattice.size(); ++i) {
    const SpinBlock& f = frame[static_cast<std::size_t>(i)];
    if (packet.spin_dim == 1) {
      out.at(i, 0) = f(0, 0) * packet.at(i, 0);
    } else {
      const Eigen::Vector2cd v = f * Eigen::Vector2cd(packet.at(i, 0), packet.at(i, 1));
      out.at(i, 0) = v(0);
      out.at(i, 1) = v(1);
    }
  }
  return out;
}

double energy(const HoppingMatrix& h, const StateVector& psi, double lambda) {
  std::vector<Complex> hpsi(psi.amplitudes.size());
  h.apply(psi.amplitudes, hpsi);
  double e = 0.0;
  for (std::size_t k = 0; k < hpsi.size(); ++k) e += std::real(std::conj(psi.amplitudes[k]) * hpsi[k]);
  if (lambda != 0.0) {
    const DensityRecord rec = density(psi);
    double quartic = 0.0;
    for (int i = 0; i < rec.num_sites(); ++i) {
      const double n = rec.site_total(i);
      quartic += n * n;
    }
    e += 0.5 * lambda * h.hop_scale() * quartic;
  }
  return e;
}

namespace {

Trajectory integrate(const HoppingMatrix& h, const StateVector& psi0, const EvolveParams& params, double lambda) {
  validate(params);
  if (psi0.spin_dim != h.spin_dim() || psi0.amplitudes.size() != h.dimension()) {
    throw ValidationError("dynamics: state has spin_dim " + std::to_string(psi0.spin_dim) + " and dimension " +
                          std::to_string(psi0.amplitudes.size()) + " but the hopping matrix has spin_dim " +
                          std::to_string(h.spin_dim()) + " and dimension " + std::to_string(h.dimension()));
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-8) throw ValidationError("dynamics: initial state must be normalized");
  const double bound = params.dt * h.max_row_sum();
  if (bound > kStepBound) {
    throw NumericalGuardError("dynamics: dt * max_row_sum(|J|) = " + std::to_string(bound) + " exceeds " +
                              std::to_string(kStepBound) + "; use dt <= " +
                              std::to_string(kStepBound / h.max_row_sum()));
  }

  const int spin_dim = h.spin_dim();
  const std::size_t dim = h.dimension();
  const double coupling = lambda * h.hop_scale();

  // rhs(psi) = -i (H psi + coupling n_i psi_i)
  auto rhs = [&](const std::vector<Complex>& psi, std::vector<Complex>& out) {
    h.apply(psi, out);
    if (coupling != 0.0) {
      for (std::size_t i = 0; i < dim; i += static_cast<std::size_t>(spin_dim)) {
        double n = 0.0;
        for (int c = 0; c < spin_dim; ++c) n += std::norm(psi[i + static_cast<std::size_t>(c)]);
        for (int c = 0; c < spin_dim; ++c) out[i + static_cast<std::size_t>(c)] += coupling * n * psi[i + static_cast<std::size_t>(c)];
      }
    }
    for (auto& v : out) v = Complex{v.imag(), -v.real()};
  };

  Trajectory traj;
  traj.meta = {h.lattice_kind(), h.lattice_extent(), h.num_sites(), spin_dim, h.field(), lambda};

  StateVector state = psi0;
  const double e0 = energy(h, state, lambda);
  const double e_scale = std::max(std::abs(e0), h.hop_scale());
  auto snapshot = [&](double t) {
    traj.records.push_back(density(state, t));
    traj.checks.norm_drift = std::max(traj.checks.norm_drift, std::abs(state.norm() - 1.0));
    traj.checks.energy_drift = std::max(traj.checks.energy_drift, std::abs(energy(h, state, lambda) - e0) / e_scale);
  };

  const auto steps = static_cast<long long>(std::llround(params.t_end / params.dt));
  std::vector<Complex> k(dim), acc(dim), tmp(dim);
  std::vector<Complex>& psi = state.amplitudes;
  const double dt = params.dt;
  snapshot(0.0);
  for (long long step = 1; step <= steps; ++step) {
    rhs(psi, k);
    for (std::size_t i = 0; i < dim; ++i) {
      acc[i] = k[i];
      tmp[i] = psi[i] + 0.5 * dt * k[i];
    }
    rhs(tmp, k);
    for (std::size_t i = 0; i < dim; ++i) {
      acc[i] += 2.0 * k[i];
      tmp[i] = psi[i] + 0.5 * dt * k[i];
    }
    rhs(tmp, k);
    for (std::size_t i = 0; i < dim; ++i) {
      acc[i] += 2.0 * k[i];
      tmp[i] = psi[i] + dt * k[i];
    }
    rhs(tmp, k);
    for (std::size_t i = 0; i < dim; ++i) psi[i] += (dt / 6.0) * (acc[i] + k[i]);
    if (step % params.record_stride == 0 || step == steps) snapshot(static_cast<double>(step) * dt);
  }
  traj.final_state = std::move(state);
  return traj;
}

}  // namespace

Trajectory evolve_linear(const HoppingMatrix& h, const StateVector& psi0, const EvolveParams& params) {
  return integrate(h, psi0, params, 0.0);
}

Trajectory evolve_gpe(const HoppingMatrix& h, const StateVector& psi0, const EvolveParams& params) {
  return integrate(h, psi0, params, params.lambda);
}

StateVector exact_evolve_small(const HoppingMatrix& h, const StateVector& psi0, double t) {
  if (h.dimension() > kExactDimensionCap) {
    throw ValidationError("dynamics: exact propagation is capped at dimension " + std::to_string(kExactDimensionCap) +
                          " (got " + std::to_string(h.dimension()) + ")");
  }
  if (psi0.amplitudes.size() != h.dimension()) throw ValidationError("dynamics: state dimension does not match");
  const Eigen::MatrixXcd dense = h.to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
  const auto dim = static_cast<Eigen::Index>(h.dimension());
  Eigen::VectorXcd psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) psi(i) = psi0.amplitudes[static_cast<std::size_t>(i)];
  Eigen::VectorXcd c = solver.eigenvectors().adjoint() * psi;
  for (Eigen::Index i = 0; i < dim; ++i) c(i) *= std::polar(1.0, -solver.eigenvalues()(i) * t);
  const Eigen::VectorXcd out = solver.eigenvectors() * c;
  StateVector result{psi0.spin_dim, std::vector<Complex>(static_cast<std::size_t>(dim))};
  for (Eigen::Index i = 0; i < dim; ++i) result.amplitudes[static_cast<std::size_t>(i)] = out(i);
  return result;
}

}  // namespace solenoid
