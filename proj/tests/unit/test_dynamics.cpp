#include <doctest.h>

#include <cmath>

#include "solenoid/dynamics.hpp"
#include "solenoid/errors.hpp"
#include "solenoid/gauge.hpp"
#include "solenoid/observables.hpp"

using namespace solenoid;

namespace {

double max_diff(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) m = std::max(m, std::abs(a.amplitudes[i] - b.amplitudes[i]));
  return m;
}

EvolveParams params(double t_end, int stride = 1) {
  EvolveParams p;
  p.t_end = t_end;
  p.record_stride = stride;
  return p;
}

}  // namespace

TEST_CASE("two sites: Rabi transfer sin^2(Jt)") {
  const Lattice d = build_dimer(1.0);
  const auto h = phase_only_hopping(d, 1, 0.05);
  const auto psi0 = prepare_packet(d, 0, 0);
  const auto traj = evolve_linear(h, psi0, params(50.0));
  CHECK(traj.records.size() == 1001);
  double err = 0.0;
  for (const auto& rec : traj.records) {
    const double s = std::sin(0.05 * rec.time);
    err = std::max(err, std::abs(rec.site_total(1) - s * s));
  }
  CHECK(err < 1e-8);
}

TEST_CASE("RK4 agrees with dense diagonalization") {
  for (int n : {4, 8, 16, 64}) {
    const Lattice ring = build_ring(n, 1.0);
    const auto h = phase_only_hopping(ring, 1, 0.05);
    const auto psi0 = transport_phases(prepare_packet(ring, 1, 2), ring, h, 1);
    for (double t : {10.0, 100.0}) {
      const auto traj = evolve_linear(h, psi0, params(t, 100000));
      CHECK(max_diff(traj.final_state, exact_evolve_small(h, psi0, t)) < 1e-8);
    }
  }
  const Lattice sq = build_square(8, 1.0);
  const auto h = build_nonabelian(phase_only_hopping(sq, 1, 0.05));
  const auto psi0 = prepare_packet(sq, 10, 2, 2);
  const auto traj = evolve_linear(h, psi0, params(100.0, 100000));
  CHECK(max_diff(traj.final_state, exact_evolve_small(h, psi0, 100.0)) < 1e-8);
}

TEST_CASE("evolving under -H undoes the evolution") {
  const Lattice sq = build_square(6, 1.0);
  const auto h = phase_only_hopping(sq, 1, 0.05);
  const auto psi0 = prepare_packet(sq, 14, 2);
  const auto fwd = evolve_linear(h, psi0, params(40.0, 800));
  const auto back = evolve_linear(h.negated(), fwd.final_state, params(40.0, 800));
  CHECK(max_diff(back.final_state, psi0) < 1e-9);
}

TEST_CASE("gauge covariance of the dynamics") {
  const Lattice ring = build_ring(20, 1.0);
  const auto h = phase_only_hopping(ring, 1, 0.05);
  std::vector<double> theta(ring.size());
  for (int i = 0; i < ring.size(); ++i) theta[i] = 0.37 * i * i - 1.1 * i;
  const auto g = h.gauge_transformed(theta);
  const auto psi0 = transport_phases(prepare_packet(ring, 1, 3), ring, h, 1);
  StateVector chi0 = psi0;
  for (int i = 0; i < ring.size(); ++i) chi0.at(i, 0) *= std::polar(1.0, theta[i]);
  EvolveParams p = params(100.0, 20);
  p.lambda = 2.0;
  const auto a = evolve_gpe(h, psi0, p);
  const auto b = evolve_gpe(g, chi0, p);
  double err = 0.0;
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    for (int i = 0; i < ring.size(); ++i) err = std::max(err, std::abs(a.records[k].values[i] - b.records[k].values[i]));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("GPE with lambda 0 is the linear evolution") {
  const Lattice ring = build_ring(10, 1.0);
  const auto h = phase_only_hopping(ring, 1, 0.05);
  const auto psi0 = prepare_packet(ring, 0, 2);
  const auto a = evolve_linear(h, psi0, params(20.0, 10));
  const auto b = evolve_gpe(h, psi0, params(20.0, 10));
  CHECK(max_diff(a.final_state, b.final_state) == 0.0);
}

TEST_CASE("norm and energy are conserved") {
  const Lattice ring = build_ring(100, 1.0);
  const auto h = phase_only_hopping(ring, 1, 0.05);
  const auto psi0 = transport_phases(prepare_packet(ring, 1, 3), ring, h, 1);
  EvolveParams p = params(600.0, 20);
  p.lambda = 5.0;
  const auto traj = evolve_gpe(h, psi0, p);
  CHECK(traj.checks.norm_drift < 1e-8);
  CHECK(traj.checks.energy_drift < 1e-7);
  CHECK(energy(h, traj.final_state, 5.0) == doctest::Approx(energy(h, psi0, 5.0)).epsilon(1e-7));
}

TEST_CASE("step-size guard") {
  const Lattice ring = build_ring(8, 1.0);
  const auto h = phase_only_hopping(ring, 1, 0.5);  // row sum 1.0
  const auto psi0 = prepare_packet(ring, 0, 1);
  EvolveParams p = params(10.0);
  CHECK_NOTHROW(evolve_linear(h, psi0, p));
  p.dt = 0.5;
  CHECK_THROWS_AS(evolve_linear(h, psi0, p), NumericalGuardError);
}

TEST_CASE("parameter validation") {
  const Lattice ring = build_ring(8, 1.0);
  const auto h = phase_only_hopping(ring, 1, 0.05);
  const auto psi0 = prepare_packet(ring, 0, 1);
  EvolveParams p = params(10.01);
  CHECK_THROWS_AS(evolve_linear(h, psi0, p), ValidationError);
  p = params(10.0);
  p.lambda = -1.0;
  CHECK_THROWS_AS(evolve_gpe(h, psi0, p), ValidationError);
  StateVector bad = psi0;
  bad.amplitudes[0] *= 2.0;
  CHECK_THROWS_AS(evolve_linear(h, bad, params(1.0)), ValidationError);
  const Lattice big = build_square(23, 1.0);
  const auto hb = phase_only_hopping(big, 1, 0.05);
  CHECK_THROWS_AS(exact_evolve_small(hb, prepare_packet(big, 0, 1), 1.0), ValidationError);
}

TEST_CASE("packet shape") {
  const Lattice ring = build_ring(40, 1.0);
  const auto p = prepare_packet(ring, 5, 3);
  CHECK(p.norm() == doctest::Approx(1.0));
  const auto d = ring.graph_distances(5);
  const double s = 1.0;  // width / 3
  for (int i = 0; i < ring.size(); ++i) {
    if (d[i] > 3) {
      CHECK(p.at(i, 0) == Complex{0.0, 0.0});
    } else {
      CHECK(std::abs(p.at(i, 0)) / std::abs(p.at(5, 0)) == doctest::Approx(std::exp(-0.5 * d[i] * d[i] / (s * s))));
    }
  }
  const auto delta = prepare_packet(ring, 7, 0);
  CHECK(delta.at(7, 0) == Complex{1.0, 0.0});
  const auto spinor = prepare_packet(ring, 7, 0, 2, std::array<double, 2>{3.0, 4.0});
  CHECK(spinor.at(7, 0).real() == doctest::Approx(0.6));
  CHECK(spinor.at(7, 1).real() == doctest::Approx(0.8));
}

TEST_CASE("transported packet carries no current") {
  // on a ring every bond inside the packet's support belongs to the transport tree
  const Lattice ring = build_ring(30, 1.0);
  const auto h = phase_only_hopping(ring, 1, 0.05);
  const auto psi = transport_phases(prepare_packet(ring, 4, 3), ring, h, 4);
  CHECK(psi.norm() == doctest::Approx(1.0));
  int checked = 0;
  for (const auto& l : ring.links()) {
    const Complex flow = std::conj(psi.at(l.g, 0)) * *h.entry(l.g, l.e) * psi.at(l.e, 0);
    if (std::abs(flow) == 0.0) continue;
    CHECK(std::abs(flow.imag()) < 1e-15 * std::abs(flow));
    ++checked;
  }
  CHECK(checked == 6);
}
