#include <doctest.h>

#include <cmath>
#include <vector>

#include "solenoid/errors.hpp"
#include "solenoid/gauge.hpp"
#include "solenoid/quadrature.hpp"

using namespace solenoid;

namespace {

// Midpoint rule on a fine square grid, independent of the Gauss-Legendre path.
Complex riemann_overlap(const BeamField& beam, Vec2 a, Vec2 b, double sigma) {
  const Vec2 mid = midpoint(a, b);
  const double half = 7.0 * sigma;
  const int n = 700;
  const double h = 2.0 * half / n;
  Complex sum{0.0, 0.0};
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const Vec2 r{mid.x - half + (ix + 0.5) * h, mid.y - half + (iy + 0.5) * h};
      const Vec2 da = r - a, db = r - b;
      const double wa = std::exp(-(da.x * da.x + da.y * da.y) / (2 * sigma * sigma)) / (std::sqrt(M_PI) * sigma);
      const double wb = std::exp(-(db.x * db.x + db.y * db.y) / (2 * sigma * sigma)) / (std::sqrt(M_PI) * sigma);
      sum += wa * wb * std::conj(beam_amplitude(beam, r));
    }
  }
  return sum * h * h;
}

}  // namespace

TEST_CASE("gauss-legendre nodes and exactness") {
  const auto r2 = gauss_legendre(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)));
  CHECK(r2.weights[1] == doctest::Approx(1.0));
  const auto r3 = gauss_legendre(3);
  CHECK(r3.nodes[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r3.weights[1] == doctest::Approx(8.0 / 9.0));
  CHECK(r3.nodes[2] == doctest::Approx(std::sqrt(0.6)));
  for (int n : {8, 24, 28}) {
    const auto rule = gauss_legendre(n);
    for (int deg = 0; deg < 2 * n; deg += 2) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], deg);
      CHECK(s == doctest::Approx(2.0 / (deg + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("hopping integral agrees with a brute-force grid sum") {
  const Lattice sq = build_square(6, 1.0);
  const BeamField beam = single_mode_beam({0, 1, 3.0}, sq.beam_center());
  const double sigma = 0.25;
  const auto h = compute_hopping(sq, beam, sigma, {}, 1.0);
  for (std::size_t k : {0ul, 7ul, 23ul, 41ul}) {
    const auto l = sq.links()[k];
    const Complex ref = riemann_overlap(beam, sq.site(l.g).position, sq.site(l.e).position, sigma);
    CHECK(std::abs(h.amplitude(k) - ref) < 1e-6 * std::abs(ref));
  }
}

TEST_CASE("coarse quadrature trips the convergence guard") {
  const Lattice sq = build_square(4, 1.0);
  const BeamField beam = single_mode_beam({0, 1, 2.0}, sq.beam_center());
  CHECK_THROWS_AS(compute_hopping(sq, beam, 0.25, {8, 40.0}, 1.0), NumericalGuardError);
  CHECK_THROWS_AS(compute_hopping(sq, beam, 0.6, {}, 1.0), ValidationError);
  CHECK_THROWS_AS(compute_hopping(sq, beam, 0.25, {4, 4.0}, 1.0), ValidationError);
}

TEST_CASE("phase-only amplitudes") {
  const Lattice ring = build_ring(12, 1.0);
  const auto h = phase_only_hopping(ring, 2, 0.05);
  for (std::size_t k = 0; k < ring.links().size(); ++k) {
    const Vec2 m = ring.link_midpoint(static_cast<int>(k));
    const double phi = std::atan2(m.y - ring.beam_center().y, m.x - ring.beam_center().x);
    CHECK(std::abs(h.amplitude(k) - std::polar(0.05, -2.0 * phi)) < 1e-15);
  }
}

TEST_CASE("centre cell carries pi, far cells little") {
  const Lattice sq = build_square(40, 1.0);
  const auto h = phase_only_hopping(sq, 1, 0.05);
  const auto& c = centre_plaquette(sq);
  CHECK(c.row == 19);
  CHECK(c.col == 19);
  CHECK(angular_distance(loop_phase(h, c.sites), M_PI) < 1e-12);
  CHECK(angular_distance(plaquette_flux(h, c), M_PI) < 1e-12);
  // the corner cell is far from the beam
  CHECK(std::abs(plaquette_flux(h, sq.plaquette(0, 0))) < 1e-2);
}

TEST_CASE("zero winding gives zero flux everywhere") {
  const Lattice sq = build_square(10, 1.0);
  const auto h = phase_only_hopping(sq, 0, 0.05);
  for (const auto& p : sq.plaquettes()) CHECK(plaquette_flux(h, p) == 0.0);
}

TEST_CASE("flux is gauge invariant") {
  const Lattice sq = build_square(12, 1.0);
  const auto h = phase_only_hopping(sq, 1, 0.05);
  std::vector<double> theta(sq.size());
  for (int i = 0; i < sq.size(); ++i) theta[i] = std::fmod(12.9898 * i * i + 78.233 * i, 2 * M_PI);
  const auto g = h.gauge_transformed(theta);
  for (const auto& p : sq.plaquettes()) CHECK(angular_distance(plaquette_flux(h, p), plaquette_flux(g, p)) < 1e-10);
  const auto loop = centre_plaquette(sq).sites;
  CHECK(angular_distance(loop_phase(g, loop), M_PI) < 1e-10);
}

TEST_CASE("plaquette flux equals the loop phase of its corners") {
  const Lattice sq = build_square(8, 1.0, {0.3, -0.2});
  const auto h = phase_only_hopping(sq, 3, 0.05);
  for (const auto& p : sq.plaquettes()) {
    CHECK(angular_distance(plaquette_flux(h, p), loop_phase(h, p.sites)) < 1e-12);
  }
}

TEST_CASE("broken loops are reported") {
  const Lattice sq = build_square(4, 1.0);
  const auto h = phase_only_hopping(sq, 1, 0.05);
  const std::vector<int> bad{0, 1, 6};
  CHECK_THROWS_AS(loop_phase(h, bad), ValidationError);
}

TEST_CASE("SU(2) wilson loop against a hand-built product") {
  const Lattice sq = build_square(6, 1.0);
  const auto ab = phase_only_hopping(sq, 1, 0.05);
  const auto h = build_nonabelian(ab);
  const auto loop = centre_plaquette(sq).sites;
  Eigen::Matrix2cd ref = Eigen::Matrix2cd::Identity();
  for (std::size_t k = 0; k < 4; ++k) {
    const int a = loop[k], b = loop[(k + 1) % 4];
    const bool forward = sq.site(a).sublattice == Sublattice::G;
    const Complex J = forward ? *ab.entry(a, b) : *ab.entry(b, a);
    Eigen::Matrix2cd U;
    U << 0.0, std::abs(J), J, 0.0;
    U /= std::abs(J);
    ref = ref * (forward ? U : Eigen::Matrix2cd(U.adjoint()));
  }
  const Eigen::Matrix2cd W = wilson_loop(h, loop);
  CHECK((W - ref).norm() < 1e-14);
  CHECK((W * W.adjoint() - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
  CHECK(std::abs(W.determinant()) == doctest::Approx(1.0));
}

TEST_CASE("SU(2) wilson loop of a trivial field is the identity") {
  const Lattice sq = build_square(4, 1.0);
  const auto h = build_nonabelian(phase_only_hopping(sq, 0, 0.05));
  for (const auto& p : sq.plaquettes()) {
    CHECK((wilson_loop(h, p.sites) - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
  }
}

TEST_CASE("l = 0 amplitude fit") {
  const LGMode target{0, 1, 20.0};
  SUBCASE("square: normal equations") {
    const Lattice sq = build_square(40, 1.0);
    const auto fit = match_l0_amplitude(sq, target);
    Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
    Eigen::Vector2d b = Eigen::Vector2d::Zero();
    for (std::size_t k = 0; k < sq.links().size(); ++k) {
      const double r = norm(sq.link_midpoint(static_cast<int>(k)) - sq.beam_center());
      const Eigen::Vector2d row(lg_radial_amplitude({0, 0, 20.0}, r), lg_radial_amplitude({1, 0, 20.0}, r));
      A += row * row.transpose();
      b += row * std::abs(lg_radial_amplitude(target, r));
    }
    const Eigen::Vector2d c = A.ldlt().solve(b);
    CHECK(fit.c0 == doctest::Approx(c(0)).epsilon(1e-8));
    CHECK(fit.c1 == doctest::Approx(c(1)).epsilon(1e-8));
    CHECK(fit.residual < 1.0);
  }
  SUBCASE("ring: one radius, minimum-norm solution") {
    const Lattice ring = build_ring(100, 1.0);
    const LGMode t{0, 1, 100.0 / (2 * M_PI)};
    const auto fit = match_l0_amplitude(ring, t);
    const double r = norm(ring.link_midpoint(0) - ring.beam_center());
    const double a = lg_radial_amplitude({0, 0, t.waist}, r), b = lg_radial_amplitude({1, 0, t.waist}, r);
    const double y = std::abs(lg_radial_amplitude(t, r));
    CHECK(fit.c0 == doctest::Approx(a * y / (a * a + b * b)));
    CHECK(fit.c1 == doctest::Approx(b * y / (a * a + b * b)));
    CHECK(fit.residual < 1e-10);
  }
}

TEST_CASE("normalization sets the largest amplitude") {
  const Lattice sq = build_square(10, 1.0);
  const auto h = compute_hopping(sq, single_mode_beam({0, 1, 5.0}, sq.beam_center()), 0.25, {}, 1.0);
  const auto n = normalize_hopping(h, 0.05);
  double biggest = 0.0;
  for (std::size_t k = 0; k < n.links().size(); ++k) biggest = std::max(biggest, std::abs(n.amplitude(k)));
  CHECK(biggest == doctest::Approx(0.05));
  CHECK(n.hop_scale() == 0.05);
}

TEST_CASE("flux maps need plaquettes") {
  const Lattice ring = build_ring(8, 1.0);
  CHECK_THROWS_AS(flux_map(ring, phase_only_hopping(ring, 1, 0.05)), ValidationError);
}

TEST_CASE("flux over the whole lattice survives a small beam offset") {
  for (Vec2 off : {Vec2{0.25, 0.0}, Vec2{0.25, 0.25}, Vec2{-0.1, 0.2}, Vec2{0.0, -0.25}}) {
    const Lattice sq = build_square(40, 1.0, off);
    const FluxMap map = flux_map(sq, phase_only_hopping(sq, 1, 0.05));
    CHECK(angular_distance(wrap_angle(map.block_sum(0, 0, map.rows)), M_PI) < 1e-2);
    CHECK(angular_distance(map.loops.at("boundary"), M_PI) < 1e-2);
  }
}

TEST_CASE("symmetric regions around the centre cell sum to pi") {
  const Lattice sq = build_square(40, 1.0);
  const FluxMap map = flux_map(sq, phase_only_hopping(sq, 1, 0.05));
  for (int k = 1; k <= 19; k += 2) CHECK(angular_distance(wrap_angle(map.block_sum(19 - k / 2, 19 - k / 2, k)), M_PI) < 1e-12);
  CHECK(angular_distance(wrap_angle(map.block_sum(0, 0, 39)), M_PI) < 1e-12);
}

TEST_CASE("wilson loop: reversal and Abelian embedding") {
  const Lattice sq = build_square(6, 1.0);
  const auto h = build_nonabelian(phase_only_hopping(sq, 1, 0.05));
  const auto loop = centre_plaquette(sq).sites;
  const std::vector<int> fwd(loop.begin(), loop.end());
  const std::vector<int> rev{fwd[0], fwd[3], fwd[2], fwd[1]};
  CHECK((wilson_loop(h, rev) - wilson_loop(h, fwd).adjoint()).norm() < 1e-14);

  std::vector<SpinBlock> blocks;
  std::vector<Complex> phases;
  for (std::size_t k = 0; k < sq.links().size(); ++k) {
    const double a = 0.37 * k - 0.05 * k * k;
    blocks.push_back(std::polar(0.05, a) * SpinBlock::Identity());
    phases.push_back(std::polar(0.05, a));
  }
  const auto emb = HoppingMatrix::nonabelian(sq, blocks, 0.05);
  const auto ab = HoppingMatrix::abelian(sq, phases, 0.05, FieldType::u1);
  for (const auto& p : sq.plaquettes()) {
    const Eigen::Matrix2cd W = wilson_loop(emb, p.sites);
    const Complex ref = std::polar(1.0, loop_phase(ab, p.sites));
    CHECK((W - ref * Eigen::Matrix2cd::Identity()).norm() < 1e-13);
  }
}
