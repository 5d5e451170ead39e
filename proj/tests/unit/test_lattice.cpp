#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "solenoid/errors.hpp"
#include "solenoid/lattice.hpp"

using namespace solenoid;

TEST_CASE("ring geometry") {
  const Lattice ring = build_ring(100, 1.0);
  CHECK(ring.size() == 100);
  CHECK(ring.links().size() == 100);
  const double radius = 100.0 / (2.0 * M_PI);
  for (const auto& s : ring.sites()) {
    CHECK(norm(s.position - ring.beam_center()) == doctest::Approx(radius));
    CHECK(s.sublattice == (s.index % 2 == 0 ? Sublattice::G : Sublattice::E));
    CHECK(angular_distance(s.azimuth, 2.0 * M_PI * s.index / 100.0) < 1e-12);
  }
  // neighbouring chord is close to one lattice constant
  CHECK(norm(ring.site(0).position - ring.site(1).position) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("links run from G to E") {
  for (const Lattice& lat : {build_ring(16, 1.0), build_square(6, 1.0), build_dimer(1.0)}) {
    for (const auto& l : lat.links()) {
      CHECK(lat.site(l.g).sublattice == Sublattice::G);
      CHECK(lat.site(l.e).sublattice == Sublattice::E);
    }
  }
}

TEST_CASE("square counts and neighbours") {
  const int n = 7;
  const Lattice sq = build_square(n, 1.0);
  CHECK(sq.size() == n * n);
  CHECK(sq.links().size() == static_cast<std::size_t>(2 * n * (n - 1)));
  CHECK(sq.plaquettes().size() == static_cast<std::size_t>((n - 1) * (n - 1)));
  CHECK(sq.neighbors(sq.square_index(0, 0)).size() == 2);
  CHECK(sq.neighbors(sq.square_index(0, 3)).size() == 3);
  CHECK(sq.neighbors(sq.square_index(3, 3)).size() == 4);
  const auto nb = sq.neighbors(sq.square_index(3, 3));
  CHECK(std::is_sorted(nb.begin(), nb.end()));
  CHECK(sq.beam_center().x == doctest::Approx(3.0));
  CHECK(sq.beam_center().y == doctest::Approx(3.0));
}

TEST_CASE("plaquette corners run counterclockwise") {
  const Lattice sq = build_square(5, 1.0);
  for (const auto& p : sq.plaquettes()) {
    double area = 0.0;
    for (int k = 0; k < 4; ++k) {
      const Vec2 a = sq.site(p.sites[k]).position;
      const Vec2 b = sq.site(p.sites[(k + 1) % 4]).position;
      area += a.x * b.y - b.x * a.y;
    }
    CHECK(area == doctest::Approx(2.0));  // twice the unit area, positive orientation
  }
}

TEST_CASE("graph distances") {
  const Lattice ring = build_ring(20, 1.0);
  const auto d = ring.graph_distances(3);
  for (int i = 0; i < 20; ++i) {
    const int k = std::abs(i - 3);
    CHECK(d[i] == std::min(k, 20 - k));
  }
  const Lattice sq = build_square(6, 1.0);
  const auto ds = sq.graph_distances(sq.square_index(1, 4));
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) CHECK(ds[sq.square_index(r, c)] == std::abs(r - 1) + std::abs(c - 4));
  }
}

TEST_CASE("ring loop visits every site counterclockwise") {
  const Lattice ring = build_ring(12, 1.0);
  const auto loop = ring.ring_loop();
  CHECK(loop.size() == 12);
  CHECK(std::set<int>(loop.begin(), loop.end()).size() == 12);
  for (std::size_t k = 0; k < loop.size(); ++k) CHECK(ring.link_between(loop[k], loop[(k + 1) % 12]).has_value());
}

TEST_CASE("invalid geometries") {
  CHECK_THROWS_AS(build_ring(7, 1.0), ValidationError);
  CHECK_THROWS_AS(build_ring(2, 1.0), ValidationError);
  CHECK_THROWS_AS(build_square(1, 1.0), ValidationError);
  CHECK_THROWS_AS(build_square(4, -1.0), ValidationError);
  CHECK_THROWS_AS(azimuth({1.0, 1.0}, {1.0, 1.0}), ValidationError);
}

TEST_CASE("linearized azimuth approaches the exact value") {
  const Vec2 cell{5.0, 2.0};
  for (double eps : {1e-2, 1e-3}) {
    const auto est = linearized_azimuth(cell, {eps, -eps});
    CHECK(std::abs(est.linearized - est.exact) < 10.0 * eps * eps);
  }
}

TEST_CASE("beam offset shifts the centre") {
  const Lattice sq = build_square(4, 2.0, {0.5, -0.25});
  CHECK(sq.beam_center().x == doctest::Approx(3.5));
  CHECK(sq.beam_center().y == doctest::Approx(2.75));
}
