#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "solenoid/vec2.hpp"

namespace solenoid {

// G sites hold the ground internal state, E sites the long-lived excited one.
enum class Sublattice : std::uint8_t { G, E };

enum class LatticeKind { ring, square, dimer };

std::string_view to_string(LatticeKind kind);
std::string_view to_string(Sublattice s);

struct Site {
  int index = 0;
  Vec2 position;
  Sublattice sublattice = Sublattice::G;
  double azimuth = 0.0;  // relative to the beam center, in (-pi, pi]
};

// Nearest-neighbour bond, stored with canonical orientation G -> E.
struct Link {
  int g = 0;
  int e = 0;
};

// Unit cell of the square lattice. Sites run counterclockwise from the
// lower-left corner: (row, col), (row, col+1), (row+1, col+1), (row+1, col).
struct Plaquette {
  int row = 0;
  int col = 0;
  std::array<int, 4> sites{};
};

class Lattice {
 public:
  LatticeKind kind() const { return kind_; }
  // Ring: site count. Square: side length. Dimer: 2.
  int extent() const { return extent_; }
  double spacing() const { return spacing_; }
  Vec2 beam_center() const { return beam_center_; }

  int size() const { return static_cast<int>(sites_.size()); }
  std::span<const Site> sites() const { return sites_; }
  const Site& site(int i) const { return sites_.at(static_cast<std::size_t>(i)); }
  std::span<const Link> links() const { return links_; }
  std::span<const Plaquette> plaquettes() const { return plaquettes_; }

  // Neighbours of site i in ascending index order.
  std::span<const int> neighbors(int i) const;
  std::optional<int> link_between(int i, int j) const;
  Vec2 link_midpoint(int link) const;

  // Row-major index of a square-lattice site.
  int square_index(int row, int col) const;
  const Plaquette& plaquette(int row, int col) const;

  // Breadth-first graph distance from `from` to every site.
  std::vector<int> graph_distances(int from) const;

  // Counterclockwise cycle through every ring site, starting at site 0.
  std::vector<int> ring_loop() const;

 private:
  friend Lattice build_ring(int, double);
  friend Lattice build_square(int, double, Vec2);
  friend Lattice build_dimer(double);

  void finish();

  LatticeKind kind_ = LatticeKind::ring;
  int extent_ = 0;
  double spacing_ = 1.0;
  Vec2 beam_center_;
  std::vector<Site> sites_;
  std::vector<Link> links_;
  std::vector<Plaquette> plaquettes_;
  std::vector<std::size_t> adj_start_;
  std::vector<int> adj_site_;
  std::vector<int> adj_link_;
};

/// Ring of n_sites (even) on a circle of circumference n_sites * spacing,
/// centred on the beam. Site j sits at azimuth 2 pi j / n_sites.
Lattice build_ring(int n_sites, double spacing);

/// side x side grid; the beam sits at the geometric centre plus center_offset.
Lattice build_square(int side, double spacing, Vec2 center_offset = {});

/// Two linked sites; the smallest system with an analytic solution.
Lattice build_dimer(double spacing);

/// Principal azimuth of point about center. Throws if they coincide.
double azimuth(Vec2 point, Vec2 center);

struct AzimuthEstimate {
  double linearized;
  double exact;
};

/// First-order azimuth of cell_center + offset about the origin, next to the
/// exact value. Valid when |offset| << |cell_center|.
AzimuthEstimate linearized_azimuth(Vec2 cell_center, Vec2 offset);

}  // namespace solenoid
