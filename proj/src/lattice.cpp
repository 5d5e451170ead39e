#include "solenoid/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "solenoid/errors.hpp"

namespace solenoid {

std::string_view to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::ring: return "ring";
    case LatticeKind::square: return "square";
    case LatticeKind::dimer: return "dimer";
  }
  return "unknown";
}

std::string_view to_string(Sublattice s) { return s == Sublattice::G ? "G" : "E"; }

double azimuth(Vec2 point, Vec2 center) {
  const Vec2 d = point - center;
  if (d.x == 0.0 && d.y == 0.0) {
    throw ValidationError("lattice_geometry: azimuth is undefined at the beam center");
  }
  return wrap_angle(std::atan2(d.y, d.x));
}

AzimuthEstimate linearized_azimuth(Vec2 cell_center, Vec2 offset) {
  const double r0 = norm(cell_center);
  if (r0 == 0.0) throw ValidationError("lattice_geometry: linearized azimuth needs |r0| > 0");
  const double phi0 = std::atan2(cell_center.y, cell_center.x);
  const double lin = phi0 + (std::cos(phi0) * offset.y - std::sin(phi0) * offset.x) / r0;
  return {lin, azimuth(cell_center + offset, Vec2{})};
}

std::span<const int> Lattice::neighbors(int i) const {
  const auto k = static_cast<std::size_t>(i);
  return {adj_site_.data() + adj_start_.at(k), adj_start_.at(k + 1) - adj_start_[k]};
}

std::optional<int> Lattice::link_between(int i, int j) const {
  if (i < 0 || j < 0 || i >= size() || j >= size()) return std::nullopt;
  const auto k = static_cast<std::size_t>(i);
  for (std::size_t a = adj_start_[k]; a < adj_start_[k + 1]; ++a) {
    if (adj_site_[a] == j) return adj_link_[a];
  }
  return std::nullopt;
}

Vec2 Lattice::link_midpoint(int link) const {
  const Link& l = links_.at(static_cast<std::size_t>(link));
  return midpoint(site(l.g).position, site(l.e).position);
}

int Lattice::square_index(int row, int col) const {
  if (kind_ != LatticeKind::square) throw ValidationError("lattice_geometry: square_index on a non-square lattice");
  if (row < 0 || col < 0 || row >= extent_ || col >= extent_) {
    throw ValidationError("lattice_geometry: square site (" + std::to_string(row) + ", " +
                          std::to_string(col) + ") is outside the lattice");
  }
  return row * extent_ + col;
}

const Plaquette& Lattice::plaquette(int row, int col) const {
  if (kind_ != LatticeKind::square || row < 0 || col < 0 || row >= extent_ - 1 || col >= extent_ - 1) {
    throw ValidationError("lattice_geometry: no plaquette (" + std::to_string(row) + ", " +
                          std::to_string(col) + ")");
  }
  return plaquettes_[static_cast<std::size_t>(row * (extent_ - 1) + col)];
}

std::vector<int> Lattice::graph_distances(int from) const {
  if (from < 0 || from >= size()) {
    throw ValidationError("lattice_geometry: site " + std::to_string(from) + " is outside the lattice");
  }
  std::vector<int> dist(sites_.size(), -1);
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(from)] = 0;
  frontier.push(from);
  while (!frontier.empty()) {
    const int a = frontier.front();
    frontier.pop();
    for (int b : neighbors(a)) {
      if (dist[static_cast<std::size_t>(b)] < 0) {
        dist[static_cast<std::size_t>(b)] = dist[static_cast<std::size_t>(a)] + 1;
        frontier.push(b);
      }
    }
  }
  return dist;
}

std::vector<int> Lattice::ring_loop() const {
  if (kind_ != LatticeKind::ring) throw ValidationError("lattice_geometry: ring_loop on a non-ring lattice");
  std::vector<int> loop(sites_.size());
  for (std::size_t i = 0; i < loop.size(); ++i) loop[i] = static_cast<int>(i);
  return loop;
}

void Lattice::finish() {
  for (auto& s : sites_) {
    const Vec2 d = s.position - beam_center_;
    // A site exactly on the beam axis has no azimuth; report 0 there.
    s.azimuth = (d.x == 0.0 && d.y == 0.0) ? 0.0 : wrap_angle(std::atan2(d.y, d.x));
  }
  std::vector<std::vector<std::pair<int, int>>> adj(sites_.size());
  for (std::size_t k = 0; k < links_.size(); ++k) {
    const Link& l = links_[k];
    adj[static_cast<std::size_t>(l.g)].emplace_back(l.e, static_cast<int>(k));
    adj[static_cast<std::size_t>(l.e)].emplace_back(l.g, static_cast<int>(k));
  }
  adj_start_.assign(1, 0);
  adj_site_.clear();
  adj_link_.clear();
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    for (auto [site, link] : row) {
      adj_site_.push_back(site);
      adj_link_.push_back(link);
    }
    adj_start_.push_back(adj_site_.size());
  }
}

namespace {

Link oriented(const std::vector<Site>& sites, int a, int b) {
  return sites[static_cast<std::size_t>(a)].sublattice == Sublattice::G ? Link{a, b} : Link{b, a};
}

void require_spacing(double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw ValidationError("lattice_geometry: lattice constant must be positive and finite");
  }
}

}  // namespace

Lattice build_ring(int n_sites, double spacing) {
  require_spacing(spacing);
  if (n_sites < 4) {
    throw ValidationError("lattice_geometry: ring needs at least 4 sites (got " + std::to_string(n_sites) + ")");
  }
  if (n_sites % 2 != 0) {
    throw ValidationError("lattice_geometry: ring site count must be even so G and E sites alternate (got " +
                          std::to_string(n_sites) + ")");
  }
  Lattice lat;
  lat.kind_ = LatticeKind::ring;
  lat.extent_ = n_sites;
  lat.spacing_ = spacing;
  lat.beam_center_ = {0.0, 0.0};
  const double radius = n_sites * spacing / kTwoPi;
  lat.sites_.reserve(static_cast<std::size_t>(n_sites));
  for (int j = 0; j < n_sites; ++j) {
    const double theta = kTwoPi * j / n_sites;
    lat.sites_.push_back(Site{j, {radius * std::cos(theta), radius * std::sin(theta)},
                              j % 2 == 0 ? Sublattice::G : Sublattice::E, 0.0});
  }
  for (int j = 0; j < n_sites; ++j) lat.links_.push_back(oriented(lat.sites_, j, (j + 1) % n_sites));
  lat.finish();
  return lat;
}

Lattice build_square(int side, double spacing, Vec2 center_offset) {
  require_spacing(spacing);
  if (side < 2) {
    throw ValidationError("lattice_geometry: square side must be >= 2 (got " + std::to_string(side) + ")");
  }
  if (!std::isfinite(center_offset.x) || !std::isfinite(center_offset.y)) {
    throw ValidationError("lattice_geometry: center offset must be finite");
  }
  Lattice lat;
  lat.kind_ = LatticeKind::square;
  lat.extent_ = side;
  lat.spacing_ = spacing;
  const double mid = 0.5 * (side - 1) * spacing;
  lat.beam_center_ = Vec2{mid, mid} + center_offset;
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      lat.sites_.push_back(Site{row * side + col, {col * spacing, row * spacing},
                                (row + col) % 2 == 0 ? Sublattice::G : Sublattice::E, 0.0});
    }
  }
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      const int here = row * side + col;
      if (col + 1 < side) lat.links_.push_back(oriented(lat.sites_, here, here + 1));
      if (row + 1 < side) lat.links_.push_back(oriented(lat.sites_, here, here + side));
    }
  }
  for (int row = 0; row + 1 < side; ++row) {
    for (int col = 0; col + 1 < side; ++col) {
      const int ll = row * side + col;
      lat.plaquettes_.push_back(Plaquette{row, col, {ll, ll + 1, ll + side + 1, ll + side}});
    }
  }
  lat.finish();
  return lat;
}

Lattice build_dimer(double spacing) {
  require_spacing(spacing);
  Lattice lat;
  lat.kind_ = LatticeKind::dimer;
  lat.extent_ = 2;
  lat.spacing_ = spacing;
  lat.beam_center_ = {0.5 * spacing, -spacing};
  lat.sites_.push_back(Site{0, {0.0, 0.0}, Sublattice::G, 0.0});
  lat.sites_.push_back(Site{1, {spacing, 0.0}, Sublattice::E, 0.0});
  lat.links_.push_back(Link{0, 1});
  lat.finish();
  return lat;
}

}  // namespace solenoid
