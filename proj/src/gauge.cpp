#include "solenoid/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "solenoid/errors.hpp"
#include "solenoid/parallel.hpp"
#include "solenoid/quadrature.hpp"

namespace solenoid {

namespace {

constexpr double kConvergenceTol = 1e-6;

FieldType field_of(const BeamField& beam) {
  for (const auto& t : beam.terms) {
    if (t.mode.l != 0) return FieldType::u1;
  }
  return FieldType::zero;
}

// Int w(r - a) conj(E(r)) w(r - b) over a square window centred between a and b.
Complex overlap(const BeamField& beam, Vec2 a, Vec2 b, double sigma, double window,
                const GaussLegendreRule& rule) {
  const Vec2 mid = midpoint(a, b);
  const double half = window * sigma;
  const double inv_two_s2 = 1.0 / (2.0 * sigma * sigma);
  const double wnorm = 1.0 / (kPi * sigma * sigma);  // product of two normalized Gaussians
  Complex sum{0.0, 0.0};
  for (std::size_t iy = 0; iy < rule.nodes.size(); ++iy) {
    const double y = mid.y + half * rule.nodes[iy];
    Complex row{0.0, 0.0};
    for (std::size_t ix = 0; ix < rule.nodes.size(); ++ix) {
      const Vec2 r{mid.x + half * rule.nodes[ix], y};
      const Vec2 da = r - a;
      const Vec2 db = r - b;
      const double w2 = wnorm * std::exp(-(da.x * da.x + da.y * da.y + db.x * db.x + db.y * db.y) * inv_two_s2);
      row += rule.weights[ix] * w2 * std::conj(beam_amplitude(beam, r));
    }
    sum += rule.weights[iy] * row;
  }
  return half * half * sum;
}

}  // namespace

void validate(const QuadratureSpec& quad) {
  if (quad.points_per_axis < 8) {
    throw ValidationError("gauge_builder: quadrature needs at least 8 points per axis (got " +
                          std::to_string(quad.points_per_axis) + ")");
  }
  if (!(quad.window > 0.0) || !std::isfinite(quad.window)) {
    throw ValidationError("gauge_builder: quadrature window must be positive");
  }
}

HoppingMatrix compute_hopping(const Lattice& lattice, const BeamField& beam, double sigma,
                              const QuadratureSpec& quad, double hop_scale) {
  validate(beam);
  validate(quad);
  if (!(sigma > 0.0) || !(sigma < 0.5 * lattice.spacing())) {
    throw ValidationError("gauge_builder: Wannier width sigma must lie in (0, a/2) (got " + std::to_string(sigma) + ")");
  }
  const GaussLegendreRule coarse = gauss_legendre(quad.points_per_axis);
  const GaussLegendreRule fine = gauss_legendre(quad.points_per_axis + 4);
  const auto links = lattice.links();
  std::vector<Complex> base(links.size());
  std::vector<Complex> check(links.size());
  parallel_for(links.size(), worker_count(), [&](std::size_t k) {
    const Vec2 g = lattice.site(links[k].g).position;
    const Vec2 e = lattice.site(links[k].e).position;
    base[k] = overlap(beam, g, e, sigma, quad.window, coarse);
    check[k] = overlap(beam, g, e, sigma, quad.window, fine);
  });

  double scale = 0.0;
  for (const auto& c : check) scale = std::max(scale, std::abs(c));
  std::vector<Complex> amps(links.size());
  for (std::size_t k = 0; k < links.size(); ++k) {
    // Integrals that vanish to round-off are compared on the scale of the largest one.
    const double denom = std::max(std::abs(check[k]), 1e-12 * scale);
    const double change = denom > 0.0 ? std::abs(check[k] - base[k]) / denom : 0.0;
    if (change > kConvergenceTol) {
      throw NumericalGuardError("gauge_builder: hopping integral on link " + std::to_string(k) +
                                " changed by " + std::to_string(change) + " between " +
                                std::to_string(quad.points_per_axis) + " and " +
                                std::to_string(quad.points_per_axis + 4) +
                                " points per axis; use a finer quadrature rule");
    }
    amps[k] = hop_scale * base[k];
  }
  return HoppingMatrix::abelian(lattice, std::move(amps), hop_scale, field_of(beam));
}

HoppingMatrix phase_only_hopping(const Lattice& lattice, int l, double j0) {
  if (!(j0 > 0.0) || !std::isfinite(j0)) throw ValidationError("gauge_builder: J0 must be positive");
  std::vector<Complex> amps;
  amps.reserve(lattice.links().size());
  for (std::size_t k = 0; k < lattice.links().size(); ++k) {
    const double phi = azimuth(lattice.link_midpoint(static_cast<int>(k)), lattice.beam_center());
    amps.push_back(std::polar(j0, -l * phi));
  }
  return HoppingMatrix::abelian(lattice, std::move(amps), j0, l == 0 ? FieldType::zero : FieldType::u1);
}

HoppingMatrix normalize_hopping(const HoppingMatrix& h, double target) {
  if (!(target > 0.0)) throw ValidationError("gauge_builder: normalization target must be positive");
  double biggest = 0.0;
  for (std::size_t k = 0; k < h.links().size(); ++k) {
    biggest = std::max(biggest, h.spin_dim() == 1 ? std::abs(h.amplitude(k)) : h.block(k).norm());
  }
  if (biggest == 0.0) throw ValidationError("gauge_builder: cannot normalize an all-zero hopping matrix");
  return h.scaled(target / biggest).with_hop_scale(target);
}

double plaquette_flux(const HoppingMatrix& h, const Plaquette& plaquette) {
  if (h.spin_dim() != 1) {
    throw ValidationError("gauge_builder: plaquette flux is defined for Abelian fields; use wilson_loop for spin_dim 2");
  }
  const auto& s = plaquette.sites;
  // Start at the G corner so the signs alternate + - + - along the canonical links.
  int start = -1;
  for (int q = 0; q < 4; ++q) {
    const auto a = s[static_cast<std::size_t>(q)];
    const auto b = s[static_cast<std::size_t>((q + 1) % 4)];
    const auto link = h.link_index(a, b);
    if (!link) {
      throw ValidationError("gauge_builder: plaquette sites " + std::to_string(a) + " and " +
                            std::to_string(b) + " are not linked");
    }
    if (start < 0 && h.links()[*link].g == a) start = q;
  }
  double total = 0.0;
  for (int q = 0; q < 4; ++q) {
    const auto a = s[static_cast<std::size_t>((start + q) % 4)];
    const auto b = s[static_cast<std::size_t>((start + q + 1) % 4)];
    const auto link = *h.link_index(a, b);
    const double sign = (q % 2 == 0) ? 1.0 : -1.0;
    total += sign * std::arg(h.amplitude(link));
  }
  return wrap_angle(total);
}

double loop_phase(const HoppingMatrix& h, std::span<const int> loop) {
  if (h.spin_dim() != 1) {
    throw ValidationError("gauge_builder: loop phase is defined for Abelian fields; use wilson_loop for spin_dim 2");
  }
  if (loop.size() < 2) throw ValidationError("gauge_builder: a loop needs at least two sites");
  double total = 0.0;
  for (std::size_t k = 0; k < loop.size(); ++k) {
    const int a = loop[k];
    const int b = loop[(k + 1) % loop.size()];
    const auto e = h.entry(a, b);
    if (!e) {
      throw ValidationError("gauge_builder: loop is broken, sites " + std::to_string(a) + " and " +
                            std::to_string(b) + " are not linked");
    }
    total += std::arg(*e);
  }
  return wrap_angle(total);
}

HoppingMatrix build_nonabelian(const HoppingMatrix& abelian) {
  if (abelian.spin_dim() != 1) throw ValidationError("gauge_builder: build_nonabelian needs a spin_dim 1 input");
  std::vector<SpinBlock> blocks;
  blocks.reserve(abelian.links().size());
  for (std::size_t k = 0; k < abelian.links().size(); ++k) {
    const Complex j = abelian.amplitude(k);
    if (std::abs(j) == 0.0) {
      throw ValidationError("gauge_builder: link " + std::to_string(k) +
                            " has zero amplitude; the SU(2) link cannot be normalized");
    }
    SpinBlock b;
    b << Complex{0.0, 0.0}, Complex{std::abs(j), 0.0}, j, Complex{0.0, 0.0};
    blocks.push_back(b);
  }
  return HoppingMatrix::nonabelian_like(abelian, std::move(blocks), abelian.hop_scale());
}

Eigen::Matrix2cd wilson_loop(const HoppingMatrix& h, std::span<const int> loop) {
  if (h.spin_dim() != 2) throw ValidationError("gauge_builder: wilson_loop needs a spin_dim 2 hopping matrix");
  if (loop.size() < 2) throw ValidationError("gauge_builder: a loop needs at least two sites");
  Eigen::Matrix2cd w = Eigen::Matrix2cd::Identity();
  for (std::size_t k = 0; k < loop.size(); ++k) {
    const int a = loop[k];
    const int b = loop[(k + 1) % loop.size()];
    const auto blk = h.block_entry(a, b);
    if (!blk) {
      throw ValidationError("gauge_builder: loop is broken, sites " + std::to_string(a) + " and " +
                            std::to_string(b) + " are not linked");
    }
    const double det = std::abs(blk->determinant());
    if (det == 0.0) {
      throw ValidationError("gauge_builder: singular link between sites " + std::to_string(a) + " and " +
                            std::to_string(b));
    }
    w = w * (*blk / std::sqrt(det));
  }
  return w;
}

AmplitudeFit match_l0_amplitude(const Lattice& lattice, const LGMode& target, ExponentConvention convention,
                                double target_scale) {
  validate(target);
  if (lattice.links().empty()) throw ValidationError("gauge_builder: amplitude fit needs at least one link");
  const LGMode m00{0, 0, target.waist};
  const LGMode m10{1, 0, target.waist};
  const auto n = static_cast<Eigen::Index>(lattice.links().size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double r = norm(lattice.link_midpoint(static_cast<int>(k)) - lattice.beam_center());
    design(k, 0) = lg_radial_amplitude(m00, r, convention);
    design(k, 1) = lg_radial_amplitude(m10, r, convention);
    rhs(k) = target_scale * std::abs(lg_radial_amplitude(target, r, convention));
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(1e-10);
  cod.compute(design);
  if (cod.rank() == 0) {
    throw ValidationError("gauge_builder: amplitude fit is degenerate (both l = 0 modes vanish at every link)");
  }
  const Eigen::Vector2d c = cod.solve(rhs);
  const double target_norm = rhs.norm();
  const double residual = target_norm > 0.0 ? (design * c - rhs).norm() / target_norm : 0.0;
  return {c(0), c(1), residual};
}

double FluxMap::block_sum(int row0, int col0, int n) const {
  if (row0 < 0 || col0 < 0 || n < 1 || row0 + n > rows || col0 + n > cols) {
    throw ValidationError("gauge_builder: flux block lies outside the plaquette grid");
  }
  double sum = 0.0;
  for (int r = row0; r < row0 + n; ++r) {
    for (int c = col0; c < col0 + n; ++c) sum += at(r, c);
  }
  return sum;
}

const Plaquette& centre_plaquette(const Lattice& lattice) {
  if (lattice.kind() != LatticeKind::square) throw ValidationError("gauge_builder: plaquettes exist only on square lattices");
  const Plaquette* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& p : lattice.plaquettes()) {
    const Vec2 c = 0.25 * (lattice.site(p.sites[0]).position + lattice.site(p.sites[1]).position +
                           lattice.site(p.sites[2]).position + lattice.site(p.sites[3]).position);
    const double d = norm(c - lattice.beam_center());
    if (d < best_d) {
      best_d = d;
      best = &p;
    }
  }
  return *best;
}

FluxMap flux_map(const Lattice& lattice, const HoppingMatrix& h) {
  if (lattice.kind() != LatticeKind::square) {
    throw ValidationError("gauge_builder: flux maps need a square lattice (a " +
                          std::string(to_string(lattice.kind())) + " has no plaquettes)");
  }
  FluxMap map;
  map.rows = lattice.extent() - 1;
  map.cols = lattice.extent() - 1;
  for (const auto& p : lattice.plaquettes()) map.flux.push_back(plaquette_flux(h, p));

  const auto& centre = centre_plaquette(lattice);
  map.loops["centre_cell"] = loop_phase(h, centre.sites);

  std::vector<int> boundary;
  const int n = lattice.extent();
  for (int c = 0; c < n; ++c) boundary.push_back(lattice.square_index(0, c));
  for (int r = 1; r < n; ++r) boundary.push_back(lattice.square_index(r, n - 1));
  for (int c = n - 2; c >= 0; --c) boundary.push_back(lattice.square_index(n - 1, c));
  for (int r = n - 2; r >= 1; --r) boundary.push_back(lattice.square_index(r, 0));
  map.loops["boundary"] = loop_phase(h, boundary);
  return map;
}

}  // namespace solenoid
