#include "solenoid/hopping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "solenoid/errors.hpp"

namespace solenoid {

std::string_view to_string(FieldType field) {
  switch (field) {
    case FieldType::zero: return "zero";
    case FieldType::u1: return "u1";
    case FieldType::su2: return "su2";
  }
  return "unknown";
}

HoppingMatrix HoppingMatrix::abelian(const Lattice& lattice, std::vector<Complex> ge_amplitudes,
                                     double hop_scale, FieldType field) {
  if (ge_amplitudes.size() != lattice.links().size()) {
    throw ValidationError("gauge_builder: expected one amplitude per link (" +
                          std::to_string(lattice.links().size()) + "), got " +
                          std::to_string(ge_amplitudes.size()));
  }
  HoppingMatrix h;
  h.spin_dim_ = 1;
  h.hop_scale_ = hop_scale;
  h.field_ = field;
  h.amplitudes_ = std::move(ge_amplitudes);
  h.build_rows(lattice);
  return h;
}

HoppingMatrix HoppingMatrix::nonabelian(const Lattice& lattice, std::vector<SpinBlock> ge_blocks,
                                        double hop_scale) {
  if (ge_blocks.size() != lattice.links().size()) {
    throw ValidationError("gauge_builder: expected one 2x2 block per link (" +
                          std::to_string(lattice.links().size()) + "), got " +
                          std::to_string(ge_blocks.size()));
  }
  HoppingMatrix h;
  h.spin_dim_ = 2;
  h.hop_scale_ = hop_scale;
  h.field_ = FieldType::su2;
  h.blocks_ = std::move(ge_blocks);
  h.build_rows(lattice);
  return h;
}

HoppingMatrix HoppingMatrix::nonabelian_like(const HoppingMatrix& layout, std::vector<SpinBlock> ge_blocks,
                                             double hop_scale) {
  if (ge_blocks.size() != layout.links_.size()) {
    throw ValidationError("gauge_builder: expected one 2x2 block per link (" +
                          std::to_string(layout.links_.size()) + "), got " + std::to_string(ge_blocks.size()));
  }
  HoppingMatrix h = layout;
  h.spin_dim_ = 2;
  h.hop_scale_ = hop_scale;
  h.field_ = FieldType::su2;
  h.amplitudes_.clear();
  h.values_.clear();
  h.blocks_ = std::move(ge_blocks);
  h.rebuild_values();
  return h;
}

void HoppingMatrix::build_rows(const Lattice& lattice) {
  num_sites_ = lattice.size();
  lattice_kind_ = lattice.kind();
  lattice_extent_ = lattice.extent();
  links_.assign(lattice.links().begin(), lattice.links().end());
  row_start_.assign(1, 0);
  col_.clear();
  entry_link_.clear();
  entry_forward_.clear();
  for (int i = 0; i < num_sites_; ++i) {
    for (int j : lattice.neighbors(i)) {
      const int link = *lattice.link_between(i, j);
      col_.push_back(j);
      entry_link_.push_back(link);
      entry_forward_.push_back(links_[static_cast<std::size_t>(link)].g == i);
    }
    row_start_.push_back(col_.size());
  }
  rebuild_values();
}

void HoppingMatrix::rebuild_values() {
  const std::size_t n = col_.size();
  if (spin_dim_ == 1) {
    values_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = amplitudes_[static_cast<std::size_t>(entry_link_[k])];
      values_[k] = entry_forward_[k] ? a : std::conj(a);
    }
  } else {
    block_values_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const SpinBlock& b = blocks_[static_cast<std::size_t>(entry_link_[k])];
      block_values_[k] = entry_forward_[k] ? b : SpinBlock(b.adjoint());
    }
  }
}

std::optional<std::size_t> HoppingMatrix::find(int i, int j) const {
  if (i < 0 || i >= num_sites_) return std::nullopt;
  const auto k = static_cast<std::size_t>(i);
  for (std::size_t a = row_start_[k]; a < row_start_[k + 1]; ++a) {
    if (col_[a] == j) return a;
  }
  return std::nullopt;
}

std::optional<std::size_t> HoppingMatrix::link_index(int i, int j) const {
  if (auto k = find(i, j)) return static_cast<std::size_t>(entry_link_[*k]);
  return std::nullopt;
}

std::optional<Complex> HoppingMatrix::entry(int i, int j) const {
  if (spin_dim_ != 1) throw ValidationError("gauge_builder: entry() on a spin_dim 2 matrix; use block_entry()");
  if (auto k = find(i, j)) return values_[*k];
  return std::nullopt;
}

std::optional<SpinBlock> HoppingMatrix::block_entry(int i, int j) const {
  if (spin_dim_ != 2) throw ValidationError("gauge_builder: block_entry() on a spin_dim 1 matrix; use entry()");
  if (auto k = find(i, j)) return block_values_[*k];
  return std::nullopt;
}

double HoppingMatrix::max_row_sum() const {
  double best = 0.0;
  for (int i = 0; i < num_sites_; ++i) {
    double sum = 0.0;
    for (std::size_t a = row_start_[static_cast<std::size_t>(i)]; a < row_start_[static_cast<std::size_t>(i) + 1]; ++a) {
      // Frobenius norm bounds the spectral norm of a 2x2 block.
      sum += spin_dim_ == 1 ? std::abs(values_[a]) : block_values_[a].norm();
    }
    best = std::max(best, sum);
  }
  return best;
}

double HoppingMatrix::hermiticity_error() const {
  double worst = 0.0;
  for (int i = 0; i < num_sites_; ++i) {
    for (std::size_t a = row_start_[static_cast<std::size_t>(i)]; a < row_start_[static_cast<std::size_t>(i) + 1]; ++a) {
      const auto mirror = find(col_[a], i);
      if (!mirror) return std::numeric_limits<double>::infinity();
      const double err = spin_dim_ == 1 ? std::abs(values_[a] - std::conj(values_[*mirror]))
                                        : (block_values_[a] - block_values_[*mirror].adjoint()).norm();
      worst = std::max(worst, err);
    }
  }
  return worst;
}

void HoppingMatrix::apply(std::span<const Complex> psi, std::span<Complex> out) const {
  const std::size_t n = static_cast<std::size_t>(num_sites_);
  if (spin_dim_ == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex acc{0.0, 0.0};
      for (std::size_t a = row_start_[i]; a < row_start_[i + 1]; ++a) {
        acc += values_[a] * psi[static_cast<std::size_t>(col_[a])];
      }
      out[i] = -acc;
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Complex up{0.0, 0.0};
    Complex down{0.0, 0.0};
    for (std::size_t a = row_start_[i]; a < row_start_[i + 1]; ++a) {
      const SpinBlock& b = block_values_[a];
      const std::size_t j = 2 * static_cast<std::size_t>(col_[a]);
      up += b(0, 0) * psi[j] + b(0, 1) * psi[j + 1];
      down += b(1, 0) * psi[j] + b(1, 1) * psi[j + 1];
    }
    out[2 * i] = -up;
    out[2 * i + 1] = -down;
  }
}

Eigen::MatrixXcd HoppingMatrix::to_dense() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < num_sites_; ++i) {
    for (std::size_t a = row_start_[static_cast<std::size_t>(i)]; a < row_start_[static_cast<std::size_t>(i) + 1]; ++a) {
      const int j = col_[a];
      if (spin_dim_ == 1) {
        m(i, j) = -values_[a];
      } else {
        m.block<2, 2>(2 * i, 2 * j) = -block_values_[a];
      }
    }
  }
  return m;
}

HoppingMatrix HoppingMatrix::negated() const { return scaled(-1.0); }

HoppingMatrix HoppingMatrix::scaled(double factor) const {
  HoppingMatrix h = *this;
  for (auto& a : h.amplitudes_) a *= factor;
  for (auto& b : h.blocks_) b *= factor;
  h.hop_scale_ = std::abs(factor) * hop_scale_;
  h.rebuild_values();
  return h;
}

HoppingMatrix HoppingMatrix::with_hop_scale(double hop_scale) const {
  HoppingMatrix h = *this;
  h.hop_scale_ = hop_scale;
  return h;
}

HoppingMatrix HoppingMatrix::gauge_transformed(std::span<const double> site_phases) const {
  if (site_phases.size() != static_cast<std::size_t>(num_sites_)) {
    throw ValidationError("gauge_builder: need one gauge phase per site");
  }
  HoppingMatrix h = *this;
  for (std::size_t k = 0; k < links_.size(); ++k) {
    const double theta = site_phases[static_cast<std::size_t>(links_[k].g)] -
                         site_phases[static_cast<std::size_t>(links_[k].e)];
    const Complex u = std::polar(1.0, theta);
    if (spin_dim_ == 1) {
      h.amplitudes_[k] *= u;
    } else {
      h.blocks_[k] *= u;
    }
  }
  h.rebuild_values();
  return h;
}

}  // namespace solenoid
