#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "solenoid/lattice.hpp"

namespace solenoid {

using Complex = std::complex<double>;
using SpinBlock = Eigen::Matrix2cd;

enum class FieldType { zero, u1, su2 };
std::string_view to_string(FieldType field);

/// Sparse nearest-neighbour hopping J_ij of H = -sum_<ij> (J_ij a_i^+ a_j + h.c.).
///
/// Amplitudes are supplied on the canonical G -> E links; every reverse entry is
/// filled in as the conjugate (transpose) when the matrix is built. Storage is a
/// row-compressed list of directed entries, which is what the time stepper walks.
class HoppingMatrix {
 public:
  static HoppingMatrix abelian(const Lattice& lattice, std::vector<Complex> ge_amplitudes,
                               double hop_scale, FieldType field);
  static HoppingMatrix nonabelian(const Lattice& lattice, std::vector<SpinBlock> ge_blocks,
                                  double hop_scale);
  // Same links as `layout`, carrying 2x2 blocks.
  static HoppingMatrix nonabelian_like(const HoppingMatrix& layout, std::vector<SpinBlock> ge_blocks,
                                       double hop_scale);

  int spin_dim() const { return spin_dim_; }
  int num_sites() const { return num_sites_; }
  std::size_t dimension() const { return static_cast<std::size_t>(num_sites_) * spin_dim_; }
  // Hopping energy scale in units of E_R; the reference J of the nonlinear term.
  double hop_scale() const { return hop_scale_; }
  FieldType field() const { return field_; }
  LatticeKind lattice_kind() const { return lattice_kind_; }
  int lattice_extent() const { return lattice_extent_; }

  std::span<const Link> links() const { return links_; }
  Complex amplitude(std::size_t link) const { return amplitudes_.at(link); }
  const SpinBlock& block(std::size_t link) const { return blocks_.at(link); }

  // Canonical link joining i and j, if any.
  std::optional<std::size_t> link_index(int i, int j) const;

  // Directed entry J_ij, if i and j are linked. Abelian only.
  std::optional<Complex> entry(int i, int j) const;
  // Directed 2x2 block, if i and j are linked. Non-Abelian only.
  std::optional<SpinBlock> block_entry(int i, int j) const;

  // max_i sum_j ||J_ij||, the operator-norm bound used by the step-size guard.
  double max_row_sum() const;

  // Largest deviation of any stored entry from the conjugate transpose of its mirror.
  double hermiticity_error() const;

  // out = H psi, site-major with spin_dim components per site.
  void apply(std::span<const Complex> psi, std::span<Complex> out) const;

  Eigen::MatrixXcd to_dense() const;

  HoppingMatrix negated() const;
  HoppingMatrix scaled(double factor) const;
  HoppingMatrix with_hop_scale(double hop_scale) const;
  // J_ij -> exp(i theta_i) J_ij exp(-i theta_j).
  HoppingMatrix gauge_transformed(std::span<const double> site_phases) const;

 private:
  HoppingMatrix() = default;
  void build_rows(const Lattice& lattice);
  void rebuild_values();
  std::optional<std::size_t> find(int i, int j) const;

  int spin_dim_ = 1;
  int num_sites_ = 0;
  double hop_scale_ = 0.0;
  FieldType field_ = FieldType::zero;
  LatticeKind lattice_kind_ = LatticeKind::ring;
  int lattice_extent_ = 0;

  std::vector<Link> links_;
  std::vector<Complex> amplitudes_;  // per canonical link, spin_dim 1
  std::vector<SpinBlock> blocks_;    // per canonical link, spin_dim 2

  std::vector<std::size_t> row_start_;
  std::vector<int> col_;
  std::vector<int> entry_link_;
  std::vector<bool> entry_forward_;  // true when the entry is the G -> E direction
  std::vector<Complex> values_;
  std::vector<SpinBlock> block_values_;
};

}  // namespace solenoid
