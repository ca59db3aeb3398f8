#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "fimlab/geometry.hpp"

namespace fimlab {

/// Hermitian operator in the computational basis, compressed row storage.
/// realness keeps track of whether every entry is real (the hypothesis of
/// the chi_F = chi_Fc equivalence), verified at assembly.
struct SparseHamiltonian {
  int n_sites = 0;
  std::int64_t dim = 0;
  std::vector<std::int64_t> row_ptr;
  std::vector<std::uint32_t> col;
  std::vector<std::complex<double>> val;
  bool real_elements = true;

  /// y = H x for real H.
  void matvec(const double* x, double* y) const;
  Eigen::MatrixXd dense_real() const;
  Eigen::MatrixXcd dense() const;
  /// Max absolute row sum; upper bound on the spectral norm.
  double norm_bound() const;
  void check_hermitian(double tol = 1e-12) const;
};

/// Triplet-based assembler for spin models. Each term is a coefficient times
/// a product of single-site Paulis (at most one per site).
class HamiltonianBuilder {
 public:
  explicit HamiltonianBuilder(int n_sites);

  enum Pauli { X, Y, Z };
  void add_term(double coeff, const std::vector<std::pair<int, Pauli>>& ops);
  void add_diagonal(const std::vector<double>& diag);

  /// Fermionic bilinears in the occupation basis with Jordan-Wigner signs
  /// (site 0 leftmost in the string): c_i |n> = (-1)^(sum_{j<i} n_j) ...
  void add_hopping(double coeff, int i, int j);   // coeff (c_i^dag c_j + h.c.)
  void add_pairing(double coeff, int i, int j);   // coeff (c_i c_j + h.c.)
  void add_number(double coeff, int i);           // coeff n_i

  SparseHamiltonian assemble() const;

 private:
  int n_sites_;
  std::int64_t dim_;
  std::vector<double> diagonal_;
  struct Entry {
    std::uint64_t row, col;
    std::complex<double> v;
  };
  std::vector<Entry> entries_;
};

enum class ModelKind { TfimChain, FilLadder1d, KitaevChain, XxzBondAlt };

/// Lattice model with its map from unit grid coordinates to physical
/// couplings baked in:
///   tfim-chain   H = sum_i (2 l0) X_i - sum_i Z_i Z_{i+1},    l0 in [0,1]
///   fil-ladder   H = (1-s) H0 + s H1 with K = 1, s = l0, U = l1
///   kitaev-chain t = 1, mu = 8 l0 - 4
///   xxz-bond-alt J' = 2.5 l0, delta = 3.5 l1, pinning 0.1 Z_0 and the
///                2e-8 (sum Z)^2 degeneracy guard
struct ModelSpec {
  ModelKind kind = ModelKind::TfimChain;
  int n_sites = 0;

  static ModelSpec tfim_chain(int n);
  static ModelSpec fil_ladder(int rungs);
  static ModelSpec kitaev_chain(int n);
  static ModelSpec xxz_bond_alt(int n);
  static ModelSpec by_name(const std::string& name, int n_sites);

  int dims() const;
  std::string name() const;
  LatticeGeometry geometry() const;
  SparseHamiltonian build(const std::array<double, 2>& lambda) const;
};

}  // namespace fimlab
