#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fimlab/distribution.hpp"

namespace fimlab {

/// Normalized pure state with optional directional derivatives, one per
/// parameter direction. Norm preservation requires Re<psi|d_mu psi> = 0.
struct QuantumState {
  Eigen::VectorXcd amps;
  std::vector<Eigen::VectorXcd> derivs;

  void validate(double norm_tol = 1e-12) const;
  DiscreteDistribution measurement_distribution() const;
};

/// Density matrix with a cached eigendecomposition and the split of the
/// spectrum into positive (ascending order, the last n_plus entries) and
/// null eigenspaces. Eigenvalues below rank_cut_rel * max are treated as
/// exact zeros; tiny negatives above -1e-12 are clamped.
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd mat, double rank_cut_rel = 1e-10);

  const Eigen::MatrixXcd& mat() const { return mat_; }
  const Eigen::VectorXd& eigenvalues() const { return eigvals_; }
  const Eigen::MatrixXcd& eigenvectors() const { return eigvecs_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  int n_plus() const { return n_plus_; }
  int n_null() const { return dim() - n_plus_; }
  /// Columns spanning the positive / null eigenspaces.
  Eigen::MatrixXcd positive_basis() const;
  Eigen::MatrixXcd null_basis() const;

 private:
  Eigen::MatrixXcd mat_;
  Eigen::VectorXd eigvals_;   // ascending, clamped >= 0
  Eigen::MatrixXcd eigvecs_;  // columns match eigvals_
  int n_plus_ = 0;
};

/// chi matrix split into the two contributions of the explicit formulas:
/// the spectral sum and the rank-correction (kernel) term.
struct SusceptibilityResult {
  Eigen::MatrixXd first_term;
  Eigen::MatrixXd second_term;

  Eigen::MatrixXd chi() const { return first_term + second_term; }
  double contracted(const Eigen::VectorXd& v) const {
    return v.dot(chi() * v);
  }
};

/// Bhattacharyya coefficient sum_x sqrt(p_x q_x), in [0, 1].
double classical_fidelity(const DiscreteDistribution& p,
                          const DiscreteDistribution& q);

/// Uhlmann fidelity ||sqrt(rho) sqrt(sigma)||_1.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Pure-state susceptibility Re<d_mu psi|d_nu psi> - <d_mu psi|psi><psi|d_nu psi>.
/// Second term of the result is identically zero.
SusceptibilityResult chi_pure(const QuantumState& state);

/// Mixed-state susceptibility. drho are the Hermitian directional derivatives
/// of rho; kernel_hessian is d_mu d_nu Tr(P0 rho(lambda') P0^dagger), supplied
/// by the caller (zero for full-rank rho).
SusceptibilityResult chi_mixed(const DensityMatrix& rho,
                               const std::vector<Eigen::MatrixXcd>& drho,
                               const Eigen::MatrixXd& kernel_hessian);

/// Alternate full-sum form of the spectral term that is valid whenever the
/// rank bound is tight: sums over all pairs with at least one positive
/// eigenvalue instead of adding the kernel term.
Eigen::MatrixXd chi_mixed_full_sum(const DensityMatrix& rho,
                                   const std::vector<Eigen::MatrixXcd>& drho);

/// Discrete-distribution susceptibility; dp are directional derivatives of
/// the probabilities (each summing to 0), zero_set_hessian is
/// d_mu d_nu sum_{z in S0} p_z.
SusceptibilityResult chi_discrete(const DiscreteDistribution& p,
                                  const std::vector<std::vector<double>>& dp,
                                  const Eigen::MatrixXd& zero_set_hessian);

/// Finite-difference FIM across one grid segment:
/// g = (8 / delta^2) * (1 - F_c(p_a, p_b)).
double finite_diff_fim_segment(const DiscreteDistribution& p_a,
                               const DiscreteDistribution& p_b, double delta);

/// Quantum variant using |<psi_a|psi_b>|.
double finite_diff_fim_segment(const QuantumState& a, const QuantumState& b,
                               double delta);

}  // namespace fimlab
