#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "fimlab/fidelity.hpp"
#include "fimlab/rng.hpp"

namespace fimlab {

/// Haar-random unitary: QR of a complex Gaussian matrix with the R-diagonal
/// phase fix. Columns form a Haar-random orthonormal basis.
Eigen::MatrixXcd random_haar_basis(int dim, CounterRng& rng);

/// Random normalized state with n_derivs directional derivatives satisfying
/// Re<psi|dpsi> = 0.
QuantumState random_state(int dim, int n_derivs, CounterRng& rng);

/// Analytic one-parameter full-rank density family
/// rho(t) = (C + t D) / Tr(C + t D) with C positive definite and |t| small,
/// used as an oracle target with a closed-form derivative.
struct RandomDensityFamily {
  Eigen::MatrixXcd c;
  Eigen::MatrixXcd d;

  static RandomDensityFamily draw(int dim, CounterRng& rng);
  DensityMatrix rho(double t) const;
  Eigen::MatrixXcd drho(double t) const;
};

struct Theorem1Report {
  Eigen::MatrixXd chi_f;
  Eigen::MatrixXd chi_fc;
  double max_rel_err = 0.0;
  int retries = 0;
  bool pass = false;
};

/// Draws H(lambda) = A + sum_mu lambda_mu B_mu + sum_mu lambda_mu^2 C_mu with
/// independent symmetric Gaussian matrices, computes the ground state and its
/// derivatives by first-order perturbation theory at lambda_mu = 0.3, and
/// compares chi_F against chi_Fc of the computational-basis distribution.
/// Draws whose spectral gap is below 1e-4 * ||H|| are redrawn. With
/// complex_perturbation the Hamiltonian gets complex off-diagonal elements,
/// outside the theorem's hypotheses (then chi_Fc <= chi_F may be strict).
Theorem1Report check_theorem1(int dim, int n_params, std::uint64_t seed,
                              double tol, bool complex_perturbation = false);

struct Theorem2Report {
  double mean = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  bool pass = false;
};

/// Monte Carlo check of E[chi_Fc] = chi_F / 2 over Haar-random measurement
/// bases, on the first parameter direction. Passes when the sample mean is
/// within 4 standard errors of the target.
Theorem2Report check_theorem2(const QuantumState& state, int n_bases,
                              std::uint64_t seed);

struct Prop5Report {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool tight = false;
};

/// Evaluates both sides of the kernel-term bound contracted with a direction
/// vector: lhs = v' (kernel_hessian/2) v, rhs = the trace expression through
/// the inverse of rho restricted to its positive eigenspace.
Prop5Report check_prop5_bound(const DensityMatrix& rho,
                              const std::vector<Eigen::MatrixXcd>& drho,
                              const Eigen::MatrixXd& kernel_hessian,
                              const Eigen::VectorXd& direction,
                              double tol = 1e-8);

}  // namespace fimlab
