#include "fimlab/fidelity.hpp"

#include <cmath>

#include "fimlab/errors.hpp"

namespace fimlab {

void QuantumState::validate(double norm_tol) const {
  require(amps.size() >= 1, "empty state");
  require(std::abs(amps.norm() - 1.0) <= norm_tol, "state must have norm 1");
  for (const auto& d : derivs)
    require(d.size() == amps.size(), "derivative dimension mismatch");
}

DiscreteDistribution QuantumState::measurement_distribution() const {
  DiscreteDistribution p;
  p.probs.resize(amps.size());
  for (Eigen::Index z = 0; z < amps.size(); ++z) p.probs[z] = std::norm(amps[z]);
  // Renormalize away the norm_tol-level rounding so validate() holds exactly.
  double sum = 0.0;
  for (double v : p.probs) sum += v;
  for (double& v : p.probs) v /= sum;
  return p;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd mat, double rank_cut_rel)
    : mat_(std::move(mat)) {
  require(mat_.rows() == mat_.cols(), "density matrix must be square");
  const double herm_err = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  require(herm_err <= 1e-12, "density matrix must be Hermitian within 1e-12");
  require(std::abs(mat_.trace().real() - 1.0) <= 1e-10 &&
              std::abs(mat_.trace().imag()) <= 1e-10,
          "density matrix must have trace 1 within 1e-10");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat_);
  if (es.info() != Eigen::Success)
    throw numeric_error("density matrix eigendecomposition failed");
  eigvals_ = es.eigenvalues();
  eigvecs_ = es.eigenvectors();
  for (Eigen::Index i = 0; i < eigvals_.size(); ++i) {
    if (eigvals_[i] < -1e-12)
      throw numeric_error("density matrix eigenvalue " +
                          std::to_string(eigvals_[i]) + " below -1e-12");
    if (eigvals_[i] < 0.0) eigvals_[i] = 0.0;
  }
  const double cut = rank_cut_rel * eigvals_.maxCoeff();
  n_plus_ = 0;
  for (Eigen::Index i = 0; i < eigvals_.size(); ++i)
    if (eigvals_[i] > cut) ++n_plus_;
}

Eigen::MatrixXcd DensityMatrix::positive_basis() const {
  return eigvecs_.rightCols(n_plus_);
}

Eigen::MatrixXcd DensityMatrix::null_basis() const {
  return eigvecs_.leftCols(dim() - n_plus_);
}

double classical_fidelity(const DiscreteDistribution& p,
                          const DiscreteDistribution& q) {
  require(p.size() == q.size(), "fidelity needs a common outcome space");
  double f = 0.0;
  for (std::size_t z = 0; z < p.size(); ++z)
    f += std::sqrt(p.probs[z] * q.probs[z]);
  return std::min(f, 1.0);
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require(rho.dim() == sigma.dim(), "fidelity needs a common dimension");
  // ||sqrt(rho) sqrt(sigma)||_1 = Tr sqrt(sqrt(sigma) rho sqrt(sigma)).
  Eigen::VectorXd sqrt_vals = sigma.eigenvalues().cwiseSqrt();
  Eigen::MatrixXcd sqrt_sigma = sigma.eigenvectors() * sqrt_vals.asDiagonal() *
                                sigma.eigenvectors().adjoint();
  Eigen::MatrixXcd m = sqrt_sigma * rho.mat() * sqrt_sigma;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    throw numeric_error("uhlmann fidelity eigendecomposition failed");
  // Eigenvalues at rounding level would each contribute sqrt(eps) to the
  // trace; cut them before the square root.
  const double cut = 1e-13 * std::max(0.0, es.eigenvalues().maxCoeff());
  double f = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()[i];
    if (v > cut) f += std::sqrt(v);
  }
  return std::min(f, 1.0);
}

SusceptibilityResult chi_pure(const QuantumState& state) {
  state.validate();
  require(!state.derivs.empty(), "chi_pure needs directional derivatives");
  const int m = static_cast<int>(state.derivs.size());
  for (const auto& d : state.derivs)
    require(std::abs((state.amps.adjoint() * d).value().real()) <= 1e-8,
            "derivative violates norm preservation: Re<psi|dpsi> != 0");
  SusceptibilityResult r;
  r.first_term = Eigen::MatrixXd::Zero(m, m);
  r.second_term = Eigen::MatrixXd::Zero(m, m);
  for (int mu = 0; mu < m; ++mu) {
    for (int nu = mu; nu < m; ++nu) {
      const std::complex<double> overlap =
          (state.derivs[mu].adjoint() * state.derivs[nu]).value();
      const std::complex<double> par_mu =
          (state.derivs[mu].adjoint() * state.amps).value();
      const std::complex<double> par_nu =
          (state.amps.adjoint() * state.derivs[nu]).value();
      const double v = overlap.real() - (par_mu * par_nu).real();
      r.first_term(mu, nu) = v;
      r.first_term(nu, mu) = v;
    }
  }
  return r;
}

SusceptibilityResult chi_mixed(const DensityMatrix& rho,
                               const std::vector<Eigen::MatrixXcd>& drho,
                               const Eigen::MatrixXd& kernel_hessian) {
  const int m = static_cast<int>(drho.size());
  require(m >= 1, "chi_mixed needs at least one derivative");
  require(kernel_hessian.rows() == m && kernel_hessian.cols() == m,
          "kernel hessian shape mismatch");
  for (const auto& d : drho) {
    require(d.rows() == rho.dim() && d.cols() == rho.dim(),
            "drho dimension mismatch");
    require((d - d.adjoint()).cwiseAbs().maxCoeff() <= 1e-10,
            "drho must be Hermitian");
    require(std::abs(d.trace().real()) <= 1e-8, "drho must be traceless");
  }

  // Project the derivatives onto the positive eigenspace and work in the
  // eigenbasis of rho_plus; pairs with both eigenvalues below the rank cut
  // belong to the kernel term.
  const int np = rho.n_plus();
  Eigen::MatrixXcd up = rho.positive_basis();
  Eigen::VectorXd xi = rho.eigenvalues().tail(np);
  SusceptibilityResult r;
  r.first_term = Eigen::MatrixXd::Zero(m, m);
  r.second_term = kernel_hessian / 2.0;
  std::vector<Eigen::MatrixXcd> dplus(m);
  for (int mu = 0; mu < m; ++mu) dplus[mu] = up.adjoint() * drho[mu] * up;
  for (int mu = 0; mu < m; ++mu) {
    for (int nu = mu; nu < m; ++nu) {
      double sum = 0.0;
      for (int j = 0; j < np; ++j)
        for (int k = 0; k < np; ++k)
          sum += (dplus[mu](j, k) * dplus[nu](k, j)).real() /
                 (2.0 * (xi[j] + xi[k]));
      r.first_term(mu, nu) = sum;
      r.first_term(nu, mu) = sum;
    }
  }
  return r;
}

Eigen::MatrixXd chi_mixed_full_sum(const DensityMatrix& rho,
                                   const std::vector<Eigen::MatrixXcd>& drho) {
  const int m = static_cast<int>(drho.size());
  const int d = rho.dim();
  const int np = rho.n_plus();
  // Basis ordered null first (eigenvalues ascending); k_max(j) from the rank
  // structure: all k when xi_j > 0, only positive k otherwise.
  Eigen::MatrixXcd u = rho.eigenvectors();
  Eigen::VectorXd xi = rho.eigenvalues();
  std::vector<Eigen::MatrixXcd> dm(m);
  for (int mu = 0; mu < m; ++mu) dm[mu] = u.adjoint() * drho[mu] * u;
  Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(m, m);
  const int n_null = d - np;
  for (int mu = 0; mu < m; ++mu) {
    for (int nu = mu; nu < m; ++nu) {
      double sum = 0.0;
      for (int j = 0; j < d; ++j) {
        const bool j_positive = j >= n_null;
        for (int k = 0; k < d; ++k) {
          const bool k_positive = k >= n_null;
          if (!j_positive && !k_positive) continue;
          sum += (dm[mu](j, k) * dm[nu](k, j)).real() / (2.0 * (xi[j] + xi[k]));
        }
      }
      chi(mu, nu) = sum;
      chi(nu, mu) = sum;
    }
  }
  return chi;
}

SusceptibilityResult chi_discrete(const DiscreteDistribution& p,
                                  const std::vector<std::vector<double>>& dp,
                                  const Eigen::MatrixXd& zero_set_hessian) {
  p.validate();
  const int m = static_cast<int>(dp.size());
  require(m >= 1, "chi_discrete needs at least one derivative");
  require(zero_set_hessian.rows() == m && zero_set_hessian.cols() == m,
          "zero-set hessian shape mismatch");
  for (const auto& d : dp) {
    require(d.size() == p.size(), "dp dimension mismatch");
    double sum = 0.0;
    for (double v : d) sum += v;
    require(std::abs(sum) <= 1e-8, "dp must sum to 0");
  }
  SusceptibilityResult r;
  r.first_term = Eigen::MatrixXd::Zero(m, m);
  r.second_term = zero_set_hessian / 2.0;
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (!p.in_support(z)) continue;
    if (p.probs[z] < 0.0)
      throw numeric_error("negative probability on claimed support");
    for (int mu = 0; mu < m; ++mu)
      for (int nu = mu; nu < m; ++nu) {
        const double v = dp[mu][z] * dp[nu][z] / (4.0 * p.probs[z]);
        r.first_term(mu, nu) += v;
        if (nu != mu) r.first_term(nu, mu) += v;
      }
  }
  return r;
}

double finite_diff_fim_segment(const DiscreteDistribution& p_a,
                               const DiscreteDistribution& p_b, double delta) {
  require(delta > 0.0, "finite difference step must be positive");
  return 8.0 / (delta * delta) * (1.0 - classical_fidelity(p_a, p_b));
}

double finite_diff_fim_segment(const QuantumState& a, const QuantumState& b,
                               double delta) {
  require(delta > 0.0, "finite difference step must be positive");
  require(a.amps.size() == b.amps.size(), "state dimension mismatch");
  const double f = std::min(std::abs((a.amps.adjoint() * b.amps).value()), 1.0);
  return 8.0 / (delta * delta) * (1.0 - f);
}

}  // namespace fimlab
