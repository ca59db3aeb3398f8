#include "fimlab/theorem_checks.hpp"

#include <cmath>

#include "fimlab/errors.hpp"

namespace fimlab {

namespace {

Eigen::MatrixXcd random_complex_gaussian(int dim, CounterRng& rng) {
  Eigen::MatrixXcd z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      z(i, j) = std::complex<double>(rng.normal(), rng.normal());
  return z;
}

Eigen::MatrixXd random_symmetric(int dim, CounterRng& rng) {
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      double v = rng.normal();
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

}  // namespace

Eigen::MatrixXcd random_haar_basis(int dim, CounterRng& rng) {
  Eigen::MatrixXcd z = random_complex_gaussian(dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    std::complex<double> rii = r(i, i);
    std::complex<double> phase = std::abs(rii) > 0 ? rii / std::abs(rii) : 1.0;
    q.col(i) *= phase;
  }
  return q;
}

QuantumState random_state(int dim, int n_derivs, CounterRng& rng) {
  QuantumState s;
  s.amps.resize(dim);
  for (int i = 0; i < dim; ++i)
    s.amps[i] = std::complex<double>(rng.normal(), rng.normal());
  s.amps.normalize();
  for (int d = 0; d < n_derivs; ++d) {
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i)
      v[i] = std::complex<double>(rng.normal(), rng.normal());
    // Remove the real part of the parallel component so the derivative
    // preserves the norm to first order.
    const double re_par = (s.amps.adjoint() * v).value().real();
    v -= re_par * s.amps;
    s.derivs.push_back(v);
  }
  return s;
}

RandomDensityFamily RandomDensityFamily::draw(int dim, CounterRng& rng) {
  RandomDensityFamily f;
  Eigen::MatrixXcd g = random_complex_gaussian(dim, rng);
  f.c = g * g.adjoint() / dim + Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd h = random_complex_gaussian(dim, rng);
  Eigen::MatrixXcd d = (h + h.adjoint()) / 2.0;
  f.d = d / d.cwiseAbs().maxCoeff() / dim;  // keep C + tD positive for |t| <= 1
  return f;
}

DensityMatrix RandomDensityFamily::rho(double t) const {
  Eigen::MatrixXcd m = c + t * d;
  m = (m + m.adjoint()) / 2.0;
  return DensityMatrix(m / m.trace().real());
}

Eigen::MatrixXcd RandomDensityFamily::drho(double t) const {
  Eigen::MatrixXcd m = c + t * d;
  const double tr = m.trace().real();
  const double dtr = d.trace().real();
  Eigen::MatrixXcd out = d / tr - m * (dtr / (tr * tr));
  return (out + out.adjoint()) / 2.0;
}

Theorem1Report check_theorem1(int dim, int n_params, std::uint64_t seed,
                              double tol, bool complex_perturbation) {
  require(dim >= 2, "check_theorem1 needs dim >= 2");
  require(n_params >= 1, "check_theorem1 needs n_params >= 1");
  CounterRng rng(seed, 0x74686d31);  // "thm1"
  const double lambda_star = 0.3;
  constexpr int kMaxRetries = 64;

  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Eigen::MatrixXcd h = random_symmetric(dim, rng).cast<std::complex<double>>();
    std::vector<Eigen::MatrixXcd> dh(n_params);
    for (int mu = 0; mu < n_params; ++mu) {
      Eigen::MatrixXcd b = random_symmetric(dim, rng).cast<std::complex<double>>();
      Eigen::MatrixXcd c = random_symmetric(dim, rng).cast<std::complex<double>>();
      h += lambda_star * b + lambda_star * lambda_star * c;
      dh[mu] = b + 2.0 * lambda_star * c;
    }
    if (complex_perturbation) {
      // i (S - S^T) / 2 for real S: Hermitian with imaginary off-diagonals.
      Eigen::MatrixXd s(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) s(i, j) = rng.normal();
      h += std::complex<double>(0, 0.5) *
           (s - s.transpose()).cast<std::complex<double>>();
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) continue;
    const Eigen::VectorXd e = es.eigenvalues();
    const double scale = std::max(std::abs(e[0]), std::abs(e[dim - 1]));
    if (e[1] - e[0] < 1e-4 * scale) continue;  // gap cut, redraw

    QuantumState psi;
    psi.amps = es.eigenvectors().col(0);
    for (int mu = 0; mu < n_params; ++mu) {
      Eigen::VectorXcd dpsi = Eigen::VectorXcd::Zero(dim);
      for (int k = 1; k < dim; ++k) {
        const std::complex<double> num =
            (es.eigenvectors().col(k).adjoint() * dh[mu] * psi.amps).value();
        dpsi += es.eigenvectors().col(k) * (num / (e[0] - e[k]));
      }
      psi.derivs.push_back(dpsi);
    }

    Theorem1Report report;
    report.retries = attempt;
    report.chi_f = chi_pure(psi).chi();

    DiscreteDistribution p;
    p.probs.resize(dim);
    std::vector<std::vector<double>> dp(n_params, std::vector<double>(dim));
    for (int z = 0; z < dim; ++z) {
      p.probs[z] = std::norm(psi.amps[z]);
      for (int mu = 0; mu < n_params; ++mu)
        dp[mu][z] = 2.0 * (std::conj(psi.amps[z]) * psi.derivs[mu][z]).real();
    }
    double sum = 0.0;
    for (double v : p.probs) sum += v;
    for (double& v : p.probs) v /= sum;
    report.chi_fc =
        chi_discrete(p, dp, Eigen::MatrixXd::Zero(n_params, n_params)).chi();

    report.max_rel_err = 0.0;
    for (int mu = 0; mu < n_params; ++mu)
      for (int nu = 0; nu < n_params; ++nu) {
        const double err = std::abs(report.chi_f(mu, nu) - report.chi_fc(mu, nu)) /
                           (1.0 + std::abs(report.chi_f(mu, nu)));
        report.max_rel_err = std::max(report.max_rel_err, err);
      }
    report.pass = report.max_rel_err <= tol;
    return report;
  }
  throw numeric_error("check_theorem1: persistent ground-state degeneracy");
}

Theorem2Report check_theorem2(const QuantumState& state, int n_bases,
                              std::uint64_t seed) {
  state.validate();
  require(!state.derivs.empty(), "check_theorem2 needs a derivative");
  const int dim = static_cast<int>(state.amps.size());
  require(dim >= 2, "check_theorem2 needs dim >= 2");
  CounterRng rng(seed, 0x74686d32);  // "thm2"

  Theorem2Report report;
  report.target = chi_pure(state).chi()(0, 0) / 2.0;
  double sum = 0.0, sum_sq = 0.0;
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(1, 1);
  for (int b = 0; b < n_bases; ++b) {
    Eigen::MatrixXcd basis = random_haar_basis(dim, rng);
    Eigen::VectorXcd a = basis.adjoint() * state.amps;
    Eigen::VectorXcd da = basis.adjoint() * state.derivs[0];
    DiscreteDistribution p;
    p.probs.resize(dim);
    std::vector<std::vector<double>> dp(1, std::vector<double>(dim));
    double norm = 0.0;
    for (int z = 0; z < dim; ++z) {
      p.probs[z] = std::norm(a[z]);
      norm += p.probs[z];
      dp[0][z] = 2.0 * (std::conj(a[z]) * da[z]).real();
    }
    for (double& v : p.probs) v /= norm;
    const double chi = chi_discrete(p, dp, zero).chi()(0, 0);
    sum += chi;
    sum_sq += chi * chi;
  }
  report.mean = sum / n_bases;
  const double var =
      std::max(0.0, sum_sq / n_bases - report.mean * report.mean);
  report.std_error = std::sqrt(var / n_bases);
  report.pass = std::abs(report.mean - report.target) <= 4.0 * report.std_error;
  return report;
}

Prop5Report check_prop5_bound(const DensityMatrix& rho,
                              const std::vector<Eigen::MatrixXcd>& drho,
                              const Eigen::MatrixXd& kernel_hessian,
                              const Eigen::VectorXd& direction, double tol) {
  const int m = static_cast<int>(drho.size());
  require(direction.size() == m, "direction dimension mismatch");
  require(kernel_hessian.rows() == m && kernel_hessian.cols() == m,
          "kernel hessian shape mismatch");

  Prop5Report report;
  report.lhs = 0.5 * direction.dot(kernel_hessian * direction);

  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
  for (int mu = 0; mu < m; ++mu) d += direction[mu] * drho[mu];

  const int np = rho.n_plus();
  const int n0 = rho.dim() - np;
  report.rhs = 0.0;
  if (n0 > 0 && np > 0) {
    Eigen::MatrixXcd u0 = rho.null_basis();
    Eigen::MatrixXcd up = rho.positive_basis();
    Eigen::VectorXd xi = rho.eigenvalues().tail(np);
    Eigen::MatrixXcd a = u0.adjoint() * d * up;  // n0 x np
    for (int i = 0; i < n0; ++i)
      for (int j = 0; j < np; ++j) report.rhs += std::norm(a(i, j)) / xi[j];
  }
  report.holds = report.lhs >= report.rhs - tol;
  report.tight = std::abs(report.lhs - report.rhs) <= tol;
  return report;
}

}  // namespace fimlab
