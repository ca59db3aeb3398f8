#include <doctest.h>

#include <cmath>

#include "fimlab/fidelity.hpp"
#include "fimlab/theorem_checks.hpp"

using namespace fimlab;

TEST_CASE("theorem 1: chi_F equals chi_Fc for real Hamiltonian families") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto report = check_theorem1(4 + static_cast<int>(seed % 9), 1, seed, 1e-8);
    CHECK(report.pass);
    CHECK(report.max_rel_err <= 1e-8);
  }
  // two-parameter family
  auto report2 = check_theorem1(6, 2, 123, 1e-8);
  CHECK(report2.pass);
}

TEST_CASE("theorem 1 breaks with complex matrix elements, inequality persists") {
  int strict = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto report = check_theorem1(6, 1, seed, 1e-8, /*complex_perturbation=*/true);
    // chi_Fc <= chi_F must always hold
    CHECK(report.chi_fc(0, 0) <= report.chi_f(0, 0) + 1e-9);
    if (report.chi_f(0, 0) - report.chi_fc(0, 0) > 1e-6) ++strict;
  }
  CHECK(strict > 0);  // the inequality is generically strict
}

TEST_CASE("theorem 2: Haar-averaged chi_Fc halves chi_F") {
  QuantumState s;
  s.amps = Eigen::Vector2cd(1.0, 0.0);
  s.derivs = {Eigen::Vector2cd(0.0, 1.0)};
  auto report = check_theorem2(s, 20000, 7);
  CHECK(report.target == doctest::Approx(0.5));
  CHECK(report.pass);
  CHECK(report.mean == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("theorem 2: zero derivative gives exactly zero mean") {
  QuantumState s;
  s.amps = Eigen::Vector2cd(1.0, 0.0);
  s.derivs = {Eigen::Vector2cd(0.0, 0.0)};
  auto report = check_theorem2(s, 100, 3);
  CHECK(report.mean == 0.0);
  CHECK(report.target == 0.0);
}

TEST_CASE("theorem 2 fails for mixed states: App D counterexample at s = 0") {
  // rho(s) = diag(sin^2 s, cos^2 s) at s = 0, measured in a rotated basis:
  // the rotated-basis chi_Fc vanishes while chi_F = 1.
  Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(2, 2);
  rho0(1, 1) = 1.0;
  Eigen::MatrixXcd drho = Eigen::MatrixXcd::Zero(2, 2);  // sin(2s) at 0
  Eigen::MatrixXd kernel(1, 1);
  kernel(0, 0) = 2.0;
  const double chi_f = chi_mixed(DensityMatrix(rho0), {drho}, kernel).chi()(0, 0);
  CHECK(chi_f == doctest::Approx(1.0));

  // rotated basis {cos t |0> + sin t |1>, -sin t |0> + cos t |1>}
  const double t = 0.3;
  auto p_at = [&](double s) {
    DiscreteDistribution p;
    const double p0 = std::sin(s) * std::sin(s);
    const double p1 = std::cos(s) * std::cos(s);
    const double c = std::cos(t), d = std::sin(t);
    p.probs = {p0 * c * c + p1 * d * d, p0 * d * d + p1 * c * c};
    return p;
  };
  // derivative of the rotated probabilities at s = 0 vanishes
  std::vector<std::vector<double>> dp = {{0.0, 0.0}};
  const double chi_fc =
      chi_discrete(p_at(0.0), dp, Eigen::MatrixXd::Zero(1, 1)).chi()(0, 0);
  CHECK(chi_fc == 0.0);
  // and the finite-difference classical fidelity confirms the flat direction
  const double h = 1e-4;
  const double fd = 2.0 * (1.0 - classical_fidelity(p_at(-h / 2), p_at(h / 2))) / (h * h);
  CHECK(fd == doctest::Approx(0.0).epsilon(1e-4));
}

TEST_CASE("proposition 5: strict on the App D family at s = 0") {
  Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(2, 2);
  rho0(1, 1) = 1.0;
  Eigen::MatrixXd kernel(1, 1);
  kernel(0, 0) = 2.0;
  Eigen::VectorXd v(1);
  v << 1.0;
  auto report = check_prop5_bound(DensityMatrix(rho0),
                                  {Eigen::MatrixXcd::Zero(2, 2)}, kernel, v);
  CHECK(report.lhs == doctest::Approx(1.0));
  CHECK(report.rhs == doctest::Approx(0.0));
  CHECK(report.holds);
  CHECK(!report.tight);
}

TEST_CASE("proposition 5: equality for full-rank families") {
  CounterRng rng(11);
  Eigen::VectorXd v(1);
  v << 1.0;
  for (int trial = 0; trial < 20; ++trial) {
    auto fam = RandomDensityFamily::draw(3, rng);
    auto rho = fam.rho(0.0);
    CHECK(rho.n_plus() == 3);  // full rank by construction
    auto report = check_prop5_bound(rho, {fam.drho(0.0)},
                                    Eigen::MatrixXd::Zero(1, 1), v);
    CHECK(report.holds);
    CHECK(report.tight);
  }
}

TEST_CASE("rank-deficient family where the bound is tight") {
  // rho(t) = pure state rotating in a 2D plane: rank 1 for all t, so the
  // rank does not jump and equality must hold with a nonzero kernel term.
  auto rho_at = [](double t) {
    Eigen::Vector2cd psi(std::cos(t), std::sin(t));
    return Eigen::MatrixXcd(psi * psi.adjoint());
  };
  const double t0 = 0.4;
  DensityMatrix rho(rho_at(t0));
  const double h = 1e-5;
  Eigen::MatrixXcd drho = (rho_at(t0 + h) - rho_at(t0 - h)) / (2 * h);
  drho = (drho + drho.adjoint()) / 2.0;
  // kernel hessian: second derivative of Tr(P0 rho(t) P0) at t0; the null
  // space is the orthogonal complement of psi(t0), giving sin^2(t - t0).
  Eigen::MatrixXd kernel(1, 1);
  kernel(0, 0) = 2.0;
  Eigen::VectorXd v(1);
  v << 1.0;
  auto report = check_prop5_bound(rho, {drho}, kernel, v, 1e-6);
  CHECK(report.holds);
  CHECK(report.tight);  // rank stays 1, so the inequality is an equality
}
