#include <doctest.h>

#include <cmath>

#include "fimlab/errors.hpp"
#include "fimlab/fidelity.hpp"
#include "fimlab/theorem_checks.hpp"

using namespace fimlab;

namespace {

DiscreteDistribution dist(std::initializer_list<double> probs) {
  DiscreteDistribution d;
  d.probs = probs;
  return d;
}

// App D family: p0 = sin^2(s), p1 = cos^2(s), rho = diag(p).
DensityMatrix app_d_rho(double s) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = std::sin(s) * std::sin(s);
  m(1, 1) = std::cos(s) * std::cos(s);
  return DensityMatrix(m);
}

Eigen::MatrixXcd app_d_drho(double s) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = std::sin(2 * s);
  m(1, 1) = -std::sin(2 * s);
  return m;
}

// Second derivative of Tr(P0 rho(s') P0) for the App D family: away from
// sin(2s) = 0 the state is full rank and the kernel term is zero; at s = 0
// the null space is spanned by |0> and d^2/ds^2 sin^2 = 2.
Eigen::MatrixXd app_d_kernel(double s) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(1, 1);
  if (std::abs(std::sin(2 * s)) < 1e-14 && std::abs(std::sin(s)) < 1e-14) k(0, 0) = 2.0;
  if (std::abs(std::sin(2 * s)) < 1e-14 && std::abs(std::cos(s)) < 1e-14) k(0, 0) = 2.0;
  return k;
}

// Normalized state family psi(t) = (u + t w)/||u + t w|| and its analytic
// derivative at t = 0 (u is assumed normalized).
Eigen::VectorXcd family_deriv(const Eigen::VectorXcd& u, const Eigen::VectorXcd& w) {
  const double re_par = (u.adjoint() * w).value().real();
  return w - re_par * u;
}

QuantumState family_state(const Eigen::VectorXcd& u, const Eigen::VectorXcd& w,
                          double t) {
  QuantumState s;
  s.amps = (u + t * w).normalized();
  return s;
}

}  // namespace

TEST_CASE("classical fidelity basics") {
  CHECK(classical_fidelity(dist({0.3, 0.7}), dist({0.3, 0.7})) == doctest::Approx(1.0));
  CHECK(classical_fidelity(dist({1.0, 0.0}), dist({0.0, 1.0})) == 0.0);
  // direct evaluation oracle
  const double expected = std::sqrt(0.5 * 0.9) + std::sqrt(0.5 * 0.1);
  CHECK(classical_fidelity(dist({0.5, 0.5}), dist({0.9, 0.1})) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.8944272).epsilon(1e-6));
  CHECK_THROWS_AS(classical_fidelity(dist({1.0}), dist({0.5, 0.5})),
                  std::invalid_argument);
}

TEST_CASE("uhlmann fidelity consistency with pure and diagonal states") {
  CounterRng rng(5);
  // rho = sigma -> 1
  auto fam = RandomDensityFamily::draw(4, rng);
  CHECK(uhlmann_fidelity(fam.rho(0.1), fam.rho(0.1)) == doctest::Approx(1.0));

  // pure states: F = |<psi|phi>|
  auto s1 = random_state(4, 0, rng);
  auto s2 = random_state(4, 0, rng);
  DensityMatrix r1(s1.amps * s1.amps.adjoint());
  DensityMatrix r2(s2.amps * s2.amps.adjoint());
  const double overlap = std::abs((s1.amps.adjoint() * s2.amps).value());
  CHECK(uhlmann_fidelity(r1, r2) == doctest::Approx(overlap).epsilon(1e-10));

  // diagonal states: F = F_c
  auto p = dist({0.2, 0.3, 0.5});
  auto q = dist({0.6, 0.1, 0.3});
  Eigen::MatrixXcd dp = Eigen::MatrixXcd::Zero(3, 3), dq = dp;
  for (int i = 0; i < 3; ++i) {
    dp(i, i) = p.probs[i];
    dq(i, i) = q.probs[i];
  }
  CHECK(uhlmann_fidelity(DensityMatrix(dp), DensityMatrix(dq)) ==
        doctest::Approx(classical_fidelity(p, q)).epsilon(1e-12));

  // disjoint supports -> 0
  Eigen::MatrixXcd da = Eigen::MatrixXcd::Zero(2, 2), db = da;
  da(0, 0) = 1.0;
  db(1, 1) = 1.0;
  CHECK(uhlmann_fidelity(DensityMatrix(da), DensityMatrix(db)) ==
        doctest::Approx(0.0));
}

TEST_CASE("F <= F_c(diagonals) <= 1 on random pairs") {
  CounterRng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto fa = RandomDensityFamily::draw(4, rng);
    auto fb = RandomDensityFamily::draw(4, rng);
    auto rho = fa.rho(0.0);
    auto sigma = fb.rho(0.0);
    DiscreteDistribution p, q;
    for (int i = 0; i < 4; ++i) {
      p.probs.push_back(rho.mat()(i, i).real());
      q.probs.push_back(sigma.mat()(i, i).real());
    }
    const double f = uhlmann_fidelity(rho, sigma);
    const double fc = classical_fidelity(p, q);
    CHECK(f >= 0.0);
    CHECK(f <= fc + 1e-12);
    CHECK(fc <= 1.0 + 1e-12);
  }
}

TEST_CASE("chi_pure worked examples") {
  // psi(s) = (cos s, sin s) at s = 0: chi = 1, against the finite-difference
  // oracle of |<psi(0)|psi(s)>| = |cos s|.
  QuantumState s;
  s.amps = Eigen::Vector2cd(1.0, 0.0);
  s.derivs = {Eigen::Vector2cd(0.0, 1.0)};
  auto chi = chi_pure(s);
  CHECK(chi.chi()(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chi.second_term(0, 0) == 0.0);
  const double h = 1e-4;
  const double fd = 2.0 * (1.0 - std::abs(std::cos(h))) / (h * h);
  CHECK(chi.chi()(0, 0) == doctest::Approx(fd).epsilon(1e-6));

  // orthogonal derivative of norm v -> chi = v^2
  s.derivs = {Eigen::Vector2cd(0.0, 2.5)};
  CHECK(chi_pure(s).chi()(0, 0) == doctest::Approx(2.5 * 2.5));

  // global-phase derivative i c psi -> chi = 0
  s.derivs = {Eigen::Vector2cd(std::complex<double>(0, 0.7), 0.0)};
  CHECK(chi_pure(s).chi()(0, 0) == doctest::Approx(0.0).epsilon(1e-15));

  s.derivs.clear();
  CHECK_THROWS_AS(chi_pure(s), std::invalid_argument);
}

TEST_CASE("chi_mixed worked example and zero derivative") {
  // s = pi/4: full rank, first term 1, second term 0
  {
    auto r = chi_mixed(app_d_rho(M_PI / 4), {app_d_drho(M_PI / 4)},
                       app_d_kernel(M_PI / 4));
    CHECK(r.first_term(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.second_term(0, 0) == 0.0);
  }
  // s = 0: rank drops, first term 0, second term 1
  {
    auto r = chi_mixed(app_d_rho(0.0), {app_d_drho(0.0)}, app_d_kernel(0.0));
    CHECK(r.first_term(0, 0) == doctest::Approx(0.0));
    CHECK(r.second_term(0, 0) == doctest::Approx(1.0));
  }
  // full-rank rho with zero derivative -> 0
  {
    CounterRng rng(3);
    auto fam = RandomDensityFamily::draw(3, rng);
    auto r = chi_mixed(fam.rho(0.0),
                       {Eigen::MatrixXcd::Zero(3, 3)},
                       Eigen::MatrixXd::Zero(1, 1));
    CHECK(r.chi()(0, 0) == doctest::Approx(0.0));
  }
}

TEST_CASE("chi_discrete worked examples") {
  // p = (sin^2 s, cos^2 s) at s = pi/4 -> 1
  const double s = M_PI / 4;
  auto p = dist({std::sin(s) * std::sin(s), std::cos(s) * std::cos(s)});
  std::vector<std::vector<double>> dp = {{std::sin(2 * s), -std::sin(2 * s)}};
  auto r = chi_discrete(p, dp, Eigen::MatrixXd::Zero(1, 1));
  CHECK(r.chi()(0, 0) == doctest::Approx(1.0).epsilon(1e-12));

  // uniform with dp = 0 -> 0
  auto r0 = chi_discrete(dist({0.25, 0.25, 0.25, 0.25}), {{0, 0, 0, 0}},
                         Eigen::MatrixXd::Zero(1, 1));
  CHECK(r0.chi()(0, 0) == 0.0);

  // p = (0.25, 0.75), dp = (1, -1) -> 4/3, cross-checked against the
  // finite-difference oracle of F_c along p(t) = (0.25 + t, 0.75 - t).
  auto r1 = chi_discrete(dist({0.25, 0.75}), {{1.0, -1.0}},
                         Eigen::MatrixXd::Zero(1, 1));
  CHECK(r1.chi()(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  const double h = 1e-3;
  auto pa = dist({0.25 - h / 2, 0.75 + h / 2});
  auto pb = dist({0.25 + h / 2, 0.75 - h / 2});
  const double fd = 2.0 * (1.0 - classical_fidelity(pa, pb)) / (h * h);
  CHECK(r1.chi()(0, 0) == doctest::Approx(fd).epsilon(10 * h * h));
}

TEST_CASE("finite difference segment: identical distributions give zero") {
  auto p = dist({0.4, 0.6});
  CHECK(finite_diff_fim_segment(p, p, 0.01) == doctest::Approx(0.0));
  CHECK_THROWS_AS(finite_diff_fim_segment(p, p, 0.0), std::invalid_argument);
}

TEST_CASE("level crossing: H = sX vs H = sZ across s = 0") {
  const double ds = 0.125;
  // H = sX: ground states |+> and |-> on either side; identical measurement
  // distributions, orthogonal states.
  QuantumState plus, minus;
  plus.amps = Eigen::Vector2cd(1.0, 1.0) / std::sqrt(2.0);
  minus.amps = Eigen::Vector2cd(1.0, -1.0) / std::sqrt(2.0);
  auto px = plus.measurement_distribution();
  auto mx = minus.measurement_distribution();
  CHECK(finite_diff_fim_segment(px, mx, ds) == doctest::Approx(0.0));
  CHECK(finite_diff_fim_segment(plus, minus, ds) ==
        doctest::Approx(8.0 / (ds * ds)));

  // H = sZ: ground states |0> and |1>; both variants see the crossing.
  QuantumState zero, one;
  zero.amps = Eigen::Vector2cd(1.0, 0.0);
  one.amps = Eigen::Vector2cd(0.0, 1.0);
  CHECK(finite_diff_fim_segment(zero.measurement_distribution(),
                                one.measurement_distribution(), ds) ==
        doctest::Approx(8.0 / (ds * ds)));
  CHECK(finite_diff_fim_segment(zero, one, ds) == doctest::Approx(8.0 / (ds * ds)));
}

TEST_CASE("chi_pure agrees with Richardson finite differences of the fidelity") {
  CounterRng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 3 + static_cast<int>(rng.below(4));
    auto base = random_state(dim, 0, rng);
    Eigen::VectorXcd w(dim);
    for (int i = 0; i < dim; ++i) w[i] = std::complex<double>(rng.normal(), rng.normal());

    QuantumState s = base;
    s.derivs = {family_deriv(base.amps, w)};
    const double chi = chi_pure(s).chi()(0, 0);

    auto chi_fd = [&](double h) {
      auto a = family_state(base.amps, w, -h / 2);
      auto b = family_state(base.amps, w, h / 2);
      const double f = std::abs((a.amps.adjoint() * b.amps).value());
      return 2.0 * (1.0 - f) / (h * h);
    };
    // h sized so chi h^2 stays far above rounding in 1 - F
    const double h = 1e-3;
    const double richardson = (4.0 * chi_fd(h / 2) - chi_fd(h)) / 3.0;
    CHECK(chi == doctest::Approx(richardson).epsilon(10 * h * h));
  }
}

TEST_CASE("chi_mixed agrees with Richardson finite differences of Uhlmann fidelity") {
  CounterRng rng(29);
  for (int trial = 0; trial < 6; ++trial) {
    auto fam = RandomDensityFamily::draw(3, rng);
    const double chi =
        chi_mixed(fam.rho(0.0), {fam.drho(0.0)}, Eigen::MatrixXd::Zero(1, 1))
            .chi()(0, 0);
    auto chi_fd = [&](double h) {
      const double f = uhlmann_fidelity(fam.rho(-h / 2), fam.rho(h / 2));
      return 2.0 * (1.0 - f) / (h * h);
    };
    // the Uhlmann evaluation itself carries ~1e-15 absolute noise, so the
    // step must keep 1 - F well above it
    const double h = 1e-2;
    const double richardson = (4.0 * chi_fd(h / 2) - chi_fd(h)) / 3.0;
    CHECK(chi == doctest::Approx(richardson).epsilon(10 * h * h));
  }
}

TEST_CASE("chi_discrete agrees with finite differences on an exponential family") {
  CounterRng rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 5;
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = rng.normal();
      b[i] = rng.normal();
    }
    auto p_at = [&](double t) {
      DiscreteDistribution p;
      p.probs.resize(n);
      double z = 0.0;
      for (int i = 0; i < n; ++i) {
        p.probs[i] = std::exp(a[i] + t * b[i]);
        z += p.probs[i];
      }
      for (auto& v : p.probs) v /= z;
      return p;
    };
    auto p0 = p_at(0.0);
    double mean_b = 0.0;
    for (int i = 0; i < n; ++i) mean_b += p0.probs[i] * b[i];
    std::vector<std::vector<double>> dp(1, std::vector<double>(n));
    for (int i = 0; i < n; ++i) dp[0][i] = p0.probs[i] * (b[i] - mean_b);

    const double chi = chi_discrete(p0, dp, Eigen::MatrixXd::Zero(1, 1)).chi()(0, 0);
    auto chi_fd = [&](double h) {
      return 2.0 * (1.0 - classical_fidelity(p_at(-h / 2), p_at(h / 2))) / (h * h);
    };
    const double h = 1e-3;
    const double richardson = (4.0 * chi_fd(h / 2) - chi_fd(h)) / 3.0;
    CHECK(chi == doctest::Approx(richardson).epsilon(10 * h * h));
  }
}

TEST_CASE("susceptibility results are symmetric and PSD along directions") {
  CounterRng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    auto state = random_state(5, 2, rng);
    auto r = chi_pure(state);
    CHECK((r.chi() - r.chi().transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXd v(2);
      v << rng.normal(), rng.normal();
      CHECK(r.contracted(v) >= -1e-9);
    }
  }
}

TEST_CASE("chi_Fc <= chi_F for pure states in any basis") {
  CounterRng rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    const int dim = 4;
    auto state = random_state(dim, 1, rng);
    const double chi_f = chi_pure(state).chi()(0, 0);
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
    for (auto& v : p.probs) v /= norm;
    const double chi_fc = chi_discrete(p, dp, Eigen::MatrixXd::Zero(1, 1)).chi()(0, 0);
    CHECK(chi_fc <= chi_f + 1e-9);
    CHECK(chi_fc >= -1e-12);
  }
}

TEST_CASE("chi_mixed full-sum form matches when the bound is tight") {
  CounterRng rng(43);
  auto fam = RandomDensityFamily::draw(4, rng);
  auto rho = fam.rho(0.0);
  std::vector<Eigen::MatrixXcd> drho = {fam.drho(0.0)};
  auto split_form = chi_mixed(rho, drho, Eigen::MatrixXd::Zero(1, 1)).chi();
  auto full_form = chi_mixed_full_sum(rho, drho);
  CHECK(split_form(0, 0) == doctest::Approx(full_form(0, 0)).epsilon(1e-10));
}
