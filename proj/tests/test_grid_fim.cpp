#include <doctest.h>

#include <cmath>

#include "fimlab/errors.hpp"
#include "fimlab/grid_fim.hpp"

using namespace fimlab;

namespace {

// Smooth two-outcome family with both parameters active (2D) or one (1D).
double f_of(double l0, double l1) { return 0.2 + 0.3 * l0 + 0.35 * l1 + 0.1 * l0 * l1; }

DiscreteDistribution two_outcome(double f) {
  DiscreteDistribution d;
  d.probs = {f, 1.0 - f};
  return d;
}

// Exact FIM of the two-outcome family: g_{mu nu} = df_mu df_nu / (f (1 - f)).
double exact_g(double f, double df_mu, double df_nu) {
  return df_mu * df_nu / (f * (1.0 - f));
}

}  // namespace

TEST_CASE("constant distributions give the zero field") {
  auto grid = ParameterGrid::nodes(2, 8);
  std::vector<DiscreteDistribution> dists(grid.n_points(), two_outcome(0.4));
  auto field = grid_fim_from_distributions(dists, grid);
  for (const auto& e : field.entries) {
    CHECK(e[0] == 0.0);
    CHECK(e[1] == 0.0);
    CHECK(e[2] == 0.0);
  }
}

TEST_CASE("grids smaller than two points per axis are rejected") {
  auto grid = ParameterGrid::nodes(1, 1);
  std::vector<DiscreteDistribution> dists(1, two_outcome(0.5));
  CHECK_THROWS_AS(grid_fim_from_distributions(dists, grid), std::invalid_argument);
}

TEST_CASE("1D linear family matches 4 chi at centers within O(1/r^2)") {
  const int r = 64;
  auto grid = ParameterGrid::nodes(1, r);
  std::vector<DiscreteDistribution> dists;
  for (int l = 0; l < r; ++l) dists.push_back(two_outcome(0.1 + 0.8 * grid.coord(l)));
  auto field = grid_fim_from_distributions(dists, grid);
  auto centers = grid.centers();
  for (int l = 0; l < centers.points_per_axis; ++l) {
    const double lam = centers.coord(l);
    const double f = 0.1 + 0.8 * lam;
    const double expected = exact_g(f, 0.8, 0.8);
    CHECK(field.g00(l) == doctest::Approx(expected).epsilon(5.0 / (r * r)));
  }
}

TEST_CASE("convergence rate is O(1/r^2) as r doubles") {
  auto max_err = [&](int r) {
    auto grid = ParameterGrid::nodes(1, r);
    std::vector<DiscreteDistribution> dists;
    for (int l = 0; l < r; ++l)
      dists.push_back(two_outcome(0.5 + 0.3 * std::sin(2.0 * grid.coord(l))));
    auto field = grid_fim_from_distributions(dists, grid);
    auto centers = grid.centers();
    double worst = 0.0;
    for (int l = 0; l < centers.points_per_axis; ++l) {
      const double lam = centers.coord(l);
      const double f = 0.5 + 0.3 * std::sin(2.0 * lam);
      const double df = 0.6 * std::cos(2.0 * lam);
      worst = std::max(worst, std::abs(field.g00(l) - exact_g(f, df, df)));
    }
    return worst;
  };
  const double e32 = max_err(32);
  const double e64 = max_err(64);
  CHECK(e64 <= e32 / 2.5);  // quadratic would give a factor 4
}

TEST_CASE("2D family recovers the full symmetric matrix including g01") {
  const int r = 48;
  auto grid = ParameterGrid::nodes(2, r);
  std::vector<DiscreteDistribution> dists(grid.n_points());
  for (std::int64_t p = 0; p < grid.n_points(); ++p) {
    auto c = grid.coords(p);
    dists[p] = two_outcome(f_of(c[0], c[1]));
  }
  auto field = grid_fim_from_distributions(dists, grid);
  auto centers = grid.centers();
  for (std::int64_t p = 0; p < centers.n_points(); ++p) {
    auto c = centers.coords(p);
    const double f = f_of(c[0], c[1]);
    const double df0 = 0.3 + 0.1 * c[1];
    const double df1 = 0.35 + 0.1 * c[0];
    CHECK(field.g00(p) == doctest::Approx(exact_g(f, df0, df0)).epsilon(0.01));
    CHECK(field.g11(p) == doctest::Approx(exact_g(f, df1, df1)).epsilon(0.01));
    CHECK(field.g01(p) == doctest::Approx(exact_g(f, df0, df1)).epsilon(0.01));
  }
}

TEST_CASE("FIM is additive over independent sites") {
  // three independent bits, each with its own smooth marginal
  const int r = 32;
  auto grid = ParameterGrid::nodes(1, r);
  auto marginal = [](int site, double lam) {
    return 0.2 + 0.15 * (site + 1) * lam;
  };
  std::vector<DiscreteDistribution> joint(grid.n_points());
  std::vector<std::vector<DiscreteDistribution>> site_dists(
      3, std::vector<DiscreteDistribution>(grid.n_points()));
  for (int l = 0; l < r; ++l) {
    const double lam = grid.coord(l);
    DiscreteDistribution d;
    d.probs.resize(8);
    for (int z = 0; z < 8; ++z) {
      double p = 1.0;
      for (int site = 0; site < 3; ++site) {
        const double f = marginal(site, lam);
        p *= (z >> site) & 1 ? f : 1.0 - f;
      }
      d.probs[z] = p;
    }
    joint[l] = d;
    for (int site = 0; site < 3; ++site)
      site_dists[site][l] = two_outcome(1.0 - marginal(site, lam));
  }
  auto joint_field = grid_fim_from_distributions(joint, grid);
  std::vector<FimField> site_fields;
  for (int site = 0; site < 3; ++site)
    site_fields.push_back(grid_fim_from_distributions(site_dists[site], grid));
  // since F_joint = prod F_site, the finite-difference estimates are
  // additive only to O(h^2); the exact values below are additive exactly
  for (std::int64_t p = 0; p < joint_field.grid.n_points(); ++p) {
    const double sum = site_fields[0].g00(p) + site_fields[1].g00(p) +
                       site_fields[2].g00(p);
    CHECK(joint_field.g00(p) == doctest::Approx(sum).epsilon(2e-3));
  }

  // exact additivity of the explicit formula at a node
  const double lam = grid.coord(10);
  DiscreteDistribution joint_d = joint[10];
  std::vector<std::vector<double>> djoint(1, std::vector<double>(8));
  double site_chi_sum = 0.0;
  for (int site = 0; site < 3; ++site) {
    const double f = marginal(site, lam);
    const double df = 0.15 * (site + 1);
    site_chi_sum += df * df / (4 * f) + df * df / (4 * (1 - f));
  }
  for (int z = 0; z < 8; ++z) {
    double d_total = 0.0;
    for (int site = 0; site < 3; ++site) {
      const double f = marginal(site, lam);
      const double df = 0.15 * (site + 1);
      const bool on = (z >> site) & 1;
      d_total += (on ? df / f : -df / (1 - f));
    }
    djoint[0][z] = joint_d.probs[z] * d_total;
  }
  auto joint_chi = chi_discrete(joint_d, djoint, Eigen::MatrixXd::Zero(1, 1));
  CHECK(joint_chi.chi()(0, 0) == doctest::Approx(site_chi_sum).epsilon(1e-12));
}
