#include "fimlab/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "fimlab/errors.hpp"

namespace fimlab {

std::string LatticeGeometry::to_string() const {
  if (rows == 1) return "chain:" + std::to_string(cols);
  return "grid2d:" + std::to_string(rows) + "x" + std::to_string(cols);
}

LatticeGeometry LatticeGeometry::from_string(const std::string& s) {
  if (s.rfind("chain:", 0) == 0) return chain(std::stoi(s.substr(6)));
  if (s.rfind("grid2d:", 0) == 0) {
    auto x = s.find('x', 7);
    if (x != std::string::npos)
      return grid2d(std::stoi(s.substr(7, x - 7)), std::stoi(s.substr(x + 1)));
  }
  throw format_error("unrecognized lattice geometry '" + s + "'");
}

void SparseHamiltonian::matvec(const double* x, double* y) const {
  for (std::int64_t r = 0; r < dim; ++r) {
    double acc = 0.0;
    for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      acc += val[k].real() * x[col[k]];
    y[r] = acc;
  }
}

Eigen::MatrixXd SparseHamiltonian::dense_real() const {
  require(real_elements, "dense_real needs a real Hamiltonian");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r)
    for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      m(r, col[k]) = val[k].real();
  return m;
}

Eigen::MatrixXcd SparseHamiltonian::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r)
    for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      m(r, col[k]) = val[k];
  return m;
}

double SparseHamiltonian::norm_bound() const {
  double worst = 0.0;
  for (std::int64_t r = 0; r < dim; ++r) {
    double s = 0.0;
    for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      s += std::abs(val[k]);
    worst = std::max(worst, s);
  }
  return worst;
}

void SparseHamiltonian::check_hermitian(double tol) const {
  for (std::int64_t r = 0; r < dim; ++r) {
    for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const std::uint32_t c = col[k];
      // binary search the transposed entry in row c
      std::int64_t lo = row_ptr[c], hi = row_ptr[c + 1];
      const std::uint32_t target = static_cast<std::uint32_t>(r);
      std::complex<double> other = 0.0;
      while (lo < hi) {
        const std::int64_t mid = (lo + hi) / 2;
        if (col[mid] < target)
          lo = mid + 1;
        else
          hi = mid;
      }
      if (lo < row_ptr[c + 1] && col[lo] == target) other = val[lo];
      if (std::abs(val[k] - std::conj(other)) > tol)
        throw numeric_error("assembled Hamiltonian is not Hermitian");
    }
  }
}

HamiltonianBuilder::HamiltonianBuilder(int n_sites)
    : n_sites_(n_sites), dim_(std::int64_t{1} << n_sites) {
  require(n_sites >= 1 && n_sites <= 16,
          "site count out of the 2^16 desk-scale ceiling");
  diagonal_.assign(dim_, 0.0);
}

void HamiltonianBuilder::add_term(double coeff,
                                  const std::vector<std::pair<int, Pauli>>& ops) {
  for (std::size_t a = 0; a < ops.size(); ++a) {
    require(ops[a].first >= 0 && ops[a].first < n_sites_, "site out of range");
    for (std::size_t b = a + 1; b < ops.size(); ++b)
      require(ops[a].first != ops[b].first, "one Pauli per site per term");
  }
  std::uint64_t flip_mask = 0;
  for (auto [site, p] : ops)
    if (p == X || p == Y) flip_mask |= std::uint64_t{1} << site;

  for (std::uint64_t z = 0; z < static_cast<std::uint64_t>(dim_); ++z) {
    std::complex<double> amp = coeff;
    for (auto [site, p] : ops) {
      const bool bit = (z >> site) & 1;
      if (p == Z) amp *= bit ? -1.0 : 1.0;
      if (p == Y) amp *= std::complex<double>(0.0, bit ? -1.0 : 1.0);
    }
    const std::uint64_t target = z ^ flip_mask;
    if (target == z)
      diagonal_[z] += amp.real();
    else
      entries_.push_back({target, z, amp});
  }
}

void HamiltonianBuilder::add_diagonal(const std::vector<double>& diag) {
  require(static_cast<std::int64_t>(diag.size()) == dim_, "diagonal size mismatch");
  for (std::int64_t z = 0; z < dim_; ++z) diagonal_[z] += diag[z];
}

namespace {
// Jordan-Wigner parity of occupied modes below site i.
inline int jw_sign(std::uint64_t z, int site) {
  const std::uint64_t below = z & ((std::uint64_t{1} << site) - 1);
  return std::popcount(below) & 1 ? -1 : 1;
}
}  // namespace

void HamiltonianBuilder::add_hopping(double coeff, int i, int j) {
  require(i != j, "hopping needs distinct sites");
  // coeff (c_i^dag c_j + c_j^dag c_i)
  for (std::uint64_t z = 0; z < static_cast<std::uint64_t>(dim_); ++z) {
    if (!((z >> j) & 1)) continue;
    const std::uint64_t mid = z ^ (std::uint64_t{1} << j);
    if ((mid >> i) & 1) continue;
    const int sign = jw_sign(z, j) * jw_sign(mid, i);
    const std::uint64_t target = mid | (std::uint64_t{1} << i);
    entries_.push_back({target, z, coeff * sign});
    entries_.push_back({z, target, coeff * sign});
  }
}

void HamiltonianBuilder::add_pairing(double coeff, int i, int j) {
  require(i != j, "pairing needs distinct sites");
  // coeff (c_i c_j + c_j^dag c_i^dag)
  for (std::uint64_t z = 0; z < static_cast<std::uint64_t>(dim_); ++z) {
    if (!((z >> j) & 1)) continue;
    const std::uint64_t mid = z ^ (std::uint64_t{1} << j);
    if (!((mid >> i) & 1)) continue;
    const int sign = jw_sign(z, j) * jw_sign(mid, i);
    const std::uint64_t target = mid ^ (std::uint64_t{1} << i);
    entries_.push_back({target, z, coeff * sign});
    entries_.push_back({z, target, coeff * sign});
  }
}

void HamiltonianBuilder::add_number(double coeff, int i) {
  for (std::uint64_t z = 0; z < static_cast<std::uint64_t>(dim_); ++z)
    if ((z >> i) & 1) diagonal_[z] += coeff;
}

SparseHamiltonian HamiltonianBuilder::assemble() const {
  std::vector<Entry> all = entries_;
  for (std::int64_t z = 0; z < dim_; ++z)
    if (diagonal_[z] != 0.0)
      all.push_back({static_cast<std::uint64_t>(z), static_cast<std::uint64_t>(z),
                     diagonal_[z]});
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseHamiltonian h;
  h.n_sites = n_sites_;
  h.dim = dim_;
  h.row_ptr.assign(dim_ + 1, 0);
  for (std::size_t k = 0; k < all.size();) {
    std::size_t k2 = k;
    std::complex<double> sum = 0.0;
    while (k2 < all.size() && all[k2].row == all[k].row && all[k2].col == all[k].col)
      sum += all[k2++].v;
    if (std::abs(sum) > 0.0) {
      h.col.push_back(static_cast<std::uint32_t>(all[k].col));
      h.val.push_back(sum);
      h.row_ptr[all[k].row + 1]++;
      if (std::abs(sum.imag()) > 0.0) h.real_elements = false;
    }
    k = k2;
  }
  for (std::int64_t r = 0; r < dim_; ++r) h.row_ptr[r + 1] += h.row_ptr[r];
  h.check_hermitian();
  return h;
}

ModelSpec ModelSpec::tfim_chain(int n) {
  require(n >= 2, "tfim chain needs n >= 2");
  return {ModelKind::TfimChain, n};
}

ModelSpec ModelSpec::fil_ladder(int rungs) {
  require(rungs >= 2, "fil ladder needs >= 2 rungs");
  return {ModelKind::FilLadder1d, 2 * rungs};
}

ModelSpec ModelSpec::kitaev_chain(int n) {
  require(n >= 2, "kitaev chain needs n >= 2");
  return {ModelKind::KitaevChain, n};
}

ModelSpec ModelSpec::xxz_bond_alt(int n) {
  require(n >= 4 && n % 2 == 0, "bond-alternating chain needs even n >= 4");
  return {ModelKind::XxzBondAlt, n};
}

ModelSpec ModelSpec::by_name(const std::string& name, int n_sites) {
  if (name == "tfim") return tfim_chain(n_sites);
  if (name == "fil") {
    require(n_sites % 2 == 0, "fil site count must be even (two per rung)");
    return fil_ladder(n_sites / 2);
  }
  if (name == "kitaev") return kitaev_chain(n_sites);
  if (name == "xxz") return xxz_bond_alt(n_sites);
  throw std::invalid_argument("unknown model '" + name + "'");
}

int ModelSpec::dims() const {
  return (kind == ModelKind::FilLadder1d || kind == ModelKind::XxzBondAlt) ? 2 : 1;
}

std::string ModelSpec::name() const {
  switch (kind) {
    case ModelKind::TfimChain: return "tfim";
    case ModelKind::FilLadder1d: return "fil";
    case ModelKind::KitaevChain: return "kitaev";
    case ModelKind::XxzBondAlt: return "xxz";
  }
  return "?";
}

LatticeGeometry ModelSpec::geometry() const {
  if (kind == ModelKind::FilLadder1d) return LatticeGeometry::grid2d(2, n_sites / 2);
  return LatticeGeometry::chain(n_sites);
}

SparseHamiltonian ModelSpec::build(const std::array<double, 2>& lambda) const {
  for (int d = 0; d < dims(); ++d)
    require(lambda[d] >= 0.0 && lambda[d] <= 1.0,
            "lambda outside the unit parameter domain");
  HamiltonianBuilder b(n_sites);
  using P = HamiltonianBuilder::Pauli;

  switch (kind) {
    case ModelKind::TfimChain: {
      const double coupling = 2.0 * lambda[0];
      for (int i = 0; i < n_sites; ++i) {
        b.add_term(coupling, {{i, P::X}});
        b.add_term(-1.0, {{i, P::Z}, {(i + 1) % n_sites, P::Z}});
      }
      break;
    }
    case ModelKind::FilLadder1d: {
      const double s = lambda[0], u = lambda[1], k = 1.0;
      const int rungs = n_sites / 2;
      auto top = [&](int i) { return (i % rungs + rungs) % rungs; };
      auto bot = [&](int i) { return rungs + top(i); };
      for (int i = 0; i < rungs; ++i) {
        b.add_term(-(1.0 - s), {{top(i), P::X}});
        b.add_term(-(1.0 - s), {{bot(i), P::X}});
        b.add_term(s * k, {{top(i), P::Z}, {top(i + 1), P::Z}});
        b.add_term(-s * k, {{top(i), P::Z}, {bot(i), P::Z}});
        b.add_term(-s * k, {{bot(i), P::Z}, {bot(i + 1), P::Z}});
        b.add_term(-s * k, {{top(i), P::Z}});
        b.add_term(s * u / 2.0, {{bot(i), P::Z}});
      }
      break;
    }
    case ModelKind::KitaevChain: {
      const double t = 1.0;
      const double mu = 8.0 * lambda[0] - 4.0;
      for (int i = 0; i < n_sites; ++i) {
        const int j = (i + 1) % n_sites;
        b.add_hopping(-t, j, i);
        b.add_pairing(-t, j, i);
        b.add_number(-mu, i);
      }
      break;
    }
    case ModelKind::XxzBondAlt: {
      const double jp = 2.5 * lambda[0];
      const double delta = 3.5 * lambda[1];
      b.add_term(0.1, {{0, P::Z}});
      for (int i = 1; i < n_sites; i += 2) {
        b.add_term(1.0, {{i, P::X}, {i - 1, P::X}});
        b.add_term(1.0, {{i, P::Y}, {i - 1, P::Y}});
        b.add_term(delta, {{i, P::Z}, {i - 1, P::Z}});
      }
      for (int i = 2; i < n_sites - 1; i += 2) {
        b.add_term(jp, {{i, P::X}, {i - 1, P::X}});
        b.add_term(jp, {{i, P::Y}, {i - 1, P::Y}});
        b.add_term(jp * delta, {{i, P::Z}, {i - 1, P::Z}});
      }
      // degeneracy guard 2e-8 (sum_i Z_i)^2, diagonal in this basis
      std::vector<double> guard(std::size_t{1} << n_sites);
      for (std::uint64_t z = 0; z < guard.size(); ++z) {
        const double m = n_sites - 2.0 * std::popcount(z);
        guard[z] = 2e-8 * m * m;
      }
      b.add_diagonal(guard);
      break;
    }
  }
  SparseHamiltonian h = b.assemble();
  if (!h.real_elements)
    throw numeric_error("model '" + name() + "' assembled complex entries");
  return h;
}

}  // namespace fimlab
