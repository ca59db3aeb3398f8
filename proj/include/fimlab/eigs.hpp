#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "fimlab/hamiltonian.hpp"

namespace fimlab {

/// Lowest k eigenpairs, energies ascending, eigenvectors orthonormal real
/// columns. Residuals are verified to 1e-8 * norm bound on return.
struct SpectralSlice {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;

  int k() const { return static_cast<int>(energies.size()); }
};

struct EigsOptions {
  int k = 4;
  std::uint64_t seed = 0;
  /// Dense solve at or below this dimension, restarted Lanczos above.
  std::int64_t dense_cutoff = 1024;
  double tol = 1e-10;       // relative residual target
  int max_lanczos = 220;    // Krylov size per restart
  int max_restarts = 60;
};

SpectralSlice lowest_eigs(const SparseHamiltonian& h, const EigsOptions& opts = {});

}  // namespace fimlab
