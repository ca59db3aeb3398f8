#pragma once

#include <array>
#include <string>
#include <vector>

#include "fimlab/grid.hpp"

namespace fimlab {

enum class Provenance { ExactFiniteDiff, ExplicitFormula, Mcmc, Classifim, Other };

std::string provenance_name(Provenance p, const std::string& other_name = "");
Provenance parse_provenance(const std::string& name);

/// Symmetric metric estimates attached to grid points: a scalar g00 on 1D
/// grids, (g00, g01, g11) on 2D grids.
struct FimField {
  ParameterGrid grid;
  std::vector<std::array<double, 3>> entries;  // {g00, g01, g11}
  Provenance provenance = Provenance::Other;
  std::string other_name;

  static FimField zeros(const ParameterGrid& grid, Provenance prov);

  double g00(std::int64_t p) const { return entries[p][0]; }
  double g01(std::int64_t p) const { return entries[p][1]; }
  double g11(std::int64_t p) const { return entries[p][2]; }

  /// Diagonal entries are provably nonnegative; estimator noise above
  /// -tol is clamped to zero, anything below that is an error.
  void clamp_negative_diagonals(double tol = 1e-9);

  void validate() const;
};

void save_fim_field(const FimField& field, const std::string& path);
FimField load_fim_field(const std::string& path);

}  // namespace fimlab
