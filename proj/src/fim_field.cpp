#include "fimlab/fim_field.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fimlab/errors.hpp"

namespace fimlab {

std::string provenance_name(Provenance p, const std::string& other_name) {
  switch (p) {
    case Provenance::ExactFiniteDiff: return "exact-finite-diff";
    case Provenance::ExplicitFormula: return "explicit-formula";
    case Provenance::Mcmc: return "mcmc";
    case Provenance::Classifim: return "classifim";
    case Provenance::Other: return other_name.empty() ? "other" : other_name;
  }
  return "other";
}

Provenance parse_provenance(const std::string& name) {
  if (name == "exact-finite-diff") return Provenance::ExactFiniteDiff;
  if (name == "explicit-formula") return Provenance::ExplicitFormula;
  if (name == "mcmc") return Provenance::Mcmc;
  if (name == "classifim") return Provenance::Classifim;
  return Provenance::Other;
}

FimField FimField::zeros(const ParameterGrid& grid, Provenance prov) {
  FimField f;
  f.grid = grid;
  f.entries.assign(grid.n_points(), {0.0, 0.0, 0.0});
  f.provenance = prov;
  return f;
}

void FimField::clamp_negative_diagonals(double tol) {
  for (auto& e : entries) {
    for (int d : {0, 2}) {
      if (e[d] < -tol)
        throw numeric_error("FIM diagonal entry " + std::to_string(e[d]) +
                            " below clamp tolerance");
      if (e[d] < 0.0) e[d] = 0.0;
    }
  }
}

void FimField::validate() const {
  grid.validate();
  require(static_cast<std::int64_t>(entries.size()) == grid.n_points(),
          "FIM field entries do not match grid");
  for (const auto& e : entries) {
    require(e[0] >= 0.0 && e[2] >= 0.0, "FIM diagonal entries must be >= 0");
  }
}

void save_fim_field(const FimField& field, const std::string& path) {
  field.validate();
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw io_error("cannot open for writing: " + path);
  f << "# fimlab-fim-field v1\n";
  f << "# provenance=" << provenance_name(field.provenance, field.other_name) << "\n";
  f << "# dims=" << field.grid.dims << " resolution=" << field.grid.resolution
    << " offset=" << field.grid.offset
    << " points_per_axis=" << field.grid.points_per_axis << "\n";
  char buf[128];
  if (field.grid.dims == 1) {
    f << "lambda0\tg00\n";
    for (std::int64_t p = 0; p < field.grid.n_points(); ++p) {
      auto c = field.grid.coords(p);
      std::snprintf(buf, sizeof buf, "%.17g\t%.17g\n", c[0], field.g00(p));
      f << buf;
    }
  } else {
    f << "lambda0\tlambda1\tg00\tg01\tg11\n";
    for (std::int64_t p = 0; p < field.grid.n_points(); ++p) {
      auto c = field.grid.coords(p);
      std::snprintf(buf, sizeof buf, "%.17g\t%.17g\t%.17g\t%.17g\t%.17g\n", c[0],
                    c[1], field.g00(p), field.g01(p), field.g11(p));
      f << buf;
    }
  }
  if (!f) throw io_error("short write: " + path);
}

FimField load_fim_field(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open: " + path);
  FimField field;
  std::string line;
  bool have_header = false;
  std::vector<std::array<double, 3>> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::stringstream ss(line.substr(1));
      std::string tok;
      while (ss >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
        if (key == "provenance") {
          field.provenance = parse_provenance(value);
          if (field.provenance == Provenance::Other) field.other_name = value;
        } else if (key == "dims") {
          field.grid.dims = std::stoi(value);
        } else if (key == "resolution") {
          field.grid.resolution = std::stoi(value);
        } else if (key == "offset") {
          field.grid.offset = std::stod(value);
        } else if (key == "points_per_axis") {
          field.grid.points_per_axis = std::stoi(value);
          have_header = true;
        }
      }
      continue;
    }
    if (line.rfind("lambda0", 0) == 0) continue;  // column header
    std::stringstream ss(line);
    std::array<double, 3> e{0.0, 0.0, 0.0};
    double c0 = 0, c1 = 0;
    if (field.grid.dims == 1) {
      if (!(ss >> c0 >> e[0])) throw format_error(path + ": malformed row");
    } else {
      if (!(ss >> c0 >> c1 >> e[0] >> e[1] >> e[2]))
        throw format_error(path + ": malformed row");
    }
    rows.push_back(e);
  }
  if (!have_header) throw format_error(path + ": missing fim-field header");
  field.grid.validate();
  if (static_cast<std::int64_t>(rows.size()) != field.grid.n_points())
    throw format_error(path + ": expected " + std::to_string(field.grid.n_points()) +
                       " rows, got " + std::to_string(rows.size()));
  field.entries = std::move(rows);
  return field;
}

}  // namespace fimlab
