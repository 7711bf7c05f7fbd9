#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "helmholtz/solver.hpp"

namespace helmholtz {

// Nodal values on the uniform (n x n) grid, values[i * n + j] at (i h, j h).
struct GridSolution {
  double h = 0.0;
  int n = 0;
  std::vector<cplx> values;
  BoundaryConfig config;
  double k = 1.0;

  cplx at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
  std::vector<double> nodes() const;
};

// Boundary data indexed by Side (Gamma1..Gamma4); empty callables mean zero data.
struct FdmProblem {
  BoundaryConfig config;
  std::array<BoundaryFunction, 4> g;
  Source2D f;
  double k = 1.0;
};

class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, double indicator)
      : std::runtime_error(what), indicator(indicator) {}
  double indicator;
};

inline constexpr int kMinGridSize = 17;
inline constexpr double kFdmResidualTolerance = 1e-8;

GridSolution fdm_solve(const FdmProblem& problem, int n);

// Convenience: boundary data given as spectra (sides without data are zero).
FdmProblem fdm_problem(const BoundaryConfig& config, double k,
                       const std::array<std::optional<Spectrum>, 4>& data, Source2D f = {});

EnergyReport fdm_energy(const GridSolution& gs);

struct Comparison {
  double max_abs = 0.0;
  double rel_l2 = 0.0;
};

Comparison compare(const SeriesSolution& spectral, const GridSolution& gs);

}  // namespace helmholtz
