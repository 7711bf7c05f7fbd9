#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "helmholtz/bounds.hpp"
#include "helmholtz/oracle.hpp"

namespace helmholtz::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One side's datum: either a named analytic datum or explicit (n, re, im) triples.
struct SideData {
  std::optional<std::string> named;  // "mode:<n>" or "constant:<re>,<im>"
  std::optional<BasisFamily> family;
  std::vector<std::tuple<int, double, double>> coeffs;
  bool operator==(const SideData&) const = default;
};

struct RunConfig {
  double k = 1.0;
  BoundaryConfig boundary;
  std::array<std::optional<SideData>, 4> data;  // indexed by Side
  std::optional<std::string> source;            // same named forms as data
  std::optional<int> truncation;
  int grid = 33;
  std::uint64_t seed = 0;
  std::string csv;
  std::string report;
  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string dump_config(const RunConfig& c);

// Family used for a side's datum when the config does not name one.
BasisFamily default_family(const RunConfig& c, Side s);
Spectrum side_spectrum(const RunConfig& c, Side s);
std::optional<ModalSource> modal_source(const RunConfig& c);

// Lifts Gamma1/Gamma3 data, corrects the vertical traces, re-solves and superposes.
struct FullSolve {
  SeriesSolution u;
  std::optional<ResidualTraces> traces;
};
FullSolve solve_problem(const RunConfig& c);

FdmProblem oracle_problem(const RunConfig& c);

std::string to_csv(const SeriesSolution& u, const std::vector<double>& xs, const std::vector<double>& ys);
std::string to_csv(const GridSolution& gs);

int run(int argc, char** argv);

}  // namespace helmholtz::cli
