#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "helmholtz/solver.hpp"

namespace helmholtz {

enum class TheoremId { T1_G4, T2_G2_IMP, T2_G2_NEU, T2_G2_DIR, TF_SOURCE, T3_LIFT_NEU, T3_LIFT_DIR };

std::string to_string(TheoremId t);
TheoremId parse_theorem(const std::string& s);
const std::vector<TheoremId>& all_theorems();

double rhs_bound(TheoremId theorem, double k, const DataNormReport& norms);

inline constexpr double kCertificateSlack = 1e-9;

struct BoundCertificate {
  TheoremId theorem;
  double k;
  double lhs;
  double rhs;
  double ratio;
  bool pass;
  DataNormReport datum_norms;
  std::optional<double> lhs_quadrature;
};

class CertificateFailure : public std::runtime_error {
 public:
  explicit CertificateFailure(BoundCertificate c);
  BoundCertificate certificate;
};

BoundCertificate make_certificate(TheoremId theorem, double k, double lhs,
                                  const DataNormReport& norms);

// Checks that (config, placement, data) fits the theorem's hypothesis; throws otherwise.
void check_hypothesis(TheoremId theorem, const BoundaryConfig& config, Side placement,
                      const Spectrum& data, double k);

BoundCertificate certify(TheoremId theorem, const BoundaryConfig& config, Side placement,
                         const Spectrum& data, double k, std::optional<int> N = std::nullopt);
BoundCertificate certify_source(const BoundaryConfig& config, const ModalSource& f, double k,
                                std::optional<int> N = std::nullopt,
                                int quadrature_check_grid = 0);

enum class SharpnessId {
  Ex23Case1,
  Ex23Case2,
  Ex23Case3,
  Ex25Neumann,
  Ex25Dirichlet,
  LiftNN,
  LiftND,
  LiftDN,
  LiftDD
};

std::string to_string(SharpnessId id);
SharpnessId parse_sharpness(const std::string& s);
const std::vector<SharpnessId>& all_sharpness_cases();
bool is_lifting_case(SharpnessId id);

struct SharpnessCase {
  SharpnessId id;
  int n;
  double k;
  double mu;
  TheoremId theorem;
  BoundaryConfig config;
  Side data_side;
  Spectrum datum;
  SeriesSolution exact;
  std::optional<double> expected_energy;
  std::optional<double> expected_energy_sq;  // ||grad u||^2 + k^2 ||u||^2
  std::optional<double> lower_bound;         // on ||grad u|| + k ||u||
  double expected_ratio() const;             // needs expected_energy
};

// family: the orthonormal direction's basis (y for vertical examples, x for lifting ones).
SharpnessCase sharpness_case(SharpnessId id, int n, std::optional<BasisFamily> family = std::nullopt);

// Runs the case's datum through the solver.
SeriesSolution solve_sharpness_datum(const SharpnessCase& c);

struct SweepReport {
  TheoremId theorem;
  std::uint64_t seed;
  int n_modes;
  int trials;
  std::size_t certificates = 0;
  double max_ratio = 0.0;
  double argmax_k = 0.0;
  int argmax_trial = -1;
  std::string argmax_config;
  bool all_pass = true;
};

SweepReport sweep(TheoremId theorem, const std::vector<double>& k_grid, int n_modes, int trials,
                  std::uint64_t seed);

std::vector<double> log_grid(double lo, double hi, int points);

// Random smooth source: profiles on the first few modes, polynomial and trigonometric in x.
ModalSource random_smooth_source(BasisFamily family, std::uint64_t seed, int modes = 6);

std::string describe(const BoundaryConfig& c);

}  // namespace helmholtz
