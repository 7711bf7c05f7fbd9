#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "helmholtz/eigenbasis.hpp"
#include "helmholtz/modal1d.hpp"

namespace helmholtz {

struct BoundaryConfig {
  BoundaryOperator b1 = BoundaryOperator::Neumann;
  BoundaryOperator b2 = BoundaryOperator::Impedance;
  BoundaryOperator b3 = BoundaryOperator::Neumann;
  BoundaryOperator b4 = BoundaryOperator::Impedance;

  void validate() const;
  BoundaryOperator on(Side s) const;
  BasisFamily vertical_family() const { return select_eigenpairs(b1, b3); }
  bool operator==(const BoundaryConfig&) const = default;
};

struct BasisFactor {
  BasisFamily family;
  int n;
};

// x-profile of a source-driven mode: X'' + (k^2 - mu^2) X = -fhat, homogeneous
// impedance at x = 0 and Dirichlet at x = 1.
class SourceProfile {
 public:
  SourceProfile(double k, double mu, std::function<cplx(double)> fhat, int resolution);

  cplx value(double x) const;
  cplx derivative(double x) const;
  double norm_sq() const { return norm_sq_; }
  double dnorm_sq() const { return dnorm_sq_; }
  double mu() const { return mu_; }

 private:
  struct Integrals {
    cplx left;
    cplx right;
  };
  Integrals integrals(double x) const;

  double k_, mu_, q_;
  bool scaled_;
  cplx w_;   // Wronskian (scaled form when scaled_)
  cplx b_;   // scaled branch: reflection coefficient at x = 0
  std::function<cplx(double)> fhat_;
  int resolution_;
  double norm_sq_ = 0.0, dnorm_sq_ = 0.0;
};

// Closed-form profile with norms from quadrature; used for transcribed exact solutions.
struct AnalyticFactor {
  std::function<cplx(double)> value;
  std::function<cplx(double)> derivative;
  double norm_sq = 0.0;
  double dnorm_sq = 0.0;

  static std::shared_ptr<const AnalyticFactor> make(std::function<cplx(double)> f,
                                                    std::function<cplx(double)> df);
};

using Factor = std::variant<BasisFactor, ModalSolution1D, std::shared_ptr<const SourceProfile>,
                            std::shared_ptr<const AnalyticFactor>>;

cplx factor_value(const Factor& f, double t);
cplx factor_derivative(const Factor& f, double t);
double factor_norm_sq(const Factor& f);
double factor_dnorm_sq(const Factor& f);

struct SeriesTerm {
  cplx coefficient;
  Factor x;
  Factor y;
  int n;
  double mu;  // eigenvalue of the orthonormal factor
};

enum class Provenance { VerticalData, LiftedHorizontalData, SourceTerm, Superposition };
std::string to_string(Provenance p);

struct SeriesSolution {
  BoundaryConfig config;
  double k = 1.0;
  int truncation = 0;
  Provenance provenance = Provenance::VerticalData;
  std::vector<SeriesTerm> terms;
  double source_l2 = 0.0;  // ||f|| for SourceTerm provenance
};

int default_truncation(double k, int top_mode);

SeriesSolution solve_vertical_data(const BoundaryConfig& config, Side side, const Spectrum& data,
                                   double k, std::optional<int> N = std::nullopt);

SeriesSolution lift_horizontal_data(const Spectrum& g, Side side, const BoundaryConfig& config,
                                    double k, std::optional<int> N = std::nullopt);

struct ResidualTraces {
  Spectrum g2;
  Spectrum g4;
  int depth;
  double tail2;  // energy fraction not captured by the projection
  double tail4;
  std::vector<std::string> warnings;
};

int residual_projection_depth(double k, int N);
ResidualTraces residual_traces(const SeriesSolution& aux, const Spectrum& g2, const Spectrum& g4);

// f(x,y) = sum_n fhat_n(x) Y_n(y)
struct ModalSource {
  BasisFamily family;
  std::vector<std::pair<int, std::function<cplx(double)>>> profiles;
};
using Source2D = std::function<cplx(double, double)>;

inline constexpr int kDefaultKernelResolution = 64;

SeriesSolution solve_source(const ModalSource& f, const BoundaryConfig& config, double k,
                            std::optional<int> N = std::nullopt,
                            int M = kDefaultKernelResolution);
SeriesSolution solve_source(const Source2D& f, const BoundaryConfig& config, double k,
                            std::optional<int> N = std::nullopt,
                            int M = kDefaultKernelResolution);

struct PointValue {
  cplx value;
  cplx dx;
  cplx dy;
};

PointValue evaluate(const SeriesSolution& u, double x, double y);
std::vector<PointValue> evaluate(const SeriesSolution& u,
                                 const std::vector<std::pair<double, double>>& points);
// values[i * ys.size() + j] at (xs[i], ys[j])
std::vector<PointValue> evaluate_grid(const SeriesSolution& u, const std::vector<double>& xs,
                                      const std::vector<double>& ys);

// B_side u at the boundary point with tangential coordinate t.
cplx boundary_trace(const SeriesSolution& u, Side side, double t);

enum class EnergyMethod { Parseval, Quadrature };

struct EnergyReport {
  double grad_norm = 0.0;
  double l2_norm = 0.0;
  double energy = 0.0;
  EnergyMethod method = EnergyMethod::Parseval;
};

EnergyReport make_energy(double grad_norm, double l2_norm, double k, EnergyMethod method);
EnergyReport energy_parseval(const SeriesSolution& u);
EnergyReport energy_quadrature(const SeriesSolution& u, int n);

SeriesSolution superpose(const std::vector<SeriesSolution>& parts);
SeriesSolution scaled(const SeriesSolution& u, cplx a);

}  // namespace helmholtz
