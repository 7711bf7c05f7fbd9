#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "helmholtz/eigenbasis.hpp"

namespace helmholtz {

// Sides of the unit square: Gamma1 y=0, Gamma2 x=1, Gamma3 y=1, Gamma4 x=0.
enum class Side { Gamma1, Gamma2, Gamma3, Gamma4 };
std::string to_string(Side s);

class ResonanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RegimeKind { Propagating, Cutoff, Evanescent };

struct ModeRegime {
  RegimeKind kind;
  double lambda;  // sqrt|1 - mu^2/k^2|
  double z;       // k * lambda
};

inline constexpr double kCutoffTolerance = 1e-8;

ModeRegime classify_mode(double k, double mu);

// a X(t0) + b X'(t0) = d
struct EndCondition {
  cplx a;
  cplx b;
  cplx d;
};

class ModalSolution1D {
 public:
  enum class Branch { Oscillatory, Decaying, Polynomial };

  // Solves X'' + (k^2 - mu^2) X = 0 with one condition at each end.
  static ModalSolution1D solve(double k, double mu, const EndCondition& left,
                               const EndCondition& right);
  static ModalSolution1D polynomial(double k, double mu, std::array<cplx, 3> coeffs);

  cplx value(double t) const;
  cplx derivative(double t) const;

  double k() const { return k_; }
  double mu() const { return mu_; }
  double q() const { return q_; }
  const ModeRegime& regime() const { return regime_; }
  Branch branch() const { return branch_; }
  const std::array<cplx, 3>& coefficients() const { return coef_; }

  // Closed-form norms.
  double norm_sq = 0.0;
  double dnorm_sq = 0.0;

  // Exact integrals of the stored representation.
  double gram_norm_sq() const;
  double gram_dnorm_sq() const;

  // ||X'||^2 + (mu^2 + k^2) ||X||^2
  double energy_sq() const { return dnorm_sq + (mu_ * mu_ + k_ * k_) * norm_sq; }

 private:
  ModalSolution1D() = default;

  double k_ = 1.0;
  double mu_ = 0.0;
  double q_ = 0.0;
  ModeRegime regime_{RegimeKind::Cutoff, 0.0, 0.0};
  Branch branch_ = Branch::Polynomial;
  std::array<cplx, 3> coef_{};
};

// Vertical-data mode on [0,1] in x: impedance on Gamma4, b2 on Gamma2, unit datum on data_side.
ModalSolution1D x_mode_mu(double mu, double k, BoundaryOperator b2, Side data_side);
ModalSolution1D x_mode(int n, double k, BoundaryOperator b2, Side data_side, BasisFamily family);

enum class LiftingFamily { Integer, HalfInteger };

struct LiftingFamilyChoice {
  double d0;
  double d1;
  LiftingFamily family;
  int case_index;
};

LiftingFamilyChoice choose_lifting_family(double k, BoundaryOperator b1, BoundaryOperator b3);
double lifting_eigenvalue(const LiftingFamilyChoice& choice, int n);
bool family_matches(const LiftingFamilyChoice& choice, BasisFamily f);

// Lifting mode in y: unit datum on data_side (Gamma1 or Gamma3), homogeneous on the other.
ModalSolution1D y_mode_lifting_mu(double mu_tilde, double k, BoundaryOperator b1,
                                  BoundaryOperator b3, Side data_side);
ModalSolution1D y_mode_lifting(int n, double k, BoundaryOperator b1, BoundaryOperator b3,
                               Side data_side, const LiftingFamilyChoice& choice);

struct GapCheck {
  double observed;
  double bound;
};

GapCheck gap_lower_bound(double k, double mu_tilde, bool same_ops);

struct ProofConfig {
  enum class Kind { VerticalData, Lifting };
  Kind kind = Kind::VerticalData;
  BoundaryOperator b2 = BoundaryOperator::Impedance;
  BoundaryOperator b1 = BoundaryOperator::Neumann;
  BoundaryOperator b3 = BoundaryOperator::Neumann;
  Side data_side = Side::Gamma4;
  BasisFamily family = BasisFamily::CosInt;  // vertical: y family; lifting: x family
};

struct ProofQuantities {
  std::optional<double> phi;
  std::optional<double> theta;
  std::optional<double> psi;
  double value() const;
};

ProofQuantities proof_quantities(int n, double k, const ProofConfig& config);

}  // namespace helmholtz
