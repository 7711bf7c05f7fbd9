#include "helmholtz/modal1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace helmholtz {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

struct NormPair {
  double x;
  double dx;
};

double signed_gap(double k, double mu) { return (k - mu) * (k + mu); }

// Closed-form norms, written as ratios of nonnegative combinations of modal_pieces(q).
NormPair impedance_pair_norms(double k, double q) {
  const ModalPieces p = modal_pieces(q);
  const double kk = k * k, rho = q / kk;
  const double den = 2.0 * (4.0 * p.one + (1.0 - rho) * (1.0 - rho) * kk * p.sn2);
  return {(kk * p.w + p.one + p.d2) / (kk * den), (p.one + p.d2 + q * q / kk * p.w) / den};
}

NormPair gamma4_data_norms(double k, double q, bool neumann_far) {
  const ModalPieces p = modal_pieces(q);
  const double kk = k * k, rho = q / kk;
  if (!neumann_far) {
    const double e0 = p.one + (1.0 - rho) * kk * p.sn2;
    return {p.w / (2.0 * e0), (p.one + p.d2) / (2.0 * e0)};
  }
  const double e1 = p.c2 + q * q / kk * p.sn2;
  return {(p.one + p.d2) / (2.0 * kk * e1), q * q / kk * p.w / (2.0 * e1)};
}

NormPair gamma2_data_norms(double k, double q, bool neumann_data) {
  const ModalPieces p = modal_pieces(q);
  const double kk = k * k, rho = q / kk;
  if (!neumann_data) {
    const double e0 = p.one + (1.0 - rho) * kk * p.sn2;
    return {(kk * p.w + p.one + p.d2) / (2.0 * e0), (kk * (p.one + p.d2) + q * q * p.w) / (2.0 * e0)};
  }
  const double e1 = p.c2 + q * q / kk * p.sn2;
  return {(kk * p.w + p.one + p.d2) / (2.0 * kk * e1), (p.one + p.d2 + q * q / kk * p.w) / (2.0 * e1)};
}

void guard_cos(const ModalPieces& p) {
  if (p.c2 < 1e-20 * p.one) throw ResonanceError("resonant lifting: cos(k lambda) vanishes");
}
void guard_sin(const ModalPieces& p, double q) {
  if (q > 1.0 && q * p.sn2 < 1e-20 * p.one)
    throw ResonanceError("resonant lifting: sin(k lambda) vanishes");
}

NormPair lifting_norms(double q, bool neumann_data, bool neumann_far) {
  const ModalPieces p = modal_pieces(q);
  if (neumann_data) {
    if (!neumann_far) {
      guard_cos(p);
      return {p.w / (2.0 * p.c2), (p.one + p.d2) / (2.0 * p.c2)};
    }
    guard_sin(p, q);
    if (q == 0.0) throw ResonanceError("resonant lifting: Neumann-Neumann at cutoff");
    return {(p.one + p.d2) / (2.0 * q * q * p.sn2), p.w / (2.0 * p.sn2)};
  }
  if (!neumann_far) {
    guard_sin(p, q);
    return {p.w / (2.0 * p.sn2), (p.one + p.d2) / (2.0 * p.sn2)};
  }
  guard_cos(p);
  return {(p.one + p.d2) / (2.0 * p.c2), q * q * p.w / (2.0 * p.c2)};
}

struct EndValues {
  double v0, d0, v1, d1;
};

}  // namespace

std::string to_string(Side s) {
  switch (s) {
    case Side::Gamma1: return "gamma1";
    case Side::Gamma2: return "gamma2";
    case Side::Gamma3: return "gamma3";
    case Side::Gamma4: return "gamma4";
  }
  return "?";
}

ModeRegime classify_mode(double k, double mu) {
  if (!(k > 0.0)) throw std::invalid_argument("classify_mode: k must be positive");
  const double q = signed_gap(k, mu);
  const double lambda = std::sqrt(std::abs(q)) / k;
  if (std::abs(q) <= kCutoffTolerance * std::max(k * k, mu * mu))
    return {RegimeKind::Cutoff, 0.0, 0.0};
  return {q > 0 ? RegimeKind::Propagating : RegimeKind::Evanescent, lambda, k * lambda};
}

ModalSolution1D ModalSolution1D::solve(double k, double mu, const EndCondition& left,
                                       const EndCondition& right) {
  ModalSolution1D m;
  m.k_ = k;
  m.mu_ = mu;
  m.regime_ = classify_mode(k, mu);
  m.q_ = m.regime_.kind == RegimeKind::Cutoff ? 0.0 : signed_gap(k, mu);
  EndValues f1, f2;
  if (m.regime_.kind == RegimeKind::Cutoff) {
    m.branch_ = Branch::Polynomial;
    f1 = {1, 0, 1, 0};
    f2 = {0, 1, 1, 1};
  } else if (m.q_ < -1.0) {
    m.branch_ = Branch::Decaying;
    const double z = std::sqrt(-m.q_), e = std::exp(-z);
    f1 = {1, -z, e, -z * e};
    f2 = {e, z * e, 1, z};
  } else {
    m.branch_ = Branch::Oscillatory;
    const double c = cos_sqrt(m.q_), sn = sinc_sqrt(m.q_);
    f1 = {1, 0, c, -m.q_ * sn};
    f2 = {0, 1, sn, c};
  }
  const cplx m00 = left.a * f1.v0 + left.b * f1.d0;
  const cplx m01 = left.a * f2.v0 + left.b * f2.d0;
  const cplx m10 = right.a * f1.v1 + right.b * f1.d1;
  const cplx m11 = right.a * f2.v1 + right.b * f2.d1;
  const cplx det = m00 * m11 - m01 * m10;
  const double scale = (std::abs(m00) + std::abs(m01)) * (std::abs(m10) + std::abs(m11));
  if (!(std::abs(det) > 1e-13 * scale))
    throw ResonanceError("modal boundary-value problem is singular (k = " + std::to_string(k) +
                         ", mu = " + std::to_string(mu) + ")");
  m.coef_ = {(left.d * m11 - m01 * right.d) / det, (m00 * right.d - left.d * m10) / det, 0.0};
  m.norm_sq = m.gram_norm_sq();
  m.dnorm_sq = m.gram_dnorm_sq();
  return m;
}

ModalSolution1D ModalSolution1D::polynomial(double k, double mu, std::array<cplx, 3> coeffs) {
  ModalSolution1D m;
  m.k_ = k;
  m.mu_ = mu;
  m.regime_ = classify_mode(k, mu);
  m.q_ = m.regime_.kind == RegimeKind::Cutoff ? 0.0 : signed_gap(k, mu);
  m.branch_ = Branch::Polynomial;
  m.coef_ = coeffs;
  m.norm_sq = m.gram_norm_sq();
  m.dnorm_sq = m.gram_dnorm_sq();
  return m;
}

cplx ModalSolution1D::value(double t) const {
  switch (branch_) {
    case Branch::Polynomial:
      return coef_[0] + t * (coef_[1] + t * coef_[2]);
    case Branch::Decaying: {
      const double z = std::sqrt(-q_);
      return coef_[0] * std::exp(-z * t) + coef_[1] * std::exp(-z * (1.0 - t));
    }
    case Branch::Oscillatory: {
      const double qt = q_ * t * t;
      return coef_[0] * cos_sqrt(qt) + coef_[1] * (t * sinc_sqrt(qt));
    }
  }
  return {};
}

cplx ModalSolution1D::derivative(double t) const {
  switch (branch_) {
    case Branch::Polynomial:
      return coef_[1] + 2.0 * t * coef_[2];
    case Branch::Decaying: {
      const double z = std::sqrt(-q_);
      return -z * coef_[0] * std::exp(-z * t) + z * coef_[1] * std::exp(-z * (1.0 - t));
    }
    case Branch::Oscillatory: {
      const double qt = q_ * t * t;
      return -q_ * coef_[0] * (t * sinc_sqrt(qt)) + coef_[1] * cos_sqrt(qt);
    }
  }
  return {};
}

double ModalSolution1D::gram_norm_sq() const {
  const auto& c = coef_;
  switch (branch_) {
    case Branch::Polynomial: {
      double s = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += (c[i] * std::conj(c[j])).real() / (i + j + 1);
      return s;
    }
    case Branch::Decaying: {
      const double z = std::sqrt(-q_);
      const double self = -std::expm1(-2.0 * z) / (2.0 * z);
      return (std::norm(c[0]) + std::norm(c[1])) * self +
             2.0 * (c[0] * std::conj(c[1])).real() * std::exp(-z);
    }
    case Branch::Oscillatory: {
      const double sn = sinc_sqrt(q_), w = w_sqrt(q_), d2 = sn * cos_sqrt(q_);
      return std::norm(c[0]) * 0.5 * (1.0 + d2) + std::norm(c[1]) * 0.5 * w +
             (c[0] * std::conj(c[1])).real() * sn * sn;
    }
  }
  return 0.0;
}

double ModalSolution1D::gram_dnorm_sq() const {
  const auto& c = coef_;
  switch (branch_) {
    case Branch::Polynomial: {
      const cplx a = c[1], b = 2.0 * c[2];
      return std::norm(a) + (a * std::conj(b)).real() + std::norm(b) / 3.0;
    }
    case Branch::Decaying: {
      const double z = std::sqrt(-q_);
      const double self = -std::expm1(-2.0 * z) / (2.0 * z);
      return z * z *
             ((std::norm(c[0]) + std::norm(c[1])) * self -
              2.0 * (c[0] * std::conj(c[1])).real() * std::exp(-z));
    }
    case Branch::Oscillatory: {
      const double sn = sinc_sqrt(q_), w = w_sqrt(q_), d2 = sn * cos_sqrt(q_);
      const cplx a = -q_ * c[0], b = c[1];
      return std::norm(a) * 0.5 * w + std::norm(b) * 0.5 * (1.0 + d2) +
             (a * std::conj(b)).real() * sn * sn;
    }
  }
  return 0.0;
}

ModalSolution1D x_mode_mu(double mu, double k, BoundaryOperator b2, Side data_side) {
  if (!(k > 0.0)) throw std::invalid_argument("x_mode: k must be positive");
  if (data_side != Side::Gamma2 && data_side != Side::Gamma4)
    throw std::invalid_argument("x_mode: data must sit on Gamma2 or Gamma4");
  const cplx ik = kI * k;
  const EndCondition left{-ik, -1.0, data_side == Side::Gamma4 ? 1.0 : 0.0};
  EndCondition right{1.0, 0.0, data_side == Side::Gamma2 ? 1.0 : 0.0};
  if (b2 == BoundaryOperator::Neumann) right = {0.0, 1.0, right.d};
  if (b2 == BoundaryOperator::Impedance) right = {-ik, 1.0, right.d};
  ModalSolution1D m = ModalSolution1D::solve(k, mu, left, right);
  NormPair np;
  if (b2 == BoundaryOperator::Impedance)
    np = impedance_pair_norms(k, m.q());
  else if (data_side == Side::Gamma4)
    np = gamma4_data_norms(k, m.q(), b2 == BoundaryOperator::Neumann);
  else
    np = gamma2_data_norms(k, m.q(), b2 == BoundaryOperator::Neumann);
  m.norm_sq = np.x;
  m.dnorm_sq = np.dx;
  return m;
}

ModalSolution1D x_mode(int n, double k, BoundaryOperator b2, Side data_side, BasisFamily family) {
  return x_mode_mu(eigenvalue(family, n), k, b2, data_side);
}

LiftingFamilyChoice choose_lifting_family(double k, BoundaryOperator b1, BoundaryOperator b3) {
  if (!(k > 0.0)) throw std::invalid_argument("choose_lifting_family: k must be positive");
  if (b1 == BoundaryOperator::Impedance || b3 == BoundaryOperator::Impedance)
    throw std::invalid_argument("choose_lifting_family: horizontal sides take Dirichlet or Neumann only");
  const double pi2 = kPi * kPi;
  const double kk = k * k;
  const double r = kk / pi2;
  LiftingFamilyChoice c{};
  c.d0 = std::abs(kk - std::round(r) * pi2);
  c.d1 = std::abs(kk - (std::floor(r) + 0.5) * pi2);
  const bool near_integer = c.d0 <= pi2 / 8.0;
  if (b1 == b3) {
    c.family = near_integer ? LiftingFamily::HalfInteger : LiftingFamily::Integer;
    c.case_index = near_integer ? 1 : 2;
  } else {
    const bool integer = near_integer || c.d0 >= 3.0 * pi2 / 8.0;
    c.family = integer ? LiftingFamily::Integer : LiftingFamily::HalfInteger;
    c.case_index = integer ? 3 : 4;
  }
  return c;
}

double lifting_eigenvalue(const LiftingFamilyChoice& choice, int n) {
  return choice.family == LiftingFamily::Integer ? n * kPi : (n + 0.5) * kPi;
}

bool family_matches(const LiftingFamilyChoice& choice, BasisFamily f) {
  return is_half_integer(f) == (choice.family == LiftingFamily::HalfInteger);
}

ModalSolution1D y_mode_lifting_mu(double mu_tilde, double k, BoundaryOperator b1,
                                  BoundaryOperator b3, Side data_side) {
  if (!(k > 0.0)) throw std::invalid_argument("y_mode_lifting: k must be positive");
  if (b1 == BoundaryOperator::Impedance || b3 == BoundaryOperator::Impedance)
    throw std::invalid_argument("y_mode_lifting: horizontal sides take Dirichlet or Neumann only");
  if (data_side != Side::Gamma1 && data_side != Side::Gamma3)
    throw std::invalid_argument("y_mode_lifting: data must sit on Gamma1 or Gamma3");
  const bool on_bottom = data_side == Side::Gamma1;
  const BoundaryOperator data_op = on_bottom ? b1 : b3;
  const BoundaryOperator far_op = on_bottom ? b3 : b1;
  const bool neumann_data = data_op == BoundaryOperator::Neumann;
  const bool neumann_far = far_op == BoundaryOperator::Neumann;

  const ModeRegime regime = classify_mode(k, mu_tilde);
  if (regime.kind == RegimeKind::Cutoff && neumann_data) {
    std::array<cplx, 3> p = neumann_far ? std::array<cplx, 3>{0.0, -1.0, 0.5}
                                        : std::array<cplx, 3>{1.0, -1.0, 0.0};
    if (!on_bottom) p = {p[0] + p[1] + p[2], -p[1] - 2.0 * p[2], p[2]};
    ModalSolution1D m = ModalSolution1D::polynomial(k, mu_tilde, p);
    m.norm_sq = neumann_far ? 2.0 / 15.0 : 1.0 / 3.0;
    m.dnorm_sq = neumann_far ? 1.0 / 3.0 : 1.0;
    return m;
  }

  const double q = regime.kind == RegimeKind::Cutoff ? 0.0 : signed_gap(k, mu_tilde);
  const NormPair np = lifting_norms(q, neumann_data, neumann_far);

  const EndCondition bottom_dir{1.0, 0.0, on_bottom ? 1.0 : 0.0};
  const EndCondition bottom_neu{0.0, -1.0, on_bottom ? 1.0 : 0.0};
  const EndCondition top_dir{1.0, 0.0, on_bottom ? 0.0 : 1.0};
  const EndCondition top_neu{0.0, 1.0, on_bottom ? 0.0 : 1.0};
  ModalSolution1D m = ModalSolution1D::solve(
      k, mu_tilde, b1 == BoundaryOperator::Dirichlet ? bottom_dir : bottom_neu,
      b3 == BoundaryOperator::Dirichlet ? top_dir : top_neu);
  m.norm_sq = np.x;
  m.dnorm_sq = np.dx;
  return m;
}

ModalSolution1D y_mode_lifting(int n, double k, BoundaryOperator b1, BoundaryOperator b3,
                               Side data_side, const LiftingFamilyChoice& choice) {
  return y_mode_lifting_mu(lifting_eigenvalue(choice, n), k, b1, b3, data_side);
}

GapCheck gap_lower_bound(double k, double mu_tilde, bool same_ops) {
  const double gap = signed_gap(k, mu_tilde);
  const double z = std::sqrt(std::abs(gap));
  const double offset = same_ops ? 0.0 : 0.5;
  // mu_tilde and the lattice are multiples of pi/2; difference of squares done in integers
  const double a_real = 2.0 * mu_tilde / kPi;
  const double a = std::round(a_real);
  const bool exact = std::abs(a_real - a) < 1e-9 * std::max(1.0, a);
  const double j0 = std::floor(z / kPi - offset);
  double observed = std::numeric_limits<double>::infinity();
  for (double j = j0 - 1.0; j <= j0 + 2.0; j += 1.0) {
    const double lattice = std::abs((j + offset) * kPi);
    double diff;  // z^2 - lattice^2
    if (gap < 0 && exact) {
      const double b = 2.0 * std::abs(j + offset);
      diff = 0.25 * kPi * kPi * (a - b) * (a + b) - k * k;
    } else {
      diff = std::abs(gap) - lattice * lattice;
    }
    const double d = (z + lattice) > 0 ? std::abs(diff) / (z + lattice) : 0.0;
    observed = std::min(observed, d);
  }
  return {observed, (kPi / 8.0) / (1.0 + 2.0 * z / kPi)};
}

double ProofQuantities::value() const {
  if (phi) return *phi;
  if (theta) return *theta;
  return psi.value_or(0.0);
}

ProofQuantities proof_quantities(int n, double k, const ProofConfig& config) {
  const double mu = eigenvalue(config.family, n);
  const ModalSolution1D m =
      config.kind == ProofConfig::Kind::VerticalData
          ? x_mode_mu(mu, k, config.b2, config.data_side)
          : y_mode_lifting_mu(mu, k, config.b1, config.b3, config.data_side);
  ProofQuantities pq;
  switch (m.regime().kind) {
    case RegimeKind::Propagating: pq.phi = m.energy_sq(); break;
    case RegimeKind::Cutoff: pq.theta = m.energy_sq(); break;
    case RegimeKind::Evanescent: pq.psi = m.energy_sq(); break;
  }
  return pq;
}

}  // namespace helmholtz
