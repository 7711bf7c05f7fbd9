#pragma once

#include <complex>
#include <vector>

namespace helmholtz {

using cplx = std::complex<double>;

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(int n, double a = 0.0, double b = 1.0);
QuadratureRule composite_gauss_legendre(int nodes_per_panel, int panels,
                                        double a = 0.0, double b = 1.0);

// Neumaier summation.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(cplx v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// Entire functions of q = z^2, valid for either sign of q.
// cos_sqrt(q) = cos(sqrt q) (cosh for q < 0), sinc_sqrt(q) = sin(sqrt q)/sqrt q.
double cos_sqrt(double q);
double sinc_sqrt(double q);
// (1 - sin(2 sqrt q)/(2 sqrt q)) / q, equal to 2/3 at q = 0.
double w_sqrt(double q);

// The five building blocks of every closed-form modal norm, all multiplied by a
// common positive factor (e^{-2z} once the mode is strongly evanescent).
struct ModalPieces {
  double one;  // 1
  double c2;   // cos^2
  double sn2;  // (sin z / z)^2
  double d2;   // sin(2z)/(2z)
  double w;    // (1 - d2)/q
};
ModalPieces modal_pieces(double q);

struct HyperbolicRatios {
  double sinhc_2z;       // sinh(2z)/(2z); +inf beyond double range
  double cosh_2z;        // +inf beyond double range
  double log_cosh_2z;
  double coth_z;         // sinh(2z)/(cosh(2z)-1)
  double tanh_z;         // sinh(2z)/(cosh(2z)+1)
  double composite;      // (sinh(2z)-2z)/(z^3 (cosh(2z)+1))
};
HyperbolicRatios stable_hyperbolic_ratios(double z);

}  // namespace helmholtz
