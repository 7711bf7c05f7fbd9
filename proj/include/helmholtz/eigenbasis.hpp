#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "helmholtz/numerics.hpp"

namespace helmholtz {

enum class BoundaryOperator { Dirichlet, Neumann, Impedance };
enum class BasisFamily { SinInt, CosInt, SinHalf, CosHalf };

std::string to_string(BoundaryOperator op);
std::string to_string(BasisFamily f);
BoundaryOperator parse_operator(const std::string& s);
BasisFamily parse_family(const std::string& s);

bool is_half_integer(BasisFamily f);
double eigenvalue(BasisFamily f, int n);  // mu_n

double basis_value(BasisFamily f, int n, double t);
double basis_derivative(BasisFamily f, int n, double t);

BasisFamily select_eigenpairs(BoundaryOperator b1, BoundaryOperator b3);

// Hard limit on retained modes; HELMHOLTZ_MAX_MODES may lower it.
inline constexpr int kModeHardCap = 16384;
int mode_cap();

class Spectrum {
 public:
  using Entry = std::pair<int, cplx>;

  explicit Spectrum(BasisFamily family) : family_(family) {}
  Spectrum(BasisFamily family, std::vector<Entry> coeffs);

  static Spectrum single(BasisFamily family, int n, cplx value = 1.0);

  BasisFamily family() const { return family_; }
  const std::vector<Entry>& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }
  int top_mode() const { return coeffs_.empty() ? -1 : coeffs_.back().first; }
  cplx at(int n) const;

  cplx expand(double t) const;
  cplx expand_derivative(double t) const;

  Spectrum scaled(cplx a) const;
  Spectrum truncated(int max_mode) const;

 private:
  BasisFamily family_;
  std::vector<Entry> coeffs_;
};

Spectrum linear_combination(cplx a, const Spectrum& s, cplx b, const Spectrum& t);

struct DataNormReport {
  double l2 = 0.0;
  double fractional_half = 0.0;
  double fractional_three_half = 0.0;
};

DataNormReport data_norms(const Spectrum& s);

using BoundaryFunction = std::function<cplx(double)>;

int projection_panels(int max_mode);
Spectrum project(const BoundaryFunction& g, BasisFamily family, int max_mode);
Spectrum project(const Spectrum& g, BasisFamily family, int max_mode);

}  // namespace helmholtz
