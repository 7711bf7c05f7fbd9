#include "helmholtz/eigenbasis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace helmholtz {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

double frequency(BasisFamily f, int n) {
  return is_half_integer(f) ? (n + 0.5) * kPi : n * kPi;
}
}  // namespace

std::string to_string(BoundaryOperator op) {
  switch (op) {
    case BoundaryOperator::Dirichlet: return "dirichlet";
    case BoundaryOperator::Neumann: return "neumann";
    case BoundaryOperator::Impedance: return "impedance";
  }
  return "?";
}

std::string to_string(BasisFamily f) {
  switch (f) {
    case BasisFamily::SinInt: return "sin_int";
    case BasisFamily::CosInt: return "cos_int";
    case BasisFamily::SinHalf: return "sin_half";
    case BasisFamily::CosHalf: return "cos_half";
  }
  return "?";
}

BoundaryOperator parse_operator(const std::string& s) {
  if (s == "dirichlet" || s == "D") return BoundaryOperator::Dirichlet;
  if (s == "neumann" || s == "N") return BoundaryOperator::Neumann;
  if (s == "impedance" || s == "I") return BoundaryOperator::Impedance;
  throw std::invalid_argument("unknown boundary operator '" + s + "'");
}

BasisFamily parse_family(const std::string& s) {
  if (s == "sin_int") return BasisFamily::SinInt;
  if (s == "cos_int") return BasisFamily::CosInt;
  if (s == "sin_half") return BasisFamily::SinHalf;
  if (s == "cos_half") return BasisFamily::CosHalf;
  throw std::invalid_argument("unknown basis family '" + s + "'");
}

bool is_half_integer(BasisFamily f) {
  return f == BasisFamily::SinHalf || f == BasisFamily::CosHalf;
}

double eigenvalue(BasisFamily f, int n) { return frequency(f, n); }

double basis_value(BasisFamily f, int n, double t) {
  const double w = frequency(f, n);
  switch (f) {
    case BasisFamily::SinInt:
      return n == 0 ? 0.0 : kSqrt2 * std::sin(w * t);
    case BasisFamily::CosInt:
      return n == 0 ? 1.0 : kSqrt2 * std::cos(w * t);
    case BasisFamily::SinHalf:
      return kSqrt2 * std::sin(w * t);
    case BasisFamily::CosHalf:
      return kSqrt2 * std::cos(w * t);
  }
  return 0.0;
}

double basis_derivative(BasisFamily f, int n, double t) {
  const double w = frequency(f, n);
  switch (f) {
    case BasisFamily::SinInt:
      return n == 0 ? 0.0 : kSqrt2 * w * std::cos(w * t);
    case BasisFamily::CosInt:
      return n == 0 ? 0.0 : -kSqrt2 * w * std::sin(w * t);
    case BasisFamily::SinHalf:
      return kSqrt2 * w * std::cos(w * t);
    case BasisFamily::CosHalf:
      return -kSqrt2 * w * std::sin(w * t);
  }
  return 0.0;
}

BasisFamily select_eigenpairs(BoundaryOperator b1, BoundaryOperator b3) {
  using B = BoundaryOperator;
  if (b1 == B::Impedance || b3 == B::Impedance)
    throw std::invalid_argument("select_eigenpairs: horizontal sides take Dirichlet or Neumann only");
  if (b1 == B::Dirichlet) return b3 == B::Dirichlet ? BasisFamily::SinInt : BasisFamily::SinHalf;
  return b3 == B::Neumann ? BasisFamily::CosInt : BasisFamily::CosHalf;
}

int mode_cap() {
  int cap = kModeHardCap;
  if (const char* env = std::getenv("HELMHOLTZ_MAX_MODES")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0 && v < cap) cap = static_cast<int>(v);
  }
  return cap;
}

Spectrum::Spectrum(BasisFamily family, std::vector<Entry> coeffs) : family_(family) {
  std::sort(coeffs.begin(), coeffs.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const auto& [n, v] = coeffs[i];
    if (n < 0) throw std::invalid_argument("Spectrum: negative mode index");
    if (i > 0 && coeffs[i - 1].first == n)
      throw std::invalid_argument("Spectrum: duplicate mode index " + std::to_string(n));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("Spectrum: non-finite coefficient at mode " + std::to_string(n));
    if (n == 0 && family == BasisFamily::SinInt) continue;
    coeffs_.push_back(coeffs[i]);
  }
}

Spectrum Spectrum::single(BasisFamily family, int n, cplx value) {
  return Spectrum(family, {{n, value}});
}

cplx Spectrum::at(int n) const {
  auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), n,
                             [](const Entry& e, int m) { return e.first < m; });
  return (it != coeffs_.end() && it->first == n) ? it->second : cplx{};
}

cplx Spectrum::expand(double t) const {
  CompensatedComplexSum s;
  for (const auto& [n, v] : coeffs_) s.add(v * basis_value(family_, n, t));
  return s.value();
}

cplx Spectrum::expand_derivative(double t) const {
  CompensatedComplexSum s;
  for (const auto& [n, v] : coeffs_) s.add(v * basis_derivative(family_, n, t));
  return s.value();
}

Spectrum Spectrum::scaled(cplx a) const {
  std::vector<Entry> c;
  for (const auto& [n, v] : coeffs_)
    if (a * v != cplx{}) c.emplace_back(n, a * v);
  return Spectrum(family_, std::move(c));
}

Spectrum Spectrum::truncated(int max_mode) const {
  std::vector<Entry> c;
  for (const auto& e : coeffs_)
    if (e.first <= max_mode) c.push_back(e);
  return Spectrum(family_, std::move(c));
}

Spectrum linear_combination(cplx a, const Spectrum& s, cplx b, const Spectrum& t) {
  if (s.family() != t.family()) throw std::invalid_argument("linear_combination: family mismatch");
  std::vector<Spectrum::Entry> out;
  size_t i = 0, j = 0;
  const auto& x = s.coeffs();
  const auto& y = t.coeffs();
  while (i < x.size() || j < y.size()) {
    int n;
    cplx v;
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      n = x[i].first;
      v = a * x[i++].second;
    } else if (i == x.size() || y[j].first < x[i].first) {
      n = y[j].first;
      v = b * y[j++].second;
    } else {
      n = x[i].first;
      v = a * x[i++].second + b * y[j++].second;
    }
    if (v != cplx{}) out.emplace_back(n, v);
  }
  return Spectrum(s.family(), std::move(out));
}

DataNormReport data_norms(const Spectrum& s) {
  CompensatedSum l2, half, three;
  for (const auto& [n, v] : s.coeffs()) {
    const double a = std::norm(v);
    const double mu = eigenvalue(s.family(), n);
    l2.add(a);
    half.add(a * mu);
    three.add(a * mu * mu * mu);
  }
  return {std::sqrt(l2.value()), std::sqrt(half.value()), std::sqrt(three.value())};
}

int projection_panels(int max_mode) { return std::max(8, (max_mode + 3) / 4); }

namespace {
void check_cap(int max_mode) {
  if (max_mode < 0) throw std::invalid_argument("project: max_mode must be nonnegative");
  if (max_mode > mode_cap())
    throw std::invalid_argument("project: max_mode " + std::to_string(max_mode) +
                                " exceeds mode cap " + std::to_string(mode_cap()));
}
}  // namespace

Spectrum project(const BoundaryFunction& g, BasisFamily family, int max_mode) {
  check_cap(max_mode);
  const QuadratureRule rule = composite_gauss_legendre(32, projection_panels(max_mode));
  std::vector<cplx> samples(rule.nodes.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    samples[i] = g(rule.nodes[i]);
    if (!std::isfinite(samples[i].real()) || !std::isfinite(samples[i].imag()))
      throw std::invalid_argument("project: non-finite sample at t = " + std::to_string(rule.nodes[i]));
  }
  std::vector<Spectrum::Entry> coeffs;
  for (int n = 0; n <= max_mode; ++n) {
    if (n == 0 && family == BasisFamily::SinInt) continue;
    CompensatedComplexSum s;
    for (size_t i = 0; i < samples.size(); ++i)
      s.add(rule.weights[i] * basis_value(family, n, rule.nodes[i]) * samples[i]);
    const cplx v = s.value();
    if (v != cplx{}) coeffs.emplace_back(n, v);
  }
  return Spectrum(family, std::move(coeffs));
}

Spectrum project(const Spectrum& g, BasisFamily family, int max_mode) {
  check_cap(max_mode);
  if (g.family() != family) throw std::invalid_argument("project: modal input has a different family");
  return g;
}

}  // namespace helmholtz
