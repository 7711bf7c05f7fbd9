#include "helmholtz/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace helmholtz {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) {
      p0 = 1.0;
      dp = 1.0;
    } else {
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = mid - half * x;
    r.nodes[n - 1 - i] = mid + half * x;
    r.weights[i] = half * w;
    r.weights[n - 1 - i] = half * w;
  }
  return r;
}

QuadratureRule composite_gauss_legendre(int nodes_per_panel, int panels, double a, double b) {
  if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: panels must be positive");
  const QuadratureRule base = gauss_legendre(nodes_per_panel, 0.0, 1.0);
  QuadratureRule r;
  r.nodes.reserve(static_cast<size_t>(nodes_per_panel) * panels);
  r.weights.reserve(r.nodes.capacity());
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < nodes_per_panel; ++i) {
      r.nodes.push_back(lo + h * base.nodes[i]);
      r.weights.push_back(h * base.weights[i]);
    }
  }
  return r;
}

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v))
    comp_ += (sum_ - t) + v;
  else
    comp_ += (v - t) + sum_;
  sum_ = t;
}

double cos_sqrt(double q) {
  if (q > 0) return std::cos(std::sqrt(q));
  if (q < 0) return std::cosh(std::sqrt(-q));
  return 1.0;
}

double sinc_sqrt(double q) {
  if (std::abs(q) < 1.0) {
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < 30; ++j) {
      term *= -q / ((2.0 * j) * (2.0 * j + 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  const double s = std::sqrt(std::abs(q));
  return q > 0 ? std::sin(s) / s : std::sinh(s) / s;
}

double w_sqrt(double q) {
  if (std::abs(q) <= 1.0) {
    double term = 2.0 / 3.0, sum = term;
    for (int j = 0; j < 40; ++j) {
      term *= -4.0 * q / ((2.0 * j + 4.0) * (2.0 * j + 5.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  const double s = std::sqrt(std::abs(q));
  if (q > 0) return (1.0 - std::sin(2.0 * s) / (2.0 * s)) / q;
  return (std::sinh(2.0 * s) / (2.0 * s) - 1.0) / (s * s);
}

ModalPieces modal_pieces(double q) {
  if (q >= -400.0) {
    const double c = cos_sqrt(q);
    const double sn = sinc_sqrt(q);
    return {1.0, c * c, sn * sn, sn * c, w_sqrt(q)};
  }
  const double z = std::sqrt(-q);
  const double e = std::exp(-2.0 * z);
  ModalPieces p;
  p.one = e;
  p.c2 = 0.25 * (1.0 + e) * (1.0 + e);
  p.sn2 = (1.0 - e) * (1.0 - e) / (4.0 * z * z);
  p.d2 = (1.0 - e * e) / (4.0 * z);
  p.w = (p.d2 - p.one) / (z * z);
  return p;
}

HyperbolicRatios stable_hyperbolic_ratios(double z) {
  if (!(z >= 0.0)) throw std::invalid_argument("stable_hyperbolic_ratios: z must be nonnegative");
  HyperbolicRatios r{};
  const double x = 2.0 * z;
  if (x < 1e-3) {
    r.sinhc_2z = 1.0 + x * x / 6.0 + x * x * x * x / 120.0;
  } else {
    r.sinhc_2z = std::sinh(x) / x;
  }
  r.cosh_2z = std::cosh(x);
  r.log_cosh_2z = x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
  r.coth_z = 1.0 / std::tanh(z);
  r.tanh_z = std::tanh(z);
  if (z < 0.5) {
    // (sinh 2z - 2z)/z^3 = sum_{j>=1} 2^{2j+1} z^{2j-2}/(2j+1)!
    double term = 4.0 / 3.0, s = term;
    for (int j = 1; j < 30; ++j) {
      term *= 4.0 * z * z / ((2.0 * j + 2.0) * (2.0 * j + 3.0));
      s += term;
      if (term < 1e-18 * s) break;
    }
    const double ch = std::cosh(z);
    r.composite = s / (2.0 * ch * ch);
  } else {
    const double ch = std::cosh(z);
    r.composite = std::tanh(z) / (z * z * z) - 1.0 / (z * z * ch * ch);
  }
  return r;
}

}  // namespace helmholtz
