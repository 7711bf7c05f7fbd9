#include "helmholtz/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace helmholtz {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

bool horizontal(BoundaryOperator op) {
  return op == BoundaryOperator::Dirichlet || op == BoundaryOperator::Neumann;
}

struct FactorEval {
  cplx v;
  cplx d;
};

FactorEval eval_factor(const Factor& f, double t) {
  return std::visit(
      [t](const auto& g) -> FactorEval {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, BasisFactor>)
          return {basis_value(g.family, g.n, t), basis_derivative(g.family, g.n, t)};
        else if constexpr (std::is_same_v<T, ModalSolution1D>)
          return {g.value(t), g.derivative(t)};
        else if constexpr (std::is_same_v<T, std::shared_ptr<const SourceProfile>>)
          return {g->value(t), g->derivative(t)};
        else
          return {g->value(t), g->derivative(t)};
      },
      f);
}

void check_point(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw std::out_of_range("evaluate: point (" + std::to_string(x) + ", " + std::to_string(y) +
                            ") lies outside the unit square");
}

}  // namespace

void BoundaryConfig::validate() const {
  if (b4 != BoundaryOperator::Impedance)
    throw std::invalid_argument("BoundaryConfig: Gamma4 must carry the impedance condition");
  if (!horizontal(b1) || !horizontal(b3))
    throw std::invalid_argument("BoundaryConfig: Gamma1 and Gamma3 take Dirichlet or Neumann only");
}

BoundaryOperator BoundaryConfig::on(Side s) const {
  switch (s) {
    case Side::Gamma1: return b1;
    case Side::Gamma2: return b2;
    case Side::Gamma3: return b3;
    case Side::Gamma4: return b4;
  }
  return b4;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::VerticalData: return "vertical_data";
    case Provenance::LiftedHorizontalData: return "lifted_horizontal_data";
    case Provenance::SourceTerm: return "source_term";
    case Provenance::Superposition: return "superposition";
  }
  return "?";
}

// ---------------------------------------------------------------- SourceProfile

SourceProfile::SourceProfile(double k, double mu, std::function<cplx(double)> fhat, int resolution)
    : k_(k), mu_(mu), fhat_(std::move(fhat)), resolution_(std::max(16, resolution)) {
  const ModeRegime r = classify_mode(k, mu);
  q_ = r.kind == RegimeKind::Cutoff ? 0.0 : (k - mu) * (k + mu);
  scaled_ = q_ < -1.0;
  const cplx ik = kI * k;
  if (scaled_) {
    const double z = std::sqrt(-q_);
    b_ = (z + ik) / (z - ik);
    w_ = -2.0 * z * (1.0 + b_ * std::exp(-2.0 * z));
  } else {
    w_ = cos_sqrt(q_) - ik * sinc_sqrt(q_);
  }
  if (!(std::abs(w_) > 1e-12))
    throw ResonanceError("source kernel: Wronskian below tolerance (k = " + std::to_string(k) +
                         ", mu = " + std::to_string(mu) + ")");

  const double zeff = std::sqrt(std::abs(q_));
  const QuadratureRule rule =
      composite_gauss_legendre(16, std::max(8, static_cast<int>(std::ceil(zeff / 2.0))));
  CompensatedSum a, b;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    a.add(rule.weights[i] * std::norm(value(rule.nodes[i])));
    b.add(rule.weights[i] * std::norm(derivative(rule.nodes[i])));
  }
  norm_sq_ = a.value();
  dnorm_sq_ = b.value();
}

SourceProfile::Integrals SourceProfile::integrals(double x) const {
  const double zeff = std::sqrt(std::abs(q_));
  const cplx ik = kI * k_;
  auto integrate = [&](double lo, double hi, auto&& weight) {
    CompensatedComplexSum s;
    const double len = hi - lo;
    if (len <= 0.0) return cplx{};
    const int panels =
        std::max((resolution_ + 15) / 16, static_cast<int>(std::ceil(zeff * len)));
    const QuadratureRule rule = composite_gauss_legendre(16, panels, lo, hi);
    for (size_t i = 0; i < rule.nodes.size(); ++i)
      s.add(rule.weights[i] * weight(rule.nodes[i]) * fhat_(rule.nodes[i]));
    return s.value();
  };
  if (scaled_) {
    const double z = std::sqrt(-q_);
    const cplx b = b_;
    return {integrate(0.0, x,
                      [&](double s) { return std::exp(-z * (x - s)) * (1.0 + b * std::exp(-2.0 * z * s)); }),
            integrate(x, 1.0, [&](double s) {
              return cplx(std::exp(-z * (s - x)) * (1.0 - std::exp(-2.0 * z * (1.0 - s))));
            })};
  }
  const double q = q_;
  return {integrate(0.0, x,
                    [&](double s) { return cos_sqrt(q * s * s) - ik * (s * sinc_sqrt(q * s * s)); }),
          integrate(x, 1.0, [&](double s) {
            const double r = s - 1.0;
            return cplx(r * sinc_sqrt(q * r * r));
          })};
}

cplx SourceProfile::value(double x) const {
  const Integrals I = integrals(x);
  if (scaled_) {
    const double z = std::sqrt(-q_);
    const cplx u1 = 1.0 + b_ * std::exp(-2.0 * z * x);
    const double u2 = 1.0 - std::exp(-2.0 * z * (1.0 - x));
    return -(u2 * I.left + u1 * I.right) / w_;
  }
  const cplx ik = kI * k_;
  const double r = x - 1.0;
  const cplx u1 = cos_sqrt(q_ * x * x) - ik * (x * sinc_sqrt(q_ * x * x));
  const double u2 = r * sinc_sqrt(q_ * r * r);
  return -(u2 * I.left + u1 * I.right) / w_;
}

cplx SourceProfile::derivative(double x) const {
  const Integrals I = integrals(x);
  if (scaled_) {
    const double z = std::sqrt(-q_);
    const double e1 = std::exp(-2.0 * z * x), e2 = std::exp(-2.0 * z * (1.0 - x));
    const cplx du1 = z * (1.0 + b_ * e1) - 2.0 * z * b_ * e1;
    const double du2 = -z * (1.0 - e2) - 2.0 * z * e2;
    return -(du2 * I.left + du1 * I.right) / w_;
  }
  const cplx ik = kI * k_;
  const double r = x - 1.0;
  const cplx du1 = -q_ * (x * sinc_sqrt(q_ * x * x)) - ik * cos_sqrt(q_ * x * x);
  const double du2 = cos_sqrt(q_ * r * r);
  return -(du2 * I.left + du1 * I.right) / w_;
}

// ---------------------------------------------------------------- factors

std::shared_ptr<const AnalyticFactor> AnalyticFactor::make(std::function<cplx(double)> f,
                                                           std::function<cplx(double)> df) {
  auto a = std::make_shared<AnalyticFactor>();
  const QuadratureRule rule = composite_gauss_legendre(32, 16);
  CompensatedSum n0, n1;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    n0.add(rule.weights[i] * std::norm(f(rule.nodes[i])));
    n1.add(rule.weights[i] * std::norm(df(rule.nodes[i])));
  }
  a->value = std::move(f);
  a->derivative = std::move(df);
  a->norm_sq = n0.value();
  a->dnorm_sq = n1.value();
  return a;
}

cplx factor_value(const Factor& f, double t) { return eval_factor(f, t).v; }
cplx factor_derivative(const Factor& f, double t) { return eval_factor(f, t).d; }

double factor_norm_sq(const Factor& f) {
  return std::visit(
      [](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, BasisFactor>)
          return (g.family == BasisFamily::SinInt && g.n == 0) ? 0.0 : 1.0;
        else if constexpr (std::is_same_v<T, ModalSolution1D>)
          return g.norm_sq;
        else if constexpr (std::is_same_v<T, std::shared_ptr<const SourceProfile>>)
          return g->norm_sq();
        else
          return g->norm_sq;
      },
      f);
}

double factor_dnorm_sq(const Factor& f) {
  return std::visit(
      [](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, BasisFactor>) {
          if (g.family == BasisFamily::SinInt && g.n == 0) return 0.0;
          const double mu = eigenvalue(g.family, g.n);
          return mu * mu;
        } else if constexpr (std::is_same_v<T, ModalSolution1D>) {
          return g.dnorm_sq;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const SourceProfile>>) {
          return g->dnorm_sq();
        } else {
          return g->dnorm_sq;
        }
      },
      f);
}

// ---------------------------------------------------------------- assembly

int default_truncation(double k, int top_mode) {
  return std::max(top_mode, static_cast<int>(std::ceil(k / kPi)) + 16);
}

SeriesSolution solve_vertical_data(const BoundaryConfig& config, Side side, const Spectrum& data,
                                   double k, std::optional<int> N) {
  config.validate();
  if (!(k > 0.0)) throw std::invalid_argument("solve_vertical_data: k must be positive");
  if (side != Side::Gamma2 && side != Side::Gamma4)
    throw std::invalid_argument("solve_vertical_data: data side must be Gamma2 or Gamma4");
  const BasisFamily fam = config.vertical_family();
  if (data.family() != fam)
    throw std::invalid_argument("solve_vertical_data: data family " + to_string(data.family()) +
                                " does not match the horizontal eigenbasis " + to_string(fam));
  SeriesSolution u;
  u.config = config;
  u.k = k;
  u.truncation = N.value_or(default_truncation(k, data.top_mode()));
  u.provenance = Provenance::VerticalData;
  for (const auto& [n, g] : data.coeffs()) {
    if (n > u.truncation) break;
    if (g == cplx{}) continue;
    u.terms.push_back({g, x_mode(n, k, config.b2, side, fam), BasisFactor{fam, n}, n,
                       eigenvalue(fam, n)});
  }
  return u;
}

SeriesSolution lift_horizontal_data(const Spectrum& g, Side side, const BoundaryConfig& config,
                                    double k, std::optional<int> N) {
  config.validate();
  if (!(k > 0.0)) throw std::invalid_argument("lift_horizontal_data: k must be positive");
  if (side != Side::Gamma1 && side != Side::Gamma3)
    throw std::invalid_argument("lift_horizontal_data: data side must be Gamma1 or Gamma3");
  const LiftingFamilyChoice choice = choose_lifting_family(k, config.b1, config.b3);
  if (!g.empty() && !family_matches(choice, g.family()))
    throw std::invalid_argument("lift_horizontal_data: data family " + to_string(g.family()) +
                                " does not match the lifting eigenvalue family at this k");
  SeriesSolution u;
  u.config = config;
  u.k = k;
  u.truncation = N.value_or(default_truncation(k, g.top_mode()));
  u.provenance = Provenance::LiftedHorizontalData;
  for (const auto& [n, c] : g.coeffs()) {
    if (n > u.truncation) break;
    if (c == cplx{}) continue;
    u.terms.push_back({c, BasisFactor{g.family(), n},
                       y_mode_lifting(n, k, config.b1, config.b3, side, choice), n,
                       eigenvalue(g.family(), n)});
  }
  return u;
}

int residual_projection_depth(double k, int N) {
  return std::max(N, 2 * static_cast<int>(std::ceil(k / kPi)) + 32);
}

ResidualTraces residual_traces(const SeriesSolution& aux, const Spectrum& g2, const Spectrum& g4) {
  if (aux.provenance != Provenance::LiftedHorizontalData)
    throw std::invalid_argument("residual_traces: auxiliary solution must come from lifting");
  const BasisFamily fam = aux.config.vertical_family();
  for (const Spectrum* g : {&g2, &g4})
    if (!g->empty() && g->family() != fam)
      throw std::invalid_argument("residual_traces: vertical data family mismatch");
  const int depth = residual_projection_depth(aux.k, aux.truncation);
  const cplx ik = kI * aux.k;

  // B2 and B4 of the auxiliary field as functions of y
  auto trace2 = [&](double y) {
    CompensatedComplexSum s;
    for (const auto& t : aux.terms) {
      const FactorEval X = eval_factor(t.x, 1.0);
      cplx bx;
      switch (aux.config.b2) {
        case BoundaryOperator::Dirichlet: bx = X.v; break;
        case BoundaryOperator::Neumann: bx = X.d; break;
        case BoundaryOperator::Impedance: bx = X.d - ik * X.v; break;
      }
      s.add(t.coefficient * bx * factor_value(t.y, y));
    }
    return s.value();
  };
  auto trace4 = [&](double y) {
    CompensatedComplexSum s;
    for (const auto& t : aux.terms) {
      const FactorEval X = eval_factor(t.x, 0.0);
      s.add(t.coefficient * (-X.d - ik * X.v) * factor_value(t.y, y));
    }
    return s.value();
  };

  ResidualTraces out{Spectrum(fam), Spectrum(fam), depth, 0.0, 0.0, {}};
  const QuadratureRule rule = composite_gauss_legendre(32, projection_panels(depth));
  auto residual = [&](const Spectrum& g, auto&& trace, double& tail, const char* name) {
    const Spectrum projected = project(BoundaryFunction(trace), fam, depth);
    const Spectrum r = linear_combination(1.0, g.empty() ? Spectrum(fam) : g, -1.0, projected);
    CompensatedSum total;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      const double y = rule.nodes[i];
      total.add(rule.weights[i] * std::norm(g.expand(y) - trace(y)));
    }
    const double captured = std::pow(data_norms(r).l2, 2);
    const double whole = std::max(total.value(), captured);
    tail = whole > 0.0 ? (whole - captured) / whole : 0.0;
    if (tail > 1e-8)
      out.warnings.push_back(std::string("residual trace on ") + name + ": tail energy fraction " +
                             std::to_string(tail) + " beyond " + std::to_string(depth) + " modes");
    return r;
  };
  if (aux.terms.empty()) {
    out.g2 = g2.empty() ? Spectrum(fam) : g2;
    out.g4 = g4.empty() ? Spectrum(fam) : g4;
    return out;
  }
  out.g2 = residual(g2, trace2, out.tail2, "gamma2");
  out.g4 = residual(g4, trace4, out.tail4, "gamma4");
  return out;
}

namespace {

SeriesSolution assemble_source(std::vector<std::pair<int, std::function<cplx(double)>>> profiles,
                               BasisFamily fam, const BoundaryConfig& config, double k,
                               std::optional<int> N, int M) {
  config.validate();
  if (!(k > 0.0)) throw std::invalid_argument("solve_source: k must be positive");
  if (config.b2 != BoundaryOperator::Dirichlet)
    throw std::invalid_argument("solve_source: only the Dirichlet condition on Gamma2 is supported");
  if (fam != config.vertical_family())
    throw std::invalid_argument("solve_source: source family does not match the horizontal eigenbasis");
  std::sort(profiles.begin(), profiles.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  int top = profiles.empty() ? -1 : profiles.back().first;
  SeriesSolution u;
  u.config = config;
  u.k = k;
  u.truncation = N.value_or(default_truncation(k, top));
  u.provenance = Provenance::SourceTerm;
  const QuadratureRule rule = composite_gauss_legendre(32, 8);
  CompensatedSum fnorm;
  for (auto& [n, fhat] : profiles) {
    if (n > u.truncation) break;
    if (n == 0 && fam == BasisFamily::SinInt) continue;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
      fnorm.add(rule.weights[i] * std::norm(fhat(rule.nodes[i])));
    auto profile = std::make_shared<const SourceProfile>(k, eigenvalue(fam, n), fhat, M);
    u.terms.push_back({1.0, profile, BasisFactor{fam, n}, n, eigenvalue(fam, n)});
  }
  u.source_l2 = std::sqrt(fnorm.value());
  return u;
}

}  // namespace

SeriesSolution solve_source(const ModalSource& f, const BoundaryConfig& config, double k,
                            std::optional<int> N, int M) {
  return assemble_source(f.profiles, f.family, config, k, N, M);
}

SeriesSolution solve_source(const Source2D& f, const BoundaryConfig& config, double k,
                            std::optional<int> N, int M) {
  config.validate();
  const BasisFamily fam = config.vertical_family();
  const int depth = N.value_or(default_truncation(k, 0));
  auto yrule = std::make_shared<const QuadratureRule>(
      composite_gauss_legendre(32, projection_panels(depth)));
  std::vector<std::pair<int, std::function<cplx(double)>>> profiles;
  for (int n = 0; n <= depth; ++n) {
    if (n == 0 && fam == BasisFamily::SinInt) continue;
    profiles.emplace_back(n, [f, yrule, fam, n](double x) {
      CompensatedComplexSum s;
      for (size_t i = 0; i < yrule->nodes.size(); ++i)
        s.add(yrule->weights[i] * f(x, yrule->nodes[i]) * basis_value(fam, n, yrule->nodes[i]));
      return s.value();
    });
  }
  SeriesSolution u = assemble_source(std::move(profiles), fam, config, k, depth, M);
  const QuadratureRule xrule = composite_gauss_legendre(32, 8);
  CompensatedSum total;
  for (size_t i = 0; i < xrule.nodes.size(); ++i)
    for (size_t j = 0; j < yrule->nodes.size(); ++j)
      total.add(xrule.weights[i] * yrule->weights[j] * std::norm(f(xrule.nodes[i], yrule->nodes[j])));
  u.source_l2 = std::sqrt(total.value());
  return u;
}

// ---------------------------------------------------------------- evaluation

PointValue evaluate(const SeriesSolution& u, double x, double y) {
  check_point(x, y);
  CompensatedComplexSum v, dx, dy;
  for (const auto& t : u.terms) {
    const FactorEval X = eval_factor(t.x, x);
    const FactorEval Y = eval_factor(t.y, y);
    v.add(t.coefficient * X.v * Y.v);
    dx.add(t.coefficient * X.d * Y.v);
    dy.add(t.coefficient * X.v * Y.d);
  }
  return {v.value(), dx.value(), dy.value()};
}

std::vector<PointValue> evaluate(const SeriesSolution& u,
                                 const std::vector<std::pair<double, double>>& points) {
  std::vector<PointValue> out;
  out.reserve(points.size());
  for (const auto& [x, y] : points) out.push_back(evaluate(u, x, y));
  return out;
}

std::vector<PointValue> evaluate_grid(const SeriesSolution& u, const std::vector<double>& xs,
                                      const std::vector<double>& ys) {
  for (double x : xs) check_point(x, 0.0);
  for (double y : ys) check_point(0.0, y);
  const size_t nt = u.terms.size(), nx = xs.size(), ny = ys.size();
  std::vector<FactorEval> X(nt * nx), Y(nt * ny);
  for (size_t t = 0; t < nt; ++t) {
    for (size_t i = 0; i < nx; ++i) X[t * nx + i] = eval_factor(u.terms[t].x, xs[i]);
    for (size_t j = 0; j < ny; ++j) Y[t * ny + j] = eval_factor(u.terms[t].y, ys[j]);
  }
  std::vector<PointValue> out(nx * ny);
  for (size_t i = 0; i < nx; ++i)
    for (size_t j = 0; j < ny; ++j) {
      CompensatedComplexSum v, dx, dy;
      for (size_t t = 0; t < nt; ++t) {
        const cplx c = u.terms[t].coefficient;
        const FactorEval& a = X[t * nx + i];
        const FactorEval& b = Y[t * ny + j];
        v.add(c * a.v * b.v);
        dx.add(c * a.d * b.v);
        dy.add(c * a.v * b.d);
      }
      out[i * ny + j] = {v.value(), dx.value(), dy.value()};
    }
  return out;
}

cplx boundary_trace(const SeriesSolution& u, Side side, double t) {
  const cplx ik = kI * u.k;
  const BoundaryOperator op = u.config.on(side);
  switch (side) {
    case Side::Gamma1: {
      const PointValue p = evaluate(u, t, 0.0);
      return op == BoundaryOperator::Dirichlet ? p.value : -p.dy;
    }
    case Side::Gamma3: {
      const PointValue p = evaluate(u, t, 1.0);
      return op == BoundaryOperator::Dirichlet ? p.value : p.dy;
    }
    case Side::Gamma2: {
      const PointValue p = evaluate(u, 1.0, t);
      if (op == BoundaryOperator::Dirichlet) return p.value;
      if (op == BoundaryOperator::Neumann) return p.dx;
      return p.dx - ik * p.value;
    }
    case Side::Gamma4: {
      const PointValue p = evaluate(u, 0.0, t);
      return -p.dx - ik * p.value;
    }
  }
  return {};
}

// ---------------------------------------------------------------- energy

EnergyReport make_energy(double grad_norm, double l2_norm, double k, EnergyMethod method) {
  return {grad_norm, l2_norm, grad_norm + k * l2_norm, method};
}

EnergyReport energy_parseval(const SeriesSolution& u) {
  if (u.provenance == Provenance::Superposition)
    throw std::invalid_argument(
        "energy_parseval: superposed solutions mix orthogonal directions; use energy_quadrature");
  CompensatedSum grad, l2;
  for (const auto& t : u.terms) {
    const double a = std::norm(t.coefficient);
    const bool lifted = u.provenance == Provenance::LiftedHorizontalData;
    const Factor& modal = lifted ? t.y : t.x;
    const Factor& ortho = lifted ? t.x : t.y;
    const double on = factor_norm_sq(ortho);
    const double m = factor_norm_sq(modal);
    l2.add(a * on * m);
    grad.add(a * (on * factor_dnorm_sq(modal) + factor_dnorm_sq(ortho) * m));
  }
  return make_energy(std::sqrt(grad.value()), std::sqrt(l2.value()), u.k, EnergyMethod::Parseval);
}

EnergyReport energy_quadrature(const SeriesSolution& u, int n) {
  if (n < 17) throw std::invalid_argument("energy_quadrature: grid must be at least 17 x 17");
  const QuadratureRule r = gauss_legendre(n);
  const std::vector<PointValue> vals = evaluate_grid(u, r.nodes, r.nodes);
  CompensatedSum grad, l2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double w = r.weights[i] * r.weights[j];
      const PointValue& p = vals[static_cast<size_t>(i) * n + j];
      l2.add(w * std::norm(p.value));
      grad.add(w * (std::norm(p.dx) + std::norm(p.dy)));
    }
  return make_energy(std::sqrt(grad.value()), std::sqrt(l2.value()), u.k, EnergyMethod::Quadrature);
}

SeriesSolution superpose(const std::vector<SeriesSolution>& parts) {
  if (parts.empty()) throw std::invalid_argument("superpose: no parts");
  SeriesSolution out;
  out.config = parts.front().config;
  out.k = parts.front().k;
  out.provenance = Provenance::Superposition;
  for (const auto& p : parts) {
    if (p.k != out.k) throw std::invalid_argument("superpose: mismatched wavenumbers");
    if (!(p.config == out.config)) throw std::invalid_argument("superpose: mismatched boundary configs");
    out.truncation = std::max(out.truncation, p.truncation);
    out.terms.insert(out.terms.end(), p.terms.begin(), p.terms.end());
  }
  return out;
}

SeriesSolution scaled(const SeriesSolution& u, cplx a) {
  SeriesSolution out = u;
  for (auto& t : out.terms) t.coefficient *= a;
  out.source_l2 *= std::abs(a);
  return out;
}

}  // namespace helmholtz
