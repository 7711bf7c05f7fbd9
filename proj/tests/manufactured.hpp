#pragma once

#include <cmath>
#include <functional>

#include "helmholtz/solver.hpp"

namespace helmholtz::manufactured {

// u = c X_n(x) Y(y) + w with Y the closed-form lifting profile for data on Gamma1
// and w a vertical-data solution. The traces on Gamma2/Gamma4 are projected at the
// depth the lifting pipeline uses, so incompatible corner content cancels.
struct LiftingProblem {
  BoundaryConfig config;
  double k;
  Spectrum g1;
  Spectrum g2;
  Spectrum g4;
  SeriesSolution exact;
  std::function<cplx(double)> g2_fn;
  std::function<cplx(double)> g4_fn;
};

inline std::pair<cplx, cplx> lifting_profile(double y, double q, bool neumann_data, bool far_dirichlet) {
  // Y'' + q Y = 0 on [0,1]; data at y = 0 (value 1, or -Y'(0) = 1); Y(1) = 0 or Y'(1) = 0.
  const double s = 1.0 - y;
  const bool osc = q > 0.0;
  const double w = std::sqrt(std::abs(q));
  auto C = [&](double t) { return osc ? std::cos(w * t) : std::cosh(w * t); };
  auto S = [&](double t) { return osc ? std::sin(w * t) : std::sinh(w * t); };
  const double sg = osc ? -1.0 : 1.0;  // d/dt C = sg w S
  if (neumann_data) {
    if (far_dirichlet) {  // Y = S(s) / (w C(1))
      return {S(s) / (w * C(1.0)), -C(s) / C(1.0)};
    }
    // Y = C(s) / (sg w S(1)) with -Y'(0) = 1
    return {C(s) / (sg * w * S(1.0)), -(sg * w * S(s)) / (sg * w * S(1.0))};
  }
  if (far_dirichlet) return {S(s) / S(1.0), -w * C(s) / S(1.0)};
  return {C(s) / C(1.0), -(sg * w * S(s)) / C(1.0)};
}

inline LiftingProblem make_lifting_problem(const BoundaryConfig& config, double k, int n, cplx c,
                                           const Spectrum& h2, const Spectrum& h4) {
  const cplx ik{0.0, k};
  const LiftingFamilyChoice choice = choose_lifting_family(k, config.b1, config.b3);
  const BasisFamily xf =
      choice.family == LiftingFamily::Integer ? BasisFamily::CosInt : BasisFamily::CosHalf;
  const double mu = eigenvalue(xf, n);
  const double q = k * k - mu * mu;
  const bool neumann_data = config.b1 == BoundaryOperator::Neumann;
  const bool far_dirichlet = config.b3 == BoundaryOperator::Dirichlet;

  auto Yv = [=](double y) { return lifting_profile(y, q, neumann_data, far_dirichlet).first; };
  auto Yd = [=](double y) { return lifting_profile(y, q, neumann_data, far_dirichlet).second; };
  auto Yfac = AnalyticFactor::make(Yv, Yd);

  SeriesSolution lifted;
  lifted.config = config;
  lifted.k = k;
  lifted.truncation = n;
  lifted.provenance = Provenance::LiftedHorizontalData;
  lifted.terms.push_back({c, BasisFactor{xf, n}, Yfac, n, mu});

  const double x1 = basis_value(xf, n, 1.0), dx1 = basis_derivative(xf, n, 1.0);
  const double x0 = basis_value(xf, n, 0.0), dx0 = basis_derivative(xf, n, 0.0);
  cplx b2x;
  switch (config.b2) {
    case BoundaryOperator::Dirichlet: b2x = x1; break;
    case BoundaryOperator::Neumann: b2x = dx1; break;
    case BoundaryOperator::Impedance: b2x = dx1 - ik * x1; break;
  }
  const cplx b4x = -dx0 - ik * x0;

  LiftingProblem p{config, k, Spectrum::single(xf, n, c), Spectrum(config.vertical_family()),
                   Spectrum(config.vertical_family()), {}, {}, {}};
  p.g2_fn = [=](double y) { return c * b2x * Yv(y) + (h2.empty() ? cplx{} : h2.expand(y)); };
  p.g4_fn = [=](double y) { return c * b4x * Yv(y) + (h4.empty() ? cplx{} : h4.expand(y)); };

  const int depth = residual_projection_depth(k, default_truncation(k, n));
  const BasisFamily vf = config.vertical_family();
  p.g2 = project(p.g2_fn, vf, depth);
  p.g4 = project(p.g4_fn, vf, depth);

  std::vector<SeriesSolution> parts{lifted};
  if (!h2.empty()) parts.push_back(solve_vertical_data(config, Side::Gamma2, h2, k));
  if (!h4.empty()) parts.push_back(solve_vertical_data(config, Side::Gamma4, h4, k));
  p.exact = superpose(parts);
  return p;
}

// lift, subtract projected traces, re-solve the vertical problems, superpose
inline SeriesSolution lifting_round_trip(const LiftingProblem& p) {
  const SeriesSolution aux = lift_horizontal_data(p.g1, Side::Gamma1, p.config, p.k);
  const ResidualTraces rt = residual_traces(aux, p.g2, p.g4);
  std::vector<SeriesSolution> parts{aux};
  const int N = std::max(rt.depth, std::max(rt.g2.top_mode(), rt.g4.top_mode()));
  if (!rt.g2.empty()) parts.push_back(solve_vertical_data(p.config, Side::Gamma2, rt.g2, p.k, N));
  if (!rt.g4.empty()) parts.push_back(solve_vertical_data(p.config, Side::Gamma4, rt.g4, p.k, N));
  return superpose(parts);
}

}  // namespace helmholtz::manufactured
