#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "helmholtz/bounds.hpp"
#include "helmholtz/oracle.hpp"
#include "manufactured.hpp"

using namespace helmholtz;
using std::numbers::pi;
using B = BoundaryOperator;

namespace {

const cplx I{0.0, 1.0};

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s criterion %d (%s): %s; %.2fs of %.0fs budget%s\n", pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), secs, budget_s, in_time ? "" : " (over budget)");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

BoundaryConfig cfg(B b1, B b2, B b3) {
  BoundaryConfig c;
  c.b1 = b1;
  c.b2 = b2;
  c.b3 = b3;
  return c;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 1 -----------------------------------------------------------------------
Outcome sharpness_equalities() {
  double worst = 0.0;
  int checked = 0;
  for (SharpnessId id : {SharpnessId::Ex23Case1, SharpnessId::Ex23Case2, SharpnessId::Ex23Case3,
                         SharpnessId::Ex25Neumann, SharpnessId::Ex25Dirichlet, SharpnessId::LiftNN,
                         SharpnessId::LiftND}) {
    std::vector<BasisFamily> fams;
    if (is_lifting_case(id))
      fams = {BasisFamily::SinInt, BasisFamily::CosInt};
    else
      fams = {BasisFamily::SinInt, BasisFamily::CosInt, BasisFamily::SinHalf, BasisFamily::CosHalf};
    for (BasisFamily f : fams)
      for (int n = 1; n <= 10; ++n) {
        const SharpnessCase c = sharpness_case(id, n, f);
        const double want = *c.expected_energy;
        worst = std::max(worst, rel(energy_parseval(solve_sharpness_datum(c)).energy, want));
        worst = std::max(worst, rel(energy_parseval(c.exact).energy, want));
        ++checked;
      }
  }
  return {worst <= 1e-8, std::to_string(checked) + " cases, max relative energy error " + fmt("%.2e", worst) +
                             " (tol 1e-8)"};
}

// 2 -----------------------------------------------------------------------
Outcome lifting_lower_bounds() {
  double min_margin = INFINITY;
  double worst_sq = 0.0;
  for (SharpnessId id : {SharpnessId::LiftDN, SharpnessId::LiftDD})
    for (BasisFamily f : {BasisFamily::SinInt, BasisFamily::CosInt})
      for (int n = 1; n <= 10; ++n) {
        const SharpnessCase c = sharpness_case(id, n, f);
        const EnergyReport e = energy_parseval(solve_sharpness_datum(c));
        const DataNormReport d = data_norms(c.datum);
        const double C = id == SharpnessId::LiftDN ? 9 * pi * pi / (2 * std::sqrt(2.0) * (9 * pi * pi + 4))
                                                   : pi * pi / (2 * std::sqrt(2.0) * (pi * pi + 1));
        const double lower = C * (c.k * c.k * d.l2 + std::sqrt(c.k) * d.fractional_half);
        min_margin = std::min(min_margin, e.energy / lower);
        const double sq = e.grad_norm * e.grad_norm + c.k * c.k * e.l2_norm * e.l2_norm;
        worst_sq = std::max(worst_sq, rel(sq, *c.expected_energy_sq));
      }
  return {min_margin >= 1.0 && worst_sq <= 1e-8,
          "min energy/lower-bound " + fmt("%.4f", min_margin) + " (need >= 1), energy^2 closed form rel err " +
              fmt("%.2e", worst_sq)};
}

// 3 -----------------------------------------------------------------------
Outcome certificate_soundness() {
  const std::vector<double> grid = log_grid(0.05, 200.0, 64);
  std::size_t total = 0;
  double max_ratio = 0.0;
  std::string where;
  for (TheoremId t : all_theorems()) {
    SweepReport r;
    try {
      if (t == TheoremId::TF_SOURCE)
        r = sweep(t, {0.5, 1.0, 5.0, 20.0}, 6, 5, 2024);
      else
        r = sweep(t, grid, 64, 50, 2024);
    } catch (const CertificateFailure& e) {
      return {false, "violation: " + std::string(e.what())};
    }
    if (!r.all_pass) return {false, "violation in " + to_string(t)};
    total += r.certificates;
    if (r.max_ratio > max_ratio) {
      max_ratio = r.max_ratio;
      where = to_string(t) + " at k=" + fmt("%.4g", r.argmax_k);
    }
  }
  return {true, std::to_string(total) + " certificates, 0 violations, max ratio " + fmt("%.4f", max_ratio) +
                    " (" + where + ")"};
}

// 4 -----------------------------------------------------------------------
Outcome proof_quantity_sweeps() {
  struct Case {
    const char* name;
    B b2;
    Side side;
    std::function<double(double)> phi_cap, psi_cap, theta;
  };
  auto m2 = [](double k) { return std::max(k * k, 1.0); };
  const std::vector<Case> cases{
      {"impedance", B::Impedance, Side::Gamma4, [&](double k) { return 3 * m2(k); }, [](double) { return 3.0; },
       [](double k) { return (2 * k * k + 9) / (3 * k * k + 12); }},
      {"neumann", B::Neumann, Side::Gamma4, [&](double k) { return 6 * m2(k); }, [](double) { return 3.0; },
       [](double) { return 2.0; }},
      {"dirichlet", B::Dirichlet, Side::Gamma4, [&](double k) { return 4 * m2(k); }, [](double) { return 2.0; },
       [](double k) { return (2 * k * k + 3) / (3 * k * k + 3); }},
      {"neumann-gamma2", B::Neumann, Side::Gamma2, [&](double k) { return 10 * std::max(std::pow(k, 4), 1.0); },
       [&](double k) { return 10 * m2(k); }, [](double k) { return 2.0 / 3.0 * k * k + 3; }}};
  const std::vector<double> grid = log_grid(0.05, 200.0, 64);
  long evaluated = 0;
  double worst_phi = 0, worst_psi = 0, worst_theta = 0;
  for (const Case& c : cases)
    for (BasisFamily f : {BasisFamily::CosInt, BasisFamily::SinHalf}) {
      ProofConfig pc;
      pc.b2 = c.b2;
      pc.data_side = c.side;
      pc.family = f;
      for (double k : grid)
        for (int n = 0; n <= 256; ++n) {
          const ProofQuantities q = proof_quantities(n, k, pc);
          if (q.phi) worst_phi = std::max(worst_phi, *q.phi / c.phi_cap(k));
          if (q.psi) worst_psi = std::max(worst_psi, *q.psi / c.psi_cap(k));
          if (q.theta) worst_theta = std::max(worst_theta, rel(*q.theta, c.theta(k)));
          ++evaluated;
        }
      for (int n = (f == BasisFamily::CosInt ? 1 : 0); n <= 256; n += 5) {
        const double k = eigenvalue(f, n);
        const ProofQuantities q = proof_quantities(n, k, pc);
        if (!q.theta) return {false, std::string("cutoff not detected in case ") + c.name};
        worst_theta = std::max(worst_theta, rel(*q.theta, c.theta(k)));
        ++evaluated;
      }
    }
  const bool ok = worst_phi <= 1.0 && worst_psi <= 1.0 && worst_theta <= 1e-10;
  return {ok, std::to_string(evaluated) + " modes; max phi/cap " + fmt("%.4f", worst_phi) + ", psi/cap " +
                  fmt("%.4f", worst_psi) + ", cutoff theta rel err " + fmt("%.1e", worst_theta)};
}

// 5 -----------------------------------------------------------------------
Outcome gap_bound() {
  const std::vector<double> grid = log_grid(0.05, 200.0, 256);
  double worst = INFINITY;
  long checked = 0;
  for (bool same : {true, false}) {
    const B b1 = B::Dirichlet, b3 = same ? B::Dirichlet : B::Neumann;
    for (double k : grid) {
      const LiftingFamilyChoice ch = choose_lifting_family(k, b1, b3);
      for (int n = 0; n <= 256; ++n) {
        const GapCheck g = gap_lower_bound(k, lifting_eigenvalue(ch, n), same);
        worst = std::min(worst, g.observed / g.bound);
        ++checked;
      }
    }
  }
  return {worst >= 1.0, std::to_string(checked) + " (k, n) pairs, min observed/bound " + fmt("%.4f", worst)};
}

// 6 -----------------------------------------------------------------------
Outcome norms_vs_quadrature() {
  const QuadratureRule r = composite_gauss_legendre(16, 256);
  double worst = 0.0;
  long count = 0;
  auto check = [&](const ModalSolution1D& m) {
    CompensatedSum a, b;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
      a.add(r.weights[i] * std::norm(m.value(r.nodes[i])));
      b.add(r.weights[i] * std::norm(m.derivative(r.nodes[i])));
    }
    worst = std::max({worst, rel(m.norm_sq, a.value()), rel(m.dnorm_sq, b.value())});
    ++count;
  };
  for (double k : log_grid(0.05, 200.0, 12)) {
    std::vector<double> mus{0.0, 0.3 * k, k, 1.5 * k, k + 5, 3 * k + 40};
    for (double gap : {1e-4, 1e-6}) {
      mus.push_back(std::sqrt(k * k + gap));
      if (k * k > gap) mus.push_back(std::sqrt(k * k - gap));
      mus.push_back(k * std::sqrt(1 + gap));
      mus.push_back(k * std::sqrt(1 - gap));
    }
    for (B b2 : {B::Impedance, B::Neumann, B::Dirichlet})
      for (Side s : {Side::Gamma4, Side::Gamma2})
        for (double mu : mus) check(x_mode_mu(mu, k, b2, s));
    for (B b1 : {B::Dirichlet, B::Neumann})
      for (B b3 : {B::Dirichlet, B::Neumann})
        for (Side s : {Side::Gamma1, Side::Gamma3}) {
          const LiftingFamilyChoice ch = choose_lifting_family(k, b1, b3);
          for (int n : {0, 1, 2, 3, 7, 20, 64}) check(y_mode_lifting(n, k, b1, b3, s, ch));
          const B data = s == Side::Gamma1 ? b1 : b3, far = s == Side::Gamma1 ? b3 : b1;
          if (data == B::Neumann && far == B::Neumann) continue;
          for (double gap : {1e-4, 1e-6}) {
            check(y_mode_lifting_mu(std::sqrt(k * k + gap), k, b1, b3, s));
            check(y_mode_lifting_mu(k * std::sqrt(1 + gap), k, b1, b3, s));
          }
          check(y_mode_lifting_mu(k, k, b1, b3, s));
        }
  }
  return {worst <= 1e-10, std::to_string(count) + " modes, max relative norm error " + fmt("%.2e", worst) +
                              " (tol 1e-10)"};
}

// 7 -----------------------------------------------------------------------
Outcome parseval_vs_grid() {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> ku(0.1, 20.0);
  std::normal_distribution<double> nd;
  const std::vector<BoundaryConfig> configs = [] {
    std::vector<BoundaryConfig> v;
    for (B b2 : {B::Impedance, B::Neumann, B::Dirichlet})
      for (B b1 : {B::Dirichlet, B::Neumann})
        for (B b3 : {B::Dirichlet, B::Neumann}) v.push_back(cfg(b1, b2, b3));
    return v;
  }();
  double worst = 0.0;
  int vertical = 0, lifted = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const BoundaryConfig c = configs[trial % configs.size()];
    const double k = ku(gen);
    const int modes = 1 + trial % 10;
    SeriesSolution u;
    if (trial % 3 == 2) {
      const LiftingFamilyChoice ch = choose_lifting_family(k, c.b1, c.b3);
      const bool half = ch.family == LiftingFamily::HalfInteger;
      const BasisFamily f = half ? (trial % 2 ? BasisFamily::SinHalf : BasisFamily::CosHalf)
                                 : (trial % 2 ? BasisFamily::SinInt : BasisFamily::CosInt);
      std::vector<Spectrum::Entry> e;
      for (int n = 0; n < modes; ++n) e.emplace_back(n, cplx(nd(gen), nd(gen)));
      u = lift_horizontal_data(Spectrum(f, e), trial % 2 ? Side::Gamma1 : Side::Gamma3, c, k);
      ++lifted;
    } else {
      std::vector<Spectrum::Entry> e;
      for (int n = 0; n < modes; ++n) e.emplace_back(n, cplx(nd(gen), nd(gen)));
      u = solve_vertical_data(c, trial % 2 ? Side::Gamma2 : Side::Gamma4, Spectrum(c.vertical_family(), e), k);
      ++vertical;
    }
    const double ep = energy_parseval(u).energy;
    const double eq = energy_quadrature(u, 65).energy;
    worst = std::max(worst, std::abs(ep - eq) / (1 + ep));
  }
  return {worst <= 1e-6, "200 solutions (" + std::to_string(vertical) + " vertical, " + std::to_string(lifted) +
                             " lifted), max |parseval - grid|/(1+E) " + fmt("%.2e", worst) + " (tol 1e-6)"};
}

// 8 -----------------------------------------------------------------------
Outcome oracle_agreement() {
  const double k = 5.0;
  struct Problem {
    const char* name;
    SeriesSolution spectral;
    FdmProblem fdm;
  };
  const Spectrum pw = Spectrum::single(BasisFamily::CosInt, 0, -2.0 * I * k);
  const BoundaryConfig c3 = cfg(B::Neumann, B::Dirichlet, B::Neumann);
  const Spectrum y1 = Spectrum::single(BasisFamily::CosInt, 1);
  const std::vector<Problem> problems{
      {"plane wave", solve_vertical_data(BoundaryConfig{}, Side::Gamma4, pw, k),
       fdm_problem(BoundaryConfig{}, k, {std::nullopt, std::nullopt, std::nullopt, pw})},
      {"dirichlet-gamma2 example setup", solve_vertical_data(c3, Side::Gamma4, y1, k),
       fdm_problem(c3, k, {std::nullopt, std::nullopt, std::nullopt, y1})}};
  bool ok = true;
  std::string detail;
  for (const Problem& p : problems) {
    double e[3];
    int i = 0;
    for (int n : {65, 129, 257}) e[i++] = compare(p.spectral, fdm_solve(p.fdm, n)).rel_l2;
    const double o1 = std::log2(e[0] / e[1]), o2 = std::log2(e[1] / e[2]);
    const bool good = e[2] <= 1e-3 && o1 >= 1.8 && o1 <= 2.2 && o2 >= 1.8 && o2 <= 2.2;
    ok = ok && good;
    if (!detail.empty()) detail += "; ";
    detail += std::string(p.name) + ": rel_l2(h=1/256) " + fmt("%.2e", e[2]) + ", orders " + fmt("%.3f", o1) +
              "/" + fmt("%.3f", o2);
  }
  return {ok, detail};
}

// 9 -----------------------------------------------------------------------
Outcome lifting_round_trip() {
  struct Case {
    BoundaryConfig c;
    double k;
    int n;
  };
  double worst_u = 0.0, worst_bc = 0.0;
  std::mt19937_64 gen(9);
  std::normal_distribution<double> nd;
  auto rnd = [&](BasisFamily f, int m) {
    std::vector<Spectrum::Entry> e;
    for (int n = 0; n < m; ++n) e.emplace_back(n, cplx(nd(gen), nd(gen)) / (1.0 + n));
    return Spectrum(f, e);
  };
  for (const Case& cs : {Case{cfg(B::Neumann, B::Impedance, B::Dirichlet), 5.0, 1},
                         Case{cfg(B::Dirichlet, B::Impedance, B::Neumann), 8.5, 2},
                         Case{cfg(B::Neumann, B::Dirichlet, B::Neumann), 3.7, 1},
                         Case{cfg(B::Dirichlet, B::Neumann, B::Dirichlet), 12.0, 3}}) {
    const BasisFamily vf = cs.c.vertical_family();
    const manufactured::LiftingProblem p =
        manufactured::make_lifting_problem(cs.c, cs.k, cs.n, cplx(1.0, -0.5), rnd(vf, 3), rnd(vf, 4));
    const SeriesSolution u = manufactured::lifting_round_trip(p);
    for (int i = 0; i <= 32; ++i)
      for (int j = 0; j <= 32; ++j) {
        const double x = i / 32.0, y = j / 32.0;
        worst_u = std::max(worst_u, std::abs(evaluate(u, x, y).value - evaluate(p.exact, x, y).value));
      }
    for (int i = 0; i <= 64; ++i) {
      const double t = i / 64.0, s = 1.0 + cs.k;
      worst_bc = std::max({worst_bc, std::abs(boundary_trace(u, Side::Gamma1, t) - p.g1.expand(t)) / s,
                           std::abs(boundary_trace(u, Side::Gamma3, t)) / s,
                           std::abs(boundary_trace(u, Side::Gamma2, t) - p.g2_fn(t)) / s,
                           std::abs(boundary_trace(u, Side::Gamma4, t) - p.g4_fn(t)) / s});
    }
  }
  return {worst_u <= 1e-6 && worst_bc <= 1e-6, "4 configs, max pointwise error " + fmt("%.2e", worst_u) +
                                                   ", max boundary residual/(1+k) " + fmt("%.2e", worst_bc) +
                                                   " (tol 1e-6)"};
}

}  // namespace

int main() {
  criterion(1, "sharpness equalities", 5, sharpness_equalities);
  criterion(2, "lifting lower bounds", 5, lifting_lower_bounds);
  criterion(3, "certificate soundness", 120, certificate_soundness);
  criterion(4, "proof-quantity sweeps", 30, proof_quantity_sweeps);
  criterion(5, "gap lower bound", 10, gap_bound);
  criterion(6, "closed-form vs quadrature norms", 30, norms_vs_quadrature);
  criterion(7, "parseval vs grid energy", 60, parseval_vs_grid);
  criterion(8, "oracle agreement", 120, oracle_agreement);
  criterion(9, "lifting round trip", 30, lifting_round_trip);
  return failures == 0 ? 0 : 1;
}
