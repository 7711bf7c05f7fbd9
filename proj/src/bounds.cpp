#include "helmholtz/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace helmholtz {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
using B = BoundaryOperator;

BoundaryConfig horizontals_for(BasisFamily f) {
  BoundaryConfig c;
  switch (f) {
    case BasisFamily::SinInt: c.b1 = B::Dirichlet; c.b3 = B::Dirichlet; break;
    case BasisFamily::CosInt: c.b1 = B::Neumann; c.b3 = B::Neumann; break;
    case BasisFamily::SinHalf: c.b1 = B::Dirichlet; c.b3 = B::Neumann; break;
    case BasisFamily::CosHalf: c.b1 = B::Neumann; c.b3 = B::Dirichlet; break;
  }
  return c;
}

bool is_vertical(TheoremId t) {
  return t == TheoremId::T1_G4 || t == TheoremId::T2_G2_IMP || t == TheoremId::T2_G2_NEU ||
         t == TheoremId::T2_G2_DIR;
}

}  // namespace

std::string to_string(TheoremId t) {
  switch (t) {
    case TheoremId::T1_G4: return "T1_G4";
    case TheoremId::T2_G2_IMP: return "T2_G2_IMP";
    case TheoremId::T2_G2_NEU: return "T2_G2_NEU";
    case TheoremId::T2_G2_DIR: return "T2_G2_DIR";
    case TheoremId::TF_SOURCE: return "TF_SOURCE";
    case TheoremId::T3_LIFT_NEU: return "T3_LIFT_NEU";
    case TheoremId::T3_LIFT_DIR: return "T3_LIFT_DIR";
  }
  return "?";
}

TheoremId parse_theorem(const std::string& s) {
  for (TheoremId t : all_theorems())
    if (s == to_string(t)) return t;
  if (s == "T1") return TheoremId::T1_G4;
  if (s == "TF") return TheoremId::TF_SOURCE;
  throw std::invalid_argument("unknown theorem id '" + s + "'");
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids{TheoremId::T1_G4,       TheoremId::T2_G2_IMP,
                                          TheoremId::T2_G2_NEU,   TheoremId::T2_G2_DIR,
                                          TheoremId::TF_SOURCE,   TheoremId::T3_LIFT_NEU,
                                          TheoremId::T3_LIFT_DIR};
  return ids;
}

double rhs_bound(TheoremId theorem, double k, const DataNormReport& norms) {
  if (!(k > 0.0)) throw std::invalid_argument("rhs_bound: k must be positive");
  const bool needs_half = theorem == TheoremId::T2_G2_DIR || theorem == TheoremId::T3_LIFT_DIR;
  if (!(norms.l2 >= 0.0) || (needs_half && !(norms.fractional_half >= 0.0)))
    throw std::invalid_argument("rhs_bound: required datum norm missing for " + to_string(theorem));
  const double mk = std::max(k, 1.0);
  const double mk2 = std::max(k * k, 1.0);
  const double mkh = std::max(std::sqrt(k), 1.0);
  switch (theorem) {
    case TheoremId::T1_G4:
    case TheoremId::T2_G2_IMP: return std::sqrt(12.0) * mk * norms.l2;
    case TheoremId::T2_G2_NEU: return std::sqrt(20.0) * mk2 * norms.l2;
    case TheoremId::T2_G2_DIR: return std::sqrt(14.0) * (mk2 * norms.l2 + mkh * norms.fractional_half);
    case TheoremId::TF_SOURCE: return std::sqrt(30.0) * mk2 * norms.l2;
    case TheoremId::T3_LIFT_NEU: return 2.0 * std::sqrt(717.0) * mk * norms.l2;
    case TheoremId::T3_LIFT_DIR:
      return 2.0 * std::sqrt(43.0) * (mk2 * norms.l2 + mkh * norms.fractional_half);
  }
  return 0.0;
}

CertificateFailure::CertificateFailure(BoundCertificate c)
    : std::runtime_error("certificate failed for " + to_string(c.theorem) + " at k = " +
                         std::to_string(c.k) + ": lhs " + std::to_string(c.lhs) + " > rhs " +
                         std::to_string(c.rhs)),
      certificate(c) {}

BoundCertificate make_certificate(TheoremId theorem, double k, double lhs,
                                  const DataNormReport& norms) {
  BoundCertificate c{theorem, k, lhs, rhs_bound(theorem, k, norms), 0.0, false, norms, std::nullopt};
  c.ratio = c.rhs > 0.0 ? c.lhs / c.rhs : (c.lhs == 0.0 ? 0.0 : INFINITY);
  c.pass = c.lhs <= c.rhs * (1.0 + kCertificateSlack);
  return c;
}

void check_hypothesis(TheoremId theorem, const BoundaryConfig& config, Side placement,
                      const Spectrum& data, double k) {
  config.validate();
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("hypothesis mismatch for " + to_string(theorem) + ": " + why);
  };
  switch (theorem) {
    case TheoremId::T1_G4:
      if (placement != Side::Gamma4) fail("data must sit on Gamma4");
      break;
    case TheoremId::T2_G2_IMP:
    case TheoremId::T2_G2_NEU:
    case TheoremId::T2_G2_DIR: {
      if (placement != Side::Gamma2) fail("data must sit on Gamma2");
      const B want = theorem == TheoremId::T2_G2_IMP   ? B::Impedance
                     : theorem == TheoremId::T2_G2_NEU ? B::Neumann
                                                       : B::Dirichlet;
      if (config.b2 != want) fail("Gamma2 operator must be " + to_string(want));
      break;
    }
    case TheoremId::TF_SOURCE:
      fail("source-term certificates go through certify_source");
      break;
    case TheoremId::T3_LIFT_NEU:
    case TheoremId::T3_LIFT_DIR: {
      if (placement != Side::Gamma1 && placement != Side::Gamma3) fail("data must sit on Gamma1 or Gamma3");
      const B want = theorem == TheoremId::T3_LIFT_NEU ? B::Neumann : B::Dirichlet;
      if (config.on(placement) != want) fail("data side operator must be " + to_string(want));
      if (!data.empty() && !family_matches(choose_lifting_family(k, config.b1, config.b3), data.family()))
        fail("data family does not match the lifting eigenvalue family");
      return;
    }
  }
  if (!data.empty() && data.family() != config.vertical_family())
    fail("data family must be " + to_string(config.vertical_family()));
}

BoundCertificate certify(TheoremId theorem, const BoundaryConfig& config, Side placement,
                         const Spectrum& data, double k, std::optional<int> N) {
  check_hypothesis(theorem, config, placement, data, k);
  const SeriesSolution u = is_vertical(theorem)
                               ? solve_vertical_data(config, placement, data, k, N)
                               : lift_horizontal_data(data, placement, config, k, N);
  const Spectrum used = data.truncated(u.truncation);
  return make_certificate(theorem, k, energy_parseval(u).energy, data_norms(used));
}

BoundCertificate certify_source(const BoundaryConfig& config, const ModalSource& f, double k,
                                std::optional<int> N, int quadrature_check_grid) {
  config.validate();
  if (config.b2 != B::Dirichlet)
    throw std::invalid_argument("hypothesis mismatch for TF_SOURCE: Gamma2 operator must be dirichlet");
  const SeriesSolution u = solve_source(f, config, k, N);
  DataNormReport norms;
  norms.l2 = u.source_l2;
  BoundCertificate c = make_certificate(TheoremId::TF_SOURCE, k, energy_parseval(u).energy, norms);
  if (quadrature_check_grid > 0) c.lhs_quadrature = energy_quadrature(u, quadrature_check_grid).energy;
  return c;
}

// ---------------------------------------------------------------- sharpness

std::string to_string(SharpnessId id) {
  switch (id) {
    case SharpnessId::Ex23Case1: return "ex2.3-1";
    case SharpnessId::Ex23Case2: return "ex2.3-2";
    case SharpnessId::Ex23Case3: return "ex2.3-3";
    case SharpnessId::Ex25Neumann: return "ex2.5-neumann";
    case SharpnessId::Ex25Dirichlet: return "ex2.5-dirichlet";
    case SharpnessId::LiftNN: return "lift-nn";
    case SharpnessId::LiftND: return "lift-nd";
    case SharpnessId::LiftDN: return "lift-dn";
    case SharpnessId::LiftDD: return "lift-dd";
  }
  return "?";
}

SharpnessId parse_sharpness(const std::string& s) {
  for (SharpnessId id : all_sharpness_cases())
    if (s == to_string(id)) return id;
  throw std::invalid_argument("unknown sharpness case '" + s + "'");
}

const std::vector<SharpnessId>& all_sharpness_cases() {
  static const std::vector<SharpnessId> ids{
      SharpnessId::Ex23Case1,   SharpnessId::Ex23Case2,     SharpnessId::Ex23Case3,
      SharpnessId::Ex25Neumann, SharpnessId::Ex25Dirichlet, SharpnessId::LiftNN,
      SharpnessId::LiftND,      SharpnessId::LiftDN,        SharpnessId::LiftDD};
  return ids;
}

bool is_lifting_case(SharpnessId id) {
  return id == SharpnessId::LiftNN || id == SharpnessId::LiftND || id == SharpnessId::LiftDN ||
         id == SharpnessId::LiftDD;
}

double SharpnessCase::expected_ratio() const {
  if (!expected_energy) throw std::logic_error("sharpness case has no closed-form energy");
  return *expected_energy / rhs_bound(theorem, k, data_norms(datum));
}

SharpnessCase sharpness_case(SharpnessId id, int n, std::optional<BasisFamily> family) {
  if (n < 1) throw std::invalid_argument("sharpness_case: n must be at least 1");
  const double pi = kPi, pi2 = kPi * kPi;
  const bool lifting = is_lifting_case(id);
  const BasisFamily fam = family.value_or(lifting ? BasisFamily::SinInt : BasisFamily::CosInt);
  if (lifting && is_half_integer(fam))
    throw std::invalid_argument("sharpness_case: lifting examples use integer x-families");

  SharpnessCase c{id, n, 0.0, eigenvalue(fam, n), TheoremId::T1_G4, BoundaryConfig{},
                  Side::Gamma4, Spectrum::single(fam, n), SeriesSolution{}, std::nullopt,
                  std::nullopt, std::nullopt};
  const double mu = c.mu;
  std::function<cplx(double)> f, df;

  if (!lifting) {
    c.config = horizontals_for(fam);
    switch (id) {
      case SharpnessId::Ex23Case1: {
        const double k = std::sqrt(mu * mu + pi2);
        c.k = k;
        c.config.b2 = B::Impedance;
        f = [k](double x) { return (-k * std::sin(kPi * x) + kI * kPi * std::cos(kPi * x)) / (2.0 * k * kPi); };
        df = [k](double x) {
          return (-k * kPi * std::cos(kPi * x) - kI * kPi * kPi * std::sin(kPi * x)) / (2.0 * k * kPi);
        };
        c.expected_energy = std::sqrt(2.0) / 2.0 * k * std::sqrt(1.0 / pi2 + 1.0 / (k * k));
        break;
      }
      case SharpnessId::Ex23Case2: {
        const double k = std::sqrt(mu * mu + pi2 / 4.0);
        c.k = k;
        c.config.b2 = B::Neumann;
        f = [](double x) { return cplx(-2.0 / kPi * std::sin(kPi * x / 2.0)); };
        df = [](double x) { return cplx(-std::cos(kPi * x / 2.0)); };
        c.expected_energy = 2.0 * std::sqrt(2.0) / pi * k;
        break;
      }
      case SharpnessId::Ex23Case3: {
        const double k = std::sqrt(mu * mu + pi2);
        c.k = k;
        c.config.b2 = B::Dirichlet;
        f = [](double x) { return cplx(-std::sin(kPi * x) / kPi); };
        df = [](double x) { return cplx(-std::cos(kPi * x)); };
        c.expected_energy = std::sqrt(2.0) / pi * k;
        break;
      }
      case SharpnessId::Ex25Neumann: {
        const double k = std::sqrt(mu * mu + pi2 / 4.0);
        c.k = k;
        c.config.b2 = B::Neumann;
        c.theorem = TheoremId::T2_G2_NEU;
        c.data_side = Side::Gamma2;
        f = [k](double x) {
          return (-2.0 * kPi * std::cos(kPi * x / 2.0) + 4.0 * k * kI * std::sin(kPi * x / 2.0)) / (kPi * kPi);
        };
        df = [k](double x) {
          return (kPi * kPi * std::sin(kPi * x / 2.0) + 2.0 * kPi * kI * k * std::cos(kPi * x / 2.0)) /
                 (kPi * kPi);
        };
        c.expected_energy = 4.0 * std::sqrt(2.0) / pi * k * k * std::sqrt(1.0 / pi2 + 1.0 / (4.0 * k * k));
        break;
      }
      case SharpnessId::Ex25Dirichlet: {
        const double k = std::sqrt(mu * mu + pi2);
        c.k = k;
        c.config.b2 = B::Dirichlet;
        c.theorem = TheoremId::T2_G2_DIR;
        c.data_side = Side::Gamma2;
        f = [k](double x) { return (-kPi * std::cos(kPi * x) + kI * k * std::sin(kPi * x)) / kPi; };
        df = [k](double x) { return kPi * std::sin(kPi * x) + kI * k * std::cos(kPi * x); };
        c.expected_energy = std::sqrt(2.0) / pi * std::sqrt(k * k * k * k + pi2 * k * k);
        break;
      }
      default: break;
    }
    c.exact.config = c.config;
    c.exact.k = c.k;
    c.exact.truncation = n;
    c.exact.provenance = Provenance::VerticalData;
    c.exact.terms.push_back({1.0, AnalyticFactor::make(f, df), BasisFactor{fam, n}, n, mu});
    return c;
  }

  c.config.b2 = B::Impedance;
  c.data_side = Side::Gamma1;
  switch (id) {
    case SharpnessId::LiftNN: {
      c.config.b1 = B::Neumann;
      c.config.b3 = B::Neumann;
      c.k = std::sqrt(mu * mu + pi2 / 4.0);
      c.theorem = TheoremId::T3_LIFT_NEU;
      f = [](double y) { return cplx(-2.0 / kPi * std::cos(kPi * (y - 1.0) / 2.0)); };
      df = [](double y) { return cplx(std::sin(kPi * (y - 1.0) / 2.0)); };
      c.expected_energy = 2.0 * std::sqrt(2.0) / pi * c.k;
      break;
    }
    case SharpnessId::LiftND: {
      c.config.b1 = B::Neumann;
      c.config.b3 = B::Dirichlet;
      c.k = std::sqrt(mu * mu + pi2);
      c.theorem = TheoremId::T3_LIFT_NEU;
      f = [](double y) { return cplx(std::sin(kPi * (y - 1.0)) / kPi); };
      df = [](double y) { return cplx(std::cos(kPi * (y - 1.0))); };
      c.expected_energy = std::sqrt(2.0) / pi * c.k;
      break;
    }
    case SharpnessId::LiftDN: {
      c.config.b1 = B::Dirichlet;
      c.config.b3 = B::Neumann;
      const double theta = (n + 0.5) * pi, w = theta + 1.0 / theta;
      c.k = std::sqrt(w * w + mu * mu);
      c.theorem = TheoremId::T3_LIFT_DIR;
      f = [w](double y) { return cplx(std::cos(w * (y - 1.0)) / std::cos(w)); };
      df = [w](double y) { return cplx(-w * std::sin(w * (y - 1.0)) / std::cos(w)); };
      const double kk = c.k * c.k;
      c.expected_energy_sq = (kk + mu * mu * std::sin(2.0 * w) / (2.0 * w)) / std::pow(std::cos(w), 2);
      c.lower_bound = 9.0 * pi2 / (2.0 * std::sqrt(2.0) * (9.0 * pi2 + 4.0)) *
                      (kk + std::sqrt(c.k) * std::sqrt(mu));
      break;
    }
    case SharpnessId::LiftDD: {
      c.config.b1 = B::Dirichlet;
      c.config.b3 = B::Dirichlet;
      const double theta = n * pi, w = theta + 1.0 / theta;
      c.k = std::sqrt(w * w + theta * theta);
      c.theorem = TheoremId::T3_LIFT_DIR;
      f = [w](double y) { return cplx(-std::sin(w * (y - 1.0)) / std::sin(w)); };
      df = [w](double y) { return cplx(-w * std::cos(w * (y - 1.0)) / std::sin(w)); };
      const double kk = c.k * c.k;
      c.expected_energy_sq =
          (kk - theta * theta * std::sin(2.0 * w) / (2.0 * w)) / std::pow(std::sin(w), 2);
      c.lower_bound = pi2 / (2.0 * std::sqrt(2.0) * (pi2 + 1.0)) * (kk + std::sqrt(c.k) * std::sqrt(mu));
      break;
    }
    default: break;
  }
  c.exact.config = c.config;
  c.exact.k = c.k;
  c.exact.truncation = n;
  c.exact.provenance = Provenance::LiftedHorizontalData;
  c.exact.terms.push_back({1.0, BasisFactor{fam, n}, AnalyticFactor::make(f, df), n, mu});
  return c;
}

SeriesSolution solve_sharpness_datum(const SharpnessCase& c) {
  if (is_lifting_case(c.id)) return lift_horizontal_data(c.datum, c.data_side, c.config, c.k);
  return solve_vertical_data(c.config, c.data_side, c.datum, c.k);
}

// ---------------------------------------------------------------- sweeps

std::string describe(const BoundaryConfig& c) {
  return "b1=" + to_string(c.b1) + ",b2=" + to_string(c.b2) + ",b3=" + to_string(c.b3) +
         ",b4=" + to_string(c.b4);
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g;
  if (points <= 0) return g;
  if (points == 1) return {lo};
  for (int i = 0; i < points; ++i)
    g.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (points - 1)));
  g.back() = hi;
  return g;
}

namespace {

struct Placement {
  BoundaryConfig config;
  Side side;
};

std::vector<Placement> placements_for(TheoremId t) {
  std::vector<Placement> out;
  const std::vector<std::pair<B, B>> horizontals{
      {B::Dirichlet, B::Dirichlet}, {B::Neumann, B::Neumann}, {B::Dirichlet, B::Neumann}, {B::Neumann, B::Dirichlet}};
  auto with = [](B b1, B b2, B b3) {
    BoundaryConfig c;
    c.b1 = b1;
    c.b2 = b2;
    c.b3 = b3;
    return c;
  };
  switch (t) {
    case TheoremId::T1_G4:
      for (B b2 : {B::Impedance, B::Neumann, B::Dirichlet})
        for (auto [b1, b3] : horizontals) out.push_back({with(b1, b2, b3), Side::Gamma4});
      break;
    case TheoremId::T2_G2_IMP:
    case TheoremId::T2_G2_NEU:
    case TheoremId::T2_G2_DIR:
    case TheoremId::TF_SOURCE: {
      const B b2 = t == TheoremId::T2_G2_IMP ? B::Impedance
                   : t == TheoremId::T2_G2_NEU ? B::Neumann
                                               : B::Dirichlet;
      const Side s = t == TheoremId::TF_SOURCE ? Side::Gamma4 : Side::Gamma2;
      for (auto [b1, b3] : horizontals) out.push_back({with(b1, b2, b3), s});
      break;
    }
    case TheoremId::T3_LIFT_NEU:
    case TheoremId::T3_LIFT_DIR: {
      const B op = t == TheoremId::T3_LIFT_NEU ? B::Neumann : B::Dirichlet;
      for (B other : {B::Dirichlet, B::Neumann}) {
        out.push_back({with(op, B::Impedance, other), Side::Gamma1});
        out.push_back({with(other, B::Impedance, op), Side::Gamma3});
      }
      break;
    }
  }
  return out;
}

std::mt19937_64 trial_engine(std::uint64_t seed, TheoremId t, std::size_t ki, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(ki),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

Spectrum random_unit_spectrum(BasisFamily fam, int n_modes, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  std::vector<Spectrum::Entry> c;
  for (int n = 0; n < n_modes; ++n) {
    const cplx v(nd(gen), nd(gen));
    if (!(n == 0 && fam == BasisFamily::SinInt)) c.emplace_back(n, v);
  }
  Spectrum s(fam, std::move(c));
  const double l2 = data_norms(s).l2;
  return l2 > 0.0 ? s.scaled(1.0 / l2) : s;
}

}  // namespace

ModalSource random_smooth_source(BasisFamily family, std::uint64_t seed, int modes) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  ModalSource f{family, {}};
  for (int n = 0; n < modes; ++n) {
    if (n == 0 && family == BasisFamily::SinInt) continue;
    std::array<cplx, 4> p;
    for (auto& a : p) a = cplx(nd(gen), nd(gen)) / (1.0 + n);
    const cplx s(nd(gen), nd(gen));
    const double freq = 1.0 + 3.0 * std::abs(nd(gen));
    f.profiles.emplace_back(n, [p, s, freq](double x) {
      return p[0] + x * (p[1] + x * (p[2] + x * p[3])) + s * std::sin(freq * x);
    });
  }
  return f;
}

SweepReport sweep(TheoremId theorem, const std::vector<double>& k_grid, int n_modes, int trials,
                  std::uint64_t seed) {
  SweepReport r;
  r.theorem = theorem;
  r.seed = seed;
  r.n_modes = n_modes;
  r.trials = trials;
  if (trials <= 0 || k_grid.empty()) return r;
  const std::vector<Placement> places = placements_for(theorem);
  for (std::size_t ki = 0; ki < k_grid.size(); ++ki) {
    const double k = k_grid[ki];
    for (int trial = 0; trial < trials; ++trial) {
      const Placement& p = places[static_cast<std::size_t>(trial) % places.size()];
      std::mt19937_64 gen = trial_engine(seed, theorem, ki, trial);
      BoundCertificate cert;
      if (theorem == TheoremId::TF_SOURCE) {
        const ModalSource f = random_smooth_source(p.config.vertical_family(), gen(), n_modes);
        cert = certify_source(p.config, f, k);
      } else {
        BasisFamily fam;
        if (is_vertical(theorem)) {
          fam = p.config.vertical_family();
        } else {
          const bool half = choose_lifting_family(k, p.config.b1, p.config.b3).family ==
                            LiftingFamily::HalfInteger;
          const bool sine = (trial / static_cast<int>(places.size())) % 2 == 0;
          fam = half ? (sine ? BasisFamily::SinHalf : BasisFamily::CosHalf)
                     : (sine ? BasisFamily::SinInt : BasisFamily::CosInt);
        }
        const Spectrum data = random_unit_spectrum(fam, n_modes, gen);
        cert = certify(theorem, p.config, p.side, data, k, n_modes);
      }
      ++r.certificates;
      if (!cert.pass) {
        r.all_pass = false;
        throw CertificateFailure(cert);
      }
      if (cert.ratio > r.max_ratio) {
        r.max_ratio = cert.ratio;
        r.argmax_k = k;
        r.argmax_trial = trial;
        r.argmax_config = describe(p.config) + "@" + to_string(p.side);
      }
    }
  }
  return r;
}

}  // namespace helmholtz
