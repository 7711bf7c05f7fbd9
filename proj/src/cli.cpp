#include "helmholtz/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace helmholtz::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::array<const char*, 4> kSideKeys{"gamma1", "gamma2", "gamma3", "gamma4"};

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  throw ConfigError(path + ": " + why);
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

struct Named {
  enum class Kind { Mode, Constant } kind;
  int n = 0;
  cplx value{};
};

Named parse_named(const std::string& s, const std::string& path) {
  auto num = [&](std::string_view t) {
    double v = 0.0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (r.ec != std::errc{} || r.ptr != t.data() + t.size()) bad(path, "malformed number in '" + s + "'");
    return v;
  };
  if (s.rfind("mode:", 0) == 0) {
    const std::string_view t = std::string_view(s).substr(5);
    int n = -1;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), n);
    if (r.ec != std::errc{} || r.ptr != t.data() + t.size() || n < 0) bad(path, "malformed mode index in '" + s + "'");
    if (n > mode_cap()) bad(path, "mode " + std::to_string(n) + " exceeds the mode cap");
    return {Named::Kind::Mode, n, {}};
  }
  if (s.rfind("constant:", 0) == 0) {
    const std::string_view t = std::string_view(s).substr(9);
    const auto comma = t.find(',');
    if (comma == std::string_view::npos) bad(path, "constant datum needs '<re>,<im>'");
    return {Named::Kind::Constant, 0, cplx(num(t.substr(0, comma)), num(t.substr(comma + 1)))};
  }
  bad(path, "unknown named datum '" + s + "'");
}

SideData parse_side(const json& j, const std::string& path) {
  SideData d;
  if (j.is_string()) {
    d.named = j.get<std::string>();
    parse_named(*d.named, path);
    return d;
  }
  json coeffs = j;
  if (j.is_object()) {
    for (const auto& [key, _] : j.items())
      if (key != "family" && key != "coeffs" && key != "named") bad(path + "." + key, "unknown field");
    if (j.contains("family")) {
      try {
        d.family = parse_family(get_string(j["family"], path + ".family"));
      } catch (const std::invalid_argument& e) {
        bad(path + ".family", e.what());
      }
    }
    if (j.contains("named")) {
      d.named = get_string(j["named"], path + ".named");
      parse_named(*d.named, path + ".named");
      if (j.contains("coeffs")) bad(path, "give either 'named' or 'coeffs', not both");
      return d;
    }
    if (!j.contains("coeffs")) bad(path, "missing 'coeffs' or 'named'");
    coeffs = j["coeffs"];
  }
  if (!coeffs.is_array()) bad(path, "expected a named datum, an object or an array of [n, re, im]");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& t = coeffs[i];
    if (!t.is_array() || t.size() != 3) bad(p, "expected [n, re, im]");
    const int n = get_int(t[0], p + "[0]");
    if (n < 0) bad(p + "[0]", "negative mode index");
    if (n > mode_cap()) bad(p + "[0]", "mode " + std::to_string(n) + " exceeds the mode cap");
    d.coeffs.emplace_back(n, get_number(t[1], p + "[1]"), get_number(t[2], p + "[2]"));
  }
  return d;
}

json side_to_json(const SideData& d) {
  if (d.named && !d.family) return *d.named;
  json j = json::object();
  if (d.family) j["family"] = to_string(*d.family);
  if (d.named) {
    j["named"] = *d.named;
  } else {
    json arr = json::array();
    for (const auto& [n, re, im] : d.coeffs) arr.push_back(json::array({n, re, im}));
    j["coeffs"] = arr;
  }
  return j;
}

json norms_json(const DataNormReport& n) {
  return json{{"l2", n.l2}, {"fractional_half", n.fractional_half},
              {"fractional_three_half", n.fractional_three_half}};
}

json config_json(const BoundaryConfig& c) {
  return json{{"b1", to_string(c.b1)}, {"b2", to_string(c.b2)}, {"b3", to_string(c.b3)}, {"b4", to_string(c.b4)}};
}

json certificate_json(const BoundCertificate& c) {
  json j{{"theorem", to_string(c.theorem)}, {"k", c.k},       {"lhs", c.lhs},
         {"rhs", c.rhs},                    {"ratio", c.ratio}, {"pass", c.pass},
         {"norms", norms_json(c.datum_norms)}};
  if (c.lhs_quadrature) j["lhs_quadrature"] = *c.lhs_quadrature;
  return j;
}

json energy_json(const EnergyReport& e) {
  return json{{"grad_norm", e.grad_norm},
              {"l2_norm", e.l2_norm},
              {"energy", e.energy},
              {"method", e.method == EnergyMethod::Parseval ? "parseval" : "quadrature"}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void emit(const json& report, const std::string& path) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text(path, text);
}

std::vector<double> uniform(int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
  if (n > 1) t.back() = 1.0;
  return t;
}

EnergyReport energy_of(const SeriesSolution& u) {
  if (u.provenance == Provenance::Superposition) return energy_quadrature(u, 65);
  return energy_parseval(u);
}

int depth_for(const RunConfig& c) { return c.truncation.value_or(default_truncation(c.k, 0)); }

}  // namespace

// ---------------------------------------------------------------- config

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("$: malformed JSON (") + e.what() + ")");
  }
  if (!j.is_object()) bad("$", "expected an object");
  static const std::vector<std::string> known{"k",     "boundary", "data", "source", "truncation",
                                              "grid",  "seed",     "csv",  "report"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) bad("$." + key, "unknown field");

  RunConfig c;
  if (!j.contains("k")) bad("$.k", "missing");
  c.k = get_number(j["k"], "$.k");
  if (!(c.k > 0.0) || !std::isfinite(c.k)) bad("$.k", "must be positive and finite");

  if (j.contains("boundary")) {
    const json& b = j["boundary"];
    if (!b.is_object()) bad("$.boundary", "expected an object");
    for (const auto& [key, val] : b.items()) {
      BoundaryOperator* slot = key == "b1"   ? &c.boundary.b1
                               : key == "b2" ? &c.boundary.b2
                               : key == "b3" ? &c.boundary.b3
                               : key == "b4" ? &c.boundary.b4
                                             : nullptr;
      if (!slot) bad("$.boundary." + key, "unknown field");
      try {
        *slot = parse_operator(get_string(val, "$.boundary." + key));
      } catch (const std::invalid_argument& e) {
        bad("$.boundary." + key, e.what());
      }
    }
    try {
      c.boundary.validate();
    } catch (const std::invalid_argument& e) {
      bad("$.boundary", e.what());
    }
  }

  if (j.contains("data")) {
    const json& d = j["data"];
    if (!d.is_object()) bad("$.data", "expected an object");
    for (const auto& [key, val] : d.items()) {
      const auto it = std::find(kSideKeys.begin(), kSideKeys.end(), key);
      if (it == kSideKeys.end()) bad("$.data." + key, "unknown side");
      c.data[static_cast<std::size_t>(it - kSideKeys.begin())] = parse_side(val, "$.data." + key);
    }
  }
  if (j.contains("source")) {
    c.source = get_string(j["source"], "$.source");
    parse_named(*c.source, "$.source");
  }
  if (j.contains("truncation")) {
    c.truncation = get_int(j["truncation"], "$.truncation");
    if (*c.truncation < 0 || *c.truncation > mode_cap()) bad("$.truncation", "out of range");
  }
  if (j.contains("grid")) {
    c.grid = get_int(j["grid"], "$.grid");
    if (c.grid < 2) bad("$.grid", "must be at least 2");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad("$.seed", "expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("csv")) c.csv = get_string(j["csv"], "$.csv");
  if (j.contains("report")) c.report = get_string(j["report"], "$.report");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const RunConfig& c) {
  json j;
  j["k"] = c.k;
  j["boundary"] = config_json(c.boundary);
  json d = json::object();
  for (std::size_t s = 0; s < 4; ++s)
    if (c.data[s]) d[kSideKeys[s]] = side_to_json(*c.data[s]);
  j["data"] = d;
  if (c.source) j["source"] = *c.source;
  if (c.truncation) j["truncation"] = *c.truncation;
  j["grid"] = c.grid;
  j["seed"] = c.seed;
  if (!c.csv.empty()) j["csv"] = c.csv;
  if (!c.report.empty()) j["report"] = c.report;
  return j.dump(2) + "\n";
}

BasisFamily default_family(const RunConfig& c, Side s) {
  if (s == Side::Gamma2 || s == Side::Gamma4) return c.boundary.vertical_family();
  const auto choice = choose_lifting_family(c.k, c.boundary.b1, c.boundary.b3);
  return choice.family == LiftingFamily::Integer ? BasisFamily::CosInt : BasisFamily::CosHalf;
}

Spectrum side_spectrum(const RunConfig& c, Side s) {
  const auto& d = c.data[static_cast<std::size_t>(s)];
  const BasisFamily fam = d && d->family ? *d->family : default_family(c, s);
  if (!d) return Spectrum(fam);
  const std::string path = std::string("$.data.") + kSideKeys[static_cast<std::size_t>(s)];
  if (d->named) {
    const Named nm = parse_named(*d->named, path);
    if (nm.kind == Named::Kind::Mode) return Spectrum::single(fam, nm.n);
    const cplx v = nm.value;
    return project(BoundaryFunction([v](double) { return v; }), fam, depth_for(c));
  }
  std::vector<Spectrum::Entry> e;
  for (const auto& [n, re, im] : d->coeffs) e.emplace_back(n, cplx(re, im));
  try {
    return Spectrum(fam, std::move(e));
  } catch (const std::invalid_argument& ex) {
    bad(path, ex.what());
  }
}

std::optional<ModalSource> modal_source(const RunConfig& c) {
  if (!c.source) return std::nullopt;
  const Named nm = parse_named(*c.source, "$.source");
  const BasisFamily fam = c.boundary.vertical_family();
  ModalSource f{fam, {}};
  if (nm.kind == Named::Kind::Mode) {
    f.profiles.emplace_back(nm.n, [](double) { return cplx(1.0); });
    return f;
  }
  const cplx v = nm.value;
  const Spectrum s = project(BoundaryFunction([v](double) { return v; }), fam, depth_for(c));
  for (const auto& [n, a] : s.coeffs()) f.profiles.emplace_back(n, [a](double) { return a; });
  return f;
}

FullSolve solve_problem(const RunConfig& c) {
  c.boundary.validate();
  FullSolve out;
  std::vector<SeriesSolution> parts;

  SeriesSolution aux;
  aux.config = c.boundary;
  aux.k = c.k;
  aux.provenance = Provenance::LiftedHorizontalData;
  std::vector<SeriesSolution> lifts;
  for (Side s : {Side::Gamma1, Side::Gamma3}) {
    if (!c.data[static_cast<std::size_t>(s)]) continue;
    const Spectrum g = side_spectrum(c, s);
    if (g.empty()) continue;
    SeriesSolution l = lift_horizontal_data(g, s, c.boundary, c.k, c.truncation);
    aux.truncation = std::max(aux.truncation, l.truncation);
    aux.terms.insert(aux.terms.end(), l.terms.begin(), l.terms.end());
    lifts.push_back(std::move(l));
  }

  Spectrum g2 = side_spectrum(c, Side::Gamma2);
  Spectrum g4 = side_spectrum(c, Side::Gamma4);
  if (!aux.terms.empty()) {
    out.traces = residual_traces(aux, g2, g4);
    g2 = out.traces->g2;
    g4 = out.traces->g4;
    parts.push_back(lifts.size() == 1 ? lifts.front() : aux);
  }
  const std::optional<int> N = c.truncation;
  const int depth = out.traces ? std::max(out.traces->depth, N.value_or(0)) : 0;
  auto vertical_n = [&](const Spectrum& g) -> std::optional<int> {
    if (out.traces) return std::max(depth, default_truncation(c.k, g.top_mode()));
    return N;
  };
  if (!g2.empty()) parts.push_back(solve_vertical_data(c.boundary, Side::Gamma2, g2, c.k, vertical_n(g2)));
  if (!g4.empty()) parts.push_back(solve_vertical_data(c.boundary, Side::Gamma4, g4, c.k, vertical_n(g4)));
  if (auto f = modal_source(c)) parts.push_back(solve_source(*f, c.boundary, c.k, N));

  if (parts.empty()) {
    out.u.config = c.boundary;
    out.u.k = c.k;
    out.u.truncation = N.value_or(default_truncation(c.k, 0));
  } else if (parts.size() == 1) {
    out.u = parts.front();
  } else {
    out.u = superpose(parts);
  }
  return out;
}

FdmProblem oracle_problem(const RunConfig& c) {
  std::array<std::optional<Spectrum>, 4> data;
  for (std::size_t s = 0; s < 4; ++s)
    if (c.data[s]) data[s] = side_spectrum(c, static_cast<Side>(s));
  Source2D f;
  if (c.source) {
    const Named nm = parse_named(*c.source, "$.source");
    const BasisFamily fam = c.boundary.vertical_family();
    if (nm.kind == Named::Kind::Mode) {
      const int n = nm.n;
      f = [fam, n](double, double y) { return cplx(basis_value(fam, n, y)); };
    } else {
      const cplx v = nm.value;
      f = [v](double, double) { return v; };
    }
  }
  return fdm_problem(c.boundary, c.k, data, f);
}

std::string to_csv(const SeriesSolution& u, const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::vector<PointValue> v = evaluate_grid(u, xs, ys);
  std::string out = "x,y,re,im\r\n";
  char buf[128];
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const cplx w = v[i * ys.size() + j].value;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\r\n", xs[i], ys[j], w.real(), w.imag());
      out += buf;
    }
  return out;
}

std::string to_csv(const GridSolution& gs) {
  const std::vector<double> t = gs.nodes();
  std::string out = "x,y,re,im\r\n";
  char buf[128];
  for (int i = 0; i < gs.n; ++i)
    for (int j = 0; j < gs.n; ++j) {
      const cplx w = gs.at(i, j);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\r\n", t[i], t[j], w.real(), w.imag());
      out += buf;
    }
  return out;
}

// ---------------------------------------------------------------- subcommands

namespace {

struct Exit {
  int code;
};

Side placement_for(TheoremId t, const RunConfig& c) {
  std::vector<Side> with;
  for (std::size_t s = 0; s < 4; ++s)
    if (c.data[s]) with.push_back(static_cast<Side>(s));
  if (with.size() > 1) throw ConfigError("$.data: certificates take data on a single side");
  if (with.size() == 1) return with.front();
  switch (t) {
    case TheoremId::T1_G4: return Side::Gamma4;
    case TheoremId::T3_LIFT_NEU:
    case TheoremId::T3_LIFT_DIR: return Side::Gamma1;
    default: return Side::Gamma2;
  }
}

int cmd_solve(const RunConfig& c, const std::string& csv, const std::string& report) {
  const FullSolve s = solve_problem(c);
  json j{{"k", c.k}, {"boundary", config_json(c.boundary)}, {"truncation", s.u.truncation},
         {"terms", s.u.terms.size()}, {"provenance", to_string(s.u.provenance)},
         {"energy", energy_json(energy_of(s.u))}, {"grid", c.grid}, {"seed", c.seed}};
  if (s.traces) {
    json w = json::array();
    for (const auto& m : s.traces->warnings) w.push_back(m);
    j["residual_traces"] = {{"depth", s.traces->depth}, {"tail2", s.traces->tail2},
                            {"tail4", s.traces->tail4}, {"warnings", w}};
  }
  const std::string csv_path = csv.empty() ? c.csv : csv;
  if (!csv_path.empty()) {
    write_text(csv_path, to_csv(s.u, uniform(c.grid), uniform(c.grid)));
    j["csv"] = csv_path;
  }
  emit(j, report.empty() ? c.report : report);
  return 0;
}

int cmd_certify(const RunConfig& c, const std::string& theorem_name, int quad_grid,
                const std::string& report) {
  const TheoremId t = parse_theorem(theorem_name);
  BoundCertificate cert;
  json extra;
  if (t == TheoremId::TF_SOURCE) {
    for (const auto& d : c.data)
      if (d) throw ConfigError("$.data: TF_SOURCE requires all boundary data to vanish");
    ModalSource f = modal_source(c).value_or(ModalSource{c.boundary.vertical_family(), {}});
    cert = certify_source(c.boundary, f, c.k, c.truncation, quad_grid);
    extra["placement"] = "source";
  } else {
    if (c.source) throw ConfigError("$.source: boundary-data theorems require f = 0");
    const Side side = placement_for(t, c);
    cert = certify(t, c.boundary, side, side_spectrum(c, side), c.k, c.truncation);
    extra["placement"] = to_string(side);
  }
  json j = certificate_json(cert);
  j["boundary"] = config_json(c.boundary);
  j["placement"] = extra["placement"];
  j["seed"] = c.seed;
  emit(j, report.empty() ? c.report : report);
  return cert.pass ? 0 : 2;
}

int cmd_sharpness(const std::string& id, int n, const std::string& family, const std::string& report) {
  std::optional<BasisFamily> fam;
  if (!family.empty()) fam = parse_family(family);
  const SharpnessCase sc = sharpness_case(parse_sharpness(id), n, fam);
  const SeriesSolution solved = solve_sharpness_datum(sc);
  const EnergyReport er = energy_parseval(solved);
  const double computed = er.energy;
  const double exact = energy_parseval(sc.exact).energy;
  json j{{"case", to_string(sc.id)}, {"n", n}, {"k", sc.k}, {"mu", sc.mu},
         {"theorem", to_string(sc.theorem)}, {"boundary", config_json(sc.config)},
         {"placement", to_string(sc.data_side)}, {"computed_energy", computed},
         {"exact_solution_energy", exact}};
  double rel;
  if (sc.expected_energy) {
    j["expected_energy"] = *sc.expected_energy;
    rel = std::abs(computed - *sc.expected_energy) / *sc.expected_energy;
  } else {
    const double sq = er.grad_norm * er.grad_norm + sc.k * sc.k * er.l2_norm * er.l2_norm;
    j["expected_energy_sq"] = *sc.expected_energy_sq;
    j["computed_energy_sq"] = sq;
    rel = std::abs(sq - *sc.expected_energy_sq) / *sc.expected_energy_sq;
  }
  j["relative_difference"] = rel;
  bool pass = rel <= 1e-8;
  const BoundCertificate cert =
      make_certificate(sc.theorem, sc.k, computed, data_norms(sc.datum));
  j["ratio"] = cert.ratio;
  j["rhs"] = cert.rhs;
  j["norms"] = norms_json(cert.datum_norms);
  if (sc.lower_bound) {
    j["lower_bound"] = *sc.lower_bound;
    pass = pass && computed >= *sc.lower_bound;
  }
  pass = pass && cert.pass;
  j["pass"] = pass;
  emit(j, report);
  return pass ? 0 : 2;
}

int cmd_sweep(const std::string& theorem_name, double kmin, double kmax, int kpoints,
              std::vector<double> kvals, int modes, int trials, std::uint64_t seed,
              const std::string& report) {
  const TheoremId t = parse_theorem(theorem_name);
  const std::vector<double> grid = kvals.empty() ? log_grid(kmin, kmax, kpoints) : kvals;
  json j{{"theorem", to_string(t)}, {"seed", seed}, {"modes", modes}, {"trials", trials}, {"k_grid", grid}};
  try {
    const SweepReport r = sweep(t, grid, modes, trials, seed);
    j["certificates"] = r.certificates;
    j["max_ratio"] = r.max_ratio;
    j["argmax"] = {{"k", r.argmax_k}, {"trial", r.argmax_trial}, {"config", r.argmax_config}};
    j["pass"] = r.all_pass;
    emit(j, report);
    return r.all_pass ? 0 : 2;
  } catch (const CertificateFailure& e) {
    j["pass"] = false;
    j["failure"] = certificate_json(e.certificate);
    emit(j, report);
    return 2;
  }
}

int cmd_lift(const RunConfig& c, const std::string& csv, const std::string& report) {
  SeriesSolution aux;
  aux.config = c.boundary;
  aux.k = c.k;
  aux.provenance = Provenance::LiftedHorizontalData;
  json sides = json::array();
  for (Side s : {Side::Gamma1, Side::Gamma3}) {
    if (!c.data[static_cast<std::size_t>(s)]) continue;
    const Spectrum g = side_spectrum(c, s);
    const SeriesSolution l = lift_horizontal_data(g, s, c.boundary, c.k, c.truncation);
    aux.truncation = std::max(aux.truncation, l.truncation);
    aux.terms.insert(aux.terms.end(), l.terms.begin(), l.terms.end());
    sides.push_back({{"side", to_string(s)}, {"family", to_string(g.family())},
                     {"norms", norms_json(data_norms(g))}, {"energy", energy_json(energy_parseval(l))}});
  }
  if (sides.empty()) throw ConfigError("$.data: lift needs data on gamma1 or gamma3");
  const auto choice = choose_lifting_family(c.k, c.boundary.b1, c.boundary.b3);
  const ResidualTraces rt = residual_traces(aux, side_spectrum(c, Side::Gamma2), side_spectrum(c, Side::Gamma4));
  json w = json::array();
  for (const auto& m : rt.warnings) w.push_back(m);
  json j{{"k", c.k}, {"boundary", config_json(c.boundary)},
         {"lifting_family", choice.family == LiftingFamily::Integer ? "integer" : "half_integer"},
         {"lifting_case", choice.case_index}, {"d0", choice.d0}, {"d1", choice.d1},
         {"lifted", sides}, {"truncation", aux.truncation},
         {"residual_traces", {{"depth", rt.depth}, {"g2", norms_json(data_norms(rt.g2))},
                              {"g4", norms_json(data_norms(rt.g4))}, {"tail2", rt.tail2},
                              {"tail4", rt.tail4}, {"warnings", w}}}};
  const std::string csv_path = csv.empty() ? c.csv : csv;
  if (!csv_path.empty()) {
    write_text(csv_path, to_csv(aux, uniform(c.grid), uniform(c.grid)));
    j["csv"] = csv_path;
  }
  emit(j, report.empty() ? c.report : report);
  return 0;
}

int cmd_oracle(const RunConfig& c, int n, const std::string& csv, const std::string& report) {
  const FullSolve s = solve_problem(c);
  const GridSolution gs = fdm_solve(oracle_problem(c), n);
  const Comparison cmp = compare(s.u, gs);
  json j{{"k", c.k}, {"boundary", config_json(c.boundary)}, {"n", n}, {"h", gs.h},
         {"max_abs", cmp.max_abs}, {"rel_l2", cmp.rel_l2},
         {"fdm_energy", energy_json(fdm_energy(gs))}, {"spectral_energy", energy_json(energy_of(s.u))}};
  if (!csv.empty()) {
    write_text(csv, to_csv(gs));
    j["csv"] = csv;
  }
  emit(j, report.empty() ? c.report : report);
  return 0;
}

RunConfig selftest_config() {
  RunConfig c;
  c.k = 5.0;
  c.boundary = BoundaryConfig{};
  c.data[static_cast<std::size_t>(Side::Gamma4)] = SideData{std::nullopt, std::nullopt, {{0, 0.0, -10.0}}};
  c.data[static_cast<std::size_t>(Side::Gamma2)] = SideData{std::string("mode:2"), std::nullopt, {}};
  c.grid = 17;
  c.seed = 7;
  return c;
}

int cmd_selftest(const std::string& dump_path, const std::string& report) {
  const RunConfig c = selftest_config();
  const std::string text = dump_config(c);
  if (!dump_path.empty()) write_text(dump_path, text);
  json checks = json::array();
  bool all = true;
  auto check = [&](const std::string& name, bool ok) {
    checks.push_back({{"check", name}, {"pass", ok}});
    all = all && ok;
  };
  const RunConfig back = parse_config(text);
  check("config_round_trip", back == c && dump_config(back) == text);
  DataNormReport unit;
  unit.l2 = 1.0;
  check("rhs_bound_t1", std::abs(rhs_bound(TheoremId::T1_G4, 2.0, unit) - 2.0 * std::sqrt(12.0)) < 1e-12);
  const SharpnessCase sc = sharpness_case(SharpnessId::Ex23Case2, 1);
  const double e = energy_parseval(solve_sharpness_datum(sc)).energy;
  check("sharpness_ex2.3-2", std::abs(e - *sc.expected_energy) <= 1e-8 * *sc.expected_energy);
  const FullSolve s = solve_problem(c);
  double worst = 0.0;
  for (double t : {0.1, 0.5, 0.9})
    for (Side side : {Side::Gamma1, Side::Gamma2, Side::Gamma3, Side::Gamma4}) {
      const Spectrum g = side_spectrum(c, side);
      worst = std::max(worst, std::abs(boundary_trace(s.u, side, t) - g.expand(t)));
    }
  check("boundary_residuals", worst <= 1e-6 * (1.0 + c.k));
  emit(json{{"checks", checks}, {"pass", all}}, report);
  return all ? 0 : 2;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Spectral Helmholtz solver on the unit square with stability certificates"};
  app.require_subcommand(1);
  std::string config_path, csv, report, theorem, case_id, family, dump;
  int n = 1, grid_n = 129, quad = 0, kpoints = 64, modes = 64, trials = 50;
  double kmin = 0.05, kmax = 200.0;
  std::vector<double> kvals;
  std::uint64_t seed = 0;

  auto* solve = app.add_subcommand("solve", "solve the configured problem and sample it");
  solve->add_option("--config", config_path)->required();
  solve->add_option("--csv", csv);
  solve->add_option("--report", report);

  auto* cert = app.add_subcommand("certify", "issue a stability certificate");
  cert->add_option("--theorem", theorem)->required();
  cert->add_option("--config", config_path)->required();
  cert->add_option("--quadrature-grid", quad);
  cert->add_option("--report", report);

  auto* sharp = app.add_subcommand("sharpness", "check a sharpness example");
  sharp->add_option("--case", case_id)->required();
  sharp->add_option("--n", n)->check(CLI::PositiveNumber);
  sharp->add_option("--family", family);
  sharp->add_option("--report", report);

  auto* sw = app.add_subcommand("sweep", "seeded certificate sweep");
  sw->add_option("--theorem", theorem)->required();
  sw->add_option("--k-min", kmin);
  sw->add_option("--k-max", kmax);
  sw->add_option("--k-points", kpoints);
  sw->add_option("--k", kvals, "explicit k values");
  sw->add_option("--modes", modes);
  sw->add_option("--trials", trials);
  sw->add_option("--seed", seed);
  sw->add_option("--report", report);

  auto* lift = app.add_subcommand("lift", "lift horizontal data and report residual traces");
  lift->add_option("--config", config_path)->required();
  lift->add_option("--csv", csv);
  lift->add_option("--report", report);

  auto* orc = app.add_subcommand("oracle", "compare against the finite-difference oracle");
  orc->add_option("--config", config_path)->required();
  orc->add_option("--n", grid_n)->check(CLI::Range(kMinGridSize, 2049));
  orc->add_option("--csv", csv);
  orc->add_option("--report", report);

  auto* self = app.add_subcommand("selftest", "quick internal checks");
  self->add_option("--dump-config", dump);
  self->add_option("--report", report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*solve) return cmd_solve(load_config(config_path), csv, report);
    if (*cert) return cmd_certify(load_config(config_path), theorem, quad, report);
    if (*sharp) return cmd_sharpness(case_id, n, family, report);
    if (*sw) return cmd_sweep(theorem, kmin, kmax, kpoints, kvals, modes, trials, seed, report);
    if (*lift) return cmd_lift(load_config(config_path), csv, report);
    if (*orc) return cmd_oracle(load_config(config_path), grid_n, csv, report);
    if (*self) return cmd_selftest(dump, report);
  } catch (const CertificateFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace helmholtz::cli
