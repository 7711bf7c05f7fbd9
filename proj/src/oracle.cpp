#include "helmholtz/oracle.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>

namespace helmholtz {

namespace {
using B = BoundaryOperator;
using SpMat = Eigen::SparseMatrix<cplx>;
using Vec = Eigen::VectorXcd;

cplx eval_or_zero(const BoundaryFunction& g, double t) { return g ? g(t) : cplx{}; }

// Outward normal derivative on the side equals g + beta u.
cplx robin_beta(B op, double k) { return op == B::Impedance ? cplx(0.0, k) : cplx{}; }
}  // namespace

std::vector<double> GridSolution::nodes() const {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = i * h;
  t[n - 1] = 1.0;
  return t;
}

FdmProblem fdm_problem(const BoundaryConfig& config, double k,
                       const std::array<std::optional<Spectrum>, 4>& data, Source2D f) {
  FdmProblem p{config, {}, std::move(f), k};
  for (std::size_t s = 0; s < 4; ++s)
    if (data[s]) {
      const Spectrum g = *data[s];
      p.g[s] = [g](double t) { return g.expand(t); };
    }
  return p;
}

GridSolution fdm_solve(const FdmProblem& pb, int n) {
  pb.config.validate();
  if (n < kMinGridSize) throw std::invalid_argument("fdm_solve: n must be at least 17");
  if (!(pb.k > 0.0)) throw std::invalid_argument("fdm_solve: k must be positive");
  const double h = 1.0 / (n - 1), k = pb.k;
  const std::size_t N = static_cast<std::size_t>(n) * n;
  auto idx = [n](int i, int j) { return static_cast<int>(i * n + j); };
  auto coord = [n, h](int i) { return i == n - 1 ? 1.0 : i * h; };

  const BoundaryConfig& c = pb.config;
  auto g = [&](Side s, double t) { return eval_or_zero(pb.g[static_cast<int>(s)], t); };

  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(5 * N);
  Vec rhs = Vec::Zero(static_cast<Eigen::Index>(N));

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = coord(i), y = coord(j);
      const int row = idx(i, j);
      // sides touching this node
      std::vector<Side> on;
      if (j == 0) on.push_back(Side::Gamma1);
      if (i == n - 1) on.push_back(Side::Gamma2);
      if (j == n - 1) on.push_back(Side::Gamma3);
      if (i == 0) on.push_back(Side::Gamma4);

      std::vector<Side> dir;
      for (Side s : on)
        if (c.on(s) == B::Dirichlet) dir.push_back(s);
      if (!dir.empty()) {
        cplx v{};
        for (Side s : dir) v += g(s, (s == Side::Gamma1 || s == Side::Gamma3) ? x : y);
        trip.emplace_back(row, row, 1.0);
        rhs[row] = v / static_cast<double>(dir.size());
        continue;
      }

      // h^2 (Laplacian + k^2) u = -h^2 f with ghost values eliminated
      cplx diag = k * k * h * h - 4.0;
      cplx b = pb.f ? -h * h * pb.f(x, y) : cplx{};
      auto add_neighbor = [&](int ii, int jj, double w) {
        trip.emplace_back(row, idx(ii, jj), cplx(w));
      };
      // x-direction
      if (i == 0) {
        add_neighbor(1, j, 2.0);
        diag += 2.0 * h * robin_beta(c.b4, k);
        b -= 2.0 * h * g(Side::Gamma4, y);
      } else if (i == n - 1) {
        add_neighbor(n - 2, j, 2.0);
        diag += 2.0 * h * robin_beta(c.b2, k);
        b -= 2.0 * h * g(Side::Gamma2, y);
      } else {
        add_neighbor(i - 1, j, 1.0);
        add_neighbor(i + 1, j, 1.0);
      }
      // y-direction
      if (j == 0) {
        add_neighbor(i, 1, 2.0);
        diag += 2.0 * h * robin_beta(c.b1, k);
        b -= 2.0 * h * g(Side::Gamma1, x);
      } else if (j == n - 1) {
        add_neighbor(i, n - 2, 2.0);
        diag += 2.0 * h * robin_beta(c.b3, k);
        b -= 2.0 * h * g(Side::Gamma3, x);
      } else {
        add_neighbor(i, j - 1, 1.0);
        add_neighbor(i, j + 1, 1.0);
      }
      trip.emplace_back(row, row, diag);
      rhs[row] = b;
    }
  }

  SpMat A(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();

  Eigen::SparseLU<SpMat> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
    throw SingularSystemError("fdm_solve: factorization failed (" + lu.lastErrorMessage() + ")",
                              INFINITY);
  Vec sol = lu.solve(rhs);
  const double rn = rhs.norm();
  const double res = (A * sol - rhs).norm();
  if (!std::isfinite(res) || res > kFdmResidualTolerance * rn) {
    const double indicator = std::abs(lu.logAbsDeterminant());
    throw SingularSystemError("fdm_solve: residual " + std::to_string(res) + " exceeds tolerance",
                              indicator);
  }

  GridSolution gs;
  gs.h = h;
  gs.n = n;
  gs.config = c;
  gs.k = k;
  gs.values.assign(sol.data(), sol.data() + sol.size());
  for (const cplx& v : gs.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw SingularSystemError("fdm_solve: non-finite solution", INFINITY);
  return gs;
}

EnergyReport fdm_energy(const GridSolution& gs) {
  const int n = gs.n;
  const double h = gs.h;
  if (n < 3) return make_energy(0.0, 0.0, gs.k, EnergyMethod::Quadrature);
  auto w = [n](int i) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; };
  auto d = [&](auto get, int i) -> cplx {
    if (i == 0) return (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h);
    if (i == n - 1) return (3.0 * get(n - 1) - 4.0 * get(n - 2) + get(n - 3)) / (2.0 * h);
    return (get(i + 1) - get(i - 1)) / (2.0 * h);
  };
  double u2 = 0.0, g2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double wt = w(i) * w(j) * h * h;
      const cplx ux = d([&](int a) { return gs.at(a, j); }, i);
      const cplx uy = d([&](int a) { return gs.at(i, a); }, j);
      u2 += wt * std::norm(gs.at(i, j));
      g2 += wt * (std::norm(ux) + std::norm(uy));
    }
  return make_energy(std::sqrt(g2), std::sqrt(u2), gs.k, EnergyMethod::Quadrature);
}

Comparison compare(const SeriesSolution& spectral, const GridSolution& gs) {
  if (!(spectral.config == gs.config) || spectral.k != gs.k)
    throw std::invalid_argument("compare: config or k mismatch");
  const std::vector<double> t = gs.nodes();
  const std::vector<PointValue> s = evaluate_grid(spectral, t, t);
  Comparison out;
  double num = 0.0, den = 0.0;
  for (std::size_t m = 0; m < s.size(); ++m) {
    const double e = std::abs(s[m].value - gs.values[m]);
    out.max_abs = std::max(out.max_abs, e);
    num += e * e;
    den += std::norm(s[m].value);
  }
  out.rel_l2 = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return out;
}

}  // namespace helmholtz
