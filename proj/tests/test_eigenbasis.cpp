#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "helmholtz/eigenbasis.hpp"

using namespace helmholtz;
using std::numbers::pi;

namespace {
const BasisFamily kFamilies[] = {BasisFamily::SinInt, BasisFamily::CosInt, BasisFamily::SinHalf,
                                 BasisFamily::CosHalf};
}

TEST(BasisValue, Examples) {
  EXPECT_DOUBLE_EQ(basis_value(BasisFamily::CosInt, 0, 0.37), 1.0);
  EXPECT_DOUBLE_EQ(basis_value(BasisFamily::SinInt, 0, 0.5), 0.0);
  EXPECT_NEAR(basis_value(BasisFamily::SinInt, 1, 0.5), std::sqrt(2.0), 1e-15);
}

TEST(Eigenvalue, IntegerAndHalfInteger) {
  EXPECT_DOUBLE_EQ(eigenvalue(BasisFamily::SinInt, 3), 3 * pi);
  EXPECT_DOUBLE_EQ(eigenvalue(BasisFamily::CosInt, 0), 0.0);
  EXPECT_DOUBLE_EQ(eigenvalue(BasisFamily::SinHalf, 0), pi / 2);
  EXPECT_DOUBLE_EQ(eigenvalue(BasisFamily::CosHalf, 2), 2.5 * pi);
}

TEST(SelectEigenpairs, FourFamilies) {
  using B = BoundaryOperator;
  EXPECT_EQ(select_eigenpairs(B::Dirichlet, B::Dirichlet), BasisFamily::SinInt);
  EXPECT_EQ(select_eigenpairs(B::Neumann, B::Neumann), BasisFamily::CosInt);
  EXPECT_EQ(select_eigenpairs(B::Dirichlet, B::Neumann), BasisFamily::SinHalf);
  EXPECT_EQ(select_eigenpairs(B::Neumann, B::Dirichlet), BasisFamily::CosHalf);
  EXPECT_THROW(select_eigenpairs(B::Impedance, B::Neumann), std::invalid_argument);
}

TEST(Basis, BoundaryConditions) {
  for (int n = 1; n < 6; ++n) {
    EXPECT_NEAR(basis_value(BasisFamily::SinInt, n, 0.0), 0.0, 1e-14);
    EXPECT_NEAR(basis_value(BasisFamily::SinInt, n, 1.0), 0.0, 1e-14);
    EXPECT_NEAR(basis_derivative(BasisFamily::CosInt, n, 1.0), 0.0, 1e-12);
    EXPECT_NEAR(basis_value(BasisFamily::SinHalf, n, 0.0), 0.0, 1e-14);
    EXPECT_NEAR(basis_derivative(BasisFamily::SinHalf, n, 1.0), 0.0, 1e-12);
    EXPECT_NEAR(basis_derivative(BasisFamily::CosHalf, n, 0.0), 0.0, 1e-14);
    EXPECT_NEAR(basis_value(BasisFamily::CosHalf, n, 1.0), 0.0, 1e-14);
  }
}

TEST(Basis, Orthonormality) {
  const QuadratureRule r = composite_gauss_legendre(32, 16);
  for (BasisFamily f : kFamilies)
    for (int m = 0; m <= 32; ++m)
      for (int n = m; n <= 32; ++n) {
        if (f == BasisFamily::SinInt && (m == 0 || n == 0)) continue;
        double s = 0.0, ds = 0.0;
        for (size_t i = 0; i < r.nodes.size(); ++i) {
          s += r.weights[i] * basis_value(f, m, r.nodes[i]) * basis_value(f, n, r.nodes[i]);
          ds += r.weights[i] * basis_derivative(f, m, r.nodes[i]) * basis_derivative(f, n, r.nodes[i]);
        }
        const double mm = eigenvalue(f, m), mn = eigenvalue(f, n);
        EXPECT_NEAR(s, m == n ? 1.0 : 0.0, 1e-12) << to_string(f) << " " << m << " " << n;
        if (m == n)
          EXPECT_NEAR(ds, mn * mn, 1e-10 * mn * mn + 1e-14);
        else
          EXPECT_NEAR(ds, 0.0, 1e-10 * mm * mn + 1e-12);
      }
}

TEST(Spectrum, InvariantsEnforced) {
  EXPECT_THROW(Spectrum(BasisFamily::CosInt, {{2, 1.0}, {2, 3.0}}), std::invalid_argument);
  EXPECT_THROW(Spectrum(BasisFamily::CosInt, {{-1, 1.0}}), std::invalid_argument);
  EXPECT_THROW(Spectrum(BasisFamily::CosInt, {{1, cplx(NAN, 0)}}), std::invalid_argument);
  const Spectrum s(BasisFamily::SinInt, {{3, 1.0}, {0, 5.0}, {1, 2.0}});
  ASSERT_EQ(s.coeffs().size(), 2u);
  EXPECT_EQ(s.coeffs()[0].first, 1);
  EXPECT_EQ(s.coeffs()[1].first, 3);
  EXPECT_EQ(s.at(0), cplx{});
  EXPECT_EQ(s.top_mode(), 3);
}

TEST(Project, SingleBasisFunction) {
  const Spectrum s = project([](double t) { return cplx(basis_value(BasisFamily::SinInt, 3, t)); },
                             BasisFamily::SinInt, 8);
  for (int n = 1; n <= 8; ++n) EXPECT_NEAR(std::abs(s.at(n) - (n == 3 ? 1.0 : 0.0)), 0.0, 1e-12) << n;
}

TEST(Project, ConstantOntoSines) {
  const Spectrum s = project([](double) { return cplx(1.0); }, BasisFamily::SinInt, 4);
  for (int n = 1; n <= 4; ++n) {
    const double expect = std::sqrt(2.0) * (1.0 - std::pow(-1.0, n)) / (n * pi);
    EXPECT_NEAR(std::abs(s.at(n) - expect), 0.0, 1e-13) << n;
  }
}

TEST(Project, ZeroGivesEmpty) {
  EXPECT_TRUE(project([](double) { return cplx{}; }, BasisFamily::CosHalf, 12).empty());
}

TEST(Project, ExpandRoundTrip) {
  for (BasisFamily f : kFamilies) {
    const Spectrum s(f, {{1, cplx(0.3, -1.0)}, {4, 2.0}, {9, cplx(0, 0.5)}, {17, -0.25}});
    const Spectrum back = project([&](double t) { return s.expand(t); }, f, 20);
    for (int n = 0; n <= 20; ++n) EXPECT_NEAR(std::abs(back.at(n) - s.at(n)), 0.0, 1e-12);
  }
}

TEST(Project, NormConvergesForSmoothData) {
  auto g = [](double t) { return cplx(std::exp(t), std::sin(3 * t)); };
  const QuadratureRule r = composite_gauss_legendre(32, 8);
  double exact = 0.0;
  for (size_t i = 0; i < r.nodes.size(); ++i) exact += r.weights[i] * std::norm(g(r.nodes[i]));
  double prev = INFINITY;
  for (int m : {8, 32, 128, 512}) {
    const double err = std::abs(data_norms(project(g, BasisFamily::CosInt, m)).l2 - std::sqrt(exact));
    EXPECT_LE(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(Project, RejectsNonFiniteAndCap) {
  EXPECT_THROW(project([](double) { return cplx(INFINITY); }, BasisFamily::CosInt, 4), std::invalid_argument);
  EXPECT_THROW(project([](double) { return cplx(1.0); }, BasisFamily::CosInt, kModeHardCap + 1),
               std::invalid_argument);
  setenv("HELMHOLTZ_MAX_MODES", "10", 1);
  EXPECT_EQ(mode_cap(), 10);
  EXPECT_THROW(project([](double) { return cplx(1.0); }, BasisFamily::CosInt, 11), std::invalid_argument);
  unsetenv("HELMHOLTZ_MAX_MODES");
  EXPECT_EQ(mode_cap(), kModeHardCap);
}

TEST(DataNorms, Examples) {
  const DataNormReport a = data_norms(Spectrum::single(BasisFamily::SinInt, 2));
  EXPECT_DOUBLE_EQ(a.l2, 1.0);
  EXPECT_NEAR(a.fractional_half, std::sqrt(2 * pi), 1e-15);
  const DataNormReport z = data_norms(Spectrum(BasisFamily::CosInt));
  EXPECT_EQ(z.l2, 0.0);
  EXPECT_EQ(z.fractional_half, 0.0);
  EXPECT_EQ(z.fractional_three_half, 0.0);
  const DataNormReport b = data_norms(Spectrum(BasisFamily::SinInt, {{1, 1.0}, {2, 1.0}}));
  EXPECT_NEAR(b.fractional_half * b.fractional_half, 3 * pi, 1e-13);
}

TEST(Spectrum, ExpandMatchesBasis) {
  const Spectrum s(BasisFamily::CosHalf, {{0, 2.0}, {3, cplx(0, 1)}});
  const double t = 0.41;
  EXPECT_NEAR(std::abs(s.expand(t) - (2.0 * basis_value(BasisFamily::CosHalf, 0, t) +
                                       cplx(0, 1) * basis_value(BasisFamily::CosHalf, 3, t))),
              0.0, 1e-15);
  const Spectrum c = linear_combination(2.0, s, -1.0, s.scaled(2.0));
  EXPECT_NEAR(std::abs(c.expand(t)), 0.0, 1e-15);
}

TEST(Parse, NamesRoundTrip) {
  for (BasisFamily f : kFamilies) EXPECT_EQ(parse_family(to_string(f)), f);
  EXPECT_EQ(parse_operator("D"), BoundaryOperator::Dirichlet);
  EXPECT_EQ(parse_operator("impedance"), BoundaryOperator::Impedance);
  EXPECT_THROW(parse_operator("robin"), std::invalid_argument);
}
