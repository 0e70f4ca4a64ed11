#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "eop/basis.hpp"
#include "eop/errors.hpp"
#include "eop/oprl.hpp"

using namespace eop;

namespace {

const RectLattice& square() {
  static const RectLattice lat = lattice_from_branch_points(1, 0, -1);
  return lat;
}

AnchorConfig anchor_omega1() { return make_anchor(cplx(square().omega1, 0), Contour::Gamma2, square()); }

APolyCoeffs coeffs(std::vector<cplx> lambda, const AnchorConfig& a = anchor_omega1()) {
  return {std::move(lambda), a, square()};
}

}  // namespace

TEST(Anchor, PlacementRules) {
  const auto& lat = square();
  EXPECT_NO_THROW(make_anchor(cplx(0.4, 0), Contour::Gamma2, lat));
  EXPECT_NO_THROW(make_anchor(cplx(0.4, lat.tau), Contour::Gamma1, lat));
  EXPECT_THROW(make_anchor(cplx(0.4, lat.tau), Contour::Gamma2, lat), Error);
  EXPECT_THROW(make_anchor(cplx(0.4, 0), Contour::Gamma1, lat), Error);
  EXPECT_THROW(make_anchor(cplx(0.0, 0), Contour::Gamma2, lat), Error);
  EXPECT_THROW(make_anchor(cplx(2 * lat.omega1, 0), Contour::Gamma2, lat), Error);
  EXPECT_THROW(make_anchor(cplx(0.4, 0.3), Contour::Gamma2, lat), Error);
  EXPECT_EQ(contour_from_string("gamma1"), Contour::Gamma1);
  EXPECT_STREQ(to_string(Contour::Gamma2), "gamma2");
  EXPECT_THROW(contour_from_string("gamma3"), Error);
}

TEST(Basis, ClosedFormsAtHalfPeriods) {
  const auto a = anchor_omega1();
  const auto& lat = square();
  EXPECT_NEAR(std::abs(basis_eval(1, lat.omega3(), a, lat)), 0.0, 1e-12);
  EXPECT_NEAR(basis_eval(2, lat.omega1, a, lat).real(), lat.e1, 1e-12);
  EXPECT_NEAR(basis_eval(0, cplx(0.3, 0.2), a, lat).real(), 1.0, 0.0);
  EXPECT_NEAR(std::abs(eval_apoly(coeffs({0, 1}), lat.omega3())), 0.0, 1e-12);
  EXPECT_NEAR(eval_apoly(coeffs({0, 0, 1}), lat.omega3()).real(), lat.e3, 1e-12);
  EXPECT_NEAR(eval_apoly(coeffs({1}), cplx(0.77, 0.31)).real(), 1.0, 0.0);
}

TEST(Basis, SymmetricAnchorFormOfB1) {
  // a = omega1: b1 = -wp' / (2 (wp - e1))
  const auto a = anchor_omega1();
  const auto& lat = square();
  for (cplx z : {cplx(0.3, 0.2), cplx(0.9, 1.1), cplx(2.0, 0.4)}) {
    const cplx expected = -0.5 * wp_prime(z, lat) / (wp(z, lat) - lat.e1);
    EXPECT_LT(std::abs(basis_eval(1, z, a, lat) - expected), 1e-11 * std::abs(expected));
  }
}

TEST(Basis, HigherElementsMatchDefinitions) {
  const auto& lat = square();
  const auto a = make_anchor(cplx(0.4, 0), Contour::Gamma2, lat);
  const cplx z(0.61, 0.83);
  const cplx p = wp(z, lat), p1 = wp_prime(z, lat);
  for (int k = 1; k <= 4; ++k) {
    EXPECT_LT(std::abs(basis_eval(2 * k, z, a, lat) - std::pow(p, k)), 1e-11 * std::abs(std::pow(p, k)));
    const cplx odd = -0.5 * p1 * std::pow(p, k - 1);
    EXPECT_LT(std::abs(basis_eval(2 * k + 1, z, a, lat) - odd), 1e-11 * std::abs(odd));
  }
}

TEST(Basis, B1FormulasAgreeProperty) {
  const auto& lat = square();
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (double ar : {0.4, 1.0, 1.3110287771460598}) {
    const BasisContext ctx(lat, make_anchor(cplx(ar, 0), Contour::Gamma2, lat));
    const cplx A = ctx.wp_a(), A1 = ctx.wp1_a();
    const cplx za = zeta_w(ar, lat);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
      const cplx z(2 * lat.omega1 * U(rng), 2 * lat.tau * U(rng));
      if (ctx.torus_distance(z, ar) < 1e-2 || ctx.torus_distance(z, -ar) < 1e-2 || ctx.torus_distance(z, 0) < 1e-2)
        continue;
      const cplx ratio = -0.5 * (wp_prime(z, lat) + A1) / (wp(z, lat) - A);
      const cplx zeta_form = zeta_w(z, lat) - zeta_w(z - ar, lat) - za;
      EXPECT_LE(std::abs(ratio - zeta_form), 1e-9 * std::max(1.0, std::abs(zeta_form)));
      EXPECT_LE(std::abs(ctx.b1(z) - zeta_form), 1e-9 * std::max(1.0, std::abs(zeta_form)));
      ++checked;
    }
    EXPECT_GT(checked, 900);
  }
}

TEST(Basis, ResiduesOfB1) {
  const auto& lat = square();
  const double ar = 0.4;
  const auto a = make_anchor(cplx(ar, 0), Contour::Gamma2, lat);
  // Richardson on eps b1(p + eps) with eps = 1e-5, 1e-6.
  auto residue = [&](cplx p) {
    const double e1 = 1e-5, e2 = 1e-6;
    const cplx r1 = e1 * basis_eval(1, p + e1, a, lat);
    const cplx r2 = e2 * basis_eval(1, p + e2, a, lat);
    return (e1 * r2 - e2 * r1) / (e1 - e2);
  };
  EXPECT_NEAR(residue(0.0).real(), 1.0, 1e-8);
  EXPECT_NEAR(residue(ar).real(), -1.0, 1e-8);
  EXPECT_THROW(basis_eval(1, ar, a, lat), Error);
  EXPECT_THROW(basis_eval(2, 0.0, a, lat), Error);
}

TEST(Basis, PeriodicityRealityAndParity) {
  const auto& lat = square();
  const BasisContext ctx(lat, anchor_omega1());
  BasisValues v, w, m;
  for (int i = 1; i < 60; ++i) {
    const double t = (i + 0.37) / 61.0;
    for (cplx z : {cplx(2 * lat.omega1 * t, 0), lat.omega3() + 2 * lat.omega1 * t}) {
      if (ctx.torus_distance(z, lat.omega1) < 1e-3) continue;
      ctx.eval(z, 9, v);
      ctx.eval(z + 2.0 * lat.omega1 + 2.0 * lat.omega3(), 9, w);
      ctx.eval(-z, 9, m);
      for (int j = 0; j <= 9; ++j) {
        EXPECT_LE(std::abs(v.b[j].imag()), 1e-10 * (1 + std::abs(v.b[j])));
        EXPECT_LE(std::abs(w.b[j] - v.b[j]), 1e-10 * (1 + std::abs(v.b[j])));
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        EXPECT_LE(std::abs(m.b[j] - sign * v.b[j]), 1e-10 * (1 + std::abs(v.b[j])));
      }
    }
  }
}

TEST(Basis, DerivativesMatchFiniteDifferences) {
  const auto& lat = square();
  const BasisContext ctx(lat, make_anchor(cplx(0.5, 0), Contour::Gamma2, lat));
  const cplx z(0.71, 0.44);
  const double h = 1e-5;
  BasisValues v, p, q;
  ctx.eval(z, 8, v, 2);
  ctx.eval(z + h, 8, p, 1);
  ctx.eval(z - h, 8, q, 1);
  for (int j = 1; j <= 8; ++j) {
    const cplx d1 = (p.b[j] - q.b[j]) / (2 * h);
    const cplx d2 = (p.db[j] - q.db[j]) / (2 * h);
    EXPECT_LE(std::abs(d1 - v.db[j]), 1e-7 * (1 + std::abs(d1))) << "j = " << j;
    EXPECT_LE(std::abs(d2 - v.d2b[j]), 1e-6 * (1 + std::abs(d2))) << "j = " << j;
  }
  const APolyCoeffs c{{0.3, -1.2, 0.7, 2.0, 1.0}, ctx.anchor(), lat};
  const cplx fd = (eval_apoly(c, z + h) - eval_apoly(c, z - h)) / (2 * h);
  EXPECT_LE(std::abs(eval_apoly_deriv(c, z, 1) - fd), 1e-7 * std::abs(fd));
  EXPECT_EQ(eval_apoly_deriv(c, z, 0), eval_apoly(c, z));
}

TEST(Basis, DegreeAndPoleBookkeeping) {
  EXPECT_FALSE(has_pole_at_a(coeffs({3, 0, 2})));
  EXPECT_TRUE(has_pole_at_a(coeffs({0, 1})));
  EXPECT_FALSE(has_pole_at_a(coeffs({1, 1e-10, 1})));

  auto l = laurent_leading(coeffs({5}));
  EXPECT_EQ(l.degree, 0);
  EXPECT_EQ(l.leading, cplx(5));
  l = laurent_leading(coeffs({1, 0, 2}));
  EXPECT_EQ(l.degree, 2);
  EXPECT_EQ(l.leading, cplx(2));
  l = laurent_leading(coeffs({1, 0, 2, 1e-12}));
  EXPECT_EQ(l.degree, 2);
  EXPECT_EQ(poly_degree({}), -1);
  try {
    laurent_leading(coeffs({0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroFunction);
  }
}

TEST(Basis, LeadingTermMatchesBehaviourAtOrigin) {
  // lambda_n z^{-n} dominates near 0
  const auto& lat = square();
  const auto a = make_anchor(cplx(0.5, 0), Contour::Gamma2, lat);
  const std::vector<std::vector<cplx>> cases = {{0, 1}, {1, 2, 3}, {0.5, 0, 1, -2}, {1, 1, 1, 1, 1, 0.25}};
  for (const auto& lam : cases) {
    const APolyCoeffs c{lam, a, lat};
    const auto lead = laurent_leading(c);
    const double z = 1e-4;
    const cplx fit = eval_apoly(c, z) * std::pow(z, lead.degree);
    EXPECT_LT(std::abs(fit - lead.leading), 1e-3 * std::abs(lead.leading));
  }
}

TEST(Basis, ExpansionIsLinear) {
  const auto& lat = square();
  const auto a = make_anchor(cplx(0.5, 0), Contour::Gamma2, lat);
  std::mt19937 rng(2);
  std::normal_distribution<double> N;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> x(7), y(7), s(7);
    for (int j = 0; j < 7; ++j) {
      x[j] = {N(rng), N(rng)};
      y[j] = {N(rng), N(rng)};
      s[j] = 2.0 * x[j] - y[j];
    }
    const cplx z(0.9 * N(rng), 0.7);
    const cplx lhs = eval_apoly({s, a, lat}, z);
    const cplx rhs = 2.0 * eval_apoly({x, a, lat}, z) - eval_apoly({y, a, lat}, z);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * (1 + std::abs(rhs)));
  }
}

TEST(Basis, PartsConversionReproducesFunction) {
  // P(wp) + b1 Q(wp) expanded in b_j
  const auto& lat = square();
  const auto a = make_anchor(cplx(0.6, 0), Contour::Gamma2, lat);
  const CPoly P{{1.0, -2.0, 0.5}};
  const CPoly Q{{0.3, 1.0}};
  const auto c = apoly_from_parts(P, Q, a, lat, 5);
  ASSERT_EQ(c.lambda.size(), 6u);
  const BasisContext ctx(lat, a);
  for (cplx z : {cplx(0.2, 0.4), cplx(1.7, 0.9)}) {
    const cplx x = wp(z, lat);
    const cplx expected = P(x) + ctx.b1(z) * Q(x);
    EXPECT_LT(std::abs(eval_apoly(c, z) - expected), 1e-11 * std::abs(expected));
  }
}
