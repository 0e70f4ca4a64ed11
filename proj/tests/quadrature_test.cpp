#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "eop/errors.hpp"
#include "eop/io.hpp"
#include "eop/quadrature.hpp"

using namespace eop;

namespace {

const RectLattice& square() {
  static const RectLattice lat = lattice_from_branch_points(1, 0, -1);
  return lat;
}

ContourGrid plain_grid(Contour g = Contour::Gamma2) {
  ContourGrid grid;
  grid.gamma = g;
  grid.map_order = 0;
  return grid;
}

}  // namespace

TEST(ContourIntegral, ConstantAndWp) {
  const auto& lat = square();
  for (int order : {0, 6}) {
    auto g = plain_grid();
    g.map_order = order;
    const auto one = contour_integral([](cplx) { return cplx(1.0); }, g, lat);
    EXPECT_NEAR(one.value.real(), 2 * lat.omega1, 1e-12);
    // int wp over gamma2 = -(zeta(z0 + 2 omega1) - zeta(z0))
    const cplx z0 = lat.omega3() + 0.1;
    const cplx oracle = -(zeta_w(z0 + 2.0 * lat.omega1, lat) - zeta_w(z0, lat));
    const auto r = contour_integral([&](cplx z) { return wp(z, lat); }, g, lat);
    EXPECT_LT(std::abs(r.value - oracle), 1e-11);
    EXPECT_LT(std::abs(r.value + 2.0 * lat.eta1), 1e-11);
    EXPECT_GE(r.N, 64);
  }
}

TEST(ContourIntegral, OddIntegrandVanishes) {
  const auto& lat = square();
  const BasisContext ctx(lat, make_anchor(lat.omega1, Contour::Gamma2, lat));
  const auto r = contour_integral([&](cplx z) { return ctx.b1(z); }, plain_grid(), lat);
  EXPECT_LT(std::abs(r.value), 1e-11);
}

TEST(ContourIntegral, SpectralConvergenceOfPlainTrapezoid) {
  const auto& lat = lattice_from_half_periods(0.5, 0.75);
  const cplx exact = -2.0 * lat.eta1;
  double prev = 1.0;
  for (int N = 8; N <= 256; N *= 2) {
    auto g = plain_grid();
    cplx sum = 0.0;
    for (const auto& node : contour_nodes(g, lat, N, false)) sum += wp(node.z, lat) * node.jac / double(N);
    const double err = std::abs(sum - exact);
    if (prev < 1e-3 && err > 1e-13) EXPECT_LE(err, prev);
    if (N >= 32 && err > 1e-13) EXPECT_LT(err, 0.1 * prev) << "N = " << N;
    prev = err;
  }
  EXPECT_LT(prev, 1e-12);
}

TEST(ContourIntegral, ExampleWeightMassMatchesBetaFunction) {
  // int_{gamma2} W dz = int_{e3}^{e2} (e2 - x)^alpha (x - e3)^beta dx
  for (const auto& lat : {square(), lattice_from_half_periods(0.5, 0.75)}) {
    for (auto [al, be] : {std::pair{0.0, 0.0}, {0.5, 0.5}, {1.0, 2.0}, {-0.3, 0.4}}) {
      const auto W = weight_example_w(al, be);
      const auto g = default_grid(Contour::Gamma2, lat, W);
      const auto r = contour_integral([&](cplx z) { return weight_eval(W, z, lat); }, g, lat);
      const double L = lat.e2 - lat.e3;
      const double oracle = std::pow(L, al + be + 1) * boost::math::beta(al + 1, be + 1);
      EXPECT_NEAR(r.value.real(), oracle, 1e-10 * oracle) << al << " " << be;
    }
  }
}

TEST(ContourIntegral, Gamma1ExpDecayAgainstRealLineIntegral) {
  // 2 int_0^inf exp(-c u^2) / sqrt((u^2 + e1 - e2)(u^2 + e1 - e3)) du
  const auto lat = lattice_from_half_periods(0.5, 0.75);
  const double c = 0.7;
  const auto W = weight_exp_decay(c);
  const auto g = default_grid(Contour::Gamma1, lat, W);
  EXPECT_EQ(g.delta, 0.0);
  const auto r = contour_integral([&](cplx z) { return weight_eval(W, z, lat); }, g, lat);
  boost::math::quadrature::exp_sinh<double> es;
  const double oracle = 2 * es.integrate([&](double u) {
    return std::exp(-c * u * u) / std::sqrt((u * u + lat.e1 - lat.e2) * (u * u + lat.e1 - lat.e3));
  });
  EXPECT_NEAR(r.value.real(), oracle, 1e-10 * oracle);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-12);
}

TEST(ContourIntegral, ToleranceNotMetCarriesNodeCount) {
  const auto& lat = square();
  auto g = plain_grid();
  g.N_max = 256;
  // jump at t = 0.3001
  auto f = [&](cplx z) { return cplx((z.real() < 2 * lat.omega1 * 0.3001) ? 1.0 : 0.0); };
  try {
    contour_integral(f, g, lat);
    FAIL() << "expected ToleranceNotMet";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ToleranceNotMet);
    EXPECT_EQ(e.index(), 256);
  }
}

TEST(ContourIntegral, DeterministicAtFixedGrid) {
  const auto lat = lattice_from_half_periods(0.5, 0.75);
  const auto W = weight_example_w(0.5, 0.5);
  const auto g = default_grid(Contour::Gamma2, lat, W);
  auto f = [&](cplx z) { return weight_eval(W, z, lat) * wp(z, lat); };
  const auto a = contour_integral(f, g, lat);
  const auto b = contour_integral(f, g, lat);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.N, b.N);
  EXPECT_EQ(integral_to_json(a), integral_to_json(b));
}

TEST(Bimoments, UnitWeightValues) {
  const auto& lat = square();
  const auto A = make_anchor(lat.omega1, Contour::Gamma2, lat);
  const auto W = weight_unit();
  const auto g = plain_grid();
  EXPECT_NEAR(bimoment(0, 0, W, A, lat, g).real(), 2 * lat.omega1, 1e-12);
  EXPECT_NEAR(bimoment(0, 2, W, A, lat, g).real(), -2 * lat.eta1, 1e-11);
  EXPECT_LT(std::abs(bimoment(0, 1, W, A, lat, g)), 1e-11);
}

TEST(Bimoments, EvenMomentsAreJacobiMoments) {
  // mu_{2i,2j} = int x^{i+j} (e2 - x)^alpha (x - e3)^beta dx on [e3, e2]
  const auto lat = lattice_from_half_periods(0.5, 0.75);
  const double al = 0.5, be = 1.0;
  const auto W = weight_example_w(al, be);
  const auto A = make_anchor(0.3, Contour::Gamma2, lat);
  const BasisContext ctx(lat, A);
  const auto m = moment_matrices(W, ctx, default_grid(Contour::Gamma2, lat, W), 7, true);
  boost::math::quadrature::tanh_sinh<double> ts;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) {
      const double oracle = ts.integrate(
          [&](double x) { return std::pow(x, i + j) * std::pow(lat.e2 - x, al) * std::pow(x - lat.e3, be); }, lat.e3,
          lat.e2);
      const cplx mu = m.mu(2 * i, 2 * j);
      EXPECT_NEAR(mu.real(), oracle, 1e-10 * (1 + std::abs(oracle))) << i << "," << j;
      const double with_wp = ts.integrate(
          [&](double x) { return std::pow(x, i + j + 1) * std::pow(lat.e2 - x, al) * std::pow(x - lat.e3, be); },
          lat.e3, lat.e2);
      EXPECT_NEAR(m.wp_mu(2 * i, 2 * j).real(), with_wp, 1e-10 * (1 + std::abs(with_wp)));
    }
}

TEST(Bimoments, SymmetricRealPositiveDefinite) {
  const auto& lat = square();
  for (double ar : {lat.omega1, 0.5}) {
    const auto A = make_anchor(ar, Contour::Gamma2, lat);
    const BasisContext ctx(lat, A);
    for (const auto& W : {weight_example_w(0, 0), weight_example_w(0.5, -0.5), weight_example_v(1, 1)}) {
      const auto m = moment_matrices(W, ctx, default_grid(Contour::Gamma2, lat, W), 8, false);
      for (int k = 1; k <= 8; ++k) {
        const Eigen::MatrixXcd blk = m.mu.topLeftCorner(k, k);
        EXPECT_EQ((blk - blk.transpose()).norm(), 0.0);
        EXPECT_LE(blk.imag().norm(), 1e-10 * blk.norm());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk.real());
        EXPECT_GT(es.eigenvalues().minCoeff(), 0.0) << "k = " << k;
      }
    }
  }
}

TEST(Weights, ClosedFormValues) {
  const auto& lat = square();
  const auto W = weight_example_w(0.3, 0.2);
  EXPECT_NEAR(std::abs(weight_eval(W, lat.omega2(), lat)), 0.0, 1e-12);
  const auto Wm = weight_example_w(-0.5, -0.5);
  for (double t : {0.1, 0.37, 0.8}) {
    const cplx z = lat.omega3() + 2 * lat.omega1 * t;
    EXPECT_NEAR(weight_eval(Wm, z, lat).real(), std::sqrt(1 - wp(z, lat).real()), 1e-12);
  }
  const auto L = weight_lifted_even(jacobi_interval_weight(lat.e3, lat.e2, 0.5, 1.5));
  EXPECT_NEAR(weight_eval(L, lat.omega3() + 0.3, lat).real(),
              weight_eval(L, lat.omega3() + 2 * lat.omega1 - 0.3, lat).real(), 1e-15);
  EXPECT_GT(weight_eval(L, lat.omega3() + 0.3, lat).real(), 0.0);
  EXPECT_THROW(weight_example_w(-1.0, 0.0), Error);
  EXPECT_THROW(weight_example_v(0.0, 1.0), Error);
  EXPECT_THROW(weight_exp_decay(-1.0), Error);
  EXPECT_TRUE(weight_is_even(W));
  EXPECT_FALSE(weight_is_even(weight_odd_perturbed(W, 0.1)));
}

TEST(Weights, PositivityReport) {
  const auto& lat = square();
  const auto W = weight_example_w(-0.7, 0.2);
  const auto g = default_grid(Contour::Gamma2, lat, W);
  EXPECT_EQ(g.N_max, 1 << 22);
  auto rep = check_weight_positivity(W, lat, g);
  EXPECT_TRUE(rep.real);
  EXPECT_TRUE(rep.positive);
  const auto bad = weight_user([&](cplx z) { return wp(z, lat) + 0.5; }, true);
  rep = check_weight_positivity(bad, lat, default_grid(Contour::Gamma2, lat, bad));
  EXPECT_FALSE(rep.positive);
  const auto cplxw = weight_user([](cplx z) { return cplx(1.0, 1e-3 * z.real()); }, true);
  rep = check_weight_positivity(cplxw, lat, default_grid(Contour::Gamma2, lat, cplxw));
  EXPECT_FALSE(rep.real);
}

TEST(Weights, Gamma1IndentationDiagnostic) {
  const auto lat = lattice_from_half_periods(0.5, 0.75);
  const auto W = weight_unit();
  const auto g = default_grid(Contour::Gamma1, lat, W);
  EXPECT_NEAR(g.delta, lat.tau / 10, 1e-15);
  // wp has a double pole without residue, so up and down agree
  EXPECT_LT(indentation_discrepancy([&](cplx z) { return wp(z, lat); }, g, lat), 1e-9);
  // b1 has residue 1 at the origin: the two representatives differ by 2 pi i
  const BasisContext ctx(lat, make_anchor(cplx(0.3, lat.tau), Contour::Gamma1, lat));
  const double d = indentation_discrepancy([&](cplx z) { return ctx.b1(z); }, g, lat);
  EXPECT_NEAR(d, 2 * M_PI, 1e-8);
}

TEST(Smoothing, MapIsMonotoneAndFixesHalfPoints) {
  for (int order : {0, 2, 6}) {
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
      double d = 0.0;
      const double s = i / 100.0;
      const double t = smoothing_map(s, order, &d);
      EXPECT_GE(t, prev);
      EXPECT_GE(d, 0.0);
      prev = t;
    }
    EXPECT_NEAR(smoothing_map(0.5, order), 0.5, 1e-15);
    EXPECT_NEAR(smoothing_map(1.0, order), 1.0, 1e-15);
  }
}
