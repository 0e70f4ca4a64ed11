#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "eop/errors.hpp"
#include "eop/interval_quadrature.hpp"

using namespace eop;

namespace {

IntervalFn jacobi(double a, double b) {
  // (hi - x)^a (x - lo)^b from the endpoint distances
  return [=](double, double dlo, double dhi) { return std::pow(dhi, a) * std::pow(dlo, b); };
}

void expect_kind(const std::function<void()>& f, ErrorKind kind) {
  try {
    f();
    ADD_FAILURE() << "no exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(IntervalQuadrature, BetaIntegrals) {
  const double exps[] = {-0.9, -0.5, 0.0, 0.5, 1.0, 2.5};
  for (double a : exps) {
    for (double b : exps) {
      const double want = boost::math::beta(a + 1, b + 1) * std::pow(2.0, a + b + 1);
      const auto ts = integrate_tanh_sinh(jacobi(a, b), -1, 1);
      const auto ad = integrate_adaptive(jacobi(a, b), -1, 1);
      EXPECT_NEAR(ts.value, want, 1e-12 * want) << a << " " << b;
      EXPECT_NEAR(ad.value, want, 1e-10 * want) << a << " " << b;
      EXPECT_NEAR(ts.l1, want, 1e-12 * want);
      EXPECT_GT(ts.evals, 0);
      const auto du = integrate_dual(jacobi(a, b), -1, 1);
      EXPECT_NEAR(du.value, want, 1e-10 * want);
    }
  }
}

TEST(IntervalQuadrature, SmoothAgainstGaussKronrod) {
  auto g = [](double x) { return std::exp(x) * std::cos(3 * x); };
  const double want = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, -0.3, 2.0, 15, 1e-15);
  IntervalFn f = [&](double x, double, double) { return g(x); };
  EXPECT_NEAR(integrate_tanh_sinh(f, -0.3, 2.0).value, want, 1e-13);
  EXPECT_NEAR(integrate_adaptive(f, -0.3, 2.0).value, want, 1e-12);
  // l1 sees the cancellation
  EXPECT_GT(integrate_tanh_sinh(f, -0.3, 2.0).l1, std::abs(want));
}

TEST(IntervalQuadrature, Divergent) {
  const IntervalFn f = [](double, double dlo, double) { return 1.0 / std::pow(dlo, 1.5); };
  expect_kind([&] { integrate_dual(f, 0, 1); }, ErrorKind::MomentDivergence);
  expect_kind([&] { integrate_tanh_sinh(jacobi(0, 0), 1, 1); }, ErrorKind::ParameterOutOfRange);
  expect_kind([&] { integrate_adaptive(jacobi(0, 0), 2, 1); }, ErrorKind::ParameterOutOfRange);
}

TEST(IntervalQuadrature, DiscreteRuleMoments) {
  const double a = 0.5, b = -0.5;
  const auto rule = tanh_sinh_rule(jacobi(a, b), -1, 0, 6);
  ASSERT_EQ(rule.x.size(), rule.w.size());
  ASSERT_EQ(rule.x.size(), rule.dlo.size());
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    EXPECT_GE(rule.x[i], -1.0);
    EXPECT_LE(rule.x[i], 0.0);
    EXPECT_NEAR(rule.dlo[i] + rule.dhi[i], 1.0, 1e-15);
  }
  // int_{-1}^0 (1+x)^k (-x)^a (1+x)^b dx = B(a+1, b+k+1)
  for (int k = 0; k <= 10; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * std::pow(rule.dlo[i], k);
    const double want = boost::math::beta(a + 1, b + k + 1);
    EXPECT_NEAR(s, want, 1e-12 * want) << k;
  }
}
