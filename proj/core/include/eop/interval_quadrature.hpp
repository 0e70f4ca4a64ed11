#pragma once

#include <functional>
#include <vector>

namespace eop {

// Integrand on [lo, hi] receiving the distances to both endpoints.
using IntervalFn = std::function<double(double x, double dlo, double dhi)>;

struct IntervalIntegral {
  double value = 0.0;
  double l1 = 0.0;  // integral of |f|
  double est_error = 0.0;
  int evals = 0;
};

// Double-exponential (tanh-sinh) mapped trapezoid, step halving until two levels
// agree to tol * l1. Throws MomentDivergence.
IntervalIntegral integrate_tanh_sinh(const IntervalFn& f, double lo, double hi, double tol = 1e-13);

// Adaptive Gauss-Kronrod 7/15 bisection in theta with x = mid + half cos(theta).
IntervalIntegral integrate_adaptive(const IntervalFn& f, double lo, double hi, double tol = 1e-12);

// Both routes; they must agree to agree_tol * l1, else MomentDivergence with both values.
IntervalIntegral integrate_dual(const IntervalFn& f, double lo, double hi, double agree_tol = 1e-8);

// Converged tanh-sinh rule (nodes, endpoint distances, weights) for a weight
// function: sum w_i p(x_i) reproduces the integral of p * weight.
struct DiscreteRule {
  std::vector<double> x, dlo, dhi, w;
};
DiscreteRule tanh_sinh_rule(const IntervalFn& weight, double lo, double hi, int level);

}  // namespace eop
