#pragma once

#include <functional>
#include <memory>
#include <string>

#include "eop/lattice.hpp"

namespace eop {

// A weight on a real interval [lo, hi]. The evaluator receives the distances
// to both endpoints so that algebraic endpoint factors stay accurate.
struct IntervalWeight {
  double lo = -1.0, hi = 1.0;
  std::function<double(double x, double dlo, double dhi)> eval;
  std::string name = "custom";

  double operator()(double x) const { return eval(x, x - lo, hi - x); }
  double operator()(double x, double dlo, double dhi) const { return eval(x, dlo, dhi); }
};

// (hi - x)^alpha (x - lo)^beta, the Jacobi weight in the orientation used for
// |x|^alpha (1 + x)^beta on [-1, 0].
IntervalWeight jacobi_interval_weight(double lo, double hi, double alpha, double beta);
// x -> factor(x) * base(x)
IntervalWeight scaled_interval_weight(IntervalWeight base, std::function<double(double, double, double)> factor,
                                      std::string name);

enum class WeightKind { Unit, ExampleW, ExampleV, LiftedEven, GeneralLift, ExpDecay, OddPerturbed, UserFunction };

struct WeightSpec {
  WeightKind kind = WeightKind::Unit;
  double alpha = 0.0, beta = 0.0;  // ExampleW / ExampleV
  double c = 1.0;                  // ExpDecay rate
  double eps = 0.0;                // OddPerturbed amplitude
  cplx a{};                        // GeneralLift anchor
  IntervalWeight w;                // LiftedEven / GeneralLift
  std::shared_ptr<const WeightSpec> base;  // OddPerturbed
  std::function<cplx(cplx)> user;          // UserFunction
  bool positive = true;            // asserted real-positive on the contour
  bool vanishes_at_origin = false;  // integrable against the pole of b_j at 0 without indentation

  std::string describe() const;
};

WeightSpec weight_unit();
WeightSpec weight_example_w(double alpha, double beta);
WeightSpec weight_example_v(double alpha, double beta);
WeightSpec weight_lifted_even(IntervalWeight w);
WeightSpec weight_general_lift(IntervalWeight w, cplx a);
WeightSpec weight_exp_decay(double c);
WeightSpec weight_odd_perturbed(const WeightSpec& base, double eps);
WeightSpec weight_user(std::function<cplx(cplx)> f, bool positive, bool vanishes_at_origin = false);

// Evaluation from precomputed kernel values at z.
cplx weight_eval_at(const WeightSpec& W, cplx z, const WpValues& v, const RectLattice& lat);
cplx weight_eval(const WeightSpec& W, cplx z, const RectLattice& lat);

// True when W(z) only depends on wp(z) and |wp'(z)| on gamma2.
bool weight_is_even(const WeightSpec& W);

// (W(z), W(-z)) where z is the preimage of x on the first half of gamma2.
struct WeightPair {
  double plus, minus;  // W(z), W(-z)
};
WeightPair weight_pair_at_x(const WeightSpec& W, double x, double dlo, double dhi, const RectLattice& lat);

}  // namespace eop
