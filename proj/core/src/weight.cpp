#include "eop/weight.hpp"

#include <cmath>
#include <sstream>

#include "eop/errors.hpp"

namespace eop {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::ParameterOutOfRange, msg);
}

double sqrt_cubic(double dlo, double dhi, double d1) { return std::sqrt(dlo * dhi * d1); }

bool on_first_half(cplx z, const RectLattice& lat) {
  const double p = 2.0 * lat.omega1;
  const double u = z.real() - p * std::floor(z.real() / p);
  return u <= lat.omega1;
}

}  // namespace

IntervalWeight jacobi_interval_weight(double lo, double hi, double alpha, double beta) {
  require(alpha > -1.0 && beta > -1.0, "Jacobi exponents must exceed -1");
  IntervalWeight w;
  w.lo = lo;
  w.hi = hi;
  w.eval = [alpha, beta](double, double dlo, double dhi) {
    const double a = alpha == 0.0 ? 1.0 : std::pow(dhi, alpha);
    const double b = beta == 0.0 ? 1.0 : std::pow(dlo, beta);
    return a * b;
  };
  std::ostringstream os;
  os << "jacobi(" << alpha << "," << beta << ")";
  w.name = os.str();
  return w;
}

IntervalWeight scaled_interval_weight(IntervalWeight base, std::function<double(double, double, double)> factor,
                                      std::string name) {
  IntervalWeight w;
  w.lo = base.lo;
  w.hi = base.hi;
  w.name = std::move(name);
  w.eval = [base, factor](double x, double dlo, double dhi) { return factor(x, dlo, dhi) * base.eval(x, dlo, dhi); };
  return w;
}

WeightSpec weight_unit() { return WeightSpec{}; }

WeightSpec weight_example_w(double alpha, double beta) {
  require(alpha > -1.0 && beta > -1.0, "ExampleW needs alpha, beta > -1");
  WeightSpec W;
  W.kind = WeightKind::ExampleW;
  W.alpha = alpha;
  W.beta = beta;
  return W;
}

WeightSpec weight_example_v(double alpha, double beta) {
  require(alpha > 0.0 && beta > 0.0, "ExampleV needs alpha, beta > 0");
  WeightSpec W;
  W.kind = WeightKind::ExampleV;
  W.alpha = alpha;
  W.beta = beta;
  return W;
}

WeightSpec weight_lifted_even(IntervalWeight w) {
  require(bool(w.eval), "LiftedEven needs an interval weight");
  WeightSpec W;
  W.kind = WeightKind::LiftedEven;
  W.w = std::move(w);
  return W;
}

WeightSpec weight_general_lift(IntervalWeight w, cplx a) {
  require(bool(w.eval), "GeneralLift needs an interval weight");
  WeightSpec W;
  W.kind = WeightKind::GeneralLift;
  W.w = std::move(w);
  W.a = a;
  return W;
}

WeightSpec weight_exp_decay(double c) {
  require(c > 0.0 && std::isfinite(c), "ExpDecay rate must be positive");
  WeightSpec W;
  W.kind = WeightKind::ExpDecay;
  W.c = c;
  W.vanishes_at_origin = true;
  return W;
}

WeightSpec weight_odd_perturbed(const WeightSpec& base, double eps) {
  require(std::isfinite(eps), "perturbation amplitude must be finite");
  WeightSpec W;
  W.kind = WeightKind::OddPerturbed;
  W.eps = eps;
  W.base = std::make_shared<const WeightSpec>(base);
  W.positive = base.positive;
  W.vanishes_at_origin = base.vanishes_at_origin;
  return W;
}

WeightSpec weight_user(std::function<cplx(cplx)> f, bool positive, bool vanishes_at_origin) {
  require(bool(f), "user weight needs an evaluator");
  WeightSpec W;
  W.kind = WeightKind::UserFunction;
  W.user = std::move(f);
  W.positive = positive;
  W.vanishes_at_origin = vanishes_at_origin;
  return W;
}

std::string WeightSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case WeightKind::Unit: os << "unit"; break;
    case WeightKind::ExampleW: os << "exampleW(alpha=" << alpha << ",beta=" << beta << ")"; break;
    case WeightKind::ExampleV: os << "exampleV(alpha=" << alpha << ",beta=" << beta << ")"; break;
    case WeightKind::LiftedEven: os << "liftedEven(" << w.name << ")"; break;
    case WeightKind::GeneralLift: os << "generalLift(" << w.name << ",a=" << a.real() << "+" << a.imag() << "i)"; break;
    case WeightKind::ExpDecay: os << "expDecay(c=" << c << ")"; break;
    case WeightKind::OddPerturbed: os << "oddPerturbed(" << (base ? base->describe() : "?") << ",eps=" << eps << ")"; break;
    case WeightKind::UserFunction: os << "user"; break;
  }
  return os.str();
}

bool weight_is_even(const WeightSpec& W) {
  switch (W.kind) {
    case WeightKind::OddPerturbed: return W.eps == 0.0 && W.base && weight_is_even(*W.base);
    case WeightKind::UserFunction: return false;
    default: return true;
  }
}

cplx weight_eval_at(const WeightSpec& W, cplx z, const WpValues& v, const RectLattice& lat) {
  switch (W.kind) {
    case WeightKind::Unit: return 1.0;
    case WeightKind::ExampleW:
      return std::pow(std::abs(v.d2), W.alpha + 0.5) * std::pow(std::abs(v.d3), W.beta + 0.5) *
             std::sqrt(std::abs(v.d1));
    case WeightKind::ExampleV:
      return std::pow(std::abs(v.d2), W.alpha - 0.5) * std::pow(std::abs(v.d3), W.beta - 0.5) *
             std::pow(std::abs(v.d1), 1.5);
    case WeightKind::LiftedEven: {
      const double x = v.wp.real();
      const double val = 0.5 * W.w(x, v.d3.real(), -v.d2.real()) * v.wp1.real();
      return on_first_half(z, lat) ? val : -val;
    }
    case WeightKind::GeneralLift: {
      const double x = v.wp.real();
      const cplx wpa = wp(W.a, lat);
      return (wpa - v.wp) * W.w(x, v.d3.real(), -v.d2.real()) *
             std::sqrt(std::abs(v.d1 * v.d2 * v.d3));
    }
    case WeightKind::ExpDecay: return std::exp(-W.c * v.d1);
    case WeightKind::OddPerturbed: {
      const cplx b1 = -0.5 * v.wp1 / v.d1;
      return weight_eval_at(*W.base, z, v, lat) * (1.0 + W.eps * b1);
    }
    case WeightKind::UserFunction: return W.user(z);
  }
  throw Error(ErrorKind::EvaluationFailure, "unknown weight kind");
}

cplx weight_eval(const WeightSpec& W, cplx z, const RectLattice& lat) {
  if (W.kind == WeightKind::LiftedEven && !on_first_half(z, lat)) {
    const cplx zr = 2.0 * lat.omega2() - z;
    return weight_eval(W, zr, lat);
  }
  return weight_eval_at(W, z, wp_all(z, lat), lat);
}

WeightPair weight_pair_at_x(const WeightSpec& W, double x, double dlo, double dhi, const RectLattice& lat) {
  if (!(dlo >= 0.0 && dhi >= 0.0)) throw Error(ErrorKind::OutOfInterval, "x outside [e3, e2]");
  const double d1 = lat.e1 - x;
  const double s = sqrt_cubic(dlo, dhi, d1);
  switch (W.kind) {
    case WeightKind::Unit: return {1.0, 1.0};
    case WeightKind::ExampleW: {
      const double v = std::pow(dhi, W.alpha + 0.5) * std::pow(dlo, W.beta + 0.5) * std::sqrt(d1);
      return {v, v};
    }
    case WeightKind::ExampleV: {
      const double v = std::pow(dhi, W.alpha - 0.5) * std::pow(dlo, W.beta - 0.5) * std::pow(d1, 1.5);
      return {v, v};
    }
    case WeightKind::LiftedEven: {
      const double v = W.w(x, dlo, dhi) * s;
      return {v, v};
    }
    case WeightKind::GeneralLift: {
      const double v = (wp(W.a, lat).real() - x) * W.w(x, dlo, dhi) * s;
      return {v, v};
    }
    case WeightKind::ExpDecay: {
      const double v = std::exp(W.c * d1);
      return {v, v};
    }
    case WeightKind::OddPerturbed: {
      const WeightPair b = weight_pair_at_x(*W.base, x, dlo, dhi, lat);
      const double b1 = s / d1;  // b1 for the anchor omega1 at the first-half preimage
      return {b.plus * (1.0 + W.eps * b1), b.minus * (1.0 - W.eps * b1)};
    }
    case WeightKind::UserFunction: {
      const double t = wp_inverse_gamma2(x, lat);
      const cplx z = lat.omega3() + 2.0 * lat.omega1 * t;
      return {W.user(z).real(), W.user(-z).real()};
    }
  }
  throw Error(ErrorKind::EvaluationFailure, "unknown weight kind");
}

}  // namespace eop
