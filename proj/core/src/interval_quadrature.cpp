#include "eop/interval_quadrature.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include "eop/errors.hpp"

namespace eop {

namespace {

constexpr double kU = 6.5;  // tanh-sinh truncation in the uniform variable

struct TsNode {
  double x, dlo, dhi, jac;
};

// Node at u; jac already includes the half-width factor. jac == 0 marks underflow.
TsNode ts_node(double u, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  const double v = 0.5 * std::numbers::pi * std::sinh(u);
  const double ch = std::cosh(v);
  TsNode n;
  n.dhi = 2.0 * half / (1.0 + std::exp(2.0 * v));
  n.dlo = 2.0 * half / (1.0 + std::exp(-2.0 * v));
  n.x = v < 0.0 ? lo + n.dlo : hi - n.dhi;
  n.jac = half * 0.5 * std::numbers::pi * std::cosh(u) / (ch * ch);
  if (!std::isfinite(n.jac)) n.jac = 0.0;
  return n;
}

bool usable(const TsNode& n) { return n.jac > 0.0 && n.dlo > 0.0 && n.dhi > 0.0; }

double checked(double v, double u) {
  if (std::isfinite(v)) return v;
  // far tails only hold underflowed weight
  if (std::abs(u) > 3.0) return 0.0;
  std::ostringstream os;
  os << "non-finite integrand at u = " << u;
  throw Error(ErrorKind::MomentDivergence, os.str());
}

// Kronrod 15 / Gauss 7 on [-1, 1], positive abscissae.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, k, g, abs, err;
  int side;
  bool operator<(const Segment& o) const { return err < o.err; }
};

}  // namespace

IntervalIntegral integrate_tanh_sinh(const IntervalFn& f, double lo, double hi, double tol) {
  if (!(hi > lo)) throw Error(ErrorKind::ParameterOutOfRange, "empty interval");
  IntervalIntegral r;
  double sum = 0.0, asum = 0.0;  // without the step factor
  auto add = [&](double u) {
    const TsNode n = ts_node(u, lo, hi);
    if (!usable(n)) return;
    const double v = checked(f(n.x, n.dlo, n.dhi), u) * n.jac;
    sum += v;
    asum += std::abs(v);
    ++r.evals;
  };
  double h = 0.5;
  add(0.0);
  for (long k = 1; k * h <= kU; ++k) {
    add(k * h);
    add(-k * h);
  }
  double prev = sum * h;
  for (int level = 2; level <= 14; ++level) {
    h *= 0.5;
    for (long k = 1; k * h <= kU; k += 2) {
      add(k * h);
      add(-k * h);
    }
    const double cur = sum * h;
    r.value = cur;
    r.l1 = asum * h;
    r.est_error = std::abs(cur - prev);
    if (level >= 4 && r.est_error <= tol * std::max(r.l1, 1e-300)) return r;
    prev = cur;
  }
  std::ostringstream os;
  os << "tanh-sinh did not converge: estimate " << r.value << ", change " << r.est_error;
  throw Error(ErrorKind::MomentDivergence, os.str());
}

IntervalIntegral integrate_adaptive(const IntervalFn& f, double lo, double hi, double tol) {
  if (!(hi > lo)) throw Error(ErrorKind::ParameterOutOfRange, "empty interval");
  const double half = 0.5 * (hi - lo);
  IntervalIntegral r;
  // th in [0, pi/2] is the angle from the hi end (side 0) or the lo end (side 1),
  // so both ends keep full resolution
  auto g = [&](double th, int side) {
    const double s = std::sin(0.5 * th), c = std::cos(0.5 * th);
    const double near = 2.0 * half * s * s, far = 2.0 * half * c * c;
    const double dhi = side == 0 ? near : far, dlo = side == 0 ? far : near;
    const double x = side == 0 ? hi - dhi : lo + dlo;
    if (dlo <= 0.0 || dhi <= 0.0) return 0.0;
    ++r.evals;
    const double v = f(x, dlo, dhi) * half * std::sin(th);
    if (!std::isfinite(v)) throw Error(ErrorKind::MomentDivergence, "non-finite integrand in adaptive quadrature");
    return v;
  };
  auto rule = [&](double a, double b, int side) {
    const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    double fv[15];
    fv[7] = g(c, side);
    double k = fv[7] * kWgk[7], gs = fv[7] * kWg[3], ab = std::abs(fv[7]) * kWgk[7];
    for (int i = 0; i < 7; ++i) {
      const double f1 = g(c - hl * kXgk[i], side), f2 = g(c + hl * kXgk[i], side);
      fv[i] = f1;
      fv[14 - i] = f2;
      k += kWgk[i] * (f1 + f2);
      ab += kWgk[i] * (std::abs(f1) + std::abs(f2));
      if (i % 2 == 1) gs += kWg[i / 2] * (f1 + f2);
    }
    // QUADPACK error scaling
    const double mean = 0.5 * k;
    double asc = kWgk[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i) asc += kWgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
    double err = std::abs(k - gs);
    if (asc > 0.0 && err > 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    return Segment{a, b, k * hl, gs * hl, ab * hl, err * hl, side};
  };
  std::priority_queue<Segment> q;
  double total = 0.0, err = 0.0, l1 = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Segment s = rule((i % 2) * std::numbers::pi / 4, (i % 2 + 1) * std::numbers::pi / 4, i / 2);
    total += s.k;
    err += s.err;
    l1 += s.abs;
    q.push(s);
  }
  for (int it = 0; it < 20000; ++it) {
    if (err <= tol * std::max(l1, 1e-300)) break;
    const Segment s = q.top();
    q.pop();
    const double m = 0.5 * (s.a + s.b);
    if (!(m > s.a && m < s.b)) break;
    const Segment s1 = rule(s.a, m, s.side), s2 = rule(m, s.b, s.side);
    total += s1.k + s2.k - s.k;
    err += s1.err + s2.err - s.err;
    l1 += s1.abs + s2.abs - s.abs;
    q.push(s1);
    q.push(s2);
  }
  r.value = total;
  r.l1 = l1;
  r.est_error = err;
  if (!(err <= std::max(tol * 1e3, 1e-9) * std::max(l1, 1e-300))) {
    std::ostringstream os;
    os << "adaptive quadrature did not converge: estimate " << total << ", error " << err;
    throw Error(ErrorKind::MomentDivergence, os.str());
  }
  return r;
}

IntervalIntegral integrate_dual(const IntervalFn& f, double lo, double hi, double agree_tol) {
  const IntervalIntegral a = integrate_tanh_sinh(f, lo, hi);
  const IntervalIntegral b = integrate_adaptive(f, lo, hi);
  const double scale = std::max(a.l1, 1e-300);
  if (std::abs(a.value - b.value) > agree_tol * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "quadrature routes disagree: tanh-sinh " << a.value << ", adaptive " << b.value;
    throw Error(ErrorKind::MomentDivergence, os.str());
  }
  IntervalIntegral r = a;
  r.est_error = std::max(a.est_error, std::abs(a.value - b.value));
  r.evals = a.evals + b.evals;
  return r;
}

DiscreteRule tanh_sinh_rule(const IntervalFn& weight, double lo, double hi, int level) {
  DiscreteRule r;
  const double h = std::ldexp(1.0, -level);
  const long K = static_cast<long>(std::floor(kU / h));
  for (long k = -K; k <= K; ++k) {
    const double u = k * h;
    const TsNode n = ts_node(u, lo, hi);
    if (!usable(n)) continue;
    const double w = checked(weight(n.x, n.dlo, n.dhi), u) * n.jac * h;
    if (w == 0.0) continue;
    r.x.push_back(n.x);
    r.dlo.push_back(n.dlo);
    r.dhi.push_back(n.dhi);
    r.w.push_back(w);
  }
  return r;
}

}  // namespace eop
