#include "eop/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eop/errors.hpp"

namespace eop {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// Largest supported period ratio after orientation; sin/cos of the theta
// arguments grow like exp(pi*r/2) at the rectangle edge.
constexpr double kMaxRatio = 100.0;

detail::ThetaData make_theta(double omega1, double tau) {
  detail::ThetaData t;
  t.rotated = tau < omega1;
  t.a = t.rotated ? tau : omega1;
  t.b = t.rotated ? omega1 : tau;
  const double r = t.b / t.a;
  if (r > kMaxRatio) {
    std::ostringstream os;
    os << "period ratio " << r << " exceeds " << kMaxRatio;
    throw Error(ErrorKind::ParameterOutOfRange, os.str());
  }
  int K = 1;
  while (K < 15 && kPi * r * double(K * K - K) < 46.0) ++K;
  t.nterms = K + 1;
  for (int n = 0; n < t.nterms; ++n) {
    const double h = n + 0.5;
    t.qh[n] = std::exp(-kPi * r * h * h);
    t.qs[n] = std::exp(-kPi * r * double(n) * double(n));
  }
  double th2 = 0, th3 = 1, th4 = 1, th1p = 0, th1ppp = 0;
  for (int n = 0; n < t.nterms; ++n) {
    const double sg = (n % 2 == 0) ? 1.0 : -1.0;
    const double m = 2.0 * n + 1.0;
    th2 += 2.0 * t.qh[n];
    th1p += 2.0 * sg * t.qh[n] * m;
    th1ppp += -2.0 * sg * t.qh[n] * m * m * m;
    if (n > 0) {
      th3 += 2.0 * t.qs[n];
      th4 += 2.0 * sg * t.qs[n];
    }
  }
  t.th1p0 = th1p;
  t.th2_0 = th2;
  t.th3_0 = th3;
  t.th4_0 = th4;
  const double C = kPi / (2.0 * t.a);
  const double c3 = C * C / 3.0;
  const double t2 = std::pow(th2, 4), t4 = std::pow(th4, 4);
  t.E1 = c3 * (t2 + 2.0 * t4);
  t.E2 = c3 * (t2 - t4);
  t.E3 = -c3 * (2.0 * t2 + t4);
  t.eta1 = -kPi * kPi * th1ppp / (12.0 * t.a * th1p);
  // Legendre relation in the working frame.
  t.eta3_im = (t.eta1 * t.b - kPi / 2.0) / t.a;
  return t;
}

struct WorkingValues {
  cplx D1, D2, D3;  // wp - E_k in the working frame
  cplx wp1;
  cplx zeta;
};

// Evaluate in the working frame at zw; zeta only when asked.
WorkingValues eval_working(cplx zw, const detail::ThetaData& t, double guard, bool want_zeta) {
  const double a = t.a, b = t.b;
  const double m = std::floor((zw.real() + a) / (2.0 * a));
  const double n = std::floor((zw.imag() + b) / (2.0 * b));
  const cplx z0 = zw - cplx(2.0 * a * m, 2.0 * b * n);
  if (std::abs(z0) < guard) {
    std::ostringstream os;
    os << "point lies within " << guard << " of a lattice point";
    throw Error(ErrorKind::PoleAt, os.str());
  }
  const double C = kPi / (2.0 * a);
  const cplx v = C * z0;
  cplx th1 = 0, th1d = 0, th2 = 0, th3 = 1, th4 = 1;
  for (int k = 0; k < t.nterms; ++k) {
    const double sg = (k % 2 == 0) ? 1.0 : -1.0;
    const double mm = 2.0 * k + 1.0;
    const cplx s = std::sin(mm * v);
    const cplx c = std::cos(mm * v);
    th1 += 2.0 * sg * t.qh[k] * s;
    th1d += 2.0 * sg * t.qh[k] * mm * c;
    th2 += 2.0 * t.qh[k] * c;
    if (k > 0) {
      const cplx c2 = std::cos(2.0 * k * v);
      th3 += 2.0 * t.qs[k] * c2;
      th4 += 2.0 * sg * t.qs[k] * c2;
    }
  }
  WorkingValues out;
  const cplx r2 = th2 / th1, r3 = th3 / th1, r4 = th4 / th1;
  const double C2 = C * C;
  out.D1 = C2 * (t.th3_0 * t.th4_0) * (t.th3_0 * t.th4_0) * r2 * r2;
  out.D2 = C2 * (t.th2_0 * t.th4_0) * (t.th2_0 * t.th4_0) * r3 * r3;
  out.D3 = C2 * (t.th2_0 * t.th3_0) * (t.th2_0 * t.th3_0) * r4 * r4;
  out.wp1 = -2.0 * C2 * C * t.th1p0 * t.th1p0 * r2 * r3 * r4;
  if (want_zeta) {
    const cplx eta3 = kI * t.eta3_im;
    out.zeta = t.eta1 * z0 / a + C * th1d / th1 + 2.0 * m * t.eta1 + 2.0 * n * eta3;
  }
  return out;
}

WpValues assemble(const WorkingValues& w, const detail::ThetaData& t, const RectLattice& lat) {
  WpValues out;
  if (!t.rotated) {
    out.d1 = w.D1;
    out.d2 = w.D2;
    out.d3 = w.D3;
    out.wp1 = w.wp1;
  } else {
    out.d1 = -w.D3;
    out.d2 = -w.D2;
    out.d3 = -w.D1;
    out.wp1 = -kI * w.wp1;
  }
  // Take wp from the nearest branch point for best absolute accuracy there.
  const double a1 = std::abs(out.d1), a2 = std::abs(out.d2), a3 = std::abs(out.d3);
  if (a1 <= a2 && a1 <= a3) {
    out.wp = lat.e1 + out.d1;
  } else if (a2 <= a3) {
    out.wp = lat.e2 + out.d2;
  } else {
    out.wp = lat.e3 + out.d3;
  }
  return out;
}

cplx to_working(cplx z, const detail::ThetaData& t) { return t.rotated ? kI * z : z; }

void check_finite(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::NonFinite, "argument is not finite");
}

}  // namespace

double agm(double a, double b) {
  for (int it = 0; it < 64; ++it) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    a = an;
    b = bn;
    if (std::abs(a - b) <= 1e-16 * a) break;
  }
  return 0.5 * (a + b);
}

double pole_guard(const RectLattice& lat) { return 1e-12 * 2.0 * std::min(lat.omega1, lat.tau); }

RectLattice lattice_from_half_periods(double omega1, double tau) {
  if (!std::isfinite(omega1) || !std::isfinite(tau) || omega1 <= 0.0 || tau <= 0.0)
    throw Error(ErrorKind::NonFinite, "half-periods must be finite and positive");
  RectLattice lat;
  lat.omega1 = omega1;
  lat.tau = tau;
  lat.theta = make_theta(omega1, tau);
  const auto& t = lat.theta;
  if (!t.rotated) {
    lat.e1 = t.E1;
    lat.e2 = t.E2;
    lat.e3 = t.E3;
    lat.eta1 = t.eta1;
    lat.eta3 = cplx(0.0, t.eta3_im);
  } else {
    lat.e1 = -t.E3;
    lat.e2 = -t.E2;
    lat.e3 = -t.E1;
    // zeta(z; L) = i zeta(iz; iL)
    lat.eta1 = -t.eta3_im;  // i * (i * eta3_im)
    lat.eta3 = cplx(0.0, -t.eta1);
  }
  lat.g2 = -4.0 * (lat.e1 * lat.e2 + lat.e2 * lat.e3 + lat.e3 * lat.e1);
  lat.g3 = 4.0 * lat.e1 * lat.e2 * lat.e3;
  const double p = (lat.e2 - lat.e3) * (lat.e3 - lat.e1) * (lat.e1 - lat.e2);
  lat.discriminant = 16.0 * p * p;
  return lat;
}

RectLattice lattice_from_branch_points(double e1, double e2, double e3) {
  if (!std::isfinite(e1) || !std::isfinite(e2) || !std::isfinite(e3))
    throw Error(ErrorKind::NonFinite, "branch points must be finite");
  const double scale = std::max({std::abs(e1), std::abs(e2), std::abs(e3)});
  if (!(e3 < e2 && e2 < e1)) throw Error(ErrorKind::BadOrdering, "need e3 < e2 < e1");
  if (std::abs(e1 + e2 + e3) > 1e-10 * scale)
    throw Error(ErrorKind::BadOrdering, "branch points must sum to zero");
  const double omega1 = kPi / (2.0 * agm(std::sqrt(e1 - e3), std::sqrt(e1 - e2)));
  const double tau = kPi / (2.0 * agm(std::sqrt(e1 - e3), std::sqrt(e2 - e3)));
  return lattice_from_half_periods(omega1, tau);
}

TorusPoint reduce_to_fundamental(cplx z, const RectLattice& lat) {
  const double p = 2.0 * lat.omega1, q = 2.0 * lat.tau;
  double x = z.real() - p * std::floor(z.real() / p);
  double y = z.imag() - q * std::floor(z.imag() / q);
  if (x >= p) x -= p;
  if (y >= q) y -= q;
  if (x < 0) x = 0;
  if (y < 0) y = 0;
  return {cplx(x, y)};
}

WpValues wp_all(cplx z, const RectLattice& lat) {
  check_finite(z);
  const auto& t = lat.theta;
  return assemble(eval_working(to_working(z, t), t, pole_guard(lat), false), t, lat);
}

cplx half_period(int k, const RectLattice& lat) {
  switch (k) {
    case 1: return {lat.omega1, 0.0};
    case 2: return {lat.omega1, lat.tau};
    case 3: return {0.0, lat.tau};
    default: return {0.0, 0.0};
  }
}

WpValues wp_all_near(int k, cplx dz, const RectLattice& lat) {
  const double radius = 0.5 * std::min(lat.omega1, lat.tau);
  if (k < 1 || k > 3 || dz == cplx(0.0) || std::abs(dz) >= radius) return wp_all(half_period(k, lat) + dz, lat);
  WpValues s;
  if (std::abs(dz) < 1e-3 * radius) {
    // Laurent series at the origin; the theta route would hit the pole guard.
    const cplx z2 = dz * dz;
    const cplx inv = 1.0 / z2;
    s.wp = inv + z2 * (lat.g2 / 20.0 + z2 * lat.g3 / 28.0);
    s.wp1 = -2.0 * inv / dz + dz * (lat.g2 / 10.0 + z2 * lat.g3 / 7.0);
    s.d1 = s.wp - lat.e1;
    s.d2 = s.wp - lat.e2;
    s.d3 = s.wp - lat.e3;
  } else {
    s = wp_all(dz, lat);
  }
  const double ek = lat.e(k);
  const int i = k == 1 ? 2 : 1;
  const int j = k == 3 ? 2 : 3;
  const double A = (ek - lat.e(i)) * (ek - lat.e(j));
  const cplx sk = s.d(k);
  WpValues out;
  const cplx dk = A / sk;
  out.d1 = k == 1 ? dk : dk + (ek - lat.e1);
  out.d2 = k == 2 ? dk : dk + (ek - lat.e2);
  out.d3 = k == 3 ? dk : dk + (ek - lat.e3);
  out.wp = ek + dk;
  out.wp1 = -A * s.wp1 / (sk * sk);
  return out;
}

namespace {

template <class F>
double bisect_monotone(F f, double lo, double hi, bool increasing, double x) {
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = f(mid);
    if ((v < x) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double wp_inverse_gamma2(double x, const RectLattice& lat) {
  if (!(x >= lat.e3 && x <= lat.e2)) throw Error(ErrorKind::OutOfInterval, "x outside [e3, e2]");
  if (x == lat.e3) return 0.0;
  if (x == lat.e2) return 0.5;
  auto f = [&](double t) {
    // measure from the nearer endpoint so wp - e is accurate
    if (t < 0.25) return lat.e3 + wp_all_near(3, cplx(2.0 * lat.omega1 * t, 0.0), lat).d3.real();
    return lat.e2 + wp_all_near(2, cplx(2.0 * lat.omega1 * (t - 0.5), 0.0), lat).d2.real();
  };
  return bisect_monotone(f, 0.0, 0.5, true, x);
}

double wp_inverse_gamma1(double x, const RectLattice& lat) {
  if (!(x >= lat.e1)) throw Error(ErrorKind::OutOfInterval, "x below e1");
  if (x == lat.e1) return 0.5;
  auto f = [&](double t) {
    if (t < 0.25) return wp_all(cplx(2.0 * lat.omega1 * t, 0.0), lat).wp.real();
    return lat.e1 + wp_all_near(1, cplx(2.0 * lat.omega1 * (t - 0.5), 0.0), lat).d1.real();
  };
  return bisect_monotone(f, 1e-300, 0.5, false, x);
}

cplx wp(cplx z, const RectLattice& lat) { return wp_all(z, lat).wp; }

cplx wp_prime(cplx z, const RectLattice& lat) { return wp_all(z, lat).wp1; }

cplx wp_second(cplx z, const RectLattice& lat) {
  const cplx p = wp(z, lat);
  return 6.0 * p * p - 0.5 * lat.g2;
}

cplx wp_third(cplx z, const RectLattice& lat) {
  const WpValues v = wp_all(z, lat);
  return 12.0 * v.wp * v.wp1;
}

cplx zeta_w(cplx z, const RectLattice& lat) {
  check_finite(z);
  const auto& t = lat.theta;
  const WorkingValues w = eval_working(to_working(z, t), t, pole_guard(lat), true);
  return t.rotated ? kI * w.zeta : w.zeta;
}

}  // namespace eop
