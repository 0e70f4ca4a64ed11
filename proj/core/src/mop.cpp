#include "eop/mop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eop/errors.hpp"
#include "eop/interval_quadrature.hpp"

namespace eop {

namespace {

Poly real_part(const CPoly& p) {
  Poly r;
  for (const auto& v : p.c) r.c.push_back(v.real());
  if (r.c.empty()) r.c.push_back(0.0);
  return r;
}

double sup_norm(const CPoly& p) {
  double m = 0.0;
  for (const auto& v : p.c) m = std::max(m, std::abs(v));
  return m;
}

void require_real_anchor(const EopFamily& fam, double& A, double& h) {
  if (fam.anchor.gamma != Contour::Gamma2)
    throw Error(ErrorKind::ParameterOutOfRange, "the decomposition conditions need a gamma2 family");
  const BasisContext ctx(fam.lattice, fam.anchor);
  if (std::abs(fam.anchor.a.imag()) > 1e-14 * fam.lattice.omega1)
    throw Error(ErrorKind::ParameterOutOfRange, "the decomposition conditions need an anchor on gamma1");
  A = ctx.wp_a().real();
  h = 0.5 * ctx.wp1_a().real();
}

}  // namespace

double MopResiduals::max() const {
  double m = r3_applicable ? r3 : 0.0;
  for (double v : r1) m = std::max(m, v);
  for (double v : r2) m = std::max(m, v);
  return m;
}

Decomposition decompose(const APolyCoeffs& c) {
  if (c.lambda.empty()) throw Error(ErrorKind::ParameterOutOfRange, "empty coefficient vector");
  const BasisContext ctx(c.lattice, c.anchor);
  Decomposition d;
  d.n = static_cast<int>(c.lambda.size()) - 1;
  d.m = d.n / 2;
  d.k = d.n - 2 * d.m;
  d.wpa = ctx.wp_a();
  d.h = 0.5 * ctx.wp1_a();
  for (int j = 0; 2 * j <= d.n; ++j) d.p1.c.push_back(c.lambda[2 * j]);
  for (int j = 0; 2 * j + 3 <= d.n; ++j) d.p3.c.push_back(c.lambda[2 * j + 3]);
  if (d.p3.c.empty()) d.p3.c.push_back(0.0);
  const cplx l1 = d.n >= 1 ? c.lambda[1] : cplx(0.0);
  d.p2 = CPoly::constant(l1) + CPoly(std::vector<cplx>{-d.wpa, 1.0}) * d.p3;
  d.q = d.p1 * CPoly(std::vector<cplx>{d.wpa, -1.0}) + CPoly::constant(d.h * d.p2(d.wpa));
  return d;
}

cplx eval_decomposition(const Decomposition& d, const BasisContext& ctx, cplx z) {
  const WpValues v = wp_all(z, ctx.lattice());
  return d.p1(v.wp) + ctx.b1(z) * d.p2(v.wp) + d.h * d.p3(v.wp);
}

double w_pm(int j, int sign, double x, double dlo, double dhi, const WeightSpec& W, double wpa,
            const RectLattice& lat) {
  if (j < -1 || j > 1 || (sign != 1 && sign != -1)) throw Error(ErrorKind::ParameterOutOfRange, "w_pm index");
  if (!(dlo > 0.0 && dhi > 0.0)) throw Error(ErrorKind::OutOfInterval, "x must lie inside (e3, e2)");
  const WeightPair p = weight_pair_at_x(W, x, dlo, dhi, lat);
  const double s = std::sqrt(dlo * dhi * (lat.e1 - x));
  const double sj = j == 0 ? 1.0 : (j == 1 ? s : 1.0 / s);
  return sj * 0.5 * (p.plus + sign * p.minus) / (wpa - x);
}

double w_pm(int j, int sign, double x, const WeightSpec& W, double wpa, const RectLattice& lat) {
  return w_pm(j, sign, x, x - lat.e3, lat.e2 - x, W, wpa, lat);
}

IntervalWeight w_pm_weight(int j, int sign, const WeightSpec& W, double wpa, const RectLattice& lat) {
  IntervalWeight w;
  w.lo = lat.e3;
  w.hi = lat.e2;
  std::ostringstream os;
  os << "w_" << j << (sign > 0 ? "+" : "-");
  w.name = os.str();
  w.eval = [=](double x, double dlo, double dhi) { return w_pm(j, sign, x, dlo, dhi, W, wpa, lat); };
  return w;
}

MopResiduals mop_residuals(const EopFamily& fam, int n) {
  if (n < 0 || n > fam.maxN) throw Error(ErrorKind::ParameterOutOfRange, "degree outside the family");
  double A, h;
  require_real_anchor(fam, A, h);
  const Decomposition d = decompose(fam.F[n]);
  const Poly q = real_part(d.q), p2 = real_part(d.p2);
  const RectLattice& lat = fam.lattice;
  const WeightSpec& W = fam.weight;
  struct Ws {
    double m1p, m0m, p1p;
  };
  auto ws = [&](double x, double dlo, double dhi) {
    const WeightPair p = weight_pair_at_x(W, x, dlo, dhi, lat);
    const double s = std::sqrt(dlo * dhi * (lat.e1 - x));
    const double plus = 0.5 * (p.plus + p.minus) / (A - x), minus = 0.5 * (p.plus - p.minus) / (A - x);
    return Ws{plus / s, minus, plus * s};
  };
  // scale floor: coefficient size times the mass of both weights, so that a
  // vanishing q or p2 does not turn roundoff into an O(1) relative residual
  double sigma = 0.0;
  for (const auto& v : fam.F[n].lambda) sigma = std::max(sigma, std::abs(v));
  auto floor_scale = [&](int l, int which) {
    return sigma * integrate_tanh_sinh(
                       [&](double x, double dlo, double dhi) {
                         const Ws w = ws(x, dlo, dhi);
                         const double a = which == 1 ? w.m1p : which == 2 ? w.m0m : w.m0m + h * w.m1p;
                         const double b = which == 1 ? w.m0m : which == 2 ? w.p1p : w.p1p + h * w.m0m;
                         const double xl = l < 0 ? 1.0 / (A - x) : std::pow(std::abs(x), l);
                         return (std::abs(a) + std::abs(b)) * xl;
                       },
                       lat.e3, lat.e2, 1e-8)
                       .value;
  };
  auto relative = [](const IntervalIntegral& r, double floor) {
    return std::abs(r.value) / std::max({r.l1, floor, 1e-300});
  };
  MopResiduals r;
  const int l1max = d.k == 0 ? d.m - 1 : d.m;
  for (int l = 0; l <= l1max; ++l) {
    r.r1.push_back(relative(integrate_dual(
        [&](double x, double dlo, double dhi) {
          const Ws w = ws(x, dlo, dhi);
          return (q(x) * w.m1p + p2(x) * w.m0m) * std::pow(x, l);
        },
        lat.e3, lat.e2),
        floor_scale(l, 1)));
  }
  for (int l = 0; l <= d.m - 2; ++l) {
    r.r2.push_back(relative(integrate_dual(
        [&](double x, double dlo, double dhi) {
          const Ws w = ws(x, dlo, dhi);
          return (q(x) * w.m0m + p2(x) * w.p1p) * std::pow(x, l);
        },
        lat.e3, lat.e2),
        floor_scale(l, 2)));
  }
  if (n >= 2) {
    r.r3_applicable = true;
    r.r3 = relative(integrate_dual(
        [&](double x, double dlo, double dhi) {
          const Ws w = ws(x, dlo, dhi);
          return (q(x) * (w.m0m + h * w.m1p) + p2(x) * (w.p1p + h * w.m0m)) / (A - x);
        },
        lat.e3, lat.e2),
        floor_scale(-1, 3));
  }
  return r;
}

double cauchy_transform(const IntervalWeight& w, const Poly& P, double wpa) {
  if (!(wpa > w.hi)) throw Error(ErrorKind::ParameterOutOfRange, "wp(a) must lie to the right of the interval");
  return integrate_dual([&](double x, double dlo, double dhi) { return P(x) * w(x, dlo, dhi) / (wpa - x); }, w.lo,
                        w.hi)
      .value;
}

std::pair<double, double> cauchy_transforms(const IntervalWeight& w, const IntervalWeight& what, int m, double wpa) {
  return {cauchy_transform(w, monic_oprl(w, m), wpa), cauchy_transform(what, monic_oprl(what, m), wpa)};
}

GeneralLift general_lift(const IntervalWeight& w, double a, const RectLattice& lat, int n) {
  if (n < 0) throw Error(ErrorKind::ParameterOutOfRange, "negative degree");
  if (!(a > 0.0 && a < 2.0 * lat.omega1)) throw Error(ErrorKind::ParameterOutOfRange, "a must lie in (0, 2 omega1)");
  const AnchorConfig anchor = make_anchor(cplx(a, 0.0), Contour::Gamma2, lat);
  const BasisContext ctx(lat, anchor);
  const double A = ctx.wp_a().real(), h = 0.5 * ctx.wp1_a().real();
  const int m = n / 2, k = n - 2 * m;
  const IntervalWeight wh = w_hat(w, lat);
  const auto P = monic_oprl_all(w, m + 1);
  const auto Ph = monic_oprl_all(wh, std::max(m, 1));
  auto T = [&](int i) { return cauchy_transform(w, P[i], A); };
  auto Th = [&](int i) { return cauchy_transform(wh, Ph[i], A); };
  auto guard = [&](double den, double t1, double t2, const char* what) {
    if (std::abs(den) <= 1e-12 * (std::abs(t1) + std::abs(t2))) {
      std::ostringstream os;
      os << what << " = " << den;
      throw Error(ErrorKind::DegenerateDenominator, os.str());
    }
  };

  GeneralLift out;
  Poly q, p2;
  if (k == 0) {
    if (m == 0) {
      out.c = 0.0;
      out.kappa = P[1](A);
      out.nu = 0.0;
      q = P[0] * out.kappa - P[1];
      p2 = Poly::constant(0.0);
    } else {
      const double t1 = h * h * T(m) / P[m](A), t2 = Th(m - 1) / Ph[m - 1](A);
      guard(t1 + t2, t1, t2, "c_n denominator");
      out.c = h * (T(m + 1) - P[m + 1](A) * T(m) / P[m](A)) / (t1 + t2);
      out.kappa = (h * out.c + P[m + 1](A)) / P[m](A);
      out.nu = out.c / Ph[m - 1](A);
      q = P[m] * out.kappa - P[m + 1];
      p2 = Ph[m - 1] * out.nu;
    }
  } else {
    if (m == 0) {
      out.c = 1.0;
      out.nu = 0.0;
      p2 = Poly::constant(1.0);
    } else {
      const double t1 = h * h * T(m + 1) / P[m + 1](A), t2 = Th(m - 1) / Ph[m - 1](A);
      guard(t1 + t2, t1, t2, "c_n denominator");
      out.c = (Ph[m](A) * Th(m - 1) / Ph[m - 1](A) - Th(m)) / (t1 + t2);
      out.nu = (out.c - Ph[m](A)) / Ph[m - 1](A);
      p2 = Ph[m] + Ph[m - 1] * out.nu;
    }
    out.kappa = h * out.c / P[m + 1](A);
    q = P[m + 1] * out.kappa;
  }
  // p1 = (q - h c)/(A - x), exact since q(A) = h c
  const auto dq = synthetic_division(q - Poly::constant(h * out.c), A);
  const Poly p1 = dq.quotient * -1.0;
  const auto dp = synthetic_division(p2 - Poly::constant(out.c), A);
  const Poly p3 = dp.quotient;
  out.F = apoly_from_parts(to_complex(p1 + p3 * h), to_complex(p2), anchor, lat, n);
  out.parts = decompose(out.F);
  return out;
}

EvenWeightCoeffs even_weight_coeffs(const EopFamily& fam, int n) {
  if (n < 0 || n > fam.maxN) throw Error(ErrorKind::ParameterOutOfRange, "degree outside the family");
  if (!weight_is_even(fam.weight)) throw Error(ErrorKind::ParameterOutOfRange, "even_weight_coeffs needs an even weight");
  double A, h;
  require_real_anchor(fam, A, h);
  const Decomposition d = decompose(fam.F[n]);
  const int m = d.m, k = d.k;
  double scale = 0.0;
  for (const auto& v : fam.F[n].lambda) scale = std::max(scale, std::abs(v));
  EvenWeightCoeffs out;
  out.q_vanishes = sup_norm(d.q) <= 1e-10 * scale;
  out.p2_vanishes = sup_norm(d.p2) <= 1e-10 * scale;

  auto fit = [](const Poly& target, const Poly* basis, double& coef) {
    coef = 0.0;
    if (basis) {
      double tb = 0.0, bb = 0.0;
      for (int i = 0; i < static_cast<int>(basis->c.size()); ++i) {
        tb += target.coeff(i) * basis->c[i];
        bb += basis->c[i] * basis->c[i];
      }
      coef = tb / bb;
    }
    double res = 0.0;
    for (int i = 0; i < static_cast<int>(target.c.size()); ++i)
      res = std::max(res, std::abs(target.c[i] - (basis ? coef * basis->coeff(i) : 0.0)));
    return res;
  };

  const auto Pm1 = monic_oprl_all(w_pm_weight(-1, 1, fam.weight, A, fam.lattice), m + 1);
  const Poly q = real_part(d.q);
  Poly tq = k == 0 ? q + Pm1[m + 1] : q;
  double kappa;
  const double rq = fit(tq, &Pm1[m + k], kappa) / std::max(1.0, sup_norm(d.q));

  const auto Pp1 = monic_oprl_all(w_pm_weight(1, 1, fam.weight, A, fam.lattice), std::max(m, 0));
  const Poly p2 = real_part(d.p2);
  Poly tp = k == 1 ? p2 - Pp1[m] : p2;
  double nu;
  const double rp = fit(tp, m >= 1 ? &Pp1[m - 1] : nullptr, nu) / std::max(1.0, sup_norm(d.p2));

  out.kappa = kappa;
  out.nu = nu;
  out.residual = std::max(rq, rp);
  return out;
}

}  // namespace eop
