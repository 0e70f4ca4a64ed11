#include "eop/oprl.hpp"

#include <cmath>
#include <sstream>

#include "eop/errors.hpp"
#include "eop/interval_quadrature.hpp"

namespace eop {

namespace {

RecurrenceTable discrete_stieltjes(const DiscreteRule& q, int n) {
  RecurrenceTable r;
  const std::size_t M = q.x.size();
  std::vector<double> p0(M, 0.0), p1(M, 1.0), p2(M);
  double prev_norm = 1.0;
  for (int k = 0; k < n; ++k) {
    double nrm = 0.0, xm = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      const double v = q.w[i] * p1[i] * p1[i];
      nrm += v;
      xm += v * q.x[i];
    }
    if (!(nrm > 0.0)) throw Error(ErrorKind::MomentDivergence, "vanishing discrete norm in the Stieltjes procedure");
    const double a = xm / nrm, b = k == 0 ? nrm : nrm / prev_norm;
    r.a.push_back(a);
    r.b.push_back(b);
    for (std::size_t i = 0; i < M; ++i) p2[i] = (q.x[i] - a) * p1[i] - (k == 0 ? 0.0 : b * p0[i]);
    std::swap(p0, p1);
    std::swap(p1, p2);
    prev_norm = nrm;
  }
  return r;
}

void require_interval(const IntervalWeight& w, const RectLattice& lat) {
  const double s = 1.0 + std::abs(lat.e3);
  if (std::abs(w.lo - lat.e3) > 1e-12 * s || std::abs(w.hi - lat.e2) > 1e-12 * s)
    throw Error(ErrorKind::ParameterOutOfRange, "weight interval must be [e3, e2]");
}

void require_square(const RectLattice& lat) {
  if (std::abs(lat.e1 - 1.0) > 1e-12 || std::abs(lat.e2) > 1e-12 || std::abs(lat.e3 + 1.0) > 1e-12)
    throw Error(ErrorKind::ParameterOutOfRange, "the Jacobi examples need branch points (1, 0, -1)");
}

void require_jacobi(double alpha, double beta) {
  if (!(alpha > -1.0 && beta > -1.0)) throw Error(ErrorKind::ParameterOutOfRange, "Jacobi exponents must exceed -1");
}

std::vector<double> sorted_roots(const Poly& p) { return real_roots(p, -1.0, 1.0); }

CheckReport interlace_report(const std::string& label, const std::vector<double>& Z, const std::vector<double>& W,
                             std::size_t nz, std::size_t nw) {
  CheckReport r;
  r.suite = "corollary-jacobi";
  r.label = label;
  std::ostringstream e, o;
  e << nz << " < " << nw << " zeros, strict";
  r.expected = e.str();
  const InterlaceResult ir = check_precedes(Z, W);
  o << Z.size() << " and " << W.size() << " zeros, " << to_string(ir.kind) << (ir.strict ? ", strict" : "")
    << ", min gap " << ir.min_gap;
  r.observed = o.str();
  r.pass = Z.size() == nz && W.size() == nw && ir.kind != Interlace::NotInterlacing && ir.strict;
  r.margin = ir.min_gap;
  return r;
}

}  // namespace

std::vector<Poly> polys_from_recurrence(const RecurrenceTable& r, int n) {
  std::vector<Poly> P;
  P.push_back(Poly::constant(1.0));
  if (n >= 1) P.push_back(Poly(std::vector<double>{-r.a[0], 1.0}));
  for (int k = 1; k < n; ++k) P.push_back((Poly::x() - Poly::constant(r.a[k])) * P[k] - P[k - 1] * r.b[k]);
  return P;
}

RecurrenceTable stieltjes(const IntervalWeight& w, int n) {
  if (n < 0) throw Error(ErrorKind::ParameterOutOfRange, "negative degree");
  const double scale = std::max(std::abs(w.lo), std::abs(w.hi)) + (w.hi - w.lo);
  RecurrenceTable prev = discrete_stieltjes(tanh_sinh_rule(w.eval, w.lo, w.hi, 3), std::max(n, 1));
  for (int level = 4; level <= 12; ++level) {
    RecurrenceTable cur = discrete_stieltjes(tanh_sinh_rule(w.eval, w.lo, w.hi, level), std::max(n, 1));
    double d = 0.0;
    for (std::size_t k = 0; k < cur.a.size(); ++k) {
      d = std::max(d, std::abs(cur.a[k] - prev.a[k]) / scale);
      d = std::max(d, std::abs(cur.b[k] - prev.b[k]) / std::abs(cur.b[k]));
    }
    if (d <= 1e-13) {
      cur.a.resize(n);
      cur.b.resize(n);
      return cur;
    }
    prev = std::move(cur);
  }
  throw Error(ErrorKind::MomentDivergence, "Stieltjes coefficients did not settle for " + w.name);
}

std::vector<Poly> monic_oprl_all(const IntervalWeight& w, int n) { return polys_from_recurrence(stieltjes(w, n), n); }

Poly monic_oprl(const IntervalWeight& w, int n) { return monic_oprl_all(w, n).back(); }

double oprl_residual(const IntervalWeight& w, const Poly& p) {
  double worst = 0.0;
  for (int j = 0; j < p.degree(); ++j) {
    const auto r = integrate_dual(
        [&](double x, double dlo, double dhi) { return p(x) * std::pow(x, j) * w(x, dlo, dhi); }, w.lo, w.hi);
    worst = std::max(worst, std::abs(r.value) / std::max(r.l1, 1e-300));
  }
  return worst;
}

RecurrenceTable jacobi_recurrence(int n, double alpha, double beta) {
  require_jacobi(alpha, beta);
  RecurrenceTable r;
  const double s = alpha + beta;
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      r.a.push_back((beta - alpha) / (s + 2.0));
      r.b.push_back(std::pow(2.0, s + 1.0) * std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) / std::tgamma(s + 2.0));
      continue;
    }
    const double t = 2.0 * k + s;
    r.a.push_back((beta * beta - alpha * alpha) / (t * (t + 2.0)));
    // (k + s)/(t - 1) is 1 at k = 1, kept symbolic for s = -1
    const double ratio = k == 1 ? 1.0 : (k + s) / (t - 1.0);
    r.b.push_back(4.0 * k * (k + alpha) * (k + beta) * ratio / (t * t * (t + 1.0)));
  }
  return r;
}

Poly jacobi_monic(int n, double alpha, double beta) {
  if (n < 0) throw Error(ErrorKind::ParameterOutOfRange, "negative degree");
  return polys_from_recurrence(jacobi_recurrence(n, alpha, beta), n).back();
}

IntervalWeight w_tilde(const IntervalWeight& w, const RectLattice& lat) {
  const double e1 = lat.e1;
  return scaled_interval_weight(
      w, [e1](double x, double dlo, double dhi) { return dlo * dhi / (e1 - x); }, w.name + "~");
}

IntervalWeight w_hat(const IntervalWeight& w, const RectLattice& lat) {
  const double e1 = lat.e1;
  return scaled_interval_weight(
      w, [e1](double x, double dlo, double dhi) { return (e1 - x) * dlo * dhi; }, w.name + "^");
}

void require_condition_one(const RectLattice& lat) {
  if (!(lat.e3 < 0.0 && lat.e3 < lat.e2 && lat.e2 < 0.5 * std::abs(lat.e3))) {
    std::ostringstream os;
    os << "need e3 < 0 and e3 < e2 < |e3|/2, got e2 = " << lat.e2 << ", e3 = " << lat.e3;
    throw Error(ErrorKind::ConditionOneViolated, os.str());
  }
}

APolyCoeffs apoly_from_parts(const CPoly& P, const CPoly& Q, const AnchorConfig& anchor, const RectLattice& lat,
                             int n) {
  const BasisContext ctx(lat, anchor);
  const cplx A = ctx.wp_a(), h = 0.5 * ctx.wp1_a();
  APolyCoeffs out{std::vector<cplx>(n + 1, cplx(0.0)), anchor, lat};
  auto put = [&](int idx, cplx v) {
    if (idx <= n) {
      out.lambda[idx] += v;
    } else if (v != cplx(0.0)) {
      throw Error(ErrorKind::ParameterOutOfRange, "parts exceed the requested degree");
    }
  };
  for (int i = 0; i < static_cast<int>(P.c.size()); ++i) put(2 * i, P.c[i]);
  if (Q.degree() >= 0) {
    const auto d = synthetic_division(Q, A);
    put(1, d.remainder);
    for (int i = 0; i < static_cast<int>(d.quotient.c.size()); ++i) {
      put(2 * i + 3, d.quotient.c[i]);
      put(2 * i, -h * d.quotient.c[i]);
    }
  }
  return out;
}

APolyCoeffs lift_symmetric(const IntervalWeight& w, const RectLattice& lat, int n) {
  if (n < 0) throw Error(ErrorKind::ParameterOutOfRange, "negative degree");
  require_condition_one(lat);
  require_interval(w, lat);
  const AnchorConfig anchor = make_anchor(cplx(lat.omega1, 0.0), Contour::Gamma2, lat);
  const int j = n / 2;
  if (n % 2 == 0) return apoly_from_parts(to_complex(monic_oprl(w, j)), CPoly(), anchor, lat, n);
  return apoly_from_parts(CPoly(), to_complex(monic_oprl(w_tilde(w, lat), j)), anchor, lat, n);
}

double lambda_n(int n, double alpha, double beta) {
  require_jacobi(alpha, beta);
  const Poly P = jacobi_monic(n, alpha + 1.0, beta + 1.0);
  const auto r = integrate_dual(
      [&](double s, double dlo, double dhi) {
        return P(s) * std::pow(dhi, alpha + 1.0) * std::pow(dlo, beta + 1.0) / (2.0 + dhi);
      },
      -1.0, 1.0);
  return r.value;
}

double cd_like_kernel(int j, double alpha, double beta, double x, double y) {
  const auto P = polys_from_recurrence(jacobi_recurrence(j + 1, alpha, beta), j + 1);
  const Poly &Pj = P[j], &Pj1 = P[j + 1];
  if (std::abs(x - y) < 1e-8) {
    const double m = 0.5 * (x + y);
    return Pj1.derivative()(m) * Pj(m) - Pj1(m) * Pj.derivative()(m);
  }
  return (Pj1(x) * Pj(y) - Pj1(y) * Pj(x)) / (x - y);
}

Poly cd_like_kernel_poly(int j, double alpha, double beta, double y) {
  const auto P = polys_from_recurrence(jacobi_recurrence(j + 1, alpha, beta), j + 1);
  const Poly num = P[j + 1] * P[j](y) - P[j] * P[j + 1](y);
  return synthetic_division(num, y).quotient.trimmed();
}

Poly s_poly(int n, double alpha, double beta) {
  if (!(alpha > 0.0 && beta > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "S_n needs alpha, beta > 0");
  return cd_like_kernel_poly(n + 1, alpha - 1.0, beta - 1.0, 3.0);
}

Poly r_poly(int m, double alpha, double beta) {
  if (m < 0) throw Error(ErrorKind::ParameterOutOfRange, "negative degree");
  if (m == 0) return Poly::constant(1.0);
  const auto P = polys_from_recurrence(jacobi_recurrence(m, alpha + 1.0, beta + 1.0), m);
  return P[m] * lambda_n(m - 1, alpha, beta) - P[m - 1] * lambda_n(m, alpha, beta);
}

std::vector<CheckReport> verify_corollary_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw Error(ErrorKind::ParameterOutOfRange, "corollary needs n >= 1");
  require_jacobi(alpha, beta);
  const auto Pn = sorted_roots(jacobi_monic(n, alpha, beta));
  const auto Q = sorted_roots(jacobi_monic(n - 1, alpha + 1.0, beta + 1.0));
  const auto R = sorted_roots(r_poly(n - 1, alpha, beta));
  std::vector<CheckReport> out;
  if (alpha > 0.0 && beta > 0.0)
    out.push_back(interlace_report("S_n < P_n", sorted_roots(s_poly(n, alpha, beta)), Pn, n + 1, n));
  out.push_back(interlace_report("P_n < R_{n-1}", Pn, R, n, n - 1));
  out.push_back(interlace_report("P_n < P_{n-1}^{(a+1,b+1)}", Pn, Q, n, n - 1));
  out.push_back(interlace_report("P_{n-1}^{(a+1,b+1)} < R_{n-1}", Q, R, n - 1, n - 1));
  for (auto& r : out) {
    std::ostringstream os;
    os << "n = " << n << ", alpha = " << alpha << ", beta = " << beta << ": " << r.label;
    r.label = os.str();
    r.claim = "Jacobi interlacing corollary";
  }
  return out;
}

CheckReport verify_oprl_interlacing(const IntervalWeight& w, const RectLattice& lat, int n) {
  if (n < 1) throw Error(ErrorKind::ParameterOutOfRange, "interlacing needs n >= 1");
  const auto Z = real_roots(monic_oprl(w, n), w.lo, w.hi);
  const auto W = real_roots(monic_oprl(w_tilde(w, lat), n - 1), w.lo, w.hi);
  CheckReport r = interlace_report("P_n(w) < P_{n-1}(w~)", Z, W, n, n - 1);
  r.suite = "lift";
  r.claim = "interlacing of P_n(w) and P_{n-1}(w~)";
  return r;
}

APolyCoeffs example1_family(int n, double alpha, double beta, const RectLattice& lat) {
  require_jacobi(alpha, beta);
  require_square(lat);
  if (n < 0) throw Error(ErrorKind::ParameterOutOfRange, "negative degree");
  const AnchorConfig anchor = make_anchor(cplx(lat.omega1, 0.0), Contour::Gamma2, lat);
  const int j = n / 2;
  const double scale = std::ldexp(1.0, -j);
  if (n % 2 == 0) {
    const Poly P = jacobi_monic(j, alpha, beta).compose_affine(2.0, 1.0) * scale;
    return apoly_from_parts(to_complex(P), CPoly(), anchor, lat, n);
  }
  Poly Q = Poly::constant(1.0);
  if (j >= 1) {
    const auto P = polys_from_recurrence(jacobi_recurrence(j, alpha + 1.0, beta + 1.0), j);
    const double lm = lambda_n(j - 1, alpha, beta), l = lambda_n(j, alpha, beta);
    Q = (P[j] * lm - P[j - 1] * l).compose_affine(2.0, 1.0) * (scale / lm);
  }
  return apoly_from_parts(CPoly(), to_complex(Q), anchor, lat, n);
}

APolyCoeffs example2_family(int n, double alpha, double beta, const RectLattice& lat) {
  if (!(alpha > 0.0 && beta > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "second example needs alpha, beta > 0");
  require_square(lat);
  if (n < 0) throw Error(ErrorKind::ParameterOutOfRange, "negative degree");
  const AnchorConfig anchor = make_anchor(cplx(lat.omega1, 0.0), Contour::Gamma2, lat);
  const int j = n / 2;
  const double scale = std::ldexp(1.0, -j);
  if (n % 2 == 1) {
    const Poly P = jacobi_monic(j, alpha, beta).compose_affine(2.0, 1.0) * scale;
    return apoly_from_parts(CPoly(), to_complex(P), anchor, lat, n);
  }
  const double pj3 = jacobi_monic(j, alpha - 1.0, beta - 1.0)(3.0);
  const Poly K = cd_like_kernel_poly(j, alpha - 1.0, beta - 1.0, 3.0).compose_affine(2.0, 1.0) * (scale / pj3);
  return apoly_from_parts(to_complex(K), CPoly(), anchor, lat, n);
}

double coeff_distance(const APolyCoeffs& c, const APolyCoeffs& d) {
  const int nc = poly_degree(c.lambda), nd = poly_degree(d.lambda);
  if (nc != nd) return INFINITY;
  const cplx lc = c.lambda[nc], ld = d.lambda[nd];
  double num = 0.0, den = 0.0;
  for (int i = 0; i <= nc; ++i) {
    num = std::max(num, std::abs(c.lambda[i] / lc - d.lambda[i] / ld));
    den = std::max(den, std::abs(d.lambda[i] / ld));
  }
  return num / den;
}

}  // namespace eop
