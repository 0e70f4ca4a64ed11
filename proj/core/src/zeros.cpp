#include "eop/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eop/errors.hpp"

namespace eop {

namespace {

constexpr double kPoleRadius = 1e-6;
constexpr int kMaxSamples = 1 << 18;

double circ_dist(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

double wrap01(double t) {
  t -= std::floor(t);
  return t >= 1.0 - 1e-12 ? 0.0 : t;
}

std::vector<double> pole_params(const APolyCoeffs& c, Contour contour) {
  const RectLattice& lat = c.lattice;
  std::vector<double> poles;
  if (contour == Contour::Gamma1) poles.push_back(0.0);
  const TorusPoint a = reduce_to_fundamental(c.anchor.a, lat);
  const double tol = 1e-12 * std::max(lat.omega1, lat.tau);
  const double want = contour == Contour::Gamma1 ? 0.0 : lat.tau;
  if (std::abs(a.z.imag() - want) <= tol && has_pole_at_a(c)) poles.push_back(a.z.real() / (2.0 * lat.omega1));
  return poles;
}

std::string count_str(std::size_t a, std::size_t b) {
  std::ostringstream os;
  os << a << " on the contour, " << b << " on the other";
  return os.str();
}

}  // namespace

std::vector<double> ZeroSet::params() const {
  std::vector<double> t;
  for (const auto& z : zeros) t.push_back(z.t);
  return t;
}

cplx contour_point(Contour contour, double t, const RectLattice& lat) {
  return {2.0 * lat.omega1 * t, contour == Contour::Gamma2 ? lat.tau : 0.0};
}

ZeroSet find_zeros_fn(const std::function<double(double)>& f, const std::function<double(double)>& slope,
                      const std::vector<double>& poles, bool circular, int M0) {
  auto excluded = [&](double t) {
    for (double p : poles)
      if (circ_dist(t, p) < kPoleRadius) return true;
    return false;
  };
  auto pole_inside = [&](double a, double b) {
    for (double p : poles) {
      for (double q : {p, p + 1.0})
        if (q > a && q < b) return true;
    }
    return false;
  };
  auto scan = [&](int M) {
    std::vector<double> v(M + 1);
    std::vector<char> ok(M + 1);
    std::vector<double> absval;
    for (int k = 0; k < M; ++k) {
      const double t = double(k) / M;
      ok[k] = !excluded(t);
      if (ok[k]) {
        v[k] = f(t);
        absval.push_back(std::abs(v[k]));
      }
    }
    v[M] = v[0];
    ok[M] = circular ? ok[0] : 0;
    double scale = 0.0;
    if (!absval.empty()) {
      std::nth_element(absval.begin(), absval.begin() + absval.size() / 2, absval.end());
      scale = absval[absval.size() / 2];
    }
    std::vector<char> change(M, 0);
    std::vector<Zero> out;
    for (int k = 0; k < M; ++k) {
      if (!ok[k] || !ok[k + 1]) continue;
      double a = double(k) / M, b = double(k + 1) / M;
      if (pole_inside(a, b)) continue;
      double fa = v[k], fb = v[k + 1];
      if (!((fa < 0.0) != (fb < 0.0))) continue;
      change[k] = 1;
      const double L = std::max(std::abs(fa), std::abs(fb)) * M;
      while (b - a > 1e-13) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      Zero z;
      z.t = wrap01(0.5 * (a + b));
      z.slope = slope ? slope(z.t) : 0.0;
      z.simple = !slope || z.slope >= 1e-8 * L;
      out.push_back(z);
    }
    // |f| dipping to zero without a sign change: a suspected double zero
    for (int k = 1; k < M; ++k) {
      if (!ok[k] || !ok[k - 1] || !ok[k + 1]) continue;
      const double a = std::abs(v[k]);
      if (a < 1e-9 * scale && a <= std::abs(v[k - 1]) && a <= std::abs(v[k + 1]) && !change[k] && !change[k - 1]) {
        std::ostringstream os;
        os << "suspected multiple zero near t = " << double(k) / M;
        throw Error(ErrorKind::UnstableCount, os.str());
      }
    }
    std::sort(out.begin(), out.end(), [](const Zero& x, const Zero& y) { return x.t < y.t; });
    return out;
  };
  int M = std::max(M0, 512);
  long last = -1;
  int stable = 0;
  std::vector<Zero> zs;
  for (; M <= kMaxSamples; M *= 2) {
    zs = scan(M);
    if (long(zs.size()) == last) {
      if (++stable >= 2) break;
    } else {
      stable = 0;
    }
    last = long(zs.size());
  }
  if (M > kMaxSamples) throw Error(ErrorKind::UnstableCount, "zero count did not stabilize");
  ZeroSet set;
  set.zeros = std::move(zs);
  set.M = M;
  return set;
}

ZeroSet find_zeros(const APolyCoeffs& c, Contour contour, int M) {
  const RectLattice& lat = c.lattice;
  BasisContext ctx(lat, c.anchor);
  BasisValues bv;
  const int jmax = int(c.lambda.size()) - 1;
  double cmax = 0.0;
  for (const auto& l : c.lambda) cmax = std::max(cmax, std::abs(l));
  // Without a pole at a the b_1 coefficient is roundoff; dropping it lets the
  // scan pass through the anchor.
  const bool skip_b1 = !has_pole_at_a(c);
  auto value = [&](double t, int derivs) {
    ctx.eval(contour_point(contour, t, lat), jmax, bv, derivs, skip_b1);
    const auto& col = derivs == 0 ? bv.b : bv.db;
    cplx s = 0.0;
    for (int j = 0; j <= jmax; ++j) s += c.lambda[j] * col[j];
    return s;
  };
  auto f = [&](double t) {
    const cplx v = value(t, 0);
    if (std::abs(v.imag()) > 1e-8 * (std::abs(v) + cmax)) {
      std::ostringstream os;
      os << "function is not real at t = " << t << " (imaginary part " << v.imag() << ")";
      throw Error(ErrorKind::NotRealOnContour, os.str());
    }
    return v.real();
  };
  auto slope = [&](double t) { return std::abs(value(t, 1)) * 2.0 * lat.omega1; };
  ZeroSet set = find_zeros_fn(f, slope, pole_params(c, contour), contour == Contour::Gamma2, M);
  set.contour = contour;
  for (auto& z : set.zeros) z.z = contour_point(contour, z.t, lat);
  return set;
}

const char* to_string(Interlace k) noexcept {
  switch (k) {
    case Interlace::StrictFullyAlternating: return "fully-alternating";
    case Interlace::WeakAlternating: return "weak-alternating";
    case Interlace::NotInterlacing: return "not-interlacing";
  }
  return "?";
}

InterlaceResult check_precedes(std::vector<double> Z, std::vector<double> W) {
  std::sort(Z.begin(), Z.end());
  std::sort(W.begin(), W.end());
  InterlaceResult r;
  const std::size_t n = Z.size(), m = W.size();
  if (!(m == n || m + 1 == n)) return r;
  std::vector<double> seq;
  for (std::size_t i = 0; i < n; ++i) {
    seq.push_back(Z[i]);
    if (i < m) seq.push_back(W[i]);
  }
  double gap = INFINITY;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const double d = seq[i + 1] - seq[i];
    if (d < 0.0) return r;
    gap = std::min(gap, d);
  }
  r.kind = m == n ? Interlace::StrictFullyAlternating : Interlace::WeakAlternating;
  r.min_gap = seq.size() > 1 ? gap : INFINITY;
  r.strict = r.min_gap > 1e-10;
  r.first_precedes = true;
  return r;
}

InterlaceResult check_interlacing(std::vector<double> Z, std::vector<double> W) {
  InterlaceResult r = check_precedes(Z, W);
  if (r.kind != Interlace::NotInterlacing) return r;
  r = check_precedes(W, Z);
  r.first_precedes = false;
  return r;
}

CheckReport verify_zero_theorem(const EopFamily& fam, int n) {
  if (n < 0 || n > fam.maxN) throw Error(ErrorKind::ParameterOutOfRange, "degree outside the family");
  const APolyCoeffs& c = fam.f[n];
  const Contour G = fam.anchor.gamma;
  const Contour O = G == Contour::Gamma1 ? Contour::Gamma2 : Contour::Gamma1;
  const bool pole = has_pole_at_a(c);
  const ZeroSet zg = find_zeros(c, G), zo = find_zeros(c, O);
  CheckReport r;
  r.suite = "zeros";
  r.claim = "zero counts and simplicity of the orthonormal a-polynomials";
  std::size_t want_g, want_o;
  bool pole_ok = true;
  if (G == Contour::Gamma1) {
    r.label = "gamma1";
    want_g = n;
    want_o = pole ? 1 : 0;
  } else if (n % 2 == 0) {
    r.label = "gamma2, n even";
    want_g = n;
    want_o = pole ? 1 : 0;
  } else {
    r.label = "gamma2, n odd";
    want_g = n + 1;
    want_o = 0;
    pole_ok = pole;
  }
  double margin = INFINITY;
  bool simple = true;
  for (const auto& z : zg.zeros) {
    simple = simple && z.simple;
    margin = std::min(margin, z.slope);
  }
  r.expected = count_str(want_g, want_o) + (G == Contour::Gamma2 && n % 2 ? ", pole at a" : "");
  r.observed = count_str(zg.size(), zo.size()) + (pole ? ", pole at a" : ", no pole at a");
  r.pass = zg.size() == want_g && zo.size() == want_o && pole_ok && simple;
  r.margin = zg.size() ? margin : 0.0;
  return r;
}

CheckReport verify_interlacing_theorem(const EopFamily& fam, int n) {
  if (n < 0 || n + 1 > fam.maxN) throw Error(ErrorKind::ParameterOutOfRange, "interlacing needs n + 1 <= maxN");
  const Contour G = fam.anchor.gamma;
  CheckReport r;
  r.suite = "interlacing";
  r.claim = "interlacing of consecutive orthonormal a-polynomials";
  auto zn = find_zeros(fam.f[n], G).params();
  auto zn1 = find_zeros(fam.f[n + 1], G).params();
  std::ostringstream obs;
  if (G == Contour::Gamma1) {
    r.label = "gamma1";
    r.expected = "f_{n+1} < f_n strictly";
    const InterlaceResult ir = check_precedes(zn1, zn);
    r.pass = ir.kind != Interlace::NotInterlacing && ir.strict;
    r.margin = ir.min_gap;
    obs << to_string(ir.kind) << (ir.strict ? ", strict" : "") << ", min gap " << ir.min_gap;
  } else if (n % 2 == 1) {
    r.label = "gamma2, n odd";
    r.expected = "f_n < f_{n+1} or f_{n+1} < f_n strictly";
    const InterlaceResult ir = check_interlacing(zn, zn1);
    r.pass = ir.kind != Interlace::NotInterlacing && ir.strict;
    r.margin = ir.min_gap;
    obs << to_string(ir.kind) << (ir.strict ? ", strict" : "") << ", direction "
        << (ir.first_precedes ? "f_n < f_{n+1}" : "f_{n+1} < f_n") << ", min gap " << ir.min_gap;
  } else {
    r.label = "gamma2, n even";
    r.expected = "no claim";
    r.pass = true;
    obs << "not applicable";
  }
  r.observed = obs.str();
  return r;
}

CheckReport verify_half_contour_interlacing(const EopFamily& fam, int n) {
  if (n < 0 || n + 2 > fam.maxN) throw Error(ErrorKind::ParameterOutOfRange, "needs n + 2 <= maxN");
  CheckReport r;
  r.suite = "interlacing";
  r.claim = "interlacing of F_n and F_{n+2} on the half contour omega3 + [0, omega1]";
  r.label = n % 2 ? "n odd (interior zeros)" : "n even";
  r.expected = "F_{n+2} < F_n strictly";
  auto half = [&](int k) {
    std::vector<double> t;
    for (double s : find_zeros(fam.F[k], Contour::Gamma2).params()) {
      if (s > 0.5 + 1e-9) continue;
      // odd members vanish at both ends of the half contour
      if (n % 2 == 1 && (s < 1e-9 || s > 0.5 - 1e-9)) continue;
      t.push_back(s);
    }
    return t;
  };
  const InterlaceResult ir = check_precedes(half(n + 2), half(n));
  r.pass = ir.kind != Interlace::NotInterlacing && ir.strict;
  r.margin = ir.min_gap;
  std::ostringstream obs;
  obs << to_string(ir.kind) << (ir.strict ? ", strict" : "") << ", min gap " << ir.min_gap;
  r.observed = obs.str();
  return r;
}

std::pair<double, double> wronskian_range(const EopFamily& fam, int n, int samples) {
  if (n < 0 || n + 1 > fam.maxN) throw Error(ErrorKind::ParameterOutOfRange, "needs n + 1 <= maxN");
  double lo = INFINITY, hi = -INFINITY;
  std::vector<cplx> f, df;
  for (int k = 0; k < samples; ++k) {
    const double t = (k + 0.5) / samples;
    eval_family(fam, contour_point(Contour::Gamma2, t, fam.lattice), f, &df);
    const double w = (f[n + 1] * df[n] - f[n] * df[n + 1]).real();
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  return {lo, hi};
}

}  // namespace eop
