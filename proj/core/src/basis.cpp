#include "eop/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eop/errors.hpp"

namespace eop {

namespace {

constexpr double kB1SwitchRadius = 1e-3;

cplx ipow(cplx x, int e) {
  if (e < 0) return 0.0;
  cplx r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

const char* to_string(Contour c) noexcept { return c == Contour::Gamma1 ? "gamma1" : "gamma2"; }

Contour contour_from_string(const std::string& s) {
  if (s == "gamma1" || s == "Gamma1" || s == "1") return Contour::Gamma1;
  if (s == "gamma2" || s == "Gamma2" || s == "2") return Contour::Gamma2;
  throw Error(ErrorKind::Config, "unknown contour '" + s + "'");
}

AnchorConfig make_anchor(cplx a, Contour gamma, const RectLattice& lat) {
  const TorusPoint p = reduce_to_fundamental(a, lat);
  const double tol = 1e-12 * std::max(lat.omega1, lat.tau);
  const bool on_g1 = std::abs(p.z.imag()) <= tol || std::abs(p.z.imag() - 2.0 * lat.tau) <= tol;
  const bool on_g2 = std::abs(p.z.imag() - lat.tau) <= tol;
  const bool at_zero = on_g1 && (p.z.real() <= tol || std::abs(p.z.real() - 2.0 * lat.omega1) <= tol);
  if (at_zero) throw Error(ErrorKind::ParameterOutOfRange, "anchor a must not be a lattice point");
  if (gamma == Contour::Gamma2 && !on_g1)
    throw Error(ErrorKind::ParameterOutOfRange, "for gamma2 the anchor must lie on gamma1 (Im a = 0)");
  if (gamma == Contour::Gamma1 && !on_g2)
    throw Error(ErrorKind::ParameterOutOfRange, "for gamma1 the anchor must lie on gamma2 (Im a = tau)");
  return {a, gamma};
}

BasisContext::BasisContext(const RectLattice& lat, const AnchorConfig& anchor) : lat_(lat), anchor_(anchor) {
  const WpValues v = wp_all(anchor.a, lat);
  wpa_ = v.wp;
  wp1a_ = v.wp1;
  zetaa_ = zeta_w(anchor.a, lat);
}

double BasisContext::torus_distance(cplx z, cplx w) const {
  const double p = 2.0 * lat_.omega1, q = 2.0 * lat_.tau;
  cplx d = z - w;
  const double x = d.real() - p * std::round(d.real() / p);
  const double y = d.imag() - q * std::round(d.imag() / q);
  return std::hypot(x, y);
}

cplx BasisContext::b1_from(cplx z, const WpValues& v) const {
  const double near = std::min(torus_distance(z, anchor_.a), torus_distance(z, -anchor_.a));
  if (near > kB1SwitchRadius) return -0.5 * (v.wp1 + wp1a_) / (v.wp - wpa_);
  if (torus_distance(z, anchor_.a) < pole_guard(lat_))
    throw Error(ErrorKind::PoleAt, "b1 evaluated at the anchor a");
  return zeta_w(z, lat_) - zeta_w(z - anchor_.a, lat_) - zetaa_;
}

cplx BasisContext::b1(cplx z) const { return b1_from(z, wp_all(z, lat_)); }

void BasisContext::eval(cplx z, int jmax, BasisValues& out, int derivs, bool skip_b1) const {
  eval_at(z, wp_all(z, lat_), jmax, out, derivs, skip_b1);
}

void BasisContext::eval_at(cplx z, const WpValues& v, int jmax, BasisValues& out, int derivs, bool skip_b1) const {
  const cplx p = v.wp, p1 = v.wp1;
  const cplx p2 = 6.0 * p * p - 0.5 * lat_.g2;
  const cplx p3 = 12.0 * p * p1;
  out.wp = p;
  out.wp1 = p1;
  out.wp2 = p2;
  out.b.assign(jmax + 1, 0.0);
  if (derivs >= 1) out.db.assign(jmax + 1, 0.0);
  if (derivs >= 2) out.d2b.assign(jmax + 1, 0.0);
  out.b[0] = 1.0;
  if (jmax >= 1 && !skip_b1) {
    out.b[1] = b1_from(z, v);
    if (derivs >= 1) {
      // b1' = wp(z - a) - wp(z), b1'' = wp'(z - a) - wp'(z)
      const WpValues va = wp_all(z - anchor_.a, lat_);
      out.db[1] = va.wp - p;
      if (derivs >= 2) out.d2b[1] = va.wp1 - p1;
    }
  }
  for (int j = 2; j <= jmax; ++j) {
    const int k = j / 2;
    if (j % 2 == 0) {
      out.b[j] = ipow(p, k);
      if (derivs >= 1) out.db[j] = double(k) * ipow(p, k - 1) * p1;
      if (derivs >= 2)
        out.d2b[j] = double(k) * double(k - 1) * ipow(p, k - 2) * p1 * p1 + double(k) * ipow(p, k - 1) * p2;
    } else {
      out.b[j] = -0.5 * p1 * ipow(p, k - 1);
      if (derivs >= 1) out.db[j] = -0.5 * (p2 * ipow(p, k - 1) + double(k - 1) * p1 * p1 * ipow(p, k - 2));
      if (derivs >= 2)
        out.d2b[j] = -0.5 * (p3 * ipow(p, k - 1) + 3.0 * double(k - 1) * p1 * p2 * ipow(p, k - 2) +
                             double(k - 1) * double(k - 2) * p1 * p1 * p1 * ipow(p, k - 3));
    }
  }
}

cplx basis_eval(int j, cplx z, const AnchorConfig& anchor, const RectLattice& lat) {
  if (j < 0) throw Error(ErrorKind::ParameterOutOfRange, "basis index must be non-negative");
  BasisContext ctx(lat, anchor);
  BasisValues v;
  ctx.eval(z, j, v, 0, j != 1);
  return v.b[j];
}

cplx eval_apoly_deriv(const APolyCoeffs& c, cplx z, int order) {
  if (c.lambda.empty()) return 0.0;
  BasisContext ctx(c.lattice, c.anchor);
  BasisValues v;
  const int jmax = int(c.lambda.size()) - 1;
  ctx.eval(z, jmax, v, order);
  const auto& col = order == 0 ? v.b : (order == 1 ? v.db : v.d2b);
  cplx s = 0.0;
  for (int j = 0; j <= jmax; ++j) s += c.lambda[j] * col[j];
  return s;
}

cplx eval_apoly(const APolyCoeffs& c, cplx z) { return eval_apoly_deriv(c, z, 0); }

int poly_degree(const std::vector<cplx>& lambda) {
  double mx = 0.0;
  for (const auto& l : lambda) mx = std::max(mx, std::abs(l));
  if (mx == 0.0) return -1;
  for (int j = int(lambda.size()) - 1; j >= 0; --j)
    if (std::abs(lambda[j]) > 1e-10 * mx) return j;
  return -1;
}

bool has_pole_at_a(const APolyCoeffs& c) {
  if (c.lambda.size() < 2) return false;
  double mx = 0.0;
  for (const auto& l : c.lambda) mx = std::max(mx, std::abs(l));
  return std::abs(c.lambda[1]) > 1e-8 * mx;
}

LaurentLeading laurent_leading(const APolyCoeffs& c) {
  const int d = poly_degree(c.lambda);
  if (d < 0) throw Error(ErrorKind::ZeroFunction, "all coefficients vanish");
  return {d, c.lambda[d]};
}

}  // namespace eop
