#include "eop/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eop/errors.hpp"

namespace eop {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre rule on [-1, 1], built once by Newton iteration.
struct GaussLegendre {
  static constexpr int n = 24;
  std::array<double, n> x{}, w{};
  GaussLegendre() {
    for (int i = 0; i < n; ++i) {
      double r = std::cos(kPi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = r;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * r * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (r * p1 - p0) / (r * r - 1.0);
        const double dr = p1 / dp;
        r -= dr;
        if (std::abs(dr) < 1e-16) {
          x[i] = r;
          w[i] = 2.0 / ((1.0 - r * r) * dp * dp);
          break;
        }
        x[i] = r;
        w[i] = 2.0 / ((1.0 - r * r) * dp * dp);
      }
    }
  }
};

const GaussLegendre& gl() {
  static const GaussLegendre rule;
  return rule;
}

double central_binomial(int m) {
  double c = 1.0;
  for (int k = 1; k <= m / 2; ++k) c = c * (m / 2 + k) / k;
  return c;
}

// phi(u) for |u| <= 1/4, integrating phi' directly so tiny offsets keep full
// relative accuracy.
double phi_small(double u, int m) {
  if (m == 0 || u == 0.0) return u;
  const auto& r = gl();
  const double h = 0.5 * u;
  double acc = 0.0;
  for (int i = 0; i < GaussLegendre::n; ++i) {
    const double v = h + h * r.x[i];
    acc += r.w[i] * std::pow(std::sin(2.0 * kPi * v), m);
  }
  return h * acc * std::pow(2.0, m) / central_binomial(m);
}

// Neumaier compensated sum for complex values.
struct CSum {
  double sr = 0, cr = 0, si = 0, ci = 0;
  static void add1(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  void add(cplx v) {
    add1(sr, cr, v.real());
    add1(si, ci, v.imag());
  }
  cplx value() const { return {sr + cr, si + ci}; }
};

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

WpValues node_kernel(const ContourNode& nd, const RectLattice& lat) {
  if (nd.base >= 0) return wp_all_near(nd.base, nd.dz, lat);
  return wp_all(nd.z, lat);
}

}  // namespace

double smoothing_map(double s, int order, double* dphi) {
  if (order < 0 || order % 2 != 0) throw Error(ErrorKind::ParameterOutOfRange, "smoothing order must be even");
  if (dphi) *dphi = order == 0 ? 1.0 : std::pow(2.0, order) * std::pow(std::sin(2.0 * kPi * s), order) /
                                           central_binomial(order);
  const double e = std::round(2.0 * s) / 2.0;
  return e + phi_small(s - e, order);
}

ContourGrid default_grid(Contour gamma, const RectLattice& lat, const WeightSpec& W) {
  ContourGrid g;
  g.gamma = gamma;
  if (gamma == Contour::Gamma1) {
    g.map_order = 0;
    g.delta = W.vanishes_at_origin ? 0.0 : lat.tau / 10.0;
  }
  const WeightSpec* w = &W;
  while (w->kind == WeightKind::OddPerturbed && w->base) w = w->base.get();
  if (w->kind == WeightKind::ExampleW && (w->alpha < -0.5 || w->beta < -0.5)) g.N_max = 1 << 22;
  return g;
}

std::vector<ContourNode> contour_nodes(const ContourGrid& g, const RectLattice& lat, int N, bool odd_only) {
  std::vector<ContourNode> out;
  out.reserve(odd_only ? N / 2 : N);
  const double p = 2.0 * lat.omega1;
  const bool g2 = g.gamma == Contour::Gamma2;
  const bool on_line = g2 || g.delta == 0.0;
  for (int k = odd_only ? 1 : 0; k < N; k += odd_only ? 2 : 1) {
    ContourNode nd;
    nd.s = double(k) / N;
    const double e = std::round(2.0 * nd.s) / 2.0;
    double dphi = 1.0;
    smoothing_map(nd.s, g.map_order, &dphi);
    const double off = phi_small(nd.s - e, g.map_order);
    nd.t = e + off;
    nd.jac = p * dphi;
    if (g2) {
      nd.z = cplx(p * nd.t, lat.tau);
      nd.base = e == 0.5 ? 2 : 3;
      nd.dz = cplx(p * off, 0.0);
    } else if (on_line) {
      nd.z = cplx(p * nd.t, 0.0);
      nd.base = e == 0.5 ? 1 : 0;
      nd.dz = cplx(p * off, 0.0);
    } else {
      nd.z = cplx(p * nd.t, g.delta);
    }
    out.push_back(nd);
  }
  return out;
}

QuadResult integrate_vector(const ContourGrid& g, const RectLattice& lat, int dim, const NodeIntegrand& f) {
  if (g.N < 4 || (g.N & (g.N - 1)) != 0) throw Error(ErrorKind::Config, "grid size must be a power of two");
  std::vector<CSum> acc(dim);
  std::vector<cplx> buf(dim), prev;
  auto absorb = [&](const std::vector<ContourNode>& nodes) {
    for (const auto& nd : nodes) {
      if (nd.jac == 0.0) continue;
      // The pole of gamma1 at the origin is only ever hit by an unindented grid.
      if (nd.base == 0 && nd.dz == cplx(0.0)) continue;
      WpValues v;
      try {
        v = node_kernel(nd, lat);
      } catch (const Error& e) {
        throw Error(ErrorKind::EvaluationFailure, std::string("kernel failed at a node: ") + e.what());
      }
      std::fill(buf.begin(), buf.end(), cplx(0.0));
      f(nd, v, buf.data());
      for (int i = 0; i < dim; ++i) {
        const cplx c = buf[i] * nd.jac;
        if (!finite(c)) {
          std::ostringstream os;
          os << "non-finite integrand at t = " << nd.t;
          throw Error(ErrorKind::EvaluationFailure, os.str());
        }
        acc[i].add(c);
      }
    }
  };
  int N = g.N;
  absorb(contour_nodes(g, lat, N, false));
  auto current = [&](int n) {
    std::vector<cplx> v(dim);
    for (int i = 0; i < dim; ++i) v[i] = acc[i].value() / double(n);
    return v;
  };
  prev = current(N);
  double err = 0.0;
  cplx worst_prev = 0.0, worst_cur = 0.0;
  while (true) {
    if (2 * N > g.N_max) {
      std::ostringstream os;
      os.precision(17);
      os << "no convergence at N = " << N << ": " << worst_prev << " vs " << worst_cur << " (change " << err << ")";
      throw Error(ErrorKind::ToleranceNotMet, os.str(), N);
    }
    absorb(contour_nodes(g, lat, 2 * N, true));
    N *= 2;
    std::vector<cplx> cur = current(N);
    err = 0.0;
    bool ok = true;
    for (int i = 0; i < dim; ++i) {
      const double d = std::abs(cur[i] - prev[i]);
      if (d >= err) {
        err = d;
        worst_prev = prev[i];
        worst_cur = cur[i];
      }
      if (d >= g.tol * (1.0 + std::abs(cur[i]))) ok = false;
    }
    prev = std::move(cur);
    if (ok) break;
  }
  return {prev, N, err};
}

IntegralResult contour_integral(const std::function<cplx(cplx)>& f, const ContourGrid& g, const RectLattice& lat) {
  const QuadResult r = integrate_vector(g, lat, 1, [&](const ContourNode& nd, const WpValues&, cplx* out) {
    out[0] = f(nd.z);
  });
  return {r.value[0], r.N, r.est_error};
}

MomentData moment_matrices(const WeightSpec& W, const BasisContext& ctx, const ContourGrid& g, int size,
                           bool with_wp) {
  const RectLattice& lat = ctx.lattice();
  const int npair = size * (size + 1) / 2;
  const int dim = with_wp ? 2 * npair : npair;
  BasisValues bv;
  const QuadResult r = integrate_vector(g, lat, dim, [&](const ContourNode& nd, const WpValues& v, cplx* out) {
    const cplx w = weight_eval_at(W, nd.z, v, lat);
    if (w == cplx(0.0)) return;  // also avoids 0 * inf where the weight underflows near a pole
    ctx.eval_at(nd.z, v, size - 1, bv);
    int k = 0;
    for (int i = 0; i < size; ++i)
      for (int j = i; j < size; ++j, ++k) {
        const cplx p = bv.b[i] * bv.b[j] * w;
        out[k] = p;
        if (with_wp) out[npair + k] = p * v.wp;
      }
  });
  MomentData m;
  m.mu.resize(size, size);
  if (with_wp) m.wp_mu.resize(size, size);
  int k = 0;
  for (int i = 0; i < size; ++i)
    for (int j = i; j < size; ++j, ++k) {
      m.mu(i, j) = m.mu(j, i) = r.value[k];
      if (with_wp) m.wp_mu(i, j) = m.wp_mu(j, i) = r.value[npair + k];
    }
  m.N = r.N;
  m.est_error = r.est_error;
  return m;
}

cplx bimoment(int i, int j, const WeightSpec& W, const AnchorConfig& anchor, const RectLattice& lat,
              const ContourGrid& g) {
  if (i < 0 || j < 0) throw Error(ErrorKind::ParameterOutOfRange, "basis index must be non-negative");
  BasisContext ctx(lat, anchor);
  BasisValues bv;
  const int jm = std::max(i, j);
  const QuadResult r = integrate_vector(g, lat, 1, [&](const ContourNode& nd, const WpValues& v, cplx* out) {
    const cplx w = weight_eval_at(W, nd.z, v, lat);
    if (w == cplx(0.0)) return;
    ctx.eval_at(nd.z, v, jm, bv);
    out[0] = bv.b[i] * bv.b[j] * w;
  });
  return r.value[0];
}

double indentation_discrepancy(const std::function<cplx(cplx)>& f, const ContourGrid& g, const RectLattice& lat) {
  if (g.gamma != Contour::Gamma1) return 0.0;
  ContourGrid up = g, down = g;
  const double d = g.delta != 0.0 ? std::abs(g.delta) : lat.tau / 10.0;
  up.delta = d;
  down.delta = -d;
  return std::abs(contour_integral(f, up, lat).value - contour_integral(f, down, lat).value);
}

PositivityReport check_weight_positivity(const WeightSpec& W, const RectLattice& lat, const ContourGrid& g,
                                         int samples) {
  PositivityReport rep;
  rep.min_value = INFINITY;
  ContourGrid plain = g;
  plain.map_order = 0;
  for (const auto& nd : contour_nodes(plain, lat, samples, false)) {
    // skip the parameters where endpoint-singular weights blow up or vanish
    const double dt = std::min({std::abs(nd.t), std::abs(nd.t - 0.5), std::abs(1.0 - nd.t)});
    if (dt < 1e-8) continue;
    const cplx w = weight_eval_at(W, nd.z, node_kernel(nd, lat), lat);
    if (W.vanishes_at_origin && w == cplx(0.0)) continue;  // underflow next to the origin
    ++rep.samples;
    rep.max_imag = std::max(rep.max_imag, std::abs(w.imag()));
    rep.min_value = std::min(rep.min_value, w.real());
    if (std::abs(w.imag()) > 1e-10 * (1.0 + std::abs(w))) rep.real = false;
    if (!(w.real() > 0.0)) rep.positive = false;
  }
  return rep;
}

}  // namespace eop
