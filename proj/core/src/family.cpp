#include "eop/family.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "eop/errors.hpp"

namespace eop {

namespace {

constexpr double kPivotTol = 1e-12;

APolyCoeffs make_coeffs(std::vector<cplx> lambda, const AnchorConfig& anchor, const RectLattice& lat) {
  APolyCoeffs c;
  c.lambda = std::move(lambda);
  c.anchor = anchor;
  c.lattice = lat;
  return c;
}

Eigen::VectorXcd as_vector(const APolyCoeffs& c, int size) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(size);
  for (int i = 0; i < int(c.lambda.size()) && i < size; ++i) v[i] = c.lambda[i];
  return v;
}

cplx bilinear(const Eigen::MatrixXcd& M, const APolyCoeffs& x, const APolyCoeffs& y) {
  const int n = int(M.rows());
  return as_vector(x, n).transpose() * M * as_vector(y, n);
}

// Nearest lattice representative of w.
cplx reduce_near_zero(cplx w, const RectLattice& lat) {
  const double p = 2.0 * lat.omega1, q = 2.0 * lat.tau;
  return {w.real() - p * std::round(w.real() / p), w.imag() - q * std::round(w.imag() / q)};
}

double half_period_distance(cplx z, const RectLattice& lat) {
  double d = INFINITY;
  for (int k = 1; k <= 3; ++k) d = std::min(d, std::abs(reduce_near_zero(z - half_period(k, lat), lat)));
  return d;
}

}  // namespace

const char* to_string(CdBranch b) noexcept {
  switch (b) {
    case CdBranch::Generic: return "generic";
    case CdBranch::Confluent: return "confluent";
    case CdBranch::ConfluentMinus: return "confluent-minus";
    case CdBranch::HalfPeriod: return "half-period";
  }
  return "?";
}

namespace {

// D_0..D_kmax; each new pivot D_k / D_{k-1} is compared with the norm of the
// full moment row k - 1, so that a vanishing 1 x 1 minor is caught as well.
std::vector<cplx> minors_upto(const Eigen::MatrixXcd& mu, int kmax) {
  std::vector<cplx> D(kmax + 1);
  D[0] = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    D[k] = mu.topLeftCorner(k, k).partialPivLu().determinant();
    const double row = mu.row(k - 1).norm();
    if (!(std::abs(D[k]) >= kPivotTol * std::abs(D[k - 1]) * row) || !std::isfinite(std::abs(D[k]))) {
      std::ostringstream os;
      os << "leading minor D_" << k << " is numerically zero";
      throw Error(ErrorKind::DegenerateMinor, os.str(), k);
    }
  }
  return D;
}

}  // namespace

std::vector<cplx> leading_minors(const Eigen::MatrixXcd& mu) { return minors_upto(mu, int(mu.rows())); }

APolyCoeffs solve_monic(int n, const Eigen::MatrixXcd& mu, const AnchorConfig& anchor, const RectLattice& lat) {
  if (n < 0 || n >= mu.rows()) throw Error(ErrorKind::ParameterOutOfRange, "degree outside the moment table");
  std::vector<cplx> lam(n + 1, 0.0);
  lam[n] = 1.0;
  if (n > 0) {
    minors_upto(mu, n);
    const Eigen::MatrixXcd M = mu.topLeftCorner(n, n);
    const Eigen::VectorXcd rhs = -mu.block(0, n, n, 1);
    const Eigen::VectorXcd x = M.partialPivLu().solve(rhs);
    for (int i = 0; i < n; ++i) lam[i] = x[i];
  }
  return make_coeffs(std::move(lam), anchor, lat);
}

std::vector<cplx> monic_by_determinant(int n, const Eigen::MatrixXcd& mu) {
  std::vector<cplx> lam(n + 1);
  const cplx Dn = n == 0 ? cplx(1.0) : cplx(mu.topLeftCorner(n, n).determinant());
  for (int j = 0; j <= n; ++j) {
    // cofactor of the last row entry b_j
    Eigen::MatrixXcd minor(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0, cc = 0; c <= n; ++c) {
        if (c == j) continue;
        minor(r, cc++) = mu(r, c);
      }
    const cplx det = n == 0 ? cplx(1.0) : cplx(minor.determinant());
    lam[j] = (((n + j) % 2 == 0) ? 1.0 : -1.0) * det / Dn;
  }
  return lam;
}

EopFamily family_from_moments(const MomentData& m, const WeightSpec& W, const AnchorConfig& anchor,
                              const RectLattice& lat, const ContourGrid& grid, int maxN) {
  EopFamily fam;
  fam.maxN = maxN;
  fam.lattice = lat;
  fam.anchor = anchor;
  fam.weight = W;
  fam.grid = grid;
  fam.grid.N = m.N;
  fam.mu = m.mu.topLeftCorner(maxN + 1, maxN + 1);
  if (m.wp_mu.size() > 0) fam.wp_mu = m.wp_mu.topLeftCorner(maxN + 1, maxN + 1);
  fam.D = leading_minors(fam.mu);
  for (int n = 0; n <= maxN; ++n) {
    fam.F.push_back(solve_monic(n, fam.mu, anchor, lat));
    // D_{n+1} / D_n as the pairing of F_n with b_n
    cplx pivot = 0.0;
    for (int j = 0; j <= n; ++j) pivot += fam.F.back().lambda[j] * fam.mu(n, j);
    const cplx ratio = 1.0 / pivot;
    cplx s;
    if (ratio.real() > 0.0 && std::abs(ratio.imag()) <= 1e-14 * ratio.real()) {
      s = std::sqrt(ratio.real());
    } else {
      s = std::sqrt(ratio);  // principal branch already has Re >= 0
      fam.phase_normalized = true;
    }
    std::vector<cplx> lam = fam.F.back().lambda;
    for (auto& l : lam) l *= s;
    fam.f.push_back(make_coeffs(std::move(lam), anchor, lat));
  }
  if (fam.wp_mu.size() > 0) {
    for (int k = 0; k <= maxN; ++k) {
      fam.C.push_back(bilinear(fam.wp_mu, fam.f[k], fam.f[k]));
      if (k + 1 <= maxN) fam.B.push_back(bilinear(fam.wp_mu, fam.f[k], fam.f[k + 1]));
      if (k + 2 <= maxN) fam.A.push_back(bilinear(fam.wp_mu, fam.f[k], fam.f[k + 2]));
    }
  }
  return fam;
}

EopFamily build_family(const WeightSpec& W, const AnchorConfig& anchor, const RectLattice& lat, ContourGrid grid,
                       int maxN) {
  if (maxN < 0) throw Error(ErrorKind::ParameterOutOfRange, "maxN must be non-negative");
  BasisContext ctx(lat, anchor);
  const MomentData m = moment_matrices(W, ctx, grid, maxN + 1, true);
  return family_from_moments(m, W, anchor, lat, grid, maxN);
}

Recurrence recurrence_coeffs(const EopFamily& fam, int k) {
  if (k < 0 || k + 2 > fam.maxN) throw Error(ErrorKind::ParameterOutOfRange, "recurrence needs k + 2 <= maxN");
  return {fam.A[k], fam.B[k], fam.C[k]};
}

void eval_family(const EopFamily& fam, cplx z, std::vector<cplx>& f, std::vector<cplx>* df, std::vector<cplx>* d2f) {
  BasisContext ctx(fam.lattice, fam.anchor);
  BasisValues bv;
  const int derivs = d2f ? 2 : (df ? 1 : 0);
  ctx.eval(z, fam.maxN, bv, derivs);
  const int n = fam.maxN + 1;
  f.assign(n, 0.0);
  if (df) df->assign(n, 0.0);
  if (d2f) d2f->assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const auto& lam = fam.f[k].lambda;
    for (int j = 0; j < int(lam.size()); ++j) {
      f[k] += lam[j] * bv.b[j];
      if (df) (*df)[k] += lam[j] * bv.db[j];
      if (d2f) (*d2f)[k] += lam[j] * bv.d2b[j];
    }
  }
}

double recurrence_residual(const EopFamily& fam, int k, const std::vector<cplx>& points) {
  if (k < 0 || k + 2 > fam.maxN) throw Error(ErrorKind::ParameterOutOfRange, "recurrence needs k + 2 <= maxN");
  double worst = 0.0, scale = 0.0;
  std::vector<cplx> f;
  for (cplx z : points) {
    eval_family(fam, z, f);
    const cplx lhs = wp(z, fam.lattice) * f[k];
    cplx rhs = fam.A[k] * f[k + 2] + fam.B[k] * f[k + 1] + fam.C[k] * f[k];
    if (k >= 1) rhs += fam.B[k - 1] * f[k - 1];
    if (k >= 2) rhs += fam.A[k - 2] * f[k - 2];
    worst = std::max(worst, std::abs(lhs - rhs));
    scale = std::max(scale, std::abs(lhs));
  }
  return scale > 0.0 ? worst / scale : worst;
}

cplx cd_kernel(const EopFamily& fam, int n, cplx z, cplx u) {
  if (n < 0 || n > fam.maxN + 1) throw Error(ErrorKind::ParameterOutOfRange, "kernel index outside the family");
  std::vector<cplx> fz, fu;
  eval_family(fam, z, fz);
  eval_family(fam, u, fu);
  cplx s = 0.0;
  for (int j = 0; j < n; ++j) s += fz[j] * fu[j];
  return s;
}

CdValue cd_kernel_formula(const EopFamily& fam, int n, cplx z, cplx u) {
  if (n < 0 || n + 1 > fam.maxN) throw Error(ErrorKind::ParameterOutOfRange, "formula needs n + 1 <= maxN");
  if (n == 0) return {0.0, CdBranch::Generic};
  const RectLattice& lat = fam.lattice;
  // (coefficient, p, q) for the three terms G_{p,q}
  struct Term {
    cplx c;
    int p, q;
  };
  std::vector<Term> terms{{fam.A[n - 1], n + 1, n - 1}, {fam.B[n - 1], n, n - 1}};
  if (n >= 2) terms.push_back({fam.A[n - 2], n, n - 2});

  const cplx wz = wp(z, lat), wu = wp(u, lat);
  if (std::abs(wz - wu) > 1e-6 * (1.0 + std::abs(wz))) {
    std::vector<cplx> fz, fu;
    eval_family(fam, z, fz);
    eval_family(fam, u, fu);
    cplx s = 0.0;
    for (const auto& t : terms) s += t.c * (fz[t.p] * fu[t.q] - fu[t.p] * fz[t.q]);
    return {s / (wz - wu), CdBranch::Generic};
  }
  const double scale = std::min(lat.omega1, lat.tau);
  const cplx dp = reduce_near_zero(u - z, lat), dm = reduce_near_zero(u + z, lat);
  std::vector<cplx> f, df, d2f;
  try {
    if (std::abs(dp) <= std::abs(dm)) {
      const cplx m = z + 0.5 * dp;
      if (half_period_distance(m, lat) < 1e-7 * scale) {
        eval_family(fam, m, f, &df, &d2f);
        cplx s = 0.0;
        for (const auto& t : terms) s += t.c * (d2f[t.p] * f[t.q] - f[t.p] * d2f[t.q]);
        return {s / wp_second(m, lat), CdBranch::HalfPeriod};
      }
      eval_family(fam, m, f, &df);
      cplx s = 0.0;
      for (const auto& t : terms) s += t.c * (df[t.p] * f[t.q] - f[t.p] * df[t.q]);
      return {s / wp_prime(m, lat), CdBranch::Confluent};
    }
    const cplx m = z - 0.5 * dm;  // m ~ z and -m ~ u
    std::vector<cplx> g, dg;
    eval_family(fam, m, f);
    eval_family(fam, -m, g, &dg);
    cplx s = 0.0;
    for (const auto& t : terms) s += t.c * (f[t.p] * dg[t.q] - dg[t.p] * f[t.q]);
    return {s / wp_prime(m, lat), CdBranch::ConfluentMinus};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PoleAt) throw Error(ErrorKind::NeedsDerivative, e.what());
    throw;
  }
}

double andreief_check(int k, const WeightSpec& W, const AnchorConfig& anchor, const RectLattice& lat,
                      const ContourGrid& grid, int nodes_per_axis) {
  if (k < 1 || k > 3) throw Error(ErrorKind::ParameterOutOfRange, "Andreief check supports k in {1,2,3}");
  BasisContext ctx(lat, anchor);
  const MomentData m = moment_matrices(W, ctx, grid, k, false);
  const cplx Dk = m.mu.determinant();
  // node data: b_0..b_{k-1} and W * dz/ds / N
  std::vector<std::array<cplx, 3>> b;
  std::vector<cplx> wt;
  BasisValues bv;
  for (const auto& nd : contour_nodes(grid, lat, nodes_per_axis, false)) {
    if (nd.jac == 0.0 || (nd.base == 0 && nd.dz == cplx(0.0))) continue;
    const WpValues v = nd.base >= 0 ? wp_all_near(nd.base, nd.dz, lat) : wp_all(nd.z, lat);
    const cplx w = weight_eval_at(W, nd.z, v, lat);
    if (w == cplx(0.0)) continue;
    ctx.eval_at(nd.z, v, k - 1, bv);
    std::array<cplx, 3> row{};
    for (int j = 0; j < k; ++j) row[j] = bv.b[j];
    b.push_back(row);
    wt.push_back(w * nd.jac / double(nodes_per_axis));
  }
  const int M = int(b.size());
  cplx s = 0.0;
  if (k == 1) {
    for (int i = 0; i < M; ++i) s += wt[i];
  } else if (k == 2) {
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) {
        const cplx d = b[i][0] * b[j][1] - b[i][1] * b[j][0];
        s += d * d * wt[i] * wt[j];
      }
    s /= 2.0;
  } else {
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j)
        for (int l = 0; l < M; ++l) {
          const auto &x = b[i], &y = b[j], &z = b[l];
          const cplx d = x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0]) +
                         x[2] * (y[0] * z[1] - y[1] * z[0]);
          s += d * d * wt[i] * wt[j] * wt[l];
        }
    s /= 6.0;
  }
  return std::abs(Dk - s) / std::abs(Dk);
}

Eigen::MatrixXcd gram_matrix(const EopFamily& fam) {
  const int n = fam.maxN + 1;
  Eigen::MatrixXcd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = bilinear(fam.mu, fam.f[i], fam.f[j]);
  return G;
}

double orthogonality_residual(const EopFamily& fam, int n) {
  if (n == 0) return 0.0;
  const Eigen::VectorXcd lam = as_vector(fam.F[n], fam.maxN + 1);
  double worst = 0.0, scale = 0.0;
  for (int j = 0; j <= fam.maxN; ++j) scale = std::max(scale, std::abs(fam.mu(n, j)));
  for (int j = 0; j < n; ++j) {
    const cplx r = (lam.transpose() * fam.mu.col(j))(0);
    worst = std::max(worst, std::abs(r));
  }
  return worst / scale;
}

}  // namespace eop
