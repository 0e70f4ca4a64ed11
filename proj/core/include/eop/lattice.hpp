#pragma once

#include <complex>

namespace eop {

using cplx = std::complex<double>;

namespace detail {
// Nome powers for the theta series, in the orientation with nome <= exp(-pi).
struct ThetaData {
  bool rotated = false;  // true when the series run on i*Lambda
  double a = 0.0, b = 0.0;  // real and imaginary half-periods of the working lattice
  int nterms = 0;
  double qh[16] = {};  // q^((n+1/2)^2)
  double qs[16] = {};  // q^(n^2)
  double th1p0 = 0.0, th2_0 = 0.0, th3_0 = 0.0, th4_0 = 0.0;
  double E1 = 0.0, E2 = 0.0, E3 = 0.0;
  double eta1 = 0.0, eta3_im = 0.0;
};
}  // namespace detail

// Rectangular lattice 2*omega1*Z + 2i*tau*Z with real invariants.
struct RectLattice {
  double omega1 = 0.0;
  double tau = 0.0;
  double e1 = 0.0, e2 = 0.0, e3 = 0.0;
  double g2 = 0.0, g3 = 0.0;
  double discriminant = 0.0;
  // Quasi-period increments: zeta(z + 2 omega_i) = zeta(z) + 2 eta_i.
  double eta1 = 0.0;
  cplx eta3{};
  detail::ThetaData theta;

  cplx omega3() const { return {0.0, tau}; }
  cplx omega2() const { return {omega1, tau}; }
  double e(int k) const { return k == 1 ? e1 : (k == 2 ? e2 : e3); }
};

struct TorusPoint {
  cplx z;
};

// Everything the Weierstrass kernel produces at one point.
struct WpValues {
  cplx wp;
  cplx wp1;                 // wp'
  cplx d1, d2, d3;          // wp - e_k, each with relative accuracy near its half-period
  cplx d(int k) const { return k == 1 ? d1 : (k == 2 ? d2 : d3); }
};

RectLattice lattice_from_half_periods(double omega1, double tau);
RectLattice lattice_from_branch_points(double e1, double e2, double e3);

TorusPoint reduce_to_fundamental(cplx z, const RectLattice& lat);

cplx wp(cplx z, const RectLattice& lat);
cplx wp_prime(cplx z, const RectLattice& lat);
cplx wp_second(cplx z, const RectLattice& lat);
cplx wp_third(cplx z, const RectLattice& lat);
cplx zeta_w(cplx z, const RectLattice& lat);

WpValues wp_all(cplx z, const RectLattice& lat);

// Values at omega_k + dz (omega_0 = 0, omega_2 = omega1 + omega3), keeping
// wp - e_k relatively accurate for tiny dz through the half-period shift
// (wp(z) - e_k)(wp(z - omega_k) - e_k) = (e_k - e_i)(e_k - e_j).
WpValues wp_all_near(int k, cplx dz, const RectLattice& lat);
cplx half_period(int k, const RectLattice& lat);

// Parameter t in [0, 1/2] with wp(omega3 + 2 omega1 t) = x, for x in [e3, e2].
double wp_inverse_gamma2(double x, const RectLattice& lat);
// Parameter t in (0, 1/2] with wp(2 omega1 t) = x, for x >= e1.
double wp_inverse_gamma1(double x, const RectLattice& lat);

// Arithmetic-geometric mean of two positive numbers.
double agm(double a, double b);

// Radius of the pole guard around lattice points.
double pole_guard(const RectLattice& lat);

}  // namespace eop
