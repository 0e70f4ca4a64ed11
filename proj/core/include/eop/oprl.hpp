#pragma once

#include <vector>

#include "eop/basis.hpp"
#include "eop/polynomial.hpp"
#include "eop/weight.hpp"
#include "eop/zeros.hpp"

namespace eop {

// Monic three-term recurrence P_{k+1} = (x - a_k) P_k - b_k P_{k-1}, b_0 = total mass.
struct RecurrenceTable {
  std::vector<double> a, b;
};

// Discretized Stieltjes procedure on a tanh-sinh rule, refined until the
// coefficients settle. Throws MomentDivergence.
RecurrenceTable stieltjes(const IntervalWeight& w, int n);
std::vector<Poly> polys_from_recurrence(const RecurrenceTable& r, int n);

Poly monic_oprl(const IntervalWeight& w, int n);
// P_0..P_n
std::vector<Poly> monic_oprl_all(const IntervalWeight& w, int n);

// max_{j<deg p} |int p x^j w| / int |p x^j| w, by the dual quadrature.
double oprl_residual(const IntervalWeight& w, const Poly& p);

// Monic Jacobi polynomial for (1 - x)^alpha (1 + x)^beta on [-1, 1].
Poly jacobi_monic(int n, double alpha, double beta);
RecurrenceTable jacobi_recurrence(int n, double alpha, double beta);

// (x - e3)(e2 - x)/(e1 - x) w and (x - e1)(x - e2)(x - e3) w on [e3, e2].
IntervalWeight w_tilde(const IntervalWeight& w, const RectLattice& lat);
IntervalWeight w_hat(const IntervalWeight& w, const RectLattice& lat);

// e3 < 0 and e3 < e2 < |e3|/2; throws ConditionOneViolated.
void require_condition_one(const RectLattice& lat);

// Coefficients of P(wp) + b1 Q(wp) in the basis b_0..b_n.
APolyCoeffs apoly_from_parts(const CPoly& P, const CPoly& Q, const AnchorConfig& anchor, const RectLattice& lat,
                             int n);

// F_n for the even lift of w with a = omega1 on gamma2.
APolyCoeffs lift_symmetric(const IntervalWeight& w, const RectLattice& lat, int n);

// int P_n^{(alpha+1,beta+1)}(s) (1-s)^{alpha+1} (1+s)^{beta+1} / (3 - s) ds
double lambda_n(int n, double alpha, double beta);

// (P_{j+1}(x) P_j(y) - P_{j+1}(y) P_j(x)) / (x - y) for monic Jacobi P.
double cd_like_kernel(int j, double alpha, double beta, double x, double y);
// Same as a polynomial in x.
Poly cd_like_kernel_poly(int j, double alpha, double beta, double y);

// S_n = K_{n+1}^{(alpha-1,beta-1)}(x, 3), degree n + 1.
Poly s_poly(int n, double alpha, double beta);
// R_m = lambda_{m-1} P_m^{(alpha+1,beta+1)} - lambda_m P_{m-1}^{(alpha+1,beta+1)}; R_0 = 1.
Poly r_poly(int m, double alpha, double beta);

// Interlacings S_n < P_n, P_n < R_{n-1} and the chain through P_{n-1}^{(alpha+1,beta+1)}.
std::vector<CheckReport> verify_corollary_jacobi(int n, double alpha, double beta);

// P_n(w) < P_{n-1}(w~) on [e3, e2].
CheckReport verify_oprl_interlacing(const IntervalWeight& w, const RectLattice& lat, int n);

// Closed forms of the two Jacobi examples on the lattice with branch points (1, 0, -1).
APolyCoeffs example1_family(int n, double alpha, double beta, const RectLattice& lat);
APolyCoeffs example2_family(int n, double alpha, double beta, const RectLattice& lat);

// Coefficientwise distance max |c_i - d_i| / max |d_i| after monic normalisation.
double coeff_distance(const APolyCoeffs& c, const APolyCoeffs& d);

}  // namespace eop
