#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eop/basis.hpp"
#include "eop/family.hpp"
#include "eop/oprl.hpp"
#include "eop/polynomial.hpp"
#include "eop/weight.hpp"

namespace eop {

// f = p1(wp) + b1 p2(wp) + (wp'(a)/2) p3(wp), q = p1 (wp(a) - x) + (wp'(a)/2) p2(wp(a)).
struct Decomposition {
  int n = 0, m = 0, k = 0;  // n = 2m + k
  CPoly p1, p2, p3, q;
  cplx wpa, h;  // wp(a) and wp'(a)/2
};

Decomposition decompose(const APolyCoeffs& c);
cplx eval_decomposition(const Decomposition& d, const BasisContext& ctx, cplx z);

// (sqrt(prod (x - e_l)))^j (W(z) + sign W(-z)) / (2 (wp(a) - x)), z the first-half preimage of x.
double w_pm(int j, int sign, double x, double dlo, double dhi, const WeightSpec& W, double wpa, const RectLattice& lat);
double w_pm(int j, int sign, double x, const WeightSpec& W, double wpa, const RectLattice& lat);
IntervalWeight w_pm_weight(int j, int sign, const WeightSpec& W, double wpa, const RectLattice& lat);

struct MopResiduals {
  std::vector<double> r1, r2;  // per l, each relative to the integral of the absolute integrand
  double r3 = 0.0;
  bool r3_applicable = false;  // orthogonality against b1 only exists for n >= 2
  double max() const;
};

// Conditions of the type II multiple orthogonality for F_n of a gamma2 family with real anchor on gamma1.
MopResiduals mop_residuals(const EopFamily& fam, int n);

// int P_m(x, w) w(x) / (wp(a) - x) dx and the w-hat analogue.
double cauchy_transform(const IntervalWeight& w, const Poly& P, double wpa);
std::pair<double, double> cauchy_transforms(const IntervalWeight& w, const IntervalWeight& what, int m, double wpa);

struct GeneralLift {
  APolyCoeffs F;
  Decomposition parts;
  double c = 0.0, kappa = 0.0, nu = 0.0;
};

// F_n for W = (wp(a) - wp) w(wp) sqrt(prod(wp - e_l)) on gamma2, a real in (0, 2 omega1).
// Throws DegenerateDenominator.
GeneralLift general_lift(const IntervalWeight& w, double a, const RectLattice& lat, int n);

struct EvenWeightCoeffs {
  cplx kappa, nu;
  double residual = 0.0;  // coefficient misfit of both two-term expansions
  bool q_vanishes = false, p2_vanishes = false;
};

// Fits q_n and p_{n,2} of an even-weight family to the two-term OPRL expansions.
EvenWeightCoeffs even_weight_coeffs(const EopFamily& fam, int n);

}  // namespace eop
