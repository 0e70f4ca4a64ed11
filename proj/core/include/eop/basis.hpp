#pragma once

#include <string>
#include <vector>

#include "eop/lattice.hpp"

namespace eop {

enum class Contour { Gamma1, Gamma2 };

const char* to_string(Contour c) noexcept;
Contour contour_from_string(const std::string& s);

// Anchor a of the simple pole and the orthogonality contour (a must not lie on it).
struct AnchorConfig {
  cplx a;
  Contour gamma = Contour::Gamma2;
};

// Validates the anchor placement rules; throws ParameterOutOfRange.
AnchorConfig make_anchor(cplx a, Contour gamma, const RectLattice& lat);

struct APolyCoeffs {
  std::vector<cplx> lambda;
  AnchorConfig anchor;
  RectLattice lattice;
};

// Values of b_j and optionally their first two z-derivatives at one point.
struct BasisValues {
  std::vector<cplx> b, db, d2b;
  cplx wp, wp1, wp2;
};

// Precomputed anchor data; evaluates the whole basis with one kernel call.
class BasisContext {
 public:
  BasisContext(const RectLattice& lat, const AnchorConfig& anchor);

  const RectLattice& lattice() const { return lat_; }
  const AnchorConfig& anchor() const { return anchor_; }
  cplx wp_a() const { return wpa_; }
  cplx wp1_a() const { return wp1a_; }

  // Fills b_0..b_jmax; derivs = 0, 1 or 2. With skip_b1 the b_1 slot is left at
  // zero, which allows evaluation at the anchor itself.
  void eval(cplx z, int jmax, BasisValues& out, int derivs = 0, bool skip_b1 = false) const;
  // Same, reusing kernel values already computed at z.
  void eval_at(cplx z, const WpValues& v, int jmax, BasisValues& out, int derivs = 0, bool skip_b1 = false) const;
  cplx b1(cplx z) const;

  // Distance from z to the nearest point congruent to w.
  double torus_distance(cplx z, cplx w) const;

 private:
  cplx b1_from(cplx z, const WpValues& v) const;

  RectLattice lat_;
  AnchorConfig anchor_;
  cplx wpa_, wp1a_, zetaa_;
};

cplx basis_eval(int j, cplx z, const AnchorConfig& anchor, const RectLattice& lat);
cplx eval_apoly(const APolyCoeffs& c, cplx z);
// Derivative of order 0, 1 or 2 of the expansion.
cplx eval_apoly_deriv(const APolyCoeffs& c, cplx z, int order);

bool has_pole_at_a(const APolyCoeffs& c);

struct LaurentLeading {
  int degree;
  cplx leading;
};
// Throws ZeroFunction when every coefficient is below tolerance.
LaurentLeading laurent_leading(const APolyCoeffs& c);
int poly_degree(const std::vector<cplx>& lambda);

}  // namespace eop
