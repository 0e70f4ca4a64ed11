#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eop/basis.hpp"
#include "eop/family.hpp"
#include "eop/mop.hpp"
#include "eop/quadrature.hpp"
#include "eop/zeros.hpp"

namespace eop {

// %.17g
std::string fmt17(double v);

std::string apoly_to_json(const APolyCoeffs& c);
APolyCoeffs apoly_from_json(const std::string& text);

std::string lattice_to_json(const RectLattice& lat);
std::string integral_to_json(const IntegralResult& r);

// Archive with lattice, anchor, weight, coefficient tables, minors, recurrence and grid size.
std::string family_to_json(const EopFamily& fam);
// k, A_k, B_k, C_k (real parts and imaginary parts)
std::string recurrence_csv(const EopFamily& fam);

// n, contour, t, Re z, Im z
std::string zeros_csv(const std::vector<std::pair<int, ZeroSet>>& sets);

// {suite, claim, notes, checks: [{case, expected, observed, pass, margin}], pass}
std::string reports_to_json(const std::string& suite, const std::string& claim,
                            const std::vector<std::string>& notes, const std::vector<CheckReport>& reports);

struct MopReport {
  std::string weight;
  cplx a;
  int n = 0;
  MopResiduals residuals;
  bool have_coeffs = false;
  cplx kappa, nu, c;
  bool pass = false;
};
std::string mop_reports_to_json(const std::vector<MopReport>& reports);

struct CorollaryRow {
  int n;
  double alpha, beta;
  bool interlace_S, interlace_R;
  bool s_applicable;
  double min_gap;
};
// n, alpha, beta, interlace_S, interlace_R, min_gap
std::string corollary_csv(const std::vector<CorollaryRow>& rows);

}  // namespace eop
