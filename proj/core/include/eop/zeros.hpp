#pragma once

#include <functional>
#include <string>
#include <vector>

#include "eop/basis.hpp"
#include "eop/family.hpp"

namespace eop {

struct Zero {
  double t = 0.0;  // contour parameter in [0, 1)
  cplx z;
  double slope = 0.0;  // |df/dt| at the zero
  bool simple = true;
};

struct ZeroSet {
  Contour contour = Contour::Gamma2;
  std::vector<Zero> zeros;
  int M = 0;  // sample count the search settled at

  std::vector<double> params() const;
  std::size_t size() const { return zeros.size(); }
};

// Point of the contour at parameter t.
cplx contour_point(Contour contour, double t, const RectLattice& lat);

// Sign-change search for a real function of the contour parameter; poles lists
// parameters to exclude (radius 1e-6). circular closes [0, 1) into a loop.
ZeroSet find_zeros_fn(const std::function<double(double)>& f, const std::function<double(double)>& slope,
                      const std::vector<double>& poles, bool circular, int M = 512);

// Zeros of an a-polynomial on gamma1 or gamma2. Throws NotRealOnContour and UnstableCount.
ZeroSet find_zeros(const APolyCoeffs& c, Contour contour, int M = 512);

enum class Interlace { StrictFullyAlternating, WeakAlternating, NotInterlacing };
const char* to_string(Interlace k) noexcept;

struct InterlaceResult {
  Interlace kind = Interlace::NotInterlacing;
  bool strict = false;
  bool first_precedes = true;  // true when Z < W (W interlaces Z), false when W < Z
  double min_gap = 0.0;
};

// Tests Z < W, then W < Z, per the interlacing definition on ordered parameters.
InterlaceResult check_interlacing(std::vector<double> Z, std::vector<double> W);
// Z < W only.
InterlaceResult check_precedes(std::vector<double> Z, std::vector<double> W);

struct CheckReport {
  std::string suite;
  std::string claim;
  std::string label;  // case description
  std::string expected;
  std::string observed;
  bool pass = false;
  double margin = 0.0;
};

CheckReport verify_zero_theorem(const EopFamily& fam, int n);
CheckReport verify_interlacing_theorem(const EopFamily& fam, int n);
// F_{n+2} < F_n on the half contour omega3 + [0, omega1] (Gamma2 families with anchor omega1).
CheckReport verify_half_contour_interlacing(const EopFamily& fam, int n);

// Wronskian f_{n+1} f_n' - f_n f_{n+1}' sampled along gamma2; returns min and max of its real part.
std::pair<double, double> wronskian_range(const EopFamily& fam, int n, int samples = 1000);

}  // namespace eop
