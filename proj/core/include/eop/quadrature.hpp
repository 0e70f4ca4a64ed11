#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "eop/basis.hpp"
#include "eop/lattice.hpp"
#include "eop/weight.hpp"

namespace eop {

// Periodic trapezoid on z(t) = offset + 2 omega1 t, t in [0, 1), optionally
// composed with a smoothing map t = phi(s) whose derivative vanishes to order
// map_order at s = 0 and s = 1/2.
struct ContourGrid {
  Contour gamma = Contour::Gamma2;
  int N = 64;              // starting count; results report the final one
  int N_max = 1 << 20;
  double delta = 0.0;      // indentation of gamma1 (positive = upward)
  int map_order = 6;       // even; 0 gives the plain trapezoid
  double tol = 1e-11;
};

// Grid conventions for a weight: gamma1 is indented by tau/10 unless W vanishes
// at the origin, and weights with an endpoint exponent below zero get 2^22 nodes.
ContourGrid default_grid(Contour gamma, const RectLattice& lat, const WeightSpec& W);

struct ContourNode {
  double s = 0.0;    // uniform parameter
  double t = 0.0;    // contour parameter
  cplx z;
  int base = -1;     // half-period index the offset dz is taken from, -1 if none
  cplx dz;
  double jac = 0.0;  // dz/ds
};

// phi(s) and phi'(s) of the smoothing map.
double smoothing_map(double s, int order, double* dphi = nullptr);

// Nodes k/N for k in [0, N), or only the odd k when odd_only.
std::vector<ContourNode> contour_nodes(const ContourGrid& g, const RectLattice& lat, int N, bool odd_only);

struct QuadResult {
  std::vector<cplx> value;
  int N = 0;
  double est_error = 0.0;
};

// f fills out[0..dim) at a node; nodes where the map derivative vanishes are skipped.
using NodeIntegrand = std::function<void(const ContourNode&, const WpValues&, cplx* out)>;

QuadResult integrate_vector(const ContourGrid& g, const RectLattice& lat, int dim, const NodeIntegrand& f);

struct IntegralResult {
  cplx value;
  int N = 0;
  double est_error = 0.0;
};

IntegralResult contour_integral(const std::function<cplx(cplx)>& f, const ContourGrid& g, const RectLattice& lat);

cplx bimoment(int i, int j, const WeightSpec& W, const AnchorConfig& anchor, const RectLattice& lat,
              const ContourGrid& g);

struct MomentData {
  Eigen::MatrixXcd mu;     // int b_i b_j W
  Eigen::MatrixXcd wp_mu;  // int wp b_i b_j W (empty unless requested)
  int N = 0;
  double est_error = 0.0;
};

MomentData moment_matrices(const WeightSpec& W, const BasisContext& ctx, const ContourGrid& g, int size,
                           bool with_wp);

// |I_up - I_down| for the gamma1 indentation, reported as a diagnostic.
double indentation_discrepancy(const std::function<cplx(cplx)>& f, const ContourGrid& g, const RectLattice& lat);

struct PositivityReport {
  bool real = true;
  bool positive = true;
  double max_imag = 0.0;
  double min_value = 0.0;
  int samples = 0;
};

PositivityReport check_weight_positivity(const WeightSpec& W, const RectLattice& lat, const ContourGrid& g,
                                         int samples = 1024);

}  // namespace eop
