#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eop/basis.hpp"
#include "eop/quadrature.hpp"
#include "eop/weight.hpp"

namespace eop {

struct EopFamily {
  int maxN = 0;
  RectLattice lattice;
  AnchorConfig anchor;
  WeightSpec weight;
  ContourGrid grid;        // N holds the node count the moments converged at
  Eigen::MatrixXcd mu;     // bimoments, (maxN+1) x (maxN+1)
  Eigen::MatrixXcd wp_mu;  // int wp b_i b_j W
  std::vector<cplx> D;     // D_0 = 1, ..., D_{maxN+1}; D_k is the k x k leading minor
  std::vector<APolyCoeffs> F;  // monic
  std::vector<APolyCoeffs> f;  // orthonormal
  std::vector<cplx> A, B, C;   // A_k for k <= maxN-2, B_k for k <= maxN-1, C_k for k <= maxN
  bool phase_normalized = false;  // true when some f_n needed the Re >= 0 sign convention
};

// Monic F_n from the leading (n+1) x (n+1) block; throws DegenerateMinor.
APolyCoeffs solve_monic(int n, const Eigen::MatrixXcd& mu, const AnchorConfig& anchor, const RectLattice& lat);

// Leading minors D_0..D_size with the pivot test; throws DegenerateMinor(k).
std::vector<cplx> leading_minors(const Eigen::MatrixXcd& mu);

EopFamily build_family(const WeightSpec& W, const AnchorConfig& anchor, const RectLattice& lat, ContourGrid grid,
                       int maxN);
// Same from precomputed moment matrices (maxN+1 square).
EopFamily family_from_moments(const MomentData& m, const WeightSpec& W, const AnchorConfig& anchor,
                              const RectLattice& lat, const ContourGrid& grid, int maxN);

struct Recurrence {
  cplx A, B, C;
};
Recurrence recurrence_coeffs(const EopFamily& fam, int k);

// Values of f_0..f_maxN (and derivatives) at z.
void eval_family(const EopFamily& fam, cplx z, std::vector<cplx>& f, std::vector<cplx>* df = nullptr,
                 std::vector<cplx>* d2f = nullptr);

// max |wp f_k - (A_k f_{k+2} + ... + A_{k-2} f_{k-2})| / max |wp f_k| over the points.
double recurrence_residual(const EopFamily& fam, int k, const std::vector<cplx>& points);

cplx cd_kernel(const EopFamily& fam, int n, cplx z, cplx u);

enum class CdBranch { Generic, Confluent, ConfluentMinus, HalfPeriod };
const char* to_string(CdBranch b) noexcept;
struct CdValue {
  cplx value;
  CdBranch branch;
};
CdValue cd_kernel_formula(const EopFamily& fam, int n, cplx z, cplx u);

// |D_k - (1/k!) k-fold tensor trapezoid of det^2 prod W| / |D_k| with nodes_per_axis nodes.
double andreief_check(int k, const WeightSpec& W, const AnchorConfig& anchor, const RectLattice& lat,
                      const ContourGrid& grid, int nodes_per_axis = 512);

// Determinant expansion of the defining formula divided by D_n (small n oracle).
std::vector<cplx> monic_by_determinant(int n, const Eigen::MatrixXcd& mu);

// Gram matrix int f_n f_m W from the moments.
Eigen::MatrixXcd gram_matrix(const EopFamily& fam);

// max_{j<n} |int F_n b_j W| / max_j |mu_{n,j}|
double orthogonality_residual(const EopFamily& fam, int n);

}  // namespace eop
