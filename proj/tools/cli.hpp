#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "eop/family.hpp"
#include "eop/lattice.hpp"
#include "eop/weight.hpp"
#include "eop/zeros.hpp"

namespace eopctl {

struct RunConfig {
  std::vector<double> half_periods;   // omega1 tau
  std::vector<double> branch_points;  // e1 e2 e3
  std::string anchor = "omega1";
  std::string contour = "gamma2";
  std::string weight = "exampleW";
  double alpha = 0.0, beta = 0.0;
  double c = 1.0;      // expDecay rate
  double eps = 0.1;    // oddPerturbed amplitude
  int maxn = 6;
  int n = -1;          // single degree for zeros / decompose / lift; -1 means all up to maxn
  std::string kind = "symmetric";  // lift: symmetric | example1 | example2 | general
  std::string out;     // output directory, stdout when empty
  double tol = 1e-11;  // quadrature tolerance, EOP_TOL overrides
  unsigned seed = 7;
};

eop::RectLattice make_lattice(const RunConfig& cfg);
// "omega1", "0.5*omega1", "0.7*omega1+omega3", "0.3", "0.2+0.1i" ...
eop::cplx parse_anchor(const std::string& text, const eop::RectLattice& lat);
eop::WeightSpec make_weight(const RunConfig& cfg, const eop::RectLattice& lat, eop::cplx a);
eop::EopFamily make_family(const RunConfig& cfg, int maxN);

// Reports of one verify suite.
std::vector<eop::CheckReport> run_suite(const std::string& suite, const RunConfig& cfg,
                                        std::vector<std::pair<std::string, std::string>>* artifacts = nullptr);
const std::vector<std::string>& suite_names();
std::string suite_claim(const std::string& suite);

// Lines recorded in every verify report.
std::vector<std::string> known_discrepancies();

// Full command line; returns the process exit code
// (0 ok, 1 numerical tolerance, 2 configuration, 3 theorem violation).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eopctl
