#include "eop/io.hpp"

#include <cstdio>
#include <sstream>

#include "eop/errors.hpp"
#include "json.hpp"

namespace eop {

using nlohmann::json;

namespace {

json cplx_json(cplx v) { return json::array({v.real(), v.imag()}); }

json lattice_json(const RectLattice& lat) {
  return json{{"omega1", lat.omega1}, {"tau", lat.tau},   {"e1", lat.e1},
              {"e2", lat.e2},         {"e3", lat.e3},     {"g2", lat.g2},
              {"g3", lat.g3},         {"discriminant", lat.discriminant}, {"eta1", lat.eta1}};
}

json anchor_json(const AnchorConfig& a) {
  return json{{"re", a.a.real()}, {"im", a.a.imag()}, {"gamma", to_string(a.gamma)}};
}

json apoly_json(const APolyCoeffs& c) {
  json lam = json::array();
  for (const auto& v : c.lambda) lam.push_back(cplx_json(v));
  return json{{"lattice", {{"omega1", c.lattice.omega1}, {"tau", c.lattice.tau}}},
              {"anchor", anchor_json(c.anchor)},
              {"lambda", lam}};
}

json vec_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(cplx_json(x));
  return a;
}

json report_json(const CheckReport& r) {
  return json{{"case", r.label},       {"claim", r.claim}, {"expected", r.expected},
              {"observed", r.observed}, {"pass", r.pass},   {"margin", r.margin}};
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string apoly_to_json(const APolyCoeffs& c) { return apoly_json(c).dump(2); }

APolyCoeffs apoly_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    const RectLattice lat = lattice_from_half_periods(j.at("lattice").at("omega1").get<double>(),
                                                      j.at("lattice").at("tau").get<double>());
    const auto& a = j.at("anchor");
    const AnchorConfig anchor =
        make_anchor(cplx(a.at("re").get<double>(), a.at("im").get<double>()),
                    contour_from_string(a.at("gamma").get<std::string>()), lat);
    APolyCoeffs c{{}, anchor, lat};
    for (const auto& v : j.at("lambda")) c.lambda.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, std::string("bad coefficient archive: ") + e.what());
  }
}

std::string lattice_to_json(const RectLattice& lat) { return lattice_json(lat).dump(2); }

std::string integral_to_json(const IntegralResult& r) {
  return json{{"N", r.N}, {"value", cplx_json(r.value)}, {"est_error", r.est_error}}.dump(2);
}

std::string family_to_json(const EopFamily& fam) {
  json F = json::array(), f = json::array();
  for (const auto& c : fam.F) F.push_back(vec_json(c.lambda));
  for (const auto& c : fam.f) f.push_back(vec_json(c.lambda));
  json j{{"lattice", lattice_json(fam.lattice)},
         {"anchor", anchor_json(fam.anchor)},
         {"weight", fam.weight.describe()},
         {"maxN", fam.maxN},
         {"grid", {{"N", fam.grid.N}, {"map_order", fam.grid.map_order}, {"delta", fam.grid.delta}}},
         {"D", vec_json(fam.D)},
         {"monic", F},
         {"orthonormal", f},
         {"recurrence", {{"A", vec_json(fam.A)}, {"B", vec_json(fam.B)}, {"C", vec_json(fam.C)}}},
         {"phase_normalized", fam.phase_normalized}};
  return j.dump(2);
}

std::string recurrence_csv(const EopFamily& fam) {
  std::ostringstream os;
  os << "k,A_re,A_im,B_re,B_im,C_re,C_im\n";
  auto put = [&](const std::vector<cplx>& v, std::size_t k) {
    if (k < v.size())
      os << ',' << fmt17(v[k].real()) << ',' << fmt17(v[k].imag());
    else
      os << ",,";
  };
  for (std::size_t k = 0; k < fam.C.size(); ++k) {
    os << k;
    put(fam.A, k);
    put(fam.B, k);
    put(fam.C, k);
    os << '\n';
  }
  return os.str();
}

std::string zeros_csv(const std::vector<std::pair<int, ZeroSet>>& sets) {
  std::ostringstream os;
  os << "n,contour,t,re_z,im_z\n";
  for (const auto& [n, zs] : sets)
    for (const auto& z : zs.zeros)
      os << n << ',' << to_string(zs.contour) << ',' << fmt17(z.t) << ',' << fmt17(z.z.real()) << ','
         << fmt17(z.z.imag()) << '\n';
  return os.str();
}

std::string reports_to_json(const std::string& suite, const std::string& claim,
                            const std::vector<std::string>& notes, const std::vector<CheckReport>& reports) {
  json checks = json::array();
  bool pass = true;
  for (const auto& r : reports) {
    checks.push_back(report_json(r));
    pass = pass && r.pass;
  }
  return json{{"suite", suite}, {"claim", claim}, {"notes", notes}, {"checks", checks}, {"pass", pass}}.dump(2);
}

std::string mop_reports_to_json(const std::vector<MopReport>& reports) {
  json out = json::array();
  for (const auto& r : reports) {
    json j{{"weight", r.weight},
           {"a", cplx_json(r.a)},
           {"n", r.n},
           {"residuals_1", r.residuals.r1},
           {"residuals_2", r.residuals.r2},
           {"residual_3", r.residuals.r3_applicable ? json(r.residuals.r3) : json(nullptr)},
           {"pass", r.pass}};
    if (r.have_coeffs) {
      j["kappa"] = cplx_json(r.kappa);
      j["nu"] = cplx_json(r.nu);
      j["c_n"] = cplx_json(r.c);
    }
    out.push_back(j);
  }
  return out.dump(2);
}

std::string corollary_csv(const std::vector<CorollaryRow>& rows) {
  std::ostringstream os;
  os << "n,alpha,beta,interlace_S,interlace_R,min_gap\n";
  for (const auto& r : rows)
    os << r.n << ',' << fmt17(r.alpha) << ',' << fmt17(r.beta) << ','
       << (r.s_applicable ? (r.interlace_S ? "1" : "0") : "na") << ',' << (r.interlace_R ? 1 : 0) << ','
       << fmt17(r.min_gap) << '\n';
  return os.str();
}

}  // namespace eop
