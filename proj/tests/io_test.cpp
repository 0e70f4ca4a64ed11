#include <sstream>

#include <gtest/gtest.h>

#include "eop/errors.hpp"
#include "eop/io.hpp"
#include "json.hpp"

using namespace eop;
using nlohmann::json;

namespace {

const RectLattice& square() {
  static const RectLattice lat = lattice_from_branch_points(1, 0, -1);
  return lat;
}

const EopFamily& small_family() {
  static const EopFamily fam = [] {
    const auto& lat = square();
    const auto W = weight_example_w(0.5, 0.5);
    return build_family(W, make_anchor(0.8, Contour::Gamma2, lat), lat, default_grid(Contour::Gamma2, lat, W), 4);
  }();
  return fam;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Io, Fmt17RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1.3110287771460598}) EXPECT_EQ(std::stod(fmt17(v)), v);
}

TEST(Io, APolyRoundTrip) {
  const auto& lat = lattice_from_half_periods(0.5, 0.75);
  const APolyCoeffs c{{cplx(0.1, 0.0), cplx(1.0 / 3.0, -2e-17), cplx(-7.25, 1e-300)},
                      make_anchor(cplx(0.3, 0.75), Contour::Gamma1, lat), lat};
  const APolyCoeffs d = apoly_from_json(apoly_to_json(c));
  EXPECT_EQ(d.lambda, c.lambda);
  EXPECT_EQ(d.anchor.a, c.anchor.a);
  EXPECT_EQ(d.anchor.gamma, Contour::Gamma1);
  EXPECT_EQ(d.lattice.omega1, lat.omega1);
  EXPECT_EQ(d.lattice.tau, lat.tau);
  EXPECT_EQ(d.lattice.e1, lat.e1);
}

TEST(Io, BadArchive) {
  for (const char* text : {"{", "{\"lattice\": {\"omega1\": 1}}", "[1, 2]",
                           "{\"lattice\":{\"omega1\":1,\"tau\":1},\"anchor\":{\"re\":0.5,\"im\":0,\"gamma\":\"gamma2\"},"
                           "\"lambda\":[[1]]}"}) {
    try {
      apoly_from_json(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Config) << text;
    }
  }
}

TEST(Io, LatticeJson) {
  const json j = json::parse(lattice_to_json(square()));
  for (const char* k : {"omega1", "tau", "e1", "e2", "e3", "g2", "g3", "discriminant", "eta1"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["omega1"].get<double>(), square().omega1);
}

TEST(Io, FamilyJson) {
  const auto& fam = small_family();
  const json j = json::parse(family_to_json(fam));
  EXPECT_EQ(j["maxN"].get<int>(), 4);
  EXPECT_EQ(j["monic"].size(), 5u);
  EXPECT_EQ(j["orthonormal"].size(), 5u);
  EXPECT_EQ(j["D"].size(), fam.D.size());
  EXPECT_EQ(j["monic"][3][1][0].get<double>(), fam.F[3].lambda[1].real());
  EXPECT_EQ(j["anchor"]["gamma"].get<std::string>(), "gamma2");
  EXPECT_EQ(j["grid"]["N"].get<int>(), fam.grid.N);
  EXPECT_TRUE(j["recurrence"].contains("A"));
  EXPECT_EQ(family_to_json(fam), family_to_json(fam));
}

TEST(Io, RecurrenceCsv) {
  const auto& fam = small_family();
  const auto L = lines(recurrence_csv(fam));
  ASSERT_EQ(L.size(), fam.C.size() + 1);
  EXPECT_EQ(L[0], "k,A_re,A_im,B_re,B_im,C_re,C_im");
  EXPECT_EQ(L[1].substr(0, 2), "0,");
  // A_k only up to maxN - 2
  EXPECT_NE(L.back().find(",,"), std::string::npos);
  EXPECT_EQ(std::stod(L[1].substr(2, L[1].find(',', 2) - 2)), fam.A[0].real());
}

TEST(Io, ZerosCsv) {
  ZeroSet zs;
  zs.contour = Contour::Gamma2;
  Zero z;
  z.t = 0.25;
  z.z = cplx(0.5, 1.25);
  zs.zeros.push_back(z);
  const auto L = lines(zeros_csv({{3, zs}, {4, ZeroSet{}}}));
  ASSERT_EQ(L.size(), 2u);
  EXPECT_EQ(L[0], "n,contour,t,re_z,im_z");
  EXPECT_EQ(L[1], "3,gamma2,0.25,0.5,1.25");
}

TEST(Io, ReportJson) {
  CheckReport a{"zeros", "claim text", "n = 1", "2", "2", true, 0.5};
  CheckReport b = a;
  b.pass = false;
  json j = json::parse(reports_to_json("zeros", "claim text", {"note one"}, {a}));
  EXPECT_EQ(j["suite"], "zeros");
  EXPECT_EQ(j["notes"][0], "note one");
  EXPECT_TRUE(j["pass"].get<bool>());
  for (const char* k : {"case", "claim", "expected", "observed", "pass", "margin"}) EXPECT_TRUE(j["checks"][0].contains(k));
  j = json::parse(reports_to_json("zeros", "c", {}, {a, b}));
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_TRUE(json::parse(reports_to_json("empty", "c", {}, {}))["pass"].get<bool>());
}

TEST(Io, MopJson) {
  MopReport r;
  r.weight = "W";
  r.a = 0.8;
  r.n = 3;
  r.residuals.r1 = {1e-12, 2e-12};
  r.pass = true;
  json j = json::parse(mop_reports_to_json({r}));
  ASSERT_EQ(j.size(), 1u);
  for (const char* k : {"residuals_1", "residuals_2", "residual_3", "pass", "weight", "a", "n"})
    EXPECT_TRUE(j[0].contains(k)) << k;
  EXPECT_TRUE(j[0]["residual_3"].is_null());
  EXPECT_FALSE(j[0].contains("kappa"));
  r.have_coeffs = true;
  r.kappa = 1.5;
  j = json::parse(mop_reports_to_json({r}));
  EXPECT_EQ(j[0]["kappa"][0].get<double>(), 1.5);
  EXPECT_TRUE(j[0].contains("nu"));
  EXPECT_TRUE(j[0].contains("c_n"));
}

TEST(Io, CorollaryCsv) {
  const auto L = lines(corollary_csv({{3, 0.5, 0.5, true, true, true, 0.01}, {2, -0.5, 1, false, true, false, 0.2}}));
  ASSERT_EQ(L.size(), 3u);
  EXPECT_EQ(L[0], "n,alpha,beta,interlace_S,interlace_R,min_gap");
  EXPECT_EQ(L[1], "3,0.5,0.5,1,1,0.01");
  EXPECT_EQ(L[2], "2,-0.5,1,na,1,0.20000000000000001");
}
