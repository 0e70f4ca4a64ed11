#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "eop/lattice.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "eopctl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = eopctl::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string f; std::getline(is, f, ',');) out.push_back(f);
  return out;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("eopctl_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST(Cli, LatticeSquare) {
  const auto r = run({"lattice", "--branch-points", "1", "0", "-1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["omega1"].get<double>(), 1.31103, 1e-5);
  EXPECT_NEAR(j["tau"].get<double>(), j["omega1"].get<double>(), 1e-12);
  EXPECT_EQ(j["e1"].get<double>(), 1.0);
}

TEST(Cli, LatticeHalfPeriods) {
  const auto r = run({"lattice", "--half-periods", "0.5", "1.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["e1"].get<double>(), 6.57974, 1e-3);
  EXPECT_NEAR(j["e2"].get<double>(), -3.2835, 1e-3);
  EXPECT_NEAR(j["e3"].get<double>(), -3.29624, 1e-3);
  // the stated (1/2, 3/4) pair
  const json k = json::parse(run({"lattice", "--half-periods", "0.5", "0.75"}).out);
  const auto lat = eop::lattice_from_half_periods(0.5, 0.75);
  EXPECT_EQ(k["e1"].get<double>(), lat.e1);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"lattice", "--branch-points", "-1", "0", "1"}).code, 2);
  const auto bad = run({"lattice", "--branch-points", "2", "1", "-2"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("BadOrdering"), std::string::npos) << bad.err;
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"lattice", "--half-periods", "1"}).code, 2);
  EXPECT_EQ(run({"verify", "nosuch"}).code, 2);
  EXPECT_EQ(run({"family", "--maxn", "-1"}).code, 2);
  EXPECT_EQ(run({"lattice", "--half-periods", "1", "1", "--branch-points", "1", "0", "-1"}).code, 2);
  EXPECT_EQ(run({"lift", "--kind", "other"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, MopSuiteAtHalfPeriod) {
  // at a = omega1 the suite also checks kappa_n = nu_n = 0, which does not hold: exit 3
  const auto r = run({"verify", "mop", "--weight", "exampleW", "--alpha", "0.5", "--beta", "0.5", "--maxn", "4"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("FAIL"), std::string::npos);
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["pass"].get<bool>());
  int kappa_checks = 0;
  for (const auto& c : j["checks"]) {
    if (c["claim"] == "kappa_n = nu_n = 0 at a = omega1") {
      ++kappa_checks;
    } else {
      EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();
    }
  }
  EXPECT_EQ(kappa_checks, 5);
  // away from the half-period every check passes
  EXPECT_EQ(run({"verify", "mop", "--alpha", "0.5", "--beta", "0.5", "--maxn", "4", "--anchor", "0.8"}).code, 0);
}

TEST(Cli, FamilyMaxnZero) {
  const auto r = run({"family", "--maxn", "0", "--weight", "exampleW"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["monic"].size(), 1u);
  EXPECT_EQ(j["monic"][0][0][0].get<double>(), 1.0);
  EXPECT_EQ(j["monic"][0][0][1].get<double>(), 0.0);
}

TEST(Cli, ZerosOddDegree) {
  const auto r = run({"zeros", "--weight", "exampleW", "--n", "5", "--contour", "gamma2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto L = lines(r.out);
  ASSERT_EQ(L.size(), 7u);
  EXPECT_EQ(L[0], "n,contour,t,re_z,im_z");
  for (std::size_t i = 1; i < L.size(); ++i) {
    const auto f = split(L[i]);
    EXPECT_EQ(f[0], "5");
    EXPECT_EQ(f[1], "gamma2");
  }
}

TEST(Cli, RecurrenceAndDecompose) {
  auto r = run({"recurrence", "--maxn", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 6u);
  r = run({"decompose", "--maxn", "3", "--anchor", "0.8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[3]["m"].get<int>(), 1);
  EXPECT_EQ(j[3]["k"].get<int>(), 1);
}

TEST(Cli, Lift) {
  for (const char* kind : {"symmetric", "example1", "example2", "general"}) {
    std::vector<std::string> args{"lift", "--kind", kind, "--alpha", "0.5", "--beta", "0.5", "--maxn", "4"};
    if (std::string(kind) == "general") {
      args.push_back("--anchor");
      args.push_back("0.5*omega1");
    }
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << kind << ": " << r.err;
    const json j = json::parse(r.out);
    ASSERT_EQ(j.size(), 5u);
    EXPECT_EQ(j[4]["lambda"].size(), 5u);
  }
  EXPECT_EQ(run({"lift", "--kind", "example2", "--alpha", "0", "--beta", "1"}).code, 2);
}

TEST(Cli, PlotData) {
  auto check = [](const std::vector<std::string>& lat_args, double e1, double e2, double e3) {
    std::vector<std::string> args{"plotdata"};
    args.insert(args.end(), lat_args.begin(), lat_args.end());
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto L = lines(r.out);
    ASSERT_EQ(L.size(), 1001u);
    EXPECT_EQ(L[0], "t,wp_gamma1,wp_gamma2");
    EXPECT_EQ(split(L[1])[1], "inf");
    EXPECT_NEAR(std::stod(split(L[1])[2]), e3, 1e-10 * (1 + std::abs(e3)));
    const auto mid = split(L[501]);
    EXPECT_EQ(std::stod(mid[0]), 0.5);
    EXPECT_NEAR(std::stod(mid[1]), e1, 1e-10 * (1 + std::abs(e1)));
    EXPECT_NEAR(std::stod(mid[2]), e2, 1e-10 * (1 + std::abs(e2)));
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 1; i < L.size(); ++i) {
      const double v = std::stod(split(L[i])[2]);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_NEAR(lo, e3, 1e-10 * (1 + std::abs(e3)));
    EXPECT_NEAR(hi, e2, 1e-10 * (1 + std::abs(e2)));
  };
  check({"--branch-points", "1", "0", "-1"}, 1, 0, -1);
  const auto lat = eop::lattice_from_half_periods(0.5, 1.5);
  check({"--half-periods", "0.5", "1.5"}, lat.e1, lat.e2, lat.e3);
  // the -3.28 / -3.30 band
  EXPECT_NEAR(lat.e2, -3.28, 1e-2);
  EXPECT_NEAR(lat.e3, -3.30, 1e-2);
}

TEST(Cli, VerifyReportsCarryKnownDiscrepancies) {
  const auto r = run({"verify", "cd", "--weight", "exampleW", "--alpha", "0", "--beta", "0", "--maxn", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["suite"], "cd");
  EXPECT_TRUE(j["pass"].get<bool>());
  ASSERT_EQ(j["notes"].size(), 2u);
  const std::string a = j["notes"][0], b = j["notes"][1];
  EXPECT_NE(a.find("1.31102877"), std::string::npos) << a;
  EXPECT_NE(a.find("0.5818"), std::string::npos) << a;
  EXPECT_NE(b.find("-3.2835"), std::string::npos) << b;
  EXPECT_NE(b.find("-3.29624"), std::string::npos) << b;
  EXPECT_NE(b.find("wrong order"), std::string::npos) << b;
}

TEST(Cli, VerifySuitesPass) {
  for (const auto& suite : eopctl::suite_names()) {
    if (suite == "mop") continue;
    const auto r = run({"verify", suite, "--maxn", "5", "--alpha", "0.5", "--beta", "0.5"});
    EXPECT_EQ(r.code, 0) << suite << ": " << r.err;
    EXPECT_FALSE(eopctl::suite_claim(suite).empty());
  }
}

TEST(Cli, ConfigFileAndOverride) {
  const auto dir = temp_dir("config");
  const auto cfg = dir / "run.toml";
  std::ofstream(cfg) << "# family settings\nmaxn = 2\nweight = \"exampleW\"\nalpha = 0.5\nbeta = 0.5\n"
                        "half-periods = [1.3110287771461, 1.3110287771461]\n";
  auto r = run({"family", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["maxN"].get<int>(), 2);
  EXPECT_NEAR(j["lattice"]["e1"].get<double>(), 1.0, 1e-9);
  r = run({"family", "--config", cfg.string(), "--maxn", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  EXPECT_EQ(j["maxN"].get<int>(), 3);
  EXPECT_EQ(run({"family", "--config", (dir / "missing.toml").string()}).code, 2);
}

TEST(Cli, OutputDirectory) {
  const auto dir = temp_dir("out");
  const auto r = run({"lattice", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "lattice.json"));
  std::ifstream f(dir / "lattice.json");
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), run({"lattice"}).out);
}

TEST(Cli, ToleranceEnvironment) {
  const std::vector<std::string> args{"family", "--maxn", "4", "--alpha", "0.3", "--beta", "0.6", "--anchor", "0.8"};
  auto with = [&](std::vector<std::string> extra) {
    auto a = args;
    a.insert(a.end(), extra.begin(), extra.end());
    return json::parse(run(a).out);
  };
  const auto base = with({});
  ::setenv("EOP_TOL", "1e-6", 1);
  const auto loose = with({});
  const auto flag = with({"--tol", "1e-11"});
  ::setenv("EOP_TOL", "abc", 1);
  const int bad = run({"lattice"}).code;
  ::unsetenv("EOP_TOL");
  EXPECT_LT(loose["grid"]["N"].get<int>(), base["grid"]["N"].get<int>());
  EXPECT_EQ(flag["grid"]["N"], base["grid"]["N"]);
  EXPECT_EQ(bad, 2);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"family", "--weight", "exampleW", "--alpha", "0.5", "--maxn", "4",
                                      "--anchor", "0.8"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> z{"zeros", "--maxn", "4"};
  EXPECT_EQ(run(z).out, run(z).out);
}
