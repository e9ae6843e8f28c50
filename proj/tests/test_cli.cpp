#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "lorentz/causet_io.hpp"
#include "support.hpp"

using namespace lorentz;
namespace lt = lorentz::testing;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "lorentz");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json certificate(const std::filesystem::path& dir, const std::string& name) {
  for (const auto& c : nlohmann::json::parse(slurp(dir / "certificates.json")))
    if (c.at("name") == name) return c;
  return nullptr;
}

}  // namespace

TEST(Cli, GeodesicWritesArtifactsAndIsReproducible) {
  const auto dir = lt::scratch_dir("cli_geo");
  const auto r = run({"geodesic", "--depth", "8", "--sample-budget", "200", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"curve.json", "certificates.json", "summary.csv", "manifest.json"})
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  EXPECT_EQ(slurp(dir / "summary.csv").rfind("certificate,verdict,samples_checked,tolerance,seed\n", 0), 0u);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest.at("command"), "geodesic");
  EXPECT_EQ(manifest.at("seed"), 0);
  const std::string first = slurp(dir / "curve.json") + slurp(dir / "certificates.json");
  ASSERT_EQ(run({"geodesic", "--depth", "8", "--sample-budget", "200", "--out", dir.string()}).code, 0);
  EXPECT_EQ(slurp(dir / "curve.json") + slurp(dir / "certificates.json"), first);
}

TEST(Cli, PuncturedExactFailsApproximatePasses) {
  const auto dir = lt::scratch_dir("cli_punct");
  const auto exact = run({"geodesic", "--backend", "punctured", "--depth", "6", "--out", dir.string()});
  EXPECT_EQ(exact.code, 1);
  const auto build = certificate(dir, "build");
  ASSERT_FALSE(build.is_null());
  EXPECT_EQ(build.at("details").at("hypothesis"), "tau-midpoints");
  const auto approx = run({"geodesic", "--backend", "punctured", "--depth", "12", "--mode", "approximate",
                           "--epsilon-hat", "0.05", "--sample-budget", "200", "--out", dir.string()});
  EXPECT_EQ(approx.code, 0) << approx.err;
}

TEST(Cli, UsageErrorsExitTwo) {
  const auto dir = lt::scratch_dir("cli_usage");
  EXPECT_EQ(run({"geodesic", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"geodesic", "--c", "0.7", "--out", dir.string()}).code, 2);
  EXPECT_EQ(run({"geodesic", "--depth", "-3", "--out", dir.string()}).code, 2);
  std::ofstream(dir / "bad.ini") << "[run]\nseed = 1\nwhat = 2\n";
  EXPECT_EQ(run({"certify", "--config", (dir / "bad.ini").string()}).code, 2);
  std::ofstream(dir / "noeq.ini") << "[run]\nseed\n";
  EXPECT_EQ(run({"certify", "--config", (dir / "noeq.ini").string()}).code, 2);
  EXPECT_EQ(run({"lens", "--dimension", "2", "--out", dir.string()}).code, 2);
  EXPECT_EQ(run({"certify", "--backend", "causet", "--causet", (dir / "missing.json").string()}).code, 2);
}

TEST(Cli, ConfigFileAndFlagOverride) {
  const auto dir = lt::scratch_dir("cli_cfg");
  std::ofstream(dir / "run.ini") << "[run]\nseed = 7\ndepth = 8\nsample_budget = 100\nout = "
                                 << (dir / "a").string() << "\n";
  ASSERT_EQ(run({"geodesic", "--config", (dir / "run.ini").string()}).code, 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "a" / "manifest.json")).at("seed"), 7);
  ASSERT_EQ(run({"geodesic", "--config", (dir / "run.ini").string(), "--seed", "9"}).code, 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "a" / "manifest.json")).at("seed"), 9);
}

TEST(Cli, CertifyCubicTimeFailsAntiLipschitz) {
  const auto dir = lt::scratch_dir("cli_cubic");
  const auto r = run({"certify", "--time", "cubic", "--sample-budget", "500", "--out", dir.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(certificate(dir, "anti_lipschitz").at("verdict"), "fail");
  EXPECT_EQ(run({"certify", "--sample-budget", "500", "--out", dir.string()}).code, 0);
}

TEST(Cli, CertifySkewedDiamondThreshold) {
  const auto dir = lt::scratch_dir("cli_skew");
  save_causet_json(lt::skewed_diamond(), dir / "skewed.json");
  const std::string file = (dir / "skewed.json").string();
  EXPECT_EQ(run({"certify", "--backend", "causet", "--causet", file, "--c", "0.1", "--out", dir.string()}).code, 0);
  EXPECT_NEAR(certificate(dir, "compatibility").at("details").at("best_c").get<double>(), 0.1, 1e-12);
  EXPECT_EQ(run({"certify", "--backend", "causet", "--causet", file, "--c", "0.11", "--out", dir.string()}).code, 1);
}

TEST(Cli, LensOutputs) {
  const auto dir = lt::scratch_dir("cli_lens");
  const auto r = run({"lens", "--samples", "2000", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "lens.json"));
  EXPECT_EQ(j.at("violations"), 0);
  EXPECT_GT(j.at("epsilon").get<double>(), 0.0);
  EXPECT_EQ(slurp(dir / "lens.csv").rfind("curve_id,t,x", 0), 0u);
  EXPECT_NE(slurp(dir / "lens.svg").find("<svg"), std::string::npos);
  ASSERT_EQ(run({"lens", "--c", "0.5", "--out", dir.string()}).code, 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "lens.json")).at("epsilon"), 0.0);
}

TEST(Cli, NulldistAndCauset) {
  const auto dir = lt::scratch_dir("cli_null");
  save_causet_json(lt::diamond(), dir / "d.json");
  ASSERT_EQ(run({"nulldist", "--backend", "causet", "--causet", (dir / "d.json").string(), "--out", dir.string()}).code,
            0);
  const std::string csv = slurp(dir / "nulldist.csv");
  EXPECT_EQ(csv.rfind("src,dst,d_T,method\n", 0), 0u);
  EXPECT_NE(csv.find("a,b,2,graph"), std::string::npos);

  ASSERT_EQ(run({"causet", "--density", "50", "--seed", "3", "--format", "csv", "--out", dir.string()}).code, 0);
  const auto c = load_causet_csv(dir / "vertices.csv", dir / "edges.csv");
  EXPECT_GE(c.size(), 2u);
  ASSERT_EQ(run({"causet", "--density", "50", "--seed", "3", "--out", dir.string()}).code, 0);
  EXPECT_EQ(causet_to_json(load_causet_json(dir / "causet.json")), causet_to_json(c));
}
