#include <json.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

Outcome cli(const std::string& args, bool merge_stderr = true) {
  std::string cmd = quote(RAMSEY_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return o;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

fs::path config(const std::string& name) { return fs::path(RAMSEY_CONFIGS) / (name + ".json"); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ramsey_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(const std::string& cfg, const fs::path& out) {
    return cli("--out " + quote(out.string()) + " run " + quote(config(cfg).string()));
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, EvensWindowLongestProgression) {
  auto o = run("evens_longest_ap", dir_);
  ASSERT_EQ(o.code, 0) << o.out;
  auto cert = nlohmann::json::parse(slurp(dir_ / "evens_longest_ap.cert.json"));
  EXPECT_EQ(cert["start"], "0");
  EXPECT_EQ(cert["step"], "2");
  EXPECT_EQ(cert["length"], 5000);
  auto v = cli("verify " + quote((dir_ / "evens_longest_ap.cert.json").string()) + " " +
               quote((dir_ / "evens_longest_ap.set.json").string()));
  EXPECT_EQ(v.code, 0) << v.out;
}

TEST_F(Cli, DivisibleUnionDensityProfile) {
  auto o = run("divisible_union_density", dir_);
  ASSERT_EQ(o.code, 0) << o.out;
  std::istringstream csv(slurp(dir_ / "divisible_union_density.lower_density.csv"));
  std::string line, last;
  std::getline(csv, line);
  EXPECT_EQ(line, "n,count,ratio,running_inf");
  while (std::getline(csv, line)) last = line;
  ASSERT_EQ(last.rfind("1000000,", 0), 0U) << last;
  std::istringstream row(last);
  std::string n, count;
  std::getline(row, n, ',');
  std::getline(row, count, ',');
  EXPECT_LT(std::stod(count) / 1e6, 1e-3);
}

TEST_F(Cli, FieldThresholdRecord) {
  auto o = run("ff_threshold", dir_);
  ASSERT_EQ(o.code, 0) << o.out;
  auto rec = nlohmann::json::parse(slurp(dir_ / "ff_threshold.threshold.json"));
  EXPECT_EQ(rec["threshold"], 7);
  EXPECT_EQ(rec["range_relative"], true);
  for (const auto& f : rec["failures"]) EXPECT_LT(f["q"].get<int>(), 7);
}

TEST_F(Cli, GeoArithmeticCertificateVerifies) {
  auto o = run("omega_even_geo_arithmetic", dir_);
  ASSERT_EQ(o.code, 0) << o.out;
  auto v = cli("verify " + quote((dir_ / "omega_even_geo_arithmetic.cert.json").string()) + " " +
               quote((dir_ / "omega_even_geo_arithmetic.set.json").string()));
  EXPECT_EQ(v.code, 0) << v.out;
}

TEST_F(Cli, TamperedSumIsRejectedWithItsAlpha) {
  ASSERT_EQ(run("evens_ip3", dir_).code, 0);
  auto cert_path = dir_ / "evens_ip3.cert.json";
  auto set_path = dir_ / "evens_ip3.set.json";
  EXPECT_EQ(cli("verify " + quote(cert_path.string()) + " " + quote(set_path.string())).code, 0);
  auto cert = nlohmann::json::parse(slurp(cert_path));
  auto& entry = cert["values"][3];
  auto alpha = entry["alpha"].dump();
  entry["value"] = std::to_string(std::stoll(entry["value"].get<std::string>()) + 1);
  auto tampered = dir_ / "tampered.json";
  spit(tampered, cert.dump(2));
  auto v = cli("verify " + quote(tampered.string()) + " " + quote(set_path.string()));
  EXPECT_EQ(v.code, 1) << v.out;
  EXPECT_NE(v.out.find("FAIL"), std::string::npos);
  EXPECT_NE(v.out.find("alpha {"), std::string::npos) << v.out;
}

TEST_F(Cli, RunsAreByteIdentical) {
  for (const auto* name : {"evens_longest_ap", "ff_threshold", "divisible_union_density", "omega_even_geo_arithmetic"}) {
    auto a = dir_ / "a", b = dir_ / "b";
    ASSERT_EQ(run(name, a).code, 0);
    ASSERT_EQ(run(name, b).code, 0);
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
      auto file = entry.path().filename().string();
      if (file.find(".summary.json") != std::string::npos) continue;
      ASSERT_TRUE(fs::exists(b / file)) << file;
      EXPECT_EQ(slurp(entry.path()), slurp(b / file)) << file;
      ++compared;
    }
    EXPECT_GE(compared, 2U) << name;
    fs::remove_all(a);
    fs::remove_all(b);
  }
}

TEST_F(Cli, SummaryCarriesVersionsAndHorizon) {
  ASSERT_EQ(run("evens_longest_ap", dir_).code, 0);
  auto s = nlohmann::json::parse(slurp(dir_ / "evens_longest_ap.summary.json"));
  EXPECT_EQ(s["horizon"], "[0,10000)");
  EXPECT_TRUE(s["modules"].is_object());
  EXPECT_TRUE(s["timing"].contains("started_utc"));
}

TEST_F(Cli, UnknownConfigFieldsAreListed) {
  auto cfg = nlohmann::json::parse(slurp(config("evens_longest_ap")));
  cfg["colour"] = "blue";
  cfg["analysis"]["speed"] = 3;
  cfg["budget"] = {{"max_elements", 10}, {"deadline", 5}};
  auto path = dir_ / "bad.json";
  spit(path, cfg.dump());
  auto o = cli("run " + quote(path.string()));
  EXPECT_EQ(o.code, 2);
  for (const auto* field : {"colour", "analysis.speed", "budget.deadline"}) {
    EXPECT_NE(o.out.find(field), std::string::npos) << field << " missing from: " << o.out;
  }
}

TEST_F(Cli, UnknownAnalysisParameterRejected) {
  auto cfg = nlohmann::json::parse(slurp(config("ff_threshold")));
  cfg["analysis"]["params"]["qmx"] = "10";
  auto path = dir_ / "bad.json";
  spit(path, cfg.dump());
  auto o = cli("run " + quote(path.string()));
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.out.find("qmx"), std::string::npos) << o.out;
}

TEST_F(Cli, BudgetMarksInconclusive) {
  auto o = cli("--budget 20 --out " + quote(dir_.string()) + " run " + quote(config("ff_threshold").string()));
  ASSERT_EQ(o.code, 0) << o.out;
  auto s = nlohmann::json::parse(slurp(dir_ / "ff_threshold.summary.json"));
  EXPECT_EQ(s["status"], "inconclusive");
}

TEST_F(Cli, DirectVerbsAndAliases) {
  auto ap = cli("patterns ap 'window:lo=0,hi=100,modulus=3,residues=1'");
  ASSERT_EQ(ap.code, 0) << ap.out;
  auto j = nlohmann::json::parse(ap.out);
  EXPECT_EQ(j["certificate"]["step"], "3");
  EXPECT_EQ(j["certificate"]["length"], 33);
  EXPECT_EQ(j["horizon"], "[0,100)");
  auto th = cli("ff threshold --n 1 --k 2 --qmax 100");
  ASSERT_EQ(th.code, 0) << th.out;
  EXPECT_EQ(nlohmann::json::parse(th.out)["threshold"], 7);
  auto emit = cli("construct 'fg_semigroup:gens=2;3,bound=30' --emit-upto 30", false);
  ASSERT_EQ(emit.code, 0) << emit.out;
  EXPECT_EQ(emit.out, "2\n3\n4\n6\n8\n9\n12\n16\n18\n24\n27\n");
  auto report = cli("construct 'fg_semigroup:gens=2;3,bound=30' --emit-upto 30 --validate", false);
  ASSERT_EQ(report.code, 0) << report.out;
  EXPECT_TRUE(nlohmann::json::parse(report.out).is_object());
  EXPECT_NE(cli("patterns nosuchverb naturals").code, 0);
}
