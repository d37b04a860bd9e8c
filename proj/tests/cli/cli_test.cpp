// Copyright 2026 The obdestripe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <regex>
#include <sstream>

#include "obds/obds.hpp"

namespace obds::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("obds_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  static double field(const std::string& text, const std::string& key) {
    std::smatch m;
    const std::regex re(key + "=([-0-9.]+)");
    if (!std::regex_search(text, m, re)) return std::nan("");
    return std::stod(m[1]);
  }

  fs::path dir_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"orient"}).code, kExitUsage);
  EXPECT_EQ(invoke({"orient", "x.png", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST_F(CliTest, SimulateBuiltinBase) {
  const auto r = invoke({"simulate", "smooth200", "-o", path("sim"), "--angle", "0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Image y = read_image(path("sim/sim_00_y.png"));
  EXPECT_EQ(y.rows(), 200u);
  EXPECT_EQ(y.cols(), 200u);
  const auto meta = read_metadata(path("sim/sim_00.meta"));
  EXPECT_EQ(meta.at("base"), "smooth200");
  EXPECT_EQ(meta.at("rows"), "200");
  EXPECT_EQ(meta.at("observation"), "sim_00_y.png");
}

TEST_F(CliTest, SimulateGroupIsDeterministic) {
  const std::vector<std::string> args = {"simulate", "mixed96", "--count", "3", "--seed", "5",
                                         "--crop", "48", "--noise", "0.01", "--format", "obds"};
  auto a = args;
  a.insert(a.end(), {"-o", path("a")});
  auto b = args;
  b.insert(b.end(), {"-o", path("b")});
  ASSERT_EQ(invoke(a).code, kExitOk);
  ASSERT_EQ(invoke(b).code, kExitOk);
  std::set<std::string> angles;
  for (const char* idx : {"00", "01", "02"}) {
    for (const std::string suffix : {"_y.obds", "_truth.obds", ".meta"}) {
      const std::string name = std::string("sim_") + idx + suffix;
      EXPECT_EQ(slurp(path("a/" + name)), slurp(path("b/" + name))) << name;
    }
    const auto meta = read_metadata(path(std::string("a/sim_") + idx + ".meta"));
    angles.insert(meta.at("angle_deg"));
    EXPECT_EQ(read_image(path(std::string("a/sim_") + idx + "_y.obds")).rows(), 48u);
  }
  EXPECT_EQ(angles.size(), 3u);
}

TEST_F(CliTest, SimulateRejectsBadInput) {
  EXPECT_EQ(invoke({"simulate", "nothing.png", "-o", path("s")}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "smooth64", "-o", path("s"), "--coverage", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "smooth64", "-o", path("s"), "--angle", "3", "--count", "2"}).code,
            kExitUsage);
}

TEST_F(CliTest, OrientSimulatedStripes) {
  ASSERT_EQ(invoke({"simulate", "mixed300", "-o", path("s"), "--angle", "16", "--crop", "200"}).code,
            kExitOk);
  const auto r = invoke({"orient", path("s/sim_00_y.png")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(field(r.out, "theta_stripe"), 16.0, 1.0);
  EXPECT_NE(r.out.find("offset=("), std::string::npos);
  EXPECT_NE(r.out.find("dominant_frequency=("), std::string::npos);
}

TEST_F(CliTest, OrientSmallTemplate) {
  ASSERT_EQ(invoke({"simulate", "mixed300", "-o", path("s"), "--angle", "27", "--crop", "200"}).code,
            kExitOk);
  const auto r = invoke({"orient", path("s/sim_00_y.png"), "--r", "2", "--spectrum", path("spec.png")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("theta_hat=26.57"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("offset=(-2,-1)"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("spec.png")));
}

TEST_F(CliTest, OrientFlatImageIsUndeterminable) {
  write_image(path("zero.png"), Image(64, 64, 0.0));
  const auto r = invoke({"orient", path("zero.png")});
  EXPECT_EQ(r.code, kExitUndeterminable);
  EXPECT_NE(r.err.find("orientation undeterminable"), std::string::npos);
}

TEST_F(CliTest, OrientCorruptFile) {
  std::ofstream(path("bad.png")) << "not a png";
  EXPECT_EQ(invoke({"orient", path("bad.png")}).code, kExitUsage);
  EXPECT_EQ(invoke({"orient", path("missing.png")}).code, kExitUsage);
}

TEST_F(CliTest, DestripeImprovesPsnr) {
  ASSERT_EQ(invoke({"simulate", "mixed290", "-o", path("s"), "--angle", "16", "--crop", "200",
                    "--seed", "1"}).code,
            kExitOk);
  const auto d = invoke({"destripe", path("s/sim_00_y.png"), "-o", path("x.png")});
  ASSERT_EQ(d.code, kExitOk) << d.err;
  EXPECT_TRUE(fs::exists(path("x_stripes.png")));
  EXPECT_TRUE(fs::exists(path("x_trace.csv")));
  EXPECT_NE(d.out.find("iterations="), std::string::npos);

  const auto before = invoke({"evaluate", path("s/sim_00_y.png"), "--truth", path("s/sim_00_truth.png")});
  const auto after = invoke({"evaluate", path("x.png"), "--truth", path("s/sim_00_truth.png")});
  ASSERT_EQ(after.code, kExitOk) << after.err;
  const auto psnr_of = [](const std::string& text) {
    std::istringstream in(text.substr(text.find('\n') + 1));
    double m, p;
    in >> m >> p;
    return p;
  };
  EXPECT_GE(psnr_of(after.out), psnr_of(before.out) + 4.0);
}

TEST_F(CliTest, DestripeThetaOverrideAndRawStripes) {
  const Image y = make_base_image(BaseKind::smooth, 48, 48, 3);
  write_image(path("y.obds"), y);
  const auto r = invoke({"destripe", path("y.obds"), "-o", path("x.obds"), "--stripes", path("s.obds"),
                         "--trace", path("t.csv"), "--theta", "26.565", "--max-iter", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("offset=(-2,-1)"), std::string::npos);
  EXPECT_NE(r.out.find("(override)"), std::string::npos);
  const Image x = read_image(path("x.obds"));
  const Image s = read_image(path("s.obds"));
  const Image yr = read_image(path("y.obds"));
  for (std::size_t k = 0; k < y.size(); ++k)
    EXPECT_NEAR(x.pixels()[k] + s.pixels()[k], yr.pixels()[k], 1e-6);
  const std::string csv = slurp(path("t.csv"));
  EXPECT_EQ(csv.rfind("k,rel_change,objective", 0), 0u);
}

TEST_F(CliTest, ConfigPrecedence) {
  write_image(path("y.obds"), make_base_image(BaseKind::regions, 32, 32, 1));
  {
    std::ofstream cfg(path("run.cfg"));
    cfg << "# solver settings\nmax_iter = 3\ntheta = 0\nlambda1 = 4\n";
  }
  const std::vector<std::string> base = {"destripe", path("y.obds"), "-o", path("x.obds"), "--config",
                                         path("run.cfg"), "--eps-stop", "1e-30"};
  const auto from_config = invoke(base);
  ASSERT_EQ(from_config.code, kExitOk) << from_config.err;
  EXPECT_NE(from_config.out.find("iterations=3\n"), std::string::npos) << from_config.out;
  auto with_flag = base;
  with_flag.insert(with_flag.end(), {"--max-iter", "2"});
  EXPECT_NE(invoke(with_flag).out.find("iterations=2\n"), std::string::npos);

  {
    std::ofstream cfg(path("typo.cfg"));
    cfg << "lamda1 = 4\n";
  }
  const auto typo = invoke({"destripe", path("y.obds"), "-o", path("x.obds"), "--config", path("typo.cfg")});
  EXPECT_EQ(typo.code, kExitUsage);
  EXPECT_NE(typo.err.find("unknown key 'lamda1'"), std::string::npos);
}

TEST_F(CliTest, EvaluateIdentical) {
  const Image img = make_base_image(BaseKind::mixed, 40, 40, 2);
  write_image(path("a.obds"), img);
  const auto r = invoke({"evaluate", path("a.obds"), "--truth", path("a.obds"), "--csv", path("m.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "MAE(E-2) PSNR SSIM\n0.0000 inf 1.0000\n");
  EXPECT_EQ(slurp(path("m.csv")),
            "metric,window,value,note\nmae_e2,,0.000000,\npsnr,,inf,\nssim,,1.000000,\n");
}

TEST_F(CliTest, EvaluateWindows) {
  Image img(30, 30, 0.5);
  for (std::size_t j = 0; j < 30; j += 2) img(20, j) = 0.6;
  write_image(path("x.obds"), img);
  write_image(path("y.obds"), img * 1.01);
  {
    std::ofstream w(path("w.txt"));
    w << "icv 0 0 10 10\nicv 15 0 10 10\nmrd 0 15 10 10\n";
  }
  const auto r = invoke({"evaluate", path("x.obds"), "--windows", path("w.txt"), "--noisy", path("y.obds")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("ICV[0] 0:0:10x10 before="), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("after=1000000.0000 (zero std)"), std::string::npos);
  EXPECT_NEAR(field(r.out, "MRD"), 100.0 * 0.01 / 1.01, 1e-3);

  EXPECT_EQ(invoke({"evaluate", path("x.obds")}).code, kExitUsage);
  EXPECT_EQ(invoke({"evaluate", path("x.obds"), "--windows", path("w.txt")}).code, kExitUsage);
  EXPECT_EQ(invoke({"evaluate", path("x.obds"), "--windows", path("nope.txt")}).code, kExitUsage);
}

}  // namespace
}  // namespace obds::cli
