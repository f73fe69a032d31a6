#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "cli.hpp"
#include "edgemark/image.hpp"
#include "json.hpp"
#include "test_support.hpp"

namespace edgemark {
namespace {

namespace fs = std::filesystem;

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

double number_after(const std::string& text, const std::string& key) {
  std::smatch m;
  const std::regex re(key + " ([-0-9.]+)");
  if (!std::regex_search(text, m, re)) {
    ADD_FAILURE() << "no '" << key << "' in: " << text;
    return -1.0;
  }
  return std::stod(m[1]);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("edgemark_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kCamera = testing::fixture_path("camera");

TEST_F(CliTest, EmbedThenExtract) {
  const auto wm = path("wm.pgm");
  const auto e = run({"embed", "--in", kCamera, "--payload-seed", "42", "--bits", "1024",
                      "--lambda", "20", "--block", "8", "--out", wm});
  ASSERT_EQ(e.status, 0) << e.err;
  ASSERT_TRUE(fs::exists(wm));
  const double p = number_after(e.out, "PSNR");
  EXPECT_GE(p, 26.0);
  EXPECT_LE(p, 29.0);
  EXPECT_NE(e.out.find("capacity 1024"), std::string::npos);

  const auto x = run({"extract", "--in", wm, "--bits", "1024", "--payload-seed", "42",
                      "--out", path("bits.hex")});
  ASSERT_EQ(x.status, 0) << x.err;
  EXPECT_EQ(number_after(x.out, "BER"), 0.0);
  std::ifstream hex(path("bits.hex"));
  std::string line;
  std::getline(hex, line);
  EXPECT_EQ(line.size(), 256U);
}

// Frozen fixture: extracting with the wrong block size decodes near chance.
TEST_F(CliTest, MismatchedBlockIsNearChance) {
  const auto wm = path("wm.pgm");
  ASSERT_EQ(run({"embed", "--in", kCamera, "--payload-seed", "42", "--out", wm}).status, 0);
  const auto x = run({"extract", "--in", wm, "--bits", "1024", "--block", "4",
                      "--payload-seed", "42"});
  ASSERT_EQ(x.status, 0) << x.err;
  const double b = number_after(x.out, "BER");
  EXPECT_GE(b, 0.4);
  EXPECT_LE(b, 0.6);
}

TEST_F(CliTest, MissingInputNamesPath) {
  const auto missing = path("nope.pgm");
  const auto r = run({"embed", "--in", missing, "--out", path("o.pgm")});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find(missing), std::string::npos);
  EXPECT_FALSE(fs::exists(path("o.pgm")));
}

TEST_F(CliTest, CapacityExceeded) {
  const auto out = path("o.pgm");
  const auto r = run({"embed", "--in", kCamera, "--payload-seed", "1", "--bits", "2000",
                      "--out", out});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("1024"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(out));
  EXPECT_FALSE(fs::exists(out + ".partial"));

  const auto x = run({"extract", "--in", kCamera, "--bits", "1025"});
  EXPECT_NE(x.status, 0);
}

TEST_F(CliTest, PayloadFiles) {
  const auto raw = path("payload.bin");
  {
    std::ofstream f(raw, std::ios::binary);
    f << "edge-mark!";
  }
  const auto wm = path("wm.pgm");
  ASSERT_EQ(run({"embed", "--in", kCamera, "--payload", raw, "--out", wm}).status, 0);
  const auto x = run({"extract", "--in", wm, "--bits", "80", "--out", path("got.bin"),
                      "--payload", raw});
  ASSERT_EQ(x.status, 0) << x.err;
  EXPECT_EQ(number_after(x.out, "BER"), 0.0);
  EXPECT_EQ(read_file(path("got.bin")), read_file(raw));

  const auto hex = path("payload.hex");
  {
    std::ofstream f(hex);
    f << "0xdeadbeef\n";
  }
  ASSERT_EQ(run({"embed", "--in", kCamera, "--payload", hex, "--out", wm}).status, 0);
  const auto y = run({"extract", "--in", wm, "--bits", "32"});
  EXPECT_NE(y.out.find("bits deadbeef"), std::string::npos) << y.out;

  const auto conflict = run({"embed", "--in", kCamera, "--payload", hex, "--payload-seed", "3",
                             "--out", wm});
  EXPECT_NE(conflict.status, 0);
}

TEST_F(CliTest, AttackSubcommand) {
  const auto out = path("att.pgm");
  const auto r = run({"attack", "--in", kCamera, "--attack", "jpeg", "--param", "50", "--out", out});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(read_pgm_file(out).width(), 512);
  const auto bad = run({"attack", "--in", kCamera, "--attack", "median", "--param", "4",
                        "--out", path("bad.pgm")});
  EXPECT_NE(bad.status, 0);
  EXPECT_FALSE(fs::exists(path("bad.pgm")));
  EXPECT_NE(run({"attack", "--in", kCamera, "--attack", "crop", "--out", out}).status, 0);
}

TEST_F(CliTest, EvaluateIsDeterministic) {
  const std::vector<std::string> base{"evaluate", "--in", kCamera, "--payload-seed", "42",
                                      "--attack", "jpeg:50", "--attack", "salt_pepper:0.05",
                                      "--trials", "2", "--seed", "9"};
  auto a = base;
  a.insert(a.end(), {"--report", path("a.json")});
  auto b = base;
  b.insert(b.end(), {"--report", path("b.json"), "--jobs", "3"});
  const auto ra = run(a);
  ASSERT_EQ(ra.status, 0) << ra.err;
  ASSERT_EQ(run(b).status, 0);
  EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));
  EXPECT_NE(ra.out.find("jpeg:50"), std::string::npos);

  const auto bytes = read_file(path("a.json"));
  const auto j = nlohmann::json::parse(bytes.begin(), bytes.end());
  EXPECT_EQ(j.at("hosts").at(0).at("cells").size(), 3U);
  EXPECT_EQ(j.at("config").at("master_seed"), 9);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_NE(run({}).status, 0);
  EXPECT_NE(run({"embed", "--in", kCamera}).status, 0);
  EXPECT_NE(run({"embed", "--in", kCamera, "--out", path("o.pgm"), "--lambda", "-1"}).status, 0);
  EXPECT_NE(run({"extract", "--in", kCamera, "--bits", "8", "--statistic", "mean"}).status, 0);
}

}  // namespace
}  // namespace edgemark
