#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "unfold-cli-test";

int run(const std::string& args) {
  const std::string cmd = std::string(UNFOLD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every file of a against its namesake in b.
void expect_same_tree(const fs::path& a, const fs::path& b) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++n;
    const fs::path other = b / e.path().filename();
    ASSERT_TRUE(fs::exists(other)) << other;
    EXPECT_EQ(slurp(e.path()), slurp(other)) << e.path().filename();
  }
  EXPECT_GT(n, 1u);
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    fs::remove_all(kRoot);
    fs::create_directories(kRoot);
  }
  void TearDown() override { fs::remove_all(kRoot); }
  std::string out(const std::string& name) const { return "--out " + (kRoot / name).string(); }
};

}  // namespace

TEST_F(Cli, ScalarCertificatesPass) {
  EXPECT_EQ(run("certify --ansatz kg " + out("a")), 0);
  EXPECT_EQ(run("certify --ansatz se --convention all " + out("b")), 0);
  EXPECT_TRUE(fs::exists(kRoot / "a" / "certify.config.json"));
}

TEST_F(Cli, DiracCertificateFailsWithVerificationCode) {
  EXPECT_EQ(run("certify --ansatz dirac " + out("a")), 2);
}

TEST_F(Cli, UnknownAxisIsAConfigErrorWithNoOutput) {
  EXPECT_EQ(run("certify --kg-axis foo " + out("a")), 1);
  EXPECT_FALSE(fs::exists(kRoot / "a"));
}

TEST_F(Cli, BadConfigFilesAreRejected) {
  std::ofstream(kRoot / "bogus.json") << R"({"command":"shell","config":{"bogus":1}})";
  EXPECT_EQ(run("shell --config " + (kRoot / "bogus.json").string() + " " + out("a")), 1);
  std::ofstream(kRoot / "wrong.json") << R"({"command":"evolve","config":{}})";
  EXPECT_EQ(run("shell --config " + (kRoot / "wrong.json").string() + " " + out("b")), 1);
  EXPECT_EQ(run("nosuchcommand"), 1);
}

TEST_F(Cli, OffShellResidualFails) {
  EXPECT_EQ(run("residual --study se --off-shell " + out("a")), 2);
}

TEST_F(Cli, SingleLevelResidualWarns) {
  EXPECT_EQ(run("residual --study se --levels 1 " + out("a")), 0);
  EXPECT_NE(slurp(kRoot / "a" / "residual-se.jsonl").find("\"warning\""), std::string::npos);
}

TEST_F(Cli, ConfigReplayIsByteIdentical) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"certify", "--ansatz all"},
      {"residual", "--study se --levels 2"},
      {"shell", "-n 100 --seed 7"},
      {"evolve", "--kind kg --grid 32 --steps 20"},
      {"evolve", "--kind se --grid 16,16 --steps 10"},
      {"action", "--grid 9,9,5,5,9 --probes 4"},
  };
  int k = 0;
  for (const auto& [cmd, args] : cases) {
    const std::string a = "a" + std::to_string(k), b = "b" + std::to_string(k);
    ++k;
    const int rc = run(cmd + " " + args + " " + out(a));
    EXPECT_NE(rc, 1) << cmd;
    const std::string config = (kRoot / a / (cmd + ".config.json")).string();
    EXPECT_EQ(run(cmd + " --config " + config + " " + out(b)), rc) << cmd;
    expect_same_tree(kRoot / a, kRoot / b);
  }
}

TEST_F(Cli, ExplicitFlagsOverrideConfig) {
  ASSERT_EQ(run("shell -n 10 --seed 7 " + out("a")), 0);
  ASSERT_EQ(run("shell --config " + (kRoot / "a" / "shell.config.json").string() + " --seed 8 " + out("b")), 0);
  EXPECT_NE(slurp(kRoot / "a" / "shell-lightlike.csv"), slurp(kRoot / "b" / "shell-lightlike.csv"));
  EXPECT_NE(slurp(kRoot / "b" / "shell.config.json").find("\"seed\": 8"), std::string::npos);
}
