#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rmplate_cli/cli.hpp"

namespace fs = std::filesystem;
using rmplate::cli::run_cli;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rmplate_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }
  std::size_t file_count() const {
    return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir_), fs::directory_iterator()));
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, CheckPassesOnFourByFour) {
  EXPECT_EQ(run({"check", "--mesh", "n=4", "--bc", "clamped", "--multiplier", "dual"}), 0)
      << out_.str() << err_.str();
  EXPECT_EQ(out_.str().find("FAIL"), std::string::npos);
  EXPECT_NE(out_.str().find("PASS saddle_equals_condensed"), std::string::npos);
}

TEST_F(CliTest, ConvergeWritesEightRows) {
  const std::string prefix = path("conv");
  ASSERT_EQ(run({"converge", "--levels", "4", "--t", "0.1,1e-3", "--bc", "clamped", "--out", prefix}),
            0)
      << err_.str();
  std::istringstream csv(slurp(prefix + ".csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("level,n,h,t,err_rot_h1", 0), 0u);
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 8);
  EXPECT_TRUE(fs::exists(prefix + ".json"));
}

TEST_F(CliTest, AllBoundaryTriangleMeshFailsWithoutFiles) {
  EXPECT_NE(run({"solve", "--mesh", "n=1", "--bc", "clamped", "--multiplier", "dual", "--out",
                 path("s")}),
            0);
  EXPECT_NE(err_.str().find("hint:"), std::string::npos);
  EXPECT_EQ(file_count(), 0u);
}

TEST_F(CliTest, SolveWritesVtkAndJson) {
  ASSERT_EQ(run({"solve", "--mesh", "n=4", "--out", path("s")}), 0) << err_.str();
  EXPECT_TRUE(fs::exists(path("s.vtk")));
  EXPECT_TRUE(fs::exists(path("s.json")));
  EXPECT_NE(slurp(path("s.json")).find("\"path\": \"condensed\""), std::string::npos);
  EXPECT_EQ(file_count(), 2u);
}

TEST_F(CliTest, OutputsAreDeterministic) {
  ASSERT_EQ(run({"converge", "--levels", "3", "--base-n", "2", "--t", "0.1,0.01", "--out", path("a")}), 0);
  ASSERT_EQ(run({"converge", "--levels", "3", "--base-n", "2", "--t", "0.1,0.01", "--out", path("b")}), 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  ASSERT_EQ(run({"solve", "--mesh", "n=6", "--out", path("c")}), 0);
  ASSERT_EQ(run({"solve", "--mesh", "n=6", "--out", path("d")}), 0);
  EXPECT_EQ(slurp(path("c.vtk")), slurp(path("d.vtk")));
}

TEST_F(CliTest, ConfigErrorsNameTheKey) {
  EXPECT_EQ(run({"solve", "--t", "1.5", "--out", path("x")}), rmplate::cli::kExitConfig);
  EXPECT_NE(err_.str().find("t:"), std::string::npos);
  EXPECT_EQ(run({"converge", "--levels", "2", "--out", path("x")}), rmplate::cli::kExitConfig);
  EXPECT_NE(err_.str().find("levels"), std::string::npos);
  EXPECT_EQ(run({"solve", "--solver", "condensed", "--multiplier", "p1", "--out", path("x")}),
            rmplate::cli::kExitConfig);
  EXPECT_NE(err_.str().find("solver"), std::string::npos);
  EXPECT_EQ(run({"solve", "--bc", "hinged"}), rmplate::cli::kExitConfig);
  EXPECT_NE(err_.str().find("--bc"), std::string::npos);
  EXPECT_EQ(run({"lock", "--t", "0.01,0.1", "--out", path("x")}), rmplate::cli::kExitConfig);
  EXPECT_EQ(run({}), rmplate::cli::kExitConfig);
  EXPECT_EQ(file_count(), 0u);
}

TEST_F(CliTest, ConfigFilePrecedence) {
  {
    std::ofstream f(path("run.cfg"));
    f << "# experiment\nbc = simply-supported\nt = 0.02\nmultiplier = p1\n";
  }
  ASSERT_EQ(run({"solve", "--config", path("run.cfg"), "--mesh", "n=3", "--out", path("a")}), 0)
      << err_.str();
  std::string j = slurp(path("a.json"));
  EXPECT_NE(j.find("\"bc\": \"simply-supported\""), std::string::npos);
  EXPECT_NE(j.find("\"multiplier\": \"p1\""), std::string::npos);
  EXPECT_NE(j.find("0.02"), std::string::npos);

  ASSERT_EQ(run({"solve", "--config", path("run.cfg"), "--bc", "clamped", "--mesh", "n=3", "--out",
                 path("b")}),
            0);
  j = slurp(path("b.json"));
  EXPECT_NE(j.find("\"bc\": \"clamped\""), std::string::npos);
  EXPECT_NE(j.find("\"multiplier\": \"p1\""), std::string::npos);

  ASSERT_EQ(run({"solve", "--mesh", "n=3", "--out", path("c")}), 0);
  j = slurp(path("c.json"));
  EXPECT_NE(j.find("\"bc\": \"clamped\""), std::string::npos);
  EXPECT_NE(j.find("\"multiplier\": \"dual\""), std::string::npos);
}

TEST_F(CliTest, MeshFileInput) {
  {
    std::ofstream f(path("m.txt"));
    f << "plate-mesh 1\nvertices 5\n0 0\n1 0\n1 1\n0 1\n0.5 0.5\ntriangles 4\n0 1 4\n1 2 4\n2 3 4\n3 0 4\n";
  }
  ASSERT_EQ(run({"mesh-info", "--mesh", path("m.txt")}), 0) << err_.str();
  EXPECT_NE(out_.str().find("\"interior_vertices\": 1"), std::string::npos);
  EXPECT_EQ(run({"check", "--mesh", path("m.txt")}), 0) << out_.str() << err_.str();
  EXPECT_EQ(run({"solve", "--mesh", path("missing.txt"), "--out", path("x")}),
            rmplate::cli::kExitDomain);
  {
    std::ofstream f(path("bad.txt"));
    f << "plate-mesh 1\nvertices 1\nzero 0\n";
  }
  EXPECT_EQ(run({"solve", "--mesh", path("bad.txt"), "--out", path("x")}), rmplate::cli::kExitDomain);
  EXPECT_NE(err_.str().find("line 3"), std::string::npos);
}

TEST_F(CliTest, LockContrastColumn) {
  ASSERT_EQ(run({"lock", "--mesh", "n=8", "--t", "0.1,1e-2,1e-3,1e-4,1e-6", "--contrast", "--out",
                 path("l")}),
            0);
  const std::string csv = slurp(path("l.csv"));
  EXPECT_EQ(csv.rfind("t,deflection,naive_deflection\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST_F(CliTest, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}), 0);
  EXPECT_NE(out_.str().find("converge"), std::string::npos);
}
