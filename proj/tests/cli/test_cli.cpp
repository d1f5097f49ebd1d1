#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int cli(const std::string& args) {
  const std::string cmd = std::string(TS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path temp(const std::string& name) { return fs::temp_directory_path() / ("tunesmith_cli_" + name); }

}  // namespace

TEST(Cli, ComposeAndValidateClean) {
  const fs::path out = temp("clean.mid");
  EXPECT_EQ(cli("compose --seed 12 --dissonance 0 -o " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out));
  EXPECT_TRUE(fs::exists(fs::path(out).replace_extension(".json")));
  EXPECT_EQ(cli("validate " + out.string()), 0);
  EXPECT_EQ(cli("validate --format json " + out.string()), 0);
  fs::remove(out);
  fs::remove(fs::path(out).replace_extension(".json"));
}

TEST(Cli, DiscrepancyExitsOne) {
  // Clean piece checked against the wrong scale.
  const fs::path out = temp("wrong.mid");
  ASSERT_EQ(cli("compose --seed 3 --dissonance 0 --scale C:major -o " + out.string()), 0);
  EXPECT_EQ(cli("validate --scale C#:major " + out.string()), 1);
  fs::remove(out);
  fs::remove(fs::path(out).replace_extension(".json"));
}

TEST(Cli, ErrorsExitTwo) {
  EXPECT_EQ(cli("validate /nonexistent/x.mid"), 2);
  EXPECT_EQ(cli("compose --tempo 999"), 2);
  EXPECT_EQ(cli("frobnicate"), 2);
  EXPECT_EQ(cli("compose --scale X:blues"), 2);
}

TEST(Cli, BatchAndAnalyze) {
  const fs::path dir = temp("batch");
  fs::remove_all(dir);
  EXPECT_EQ(cli("batch 3 --seed 40 --no-constraints --parts main --out-dir " + dir.string()), 0);
  const fs::path tables = temp("tables");
  fs::create_directories(tables);
  EXPECT_EQ(cli("analyze " + dir.string() + " --tables " + tables.string()), 0);
  EXPECT_TRUE(fs::exists(tables / "interval.tbl"));
  EXPECT_EQ(cli("compose --seed 1 --interval-table " + (tables / "interval.tbl").string() + " -o " +
                (dir / "x.mid").string()),
            0);
  fs::remove_all(dir);
  fs::remove_all(tables);
}

TEST(Cli, StrictCompose) {
  const fs::path out = temp("strict.mid");
  EXPECT_EQ(cli("compose --seed 21 --dissonance 0 --strict -o " + out.string()), 0);
  fs::remove(out);
  fs::remove(fs::path(out).replace_extension(".json"));
}
