#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include "json.hpp"
#include <sstream>

#include "../support/tempdir.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(TAPERBENCH_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const char* kSmall =
    "%%MatrixMarket matrix coordinate real general\n"
    "3 3 5\n1 1 4\n2 2 3\n3 3 2\n1 2 1\n3 1 -1\n";

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    std::filesystem::create_directories(dir / "mtx");
    dir.write("mtx/a.mtx", kSmall);
    dir.write("mtx/b.mtx", "%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n1 1 2\n2 1 -1\n2 2 2\n");
    dir.write("mtx/c.mtx", "%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1\n1 2 2\n2 2 5\n");
    dir.write("mtx/z.mtx", "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 1\n");
  }
  std::string path(const std::string& p) const { return (dir / p).string(); }

  TempDir dir;
};

TEST_F(Cli, UsageErrorsExitWithOne) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("no-such-command").code, 1);
  EXPECT_EQ(run("run --bundle x --solver lu").code, 1);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("--version").code, 0);
}

TEST_F(Cli, DumpFormats) {
  const auto p8 = run("dump-formats --format posit8");
  EXPECT_EQ(p8.code, 0);
  EXPECT_EQ(line_count(p8.out), 257u);
  EXPECT_EQ(p8.out.substr(0, p8.out.find('\n')), "code_hex,value_decimal,class");
  EXPECT_NE(p8.out.find("0x80,"), std::string::npos);
  EXPECT_NE(p8.out.find(",nar\n"), std::string::npos);
  EXPECT_EQ(run("dump-formats --format takum_linear16 --out " + path("t16.csv")).code, 0);
  EXPECT_EQ(line_count(slurp(dir / "t16.csv")), 65537u);
  EXPECT_EQ(run("dump-formats --format float32").code, 1);
  const auto sample = run("dump-formats --format float32 --sample 10");
  EXPECT_EQ(sample.code, 0);
  EXPECT_EQ(line_count(sample.out), 11u);
  EXPECT_EQ(run("dump-formats --format float32 --sample 10").out, sample.out);
  EXPECT_EQ(run("dump-formats --format float128").code, 1);
}

TEST_F(Cli, IngestRejectsAndCounts) {
  const auto r = run("ingest --input " + path("mtx") + " --output " + path("set.tsb"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(std::filesystem::exists(dir / "set.tsb"));
  EXPECT_NE(r.out.find("z"), std::string::npos);
  const auto tight = run("ingest --input " + path("mtx") + " --output " + path("none.tsb") + " --max-nnz 2");
  EXPECT_NE(tight.code, 0);
  EXPECT_EQ(run("ingest --input " + path("missing") + " --output " + path("x.tsb")).code, 2);
}

TEST_F(Cli, RunWritesReportsAndRunRecord) {
  ASSERT_EQ(run("ingest --input " + path("mtx") + " --output " + path("set.tsb")).code, 0);
  ASSERT_EQ(run("plan --bundle " + path("set.tsb")).code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "a.lu.plan"));

  const auto g = run("run --bundle " + path("set.tsb") + " --solver gmres_ilu --formats bfloat16,posit16 --out " +
                     path("out"));
  ASSERT_EQ(g.code, 0) << g.out;
  const auto rec = nlohmann::json::parse(slurp(dir / "out" / "solve_gmres_ilu" / "run.json"));
  EXPECT_EQ(rec.at("solver"), "gmres_ilu");
  EXPECT_EQ(rec.at("matrices").size(), 3u);
  EXPECT_DOUBLE_EQ(rec.at("tolerance_by_width").at("16").get<double>(), std::ldexp(1.0, -5));
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "solve_gmres_ilu" / "iteration_count.sorted.csv"));

  const auto m = run("run --bundle " + path("set.tsb") + " --solver mpir --mpir-family posit --mpir-config 8,16,32 --out " +
                     path("out"));
  ASSERT_EQ(m.code, 0) << m.out;
  const auto mrec = nlohmann::json::parse(slurp(dir / "out" / "solve_mpir_posit_08_16_32" / "run.json"));
  EXPECT_DOUBLE_EQ(mrec.at("tolerance").get<double>(), 1e-3);

  EXPECT_EQ(run("run --bundle " + path("set.tsb") + " --solver mpir --mpir-family posit --mpir-config 32,16,64 --out " +
                path("out"))
                .code,
            1);
  EXPECT_EQ(run("run --bundle " + path("set.tsb") + " --solver lu --formats float99 --out " + path("out")).code, 1);

  const auto before = slurp(dir / "out" / "solve_gmres_ilu" / "relative_error.sorted.csv");
  std::filesystem::remove(dir / "out" / "solve_gmres_ilu" / "relative_error.sorted.csv");
  ASSERT_EQ(run("report --out " + path("out")).code, 0);
  EXPECT_EQ(slurp(dir / "out" / "solve_gmres_ilu" / "relative_error.sorted.csv"), before);
}

}  // namespace
