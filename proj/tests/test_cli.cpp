#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "rmnk/rmnk.hpp"

using namespace rmnk;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RMNK_CLI_PATH) + ' ' + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("rmnk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, GenWritesLibraryInstance) {
  const auto r = run("gen --n 9 --k 2 --m 3 --rho -0.4 --seed 5");
  ASSERT_EQ(r.status, 0);
  std::ostringstream expect;
  write_instance(generate_instance(9, 2, 3, -0.4, 5), expect);
  EXPECT_EQ(r.out, expect.str());
}

TEST_F(CliTest, EvalMatchesLibrary) {
  ASSERT_EQ(run("gen --n 12 --k 3 --m 2 --rho 0.2 --seed 8 --out " + path("i.txt")).status, 0);
  const auto inst = generate_instance(12, 3, 2, 0.2, 8);
  const auto f = inst.evaluate(std::uint64_t{1234});
  const std::string expect = format_17g(f[0]) + ' ' + format_17g(f[1]) + '\n';
  EXPECT_EQ(run("eval " + path("i.txt") + " --index 1234").out, expect);
  EXPECT_EQ(run("eval " + path("i.txt") + " --x " + Solution::from_index(1234, 12).to_string()).out, expect);
}

TEST_F(CliTest, EnumMatchesLibrary) {
  ASSERT_EQ(run("gen --n 10 --k 2 --m 2 --rho -0.7 --seed 3 --out " + path("i.txt")).status, 0);
  const auto r = run("enum " + path("i.txt") + " --threads 2 --list-out " + path("lists"));
  ASSERT_EQ(r.status, 0);
  EnumerationOptions opts;
  opts.keep_lists = true;
  const auto s = enumerate_plo(generate_instance(10, 2, 2, -0.7, 3), opts);
  EXPECT_EQ(r.out, "N,K,M,rho,seed,n_plo,plo_fraction,n_pareto\n10,2,2,-0.7,3," + std::to_string(s.n_plo) + ',' +
                       format_17g(s.plo_fraction) + ',' + std::to_string(s.n_pareto) + '\n');
  std::ifstream plo(path("lists.plo"));
  std::string line;
  std::size_t count = 0;
  while (std::getline(plo, line)) ++count;
  EXPECT_EQ(count, s.n_plo);
}

TEST_F(CliTest, WalkDefaultsToGridStream) {
  ASSERT_EQ(run("gen --n 16 --k 4 --m 2 --rho 0 --seed 21 --out " + path("i.txt")).status, 0);
  const auto inst = generate_instance(16, 4, 2, 0.0, 21);
  const auto seed = derive_seed(21, "walks");
  const auto stats = walk_campaign(inst, 200, seed);
  const auto r = run("walk " + path("i.txt") + " --walks 200 --threads 3");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "N,K,M,rho,seed,walk_seed,n_walks,mean_walk,sd_walk\n16,4,2,0,21," + std::to_string(seed) +
                       ",200," + format_17g(stats.mean_length) + ',' + format_17g(stats.sd_length) + '\n');
}

TEST_F(CliTest, GridAndReport) {
  {
    std::ofstream cfg(path("g.cfg"));
    cfg << "n_values = 8\nk_values = 1,2,4\nm_values = 2\nrho_values = -0.7,0,0.9\n"
           "instances_per_cell = 2\nwalks_per_instance = 30\ncorrelation_samples = 200\nmaster_seed = 4\n";
  }
  ASSERT_EQ(run("grid --config " + path("g.cfg") + " --out " + path("a.csv") + " --threads 1 --quiet").status, 0);
  ASSERT_EQ(run("grid --config " + path("g.cfg") + " --out " + path("b.csv") + " --threads 2 --quiet").status, 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));

  std::ostringstream expect;
  write_results_csv(run_grid(load_grid_config(path("g.cfg"))), expect);
  EXPECT_EQ(slurp(path("a.csv")), expect.str());

  const auto r = run("report --in " + path("a.csv") + " --out-dir " + path("rep"));
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(std::filesystem::exists(path("rep") + "/report.txt"));
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run("gen --n 8 --k 2 --m 3 --rho -0.9 --seed 1").status, 1);
  EXPECT_EQ(run("gen --n 8 --k 8 --m 2 --rho 0 --seed 1").status, 1);
  EXPECT_EQ(run("gen --n 8 --k 2").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("eval " + path("missing.txt") + " --index 1").status, 1);
  ASSERT_EQ(run("gen --n 30 --k 1 --m 2 --rho 0 --seed 1 --out " + path("big.txt")).status, 0);
  EXPECT_EQ(run("eval " + path("big.txt")).status, 2);
  EXPECT_EQ(run("enum " + path("big.txt")).status, 1);
  {
    std::ofstream bad(path("bad.txt"));
    bad << "rmnk-format 1\n4 1 2 0 1\nlink 0 1\n";
  }
  EXPECT_EQ(run("enum " + path("bad.txt")).status, 1);
}
