// rmnk: generate rhoMNK-landscapes, enumerate their Pareto local optima, run
// Pareto adaptive walks and experiment grids.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "rmnk/rmnk.hpp"

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void print_seed(std::uint64_t seed) { std::cerr << "seed: " << seed << '\n'; }

std::string params_csv(const rmnk::Instance& inst) {
  return std::to_string(inst.n()) + ',' + std::to_string(inst.k()) + ',' + std::to_string(inst.m()) + ',' +
         rmnk::format_shortest(inst.rho()) + ',' + std::to_string(inst.seed());
}

struct GenArgs {
  int n = 18, k = 4, m = 2;
  double rho = 0.0;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_gen(const GenArgs& a) {
  const std::uint64_t seed = a.seed.value_or(fresh_seed());
  print_seed(seed);
  const auto inst = rmnk::generate_instance(a.n, a.k, a.m, a.rho, seed);
  if (a.out.empty()) {
    rmnk::write_instance(inst, std::cout);
  } else {
    rmnk::save_instance(inst, a.out);
  }
  return 0;
}

struct EvalArgs {
  std::string file;
  std::string bits;
  std::optional<std::uint64_t> index;
};

int run_eval(const EvalArgs& a) {
  const auto inst = rmnk::load_instance(a.file);
  print_seed(inst.seed());
  rmnk::Solution x;
  if (a.index) {
    if (inst.n() > 64) throw rmnk::InvalidParameter("--index needs N <= 64; use --x");
    x = rmnk::Solution::from_index(*a.index, static_cast<std::size_t>(inst.n()));
  } else {
    x = rmnk::Solution::from_string(a.bits);
  }
  const auto f = inst.evaluate(x);
  for (std::size_t o = 0; o < f.size(); ++o) std::cout << (o ? " " : "") << rmnk::format_17g(f[o]);
  std::cout << '\n';
  return 0;
}

struct EnumArgs {
  std::string file;
  unsigned threads = 1;
  bool force = false;
  std::string mode = "auto";
  std::string list_out;
};

void write_solution_list(const std::string& path, const std::vector<rmnk::Solution>& xs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rmnk::Error("cannot write '" + path + "'");
  for (const auto& x : xs) out << x.to_string() << '\n';
}

int run_enum(const EnumArgs& a) {
  const auto inst = rmnk::load_instance(a.file);
  print_seed(inst.seed());
  rmnk::EnumerationOptions opts;
  opts.threads = a.threads;
  opts.limit = a.force ? 62 : rmnk::kDefaultEnumerationLimit;
  opts.keep_lists = !a.list_out.empty();
  if (a.mode == "cached") opts.mode = rmnk::EnumerationOptions::Mode::Cached;
  else if (a.mode == "streaming") opts.mode = rmnk::EnumerationOptions::Mode::Streaming;
  const auto s = rmnk::enumerate_plo(inst, opts);
  std::cout << "N,K,M,rho,seed,n_plo,plo_fraction,n_pareto\n";
  std::cout << params_csv(inst) << ',' << s.n_plo << ',' << rmnk::format_17g(s.plo_fraction) << ',' << s.n_pareto
            << '\n';
  if (opts.keep_lists) {
    write_solution_list(a.list_out + ".plo", *s.plo_list);
    write_solution_list(a.list_out + ".pareto", *s.pareto_list);
  }
  return 0;
}

struct WalkArgs {
  std::string file;
  std::size_t walks = 1000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string lengths_out;
};

int run_walk(const WalkArgs& a) {
  const auto inst = rmnk::load_instance(a.file);
  // Without --seed the walks use the same stream a grid run would use.
  const std::uint64_t seed = a.seed.value_or(rmnk::derive_seed(inst.seed(), "walks"));
  print_seed(seed);
  const auto stats = rmnk::walk_campaign(inst, a.walks, seed, a.threads, !a.lengths_out.empty());
  std::cout << "N,K,M,rho,seed,walk_seed,n_walks,mean_walk,sd_walk\n";
  std::cout << params_csv(inst) << ',' << seed << ',' << stats.n_walks << ',' << rmnk::format_17g(stats.mean_length)
            << ',' << rmnk::format_17g(stats.sd_length) << '\n';
  if (stats.lengths) {
    std::ofstream out(a.lengths_out, std::ios::binary);
    if (!out) throw rmnk::Error("cannot write '" + a.lengths_out + "'");
    for (auto l : *stats.lengths) out << l << '\n';
  }
  return 0;
}

struct GridArgs {
  std::string config;
  std::string out;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

int run_grid(const GridArgs& a) {
  auto cfg = rmnk::load_grid_config(a.config);
  if (a.seed) cfg.master_seed = *a.seed;
  print_seed(cfg.master_seed);
  rmnk::GridProgress progress;
  if (!a.quiet) {
    progress = [](std::size_t done, std::size_t total) {
      if (done == total || done % 25 == 0) std::cerr << "\r" << done << '/' << total << " instances" << std::flush;
      if (done == total) std::cerr << '\n';
    };
  }
  const auto rows = rmnk::run_grid(cfg, a.threads, progress);
  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw rmnk::Error("cannot write '" + a.out + "'");
  rmnk::write_results_csv(rows, out);
  if (!out) throw rmnk::Error("write to '" + a.out + "' failed");
  return 0;
}

struct ReportArgs {
  std::string in;
  std::string out_dir = "report";
};

int run_report(const ReportArgs& a) {
  std::cerr << "seed: n/a (report reads results only)\n";
  std::ifstream in(a.in, std::ios::binary);
  if (!in) throw rmnk::Error("cannot open '" + a.in + "'");
  const auto report = rmnk::build_report(rmnk::read_results_csv(in));
  rmnk::write_report_files(report, a.out_dir);
  rmnk::write_report_text(report, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rhoMNK-landscape generator, PLO enumerator and Pareto adaptive walker"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  gen_cmd->add_option("--n", gen.n, "bit-string length N")->required();
  gen_cmd->add_option("--k", gen.k, "epistasis degree K")->required();
  gen_cmd->add_option("--m", gen.m, "number of objectives M")->required();
  gen_cmd->add_option("--rho", gen.rho, "objective correlation")->required();
  gen_cmd->add_option("--seed", gen.seed, "generation seed (random if omitted)");
  gen_cmd->add_option("--out", gen.out, "output file (stdout if omitted)");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate one solution");
  eval_cmd->add_option("instance", ev.file)->required();
  auto* x_opt = eval_cmd->add_option("--x", ev.bits, "solution as a 0/1 string, character i = bit i");
  auto* idx_opt = eval_cmd->add_option("--index", ev.index, "solution as an integer, bit i at weight 2^i");
  x_opt->excludes(idx_opt);
  idx_opt->excludes(x_opt);

  EnumArgs en;
  auto* enum_cmd = app.add_subcommand("enum", "count Pareto local optima and Pareto optimal solutions");
  enum_cmd->add_option("instance", en.file)->required();
  enum_cmd->add_option("--threads", en.threads, "worker threads")->check(CLI::PositiveNumber);
  enum_cmd->add_flag("--force-enum", en.force, "allow N > 24");
  enum_cmd->add_option("--mode", en.mode, "auto, cached or streaming")
      ->check(CLI::IsMember({"auto", "cached", "streaming"}));
  enum_cmd->add_option("--list-out", en.list_out, "write solution lists to PREFIX.plo and PREFIX.pareto");

  WalkArgs wk;
  auto* walk_cmd = app.add_subcommand("walk", "run a Pareto hill-climbing campaign");
  walk_cmd->add_option("instance", wk.file)->required();
  walk_cmd->add_option("--walks", wk.walks, "number of walks")->check(CLI::PositiveNumber);
  walk_cmd->add_option("--seed", wk.seed, "campaign master seed");
  walk_cmd->add_option("--threads", wk.threads, "worker threads")->check(CLI::PositiveNumber);
  walk_cmd->add_option("--lengths-out", wk.lengths_out, "write every walk length to this file");

  GridArgs gr;
  auto* grid_cmd = app.add_subcommand("grid", "run an experiment grid from a config file");
  grid_cmd->add_option("--config", gr.config, "grid config file")->required();
  grid_cmd->add_option("--out", gr.out, "results CSV")->required();
  grid_cmd->add_option("--threads", gr.threads, "worker threads")->check(CLI::PositiveNumber);
  grid_cmd->add_option("--seed", gr.seed, "override the config's master_seed");
  grid_cmd->add_flag("--quiet", gr.quiet, "no progress output");

  ReportArgs rp;
  auto* report_cmd = app.add_subcommand("report", "regressions and plot scripts from a results CSV");
  report_cmd->add_option("--in", rp.in, "results CSV")->required();
  report_cmd->add_option("--out-dir", rp.out_dir, "directory for report.txt, cells.dat and plot scripts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*eval_cmd && x_opt->count() == 0 && idx_opt->count() == 0) {
    std::cerr << "eval: one of --x or --index is required\n";
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*eval_cmd) return run_eval(ev);
    if (*enum_cmd) return run_enum(en);
    if (*walk_cmd) return run_walk(wk);
    if (*grid_cmd) return run_grid(gr);
    if (*report_cmd) return run_report(rp);
  } catch (const rmnk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
