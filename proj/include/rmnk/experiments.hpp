#pragma once

// Experiment grid over (N, K, M, rho): per-instance measurements, CSV
// round-trip and per-cell averages.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "rmnk/correlated_sampling.hpp"
#include "rmnk/enumeration.hpp"
#include "rmnk/errors.hpp"
#include "rmnk/instance_io.hpp"
#include "rmnk/landscape.hpp"
#include "rmnk/parallel.hpp"
#include "rmnk/rng.hpp"
#include "rmnk/walker.hpp"

namespace rmnk {

/// Pearson correlation matrix of the objective vectors of `n_samples` uniform
/// random solutions.
inline Eigen::MatrixXd empirical_objective_correlation(const Instance& inst, std::size_t n_samples,
                                                       RandomStream& rng) {
  if (n_samples < 2) throw InvalidParameter("need at least two samples for a correlation");
  const auto m = static_cast<Eigen::Index>(inst.m());
  Eigen::MatrixXd samples(static_cast<Eigen::Index>(n_samples), m);
  ObjectiveVector f(static_cast<std::size_t>(m));
  for (std::size_t s = 0; s < n_samples; ++s) {
    inst.evaluate_into(random_solution(static_cast<std::size_t>(inst.n()), rng), f);
    for (Eigen::Index o = 0; o < m; ++o) samples(static_cast<Eigen::Index>(s), o) = f[static_cast<std::size_t>(o)];
  }
  const Eigen::RowVectorXd mu = samples.colwise().mean();
  const Eigen::MatrixXd centered = samples.rowwise() - mu;
  const Eigen::MatrixXd cov = centered.transpose() * centered;
  const Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
  Eigen::MatrixXd corr = cov.array() / (sd * sd.transpose()).array();
  corr.diagonal().setOnes();
  return corr;
}

inline double mean_off_diagonal(const Eigen::MatrixXd& c) {
  double sum = 0.0;
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j)
      if (i != j) {
        sum += c(i, j);
        ++count;
      }
  return count > 0 ? sum / static_cast<double>(count) : 1.0;
}

struct GridConfig {
  std::vector<int> n_values{18};
  std::vector<int> k_values{2, 4, 6, 8, 10};
  std::vector<int> m_values{2, 3, 5};
  std::vector<double> rho_values{-0.9, -0.7, -0.4, -0.2, 0.0, 0.2, 0.4, 0.7, 0.9};
  std::size_t instances_per_cell = 30;
  std::size_t walks_per_instance = 1000;
  bool enumerate = true;
  std::uint64_t master_seed = 0;
  std::size_t correlation_samples = 10000;
  int enumeration_limit = kDefaultEnumerationLimit;
};

struct Cell {
  int n = 0;
  int k = 0;
  int m = 0;
  double rho = 0.0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Cells in output order (N, M, K, rho as listed), skipping rho < -1/(M-1).
inline std::vector<Cell> grid_cells(const GridConfig& cfg) {
  std::vector<Cell> cells;
  for (int n : cfg.n_values)
    for (int m : cfg.m_values)
      for (int k : cfg.k_values)
        for (double rho : cfg.rho_values)
          if (is_admissible_rho(m, rho)) cells.push_back({n, k, m, rho});
  return cells;
}

/// Seed of one grid instance; depends only on the master seed, the cell and the instance id.
inline std::uint64_t instance_seed(std::uint64_t master, const Cell& c, std::size_t instance_id) {
  const std::string tag = "N=" + std::to_string(c.n) + ",K=" + std::to_string(c.k) + ",M=" +
                          std::to_string(c.m) + ",rho=" + format_shortest(c.rho);
  return derive_seed(derive_seed(master, tag), static_cast<std::uint64_t>(instance_id));
}

struct GridRow {
  Cell cell;
  std::size_t instance_id = 0;
  std::optional<std::uint64_t> n_plo;
  std::optional<double> plo_fraction;
  std::optional<std::uint64_t> n_pareto;
  std::optional<double> mean_walk;
  std::optional<double> sd_walk;
  std::optional<double> empirical_rho;
  std::string error;
};

inline GridRow measure_instance(const GridConfig& cfg, const Cell& cell, std::size_t instance_id) {
  GridRow row;
  row.cell = cell;
  row.instance_id = instance_id;
  const std::uint64_t seed = instance_seed(cfg.master_seed, cell, instance_id);
  std::optional<Instance> inst;
  try {
    inst.emplace(generate_instance(LandscapeParams{cell.n, cell.k, cell.m, cell.rho, seed}));
  } catch (const Error& e) {
    row.error = e.what();
    return row;
  }
  if (cfg.enumerate) {
    if (cell.n > cfg.enumeration_limit) {
      row.error = "SpaceTooLarge";
    } else {
      EnumerationOptions opts;
      opts.limit = cfg.enumeration_limit;
      const PloSummary s = enumerate_plo(*inst, opts);
      row.n_plo = s.n_plo;
      row.plo_fraction = s.plo_fraction;
      row.n_pareto = s.n_pareto;
    }
  }
  if (cfg.walks_per_instance > 0) {
    const WalkStats w = walk_campaign(*inst, cfg.walks_per_instance, derive_seed(seed, "walks"));
    row.mean_walk = w.mean_length;
    row.sd_walk = w.sd_length;
  }
  if (cfg.correlation_samples >= 2) {
    RandomStream rng = make_stream(derive_seed(seed, "correlation"));
    row.empirical_rho = mean_off_diagonal(empirical_objective_correlation(*inst, cfg.correlation_samples, rng));
  }
  return row;
}

using GridProgress = std::function<void(std::size_t done, std::size_t total)>;

/// One row per (cell, instance), ordered by cell then instance id regardless of `threads`.
inline std::vector<GridRow> run_grid(const GridConfig& cfg, unsigned threads = 1, const GridProgress& progress = {}) {
  const auto cells = grid_cells(cfg);
  const std::size_t total = cells.size() * cfg.instances_per_cell;
  std::vector<GridRow> rows(total);
  std::atomic<std::size_t> done{0};
  parallel_for(total, threads, [&](std::size_t t) {
    rows[t] = measure_instance(cfg, cells[t / cfg.instances_per_cell], t % cfg.instances_per_cell);
    const std::size_t d = ++done;
    if (progress) progress(d, total);
  });
  return rows;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr std::string_view kCsvHeader =
    "N,K,M,rho,instance_id,n_plo,plo_fraction,n_pareto,mean_walk,sd_walk,empirical_rho,error";

namespace detail {

inline std::string csv_field(const std::optional<double>& v) { return v ? format_17g(*v) : std::string(); }
inline std::string csv_field(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); }

inline std::string sanitize_error(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == ',' || c == '\n' || c == '\r' || c == '"'; }, ';');
  return s;
}

inline std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, std::string_view what) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw FormatError(line, "cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  return value;
}

}  // namespace detail

inline void write_results_csv(const std::vector<GridRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.cell.n << ',' << r.cell.k << ',' << r.cell.m << ',' << format_shortest(r.cell.rho) << ','
        << r.instance_id << ',' << detail::csv_field(r.n_plo) << ',' << detail::csv_field(r.plo_fraction) << ','
        << detail::csv_field(r.n_pareto) << ',' << detail::csv_field(r.mean_walk) << ','
        << detail::csv_field(r.sd_walk) << ',' << detail::csv_field(r.empirical_rho) << ','
        << detail::sanitize_error(r.error) << '\n';
  }
}

inline std::vector<GridRow> read_results_csv(std::istream& in) {
  std::string line;
  std::size_t number = 1;
  if (!std::getline(in, line) || detail::trim(line) != kCsvHeader)
    throw FormatError(number, "missing results header");
  std::vector<GridRow> rows;
  while (std::getline(in, line)) {
    ++number;
    if (detail::trim(line).empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto f = detail::split(line, ',');
    if (f.size() != 12) throw FormatError(number, "expected 12 fields");
    GridRow r;
    r.cell.n = detail::parse_number<int>(f[0], number, "N");
    r.cell.k = detail::parse_number<int>(f[1], number, "K");
    r.cell.m = detail::parse_number<int>(f[2], number, "M");
    r.cell.rho = detail::parse_number<double>(f[3], number, "rho");
    r.instance_id = detail::parse_number<std::size_t>(f[4], number, "instance_id");
    auto opt_u = [&](const std::string& s, std::string_view what) -> std::optional<std::uint64_t> {
      if (s.empty()) return std::nullopt;
      return detail::parse_number<std::uint64_t>(s, number, what);
    };
    auto opt_d = [&](const std::string& s, std::string_view what) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return detail::parse_number<double>(s, number, what);
    };
    r.n_plo = opt_u(f[5], "n_plo");
    r.plo_fraction = opt_d(f[6], "plo_fraction");
    r.n_pareto = opt_u(f[7], "n_pareto");
    r.mean_walk = opt_d(f[8], "mean_walk");
    r.sd_walk = opt_d(f[9], "sd_walk");
    r.empirical_rho = opt_d(f[10], "empirical_rho");
    r.error = f[11];
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Config files: flat "key = value" lines, lists comma-separated, '#' comments.

inline GridConfig parse_grid_config(std::istream& in) {
  GridConfig cfg;
  std::string line;
  std::size_t number = 0;
  auto int_list = [&](const std::string& v) {
    std::vector<int> out;
    for (const auto& item : detail::split(v, ',')) out.push_back(detail::parse_number<int>(detail::trim(item), number, "integer"));
    return out;
  };
  auto double_list = [&](const std::string& v) {
    std::vector<double> out;
    for (const auto& item : detail::split(v, ',')) out.push_back(detail::parse_number<double>(detail::trim(item), number, "real"));
    return out;
  };
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (detail::trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError(number, "expected 'key = value'");
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    if (key == "n_values") cfg.n_values = int_list(value);
    else if (key == "k_values") cfg.k_values = int_list(value);
    else if (key == "m_values") cfg.m_values = int_list(value);
    else if (key == "rho_values") cfg.rho_values = double_list(value);
    else if (key == "instances_per_cell") cfg.instances_per_cell = detail::parse_number<std::size_t>(value, number, key);
    else if (key == "walks_per_instance") cfg.walks_per_instance = detail::parse_number<std::size_t>(value, number, key);
    else if (key == "correlation_samples") cfg.correlation_samples = detail::parse_number<std::size_t>(value, number, key);
    else if (key == "enumeration_limit") cfg.enumeration_limit = detail::parse_number<int>(value, number, key);
    else if (key == "master_seed") cfg.master_seed = detail::parse_number<std::uint64_t>(value, number, key);
    else if (key == "enumerate") {
      if (value == "true" || value == "1") cfg.enumerate = true;
      else if (value == "false" || value == "0") cfg.enumerate = false;
      else throw FormatError(number, "enumerate must be true or false");
    } else {
      throw FormatError(number, "unknown key '" + key + "'");
    }
  }
  if (cfg.n_values.empty() || cfg.k_values.empty() || cfg.m_values.empty() || cfg.rho_values.empty())
    throw FormatError(number, "parameter lists must not be empty");
  if (cfg.instances_per_cell == 0) throw FormatError(number, "instances_per_cell must be positive");
  return cfg;
}

inline GridConfig load_grid_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  return parse_grid_config(in);
}

// ---------------------------------------------------------------------------
// Cell averages (per-instance values averaged, never pooled raw data).

struct CellSummary {
  Cell cell;
  std::size_t instances = 0;
  std::optional<double> mean_n_plo;
  std::optional<double> mean_plo_fraction;
  std::optional<double> mean_n_pareto;
  std::optional<double> mean_walk;
  std::optional<double> mean_empirical_rho;
};

inline std::vector<CellSummary> aggregate_cells(const std::vector<GridRow>& rows) {
  struct Acc {
    std::size_t count = 0;
    std::size_t plo_count = 0, walk_count = 0, rho_count = 0;
    double plo = 0, frac = 0, pareto = 0, walk = 0, rho = 0;
  };
  std::vector<Cell> order;
  std::map<Cell, Acc> acc;
  for (const auto& r : rows) {
    auto [it, inserted] = acc.try_emplace(r.cell);
    if (inserted) order.push_back(r.cell);
    Acc& a = it->second;
    ++a.count;
    if (r.n_plo && r.n_pareto && r.plo_fraction) {
      ++a.plo_count;
      a.plo += static_cast<double>(*r.n_plo);
      a.frac += *r.plo_fraction;
      a.pareto += static_cast<double>(*r.n_pareto);
    }
    if (r.mean_walk) {
      ++a.walk_count;
      a.walk += *r.mean_walk;
    }
    if (r.empirical_rho) {
      ++a.rho_count;
      a.rho += *r.empirical_rho;
    }
  }
  std::vector<CellSummary> out;
  for (const Cell& c : order) {
    const Acc& a = acc.at(c);
    CellSummary s;
    s.cell = c;
    s.instances = a.count;
    if (a.plo_count > 0) {
      const auto d = static_cast<double>(a.plo_count);
      s.mean_n_plo = a.plo / d;
      s.mean_plo_fraction = a.frac / d;
      s.mean_n_pareto = a.pareto / d;
    }
    if (a.walk_count > 0) s.mean_walk = a.walk / static_cast<double>(a.walk_count);
    if (a.rho_count > 0) s.mean_empirical_rho = a.rho / static_cast<double>(a.rho_count);
    out.push_back(s);
  }
  return out;
}

}  // namespace rmnk
