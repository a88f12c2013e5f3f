#pragma once

// Regression summary and plot scripts built from a results table alone.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rmnk/experiments.hpp"
#include "rmnk/stats.hpp"
#include "rmnk/walker.hpp"

namespace rmnk {

/// Fits over the cell means of one bit-string length N.
struct EnumeratedFits {
  int n = 0;
  std::size_t cells = 0;
  /// ln(mean n_pareto) against ln(mean n_plo), on absolute counts and on
  /// fractions of 2^N (same slope and r, intercepts differ).
  RegressionFit pareto_vs_plo;
  RegressionFit pareto_vs_plo_fraction;
  double pareto_vs_plo_spearman = 0.0;
  /// ln(mean n_plo) against mean walk length, absolute and as a fraction of 2^N.
  std::optional<RegressionFit> plo_vs_walk;
  std::optional<RegressionFit> plo_fraction_vs_walk;
  /// Share of cells whose refitted estimate is within a factor 2 of the enumerated mean.
  std::optional<double> estimate_within_factor2;
};

/// Mean walk length against N for one (K, M, rho) series.
struct LinearitySeries {
  int k = 0;
  int m = 0;
  double rho = 0.0;
  std::vector<int> ns;
  std::vector<double> walks;
  RegressionFit fit;
};

struct Report {
  std::vector<CellSummary> cells;
  std::vector<EnumeratedFits> enumerated;
  std::vector<LinearitySeries> linearity;
};

inline std::optional<EnumeratedFits> fit_enumerated(const std::vector<CellSummary>& cells, int n) {
  std::vector<double> plo, frac, pareto, pareto_frac, walk;
  for (const auto& c : cells) {
    if (c.cell.n != n || !c.mean_n_plo || !c.mean_n_pareto) continue;
    plo.push_back(*c.mean_n_plo);
    frac.push_back(*c.mean_plo_fraction);
    pareto.push_back(*c.mean_n_pareto);
    pareto_frac.push_back(*c.mean_n_pareto / std::ldexp(1.0, n));
    if (c.mean_walk) walk.push_back(*c.mean_walk);
  }
  if (plo.size() < 3) return std::nullopt;
  EnumeratedFits f;
  f.n = n;
  f.cells = plo.size();
  try {
    f.pareto_vs_plo = fit_loglog(plo, pareto);
    f.pareto_vs_plo_fraction = fit_loglog(frac, pareto_frac);
    f.pareto_vs_plo_spearman = spearman(plo, pareto);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (walk.size() == plo.size()) {
    try {
      f.plo_vs_walk = fit_linlog(walk, plo);
      f.plo_fraction_vs_walk = fit_linlog(walk, frac);
      std::size_t ok = 0;
      for (std::size_t i = 0; i < plo.size(); ++i) {
        const double ratio = std::exp(estimate_log_plo(walk[i], *f.plo_vs_walk)) / plo[i];
        if (ratio <= 2.0 && ratio >= 0.5) ++ok;
      }
      f.estimate_within_factor2 = static_cast<double>(ok) / static_cast<double>(plo.size());
    } catch (const Error&) {
      f.plo_vs_walk.reset();
      f.plo_fraction_vs_walk.reset();
    }
  }
  return f;
}

inline std::vector<LinearitySeries> fit_linearity(const std::vector<CellSummary>& cells) {
  std::map<std::tuple<int, int, double>, std::vector<std::pair<int, double>>> series;
  for (const auto& c : cells)
    if (c.mean_walk) series[{c.cell.k, c.cell.m, c.cell.rho}].emplace_back(c.cell.n, *c.mean_walk);
  std::vector<LinearitySeries> out;
  for (auto& [key, points] : series) {
    std::sort(points.begin(), points.end());
    if (points.size() < 2) continue;
    LinearitySeries s;
    std::tie(s.k, s.m, s.rho) = key;
    std::vector<double> xs;
    for (auto [n, w] : points) {
      s.ns.push_back(n);
      s.walks.push_back(w);
      xs.push_back(static_cast<double>(n));
    }
    try {
      s.fit = fit_linear(xs, s.walks);
    } catch (const Error&) {
      continue;
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline Report build_report(const std::vector<GridRow>& rows) {
  Report r;
  r.cells = aggregate_cells(rows);
  std::set<int> ns;
  for (const auto& c : r.cells) ns.insert(c.cell.n);
  for (int n : ns)
    if (auto f = fit_enumerated(r.cells, n)) r.enumerated.push_back(*f);
  r.linearity = fit_linearity(r.cells);
  return r;
}

namespace detail {

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::string describe(const RegressionFit& f) {
  return "a=" + fmt(f.a) + " b=" + fmt(f.b) + " r=" + fmt(f.r);
}

}  // namespace detail

inline void write_report_text(const Report& r, std::ostream& out) {
  out << "cells: " << r.cells.size() << '\n';
  for (const auto& f : r.enumerated) {
    out << "\n[N=" << f.n << ", " << f.cells << " enumerated cells]\n";
    out << "pareto size vs PLO count (log-log, counts):    " << detail::describe(f.pareto_vs_plo) << '\n';
    out << "pareto size vs PLO count (log-log, fractions): " << detail::describe(f.pareto_vs_plo_fraction) << '\n';
    out << "pareto size vs PLO count spearman:             " << detail::fmt(f.pareto_vs_plo_spearman) << '\n';
    if (f.plo_vs_walk) {
      out << "ln PLO count vs walk length (lin-log):         " << detail::describe(*f.plo_vs_walk) << '\n';
      out << "ln PLO fraction vs walk length (lin-log):      " << detail::describe(*f.plo_fraction_vs_walk) << '\n';
      out << "intercept ln(2^N) = " << detail::fmt(static_cast<double>(f.n) * std::log(2.0))
          << " (an intercept near this value means the fit is on absolute counts)\n";
      out << "cells estimated within factor 2: " << detail::fmt(*f.estimate_within_factor2) << '\n';
    }
  }
  if (!r.linearity.empty()) {
    out << "\n[walk length vs N]\n";
    out << "K M rho slope intercept R2 points\n";
    for (const auto& s : r.linearity)
      out << s.k << ' ' << s.m << ' ' << format_shortest(s.rho) << ' ' << detail::fmt(s.fit.a) << ' '
          << detail::fmt(s.fit.b) << ' ' << detail::fmt(s.fit.r_squared()) << ' ' << s.ns.size() << '\n';
  }
}

/// Whitespace table of cell means; '?' marks a missing measurement.
inline void write_cells_table(const Report& r, std::ostream& out) {
  auto opt = [](const std::optional<double>& v) { return v ? format_17g(*v) : std::string("?"); };
  out << "# N K M rho instances n_plo plo_fraction n_pareto pareto_fraction walk empirical_rho\n";
  for (const auto& c : r.cells) {
    std::optional<double> pareto_frac;
    if (c.mean_n_pareto) pareto_frac = *c.mean_n_pareto / std::ldexp(1.0, c.cell.n);
    out << c.cell.n << ' ' << c.cell.k << ' ' << c.cell.m << ' ' << format_shortest(c.cell.rho) << ' '
        << c.instances << ' ' << opt(c.mean_n_plo) << ' ' << opt(c.mean_plo_fraction) << ' '
        << opt(c.mean_n_pareto) << ' ' << opt(pareto_frac) << ' ' << opt(c.mean_walk) << ' '
        << opt(c.mean_empirical_rho) << '\n';
  }
}

namespace detail {

inline constexpr const char* kPlotPreamble =
    "set datafile missing '?'\n"
    "set key outside right\n";

// A 2x2 panel of one measure (column `col`): against rho for M=2 and M=5 with
// one line per K, then against K for rho=-0.2 and rho=0.9 with one line per M.
inline std::string four_panel(const std::string& title, int col, const std::string& ylabel, bool logscale, int n) {
  const std::string ns = std::to_string(n);
  const std::string c = std::to_string(col);
  std::string s = kPlotPreamble;
  s += "set terminal pngcairo size 1200,900\nset output '" + title + ".png'\n";
  s += "set multiplot layout 2,2 title '" + title + " (N=" + ns + ")'\n";
  if (logscale) s += "set logscale y\n";
  s += "set ylabel '" + ylabel + "'\n";
  for (const char* m : {"2", "5"}) {
    s += "set xlabel 'rho'\nset title 'M=" + std::string(m) + "'\n";
    s += "plot for [k in '2 4 6 8 10'] 'cells.dat' using ($1==" + ns + " && $3==" + m + " && $2==k ? $4 : 1/0):" + c +
         " with linespoints title 'K='.k\n";
  }
  for (const char* rho : {"-0.2", "0.9"}) {
    s += "set xlabel 'K'\nset title 'rho=" + std::string(rho) + "'\n";
    s += "plot for [m in '2 3 5'] 'cells.dat' using ($1==" + ns + " && abs($4-(" + rho + "))<1e-9 && $3==m ? $2 : 1/0):" +
         c + " with linespoints title 'M='.m\n";
  }
  s += "unset multiplot\n";
  return s;
}

}  // namespace detail

/// Gnuplot scripts for the five figure layouts, reading cells.dat from the same directory.
inline std::vector<std::pair<std::string, std::string>> plot_scripts(int n_enumerated = 18) {
  using detail::kPlotPreamble;
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("fig1_plo.gp", detail::four_panel("fig1_plo", 7, "PLO / 2^N", true, n_enumerated));

  const std::string ns = std::to_string(n_enumerated);
  std::string fig2 = kPlotPreamble;
  fig2 += "set terminal pngcairo size 800,600\nset output 'fig2_pareto_vs_plo.png'\n";
  fig2 += "set logscale xy\nset xlabel 'PLO / 2^N'\nset ylabel 'Pareto set size / 2^N'\n";
  fig2 += "f(x) = a*x + b\nfit f(x) 'cells.dat' using ($1==" + ns + " ? log($7) : 1/0):(log($9)) via a, b\n";
  fig2 += "plot 'cells.dat' using ($1==" + ns + " ? $7 : 1/0):9 with points title 'cells', exp(b)*x**a title 'fit'\n";
  out.emplace_back("fig2_pareto_vs_plo.gp", fig2);

  out.emplace_back("fig3_walk.gp", detail::four_panel("fig3_walk", 10, "mean walk length", false, n_enumerated));

  std::string fig4 = kPlotPreamble;
  fig4 += "set terminal pngcairo size 800,600\nset output 'fig4_plo_vs_walk.png'\n";
  fig4 += "set logscale y\nset xlabel 'mean walk length'\nset ylabel 'PLO / 2^N'\n";
  fig4 += "f(x) = a*x + b\nfit f(x) 'cells.dat' using ($1==" + ns + " ? $10 : 1/0):(log($6)) via a, b\n";
  fig4 += "plot 'cells.dat' using ($1==" + ns + " ? $10 : 1/0):7 with points title 'cells', exp(a*x+b)/2**" + ns +
          " title 'fit'\n";
  out.emplace_back("fig4_plo_vs_walk.gp", fig4);

  std::string fig5 = kPlotPreamble;
  fig5 += "set terminal pngcairo size 1200,900\nset output 'fig5_walk_large.png'\n";
  fig5 += "set multiplot layout 2,2 title 'walk length, K=4'\nset ylabel 'mean walk length'\n";
  fig5 += "set xlabel 'N'\nset title 'rho=-0.2'\n";
  fig5 += "plot for [m in '2 3 5'] 'cells.dat' using ($2==4 && abs($4+0.2)<1e-9 && $3==m ? $1 : 1/0):10 with linespoints title 'M='.m\n";
  fig5 += "set title 'M=2'\n";
  fig5 += "plot for [r in '-0.9 -0.7 -0.4 -0.2 0 0.2 0.4 0.7 0.9'] 'cells.dat' using ($2==4 && $3==2 && abs($4-r)<1e-9 ? $1 : 1/0):10 with linespoints title 'rho='.r\n";
  for (const char* n : {"64", "128"}) {
    fig5 += "set xlabel 'rho'\nset title 'N=" + std::string(n) + "'\n";
    fig5 += "plot for [m in '2 3 5'] 'cells.dat' using ($2==4 && $1==" + std::string(n) +
            " && $3==m ? $4 : 1/0):10 with linespoints title 'M='.m\n";
  }
  fig5 += "unset multiplot\n";
  out.emplace_back("fig5_walk_large.gp", fig5);
  return out;
}

/// Writes report.txt, cells.dat and the plot scripts into `dir`.
inline void write_report_files(const Report& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw Error("cannot write '" + (dir / name).string() + "'");
    return f;
  };
  {
    auto f = open("report.txt");
    write_report_text(r, f);
  }
  {
    auto f = open("cells.dat");
    write_cells_table(r, f);
  }
  int n_enum = 18;
  if (!r.enumerated.empty()) n_enum = r.enumerated.front().n;
  for (const auto& [name, body] : plot_scripts(n_enum)) {
    auto f = open(name);
    f << body;
  }
}

}  // namespace rmnk
