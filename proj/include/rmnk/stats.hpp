#pragma once

// Correlation and least-squares line fits in raw, log-log and lin-log space.
// Logarithms are natural throughout.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rmnk/errors.hpp"

namespace rmnk {

inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw InvalidParameter("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Pearson correlation, two-pass (centered) form.
inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw LengthMismatch(xs.size(), ys.size());
  if (xs.size() < 2) throw InvalidParameter("pearson needs at least two points");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw ZeroVariance("pearson: a sample has zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// Ranks starting at 1, ties sharing their average rank.
inline std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

inline double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw LengthMismatch(xs.size(), ys.size());
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  return pearson(rx, ry);
}

enum class FitModel { Linear, LogLog, LinLog };

inline std::string_view to_string(FitModel model) {
  switch (model) {
    case FitModel::Linear: return "linear";
    case FitModel::LogLog: return "log-log";
    case FitModel::LinLog: return "lin-log";
  }
  return "?";
}

/// Least-squares line v = a*u + b in the model's transformed space, with r the
/// Pearson correlation of (u, v). For the log-log model u = ln x, v = ln y;
/// for lin-log u = x, v = ln y.
struct RegressionFit {
  double a = 0.0;
  double b = 0.0;
  double r = 0.0;
  FitModel model = FitModel::Linear;

  double r_squared() const noexcept { return r * r; }

  double predict_transformed(double x) const {
    const double u = model == FitModel::LogLog ? std::log(x) : x;
    return a * u + b;
  }
};

inline RegressionFit fit_linear(std::span<const double> us, std::span<const double> vs) {
  if (us.size() != vs.size()) throw LengthMismatch(us.size(), vs.size());
  if (us.size() < 2) throw InvalidParameter("a line fit needs at least two points");
  const double mu = mean(us);
  const double mv = mean(vs);
  double suv = 0.0, suu = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    suv += (us[i] - mu) * (vs[i] - mv);
    suu += (us[i] - mu) * (us[i] - mu);
  }
  if (suu == 0.0) throw ZeroVariance("line fit: abscissae have zero variance");
  RegressionFit fit;
  fit.a = suv / suu;
  fit.b = mv - fit.a * mu;
  const bool flat = std::all_of(vs.begin(), vs.end(), [&](double v) { return v == vs[0]; });
  fit.r = flat ? 0.0 : pearson(us, vs);
  return fit;
}

namespace detail {

inline std::vector<double> logs(std::span<const double> xs, const char* what) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (!(x > 0.0)) throw NonPositiveData(std::string(what) + " must be strictly positive for a log fit");
    out.push_back(std::log(x));
  }
  return out;
}

inline void require_points(std::size_t xs, std::size_t ys) {
  if (xs != ys) throw LengthMismatch(xs, ys);
  if (xs < 3) throw InvalidParameter("log fits need at least three points");
}

}  // namespace detail

/// ln y = a ln x + b.
inline RegressionFit fit_loglog(std::span<const double> xs, std::span<const double> ys) {
  detail::require_points(xs.size(), ys.size());
  const auto lx = detail::logs(xs, "x");
  const auto ly = detail::logs(ys, "y");
  RegressionFit fit = fit_linear(lx, ly);
  fit.model = FitModel::LogLog;
  return fit;
}

/// ln y = a x + b.
inline RegressionFit fit_linlog(std::span<const double> xs, std::span<const double> ys) {
  detail::require_points(xs.size(), ys.size());
  const auto ly = detail::logs(ys, "y");
  RegressionFit fit = fit_linear(xs, ly);
  fit.model = FitModel::LinLog;
  return fit;
}

}  // namespace rmnk
