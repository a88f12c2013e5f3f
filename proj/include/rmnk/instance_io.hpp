#pragma once

// Versioned text format for instances.
//
//   rmnk-format 1
//   N K M RHO SEED
//   link i j_1 ... j_K                 (N lines, i ascending)
//   y i row v_1 ... v_M                (N * 2^(K+1) lines, (i, row) ascending)
//
// Table values carry 17 significant digits, which round-trips every double.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "rmnk/errors.hpp"
#include "rmnk/landscape.hpp"

namespace rmnk {

inline constexpr std::string_view kFormatTag = "rmnk-format";
inline constexpr int kFormatVersion = 1;

/// Shortest decimal that parses back to exactly `v`.
inline std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_17g(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline void write_instance(const Instance& inst, std::ostream& out) {
  const auto n = static_cast<std::size_t>(inst.n());
  const auto m = static_cast<std::size_t>(inst.m());
  out << kFormatTag << ' ' << kFormatVersion << '\n';
  out << inst.n() << ' ' << inst.k() << ' ' << inst.m() << ' ' << format_shortest(inst.rho()) << ' '
      << inst.seed() << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out << "link " << i;
    for (int j : inst.links()[i]) out << ' ' << j;
    out << '\n';
  }
  std::string line;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < inst.rows(); ++r) {
      line = "y " + std::to_string(i) + ' ' + std::to_string(r);
      const auto y = inst.row(i, r);
      for (std::size_t o = 0; o < m; ++o) {
        line += ' ';
        line += format_17g(y[o]);
      }
      line += '\n';
      out << line;
    }
  }
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::vector<std::string_view> next(std::string_view what) {
    if (!std::getline(in_, line_)) throw FormatError(number_ + 1, "unexpected end of input, expected " + std::string(what));
    ++number_;
    if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    fields_.clear();
    std::string_view rest = line_;
    while (!rest.empty()) {
      const auto start = rest.find_first_not_of(" \t");
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      const auto end = rest.find_first_of(" \t");
      fields_.push_back(rest.substr(0, end));
      if (end == std::string_view::npos) break;
      rest.remove_prefix(end);
    }
    return fields_;
  }

  std::size_t line() const noexcept { return number_; }

  template <typename T>
  T parse(std::string_view field, std::string_view what) const {
    T value{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
      throw FormatError(number_, "cannot parse " + std::string(what) + " from '" + std::string(field) + "'");
    return value;
  }

  bool at_end() {
    std::string rest;
    while (std::getline(in_, rest))
      if (rest.find_first_not_of(" \t\r") != std::string::npos) return false;
    return true;
  }

 private:
  std::istream& in_;
  std::string line_;
  std::vector<std::string_view> fields_;
  std::size_t number_ = 0;
};

}  // namespace detail

inline Instance read_instance(std::istream& in) {
  detail::LineReader reader(in);

  auto header = reader.next("format header");
  if (header.size() != 2 || header[0] != kFormatTag)
    throw FormatError(reader.line(), "missing '" + std::string(kFormatTag) + "' header");
  const int version = reader.parse<int>(header[1], "format version");
  if (version != kFormatVersion)
    throw VersionError("unsupported instance format version " + std::to_string(version));

  auto dims = reader.next("parameter line");
  if (dims.size() != 5) throw FormatError(reader.line(), "expected 'N K M RHO SEED'");
  LandscapeParams p;
  p.n = reader.parse<int>(dims[0], "N");
  p.k = reader.parse<int>(dims[1], "K");
  p.m = reader.parse<int>(dims[2], "M");
  p.rho = reader.parse<double>(dims[3], "RHO");
  p.seed = reader.parse<std::uint64_t>(dims[4], "SEED");
  try {
    validate_params(p);
  } catch (const Error& e) {
    throw FormatError(reader.line(), e.what());
  }

  const auto n = static_cast<std::size_t>(p.n);
  const auto m = static_cast<std::size_t>(p.m);
  EpistasisLinks links(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto f = reader.next("link line");
    if (f.size() != 2 + static_cast<std::size_t>(p.k) || f[0] != "link")
      throw FormatError(reader.line(), "expected 'link i' followed by K indices");
    if (reader.parse<std::size_t>(f[1], "link bit") != i) throw FormatError(reader.line(), "link lines out of order");
    for (std::size_t a = 0; a < static_cast<std::size_t>(p.k); ++a) links[i].push_back(reader.parse<int>(f[2 + a], "link index"));
  }

  const std::size_t rows = std::size_t{1} << (p.k + 1);
  std::vector<double> values;
  values.reserve(n * rows * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < rows; ++r) {
      auto f = reader.next("table line");
      if (f.size() != 3 + m || f[0] != "y") throw FormatError(reader.line(), "expected 'y i row' followed by M values");
      if (reader.parse<std::size_t>(f[1], "table bit") != i || reader.parse<std::size_t>(f[2], "table row") != r)
        throw FormatError(reader.line(), "table lines out of order");
      for (std::size_t o = 0; o < m; ++o) values.push_back(reader.parse<double>(f[3 + o], "table value"));
    }
  }
  if (!reader.at_end()) throw FormatError(reader.line() + 1, "trailing content after tables");

  try {
    return Instance(p, std::move(links), std::move(values));
  } catch (const InvalidParameter& e) {
    throw FormatError(reader.line(), e.what());
  }
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_instance(inst, out);
  if (!out) throw Error("write to '" + path + "' failed");
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_instance(in);
}

}  // namespace rmnk
