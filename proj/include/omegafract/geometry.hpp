#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "omegafract/automaton.hpp"
#include "omegafract/enumerate.hpp"
#include "omegafract/error.hpp"

namespace omegafract {

using Rational = boost::multiprecision::cpp_rational;

/// The grid box prod_i [z_i k^-n, (z_i + 1) k^-n].
struct Box {
  std::size_t depth = 0;
  std::vector<std::uint64_t> corner;

  auto operator<=>(const Box&) const = default;
};

inline std::uint64_t grid_size(unsigned base, std::size_t depth) {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < depth; ++i) {
    if (size > UINT64_MAX / base) throw Error(ErrorCode::cap_exceeded, "grid too fine for 64-bit corners");
    size *= base;
  }
  return size;
}

/// Depth-|w| box whose corner digits, coordinate by coordinate, are w.
inline Box nu_k(const Alphabet& alphabet, const Word& w) {
  grid_size(alphabet.base(), w.size());
  Box box{w.size(), std::vector<std::uint64_t>(alphabet.arity(), 0)};
  for (Symbol s : w) {
    if (s >= alphabet.size())
      throw Error(ErrorCode::digit_range, "symbol " + std::to_string(s) + " is not in the alphabet");
    for (unsigned i = 0; i < alphabet.arity(); ++i) box.corner[i] = box.corner[i] * alphabet.base() + alphabet.digit(s, i);
  }
  return box;
}

/// Digit-vector form: each entry is one symbol of w.
inline Box nu_k(const Alphabet& alphabet, const std::vector<DigitVector>& w) {
  Word word;
  for (const auto& v : w) word.push_back(alphabet.encode(v));
  return nu_k(alphabet, word);
}

/// Exact [lo, hi] per coordinate.
inline std::vector<std::pair<Rational, Rational>> box_bounds(const Box& box, unsigned base) {
  const Rational side = Rational(1) / Rational(grid_size(base, box.depth));
  std::vector<std::pair<Rational, Rational>> out;
  for (std::uint64_t z : box.corner) out.emplace_back(Rational(z) * side, Rational(z + 1) * side);
  return out;
}

inline std::vector<Box> box_cover(const Automaton& a, std::size_t n, std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<Box> out;
  for (const Word& w : enumerate_prefixes(a, n, cap)) out.push_back(nu_k(a.alphabet(), w));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t box_count_oracle(const Automaton& a, std::size_t n, std::uint64_t cap = kDefaultEnumerationCap) {
  return enumerate_prefixes(a, n, cap).size();
}

/// Least-squares slope of log N(n) against n log k for n in [n_min, n_max].
inline double estimate_box_dimension(const Automaton& a, std::size_t n_min, std::size_t n_max,
                                     std::uint64_t cap = kDefaultEnumerationCap) {
  if (n_min >= n_max) throw Error(ErrorCode::usage, "estimate_box_dimension needs n_min < n_max");
  check_enumeration_cap(a, n_max, cap);
  const double log_k = std::log(static_cast<double>(a.base()));
  std::vector<double> xs, ys;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    xs.push_back(static_cast<double>(n) * log_k);
    ys.push_back(std::log(static_cast<double>(box_count_oracle(a, n, cap))));
  }
  const double count = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / count;
    my += ys[i] / count;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

enum class RenderFormat { interval_list, bitmap };

inline std::string rational_text(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// Merged cover intervals, one "p/q r/s" line each, in increasing order.
inline std::string render_intervals(const Automaton& a, std::size_t n, std::uint64_t cap = kDefaultEnumerationCap) {
  if (a.arity() != 1) throw Error(ErrorCode::arity, "interval lists need arity 1");
  const auto cover = box_cover(a, n, cap);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> runs;
  for (const Box& b : cover) {
    const std::uint64_t z = b.corner[0];
    if (!runs.empty() && runs.back().second == z)
      runs.back().second = z + 1;
    else
      runs.emplace_back(z, z + 1);
  }
  const Rational side = Rational(1) / Rational(grid_size(a.base(), n));
  std::string out;
  for (const auto& [lo, hi] : runs)
    out += rational_text(Rational(lo) * side) + " " + rational_text(Rational(hi) * side) + "\n";
  return out;
}

/// Plain PBM raster, one cell per depth-n box, origin at the zero corner.
/// The first coordinate runs along rows, the second selects the row.
inline std::string render_bitmap(const Automaton& a, std::size_t n, std::uint64_t cap = kDefaultEnumerationCap) {
  if (a.arity() > 2) throw Error(ErrorCode::arity, "bitmaps need arity 1 or 2");
  const auto cover = box_cover(a, n, cap);
  const std::uint64_t width = grid_size(a.base(), n);
  const std::uint64_t height = a.arity() == 2 ? width : 1;
  std::vector<char> cells(width * height, '0');
  for (const Box& b : cover) cells[(a.arity() == 2 ? b.corner[1] : 0) * width + b.corner[0]] = '1';
  std::string out = "P1\n" + std::to_string(width) + " " + std::to_string(height) + "\n";
  for (std::uint64_t row = 0; row < height; ++row) {
    out.append(cells.begin() + static_cast<std::ptrdiff_t>(row * width),
               cells.begin() + static_cast<std::ptrdiff_t>((row + 1) * width));
    out += '\n';
  }
  return out;
}

inline std::string render(const Automaton& a, std::size_t n, RenderFormat format,
                          std::uint64_t cap = kDefaultEnumerationCap) {
  return format == RenderFormat::interval_list ? render_intervals(a, n, cap) : render_bitmap(a, n, cap);
}

}  // namespace omegafract
