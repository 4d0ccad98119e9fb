#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "omegafract/automaton.hpp"
#include "omegafract/enumerate.hpp"
#include "omegafract/matrix.hpp"
#include "omegafract/structure.hpp"

namespace omegafract {

using BigInt = boost::multiprecision::cpp_int;

/// |L^pre|_n for n = 0..N.
using GrowthSequence = std::vector<BigInt>;

/// c_ij: number of symbols labelling a transition i -> j.
inline CountMatrix counting_matrix(const Automaton& a) {
  CountMatrix m(a.num_states());
  for (const Transition& t : a.transitions()) ++m(t.from, t.to);
  return m;
}

/// Entries (c_ij / k)^s, zero counts staying 0 for every s (0^0 = 0).
inline WeightedMatrix weighted_matrix(const Automaton& a, double s) {
  const CountMatrix c = counting_matrix(a);
  WeightedMatrix m(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c(i, j) != 0) m(i, j) = std::pow(static_cast<double>(c(i, j)) / a.base(), s);
  return m;
}

/// Deterministic automaton for the prefix language; the input itself when
/// it is already deterministic.
inline Automaton prefix_automaton(const Automaton& a) {
  return is_deterministic(a) ? a : determinize_prefixes(a);
}

inline GrowthSequence prefix_growth(const Automaton& a, std::size_t depth) {
  require_trim(a, "prefix_growth");
  const Automaton d = prefix_automaton(a);
  std::vector<BigInt> runs(d.num_states(), 0);
  for (StateId s : d.start()) runs[s] = 1;
  GrowthSequence out;
  for (std::size_t n = 0;; ++n) {
    BigInt total = 0;
    for (const auto& r : runs) total += r;
    out.push_back(total);
    if (n == depth) break;
    std::vector<BigInt> next(d.num_states(), 0);
    for (const Transition& t : d.transitions())
      if (runs[t.from] != 0) next[t.to] += runs[t.from];
    runs = std::move(next);
  }
  return out;
}

/// Natural-log entropy of the prefix language.
inline double entropy(const Automaton& a) {
  require_trim(a, "entropy");
  const double rho = spectral_radius(counting_matrix(prefix_automaton(a)));
  return rho > 0 ? std::log(rho) : 0.0;
}

/// log |L^pre|_n / n by explicit enumeration.
inline double entropy_estimate(const Automaton& a, std::size_t n, std::uint64_t cap = kDefaultEnumerationCap) {
  if (n == 0) throw Error(ErrorCode::usage, "entropy_estimate needs depth >= 1");
  const auto prefixes = enumerate_prefixes(a, n, cap);
  return std::log(static_cast<double>(prefixes.size())) / static_cast<double>(n);
}

/// Every trim state made initial and accepting: recognizes the substrings
/// of the language.
inline Automaton substring_automaton(const Automaton& a) {
  require_trim(a, "substring_automaton");
  std::vector<StateId> all(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) all[q] = q;
  return with_sets(a, all, all);
}

}  // namespace omegafract
