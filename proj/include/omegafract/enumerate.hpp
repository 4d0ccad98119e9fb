#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "omegafract/automaton.hpp"
#include "omegafract/error.hpp"
#include "omegafract/structure.hpp"

namespace omegafract {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 22;

/// States reachable from `from` by reading w.
inline std::vector<StateId> run_set(const Automaton& a, std::vector<StateId> from, const Word& w) {
  for (Symbol s : w) {
    std::vector<StateId> next;
    for (StateId q : from)
      for (const Transition& t : a.out(q))
        if (t.symbol == s) next.push_back(t.to);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    from = std::move(next);
    if (from.empty()) break;
  }
  return from;
}

inline std::vector<StateId> run_set(const Automaton& a, const Word& w) {
  return run_set(a, {a.start().begin(), a.start().end()}, w);
}

/// Finite-word acceptance: some run on w ends in an accept state.
inline bool accepts_finite(const Automaton& a, const Word& w) {
  for (StateId q : run_set(a, w))
    if (a.is_accept(q)) return true;
  return false;
}

/// Throws cap-exceeded when the k^(d n) candidate strings of length n
/// exceed `cap`.
inline void check_enumeration_cap(const Automaton& a, std::size_t n, std::uint64_t cap) {
  std::uint64_t total = 1;
  bool over = total > cap;
  for (std::size_t i = 0; i < n && !over; ++i) {
    over = total > cap / a.alphabet().size();
    total *= a.alphabet().size();
  }
  if (over)
    throw Error(ErrorCode::cap_exceeded, "depth " + std::to_string(n) + " exceeds the enumeration cap of " +
                                             std::to_string(cap) + " strings");
}

namespace detail {

/// Every length-n word with a run from start, with its run set.
inline std::vector<std::pair<Word, std::vector<StateId>>> words_with_runs(const Automaton& a, std::size_t n) {
  std::vector<std::pair<Word, std::vector<StateId>>> level{{Word{}, {a.start().begin(), a.start().end()}}};
  for (std::size_t depth = 0; depth < n; ++depth) {
    std::vector<std::pair<Word, std::vector<StateId>>> next;
    for (const auto& [word, states] : level) {
      std::map<Symbol, std::vector<StateId>> step;
      for (StateId q : states)
        for (const Transition& t : a.out(q)) step[t.symbol].push_back(t.to);
      for (auto& [symbol, targets] : step) {
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        Word longer = word;
        longer.push_back(symbol);
        next.emplace_back(std::move(longer), std::move(targets));
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace detail

/// Length-n prefixes of the accepted omega-language, sorted. For a trim
/// automaton these are exactly the length-n words that have a run.
inline std::vector<Word> enumerate_prefixes(const Automaton& a, std::size_t n,
                                            std::uint64_t cap = kDefaultEnumerationCap) {
  require_trim(a, "enumerate_prefixes");
  check_enumeration_cap(a, n, cap);
  std::vector<Word> out;
  for (auto& entry : detail::words_with_runs(a, n)) out.push_back(std::move(entry.first));
  std::sort(out.begin(), out.end());
  return out;
}

/// Finite-word language of length n, sorted.
inline std::vector<Word> finite_words(const Automaton& a, std::size_t n, std::uint64_t cap = kDefaultEnumerationCap) {
  check_enumeration_cap(a, n, cap);
  std::vector<Word> out;
  for (auto& [word, states] : detail::words_with_runs(a, n))
    if (std::any_of(states.begin(), states.end(), [&](StateId q) { return a.is_accept(q); }))
      out.push_back(std::move(word));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace omegafract
