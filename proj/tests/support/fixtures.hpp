#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "omegafract/omegafract.hpp"

namespace fixtures {

using namespace omegafract;

inline std::string data_path(const std::string& name) { return std::string(OMEGAFRACT_DATA_DIR) + "/" + name; }

inline Automaton cantor() {
  AutomatonBuilder b(3, 1);
  auto q = b.add_state("q", true, true);
  b.add(q, {0}, q).add(q, {2}, q);
  return b.build();
}

inline Automaton dyadic() {
  AutomatonBuilder b(2, 1);
  auto q0 = b.add_state("q0", true, false);
  auto q1 = b.add_state("q1", false, true);
  b.add(q0, {0}, q0).add(q0, {1}, q0).add(q0, {0}, q1).add(q1, {0}, q1);
  return b.build();
}

/// Same language as dyadic(): words ending in 0^omega. The switch to q1
/// happens at the last 1, so every accepted word has a single run.
inline Automaton dyadic_unambiguous() {
  AutomatonBuilder b(2, 1);
  auto q0 = b.add_state("q0", true, false);
  auto q1 = b.add_state("q1", true, true);
  b.add(q0, {0}, q0).add(q0, {1}, q0).add(q0, {1}, q1).add(q1, {0}, q1);
  return b.build();
}

inline Automaton full(unsigned base = 2) {
  AutomatonBuilder b(base, 1);
  auto q = b.add_state("q", true, true);
  for (unsigned d = 0; d < base; ++d) b.add(q, {d}, q);
  return b.build();
}

/// One state looping on the single digit `digit`.
inline Automaton single_loop(unsigned base = 2, unsigned digit = 0) {
  AutomatonBuilder b(base, 1);
  auto q = b.add_state("q", true, true);
  b.add(q, {digit}, q);
  return b.build();
}

/// s reads 1 into q, which loops on both binary digits.
inline Automaton chain() {
  AutomatonBuilder b(2, 1);
  auto s = b.add_state("s", true, false);
  auto q = b.add_state("q", false, true);
  b.add(s, {1}, q).add(q, {0}, q).add(q, {1}, q);
  return b.build();
}

inline Automaton two_cantors() {
  AutomatonBuilder b(3, 1);
  auto x = b.add_state("a", true, true);
  auto y = b.add_state("b", true, true);
  b.add(x, {0}, x).add(x, {2}, x).add(y, {0}, y).add(y, {2}, y);
  return b.build();
}

/// Cantor set squared: digit pairs from {0,2}^2.
inline Automaton product_cantor() {
  AutomatonBuilder b(3, 2);
  auto q = b.add_state("q", true, true);
  for (unsigned x : {0u, 2u})
    for (unsigned y : {0u, 2u}) b.add(q, {x, y}, q);
  return b.build();
}

/// Arbitrary ternary prefix, then a 1, then a Cantor tail.
inline Automaton middle_gap() {
  AutomatonBuilder b(3, 1);
  auto p = b.add_state("p", true, false);
  auto c = b.add_state("c", false, true);
  b.add(p, {0}, p).add(p, {1}, p).add(p, {2}, p).add(p, {1}, c).add(c, {0}, c).add(c, {2}, c);
  return b.build();
}

/// Golden mean shift: no two consecutive 1s.
inline Automaton golden_mean() {
  AutomatonBuilder b(2, 1);
  auto x = b.add_state("a", true, true);
  auto y = b.add_state("b", false, true);
  b.add(x, {0}, x).add(x, {1}, y).add(y, {0}, x);
  return b.build();
}

inline std::vector<std::string> bundled_names() {
  return {"cantor.json", "chain.json", "dyadic.json", "dyadic_unambiguous.json", "full_interval.json",
          "golden_mean.json", "middle_gap.json", "two_cantors.json"};
}

struct RandomSpec {
  std::size_t max_states = 6;
  std::vector<unsigned> bases{2, 3};
  double density = 0.35;
  bool deterministic = false;
};

/// Random automaton over a unary alphabet. Each (state, symbol) pair gets
/// each possible target independently with probability `density` (at most
/// one target when deterministic). Not necessarily trim.
inline Automaton random_automaton(std::mt19937_64& rng, const RandomSpec& spec) {
  std::uniform_int_distribution<std::size_t> states_dist(1, spec.max_states);
  std::uniform_int_distribution<std::size_t> base_dist(0, spec.bases.size() - 1);
  std::bernoulli_distribution edge(spec.density), accept(0.5);
  const std::size_t n = states_dist(rng);
  const unsigned k = spec.bases[base_dist(rng)];
  AutomatonBuilder b(k, 1);
  for (std::size_t i = 0; i < n; ++i) b.add_state("s" + std::to_string(i), i == 0, accept(rng));
  std::uniform_int_distribution<std::size_t> target(0, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (unsigned d = 0; d < k; ++d) {
      if (spec.deterministic) {
        if (edge(rng) || edge(rng)) b.add(i, {d}, target(rng));
      } else {
        for (std::size_t j = 0; j < n; ++j)
          if (edge(rng)) b.add(i, {d}, j);
      }
    }
  return b.build();
}

/// Trim random automaton; resamples until the language is nonempty.
inline Automaton random_trim(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  for (;;) {
    try {
      return trim(random_automaton(rng, spec));
    } catch (const Error&) {
    }
  }
}

inline Automaton random_closed(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  return closure(random_trim(rng, spec));
}

/// Random strongly connected automaton: a random automaton plus a cycle
/// through all states on random digits.
inline Automaton random_strongly_connected(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  const Automaton base = random_automaton(rng, spec);
  const std::size_t n = base.num_states();
  std::uniform_int_distribution<unsigned> digit(0, base.base() - 1);
  std::vector<Transition> ts(base.transitions().begin(), base.transitions().end());
  for (std::size_t i = 0; i < n; ++i) {
    const Transition t{i, digit(rng), (i + 1) % n};
    if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
  }
  std::vector<StateId> accept(base.accept().begin(), base.accept().end());
  accept.push_back(0);
  return Automaton(base.base(), 1, base.state_names(), {0}, accept, ts);
}

/// Deterministic strongly connected automaton: a ring on random digits,
/// then extra transitions on unused (state, digit) pairs.
inline Automaton random_deterministic_strongly_connected(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  std::uniform_int_distribution<std::size_t> states_dist(1, spec.max_states);
  std::uniform_int_distribution<std::size_t> base_dist(0, spec.bases.size() - 1);
  std::bernoulli_distribution edge(spec.density), accept(0.5);
  const std::size_t n = states_dist(rng);
  const unsigned k = spec.bases[base_dist(rng)];
  std::uniform_int_distribution<unsigned> digit(0, k - 1);
  std::uniform_int_distribution<std::size_t> target(0, n - 1);
  AutomatonBuilder b(k, 1);
  for (std::size_t i = 0; i < n; ++i) b.add_state("s" + std::to_string(i), i == 0, i == 0 || accept(rng));
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned ring = digit(rng);
    b.add(i, {ring}, (i + 1) % n);
    for (unsigned d = 0; d < k; ++d)
      if (d != ring && edge(rng)) b.add(i, {d}, target(rng));
  }
  return b.build();
}

/// Deterministic automaton whose start state is its only accept state.
inline Automaton random_single_loop_state(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  const Automaton a = random_deterministic_strongly_connected(rng, spec);
  return with_sets(a, {0}, {0});
}

/// Length of the shortest word that is not a prefix, if one exists up to max_n.
inline std::optional<std::size_t> shortest_omitted(const Automaton& a, std::size_t max_n) {
  std::uint64_t all = 1;
  for (std::size_t n = 1; n <= max_n; ++n) {
    all *= a.alphabet().size();
    if (enumerate_prefixes(a, n).size() < all) return n;
  }
  return std::nullopt;
}

}  // namespace fixtures
