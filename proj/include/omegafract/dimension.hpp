#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omegafract/automaton.hpp"
#include "omegafract/enumerate.hpp"
#include "omegafract/error.hpp"
#include "omegafract/graph.hpp"
#include "omegafract/spectral.hpp"
#include "omegafract/structure.hpp"

namespace omegafract {

inline constexpr double kReportTolerance = 1e-9;

/// Natural-log entropy of the cycle language of q.
inline double cycle_entropy(const Automaton& a, StateId q) { return entropy(cycle_automaton(a, q)); }

struct DimensionReport {
  double hausdorff = 0;
  double box = 0;
  /// Cycle entropy of every state that lies on a cycle.
  std::map<StateId, double> per_state;
  std::optional<StateId> hausdorff_witness;
  std::optional<StateId> box_witness;
  bool gap = false;
};

inline DimensionReport dimension_report(const Automaton& a, double tolerance = kReportTolerance) {
  require_trim(a, "dimension analysis");
  const SccDecomposition scc = scc_decompose(a);
  DimensionReport r;
  double h_max = -1, b_max = -1;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!scc.nontrivial[scc.component_of[q]]) continue;
    const double h = cycle_entropy(a, q);
    r.per_state[q] = h;
    if (h > b_max) {
      b_max = h;
      r.box_witness = q;
    }
    if (a.is_accept(q) && h > h_max) {
      h_max = h;
      r.hausdorff_witness = q;
    }
  }
  const double log_k = std::log(static_cast<double>(a.base()));
  r.hausdorff = std::max(0.0, h_max) / log_k;
  r.box = std::max(0.0, b_max) / log_k;
  r.gap = r.box - r.hausdorff > tolerance;
  return r;
}

inline double hausdorff_dimension(const Automaton& a) { return dimension_report(a).hausdorff; }

inline double box_dimension(const Automaton& a) { return dimension_report(a).box; }

inline double closed_dimension(const Automaton& a) {
  if (!is_closed(a)) throw Error(ErrorCode::not_closed, "closed_dimension requires a closed automaton");
  return entropy(a) / std::log(static_cast<double>(a.base()));
}

/// Root in [0, d] of sprad(M(B, alpha)) = 1, where B is the digraph form of
/// the automaton.
inline double mw_alpha(const Automaton& a) {
  if (!is_strongly_connected(a))
    throw Error(ErrorCode::not_strongly_connected, "mw_alpha requires a strongly connected automaton");
  std::vector<StateId> all(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) all[q] = q;
  Automaton b = with_sets(a, {a.start().front()}, all);
  if (!is_deterministic(b)) b = determinize_prefixes(b);
  const Automaton dg = multigraph_to_digraph(b);

  auto radius = [&](double alpha) { return spectral_radius(weighted_matrix(dg, alpha)); };
  double lo = 0, hi = static_cast<double>(a.arity());
  if (radius(lo) <= 1 + 1e-12) return 0;
  if (radius(hi) >= 1 - 1e-12) return hi;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
    const double mid = (lo + hi) / 2;
    if (radius(mid) > 1)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

struct GapResult {
  bool gap = false;
  /// A non-accept state whose cycle entropy exceeds that of every accept state.
  std::optional<StateId> witness;
};

inline GapResult dimension_gap(const Automaton& a, double tolerance = kReportTolerance) {
  const DimensionReport r = dimension_report(a, tolerance);
  GapResult g;
  g.gap = r.gap;
  if (!g.gap) return g;
  double accept_max = -1;
  for (const auto& [q, h] : r.per_state)
    if (a.is_accept(q)) accept_max = std::max(accept_max, h);
  double best = accept_max;
  for (const auto& [q, h] : r.per_state) {
    if (!a.is_accept(q) && h > best) {
      best = h;
      g.witness = q;
    }
  }
  return g;
}

struct DensityReport {
  bool somewhere_dense = false;
  /// Shortest u such that the closure contains the whole cylinder of u.
  std::optional<Word> dense_prefix;
  /// Whether the language contains no cylinder below dense_prefix.
  std::optional<bool> codense;
};

namespace detail {

/// Deterministic-style universality: from q every reachable state reads
/// every symbol and no reachable cycle avoids the accept states.
inline std::vector<bool> universal_states(const Automaton& a) {
  const std::size_t n = a.num_states();
  const Adjacency adj = state_graph(a);
  std::vector<bool> complete(n);
  for (StateId q = 0; q < n; ++q) {
    std::vector<Symbol> symbols;
    for (const Transition& t : a.out(q)) symbols.push_back(t.symbol);
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    complete[q] = symbols.size() == a.alphabet().size();
  }
  Adjacency rejecting(n);
  for (StateId q = 0; q < n; ++q)
    if (!a.is_accept(q))
      for (std::size_t w : adj[q])
        if (!a.is_accept(w)) rejecting[q].push_back(w);
  const Components comps = strongly_connected(rejecting);
  std::vector<std::size_t> bad;
  for (StateId q = 0; q < n; ++q) {
    if (!complete[q]) bad.push_back(q);
    for (std::size_t w : rejecting[q])
      if (comps.component_of[w] == comps.component_of[q]) bad.push_back(q);
  }
  const auto reaches_bad = reachable(reversed(adj), bad);
  std::vector<bool> universal(n);
  for (StateId q = 0; q < n; ++q) universal[q] = !reaches_bad[q];
  return universal;
}

}  // namespace detail

/// Density of the accepted set in the word topology, unary alphabets only.
/// Somewhere density is decided exactly on the deterministic prefix
/// automaton of the closure. Codensity is exact for deterministic input;
/// for nondeterministic input a "true" answer means no single state
/// accepts a full cylinder.
inline DensityReport density_classifier(const Automaton& a) {
  require_trim(a, "density_classifier");
  if (a.arity() != 1) throw Error(ErrorCode::arity, "density classification is defined for arity 1 only");
  const Automaton d = determinize_prefixes(a);
  const SccDecomposition scc = scc_decompose(d);
  std::vector<bool> full_component(scc.size(), false);
  for (std::size_t c = 0; c < scc.size(); ++c) {
    bool full = scc.nontrivial[c];
    for (StateId q : scc.members[c]) {
      std::size_t inside = 0;
      for (const Transition& t : d.out(q))
        if (scc.component_of[t.to] == c) ++inside;
      if (inside != a.alphabet().size()) full = false;
    }
    full_component[c] = full;
  }

  DensityReport r;
  // Breadth-first search gives the shortest prefix into a full component.
  std::vector<std::optional<Word>> path(d.num_states());
  std::deque<StateId> queue{d.start().front()};
  path[d.start().front()] = Word{};
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    if (full_component[scc.component_of[q]]) {
      r.somewhere_dense = true;
      r.dense_prefix = path[q];
      break;
    }
    for (const Transition& t : d.out(q)) {
      if (path[t.to]) continue;
      Word w = *path[q];
      w.push_back(t.symbol);
      path[t.to] = std::move(w);
      queue.push_back(t.to);
    }
  }
  if (!r.somewhere_dense) return r;

  const auto universal = detail::universal_states(a);
  std::vector<std::size_t> seeds;
  for (StateId q : run_set(a, *r.dense_prefix)) seeds.push_back(q);
  const auto below = reachable(state_graph(a), seeds);
  bool contains_cylinder = false;
  for (StateId q = 0; q < a.num_states(); ++q)
    if (below[q] && universal[q]) contains_cylinder = true;
  r.codense = !contains_cylinder;
  return r;
}

}  // namespace omegafract
