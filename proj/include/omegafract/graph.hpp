#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "omegafract/automaton.hpp"

namespace omegafract {

using Adjacency = std::vector<std::vector<std::size_t>>;

struct Components {
  std::vector<std::size_t> component_of;
  std::size_t count = 0;
};

/// Tarjan's algorithm, iterative. Components are numbered in topological
/// order of the condensation (every edge goes from a lower or equal id to a
/// higher or equal one).
inline Components strongly_connected(const Adjacency& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> emitted(n, 0);
  std::size_t next_index = 0, emitted_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (vertex, next edge)

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge < adj[v].size()) {
        std::size_t w = adj[v][edge++];
        if (index[w] == unvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          emitted[w] = emitted_count;
        } while (w != v);
        ++emitted_count;
      }
      std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  // Tarjan emits sinks first.
  Components result;
  result.count = emitted_count;
  result.component_of.resize(n);
  for (std::size_t v = 0; v < n; ++v) result.component_of[v] = emitted_count - 1 - emitted[v];
  return result;
}

inline std::vector<bool> reachable(const Adjacency& adj, const std::vector<std::size_t>& sources) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> todo;
  for (std::size_t s : sources) {
    if (!seen[s]) {
      seen[s] = true;
      todo.push_back(s);
    }
  }
  while (!todo.empty()) {
    std::size_t v = todo.back();
    todo.pop_back();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return seen;
}

inline Adjacency reversed(const Adjacency& adj) {
  Adjacency rev(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (std::size_t w : adj[v]) rev[w].push_back(v);
  return rev;
}

/// The digraph underlying an automaton: one edge per ordered state pair
/// that carries at least one transition.
inline Adjacency state_graph(const Automaton& a) {
  Adjacency adj(a.num_states());
  for (const Transition& t : a.transitions()) adj[t.from].push_back(t.to);
  for (auto& succ : adj) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  return adj;
}

struct SccDecomposition {
  std::vector<std::size_t> component_of;
  std::vector<std::vector<StateId>> members;
  /// Condensation edges (from, to), from != to, sorted and unique.
  std::vector<std::pair<std::size_t, std::size_t>> dag_edges;
  /// Non-trivial: at least one transition between the component's own states.
  std::vector<bool> nontrivial;
  std::vector<bool> contains_accept;

  std::size_t size() const noexcept { return members.size(); }
  bool same_component(StateId p, StateId q) const { return component_of[p] == component_of[q]; }
};

inline SccDecomposition scc_decompose(const Automaton& a) {
  const Adjacency adj = state_graph(a);
  Components comps = strongly_connected(adj);
  SccDecomposition d;
  d.component_of = std::move(comps.component_of);
  d.members.resize(comps.count);
  d.nontrivial.assign(comps.count, false);
  d.contains_accept.assign(comps.count, false);
  for (StateId q = 0; q < a.num_states(); ++q) {
    d.members[d.component_of[q]].push_back(q);
    if (a.is_accept(q)) d.contains_accept[d.component_of[q]] = true;
  }
  for (const Transition& t : a.transitions()) {
    const std::size_t cf = d.component_of[t.from], ct = d.component_of[t.to];
    if (cf == ct)
      d.nontrivial[cf] = true;
    else
      d.dag_edges.push_back({cf, ct});
  }
  std::sort(d.dag_edges.begin(), d.dag_edges.end());
  d.dag_edges.erase(std::unique(d.dag_edges.begin(), d.dag_edges.end()), d.dag_edges.end());
  return d;
}

}  // namespace omegafract
