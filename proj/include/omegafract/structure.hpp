#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omegafract/automaton.hpp"
#include "omegafract/error.hpp"
#include "omegafract/graph.hpp"

namespace omegafract {

struct PropertyFlags {
  bool deterministic = false;
  bool finite_trim = false;
  bool trim = false;
  bool closed = false;
  bool weak = false;
};

inline bool is_deterministic(const Automaton& a) {
  if (a.start().size() != 1) return false;
  for (StateId q = 0; q < a.num_states(); ++q) {
    auto out = a.out(q);
    for (std::size_t i = 1; i < out.size(); ++i)
      if (out[i].symbol == out[i - 1].symbol) return false;
  }
  return true;
}

namespace detail {

inline std::vector<std::size_t> to_indices(std::span<const StateId> ids) { return {ids.begin(), ids.end()}; }

/// States with a path of length >= 1 to some accept state.
inline std::vector<bool> nonzero_path_to_accept(const Automaton& a) {
  const Adjacency rev = reversed(state_graph(a));
  // Predecessors (one step back) of accept states, then everything that reaches them.
  std::vector<std::size_t> seeds;
  for (StateId f : a.accept())
    for (std::size_t p : rev[f]) seeds.push_back(p);
  return reachable(rev, seeds);
}

}  // namespace detail

inline PropertyFlags classify_properties(const Automaton& a) {
  PropertyFlags flags;
  flags.deterministic = is_deterministic(a);

  const Adjacency adj = state_graph(a);
  const auto from_start = reachable(adj, detail::to_indices(a.start()));
  const auto to_accept = reachable(reversed(adj), detail::to_indices(a.accept()));
  const auto strict = detail::nonzero_path_to_accept(a);

  flags.finite_trim = flags.trim = true;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!from_start[q] || !to_accept[q]) flags.finite_trim = false;
    if (!from_start[q] || !strict[q]) flags.trim = false;
  }
  flags.closed = flags.trim && a.accept().size() == a.num_states();

  const SccDecomposition scc = scc_decompose(a);
  flags.weak = true;
  for (const auto& members : scc.members) {
    const bool first = a.is_accept(members.front());
    for (StateId q : members)
      if (a.is_accept(q) != first) flags.weak = false;
  }
  return flags;
}

inline bool is_trim(const Automaton& a) { return classify_properties(a).trim; }

inline bool is_closed(const Automaton& a) { return classify_properties(a).closed; }

inline void require_trim(const Automaton& a, const char* op) {
  if (!is_trim(a)) throw Error(ErrorCode::not_trim, std::string(op) + " requires a trim automaton");
}

/// Induced sub-automaton on `keep`, with new start/accept sets given in the
/// old numbering. Declaration order is preserved.
inline Automaton induced(const Automaton& a, const std::vector<bool>& keep, const std::vector<StateId>& start,
                         const std::vector<StateId>& accept) {
  std::vector<StateId> renumber(a.num_states(), 0);
  std::vector<std::string> names;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (keep[q]) {
      renumber[q] = names.size();
      names.push_back(a.state_name(q));
    }
  }
  auto map_set = [&](const std::vector<StateId>& ids) {
    std::vector<StateId> out;
    for (StateId q : ids)
      if (keep[q]) out.push_back(renumber[q]);
    return out;
  };
  std::vector<Transition> transitions;
  for (const Transition& t : a.transitions())
    if (keep[t.from] && keep[t.to]) transitions.push_back({renumber[t.from], t.symbol, renumber[t.to]});
  return Automaton(a.base(), a.arity(), std::move(names), map_set(start), map_set(accept), std::move(transitions));
}

/// Same structure, different start and accept sets.
inline Automaton with_sets(const Automaton& a, std::vector<StateId> start, std::vector<StateId> accept) {
  return Automaton(a.base(), a.arity(), a.state_names(), std::move(start), std::move(accept),
                   {a.transitions().begin(), a.transitions().end()});
}

/// Removes every state that is unreachable or cannot reach an accepting
/// cycle. The accepted omega-language is unchanged.
inline Automaton trim(const Automaton& a) {
  const SccDecomposition scc = scc_decompose(a);
  const Adjacency adj = state_graph(a);
  std::vector<std::size_t> accepting_cycles;
  for (StateId q = 0; q < a.num_states(); ++q) {
    const std::size_t c = scc.component_of[q];
    if (a.is_accept(q) && scc.nontrivial[c]) accepting_cycles.push_back(q);
  }
  const auto live = reachable(reversed(adj), accepting_cycles);
  const auto from_start = reachable(adj, detail::to_indices(a.start()));
  std::vector<bool> keep(a.num_states());
  bool any_start = false;
  for (StateId q = 0; q < a.num_states(); ++q) {
    keep[q] = live[q] && from_start[q];
    if (keep[q] && a.is_start(q)) any_start = true;
  }
  if (!any_start) throw Error(ErrorCode::empty_language, "the automaton accepts no infinite word");
  return induced(a, keep, {a.start().begin(), a.start().end()}, {a.accept().begin(), a.accept().end()});
}

/// Every state made accepting. Only defined on trim automata.
inline Automaton closure(const Automaton& a) {
  require_trim(a, "closure");
  std::vector<StateId> all(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) all[q] = q;
  return with_sets(a, {a.start().begin(), a.start().end()}, std::move(all));
}

/// States in the strongly connected component of q; throws when q lies on
/// no cycle.
inline std::vector<bool> cycle_states(const Automaton& a, StateId q) {
  const SccDecomposition scc = scc_decompose(a);
  const std::size_t c = scc.component_of.at(q);
  if (!scc.nontrivial[c])
    throw Error(ErrorCode::acyclic_state, "state '" + a.state_name(q) + "' lies on no cycle");
  std::vector<bool> keep(a.num_states(), false);
  for (StateId p : scc.members[c]) keep[p] = true;
  return keep;
}

/// q as the only start and accept state, trimmed. Read as a finite
/// automaton it recognizes the cycle language of q.
inline Automaton cycle_automaton(const Automaton& a, StateId q) {
  return induced(a, cycle_states(a, q), {q}, {q});
}

/// The strongly connected component of q as a closed automaton started at q.
inline Automaton component_closure(const Automaton& a, StateId q) {
  const auto keep = cycle_states(a, q);
  std::vector<StateId> members;
  for (StateId p = 0; p < a.num_states(); ++p)
    if (keep[p]) members.push_back(p);
  return induced(a, keep, {q}, members);
}

namespace detail {

inline std::string pair_name(const Automaton& a, StateId q, Symbol s) {
  std::string name = "(" + a.state_name(q) + ",";
  const auto digits = a.alphabet().decode(s).digits();
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) name += ":";
    name += std::to_string(digits[i]);
  }
  return name + ")";
}

}  // namespace detail

/// Splits every state by its incoming symbol so that each ordered pair of
/// states carries at most one transition. The start state is paired with
/// the least symbol of the alphabet, the all-zero digit vector.
inline Automaton multigraph_to_digraph(const Automaton& a) {
  if (!is_deterministic(a))
    throw Error(ErrorCode::nondeterministic, "multigraph_to_digraph requires a deterministic automaton");
  const Symbol sigma0 = 0;
  std::map<std::pair<StateId, Symbol>, StateId> ids;
  std::vector<std::pair<StateId, Symbol>> order;
  std::vector<Transition> transitions;
  auto id_of = [&](StateId q, Symbol s) {
    auto [it, fresh] = ids.emplace(std::pair{q, s}, order.size());
    if (fresh) order.push_back({q, s});
    return it->second;
  };
  id_of(a.start().front(), sigma0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [q, tau] = order[i];
    for (const Transition& t : a.out(q)) transitions.push_back({i, t.symbol, id_of(t.to, t.symbol)});
  }
  std::vector<std::string> names;
  std::vector<StateId> accept;
  for (std::size_t i = 0; i < order.size(); ++i) {
    names.push_back(detail::pair_name(a, order[i].first, order[i].second));
    if (a.is_accept(order[i].first)) accept.push_back(i);
  }
  Automaton raw(a.base(), a.arity(), std::move(names), {0}, std::move(accept), std::move(transitions));
  return trim(raw);
}

/// Subset construction on the automaton read as a finite automaton with
/// every state accepting. The result is deterministic and recognizes the
/// prefix language; for a trim input it is closed.
inline Automaton determinize_prefixes(const Automaton& a) {
  std::map<std::vector<StateId>, StateId> ids;
  std::vector<std::vector<StateId>> subsets;
  auto id_of = [&](std::vector<StateId> set) {
    auto [it, fresh] = ids.emplace(set, subsets.size());
    if (fresh) subsets.push_back(std::move(set));
    return it->second;
  };
  id_of({a.start().begin(), a.start().end()});
  std::vector<Transition> transitions;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::map<Symbol, std::vector<StateId>> next;
    for (StateId q : subsets[i])
      for (const Transition& t : a.out(q)) next[t.symbol].push_back(t.to);
    for (auto& [symbol, targets] : next) {
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      transitions.push_back({i, symbol, id_of(std::move(targets))});
    }
  }
  std::vector<std::string> names;
  std::vector<StateId> all;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::string name = "{";
    for (std::size_t j = 0; j < subsets[i].size(); ++j) name += (j ? "," : "") + a.state_name(subsets[i][j]);
    names.push_back(name + "}");
    all.push_back(i);
  }
  return Automaton(a.base(), a.arity(), std::move(names), {0}, std::move(all), std::move(transitions));
}

struct AmbiguityResult {
  bool unambiguous = true;
  /// For ambiguous automata: a shortest word after which two runs of some
  /// doubly accepted word have already diverged.
  std::optional<Word> witness;
};

/// Decides unambiguity on the self-product. A product node (p, q, diverged)
/// tracks two runs on the same word; the automaton is ambiguous iff a
/// diverged node reaches a non-trivial product component in which both
/// runs visit accept states.
inline AmbiguityResult check_unambiguous(const Automaton& a) {
  if (is_deterministic(a)) return {};
  const std::size_t n = a.num_states();
  auto node = [n](StateId p, StateId q, bool div) { return (div ? n * n : 0) + p * n + q; };
  const std::size_t total = 2 * n * n;
  Adjacency adj(total);
  std::vector<bool> seen(total, false);
  std::vector<std::size_t> parent(total, static_cast<std::size_t>(-1));
  std::vector<Symbol> via(total, 0);
  std::deque<std::size_t> queue;
  std::vector<std::size_t> order;
  for (StateId s1 : a.start())
    for (StateId s2 : a.start()) {
      const std::size_t v = node(s1, s2, s1 != s2);
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    order.push_back(v);
    const bool div = v >= n * n;
    const StateId p = (v % (n * n)) / n, q = v % n;
    auto op = a.out(p), oq = a.out(q);
    std::size_t i = 0, j = 0;
    while (i < op.size() && j < oq.size()) {
      if (op[i].symbol < oq[j].symbol) {
        ++i;
      } else if (oq[j].symbol < op[i].symbol) {
        ++j;
      } else {
        const Symbol s = op[i].symbol;
        std::size_t i_end = i, j_end = j;
        while (i_end < op.size() && op[i_end].symbol == s) ++i_end;
        while (j_end < oq.size() && oq[j_end].symbol == s) ++j_end;
        for (std::size_t x = i; x < i_end; ++x)
          for (std::size_t y = j; y < j_end; ++y) {
            const StateId p2 = op[x].to, q2 = oq[y].to;
            const std::size_t w = node(p2, q2, div || p2 != q2);
            adj[v].push_back(w);
            if (!seen[w]) {
              seen[w] = true;
              parent[w] = v;
              via[w] = s;
              queue.push_back(w);
            }
          }
        i = i_end;
        j = j_end;
      }
    }
  }

  const Components comps = strongly_connected(adj);
  std::vector<bool> nontrivial(comps.count, false), left_acc(comps.count, false), right_acc(comps.count, false);
  for (std::size_t v : order) {
    const std::size_t c = comps.component_of[v];
    for (std::size_t w : adj[v])
      if (comps.component_of[w] == c) nontrivial[c] = true;
    const StateId p = (v % (n * n)) / n, q = v % n;
    if (a.is_accept(p)) left_acc[c] = true;
    if (a.is_accept(q)) right_acc[c] = true;
  }
  std::vector<std::size_t> good;
  for (std::size_t v : order) {
    const std::size_t c = comps.component_of[v];
    if (v >= n * n && nontrivial[c] && left_acc[c] && right_acc[c]) good.push_back(v);
  }
  if (good.empty()) return {};
  const auto can_reach_good = reachable(reversed(adj), good);
  for (std::size_t v : order) {
    if (v < n * n || !can_reach_good[v]) continue;
    // BFS order: the first diverged node found is at minimal depth, and its
    // parent is not diverged (or it is a start node).
    Word word;
    for (std::size_t u = v; parent[u] != static_cast<std::size_t>(-1); u = parent[u]) word.push_back(via[u]);
    std::reverse(word.begin(), word.end());
    return {false, std::move(word)};
  }
  return {};
}

/// Disjoint union; state names are prefixed to keep them distinct.
inline Automaton disjoint_union(const Automaton& a, const Automaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw Error(ErrorCode::semantic, "union of automata over different alphabets");
  std::vector<std::string> names;
  for (const auto& s : a.state_names()) names.push_back("a." + s);
  for (const auto& s : b.state_names()) names.push_back("b." + s);
  const std::size_t off = a.num_states();
  std::vector<StateId> start(a.start().begin(), a.start().end()), accept(a.accept().begin(), a.accept().end());
  for (StateId q : b.start()) start.push_back(q + off);
  for (StateId q : b.accept()) accept.push_back(q + off);
  std::vector<Transition> transitions(a.transitions().begin(), a.transitions().end());
  for (const Transition& t : b.transitions()) transitions.push_back({t.from + off, t.symbol, t.to + off});
  return Automaton(a.base(), a.arity(), std::move(names), std::move(start), std::move(accept), std::move(transitions));
}

/// Prepends a fresh start state that reads `symbol` into every old start
/// state, so every accepted word gains that one-symbol prefix.
inline Automaton prefix_with_symbol(const Automaton& a, Symbol symbol) {
  std::string fresh = "pre";
  while (a.find_state(fresh)) fresh += "'";
  std::vector<std::string> names = a.state_names();
  names.push_back(fresh);
  const StateId p = a.num_states();
  std::vector<Transition> transitions(a.transitions().begin(), a.transitions().end());
  for (StateId s : a.start()) transitions.push_back({p, symbol, s});
  return Automaton(a.base(), a.arity(), std::move(names), {p}, {a.accept().begin(), a.accept().end()},
                   std::move(transitions));
}

inline bool is_strongly_connected(const Automaton& a) {
  const SccDecomposition scc = scc_decompose(a);
  return scc.size() == 1 && scc.nontrivial[0];
}

}  // namespace omegafract
