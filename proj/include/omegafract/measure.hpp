#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "omegafract/automaton.hpp"
#include "omegafract/dimension.hpp"
#include "omegafract/error.hpp"
#include "omegafract/graph.hpp"
#include "omegafract/matrix.hpp"
#include "omegafract/spectral.hpp"
#include "omegafract/structure.hpp"

namespace omegafract {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct SccMeasure {
  double value = 0;
  double radius = 0;
  /// Set when alpha is not the critical exponent of the component.
  std::optional<std::string> warning;
};

/// Hausdorff alpha-measure of the closed set recognized by a strongly
/// connected deterministic automaton, read off the Perron eigenvector of
/// k^-alpha times its counting matrix.
inline SccMeasure scc_measure_detail(const Automaton& a, double alpha, double tolerance = kReportTolerance) {
  if (!is_strongly_connected(a))
    throw Error(ErrorCode::not_strongly_connected, "scc_measure requires a strongly connected automaton");
  if (!is_deterministic(a)) throw Error(ErrorCode::nondeterministic, "scc_measure requires a deterministic automaton");
  WeightedMatrix m = counting_matrix(a).cast<double>();
  const double scale = std::pow(static_cast<double>(a.base()), -alpha);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m(i, j) *= scale;
  SccMeasure r;
  r.radius = spectral_radius(m);
  if (std::abs(r.radius - 1) > tolerance) {
    r.value = r.radius < 1 ? 0.0 : kInfinity;
    r.warning = "spectral radius " + std::to_string(r.radius) + " differs from 1 at alpha " + std::to_string(alpha);
    return r;
  }
  r.value = perron_vector(m, r.radius)[a.start().front()];
  return r;
}

inline double scc_measure(const Automaton& a, double alpha) { return scc_measure_detail(a, alpha).value; }

namespace detail {

/// The transient part below the component of q: states outside it, plus a
/// target entered by transitions into q itself.
struct KeyPrefixGraph {
  std::vector<StateId> states;   // useful transient states
  CountMatrix inner;             // counts among `states`
  std::vector<std::uint64_t> to_target;
  std::vector<bool> is_start;
  bool empty_word = false;       // q itself is a start state
  bool nonempty = false;
};

inline void require_key_candidate(const Automaton& a, StateId q, const SccDecomposition& scc) {
  if (q >= a.num_states()) throw Error(ErrorCode::invalid_state, "state index out of range");
  const std::size_t c = scc.component_of[q];
  if (!scc.nontrivial[c] || !scc.contains_accept[c])
    throw Error(ErrorCode::invalid_state,
                "state '" + a.state_name(q) + "' is not in a cyclic component containing an accept state");
}

inline KeyPrefixGraph key_prefix_graph(const Automaton& a, StateId q, const SccDecomposition& scc) {
  const std::size_t c = scc.component_of[q];
  const std::size_t n = a.num_states();
  auto outside = [&](StateId p) { return scc.component_of[p] != c; };

  Adjacency fwd(n);
  std::vector<bool> enters(n, false);
  for (const Transition& t : a.transitions()) {
    if (!outside(t.from)) continue;
    if (outside(t.to))
      fwd[t.from].push_back(t.to);
    else if (t.to == q)
      enters[t.from] = true;
  }
  std::vector<std::size_t> starts, entries;
  KeyPrefixGraph g;
  for (StateId s : a.start()) {
    if (s == q) g.empty_word = true;
    if (outside(s)) starts.push_back(s);
  }
  for (StateId p = 0; p < n; ++p)
    if (enters[p]) entries.push_back(p);
  const auto from_start = reachable(fwd, starts);
  const auto to_target = reachable(reversed(fwd), entries);

  std::vector<std::size_t> index(n, 0);
  for (StateId p = 0; p < n; ++p) {
    if (outside(p) && from_start[p] && to_target[p]) {
      index[p] = g.states.size();
      g.states.push_back(p);
    }
  }
  const std::size_t m = g.states.size();
  g.inner = CountMatrix(m);
  g.to_target.assign(m, 0);
  g.is_start.assign(m, false);
  std::vector<bool> useful(n, false);
  for (StateId p : g.states) useful[p] = true;
  for (const Transition& t : a.transitions()) {
    if (!useful[t.from]) continue;
    if (useful[t.to])
      ++g.inner(index[t.from], index[t.to]);
    else if (t.to == q)
      ++g.to_target[index[t.from]];
  }
  for (std::size_t s : starts)
    if (useful[s]) g.is_start[index[s]] = true;
  g.nonempty = g.empty_word || m > 0;
  return g;
}

inline void require_unambiguous(const Automaton& a) {
  if (!check_unambiguous(a).unambiguous)
    throw Error(ErrorCode::ambiguous, "some accepted word has two accepting runs");
}

/// Sum over key prefixes u of k^(-alpha |u|); nullopt when there are none.
inline std::optional<double> series_value(const Automaton& a, const KeyPrefixGraph& g, double alpha) {
  if (!g.nonempty) return std::nullopt;
  const std::size_t m = g.states.size();
  const double n0 = g.empty_word ? 1.0 : 0.0;
  if (m == 0) return n0;
  const double rho = spectral_radius(g.inner);
  const double scale = std::pow(static_cast<double>(a.base()), alpha);
  if (rho >= scale - 1e-12) return kInfinity;
  const double f = 1.0 / scale;
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    rhs(static_cast<Eigen::Index>(i)) = static_cast<double>(g.to_target[i]);
    for (std::size_t j = 0; j < m; ++j)
      lhs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -= f * static_cast<double>(g.inner(i, j));
  }
  const Eigen::VectorXd y = lhs.partialPivLu().solve(rhs);
  double s = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (g.is_start[i]) s += y(static_cast<Eigen::Index>(i));
  return n0 + f * s;
}

}  // namespace detail

/// Sum of k^(-alpha |u|) over the key prefixes u of q: words leading from a
/// start state into the component of q, arriving at q, without having
/// entered that component before.
inline double key_prefix_series(const Automaton& a, StateId q, double alpha) {
  require_trim(a, "key_prefix_series");
  const SccDecomposition scc = scc_decompose(a);
  detail::require_key_candidate(a, q, scc);
  detail::require_unambiguous(a);
  const auto g = detail::key_prefix_graph(a, q, scc);
  const auto s = detail::series_value(a, g, alpha);
  if (!s) throw Error(ErrorCode::unreachable_state, "state '" + a.state_name(q) + "' is never a key state");
  return *s;
}

/// Exact number of key prefixes of q of each length 0..depth.
inline std::vector<BigInt> key_prefix_counts(const Automaton& a, StateId q, std::size_t depth) {
  const SccDecomposition scc = scc_decompose(a);
  detail::require_key_candidate(a, q, scc);
  const auto g = detail::key_prefix_graph(a, q, scc);
  const std::size_t m = g.states.size();
  std::vector<BigInt> counts{g.empty_word ? 1 : 0};
  std::vector<BigInt> at(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (g.is_start[i]) at[i] = 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    BigInt hit = 0;
    std::vector<BigInt> next(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (at[i] == 0) continue;
      hit += at[i] * g.to_target[i];
      for (std::size_t j = 0; j < m; ++j)
        if (g.inner(i, j)) next[j] += at[i] * g.inner(i, j);
    }
    counts.push_back(hit);
    at = std::move(next);
  }
  return counts;
}

struct ComponentMeasure {
  double scc_measure = 0;
  double prefix_series = 0;
  double component_measure = 0;
};

struct MeasureReport {
  double alpha = 0;
  std::map<StateId, ComponentMeasure> per_key_state;
  double total = 0;
  /// Largest Hausdorff dimension among the components with key prefixes.
  double max_component_dimension = 0;
  std::vector<std::string> warnings;
};

inline double multiply_measure(double series, double m) {
  if (m == 0 || series == 0) return 0;
  return series * m;
}

namespace detail {

inline double closed_measure(const Automaton& a, double alpha, double tolerance, std::vector<std::string>& warnings,
                             int depth = 0);

/// Components of an unambiguous trim automaton at exponent alpha.
inline MeasureReport measure_at(const Automaton& a, double alpha, double tolerance,
                                std::vector<std::string>& warnings, int depth = 0) {
  const SccDecomposition scc = scc_decompose(a);
  MeasureReport r;
  r.alpha = alpha;
  double max_h = 0;
  for (StateId q = 0; q < a.num_states(); ++q) {
    const std::size_t c = scc.component_of[q];
    if (!scc.nontrivial[c] || !scc.contains_accept[c]) continue;
    const auto g = key_prefix_graph(a, q, scc);
    const auto series = series_value(a, g, alpha);
    if (!series) continue;
    for (StateId p : scc.members[c])
      if (a.is_accept(p)) max_h = std::max(max_h, cycle_entropy(a, p));
    ComponentMeasure cm;
    cm.prefix_series = *series;
    if (cm.prefix_series != 0) cm.scc_measure = closed_measure(component_closure(a, q), alpha, tolerance, warnings, depth + 1);
    cm.component_measure = multiply_measure(cm.prefix_series, cm.scc_measure);
    r.per_key_state[q] = cm;
    r.total += cm.component_measure;
  }
  r.max_component_dimension = max_h / std::log(static_cast<double>(a.base()));
  return r;
}

/// Measure of the set recognized by a closed automaton.
inline double closed_measure(const Automaton& a, double alpha, double tolerance, std::vector<std::string>& warnings,
                             int depth) {
  if (is_deterministic(a) && is_strongly_connected(a)) {
    auto m = scc_measure_detail(a, alpha, tolerance);
    if (m.warning) warnings.push_back(*m.warning);
    return m.value;
  }
  if (depth > 4) throw Error(ErrorCode::nondeterministic, "measure recursion did not reach deterministic components");
  return measure_at(determinize_prefixes(a), alpha, tolerance, warnings, depth).total;
}

}  // namespace detail

/// Hausdorff measure in the critical dimension, summed over key states.
inline MeasureReport hausdorff_measure(const Automaton& a, double tolerance = kReportTolerance) {
  require_trim(a, "hausdorff_measure");
  detail::require_unambiguous(a);
  const double alpha = hausdorff_dimension(a);
  std::vector<std::string> warnings;
  MeasureReport r = detail::measure_at(a, alpha, tolerance, warnings);
  r.warnings = std::move(warnings);
  return r;
}

}  // namespace omegafract
