#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "omegafract/omegafract.hpp"

namespace omegafract {

struct AnalysisConfig {
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  double spectral_tolerance = 1e-12;
  double report_tolerance = kReportTolerance;
  std::pair<std::size_t, std::size_t> oracle_depths{4, 12};
  std::size_t depth = 4;
  RenderFormat format = RenderFormat::interval_list;
  bool pretty = false;
};

/// Looks up an environment variable; nullopt when unset.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

inline std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json number_or_inf(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

inline ordered_json big_json(const BigInt& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  return v.str();
}

inline ordered_json word_json(const Alphabet& alphabet, const Word& w) {
  auto arr = ordered_json::array();
  for (Symbol s : w) arr.push_back(alphabet.decode(s).digits());
  return arr;
}

inline ordered_json config_json(const AnalysisConfig& c) {
  ordered_json j;
  j["enumeration_cap"] = c.enumeration_cap;
  j["spectral_tolerance"] = c.spectral_tolerance;
  j["report_tolerance"] = c.report_tolerance;
  j["oracle_depths"] = {c.oracle_depths.first, c.oracle_depths.second};
  return j;
}

inline std::uint64_t parse_uint(const std::string& text, const std::string& source) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text[0] == '-')
    throw Error(ErrorCode::usage, source + ": expected a nonnegative integer, got '" + text + "'");
  return v;
}

inline std::uint64_t parse_cap(const std::string& text, const std::string& source) {
  const auto v = parse_uint(text, source);
  if (v == 0) throw Error(ErrorCode::usage, source + ": the cap must be positive");
  return v;
}

inline double parse_tol(const std::string& text, const std::string& source) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !(v > 0) || !std::isfinite(v))
    throw Error(ErrorCode::usage, source + ": expected a positive number, got '" + text + "'");
  return v;
}

inline std::pair<std::size_t, std::size_t> parse_depths(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::usage, "--depths: expected a,b");
  const auto lo = parse_uint(text.substr(0, comma), "--depths");
  const auto hi = parse_uint(text.substr(comma + 1), "--depths");
  if (lo >= hi) throw Error(ErrorCode::usage, "--depths: need a < b");
  return {lo, hi};
}

/// Largest depth <= wanted whose enumeration stays within the cap.
inline std::size_t affordable_depth(const Automaton& a, std::size_t wanted, std::uint64_t cap) {
  std::size_t n = 0;
  std::uint64_t total = 1;
  while (n < wanted && total <= cap / a.alphabet().size()) {
    total *= a.alphabet().size();
    ++n;
  }
  return n;
}

inline ordered_json check_report(const Automaton& a) {
  const PropertyFlags f = classify_properties(a);
  ordered_json r;
  r["deterministic"] = f.deterministic;
  r["finite_trim"] = f.finite_trim;
  r["trim"] = f.trim;
  r["closed"] = f.closed;
  r["weak"] = f.weak;
  const AmbiguityResult amb = check_unambiguous(a);
  r["unambiguous"] = amb.unambiguous;
  r["ambiguity_witness"] = amb.witness ? word_json(a.alphabet(), *amb.witness) : ordered_json(nullptr);
  return r;
}

inline ordered_json entropy_report(const Automaton& a, const AnalysisConfig& c) {
  const double log_k = std::log(static_cast<double>(a.base()));
  const double h = entropy(a);
  ordered_json r;
  r["entropy"] = h;
  r["entropy_base_k"] = h / log_k;
  const std::size_t n = affordable_depth(a, c.oracle_depths.second, c.enumeration_cap);
  if (n == 0) throw Error(ErrorCode::cap_exceeded, "enumeration cap admits no positive depth");
  const double estimate = entropy_estimate(a, n, c.enumeration_cap);
  r["estimate"] = {{"depth", n}, {"entropy", estimate}, {"difference", std::abs(estimate - h)}};
  auto growth = ordered_json::array();
  for (const BigInt& v : prefix_growth(a, n)) growth.push_back(big_json(v));
  r["prefix_growth"] = std::move(growth);
  return r;
}

inline ordered_json dim_report(const Automaton& a, const AnalysisConfig& c) {
  const double log_k = std::log(static_cast<double>(a.base()));
  const DimensionReport d = dimension_report(a, c.report_tolerance);
  const GapResult g = dimension_gap(a, c.report_tolerance);
  auto name = [&](const std::optional<StateId>& q) { return q ? ordered_json(a.state_name(*q)) : ordered_json(nullptr); };
  ordered_json r;
  r["hausdorff"] = d.hausdorff;
  r["box"] = d.box;
  ordered_json per_state = ordered_json::object();
  for (const auto& [q, h] : d.per_state)
    per_state[a.state_name(q)] = {{"entropy", h}, {"entropy_base_k", h / log_k}};
  r["per_state"] = std::move(per_state);
  r["hausdorff_witness"] = name(d.hausdorff_witness);
  r["box_witness"] = name(d.box_witness);
  r["gap"] = d.gap;
  r["gap_witness"] = name(g.witness);
  if (is_closed(a)) r["closed_dimension"] = closed_dimension(a);

  const SccDecomposition scc = scc_decompose(a);
  ordered_json mw = ordered_json::object();
  for (std::size_t comp = 0; comp < scc.size(); ++comp) {
    if (!scc.nontrivial[comp]) continue;
    const StateId q = scc.members[comp].front();
    mw[a.state_name(q)] = mw_alpha(component_closure(a, q));
  }
  r["mw_alpha"] = std::move(mw);

  if (a.arity() == 1) {
    const DensityReport den = density_classifier(a);
    ordered_json j;
    j["somewhere_dense"] = den.somewhere_dense;
    if (den.dense_prefix) {
      const auto bounds = box_bounds(nu_k(a.alphabet(), *den.dense_prefix), a.base());
      j["dense_interval"] = {rational_text(bounds[0].first), rational_text(bounds[0].second)};
      j["codense"] = *den.codense;
    } else {
      j["dense_interval"] = nullptr;
      j["codense"] = nullptr;
    }
    r["density"] = std::move(j);
  } else {
    r["density"] = nullptr;
  }
  return r;
}

inline ordered_json measure_report(const Automaton& a, const AnalysisConfig& c) {
  const MeasureReport m = hausdorff_measure(a, c.report_tolerance);
  ordered_json r;
  r["alpha"] = m.alpha;
  ordered_json per = ordered_json::object();
  for (const auto& [q, cm] : m.per_key_state)
    per[a.state_name(q)] = {{"scc_measure", number_or_inf(cm.scc_measure)},
                            {"prefix_series", number_or_inf(cm.prefix_series)},
                            {"component_measure", number_or_inf(cm.component_measure)}};
  r["per_key_state"] = std::move(per);
  r["total"] = number_or_inf(m.total);
  r["max_component_dimension"] = m.max_component_dimension;
  r["dimension_consistent"] = std::abs(m.max_component_dimension - m.alpha) <= c.report_tolerance;
  r["warnings"] = m.warnings;
  return r;
}

inline ordered_json raster_report(const Automaton& a, const AnalysisConfig& c) {
  ordered_json r;
  r["depth"] = c.depth;
  r["format"] = c.format == RenderFormat::interval_list ? "interval" : "pbm";
  r["document"] = render(a, c.depth, c.format, c.enumeration_cap);
  return r;
}

inline ordered_json oracle_report(const Automaton& a, const AnalysisConfig& c) {
  const auto [lo, hi] = c.oracle_depths;
  check_enumeration_cap(a, hi, c.enumeration_cap);
  const GrowthSequence growth = prefix_growth(a, hi);
  auto table = ordered_json::array();
  for (std::size_t n = lo; n <= hi; ++n)
    table.push_back({{"depth", n}, {"box_count", box_count_oracle(a, n, c.enumeration_cap)},
                     {"prefix_growth", big_json(growth[n])}});
  const double estimate = estimate_box_dimension(a, lo, hi, c.enumeration_cap);
  const double analytic = box_dimension(a);
  ordered_json r;
  r["table"] = std::move(table);
  r["estimate"] = estimate;
  r["box_dimension"] = analytic;
  r["difference"] = std::abs(estimate - analytic);
  return r;
}

inline void emit(std::ostream& out, const ordered_json& doc, bool pretty) {
  out << (pretty ? doc.dump(2) : doc.dump()) << '\n';
}

inline int exit_code(ErrorCode code) {
  if (code == ErrorCode::usage) return 64;
  return is_input_error(code) ? 1 : 2;
}

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name. Every
/// outcome, including errors, is a single JSON object on `out`; help text
/// goes to `out` as plain text.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const EnvLookup& env = process_env) {
  CLI::App app{"Entropy, dimension and measure of automatic sets", "omegafract"};
  app.require_subcommand(1);
  std::string file, depths_text, format_text = "interval", tol_text, cap_text;
  std::size_t depth = 4;
  bool pretty = false;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"check", "structural properties and ambiguity"},
      {"entropy", "entropy of the prefix language"},
      {"dim", "Hausdorff and box-counting dimension"},
      {"measure", "Hausdorff measure in the critical dimension"},
      {"raster", "render the depth-n box cover"},
      {"oracle", "brute-force box counts and dimension estimate"},
  };
  std::vector<CLI::Option*> cap_opts, tol_opts, depths_opts;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "automaton JSON document")->required();
    sub->add_option("--depth", depth, "rendering depth");
    depths_opts.push_back(sub->add_option("--depths", depths_text, "oracle depth range a,b"));
    sub->add_option("--format", format_text, "interval or pbm")->check(CLI::IsMember({"interval", "pbm"}));
    sub->add_flag("--pretty", pretty, "indented JSON");
    cap_opts.push_back(sub->add_option("--cap", cap_text, "enumeration cap"));
    tol_opts.push_back(sub->add_option("--tol", tol_text, "report tolerance"));
  }

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  std::string command;
  try {
    app.parse(reversed_args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    nlohmann::ordered_json doc;
    doc["error"] = {{"code", std::string(error_name(ErrorCode::usage))}, {"message", e.what()}};
    detail::emit(out, doc, false);
    err << e.what() << '\n';
    return 64;
  }
  command = app.get_subcommands().front()->get_name();
  auto given = [](const std::vector<CLI::Option*>& opts) {
    for (auto* o : opts)
      if (o->count() > 0) return true;
    return false;
  };

  AnalysisConfig config;
  config.pretty = pretty;
  nlohmann::ordered_json doc;
  doc["command"] = command;
  try {
    if (given(cap_opts))
      config.enumeration_cap = detail::parse_cap(cap_text, "--cap");
    else if (auto v = env("OMEGAFRACT_CAP"))
      config.enumeration_cap = detail::parse_cap(*v, "OMEGAFRACT_CAP");
    if (given(tol_opts))
      config.report_tolerance = detail::parse_tol(tol_text, "--tol");
    else if (auto v = env("OMEGAFRACT_TOL"))
      config.report_tolerance = detail::parse_tol(*v, "OMEGAFRACT_TOL");
    if (config.report_tolerance < config.spectral_tolerance)
      throw Error(ErrorCode::usage, "report tolerance must be at least the spectral tolerance 1e-12");
    if (given(depths_opts)) config.oracle_depths = detail::parse_depths(depths_text);
    config.depth = depth;
    config.format = format_text == "pbm" ? RenderFormat::bitmap : RenderFormat::interval_list;
    doc["config"] = detail::config_json(config);

    const Automaton a = load_automaton(file);
    doc["automaton"] = {{"hash", canonical_hash(a)},
                        {"base", a.base()},
                        {"arity", a.arity()},
                        {"states", a.num_states()}};
    if (config.enumeration_cap < a.alphabet().size())
      throw Error(ErrorCode::usage, "enumeration cap must admit depth 1 (at least k^d strings)");

    if (command == "check")
      doc["result"] = detail::check_report(a);
    else if (command == "entropy")
      doc["result"] = detail::entropy_report(a, config);
    else if (command == "dim")
      doc["result"] = detail::dim_report(a, config);
    else if (command == "measure")
      doc["result"] = detail::measure_report(a, config);
    else if (command == "raster")
      doc["result"] = detail::raster_report(a, config);
    else
      doc["result"] = detail::oracle_report(a, config);
  } catch (const Error& e) {
    doc.erase("result");
    doc["error"] = {{"code", std::string(e.name())}, {"message", e.what()}};
    detail::emit(out, doc, config.pretty);
    err << e.name() << ": " << e.what() << '\n';
    return detail::exit_code(e.code());
  }
  detail::emit(out, doc, config.pretty);
  return 0;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace omegafract
