#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "omegafract/automaton.hpp"
#include "omegafract/error.hpp"

namespace omegafract {

namespace detail {

inline std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] inline void semantic(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::semantic, field + ": " + what);
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) semantic(key, "missing field");
  return *it;
}

inline std::uint64_t require_uint(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < 0))
    semantic(field, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

inline StateId lookup_state(const std::unordered_map<std::string, StateId>& index,
                            const nlohmann::json& v, const std::string& field) {
  if (!v.is_string()) semantic(field, "expected a state identifier string");
  auto it = index.find(v.get<std::string>());
  if (it == index.end()) semantic(field, "unknown state '" + v.get<std::string>() + "'");
  return it->second;
}

}  // namespace detail

/// Parses the automaton JSON document. Syntax errors carry line/column,
/// semantic errors carry the offending field path.
inline Automaton parse_automaton(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::syntax, "malformed JSON at " + detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) detail::semantic("$", "document must be a JSON object");

  const auto base = detail::require_uint(detail::require(doc, "base"), "base");
  const auto arity = detail::require_uint(detail::require(doc, "arity"), "arity");
  if (base < 2) detail::semantic("base", "must be at least 2");
  if (arity < 1) detail::semantic("arity", "must be at least 1");
  if (base > 1u << 24 || arity > 24) detail::semantic("base", "alphabet too large");

  const auto& states_json = detail::require(doc, "states");
  if (!states_json.is_array()) detail::semantic("states", "expected an array");
  std::vector<std::string> states;
  std::unordered_map<std::string, StateId> index;
  for (std::size_t i = 0; i < states_json.size(); ++i) {
    const std::string field = "states[" + std::to_string(i) + "]";
    if (!states_json[i].is_string()) detail::semantic(field, "expected a string");
    auto name = states_json[i].get<std::string>();
    if (!index.emplace(name, i).second) detail::semantic(field, "duplicate state '" + name + "'");
    states.push_back(std::move(name));
  }

  auto read_set = [&](const char* key) {
    const auto& arr = detail::require(doc, key);
    if (!arr.is_array()) detail::semantic(key, "expected an array");
    std::vector<StateId> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
      out.push_back(detail::lookup_state(index, arr[i], std::string(key) + "[" + std::to_string(i) + "]"));
    return out;
  };
  auto start = read_set("start");
  auto accept = read_set("accept");
  if (start.empty()) detail::semantic("start", "start set must be nonempty");

  Alphabet alphabet(static_cast<unsigned>(base), static_cast<unsigned>(arity));
  const auto& trans_json = detail::require(doc, "transitions");
  if (!trans_json.is_array()) detail::semantic("transitions", "expected an array");
  std::vector<Transition> transitions;
  for (std::size_t i = 0; i < trans_json.size(); ++i) {
    const std::string field = "transitions[" + std::to_string(i) + "]";
    const auto& t = trans_json[i];
    if (!t.is_object()) detail::semantic(field, "expected an object");
    auto from = detail::lookup_state(index, detail::require(t, "from"), field + ".from");
    auto to = detail::lookup_state(index, detail::require(t, "to"), field + ".to");
    const auto& sym = detail::require(t, "symbol");
    if (!sym.is_array() || sym.size() != arity)
      detail::semantic(field + ".symbol", "expected an array of " + std::to_string(arity) + " digits");
    std::vector<unsigned> digits;
    for (std::size_t j = 0; j < sym.size(); ++j) {
      const std::string dfield = field + ".symbol[" + std::to_string(j) + "]";
      auto digit = detail::require_uint(sym[j], dfield);
      if (digit >= base)
        detail::semantic(dfield, "digit " + std::to_string(digit) + " out of range for base " + std::to_string(base));
      digits.push_back(static_cast<unsigned>(digit));
    }
    transitions.push_back({from, alphabet.encode(DigitVector(std::move(digits))), to});
  }
  auto seen = transitions;
  std::sort(seen.begin(), seen.end());
  if (auto dup = std::adjacent_find(seen.begin(), seen.end()); dup != seen.end())
    detail::semantic("transitions", "duplicate transition " + states[dup->from] + " -> " + states[dup->to]);

  return Automaton(static_cast<unsigned>(base), static_cast<unsigned>(arity), std::move(states), std::move(start),
                   std::move(accept), std::move(transitions));
}

inline Automaton load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::file_not_found, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_automaton(buffer.str());
}

/// Canonical form: states in declaration order, transitions sorted by
/// (from, symbol, to).
inline nlohmann::ordered_json to_json(const Automaton& a) {
  nlohmann::ordered_json doc;
  doc["base"] = a.base();
  doc["arity"] = a.arity();
  doc["states"] = a.state_names();
  auto names = [&](std::span<const StateId> ids) {
    auto arr = nlohmann::ordered_json::array();
    for (StateId q : ids) arr.push_back(a.state_name(q));
    return arr;
  };
  doc["start"] = names(a.start());
  doc["accept"] = names(a.accept());
  auto trans = nlohmann::ordered_json::array();
  for (const Transition& t : a.transitions()) {
    nlohmann::ordered_json entry;
    entry["from"] = a.state_name(t.from);
    entry["symbol"] = a.alphabet().decode(t.symbol).digits();
    entry["to"] = a.state_name(t.to);
    trans.push_back(std::move(entry));
  }
  doc["transitions"] = std::move(trans);
  return doc;
}

inline std::string serialize(const Automaton& a) { return to_json(a).dump(); }

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
inline std::string canonical_hash(const Automaton& a) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize(a)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace omegafract
