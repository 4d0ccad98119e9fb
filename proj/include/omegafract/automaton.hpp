#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "omegafract/error.hpp"

namespace omegafract {

using StateId = std::size_t;

/// Index of a digit vector in [k]^d. The first coordinate is the most
/// significant digit, so symbol order is lexicographic digit-vector order.
using Symbol = std::uint32_t;

/// A finite string over [k]^d.
using Word = std::vector<Symbol>;

/// Largest supported alphabet, k^d.
inline constexpr std::uint64_t kMaxAlphabetSize = std::uint64_t{1} << 24;

class DigitVector {
 public:
  DigitVector() = default;
  explicit DigitVector(std::vector<unsigned> digits) : digits_(std::move(digits)) {}

  std::size_t arity() const noexcept { return digits_.size(); }
  unsigned operator[](std::size_t i) const { return digits_[i]; }
  const std::vector<unsigned>& digits() const noexcept { return digits_; }

  auto operator<=>(const DigitVector&) const = default;

 private:
  std::vector<unsigned> digits_;
};

/// The digit-vector alphabet [k]^d.
class Alphabet {
 public:
  Alphabet(unsigned base, unsigned arity) : base_(base), arity_(arity) {
    if (base < 2) throw Error(ErrorCode::semantic, "base must be at least 2");
    if (arity < 1) throw Error(ErrorCode::semantic, "arity must be at least 1");
    std::uint64_t size = 1;
    for (unsigned i = 0; i < arity; ++i) {
      size *= base;
      if (size > kMaxAlphabetSize)
        throw Error(ErrorCode::semantic, "alphabet k^d exceeds 2^24 symbols");
    }
    size_ = static_cast<Symbol>(size);
  }

  unsigned base() const noexcept { return base_; }
  unsigned arity() const noexcept { return arity_; }
  Symbol size() const noexcept { return size_; }

  Symbol encode(const DigitVector& v) const {
    if (v.arity() != arity_)
      throw Error(ErrorCode::digit_range, "digit vector has arity " + std::to_string(v.arity()) +
                                              ", expected " + std::to_string(arity_));
    Symbol s = 0;
    for (unsigned digit : v.digits()) {
      if (digit >= base_)
        throw Error(ErrorCode::digit_range, "digit " + std::to_string(digit) +
                                                " out of range for base " + std::to_string(base_));
      s = s * base_ + digit;
    }
    return s;
  }

  DigitVector decode(Symbol s) const {
    std::vector<unsigned> digits(arity_);
    for (unsigned i = arity_; i-- > 0;) {
      digits[i] = s % base_;
      s /= base_;
    }
    return DigitVector(std::move(digits));
  }

  /// Digit of coordinate `coord` in symbol `s`.
  unsigned digit(Symbol s, unsigned coord) const {
    for (unsigned i = arity_ - 1; i > coord; --i) s /= base_;
    return s % base_;
  }

  bool operator==(const Alphabet&) const = default;

 private:
  unsigned base_;
  unsigned arity_;
  Symbol size_ = 0;
};

struct Transition {
  StateId from;
  Symbol symbol;
  StateId to;

  auto operator<=>(const Transition&) const = default;
};

/// A finite automaton over [k]^d, read with either finite-word or Büchi
/// acceptance. Immutable once constructed; the constructor enforces
/// every structural invariant and keeps transitions sorted by
/// (from, symbol, to), so the out-edges of a state are contiguous.
class Automaton {
 public:
  Automaton(unsigned base, unsigned arity, std::vector<std::string> states,
            std::vector<StateId> start, std::vector<StateId> accept,
            std::vector<Transition> transitions)
      : alphabet_(base, arity),
        names_(std::move(states)),
        start_(std::move(start)),
        accept_(std::move(accept)),
        transitions_(std::move(transitions)) {
    const std::size_t n = names_.size();
    for (StateId i = 0; i < n; ++i) {
      if (!index_.emplace(names_[i], i).second)
        throw Error(ErrorCode::semantic, "duplicate state '" + names_[i] + "'");
    }
    normalize_set(start_, "start");
    normalize_set(accept_, "accept");
    if (start_.empty()) throw Error(ErrorCode::semantic, "start set is empty");

    for (const Transition& t : transitions_) {
      if (t.from >= n || t.to >= n)
        throw Error(ErrorCode::semantic, "transition endpoint is not a declared state");
      if (t.symbol >= alphabet_.size())
        throw Error(ErrorCode::digit_range, "transition symbol out of range");
    }
    std::sort(transitions_.begin(), transitions_.end());
    auto dup = std::adjacent_find(transitions_.begin(), transitions_.end());
    if (dup != transitions_.end())
      throw Error(ErrorCode::semantic, "duplicate transition " + names_[dup->from] + " -> " +
                                           names_[dup->to]);

    is_accept_.assign(n, false);
    for (StateId q : accept_) is_accept_[q] = true;
    offsets_.assign(n + 1, 0);
    for (const Transition& t : transitions_) ++offsets_[t.from + 1];
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  unsigned base() const noexcept { return alphabet_.base(); }
  unsigned arity() const noexcept { return alphabet_.arity(); }

  std::size_t num_states() const noexcept { return names_.size(); }
  const std::string& state_name(StateId q) const { return names_.at(q); }
  const std::vector<std::string>& state_names() const noexcept { return names_; }

  std::optional<StateId> find_state(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  StateId state(const std::string& name) const {
    auto q = find_state(name);
    if (!q) throw Error(ErrorCode::invalid_state, "unknown state '" + name + "'");
    return *q;
  }

  std::span<const StateId> start() const noexcept { return start_; }
  std::span<const StateId> accept() const noexcept { return accept_; }
  bool is_start(StateId q) const { return std::binary_search(start_.begin(), start_.end(), q); }
  bool is_accept(StateId q) const { return is_accept_.at(q); }

  std::span<const Transition> transitions() const noexcept { return transitions_; }

  /// Out-edges of q, sorted by (symbol, to).
  std::span<const Transition> out(StateId q) const {
    return std::span<const Transition>(transitions_).subspan(offsets_[q], offsets_[q + 1] - offsets_[q]);
  }

  bool operator==(const Automaton& other) const {
    return alphabet_ == other.alphabet_ && names_ == other.names_ && start_ == other.start_ &&
           accept_ == other.accept_ && transitions_ == other.transitions_;
  }

 private:
  void normalize_set(std::vector<StateId>& set, const char* field) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (!set.empty() && set.back() >= names_.size())
      throw Error(ErrorCode::semantic, std::string(field) + " set names an undeclared state");
  }

  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> index_;
  std::vector<StateId> start_;
  std::vector<StateId> accept_;
  std::vector<bool> is_accept_;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> offsets_;
};

/// Convenience builder used by tests and by constructions that grow an
/// automaton state by state.
class AutomatonBuilder {
 public:
  AutomatonBuilder(unsigned base, unsigned arity) : base_(base), arity_(arity), alphabet_(base, arity) {}

  StateId add_state(std::string name, bool start = false, bool accept = false) {
    StateId q = names_.size();
    names_.push_back(std::move(name));
    if (start) start_.push_back(q);
    if (accept) accept_.push_back(q);
    return q;
  }

  AutomatonBuilder& add(StateId from, Symbol symbol, StateId to) {
    transitions_.push_back({from, symbol, to});
    return *this;
  }

  /// Unary shorthand: symbol given as a single digit.
  AutomatonBuilder& add(StateId from, const std::vector<unsigned>& digits, StateId to) {
    return add(from, alphabet_.encode(DigitVector(digits)), to);
  }

  void set_start(StateId q) { start_.push_back(q); }
  void set_accept(StateId q) { accept_.push_back(q); }

  std::size_t num_states() const noexcept { return names_.size(); }
  const Alphabet& alphabet() const noexcept { return alphabet_; }

  Automaton build() const { return Automaton(base_, arity_, names_, start_, accept_, transitions_); }

 private:
  unsigned base_;
  unsigned arity_;
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<StateId> start_;
  std::vector<StateId> accept_;
  std::vector<Transition> transitions_;
};

}  // namespace omegafract
