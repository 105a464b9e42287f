#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "alphabet.hpp"
#include "constraints.hpp"
#include "errors.hpp"
#include "spec.hpp"

namespace ccodec {

using StateId = std::int32_t;
inline constexpr StateId kDead = -1;

/// Deterministic finite automaton over an Alphabet, with a dense transition
/// table. State 0 is always the initial state; kDead marks an undefined
/// transition. Labels are human-readable and only used by dump().
class Automaton {
 public:
  Automaton(Alphabet alphabet, std::vector<std::string> labels, std::vector<char> accept,
            std::vector<StateId> step)
      : alphabet_(std::move(alphabet)),
        labels_(std::move(labels)),
        accept_(std::move(accept)),
        step_(std::move(step)) {}

  const Alphabet& alphabet() const { return alphabet_; }
  int num_states() const { return static_cast<int>(accept_.size()); }
  StateId initial() const { return 0; }
  bool accept(StateId q) const { return accept_[static_cast<std::size_t>(q)] != 0; }
  const std::string& label(StateId q) const { return labels_[static_cast<std::size_t>(q)]; }

  /// Transition on a letter index (position in the alphabet's declared order).
  StateId step(StateId q, int letter_index) const {
    return step_[static_cast<std::size_t>(q) * alphabet_.size() + letter_index];
  }

  /// Transition on a letter value; throws UnknownLetter for foreign values.
  StateId step_letter(StateId q, int letter_value) const {
    return step(q, alphabet_.index_of(letter_value));
  }

  /// Runs the word (letter values) from the initial state. Every letter is
  /// validated against the alphabet even after the walk has died.
  StateId step_word(std::span<const int> word) const {
    StateId q = initial();
    for (int v : word) {
      const int ai = alphabet_.index_of(v);
      if (q != kDead) q = step(q, ai);
    }
    return q;
  }

  bool accepts_word(std::span<const int> word) const {
    const StateId q = step_word(word);
    return q != kDead && accept(q);
  }

  /// One line per state: id, label, accept flag, then one entry per letter in
  /// alphabet order, tab-separated fields and space-separated entries.
  void dump(std::ostream& os) const {
    for (StateId q = 0; q < num_states(); ++q) {
      os << q << '\t' << label(q) << '\t' << (accept(q) ? 1 : 0) << '\t';
      for (int ai = 0; ai < alphabet_.size(); ++ai) {
        if (ai) os << ' ';
        os << alphabet_.letter(ai) << "→";
        const StateId to = step(q, ai);
        if (to == kDead) {
          os << "⊥";
        } else {
          os << to;
        }
      }
      os << '\n';
    }
  }

  std::string dump() const {
    std::ostringstream os;
    dump(os);
    return os.str();
  }

 private:
  Alphabet alphabet_;
  std::vector<std::string> labels_;
  std::vector<char> accept_;
  std::vector<StateId> step_;
};

namespace detail {

/// Breadth-first subset construction over an arbitrary key type. Keys are
/// canonicalized through a map, so structurally equal states are merged; the
/// start key becomes state 0 and discovery order numbers the rest.
template <typename Key, typename StepFn, typename AcceptFn, typename LabelFn>
Automaton build_dfa(const Alphabet& alphabet, const Key& start, StepFn&& step_fn,
                    AcceptFn&& accept_fn, LabelFn&& label_fn) {
  const int m = alphabet.size();
  std::map<Key, StateId> ids;
  std::vector<Key> keys;
  std::deque<StateId> queue;

  auto intern = [&](const Key& k) {
    auto [it, inserted] = ids.emplace(k, static_cast<StateId>(keys.size()));
    if (inserted) {
      keys.push_back(k);
      queue.push_back(it->second);
    }
    return it->second;
  };

  intern(start);
  std::vector<std::vector<StateId>> rows;
  std::vector<char> accept;
  std::vector<std::string> labels;
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    // keys may reallocate while interning successors; copy the key first.
    const Key key = keys[static_cast<std::size_t>(q)];
    std::vector<StateId> row(static_cast<std::size_t>(m), kDead);
    for (int ai = 0; ai < m; ++ai) {
      if (std::optional<Key> next = step_fn(key, ai)) {
        row[static_cast<std::size_t>(ai)] = intern(*next);
      }
    }
    rows.push_back(std::move(row));
    accept.push_back(accept_fn(key) ? 1 : 0);
    labels.push_back(label_fn(key));
  }
  std::vector<StateId> step;
  step.reserve(rows.size() * static_cast<std::size_t>(m));
  for (const auto& row : rows) step.insert(step.end(), row.begin(), row.end());
  return Automaton(alphabet, std::move(labels), std::move(accept), std::move(step));
}

inline std::string join_values(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace detail

/// States are the admissible running sums; the walk starts at sum 0 and dies
/// as soon as a prefix sum leaves [min_prefix, max_prefix].
inline Automaton compile_running_sum(const Alphabet& alphabet, const RunningSumSpec& rs) {
  auto step = [&](long long sum, int ai) -> std::optional<long long> {
    const long long next = sum + alphabet.letter(ai);
    if (next < rs.min_prefix || next > rs.max_prefix) return std::nullopt;
    return next;
  };
  auto accept = [&](long long sum) { return sum >= rs.min_final && sum <= rs.max_final; };
  auto label = [](long long sum) { return "sum=" + std::to_string(sum); };
  return detail::build_dfa<long long>(alphabet, 0, step, accept, label);
}

/// States remember the last window-1 letters (as alphabet indices); each step
/// that completes a full window checks its weight against the band.
inline Automaton compile_sliding_window(const Alphabet& alphabet, const SlidingWindowSpec& sw) {
  using Key = std::vector<int>;
  auto step = [&](const Key& recent, int ai) -> std::optional<Key> {
    Key next = recent;
    next.push_back(ai);
    if (static_cast<int>(next.size()) == sw.window) {
      long long weight = 0;
      for (int idx : next) weight += alphabet.letter(idx);
      if (weight < sw.min_weight || weight > sw.max_weight) return std::nullopt;
      next.erase(next.begin());
    }
    return next;
  };
  auto accept = [](const Key&) { return true; };
  auto label = [&](const Key& recent) {
    std::vector<int> values;
    for (int idx : recent) values.push_back(alphabet.letter(idx));
    return "win=" + detail::join_values(values);
  };
  return detail::build_dfa<Key>(alphabet, {}, step, accept, label);
}

/// States are (position within the current block, weight so far); crossing a
/// block boundary checks the band and resets. Accepting states sit exactly on
/// the boundaries, so lengths that are not a multiple of the block die at the
/// final acceptance check.
inline Automaton compile_subblock(const Alphabet& alphabet, const SubblockWeightSpec& sb) {
  using Key = std::pair<int, long long>;  // (pos, weight)
  auto step = [&](const Key& key, int ai) -> std::optional<Key> {
    const int pos = key.first + 1;
    const long long weight = key.second + alphabet.letter(ai);
    if (weight > sb.max_weight) return std::nullopt;  // letters are nonnegative
    if (pos == sb.block) {
      if (weight < sb.min_weight) return std::nullopt;
      return Key{0, 0};
    }
    return Key{pos, weight};
  };
  auto accept = [](const Key& key) { return key.first == 0; };
  auto label = [](const Key& key) {
    return "blk=" + std::to_string(key.first) + ":" + std::to_string(key.second);
  };
  return detail::build_dfa<Key>(alphabet, {0, 0}, step, accept, label);
}

/// Suffix automaton over the proper prefixes of the forbidden words: each
/// state is the longest tracked suffix of the input, and a step that completes
/// any forbidden word dies.
inline Automaton compile_forbidden(const Alphabet& alphabet, const ForbiddenWordsSpec& fw) {
  using Key = std::vector<int>;  // letter values, a proper prefix of some word
  std::set<Key> prefixes;
  for (const auto& w : fw.words) {
    for (std::size_t len = 0; len < w.size(); ++len) {
      prefixes.insert(Key(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len)));
    }
  }
  auto ends_with = [](const Key& text, const Key& tail) {
    if (tail.size() > text.size()) return false;
    return std::equal(tail.rbegin(), tail.rend(), text.rbegin());
  };
  auto step = [&](const Key& state, int ai) -> std::optional<Key> {
    Key grown = state;
    grown.push_back(alphabet.letter(ai));
    for (const auto& w : fw.words) {
      if (ends_with(grown, w)) return std::nullopt;
    }
    for (std::size_t drop = 0; drop <= grown.size(); ++drop) {
      Key suffix(grown.begin() + static_cast<std::ptrdiff_t>(drop), grown.end());
      if (prefixes.count(suffix)) return suffix;
    }
    return Key{};  // unreachable: the empty prefix always matches
  };
  auto accept = [](const Key&) { return true; };
  auto label = [&](const Key& state) { return "sfx=" + detail::join_values(state); };
  return detail::build_dfa<Key>(alphabet, {}, step, accept, label);
}

/// Single accepting state with a self-loop on every letter.
inline Automaton compile_free(const Alphabet& alphabet) {
  std::vector<StateId> step(static_cast<std::size_t>(alphabet.size()), 0);
  return Automaton(alphabet, {"free"}, {1}, std::move(step));
}

/// Synchronous product restricted to reachable pairs. A step is defined only
/// when both factors define it, and a pair accepts only when both do.
inline Automaton product(const Automaton& a, const Automaton& b) {
  if (!(a.alphabet() == b.alphabet())) {
    throw AlphabetMismatch("product requires identical alphabets");
  }
  using Key = std::pair<StateId, StateId>;
  auto step = [&](const Key& key, int ai) -> std::optional<Key> {
    const StateId qa = a.step(key.first, ai);
    const StateId qb = b.step(key.second, ai);
    if (qa == kDead || qb == kDead) return std::nullopt;
    return Key{qa, qb};
  };
  auto accept = [&](const Key& key) { return a.accept(key.first) && b.accept(key.second); };
  auto label = [&](const Key& key) {
    return "(" + a.label(key.first) + ";" + b.label(key.second) + ")";
  };
  return detail::build_dfa<Key>(a.alphabet(), {a.initial(), b.initial()}, step, accept, label);
}

inline Automaton compile_constraint(const Alphabet& alphabet, const Constraint& c) {
  if (const auto* rs = std::get_if<RunningSumSpec>(&c)) return compile_running_sum(alphabet, *rs);
  if (const auto* sw = std::get_if<SlidingWindowSpec>(&c))
    return compile_sliding_window(alphabet, *sw);
  if (const auto* sb = std::get_if<SubblockWeightSpec>(&c)) return compile_subblock(alphabet, *sb);
  return compile_forbidden(alphabet, std::get<ForbiddenWordsSpec>(c));
}

/// Compiles the whole spec: every constraint separately, then the product.
/// No constraints yields the one-state free automaton.
inline Automaton compile(const ValidatedSpec& vs) {
  for (const auto& c : vs.constraints()) {
    if (const auto* sb = std::get_if<SubblockWeightSpec>(&c)) {
      if (vs.length() % sb->block != 0) {
        throw SpecError("length " + std::to_string(vs.length()) +
                        " is not a multiple of subblock block " + std::to_string(sb->block));
      }
    }
  }
  if (vs.constraints().empty()) return compile_free(vs.alphabet());
  Automaton acc = compile_constraint(vs.alphabet(), vs.constraints().front());
  for (std::size_t i = 1; i < vs.constraints().size(); ++i) {
    acc = product(acc, compile_constraint(vs.alphabet(), vs.constraints()[i]));
  }
  return acc;
}

}  // namespace ccodec
