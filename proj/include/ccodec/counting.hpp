#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "automaton.hpp"
#include "bigint.hpp"
#include "errors.hpp"
#include "spec.hpp"

namespace ccodec {

/// Completion counts for one automaton at one word length: layers[t][q] is
/// the number of admissible ways to extend state q by exactly t more letters
/// and end in an accepting state. Exact integers throughout.
struct CountTable {
  int n = 0;
  std::uint64_t fingerprint = 0;
  std::vector<std::vector<BigCount>> layers;  // layers[t], t = 0..n

  const BigCount& completions(int t, StateId q) const {
    if (t < 0 || t > n) throw IndexError("completions: t out of range");
    if (q < 0 || static_cast<std::size_t>(q) >= layers[0].size()) {
      throw IndexError("completions: state out of range");
    }
    return layers[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)];
  }
};

/// Backward dynamic program: layer 0 marks the accepting states, and each
/// further layer sums the successors' counts over the defined transitions.
inline CountTable build_count_table(const Automaton& aut, int n, std::uint64_t fingerprint) {
  if (n < 0) throw IndexError("count table length must be nonnegative");
  const int nq = aut.num_states();
  const int m = aut.alphabet().size();
  CountTable table;
  table.n = n;
  table.fingerprint = fingerprint;
  table.layers.resize(static_cast<std::size_t>(n) + 1);
  auto& base = table.layers[0];
  base.resize(static_cast<std::size_t>(nq));
  for (StateId q = 0; q < nq; ++q) base[static_cast<std::size_t>(q)] = aut.accept(q) ? 1 : 0;
  for (int t = 1; t <= n; ++t) {
    const auto& prev = table.layers[static_cast<std::size_t>(t) - 1];
    auto& cur = table.layers[static_cast<std::size_t>(t)];
    cur.resize(static_cast<std::size_t>(nq));
    for (StateId q = 0; q < nq; ++q) {
      BigCount sum = 0;
      for (int ai = 0; ai < m; ++ai) {
        const StateId to = aut.step(q, ai);
        if (to != kDead) sum += prev[static_cast<std::size_t>(to)];
      }
      cur[static_cast<std::size_t>(q)] = std::move(sum);
    }
  }
  return table;
}

inline CountTable build_count_table(const Automaton& aut, const ValidatedSpec& vs) {
  return build_count_table(aut, vs.length(), vs.fingerprint());
}

/// Number of admissible full-length words beginning with the given prefix:
/// walk the prefix, then read the completion count for the remaining length.
inline BigCount prefix_count(const CountTable& table, const Automaton& aut,
                             std::span<const int> prefix) {
  const int r = static_cast<int>(prefix.size());
  if (r > table.n) throw IndexError("prefix longer than the table's word length");
  const StateId q = aut.step_word(prefix);
  if (q == kDead) return 0;
  return table.completions(table.n - r, q);
}

inline BigCount cardinality(const CountTable& table) {
  // state 0 is the initial state by construction
  return table.completions(table.n, 0);
}

/// Same value as prefix_count but with two rolling layers instead of a stored
/// table, for one-off queries at lengths where the full table is unwanted.
inline BigCount streaming_prefix_count(const Automaton& aut, int n, std::span<const int> prefix) {
  const int r = static_cast<int>(prefix.size());
  if (r > n) throw IndexError("prefix longer than the word length");
  const StateId target = aut.step_word(prefix);
  if (target == kDead) return 0;
  const int nq = aut.num_states();
  const int m = aut.alphabet().size();
  std::vector<BigCount> prev(static_cast<std::size_t>(nq));
  for (StateId q = 0; q < nq; ++q) prev[static_cast<std::size_t>(q)] = aut.accept(q) ? 1 : 0;
  std::vector<BigCount> cur(static_cast<std::size_t>(nq));
  for (int t = 1; t <= n - r; ++t) {
    for (StateId q = 0; q < nq; ++q) {
      BigCount sum = 0;
      for (int ai = 0; ai < m; ++ai) {
        const StateId to = aut.step(q, ai);
        if (to != kDead) sum += prev[static_cast<std::size_t>(to)];
      }
      cur[static_cast<std::size_t>(q)] = std::move(sum);
    }
    std::swap(prev, cur);
  }
  return prev[static_cast<std::size_t>(target)];
}

/// Recomputes every layer from the automaton and compares. Catches both
/// corrupted entries and a table built for a different machine shape.
inline bool verify_table(const CountTable& table, const Automaton& aut) {
  if (table.layers.size() != static_cast<std::size_t>(table.n) + 1) return false;
  const CountTable fresh = build_count_table(aut, table.n, table.fingerprint);
  for (std::size_t t = 0; t < fresh.layers.size(); ++t) {
    if (table.layers[t] != fresh.layers[t]) return false;
  }
  return true;
}

/// How wide payloads and ranks are for a language of the given size:
/// payload_bits k satisfies 2^k <= size, so every k-bit payload maps to a
/// distinct codeword; rank_width is the bit length of size-1.
struct PayloadWidth {
  int payload_bits = 0;
  int rank_width = 0;
};

inline PayloadWidth payload_width(const BigCount& size) {
  if (size <= 0) throw EmptyLanguage("the constrained language is empty");
  PayloadWidth w;
  w.payload_bits = floor_log2(size);
  w.rank_width = w.payload_bits + (is_power_of_two(size) ? 0 : 1);
  return w;
}

inline void write_table(const CountTable& table, std::ostream& os) {
  os << "CCTBL 1\n";
  os << "fingerprint " << to_hex64(table.fingerprint) << '\n';
  os << "n " << table.n << '\n';
  os << "states " << table.layers[0].size() << '\n';
  for (const auto& layer : table.layers) {
    for (std::size_t q = 0; q < layer.size(); ++q) {
      if (q) os << ' ';
      os << layer[q];
    }
    os << '\n';
  }
}

inline std::string serialize_table(const CountTable& table) {
  std::ostringstream os;
  write_table(table, os);
  return os.str();
}

namespace detail {

inline std::string next_line(std::istream& is, int& line_no) {
  std::string line;
  if (!std::getline(is, line)) {
    throw FormatError("count table: unexpected end of input at line " + std::to_string(line_no));
  }
  ++line_no;
  return line;
}

inline std::string expect_field(const std::string& line, std::string_view key, int line_no) {
  const std::string prefix = std::string(key) + " ";
  if (line.rfind(prefix, 0) != 0) {
    throw FormatError("count table line " + std::to_string(line_no) + ": expected \"" +
                      std::string(key) + " ...\"");
  }
  return line.substr(prefix.size());
}

inline int parse_small_int(const std::string& text, int line_no) {
  const BigCount v = parse_decimal(text);  // throws FormatError on junk
  if (v > 1000000000) {
    throw FormatError("count table line " + std::to_string(line_no) + ": value too large");
  }
  return static_cast<int>(v);
}

}  // namespace detail

/// Strict reader for the text format write_table emits. Any deviation —
/// wrong magic, malformed counts, short or oversized layers, trailing bytes —
/// is a FormatError naming the offending line. If expected_fingerprint is
/// given, a well-formed table for a different spec is a FingerprintMismatch.
inline CountTable read_table(std::istream& is, const std::uint64_t* expected_fingerprint = nullptr) {
  int line_no = 0;
  if (detail::next_line(is, line_no) != "CCTBL 1") {
    throw FormatError("count table line 1: expected magic \"CCTBL 1\"");
  }
  CountTable table;
  table.fingerprint = from_hex64(
      detail::expect_field(detail::next_line(is, line_no), "fingerprint", line_no));
  if (expected_fingerprint && table.fingerprint != *expected_fingerprint) {
    throw FingerprintMismatch("count table was built for a different spec (fingerprint " +
                              to_hex64(table.fingerprint) + ", expected " +
                              to_hex64(*expected_fingerprint) + ")");
  }
  table.n = detail::parse_small_int(
      detail::expect_field(detail::next_line(is, line_no), "n", line_no), line_no);
  const int states = detail::parse_small_int(
      detail::expect_field(detail::next_line(is, line_no), "states", line_no), line_no);
  if (states < 1) throw FormatError("count table: states must be positive");
  table.layers.resize(static_cast<std::size_t>(table.n) + 1);
  for (auto& layer : table.layers) {
    const std::string line = detail::next_line(is, line_no);
    std::istringstream fields(line);
    std::string field;
    layer.reserve(static_cast<std::size_t>(states));
    while (fields >> field) {
      try {
        layer.push_back(parse_decimal(field));
      } catch (const FormatError&) {
        throw FormatError("count table line " + std::to_string(line_no) + ": malformed count \"" +
                          field + "\"");
      }
    }
    if (layer.size() != static_cast<std::size_t>(states)) {
      throw FormatError("count table line " + std::to_string(line_no) + ": expected " +
                        std::to_string(states) + " counts, got " + std::to_string(layer.size()));
    }
  }
  std::string rest;
  if (std::getline(is, rest)) {
    throw FormatError("count table: trailing content after layer " + std::to_string(table.n));
  }
  return table;
}

inline CountTable deserialize_table(std::string_view text,
                                    const std::uint64_t* expected_fingerprint = nullptr) {
  std::istringstream is{std::string(text)};
  return read_table(is, expected_fingerprint);
}

}  // namespace ccodec
