#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "alphabet.hpp"
#include "bigint.hpp"
#include "constraints.hpp"
#include "errors.hpp"

namespace ccodec {

namespace detail {

inline std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

inline void require_object_keys(const nlohmann::json& j, const std::set<std::string>& keys,
                                const std::string& where) {
  if (!j.is_object()) throw SpecError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!keys.count(it.key())) throw SpecError(where + ": unknown field \"" + it.key() + "\"");
  }
  for (const auto& k : keys) {
    if (!j.contains(k)) throw SpecError(where + ": missing field \"" + k + "\"");
  }
}

inline long long get_int(const nlohmann::json& j, const std::string& key, const std::string& where) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw SpecError(where + ": field \"" + key + "\" must be an integer");
  return v.get<long long>();
}

}  // namespace detail

/// Parses the JSON spec-file format. Structural checks only (types, known
/// fields); semantic invariants are enforced by validate().
inline ConstraintSpec parse_spec(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError("spec: JSON syntax error near line " +
                    std::to_string(detail::line_of_byte(text, e.byte)) + ": " + e.what());
  }

  detail::require_object_keys(j, {"alphabet", "length", "constraints"}, "spec");

  ConstraintSpec spec;
  const auto& alpha = j.at("alphabet");
  if (!alpha.is_array()) throw SpecError("spec: \"alphabet\" must be an array of integers");
  for (const auto& v : alpha) {
    if (!v.is_number_integer()) throw SpecError("spec: \"alphabet\" must contain only integers");
    spec.alphabet.push_back(v.get<int>());
  }
  spec.length = static_cast<int>(detail::get_int(j, "length", "spec"));

  const auto& cons = j.at("constraints");
  if (!cons.is_array()) throw SpecError("spec: \"constraints\" must be an array");
  int idx = 0;
  for (const auto& c : cons) {
    const std::string where = "constraints[" + std::to_string(idx) + "]";
    if (!c.is_object() || !c.contains("type") || !c.at("type").is_string()) {
      throw SpecError(where + ": expected an object with a \"type\" string");
    }
    const std::string type = c.at("type").get<std::string>();
    if (type == "running_sum") {
      detail::require_object_keys(
          c, {"type", "min_prefix", "max_prefix", "min_final", "max_final"}, where);
      RunningSumSpec rs;
      rs.min_prefix = detail::get_int(c, "min_prefix", where);
      rs.max_prefix = detail::get_int(c, "max_prefix", where);
      rs.min_final = detail::get_int(c, "min_final", where);
      rs.max_final = detail::get_int(c, "max_final", where);
      spec.constraints.emplace_back(rs);
    } else if (type == "sliding_window") {
      detail::require_object_keys(c, {"type", "window", "min_weight", "max_weight"}, where);
      SlidingWindowSpec sw;
      sw.window = static_cast<int>(detail::get_int(c, "window", where));
      sw.min_weight = detail::get_int(c, "min_weight", where);
      sw.max_weight = detail::get_int(c, "max_weight", where);
      spec.constraints.emplace_back(sw);
    } else if (type == "subblock") {
      detail::require_object_keys(c, {"type", "block", "min_weight", "max_weight"}, where);
      SubblockWeightSpec sb;
      sb.block = static_cast<int>(detail::get_int(c, "block", where));
      sb.min_weight = detail::get_int(c, "min_weight", where);
      sb.max_weight = detail::get_int(c, "max_weight", where);
      spec.constraints.emplace_back(sb);
    } else if (type == "forbidden_words") {
      detail::require_object_keys(c, {"type", "words"}, where);
      const auto& words = c.at("words");
      if (!words.is_array()) throw SpecError(where + ": \"words\" must be an array of words");
      ForbiddenWordsSpec fw;
      for (const auto& w : words) {
        if (!w.is_array()) throw SpecError(where + ": each forbidden word must be an array");
        std::vector<int> word;
        for (const auto& v : w) {
          if (!v.is_number_integer()) throw SpecError(where + ": forbidden words hold integers");
          word.push_back(v.get<int>());
        }
        fw.words.push_back(std::move(word));
      }
      spec.constraints.emplace_back(fw);
    } else {
      throw SpecError(where + ": unknown type \"" + type + "\"");
    }
    ++idx;
  }
  return spec;
}

/// Canonical serialization: fixed key set, keys in sorted order, no
/// whitespace. parse_spec(serialize_spec(s)) == s, and the fingerprint is the
/// FNV-1a hash of exactly this string.
inline std::string serialize_spec(const ConstraintSpec& spec) {
  nlohmann::json j;
  j["alphabet"] = spec.alphabet;
  j["length"] = spec.length;
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : spec.constraints) {
    nlohmann::json o;
    if (const auto* rs = std::get_if<RunningSumSpec>(&c)) {
      o["type"] = "running_sum";
      o["min_prefix"] = rs->min_prefix;
      o["max_prefix"] = rs->max_prefix;
      o["min_final"] = rs->min_final;
      o["max_final"] = rs->max_final;
    } else if (const auto* sw = std::get_if<SlidingWindowSpec>(&c)) {
      o["type"] = "sliding_window";
      o["window"] = sw->window;
      o["min_weight"] = sw->min_weight;
      o["max_weight"] = sw->max_weight;
    } else if (const auto* sb = std::get_if<SubblockWeightSpec>(&c)) {
      o["type"] = "subblock";
      o["block"] = sb->block;
      o["min_weight"] = sb->min_weight;
      o["max_weight"] = sb->max_weight;
    } else {
      const auto& fw = std::get<ForbiddenWordsSpec>(c);
      o["type"] = "forbidden_words";
      o["words"] = fw.words;
    }
    cons.push_back(std::move(o));
  }
  j["constraints"] = std::move(cons);
  return j.dump();
}

inline std::uint64_t spec_fingerprint(const ConstraintSpec& spec) {
  return fnv1a64(serialize_spec(spec));
}

/// A ConstraintSpec whose invariants have all been checked. The only way to
/// obtain one is validate(), so downstream code (compile, the oracles) can
/// assume well-formedness.
class ValidatedSpec {
 public:
  const ConstraintSpec& spec() const { return spec_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int length() const { return spec_.length; }
  const std::vector<Constraint>& constraints() const { return spec_.constraints; }
  const std::string& canonical() const { return canonical_; }
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  friend ValidatedSpec validate(const ConstraintSpec& spec);

  ValidatedSpec(ConstraintSpec spec, Alphabet alphabet, std::string canonical)
      : spec_(std::move(spec)),
        alphabet_(std::move(alphabet)),
        canonical_(std::move(canonical)),
        fingerprint_(fnv1a64(canonical_)) {}

  ConstraintSpec spec_;
  Alphabet alphabet_;
  std::string canonical_;
  std::uint64_t fingerprint_;
};

/// Checks every invariant and names the violated one in the SpecError.
/// Pure and idempotent.
inline ValidatedSpec validate(const ConstraintSpec& spec) {
  if (spec.length < 1) throw SpecError("length must be a positive integer");
  Alphabet alphabet(spec.alphabet);  // nonempty, distinct

  int idx = 0;
  for (const auto& c : spec.constraints) {
    const std::string where = "constraints[" + std::to_string(idx) + "]";
    if (const auto* rs = std::get_if<RunningSumSpec>(&c)) {
      // required ordering: min_prefix <= min_final <= max_final <= max_prefix
      if (rs->min_prefix > rs->min_final)
        throw SpecError(where + ": running_sum needs min_prefix <= min_final");
      if (rs->min_final > rs->max_final)
        throw SpecError(where + ": running_sum needs min_final <= max_final");
      if (rs->max_final > rs->max_prefix)
        throw SpecError(where + ": running_sum needs max_final <= max_prefix");
    } else if (const auto* sw = std::get_if<SlidingWindowSpec>(&c)) {
      if (!alphabet.all_nonnegative())
        throw SpecError(where + ": sliding_window weights require a nonnegative alphabet");
      if (sw->window < 1) throw SpecError(where + ": sliding_window window must be positive");
      if (sw->min_weight < 0) throw SpecError(where + ": sliding_window needs min_weight >= 0");
      if (sw->min_weight > sw->max_weight)
        throw SpecError(where + ": sliding_window needs min_weight <= max_weight");
      const long long cap =
          static_cast<long long>(sw->window) * static_cast<long long>(alphabet.max_letter());
      if (sw->max_weight > cap)
        throw SpecError(where + ": sliding_window max_weight exceeds window * max letter");
    } else if (const auto* sb = std::get_if<SubblockWeightSpec>(&c)) {
      if (!alphabet.all_nonnegative())
        throw SpecError(where + ": subblock weights require a nonnegative alphabet");
      if (sb->block < 1) throw SpecError(where + ": subblock block must be positive");
      if (sb->min_weight > sb->max_weight)
        throw SpecError(where + ": subblock needs min_weight <= max_weight");
      // length % block is a compile-time check: the automaton depends on it.
    } else {
      const auto& fw = std::get<ForbiddenWordsSpec>(c);
      if (fw.words.empty()) throw SpecError(where + ": forbidden_words needs at least one word");
      std::set<std::vector<int>> seen;
      for (const auto& w : fw.words) {
        if (w.empty()) throw SpecError(where + ": forbidden words must be nonempty");
        for (int v : w) {
          if (!alphabet.contains(v))
            throw SpecError(where + ": forbidden word letter " + std::to_string(v) +
                            " is not in the alphabet");
        }
        if (!seen.insert(w).second)
          throw SpecError(where + ": duplicate forbidden word");
      }
    }
    ++idx;
  }
  return ValidatedSpec(spec, std::move(alphabet), serialize_spec(spec));
}

}  // namespace ccodec
