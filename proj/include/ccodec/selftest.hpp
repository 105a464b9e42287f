#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "codec.hpp"
#include "counting.hpp"
#include "oracle.hpp"
#include "spec.hpp"

// Cross-validation harness: a grid of small constraint specs on which the
// automaton pipeline, the brute-force enumerator, and the tabular counters
// must all agree, on every prefix, admissible or not. Runs in-process so the
// CLI can offer it as a self-check.
namespace ccodec::selftest {

struct GridEntry {
  std::string name;
  ConstraintSpec spec;
};

inline std::vector<GridEntry> equivalence_grid() {
  std::vector<GridEntry> grid;
  auto add = [&](std::string name, std::vector<int> alphabet, int n,
                 std::vector<Constraint> cons) {
    ConstraintSpec spec;
    spec.alphabet = std::move(alphabet);
    spec.length = n;
    spec.constraints = std::move(cons);
    grid.push_back({std::move(name), std::move(spec)});
  };
  auto rs = [](long long d1, long long d2, long long a, long long b) {
    return Constraint{RunningSumSpec{d1, d2, a, b}};
  };
  auto sw = [](int l, long long a, long long b) {
    return Constraint{SlidingWindowSpec{l, a, b}};
  };
  auto sb = [](int l, long long a, long long b) {
    return Constraint{SubblockWeightSpec{l, a, b}};
  };
  auto fw = [](std::vector<std::vector<int>> words) {
    return Constraint{ForbiddenWordsSpec{std::move(words)}};
  };

  add("band walk", {-1, 1}, 6, {rs(0, 3, 0, 2)});
  add("tight band", {-1, 1}, 8, {rs(-1, 1, -1, 1)});
  add("return to zero", {-1, 1}, 8, {rs(-2, 2, 0, 0)});
  add("asymmetric band", {-1, 1}, 7, {rs(-3, 1, -2, 0)});
  add("positive drift", {-1, 1}, 9, {rs(0, 4, 1, 3)});
  add("negative band", {-1, 1}, 7, {rs(-3, -1, -3, -2)});
  add("constant weight", {0, 1}, 8, {rs(0, 8, 3, 3)});
  add("weight band", {0, 1}, 8, {rs(0, 5, 2, 4)});
  add("prefix floor", {0, 1}, 8, {rs(1, 4, 2, 3)});
  add("skewed letters", {-2, 1}, 7, {rs(-4, 2, -2, 1)});
  add("ternary drift", {-1, 0, 1}, 6, {rs(-2, 2, -1, 1)});

  add("all ones window", {0, 1}, 6, {sw(1, 1, 1)});
  add("no adjacent ones", {0, 1}, 8, {sw(2, 0, 1)});
  add("density band", {0, 1}, 9, {sw(3, 1, 2)});
  add("sparse quads", {0, 1}, 8, {sw(4, 0, 2)});
  add("window is the word", {0, 1}, 8, {sw(8, 3, 5)});

  add("one pulse per pair", {0, 1}, 8, {sb(2, 1, 1)});
  add("loose nibbles", {0, 1}, 8, {sb(4, 1, 3)});
  add("sparse triads", {0, 1}, 9, {sb(3, 0, 2)});

  add("no 00 no 111", {0, 1}, 9, {fw({{0, 0}, {1, 1, 1}})});
  add("no 101", {0, 1}, 8, {fw({{1, 0, 1}})});
  add("no long runs", {0, 1}, 9, {fw({{0, 0, 0, 0}, {1, 1, 1, 1}})});
  add("alternating only", {0, 1}, 10, {fw({{0, 0}, {1, 1}})});
  add("ternary taboo", {0, 1, 2}, 6, {fw({{0, 0}, {1, 2}})});

  add("band, forbidden peak run", {-1, 1}, 8, {rs(0, 3, 0, 2), fw({{1, 1, 1}})});
  add("drift without dips", {-1, 1}, 8, {rs(-2, 4, 0, 2), fw({{-1, -1}})});
  add("band and window", {0, 1}, 8, {rs(0, 6, 2, 4), sw(3, 1, 2)});
  add("window without 00", {0, 1}, 9, {sw(3, 1, 3), fw({{0, 0}})});
  add("blocks without doubles", {0, 1}, 9, {sb(3, 1, 2), fw({{1, 1}})});
  add("free binary", {0, 1}, 6, {});
  return grid;
}

struct SuiteReport {
  int entries_run = 0;
  long long checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

namespace detail {

inline const RunningSumSpec* sole_running_sum(const ValidatedSpec& vs) {
  if (vs.constraints().size() != 1) return nullptr;
  return std::get_if<RunningSumSpec>(&vs.constraints()[0]);
}

inline const SlidingWindowSpec* sole_sliding_window(const ValidatedSpec& vs) {
  if (vs.constraints().size() != 1) return nullptr;
  return std::get_if<SlidingWindowSpec>(&vs.constraints()[0]);
}

inline const ForbiddenWordsSpec* sole_forbidden(const ValidatedSpec& vs) {
  if (vs.constraints().size() != 1) return nullptr;
  return std::get_if<ForbiddenWordsSpec>(&vs.constraints()[0]);
}

// The joint counter covers any mix of at most one running-sum and at most one
// forbidden-words constraint; a missing running sum gets a band wide enough
// to never bind.
struct JointParams {
  long long d1, d2, alpha, beta;
  std::vector<std::vector<int>> forbidden;
};

inline std::optional<JointParams> joint_params(const ValidatedSpec& vs) {
  if (vs.constraints().empty()) return std::nullopt;
  JointParams p;
  bool have_rs = false, have_fw = false;
  for (const auto& c : vs.constraints()) {
    if (const auto* rs = std::get_if<RunningSumSpec>(&c)) {
      if (have_rs) return std::nullopt;
      have_rs = true;
      p.d1 = rs->min_prefix;
      p.d2 = rs->max_prefix;
      p.alpha = rs->min_final;
      p.beta = rs->max_final;
    } else if (const auto* fw = std::get_if<ForbiddenWordsSpec>(&c)) {
      if (have_fw) return std::nullopt;
      have_fw = true;
      p.forbidden = fw->words;
    } else {
      return std::nullopt;
    }
  }
  if (!have_rs) {
    const long long n = vs.length();
    p.d1 = std::min(0LL, n * vs.alphabet().min_letter());
    p.d2 = std::max(0LL, n * vs.alphabet().max_letter());
    p.alpha = p.d1;
    p.beta = p.d2;
  }
  return p;
}

inline std::string word_text(std::span<const int> word) {
  std::string out = "[";
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(word[i]);
  }
  return out + "]";
}

template <typename Fn>
void for_each_prefix(const Alphabet& alphabet, int max_len, Fn&& fn) {
  std::vector<int> word;
  fn(std::span<const int>(word));
  const int m = alphabet.size();
  std::vector<int> indices;
  for (int r = 1; r <= max_len; ++r) {
    indices.assign(static_cast<std::size_t>(r), 0);
    word.assign(static_cast<std::size_t>(r), alphabet.letter(0));
    for (;;) {
      fn(std::span<const int>(word));
      int pos = r - 1;
      while (pos >= 0 && indices[static_cast<std::size_t>(pos)] == m - 1) {
        indices[static_cast<std::size_t>(pos)] = 0;
        word[static_cast<std::size_t>(pos)] = alphabet.letter(0);
        --pos;
      }
      if (pos < 0) break;
      ++indices[static_cast<std::size_t>(pos)];
      word[static_cast<std::size_t>(pos)] =
          alphabet.letter(indices[static_cast<std::size_t>(pos)]);
    }
  }
}

}  // namespace detail

/// Agreement of every counting path on every prefix of every grid entry.
inline SuiteReport run_equivalence_suite(int max_length = 10) {
  SuiteReport report;
  for (const auto& entry : equivalence_grid()) {
    if (entry.spec.length > max_length) continue;
    ++report.entries_run;
    const ValidatedSpec vs = validate(entry.spec);
    const Automaton aut = compile(vs);
    const CountTable table = build_count_table(aut, vs);
    const auto language = oracle::enumerate_language(vs);

    const auto* rs = detail::sole_running_sum(vs);
    const auto* sw = detail::sole_sliding_window(vs);
    const bool use_sw =
        sw != nullptr && vs.alphabet().letters() == std::vector<int>{0, 1} &&
        vs.length() >= sw->window;
    const auto* fw = detail::sole_forbidden(vs);
    const auto joint = detail::joint_params(vs);

    detail::for_each_prefix(vs.alphabet(), vs.length(), [&](std::span<const int> prefix) {
      const BigCount expected = oracle::brute_prefix_count(language, prefix);
      auto check = [&](const char* method, const BigCount& got) {
        ++report.checks;
        if (got != expected) {
          std::ostringstream os;
          os << entry.name << ": " << method << " counts " << got << " completions of "
             << detail::word_text(prefix) << ", enumeration counts " << expected;
          report.failures.push_back(os.str());
        }
      };
      check("count table", prefix_count(table, aut, prefix));
      check("streaming count", streaming_prefix_count(aut, vs.length(), prefix));
      if (rs) {
        check("sum tabulation",
              oracle::sum_tabulation_count(prefix, rs->min_prefix, rs->max_prefix, rs->min_final,
                                       rs->max_final, vs.length(), vs.alphabet().letters()));
      }
      if (use_sw) {
        // The window tabulation vouches only for seeds its own walk could
        // reach: a prefix shorter than the window must still be able to meet
        // the band, α − (window − r) ≤ weight ≤ β. Shorter seeds outside
        // that bracket get junk counts from the one-sided append guards.
        bool in_domain = true;
        const int r = static_cast<int>(prefix.size());
        if (r < sw->window) {
          long long weight = 0;
          for (int v : prefix) weight += v;
          in_domain = weight >= sw->min_weight - (sw->window - r) &&
                      weight <= sw->max_weight;
        }
        if (in_domain) {
          check("window tabulation",
                oracle::window_tabulation_count(prefix, sw->window, sw->min_weight, sw->max_weight,
                                         vs.length()));
        }
      }
      if (fw) {
        check("taboo tabulation",
              oracle::taboo_tabulation_count(prefix, fw->words, vs.length(), vs.alphabet().letters()));
      }
      if (joint) {
        check("joint tabulation",
              oracle::joint_tabulation_count(prefix, joint->d1, joint->d2, joint->alpha, joint->beta,
                                       joint->forbidden, vs.length(), vs.alphabet().letters()));
      }
    });
  }
  return report;
}

/// rank and unrank must realize exactly the enumeration order, and the
/// payload widths must bracket the language size.
inline SuiteReport run_bijectivity_suite(int max_length = 10) {
  SuiteReport report;
  for (const auto& entry : equivalence_grid()) {
    if (entry.spec.length > max_length) continue;
    ++report.entries_run;
    const ValidatedSpec vs = validate(entry.spec);
    const Automaton aut = compile(vs);
    const CountTable table = build_count_table(aut, vs);
    const auto language = oracle::enumerate_language(vs);

    auto fail = [&](const std::string& what) {
      report.failures.push_back(entry.name + ": " + what);
    };

    ++report.checks;
    if (cardinality(table) != BigCount(language.size())) {
      fail("table cardinality " + cardinality(table).str() + " vs enumerated " +
           std::to_string(language.size()));
      continue;
    }
    BigCount i = 0;
    for (const auto& word : language) {
      ++report.checks;
      const BigCount r = rank(table, aut, word);
      if (r != i) {
        fail("rank of " + detail::word_text(word) + " is " + r.str() + ", enumeration puts it at " +
             i.str());
      }
      ++report.checks;
      if (unrank(table, aut, i) != word) {
        fail("unrank(" + i.str() + ") does not return " + detail::word_text(word));
      }
      ++i;
    }
    if (!language.empty()) {
      const PayloadWidth w = payload_width(cardinality(table));
      ++report.checks;
      const BigCount size = cardinality(table);
      if (!(two_pow(w.payload_bits) <= size && size < two_pow(w.payload_bits + 1) &&
            size - 1 < two_pow(w.rank_width) &&
            (w.rank_width == 0 || size - 1 >= two_pow(w.rank_width - 1)))) {
        fail("payload widths " + std::to_string(w.payload_bits) + "/" +
             std::to_string(w.rank_width) + " do not bracket " + size.str());
      }
    }
  }
  return report;
}

}  // namespace ccodec::selftest
