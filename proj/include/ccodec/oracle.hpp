#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "constraints.hpp"
#include "errors.hpp"
#include "spec.hpp"

// Independent reference implementations used to cross-check the automaton
// pipeline: a declarative brute-force enumerator, the classical tabular
// counting procedures for each constraint family, and binomial ranking for
// constant-weight words. Nothing here touches Automaton or CountTable.
namespace ccodec::oracle {

inline bool word_satisfies(const ValidatedSpec& vs, std::span<const int> word) {
  if (static_cast<int>(word.size()) != vs.length()) return false;
  for (int v : word) {
    if (!vs.alphabet().contains(v)) return false;
  }
  const int n = vs.length();
  for (const auto& c : vs.constraints()) {
    if (const auto* rs = std::get_if<RunningSumSpec>(&c)) {
      long long sum = 0;
      for (int v : word) {
        sum += v;
        if (sum < rs->min_prefix || sum > rs->max_prefix) return false;
      }
      if (sum < rs->min_final || sum > rs->max_final) return false;
    } else if (const auto* sw = std::get_if<SlidingWindowSpec>(&c)) {
      for (int i = 0; i + sw->window <= n; ++i) {
        long long weight = 0;
        for (int k = 0; k < sw->window; ++k) weight += word[static_cast<std::size_t>(i + k)];
        if (weight < sw->min_weight || weight > sw->max_weight) return false;
      }
    } else if (const auto* sb = std::get_if<SubblockWeightSpec>(&c)) {
      if (n % sb->block != 0) return false;
      for (int i = 0; i < n; i += sb->block) {
        long long weight = 0;
        for (int k = 0; k < sb->block; ++k) weight += word[static_cast<std::size_t>(i + k)];
        if (weight < sb->min_weight || weight > sb->max_weight) return false;
      }
    } else {
      const auto& fw = std::get<ForbiddenWordsSpec>(c);
      for (const auto& v : fw.words) {
        const int lv = static_cast<int>(v.size());
        for (int i = 0; i + lv <= n; ++i) {
          if (std::equal(v.begin(), v.end(), word.begin() + i)) return false;
        }
      }
    }
  }
  return true;
}

/// Every admissible word, in the lexicographic order induced by the declared
/// letter order, by checking all m^n candidates one at a time.
inline std::vector<std::vector<int>> enumerate_language(const ValidatedSpec& vs) {
  const int n = vs.length();
  const int m = vs.alphabet().size();
  double budget = 1.0;
  for (int i = 0; i < n; ++i) budget *= m;
  if (budget > static_cast<double>(1 << 24)) {
    throw TooLarge("enumeration over " + std::to_string(m) + "^" + std::to_string(n) +
                   " candidates is out of reach");
  }
  std::vector<std::vector<int>> language;
  std::vector<int> indices(static_cast<std::size_t>(n), 0);
  std::vector<int> word(static_cast<std::size_t>(n));
  for (;;) {
    for (int i = 0; i < n; ++i) {
      word[static_cast<std::size_t>(i)] = vs.alphabet().letter(indices[static_cast<std::size_t>(i)]);
    }
    if (word_satisfies(vs, word)) language.push_back(word);
    int pos = n - 1;
    while (pos >= 0 && indices[static_cast<std::size_t>(pos)] == m - 1) {
      indices[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++indices[static_cast<std::size_t>(pos)];
  }
  return language;
}

/// Admissible full-length words that begin with the given prefix, by scanning
/// an enumerated language.
inline BigCount brute_prefix_count(const std::vector<std::vector<int>>& language,
                                   std::span<const int> prefix) {
  BigCount count = 0;
  for (const auto& word : language) {
    if (prefix.size() <= word.size() &&
        std::equal(prefix.begin(), prefix.end(), word.begin())) {
      ++count;
    }
  }
  return count;
}

// ---------------------------------------------------------------------------
// Tabular counting, running-sum constraints.
//
// S[i][j] = number of ways the prefix extends by i-1 more letters so that the
// running sum is j and no intermediate sum has left [d1, d2]. The sum axis is
// widened to include the prefix's own sum, which may start outside the band
// (an empty prefix sits at 0 wherever the band is); transitions still only
// enter the band.

inline std::vector<std::vector<BigCount>> sum_tabulation_columns(std::span<const int> prefix,
                                                           long long d1, long long d2, int n,
                                                           const std::vector<int>& letters) {
  const int r = static_cast<int>(prefix.size());
  if (r > n) throw IndexError("prefix longer than the word length");
  if (d2 < d1) throw IndexError("empty sum band");
  const std::size_t band = static_cast<std::size_t>(d2 - d1 + 1);

  long long z = 0;
  bool valid = true;
  for (int v : prefix) {
    z += v;
    if (z < d1 || z > d2) valid = false;
  }

  const long long lo = std::min(d1, z);
  const long long hi = std::max(d2, z);
  const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::vector<BigCount>> columns;
  std::vector<BigCount> cur(width, 0);
  if (valid) cur[static_cast<std::size_t>(z - lo)] = 1;

  auto in_band = [&](const std::vector<BigCount>& col) {
    std::vector<BigCount> out(band, 0);
    for (long long j = d1; j <= d2; ++j) out[static_cast<std::size_t>(j - d1)] = col[static_cast<std::size_t>(j - lo)];
    return out;
  };
  columns.push_back(in_band(cur));
  for (int i = 1; i <= n - r; ++i) {
    std::vector<BigCount> next(width, 0);
    for (long long k = lo; k <= hi; ++k) {
      const BigCount& c = cur[static_cast<std::size_t>(k - lo)];
      if (c == 0) continue;
      for (int a : letters) {
        const long long t = k + a;
        if (t >= d1 && t <= d2) next[static_cast<std::size_t>(t - lo)] += c;
      }
    }
    cur = std::move(next);
    columns.push_back(in_band(cur));
  }
  return columns;
}

inline BigCount sum_tabulation_count(std::span<const int> prefix, long long d1, long long d2,
                                 long long alpha, long long beta, int n,
                                 const std::vector<int>& letters) {
  const auto columns = sum_tabulation_columns(prefix, d1, d2, n, letters);
  const auto& last = columns.back();
  BigCount total = 0;
  for (long long j = std::max(alpha, d1); j <= std::min(beta, d2); ++j) {
    total += last[static_cast<std::size_t>(j - d1)];
  }
  return total;
}

// ---------------------------------------------------------------------------
// Tabular counting, binary sliding-window constraints.
//
// States are l-symbol windows over {pad, 0, 1}; the pad stands in for letters
// before the start of the word, so short prefixes still have a window. A
// window is encoded base 3 with digit 0 = pad.

namespace detail {

inline std::size_t checked_pow(std::size_t base, int exp) {
  std::size_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > (std::size_t{1} << 22) / base) throw TooLarge("state table is out of reach");
    v *= base;
  }
  return v;
}

inline std::vector<int> window_digits(std::size_t code, int len, std::size_t radix) {
  std::vector<int> digits(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<int>(code % radix);
    code /= radix;
  }
  return digits;
}

inline std::size_t window_code(const std::vector<int>& digits, std::size_t radix) {
  std::size_t code = 0;
  for (int d : digits) code = code * radix + static_cast<std::size_t>(d);
  return code;
}

}  // namespace detail

/// Window-band completion count via a direct table over padded l-letter
/// windows, one-sided append guards. Exact when the seed prefix could arise
/// on the walk itself: full windows inside the prefix in band, and a prefix
/// shorter than l still able to meet the band, alpha - (l - r) <= weight <=
/// beta. Seeds outside that domain yield unspecified counts.
inline BigCount window_tabulation_count(std::span<const int> prefix, int l, long long alpha,
                                 long long beta, int n) {
  if (l < 1) throw IndexError("window must be positive");
  const int r = static_cast<int>(prefix.size());
  if (r > n) throw IndexError("prefix longer than the word length");
  for (int v : prefix) {
    if (v != 0 && v != 1) throw UnknownLetter("this counter is defined for {0,1} only");
  }
  for (int i = 0; i + l <= r; ++i) {
    long long weight = 0;
    for (int k = 0; k < l; ++k) weight += prefix[static_cast<std::size_t>(i + k)];
    if (weight < alpha || weight > beta) return 0;
  }

  const std::size_t cells = detail::checked_pow(3, l);
  // digits: 0 = pad, 1 = bit 0, 2 = bit 1
  std::vector<int> start(static_cast<std::size_t>(l), 0);
  for (int i = 0; i < std::min(l, r); ++i) {
    start[static_cast<std::size_t>(l - 1 - i)] = prefix[static_cast<std::size_t>(r - 1 - i)] + 1;
  }
  std::vector<BigCount> cur(cells, 0);
  cur[detail::window_code(start, 3)] = 1;

  for (int i = 1; i <= n - r; ++i) {
    std::vector<BigCount> next(cells, 0);
    for (std::size_t code = 0; code < cells; ++code) {
      const BigCount& c = cur[code];
      if (c == 0) continue;
      std::vector<int> u = detail::window_digits(code, l, 3);
      std::vector<int> shifted(u.begin() + 1, u.end());
      long long weight = 0, pads = 0;
      for (int d : shifted) {
        if (d == 0) ++pads;
        if (d == 2) ++weight;
      }
      shifted.push_back(1);  // append bit 0
      if (weight >= alpha - pads) next[detail::window_code(shifted, 3)] += c;
      shifted.back() = 2;  // append bit 1
      if (weight + 1 <= beta) next[detail::window_code(shifted, 3)] += c;
    }
    cur = std::move(next);
  }
  // Padded windows still hold live counts whenever fewer than l real letters
  // ever entered the window, so the final total sums every state.
  BigCount total = 0;
  for (const BigCount& c : cur) total += c;
  return total;
}

// ---------------------------------------------------------------------------
// Tabular counting, forbidden-word constraints.
//
// States are the last mu letters (pad included), encoded base m+1 with digit
// 0 = pad; a transition is barred when it completes any forbidden word.

inline BigCount taboo_tabulation_count(std::span<const int> prefix,
                                 const std::vector<std::vector<int>>& forbidden, int n,
                                 const std::vector<int>& letters) {
  const int r = static_cast<int>(prefix.size());
  if (r > n) throw IndexError("prefix longer than the word length");
  const Alphabet alphabet(letters);
  for (int v : prefix) alphabet.index_of(v);
  int mu = 0;
  for (const auto& v : forbidden) mu = std::max(mu, static_cast<int>(v.size()));
  for (const auto& v : forbidden) {
    const int lv = static_cast<int>(v.size());
    for (int i = 0; i + lv <= r; ++i) {
      if (std::equal(v.begin(), v.end(), prefix.begin() + i)) return 0;
    }
  }

  const std::size_t radix = static_cast<std::size_t>(alphabet.size()) + 1;
  const std::size_t cells = detail::checked_pow(radix, mu);
  std::vector<int> start(static_cast<std::size_t>(mu), 0);
  for (int i = 0; i < std::min(mu, r); ++i) {
    start[static_cast<std::size_t>(mu - 1 - i)] =
        alphabet.index_of(prefix[static_cast<std::size_t>(r - 1 - i)]) + 1;
  }
  std::vector<BigCount> cur(cells, 0);
  cur[detail::window_code(start, radix)] = 1;

  auto completes_forbidden = [&](const std::vector<int>& w) {
    for (const auto& v : forbidden) {
      const int lv = static_cast<int>(v.size());
      bool match = true;
      for (int k = 0; k < lv && match; ++k) {
        const int d = w[static_cast<std::size_t>(mu - lv + k)];
        if (d == 0 || alphabet.letter(d - 1) != v[static_cast<std::size_t>(k)]) match = false;
      }
      if (match) return true;
    }
    return false;
  };

  for (int i = 1; i <= n - r; ++i) {
    std::vector<BigCount> next(cells, 0);
    for (std::size_t code = 0; code < cells; ++code) {
      const BigCount& c = cur[code];
      if (c == 0) continue;
      std::vector<int> u = detail::window_digits(code, mu, radix);
      // extend with real letters only; a pad is never written, it only
      // stands in for positions before the start
      for (int ai = 0; ai < alphabet.size(); ++ai) {
        std::vector<int> w(u.begin() + (mu > 0 ? 1 : 0), u.end());
        if (mu > 0) w.push_back(ai + 1);
        if (!completes_forbidden(w)) next[detail::window_code(w, radix)] += c;
      }
    }
    cur = std::move(next);
  }
  BigCount total = 0;
  for (const BigCount& c : cur) total += c;  // padded states count, as above
  return total;
}

// ---------------------------------------------------------------------------
// Tabular counting, running sums and forbidden words jointly: the state is a
// (sum, window) pair and a transition must pass both admissibility checks.

inline BigCount joint_tabulation_count(std::span<const int> prefix, long long d1, long long d2,
                                 long long alpha, long long beta,
                                 const std::vector<std::vector<int>>& forbidden, int n,
                                 const std::vector<int>& letters) {
  const int r = static_cast<int>(prefix.size());
  if (r > n) throw IndexError("prefix longer than the word length");
  if (d2 < d1) throw IndexError("empty sum band");
  const Alphabet alphabet(letters);
  for (int v : prefix) alphabet.index_of(v);
  int mu = 0;
  for (const auto& v : forbidden) mu = std::max(mu, static_cast<int>(v.size()));

  long long z = 0;
  for (int v : prefix) {
    z += v;
    if (z < d1 || z > d2) return 0;
  }
  for (const auto& v : forbidden) {
    const int lv = static_cast<int>(v.size());
    for (int i = 0; i + lv <= r; ++i) {
      if (std::equal(v.begin(), v.end(), prefix.begin() + i)) return 0;
    }
  }

  const long long lo = std::min(d1, z);
  const long long hi = std::max(d2, z);
  const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
  const std::size_t radix = static_cast<std::size_t>(alphabet.size()) + 1;
  const std::size_t cells = detail::checked_pow(radix, mu);
  if (width > (std::size_t{1} << 22) / cells) throw TooLarge("state table is out of reach");

  std::vector<int> start(static_cast<std::size_t>(mu), 0);
  for (int i = 0; i < std::min(mu, r); ++i) {
    start[static_cast<std::size_t>(mu - 1 - i)] =
        alphabet.index_of(prefix[static_cast<std::size_t>(r - 1 - i)]) + 1;
  }
  std::vector<std::vector<BigCount>> cur(width, std::vector<BigCount>(cells, 0));
  cur[static_cast<std::size_t>(z - lo)][detail::window_code(start, radix)] = 1;

  auto completes_forbidden = [&](const std::vector<int>& w) {
    for (const auto& v : forbidden) {
      const int lv = static_cast<int>(v.size());
      bool match = true;
      for (int k = 0; k < lv && match; ++k) {
        const int d = w[static_cast<std::size_t>(mu - lv + k)];
        if (d == 0 || alphabet.letter(d - 1) != v[static_cast<std::size_t>(k)]) match = false;
      }
      if (match) return true;
    }
    return false;
  };

  for (int i = 1; i <= n - r; ++i) {
    std::vector<std::vector<BigCount>> next(width, std::vector<BigCount>(cells, 0));
    for (long long j = lo; j <= hi; ++j) {
      for (std::size_t code = 0; code < cells; ++code) {
        const BigCount& c = cur[static_cast<std::size_t>(j - lo)][code];
        if (c == 0) continue;
        std::vector<int> u = detail::window_digits(code, mu, radix);
        for (int ai = 0; ai < alphabet.size(); ++ai) {
          const long long t = j + alphabet.letter(ai);
          if (t < d1 || t > d2) continue;
          std::vector<int> w(u.begin() + (mu > 0 ? 1 : 0), u.end());
          if (mu > 0) w.push_back(ai + 1);
          if (completes_forbidden(w)) continue;
          next[static_cast<std::size_t>(t - lo)][detail::window_code(w, radix)] += c;
        }
      }
    }
    cur = std::move(next);
  }
  BigCount total = 0;
  for (long long j = std::max(alpha, d1); j <= std::min(beta, d2); ++j) {
    for (const BigCount& c : cur[static_cast<std::size_t>(j - lo)]) total += c;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Binomial ranking of constant-weight binary words: closed form, no tables.

inline BigCount binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  BigCount result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

/// Lexicographic rank of a binary word among all words of its length with
/// exactly nu ones: each 1 at (1-based) position p contributes
/// C(n-p, ones remaining from p on).
inline BigCount binomial_rank(std::span<const int> word, int nu) {
  long long weight = 0;
  for (int v : word) {
    if (v != 0 && v != 1) throw UnknownLetter("binomial ranking is defined for {0,1} only");
    weight += v;
  }
  if (weight != nu) {
    throw WeightMismatch("word weight " + std::to_string(weight) + " is not " +
                         std::to_string(nu));
  }
  const long long n = static_cast<long long>(word.size());
  BigCount r = 0;
  long long remaining = nu;
  for (long long p = 1; p <= n; ++p) {
    if (word[static_cast<std::size_t>(p - 1)] == 1) {
      r += binomial(n - p, remaining);
      --remaining;
    }
  }
  return r;
}

}  // namespace ccodec::oracle
