#pragma once

#include <algorithm>
#include <variant>
#include <vector>

namespace ccodec {

/// Every prefix sum x_1+..+x_k must stay in [min_prefix, max_prefix] and the
/// final sum in [min_final, max_final]. Only prefixes k >= 1 are constrained;
/// the walk always starts at 0, even when 0 lies outside the prefix band.
struct RunningSumSpec {
  long long min_prefix = 0;
  long long max_prefix = 0;
  long long min_final = 0;
  long long max_final = 0;

  friend bool operator==(const RunningSumSpec&, const RunningSumSpec&) = default;
};

/// Every window of `window` consecutive letters has weight (sum of letter
/// values) in [min_weight, max_weight]. Words shorter than the window are
/// unconstrained. Requires a nonnegative alphabet.
struct SlidingWindowSpec {
  int window = 1;
  long long min_weight = 0;
  long long max_weight = 0;

  friend bool operator==(const SlidingWindowSpec&, const SlidingWindowSpec&) = default;
};

/// The word is split into consecutive blocks of `block` letters; each block's
/// weight must lie in [min_weight, max_weight]. The codeword length must be a
/// multiple of `block` (checked at compile). Requires a nonnegative alphabet.
struct SubblockWeightSpec {
  int block = 1;
  long long min_weight = 0;
  long long max_weight = 0;

  friend bool operator==(const SubblockWeightSpec&, const SubblockWeightSpec&) = default;
};

/// No word of `words` may occur as a substring.
struct ForbiddenWordsSpec {
  std::vector<std::vector<int>> words;

  friend bool operator==(const ForbiddenWordsSpec&, const ForbiddenWordsSpec&) = default;
};

/// Longest forbidden word; 0 for an empty set.
inline int forbidden_mu(const ForbiddenWordsSpec& fw) {
  int mu = 0;
  for (const auto& w : fw.words) mu = std::max<int>(mu, static_cast<int>(w.size()));
  return mu;
}

using Constraint =
    std::variant<RunningSumSpec, SlidingWindowSpec, SubblockWeightSpec, ForbiddenWordsSpec>;

/// A list of constraints is their conjunction; an empty list is the free
/// language A^n. Plain parsed data; see validate() for the checked form.
struct ConstraintSpec {
  std::vector<int> alphabet;
  int length = 0;
  std::vector<Constraint> constraints;

  friend bool operator==(const ConstraintSpec&, const ConstraintSpec&) = default;
};

}  // namespace ccodec
