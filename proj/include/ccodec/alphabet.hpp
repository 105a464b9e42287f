#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"

namespace ccodec {

/// Ordered letter set. The declared order is the ranking ("<") order used
/// everywhere: lexicographic comparisons, rank/unrank, enumeration.
class Alphabet {
 public:
  explicit Alphabet(std::vector<int> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw SpecError("alphabet: must be nonempty");
    for (int i = 0; i < static_cast<int>(letters_.size()); ++i) {
      auto [it, fresh] = index_.emplace(letters_[i], i);
      if (!fresh) {
        throw SpecError("alphabet: duplicate letter " + std::to_string(letters_[i]));
      }
    }
  }

  int size() const { return static_cast<int>(letters_.size()); }

  int letter(int index) const { return letters_[static_cast<std::size_t>(index)]; }

  bool contains(int letter) const { return index_.count(letter) != 0; }

  int index_of(int letter) const {
    auto it = index_.find(letter);
    if (it == index_.end()) {
      throw UnknownLetter("letter " + std::to_string(letter) + " is not in the alphabet");
    }
    return it->second;
  }

  const std::vector<int>& letters() const { return letters_; }

  bool all_nonnegative() const {
    return std::all_of(letters_.begin(), letters_.end(), [](int v) { return v >= 0; });
  }

  int max_letter() const { return *std::max_element(letters_.begin(), letters_.end()); }
  int min_letter() const { return *std::min_element(letters_.begin(), letters_.end()); }

  std::vector<int> to_indices(std::span<const int> word) const {
    std::vector<int> out;
    out.reserve(word.size());
    for (int v : word) out.push_back(index_of(v));
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.letters_ == b.letters_;
  }

 private:
  std::vector<int> letters_;
  std::unordered_map<int, int> index_;
};

}  // namespace ccodec
