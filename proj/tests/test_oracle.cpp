#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include <ccodec/automaton.hpp>
#include <ccodec/codec.hpp>
#include <ccodec/counting.hpp>
#include <ccodec/oracle.hpp>
#include <ccodec/spec.hpp>

using namespace ccodec;

namespace {

ValidatedSpec make_spec(std::vector<int> alphabet, int n, std::vector<Constraint> cons) {
  ConstraintSpec spec;
  spec.alphabet = std::move(alphabet);
  spec.length = n;
  spec.constraints = std::move(cons);
  return validate(spec);
}

const std::vector<int> kPm1{-1, 1};

}  // namespace

TEST_CASE("sum tabulation reproduces the worked columns", "[oracle]") {
  const std::vector<int> prefix{1, -1, 1};
  const auto columns = oracle::sum_tabulation_columns(prefix, 0, 3, 6, kPm1);
  REQUIRE(columns.size() == 4);
  CHECK(columns[0] == std::vector<BigCount>{0, 1, 0, 0});
  CHECK(columns[1] == std::vector<BigCount>{1, 0, 1, 0});
  CHECK(columns[2] == std::vector<BigCount>{0, 2, 0, 1});
  CHECK(columns[3] == std::vector<BigCount>{2, 0, 3, 0});
  CHECK(oracle::sum_tabulation_count(prefix, 0, 3, 0, 2, 6, kPm1) == 5);
}

TEST_CASE("sum tabulation counts the whole language from the empty prefix", "[oracle]") {
  CHECK(oracle::sum_tabulation_count(std::vector<int>{}, 0, 3, 0, 2, 6, kPm1) == 13);
  // the walk starts at 0 even when the band starts higher
  CHECK(oracle::sum_tabulation_count(std::vector<int>{}, 1, 4, 2, 3, 8, {0, 1}) > 0);
}

TEST_CASE("sum tabulation returns zero for prefixes that left the band", "[oracle]") {
  const std::vector<int> dead{-1};
  CHECK(oracle::sum_tabulation_count(dead, 0, 3, 0, 2, 6, kPm1) == 0);
  for (const auto& column : oracle::sum_tabulation_columns(dead, 0, 3, 6, kPm1)) {
    CHECK(column == std::vector<BigCount>{0, 0, 0, 0});
  }
}

TEST_CASE("window tabulation matches hand counts", "[oracle]") {
  // length 3, window 2, weight in [1,2]: exactly the words without 00
  CHECK(oracle::window_tabulation_count(std::vector<int>{}, 2, 1, 2, 3) == 5);
  CHECK(oracle::window_tabulation_count(std::vector<int>{1}, 2, 1, 2, 3) == 3);
  CHECK(oracle::window_tabulation_count(std::vector<int>{0}, 2, 1, 2, 3) == 2);
  CHECK(oracle::window_tabulation_count(std::vector<int>{0, 0}, 2, 1, 2, 3) == 0);
  CHECK(oracle::window_tabulation_count(std::vector<int>{1, 1, 1}, 2, 1, 2, 3) == 1);
}

TEST_CASE("a window wider than the word constrains nothing", "[oracle]") {
  CHECK(oracle::window_tabulation_count(std::vector<int>{}, 5, 0, 5, 3) == 8);
  CHECK(oracle::window_tabulation_count(std::vector<int>{1, 0}, 5, 0, 5, 3) == 2);
}

TEST_CASE("taboo tabulation matches the four-word language", "[oracle]") {
  const std::vector<std::vector<int>> taboo{{0, 0}, {1, 1, 1}};
  CHECK(oracle::taboo_tabulation_count(std::vector<int>{}, taboo, 3, {0, 1}) == 4);
  CHECK(oracle::taboo_tabulation_count(std::vector<int>{0}, taboo, 3, {0, 1}) == 2);
  CHECK(oracle::taboo_tabulation_count(std::vector<int>{1, 1}, taboo, 3, {0, 1}) == 1);
  CHECK(oracle::taboo_tabulation_count(std::vector<int>{0, 0}, taboo, 3, {0, 1}) == 0);
}

TEST_CASE("joint tabulation degenerates to the pure sum count", "[oracle]") {
  const std::vector<int> prefix{1, -1, 1};
  CHECK(oracle::joint_tabulation_count(prefix, 0, 3, 0, 2, {}, 6, kPm1) == 5);
  CHECK(oracle::joint_tabulation_count(std::vector<int>{}, 0, 3, 0, 2, {}, 6, kPm1) == 13);
}

TEST_CASE("joint tabulation agrees with enumeration on a real intersection", "[oracle]") {
  const std::vector<std::vector<int>> taboo{{1, 1, 1}};
  const auto vs = make_spec({-1, 1}, 8,
                            {RunningSumSpec{0, 3, 0, 2}, ForbiddenWordsSpec{taboo}});
  const auto language = oracle::enumerate_language(vs);
  CHECK(oracle::joint_tabulation_count(std::vector<int>{}, 0, 3, 0, 2, taboo, 8, kPm1) ==
        BigCount(language.size()));
  for (const std::vector<int> prefix : {std::vector<int>{1}, {1, 1}, {1, -1, 1, 1}}) {
    CHECK(oracle::joint_tabulation_count(prefix, 0, 3, 0, 2, taboo, 8, kPm1) ==
          oracle::brute_prefix_count(language, prefix));
  }
}

TEST_CASE("enumeration is declarative, ordered and guarded", "[oracle]") {
  const auto rll = make_spec({0, 1}, 3, {ForbiddenWordsSpec{{{0, 0}, {1, 1, 1}}}});
  const auto language = oracle::enumerate_language(rll);
  const std::vector<std::vector<int>> expected{{0, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  CHECK(language == expected);

  for (const auto& word : language) CHECK(oracle::word_satisfies(rll, word));
  CHECK_FALSE(oracle::word_satisfies(rll, std::vector<int>{0, 0, 1}));
  CHECK_FALSE(oracle::word_satisfies(rll, std::vector<int>{0, 1}));     // wrong length
  CHECK_FALSE(oracle::word_satisfies(rll, std::vector<int>{0, 2, 0}));  // foreign letter

  CHECK(oracle::brute_prefix_count(language, std::vector<int>{0}) == 2);
  CHECK(oracle::brute_prefix_count(language, std::vector<int>{1, 1}) == 1);

  const auto huge = make_spec({0, 1}, 30, {});
  CHECK_THROWS_AS(oracle::enumerate_language(huge), TooLarge);
}

TEST_CASE("subblock membership needs a whole number of blocks", "[oracle]") {
  const auto vs = make_spec({0, 1}, 4, {SubblockWeightSpec{2, 1, 1}});
  CHECK(oracle::word_satisfies(vs, std::vector<int>{0, 1, 1, 0}));
  CHECK_FALSE(oracle::word_satisfies(vs, std::vector<int>{0, 1, 1, 1}));
  const auto ragged = make_spec({0, 1}, 5, {SubblockWeightSpec{2, 1, 1}});
  CHECK_FALSE(oracle::word_satisfies(ragged, std::vector<int>{0, 1, 1, 0, 1}));
}

TEST_CASE("binomial coefficients are exact", "[oracle]") {
  CHECK(oracle::binomial(8, 3) == 56);
  CHECK(oracle::binomial(4, 2) == 6);
  CHECK(oracle::binomial(10, 0) == 1);
  CHECK(oracle::binomial(3, 5) == 0);
  CHECK(oracle::binomial(3, -1) == 0);
  CHECK(oracle::binomial(52, 5) == 2598960);
  CHECK(oracle::binomial(100, 50) == parse_decimal("100891344545564193334812497256"));
}

TEST_CASE("binomial ranking matches the lexicographic order", "[oracle]") {
  CHECK(oracle::binomial_rank(std::vector<int>{0, 0, 1, 1}, 2) == 0);
  CHECK(oracle::binomial_rank(std::vector<int>{1, 0, 0, 1}, 2) == 3);
  CHECK(oracle::binomial_rank(std::vector<int>{1, 1, 0, 0}, 2) == 5);
  CHECK_THROWS_AS(oracle::binomial_rank(std::vector<int>{1, 1, 0, 0}, 3), WeightMismatch);
  CHECK_THROWS_AS(oracle::binomial_rank(std::vector<int>{1, 2, 0, 0}, 3), UnknownLetter);
}

TEST_CASE("automaton ranking agrees with binomial ranking on fixed weight", "[oracle]") {
  const auto vs = make_spec({0, 1}, 8, {RunningSumSpec{0, 8, 3, 3}});
  const Automaton aut = compile(vs);
  const CountTable table = build_count_table(aut, vs);
  CHECK(cardinality(table) == oracle::binomial(8, 3));
  const auto language = oracle::enumerate_language(vs);
  REQUIRE(language.size() == 56);
  for (const auto& word : language) {
    CHECK(rank(table, aut, word) == oracle::binomial_rank(word, 3));
  }
}
