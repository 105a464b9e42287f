// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failures. Each criterion is independent; a thrown Failure carries the
// reason onto its line.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <ccodec/ccodec.hpp>

using namespace ccodec;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

ValidatedSpec make(std::vector<int> alphabet, int length, std::vector<Constraint> constraints) {
  return validate(ConstraintSpec{std::move(alphabet), length, std::move(constraints)});
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

/// Peak resident size of this process in kilobytes, or 0 when unavailable.
long long vm_peak_kb() {
#ifdef __linux__
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmPeak:", 0) == 0) {
      std::istringstream fields(line.substr(7));
      long long kb = 0;
      fields >> kb;
      return kb;
    }
  }
#endif
  return 0;
}

// 1. Worked band-walk example: A={-1,+1}, n=6, prefix sums in [0,3], final
//    sum in [0,2]. The count below the prefix +1,-1,+1 is 5, and the
//    tabulation oracle reproduces the four hand-checked column vectors.
void criterion_band_walk() {
  const auto vs = make({-1, 1}, 6, {RunningSumSpec{0, 3, 0, 2}});
  const Automaton aut = compile(vs);
  const CountTable table = build_count_table(aut, vs);

  const std::vector<int> prefix{1, -1, 1};
  require(prefix_count(table, aut, prefix) == 5,
          "N(+1,-1,+1) != 5 generically");
  require(oracle::sum_tabulation_count(prefix, 0, 3, 0, 2, 6, {-1, 1}) == 5,
          "N(+1,-1,+1) != 5 through the tabulation oracle");

  const auto columns = oracle::sum_tabulation_columns(prefix, 0, 3, 6, {-1, 1});
  const std::vector<std::vector<BigCount>> expected{
      {0, 1, 0, 0}, {1, 0, 1, 0}, {0, 2, 0, 1}, {2, 0, 3, 0}};
  require(columns == expected, "tabulation columns differ from the worked values");
}

// 2. Forbidden {00, 111} at n=3: the language is exactly {010, 011, 101,
//    110} and the four 2-bit payloads map bijectively onto it.
void criterion_rll_intro() {
  const auto vs = make({0, 1}, 3, {ForbiddenWordsSpec{{{0, 0}, {1, 1, 1}}}});
  const Automaton aut = compile(vs);
  const CountTable table = build_count_table(aut, vs);

  const std::vector<std::vector<int>> expected{{0, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  require(oracle::enumerate_language(vs) == expected, "language is not {010, 011, 101, 110}");
  require(cardinality(table) == 4, "cardinality != 4");
  require(payload_width(cardinality(table)).payload_bits == 2, "payload width != 2 bits");

  std::vector<std::vector<int>> images;
  for (int value = 0; value < 4; ++value) {
    const Bits payload{static_cast<std::uint8_t>(value >> 1),
                       static_cast<std::uint8_t>(value & 1)};
    const std::vector<int> word = encode_block(table, aut, payload);
    require(word == expected[value], "payload " + std::to_string(value) +
                                         " does not map to the word of equal rank");
    require(decode_block(table, aut, word) == payload,
            "decode_block does not invert encode_block");
    images.push_back(word);
  }
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      require(images[i] != images[j], "two payloads share a codeword");
}

// 3. Oracle equivalence: across the built-in grid (>= 20 specs covering all
//    four constraint types and products), the generic prefix count agrees
//    with every applicable tabulation oracle and with brute-force
//    enumeration, for every prefix.
void criterion_equivalence_grid() {
  const auto grid = selftest::equivalence_grid();
  require(grid.size() >= 20, "grid holds fewer than 20 specs");
  bool has_rs = false, has_sw = false, has_sb = false, has_fw = false, has_product = false;
  for (const auto& entry : grid) {
    if (entry.spec.constraints.size() > 1) has_product = true;
    for (const auto& c : entry.spec.constraints) {
      has_rs |= std::holds_alternative<RunningSumSpec>(c);
      has_sw |= std::holds_alternative<SlidingWindowSpec>(c);
      has_sb |= std::holds_alternative<SubblockWeightSpec>(c);
      has_fw |= std::holds_alternative<ForbiddenWordsSpec>(c);
    }
  }
  require(has_rs && has_sw && has_sb && has_fw && has_product,
          "grid misses a constraint type or a product");

  const auto report = selftest::run_equivalence_suite(10);
  require(report.failures.empty(),
          report.failures.empty() ? "" : "first mismatch: " + report.failures.front());
  require(report.entries_run >= 20, "fewer than 20 specs were exercised");
}

// 4. Bijectivity: on every grid spec, rank is the lexicographic index of
//    each word and unrank inverts it, checked exhaustively.
void criterion_bijectivity_grid() {
  const auto report = selftest::run_bijectivity_suite(12);
  require(report.failures.empty(),
          report.failures.empty() ? "" : "first mismatch: " + report.failures.front());
  require(report.entries_run >= 20, "fewer than 20 specs were exercised");
}

// 5. Fixed-weight words: for every n <= 12 and every weight v, the generic
//    rank over the weight-v language equals the classical binomial ranking,
//    and the cardinality is C(n, v).
void criterion_fixed_weight() {
  for (int n = 1; n <= 12; ++n) {
    for (int v = 0; v <= n; ++v) {
      const auto vs = make({0, 1}, n, {RunningSumSpec{0, n, v, v}});
      const Automaton aut = compile(vs);
      const CountTable table = build_count_table(aut, vs);
      require(cardinality(table) == oracle::binomial(n, v),
              "cardinality != C(" + std::to_string(n) + ", " + std::to_string(v) + ")");
      for (const auto& word : oracle::enumerate_language(vs)) {
        require(rank(table, aut, word) == oracle::binomial_rank(word, v),
                "rank mismatch at n=" + std::to_string(n) + " v=" + std::to_string(v));
      }
    }
  }
}

// 6. Combined constraints at desk scale: A={-1,+1}, n=18, prefix sums in
//    [-8,8], final sum in [0,6], taboo words {-1,-1,+1,+1} and
//    {-1,+1,-1,+1,-1}. Cardinality and every word's rank match brute force
//    over all 2^18 candidates.
void criterion_combined_example() {
  const auto vs = make({-1, 1}, 18,
                       {RunningSumSpec{-8, 8, 0, 6},
                        ForbiddenWordsSpec{{{-1, -1, 1, 1}, {-1, 1, -1, 1, -1}}}});
  const Automaton aut = compile(vs);
  const CountTable table = build_count_table(aut, vs);

  const auto language = oracle::enumerate_language(vs);  // scans all 2^18 candidates
  require(!language.empty(), "brute force found no admissible words");
  require(cardinality(table) == static_cast<long long>(language.size()),
          "cardinality differs from brute force");
  BigCount index = 0;
  for (const auto& word : language) {
    require(rank(table, aut, word) == index, "rank differs from the enumeration index");
    ++index;
  }
}

// 7. Per-block weight bands factor: blocks are independent, so the language
//    size is the single-block count raised to the number of blocks.
void criterion_subblock_factorization() {
  for (int l = 2; l <= 4; ++l) {
    for (int m = 2; m <= 3; ++m) {
      for (const auto [alpha, beta] :
           std::vector<std::pair<long long, long long>>{{1, l - 1}, {0, 1}}) {
        const auto vs = make({0, 1}, l * m, {SubblockWeightSpec{l, alpha, beta}});
        const CountTable table = build_count_table(compile(vs), vs);
        BigCount per_block = 0;
        for (long long w = alpha; w <= beta; ++w) per_block += oracle::binomial(l, w);
        BigCount expected = 1;
        for (int i = 0; i < m; ++i) expected *= per_block;
        require(cardinality(table) == expected,
                "block count^m fails at l=" + std::to_string(l) + " m=" + std::to_string(m) +
                    " band [" + std::to_string(alpha) + "," + std::to_string(beta) + "]");
      }
    }
  }
}

// 8. Tight band: |T_n(-1,1,-1,1)| over {-1,+1} for n = 1..16 against brute
//    force. The tidy closed form 2^floor(n/2) sometimes quoted for this band
//    undercounts every odd length by half; the brute-force value, which
//    matches 2^ceil(n/2), is authoritative here.
void criterion_tight_band() {
  for (int n = 1; n <= 16; ++n) {
    const auto vs = make({-1, 1}, n, {RunningSumSpec{-1, 1, -1, 1}});
    const CountTable table = build_count_table(compile(vs), vs);
    const auto language = oracle::enumerate_language(vs);
    const BigCount closed_form = two_pow((n + 1) / 2);
    require(cardinality(table) == static_cast<long long>(language.size()),
            "cardinality differs from brute force at n=" + std::to_string(n));
    require(cardinality(table) == closed_form,
            "cardinality differs from 2^ceil(n/2) at n=" + std::to_string(n));
  }
}

// 9. Performance smoke: a width-64 band over {-1,+1} at n up to 4096 builds
//    its table and round-trips a block within 30 s and 1 GB, and the build
//    time grows no worse than cubically in n.
void criterion_performance() {
  double t512 = 0, t4096 = 0;
  for (const int n : {512, 1024, 2048, 4096}) {
    const auto vs = make({-1, 1}, n, {RunningSumSpec{0, 63, 0, 63}});
    const Automaton aut = compile(vs);
    const auto start = std::chrono::steady_clock::now();
    const CountTable table = build_count_table(aut, vs);
    const double elapsed = ms_since(start);
    if (n == 512) t512 = elapsed;
    if (n == 4096) t4096 = elapsed;
    require(cardinality(table) > 0, "width-64 band is empty at n=" + std::to_string(n));

    if (n == 4096) {
      const PayloadWidth w = payload_width(cardinality(table));
      require(w.payload_bits >= 4000, "payload width is implausibly small");
      Bits payload(static_cast<std::size_t>(w.payload_bits));
      for (std::size_t i = 0; i < payload.size(); ++i) payload[i] = (i % 3 == 0) ? 1 : 0;
      const std::vector<int> word = encode_block(table, aut, payload);
      require(decode_block(table, aut, word) == payload,
              "round trip failed at n=4096");
    }
  }
  const long long peak_kb = vm_peak_kb();
  require(peak_kb == 0 || peak_kb < 1024 * 1024,
          "peak memory " + std::to_string(peak_kb) + " kB exceeds 1 GB");
  // 8x the length may cost at most 8^3 = 512x the time; a 10 ms floor and a
  // 2x fudge absorb clock noise on the small end.
  const double allowance = 512.0 * std::max(t512, 10.0) * 2.0;
  require(t4096 <= allowance, "build time scaled worse than cubically: t(512)=" +
                                  std::to_string(t512) + " ms, t(4096)=" +
                                  std::to_string(t4096) + " ms");
}

struct Criterion {
  int id;
  const char* label;
  double budget_ms;  // 0 = untimed
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "band-walk worked example: N(+1,-1,+1)=5 and the tabulation columns", 1000,
       criterion_band_walk},
      {2, "forbidden {00,111} at n=3: exact language and 2-bit block bijection", 1000,
       criterion_rll_intro},
      {3, "oracle equivalence grid: every prefix count agrees everywhere", 60000,
       criterion_equivalence_grid},
      {4, "bijectivity grid: rank is the lexicographic index, unrank inverts it", 0,
       criterion_bijectivity_grid},
      {5, "fixed-weight languages: rank equals binomial ranking, size is C(n,v)", 0,
       criterion_fixed_weight},
      {6, "combined band plus taboos at n=18: matches brute force over 2^18", 30000,
       criterion_combined_example},
      {7, "per-block weight bands: cardinality is the block count to the m-th power", 0,
       criterion_subblock_factorization},
      {8, "tight band n=1..16: brute force confirms 2^ceil(n/2)", 0, criterion_tight_band},
      {9, "width-64 band at n=4096: table, round trip, memory, cubic scaling", 30000,
       criterion_performance},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string verdict = "pass";
    std::string detail;
    try {
      criterion.body();
    } catch (const Failure& f) {
      verdict = "FAIL";
      detail = f.what();
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = std::string("unexpected error: ") + e.what();
    }
    const double elapsed = ms_since(start);
    if (verdict == "pass" && criterion.budget_ms > 0 && elapsed > criterion.budget_ms) {
      verdict = "FAIL";
      detail = "exceeded the " + std::to_string(static_cast<int>(criterion.budget_ms / 1000)) +
               " s budget";
    }
    if (verdict == "FAIL") ++failures;
    std::cout << verdict << " " << criterion.id << ": " << criterion.label << " ("
              << static_cast<long long>(elapsed) << " ms)";
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << '\n';
  }
  return failures;
}
