#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "automaton.hpp"
#include "codec.hpp"
#include "counting.hpp"
#include "errors.hpp"
#include "selftest.hpp"
#include "spec.hpp"

namespace ccodec::cli {

namespace detail {

inline std::string read_file(const std::string& path, const std::string& what) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SpecError("cannot read " + what + " file: " + path);
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

inline std::optional<std::vector<int>> parse_letter_csv(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  if (text.empty()) return out;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string token = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    const std::size_t begin = token.find_first_not_of(" \t");
    if (begin == std::string::npos) return std::nullopt;
    const std::size_t end = token.find_last_not_of(" \t");
    token = token.substr(begin, end - begin + 1);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(token, &used);
      if (used != token.size() || v < -2147483648LL || v > 2147483647LL) return std::nullopt;
      out.push_back(static_cast<int>(v));
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline std::string letters_csv(const std::vector<int>& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(word[i]);
  }
  return out;
}

inline std::optional<std::vector<std::uint8_t>> parse_hex(const std::string& text) {
  if (text.size() % 2 != 0) return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::vector<std::uint8_t> bytes;
  for (std::size_t i = 0; i < text.size(); i += 2) {
    const int hi = nibble(text[i]);
    const int lo = nibble(text[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
  }
  return bytes;
}

inline std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  static const char digits[] = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 0xf];
  }
  return out;
}

/// Loads the cached count table when it matches the spec; otherwise builds
/// one and, when a cache path was given, saves it there. A stale or damaged
/// cache is replaced, not fatal.
inline CountTable obtain_table(const ValidatedSpec& vs, const Automaton& aut,
                               const std::string& table_path, std::ostream& err) {
  if (table_path.empty()) return build_count_table(aut, vs);
  {
    std::ifstream f(table_path, std::ios::binary);
    if (f) {
      const std::string text{std::istreambuf_iterator<char>(f),
                             std::istreambuf_iterator<char>()};
      try {
        const std::uint64_t fp = vs.fingerprint();
        CountTable table = deserialize_table(text, &fp);
        if (table.n != vs.length() ||
            table.layers[0].size() != static_cast<std::size_t>(aut.num_states())) {
          throw FormatError("table shape does not match the compiled automaton");
        }
        return table;
      } catch (const Error& e) {
        err << "warning: rebuilding count table, cache at " << table_path
            << " is unusable: " << e.what() << '\n';
      }
    }
  }
  CountTable table = build_count_table(aut, vs);
  std::ofstream o(table_path, std::ios::binary | std::ios::trunc);
  if (o) {
    write_table(table, o);
  } else {
    err << "warning: cannot write count table cache to " << table_path << '\n';
  }
  return table;
}

}  // namespace detail

/// Runs the command-line tool against explicit streams. Returns the process
/// exit code: 0 success, 1 usage, 2 spec problems, 3 words or ranks outside
/// the language, 4 malformed or mismatched serialized artifacts, 5 failed
/// self-checks.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"constrained-sequence codec: compile letter constraints, count, rank, encode"};
  app.require_subcommand(1);

  std::string spec_path, table_path, prefix_csv, word_csv, rank_text;
  std::string in_path, hex_text, out_path;
  long long limit = -1;
  int max_n = 10;

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "constraint spec JSON file")->required();
  };
  auto add_table = [&](CLI::App* sub) {
    sub->add_option("--table", table_path, "count table cache file (loaded when fresh, else rebuilt and saved)");
  };

  CLI::App* count_cmd = app.add_subcommand("count", "count admissible words, whole language or below a prefix");
  add_spec(count_cmd);
  add_table(count_cmd);
  count_cmd->add_option("--prefix", prefix_csv, "comma-separated letters to count below");

  CLI::App* info_cmd = app.add_subcommand("info", "language size, payload widths, automaton size");
  add_spec(info_cmd);
  add_table(info_cmd);

  CLI::App* rank_cmd = app.add_subcommand("rank", "position of a word in the language's order");
  add_spec(rank_cmd);
  add_table(rank_cmd);
  rank_cmd->add_option("--word", word_csv, "comma-separated letters")->required();

  CLI::App* unrank_cmd = app.add_subcommand("unrank", "word at a given position");
  add_spec(unrank_cmd);
  add_table(unrank_cmd);
  unrank_cmd->add_option("--rank", rank_text, "position, decimal")->required();

  CLI::App* encode_cmd = app.add_subcommand("encode", "pack payload bytes into codewords");
  add_spec(encode_cmd);
  add_table(encode_cmd);
  encode_cmd->add_option("--in", in_path, "payload file");
  encode_cmd->add_option("--hex", hex_text, "payload as a hex string");
  encode_cmd->add_option("--out", out_path, "container output file")->required();

  CLI::App* decode_cmd = app.add_subcommand("decode", "unpack codewords back into payload bytes");
  add_spec(decode_cmd);
  add_table(decode_cmd);
  decode_cmd->add_option("--in", in_path, "container file")->required();
  decode_cmd->add_option("--out", out_path, "payload output file (hex to stdout when absent)");

  CLI::App* enumerate_cmd = app.add_subcommand("enumerate", "list the language in order");
  add_spec(enumerate_cmd);
  add_table(enumerate_cmd);
  enumerate_cmd->add_option("--limit", limit, "stop after this many words");

  CLI::App* dump_cmd = app.add_subcommand("dump-automaton", "print the compiled automaton");
  add_spec(dump_cmd);

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "cross-check the counting and coding paths");
  selftest_cmd->add_option("--max-n", max_n, "skip built-in checks longer than this");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ccodec");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (selftest_cmd->parsed()) {
      const auto equivalence = selftest::run_equivalence_suite(max_n);
      out << "equivalence: " << equivalence.entries_run << " specs, " << equivalence.checks
          << " checks\n";
      const auto bijectivity = selftest::run_bijectivity_suite(max_n);
      out << "bijectivity: " << bijectivity.entries_run << " specs, " << bijectivity.checks
          << " checks\n";
      for (const auto& f : equivalence.failures) err << "mismatch: " << f << '\n';
      for (const auto& f : bijectivity.failures) err << "mismatch: " << f << '\n';
      if (!equivalence.ok() || !bijectivity.ok()) return 5;
      out << "all checks passed\n";
      return 0;
    }

    const ValidatedSpec vs = validate(parse_spec(detail::read_file(spec_path, "spec")));
    const Automaton aut = compile(vs);

    if (dump_cmd->parsed()) {
      aut.dump(out);
      return 0;
    }

    const CountTable table = detail::obtain_table(vs, aut, table_path, err);

    if (count_cmd->parsed()) {
      if (count_cmd->count("--prefix") > 0) {
        const auto prefix = detail::parse_letter_csv(prefix_csv);
        if (!prefix) {
          err << "error: --prefix must be comma-separated integers\n";
          return 1;
        }
        if (static_cast<int>(prefix->size()) > vs.length()) {
          err << "error: --prefix is longer than the word length " << vs.length() << '\n';
          return 1;
        }
        out << prefix_count(table, aut, *prefix) << '\n';
      } else {
        out << cardinality(table) << '\n';
      }
      return 0;
    }

    if (info_cmd->parsed()) {
      const BigCount size = cardinality(table);
      const PayloadWidth w = payload_width(size);  // empty language refuses here
      out << "size " << size << '\n';
      out << "payload_width " << w.payload_bits << '\n';
      out << "rank_width " << w.rank_width << '\n';
      out << "states " << aut.num_states() << '\n';
      return 0;
    }

    if (rank_cmd->parsed()) {
      const auto word = detail::parse_letter_csv(word_csv);
      if (!word) {
        err << "error: --word must be comma-separated integers\n";
        return 1;
      }
      out << rank(table, aut, *word) << '\n';
      return 0;
    }

    if (unrank_cmd->parsed()) {
      BigCount r;
      try {
        r = parse_decimal(rank_text);
      } catch (const FormatError&) {
        err << "error: --rank must be a decimal integer\n";
        return 1;
      }
      out << detail::letters_csv(unrank(table, aut, r)) << '\n';
      return 0;
    }

    if (encode_cmd->parsed()) {
      if (in_path.empty() == hex_text.empty()) {
        err << "error: encode needs exactly one of --in and --hex\n";
        return 1;
      }
      std::vector<std::uint8_t> payload;
      if (!in_path.empty()) {
        const std::string data = detail::read_file(in_path, "payload");
        payload.assign(data.begin(), data.end());
      } else {
        const auto parsed = detail::parse_hex(hex_text);
        if (!parsed) {
          err << "error: --hex must be an even-length hex string\n";
          return 1;
        }
        payload = *parsed;
      }
      const std::string container = encode_stream(table, aut, payload);
      std::ofstream o(out_path, std::ios::binary | std::ios::trunc);
      if (!o) {
        err << "error: cannot write " << out_path << '\n';
        return 1;
      }
      o << container;
      return 0;
    }

    if (decode_cmd->parsed()) {
      const std::string container = detail::read_file(in_path, "container");
      const std::vector<std::uint8_t> payload = decode_stream(table, aut, container);
      if (out_path.empty()) {
        out << detail::to_hex(payload) << '\n';
      } else {
        std::ofstream o(out_path, std::ios::binary | std::ios::trunc);
        if (!o) {
          err << "error: cannot write " << out_path << '\n';
          return 1;
        }
        o.write(reinterpret_cast<const char*>(payload.data()),
                static_cast<std::streamsize>(payload.size()));
      }
      return 0;
    }

    if (enumerate_cmd->parsed()) {
      const bool limited = enumerate_cmd->count("--limit") > 0;
      if (limited && limit <= 0) {
        err << "error: --limit must be positive\n";
        return 1;
      }
      const BigCount size = cardinality(table);
      if (!limited && size > (1 << 20)) {
        err << "error: the language holds " << size
            << " words; pass --limit to enumerate a slice\n";
        return 1;
      }
      BigCount bound = size;
      if (limited && BigCount(limit) < bound) bound = limit;
      const int n = vs.length();
      BigCount emitted = 0;
      std::vector<int> word;
      std::function<bool(StateId, int)> walk = [&](StateId q, int depth) -> bool {
        if (depth == n) {
          out << detail::letters_csv(word) << '\n';
          ++emitted;
          return emitted < bound;
        }
        for (int ai = 0; ai < vs.alphabet().size(); ++ai) {
          const StateId to = aut.step(q, ai);
          if (to == kDead) continue;
          if (table.completions(n - depth - 1, to) == 0) continue;
          word.push_back(vs.alphabet().letter(ai));
          const bool keep_going = walk(to, depth + 1);
          word.pop_back();
          if (!keep_going) return false;
        }
        return true;
      };
      if (bound > 0) walk(aut.initial(), 0);
      return 0;
    }

    err << "error: no subcommand\n";
    return 1;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const EmptyLanguage& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const LengthMismatch& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NotInLanguage& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const RankOutOfRange& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const UnknownLetter& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const RankOverflow& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const FingerprintMismatch& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ccodec::cli
