#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "automaton.hpp"
#include "bigint.hpp"
#include "counting.hpp"
#include "errors.hpp"
#include "spec.hpp"

namespace ccodec {

using Bits = std::vector<std::uint8_t>;  // one 0/1 per element

/// Position of the word in the lexicographic order that the alphabet's
/// declared letter order induces on the language: the number of admissible
/// words that sort strictly before it.
inline BigCount rank(const CountTable& table, const Automaton& aut, std::span<const int> word) {
  const int n = table.n;
  if (static_cast<int>(word.size()) != n) {
    throw NotInLanguage("rank: word length " + std::to_string(word.size()) +
                        " does not match the table length " + std::to_string(n));
  }
  const Alphabet& alphabet = aut.alphabet();
  BigCount r = 0;
  StateId q = aut.initial();
  for (int i = 0; i < n; ++i) {
    const int ai = alphabet.index_of(word[static_cast<std::size_t>(i)]);
    for (int b = 0; b < ai; ++b) {
      const StateId to = aut.step(q, b);
      if (to != kDead) r += table.completions(n - 1 - i, to);
    }
    q = aut.step(q, ai);
    if (q == kDead) {
      throw NotInLanguage("rank: prefix of length " + std::to_string(i + 1) +
                          " violates the constraints");
    }
  }
  if (!aut.accept(q)) throw NotInLanguage("rank: word ends in a non-accepting state");
  return r;
}

/// Inverse of rank: scans the alphabet in declared order at each position and
/// descends into the first subtree whose count exceeds what is left.
inline std::vector<int> unrank(const CountTable& table, const Automaton& aut, BigCount r) {
  if (r < 0 || r >= cardinality(table)) {
    throw RankOutOfRange("unrank: rank " + r.str() + " is outside [0, " +
                         cardinality(table).str() + ")");
  }
  const int n = table.n;
  const Alphabet& alphabet = aut.alphabet();
  std::vector<int> word;
  word.reserve(static_cast<std::size_t>(n));
  StateId q = aut.initial();
  for (int i = 0; i < n; ++i) {
    bool advanced = false;
    for (int ai = 0; ai < alphabet.size(); ++ai) {
      const StateId to = aut.step(q, ai);
      if (to == kDead) continue;
      const BigCount& c = table.completions(n - 1 - i, to);
      if (r < c) {
        word.push_back(alphabet.letter(ai));
        q = to;
        advanced = true;
        break;
      }
      r -= c;
    }
    if (!advanced) throw RankOutOfRange("unrank: rank exceeds the remaining subtree");
  }
  return word;
}

inline BigCount bits_to_count(std::span<const std::uint8_t> bits) {
  BigCount v = 0;
  for (std::uint8_t b : bits) {
    v <<= 1;
    if (b) v |= 1;
  }
  return v;
}

inline Bits count_to_bits(BigCount v, int width) {
  Bits bits(static_cast<std::size_t>(width), 0);
  for (int i = width - 1; i >= 0 && v != 0; --i) {
    bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 1);
    v >>= 1;
  }
  return bits;
}

/// Maps a payload of exactly payload_width(|S|).payload_bits bits to a
/// codeword. Injective because 2^payload_bits <= |S|.
inline std::vector<int> encode_block(const CountTable& table, const Automaton& aut,
                                     std::span<const std::uint8_t> bits) {
  const PayloadWidth w = payload_width(cardinality(table));
  if (static_cast<int>(bits.size()) != w.payload_bits) {
    throw LengthMismatch("encode_block: expected " + std::to_string(w.payload_bits) +
                         " payload bits, got " + std::to_string(bits.size()));
  }
  return unrank(table, aut, bits_to_count(bits));
}

/// Inverse of encode_block. Admissible words whose rank needs more than
/// payload_bits bits are valid codewords but carry no payload.
inline Bits decode_block(const CountTable& table, const Automaton& aut,
                         std::span<const int> word) {
  const PayloadWidth w = payload_width(cardinality(table));
  const BigCount r = rank(table, aut, word);
  if (r >= two_pow(w.payload_bits)) {
    throw RankOverflow("decode_block: rank " + r.str() + " does not fit in " +
                       std::to_string(w.payload_bits) + " payload bits");
  }
  return count_to_bits(r, w.payload_bits);
}

inline Bits bits_from_bytes(std::span<const std::uint8_t> bytes) {
  Bits bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t byte : bytes) {
    for (int i = 7; i >= 0; --i) bits.push_back(static_cast<std::uint8_t>((byte >> i) & 1));
  }
  return bits;
}

inline std::vector<std::uint8_t> bytes_from_bits(std::span<const std::uint8_t> bits) {
  if (bits.size() % 8 != 0) throw LengthMismatch("bit count is not a whole number of bytes");
  std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
  }
  return bytes;
}

/// Packs a byte payload into a self-describing container: one header line,
/// then blocks * n letter-index bytes. The payload is split into
/// payload_bits-sized slices, the last one zero-padded, and each slice is
/// encoded as one codeword.
inline std::string encode_stream(const CountTable& table, const Automaton& aut,
                                 std::span<const std::uint8_t> payload) {
  if (aut.alphabet().size() > 256) {
    throw FormatError("encode_stream: alphabets beyond 256 letters do not fit the container");
  }
  const PayloadWidth w = payload_width(cardinality(table));
  const long long payload_bits = static_cast<long long>(payload.size()) * 8;
  if (w.payload_bits == 0 && payload_bits > 0) {
    throw LengthMismatch("encode_stream: the language is too small to carry any payload");
  }
  const long long blocks =
      payload_bits == 0 ? 0 : (payload_bits + w.payload_bits - 1) / w.payload_bits;

  std::string out = "CCF1 n=" + std::to_string(table.n) + " k=" + std::to_string(w.payload_bits) +
                    " blocks=" + std::to_string(blocks) +
                    " payload_bits=" + std::to_string(payload_bits) +
                    " fingerprint=" + to_hex64(table.fingerprint) + "\n";
  const Bits bits = bits_from_bytes(payload);
  const Alphabet& alphabet = aut.alphabet();
  for (long long b = 0; b < blocks; ++b) {
    Bits slice(static_cast<std::size_t>(w.payload_bits), 0);
    const std::size_t begin = static_cast<std::size_t>(b) * static_cast<std::size_t>(w.payload_bits);
    for (std::size_t i = 0; i < slice.size() && begin + i < bits.size(); ++i) {
      slice[i] = bits[begin + i];
    }
    const std::vector<int> word = encode_block(table, aut, slice);
    for (int v : word) out.push_back(static_cast<char>(alphabet.index_of(v)));
  }
  return out;
}

namespace detail {

inline long long header_int(std::string_view& rest, std::string_view key) {
  const std::string want = std::string(key) + "=";
  if (rest.substr(0, want.size()) != want) {
    throw FormatError("container header: expected \"" + std::string(key) + "=\"");
  }
  rest.remove_prefix(want.size());
  std::size_t end = 0;
  while (end < rest.size() && rest[end] != ' ') ++end;
  const std::string_view field = rest.substr(0, end);
  rest.remove_prefix(end < rest.size() ? end + 1 : end);
  if (field.empty()) throw FormatError("container header: empty \"" + std::string(key) + "\"");
  const BigCount v = parse_decimal(field);
  if (v > 4611686018427387904LL) throw FormatError("container header: value too large");
  return static_cast<long long>(v);
}

}  // namespace detail

/// Strict inverse of encode_stream. Structural damage is a FormatError, a
/// container built for a different spec is a FingerprintMismatch, and a
/// codeword outside the payload image is a RankOverflow.
inline std::vector<std::uint8_t> decode_stream(const CountTable& table, const Automaton& aut,
                                               std::string_view container) {
  const std::size_t eol = container.find('\n');
  if (eol == std::string_view::npos || container.substr(0, 5) != "CCF1 ") {
    throw FormatError("container: missing CCF1 header line");
  }
  std::string_view rest = container.substr(5, eol - 5);
  const long long n = detail::header_int(rest, "n");
  const long long k = detail::header_int(rest, "k");
  const long long blocks = detail::header_int(rest, "blocks");
  const long long payload_bits = detail::header_int(rest, "payload_bits");
  const std::string want_fp = "fingerprint=";
  if (rest.substr(0, want_fp.size()) != want_fp) {
    throw FormatError("container header: expected \"fingerprint=\"");
  }
  rest.remove_prefix(want_fp.size());
  const std::uint64_t fingerprint = from_hex64(rest);

  if (fingerprint != table.fingerprint) {
    throw FingerprintMismatch("container was produced for a different spec (fingerprint " +
                              to_hex64(fingerprint) + ", expected " + to_hex64(table.fingerprint) +
                              ")");
  }
  if (n != table.n) {
    throw FormatError("container: word length " + std::to_string(n) + " does not match " +
                      std::to_string(table.n));
  }
  const PayloadWidth w = payload_width(cardinality(table));
  if (k != w.payload_bits) {
    throw FormatError("container: payload width " + std::to_string(k) + " does not match " +
                      std::to_string(w.payload_bits));
  }
  if (payload_bits % 8 != 0) throw FormatError("container: payload_bits is not a byte multiple");
  const long long want_blocks = payload_bits == 0 ? 0 : (k == 0 ? -1 : (payload_bits + k - 1) / k);
  if (blocks != want_blocks) throw FormatError("container: block count is inconsistent");

  const std::string_view body = container.substr(eol + 1);
  if (body.size() != static_cast<std::size_t>(blocks) * static_cast<std::size_t>(n)) {
    throw FormatError("container: body holds " + std::to_string(body.size()) +
                      " bytes, expected " + std::to_string(blocks * n));
  }
  const Alphabet& alphabet = aut.alphabet();
  Bits bits;
  bits.reserve(static_cast<std::size_t>(blocks) * static_cast<std::size_t>(k));
  for (long long b = 0; b < blocks; ++b) {
    std::vector<int> word;
    word.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
      const int idx = static_cast<unsigned char>(body[static_cast<std::size_t>(b * n + i)]);
      if (idx >= alphabet.size()) {
        throw FormatError("container: letter index " + std::to_string(idx) +
                          " is outside the alphabet");
      }
      word.push_back(alphabet.letter(idx));
    }
    const Bits slice = decode_block(table, aut, word);
    bits.insert(bits.end(), slice.begin(), slice.end());
  }
  for (std::size_t i = static_cast<std::size_t>(payload_bits); i < bits.size(); ++i) {
    if (bits[i]) throw FormatError("container: nonzero padding in the final block");
  }
  bits.resize(static_cast<std::size_t>(payload_bits));
  return bytes_from_bits(bits);
}

inline std::string encode_stream(const ValidatedSpec& vs, std::span<const std::uint8_t> payload) {
  const Automaton aut = compile(vs);
  return encode_stream(build_count_table(aut, vs), aut, payload);
}

inline std::vector<std::uint8_t> decode_stream(const ValidatedSpec& vs, std::string_view container) {
  const Automaton aut = compile(vs);
  return decode_stream(build_count_table(aut, vs), aut, container);
}

}  // namespace ccodec
