#pragma once

#include <stdexcept>

namespace ccodec {

// Base for everything this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpecError : Error { using Error::Error; };            // malformed or invalid constraint spec
struct UnknownLetter : Error { using Error::Error; };        // letter not in the alphabet
struct AlphabetMismatch : Error { using Error::Error; };     // product of automata over different alphabets
struct NotInLanguage : Error { using Error::Error; };        // word violates the constraints (or wrong length)
struct RankOutOfRange : Error { using Error::Error; };       // rank >= |S|
struct RankOverflow : Error { using Error::Error; };         // valid word whose rank does not fit the payload width
struct EmptyLanguage : Error { using Error::Error; };        // |S| = 0, payload width undefined
struct LengthMismatch : Error { using Error::Error; };       // payload/bit-length mismatch
struct IndexError : Error { using Error::Error; };           // table/state index out of range
struct FormatError : Error { using Error::Error; };          // bad table or container file
struct FingerprintMismatch : Error { using Error::Error; };  // file built from a different spec
struct TooLarge : Error { using Error::Error; };             // enumeration guard tripped
struct WeightMismatch : Error { using Error::Error; };       // word weight differs from the declared one

}  // namespace ccodec
