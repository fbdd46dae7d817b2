#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pgg {

// An infinite binary response sequence in canonical prefix + tail form.
// The tail is either all zeros (`period` empty) or the endless repetition
// of a nonempty word.
//
// Canonical form: with a zero tail the prefix carries no trailing zeros;
// with a periodic tail the word is primitive (not a power of a shorter
// word), not all-zero, and the prefix is as short as possible (it never
// ends with the last letter of the word). Two Patterns denote the same
// sequence iff their canonical forms are identical.
struct Pattern {
    std::vector<std::uint8_t> prefix;
    std::vector<std::uint8_t> period;  // empty = zeros forever

    bool zero_forever() const { return period.empty(); }

    // Value at 0-based index of the denoted infinite sequence.
    int at(std::int64_t index) const;

    std::string to_string() const;

    bool operator==(const Pattern&) const = default;
};

// Normalizes an arbitrary prefix/period pair into canonical form.
Pattern canonical_pattern(std::vector<std::uint8_t> prefix,
                          std::vector<std::uint8_t> period);

// Surface syntax: `bits? ( "0*" | "(" bits ")*" )` with bits over [01].
// Examples: "10*", "110*", "0*", "(10)*", "1(10)*".
// An all-zero periodic word is normalized to the zero tail.
Pattern parse_pattern(std::string_view text);

// Number of leading ones when the pattern is "act below a threshold":
// k ones followed by zeros forever, k >= 1. Empty otherwise.
std::optional<std::int64_t> leading_ones(const Pattern& p);

// The k of a picky pattern 1 0^k 1 0^... (act alone or with exactly k+1
// active neighbors), k >= 1. Empty otherwise.
std::optional<std::int64_t> picky_gap(const Pattern& p);

Pattern decreasing_pattern(std::int64_t k);  // 1^k then zeros
Pattern picky_pattern(std::int64_t k);       // 1 0^k 1 then zeros

struct PatternClass {
    std::string name;     // e.g. "1+0+", "(10)*", "10+10*"
    std::string verdict;  // e.g. "NP-complete"

    bool operator==(const PatternClass&) const = default;
};

// Every known pattern class the pattern belongs to (classes overlap).
// Patterns outside all known classes yield a single "unclassified" entry.
std::vector<PatternClass> classify_pattern(const Pattern& p);

inline const char* const kVerdictAlwaysExists = "PNE always exists, O(1)";
inline const char* const kVerdictPolynomial = "polynomial";
inline const char* const kVerdictNpComplete = "NP-complete";

}  // namespace pgg
