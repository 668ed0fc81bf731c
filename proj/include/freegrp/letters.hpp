#pragma once

#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>

namespace freegrp {

// Letters of the free group F(x_1, ..., x_N) and their inverses.
//
// Encoding: letter code = 2*g + s where g is the 0-based generator index
// and s = 1 for the inverse. This gives the fixed total order
//   x_1 < x_1^-1 < x_2 < x_2^-1 < ...
// used for canonical rotations throughout.
struct Letter {
  std::uint8_t code = 0;

  constexpr Letter() = default;
  constexpr explicit Letter(std::uint8_t c) : code(c) {}

  static constexpr Letter make(int gen, bool negative) {
    return Letter(static_cast<std::uint8_t>(2 * gen + (negative ? 1 : 0)));
  }

  constexpr int gen() const { return code >> 1; }          // 0-based
  constexpr bool negative() const { return (code & 1) != 0; }
  constexpr Letter inverse() const { return Letter(static_cast<std::uint8_t>(code ^ 1)); }

  constexpr auto operator<=>(const Letter&) const = default;
};

constexpr int kMaxRank = 26;  // letter-alphabet limit of the text format

// The generating alphabet: rank N with letters x_1..x_N and inverses.
struct Alphabet {
  int rank;

  explicit Alphabet(int n) : rank(n) {
    if (n < 2) throw std::invalid_argument("alphabet rank must be at least 2");
    if (n > kMaxRank) throw std::invalid_argument("alphabet rank exceeds letter limit (26)");
  }

  int letter_count() const { return 2 * rank; }
  bool holds(Letter l) const { return l.gen() < rank; }
};

inline void check_rank(int rank) { Alphabet dummy(rank); (void)dummy; }

inline char letter_to_char(Letter l) {
  return static_cast<char>((l.negative() ? 'A' : 'a') + l.gen());
}

inline Letter letter_from_char(char c, int rank) {
  bool neg = (c >= 'A' && c <= 'Z');
  bool pos = (c >= 'a' && c <= 'z');
  if (!neg && !pos)
    throw std::invalid_argument(std::string("invalid letter character '") + c + "'");
  int gen = neg ? c - 'A' : c - 'a';
  if (gen >= rank)
    throw std::invalid_argument(std::string("letter '") + c + "' is outside the declared rank");
  return Letter::make(gen, neg);
}

}  // namespace freegrp
