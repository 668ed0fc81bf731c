#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "freegrp/letters.hpp"
#include "freegrp/word.hpp"

namespace freegrp {

// Text format: lowercase a, b, c, ... are x_1, x_2, x_3, ...; uppercase
// letters are their inverses; the empty string is the identity.

inline std::vector<Letter> parse_letters(std::string_view s, int rank) {
  check_rank(rank);
  std::vector<Letter> out;
  out.reserve(s.size());
  for (char c : s) out.push_back(letter_from_char(c, rank));
  return out;
}

inline Word parse_word(std::string_view s, int rank) {
  return Word::from_raw(parse_letters(s, rank));
}

inline std::string to_string(std::span<const Letter> ls) {
  std::string out;
  out.reserve(ls.size());
  for (Letter l : ls) out.push_back(letter_to_char(l));
  return out;
}

inline std::string to_string(const Word& w) { return to_string(std::span(w.letters())); }
inline std::string to_string(const CyclicWord& w) { return to_string(std::span(w.letters())); }

}  // namespace freegrp
