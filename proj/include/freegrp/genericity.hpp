#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "freegrp/stats.hpp"
#include "freegrp/whitehead.hpp"
#include "freegrp/word.hpp"

namespace freegrp {

// Frequency comparisons are done in exact rational arithmetic so that
// membership is deterministic and platform-independent.
using Rational = boost::multiprecision::cpp_rational;

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos)
      return Rational(boost::multiprecision::cpp_int(s), 1);
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(boost::multiprecision::cpp_int(s.substr(0, slash)), den);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse rational '" + s + "'");
  }
}

inline std::string to_string(const Rational& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) out += "/" + denominator(r).str();
  return out;
}

// Largest admissible window half-width for rank N: (2N-3) / (N(2N-1)(4N-3)).
inline Rational epsilon_bound(int rank) {
  check_rank(rank);
  long n = rank;
  return Rational(2 * n - 3, n * (2 * n - 1) * (4 * n - 3));
}

struct FrequencyWindow {
  Rational epsilon;
  int rank;

  bool within_ts_bound() const { return epsilon > 0 && epsilon < epsilon_bound(rank); }
};

struct LEpsilonFailure {
  bool is_digram = false;
  Letter x, y;
  Rational frequency, target;
};

// Checks all letter frequencies against 1/2N and all digram frequencies
// against 1/(2N(2N-1)), each within the open window of half-width epsilon.
inline std::optional<LEpsilonFailure> l_epsilon_failure(const CyclicWord& w, int rank,
                                                        const Rational& epsilon) {
  if (w.empty()) throw std::invalid_argument("L(epsilon) membership of the empty word");
  SubwordStats s = subword_stats(w, rank);
  const int lc = 2 * rank;
  const Rational letter_target(1, lc);
  const Rational digram_target(1, static_cast<long>(lc) * (lc - 1));
  for (int c = 0; c < lc; ++c) {
    Rational freq(s.single[c], s.n);
    if (freq <= letter_target - epsilon || freq >= letter_target + epsilon)
      return LEpsilonFailure{false, Letter(static_cast<std::uint8_t>(c)), Letter(), freq,
                             letter_target};
  }
  for (int cx = 0; cx < lc; ++cx) {
    for (int cy = 0; cy < lc; ++cy) {
      if (cy == (cx ^ 1)) continue;  // xy with y = x^-1 is not a valid digram
      Rational freq(s.digram[cx * lc + cy], s.n);
      if (freq <= digram_target - epsilon || freq >= digram_target + epsilon)
        return LEpsilonFailure{true, Letter(static_cast<std::uint8_t>(cx)),
                               Letter(static_cast<std::uint8_t>(cy)), freq, digram_target};
    }
  }
  return std::nullopt;
}

inline bool in_L_epsilon(const CyclicWord& w, int rank, const Rational& epsilon) {
  return !l_epsilon_failure(w, rank, epsilon).has_value();
}

// TS membership with the failing clause, for diagnostics and the CLI.
struct TsCheck {
  enum class Verdict { member, empty_word, proper_power, type2_nonincrease, type1_fixes_class };
  Verdict verdict = Verdict::member;
  std::optional<TypeIIAut> type2_offender;
  std::optional<TypeIAut> type1_offender;

  bool member() const { return verdict == Verdict::member; }
};

// w is in TS iff it is cyclically reduced (given), not a proper power, every
// non-inner type II Whitehead automorphism strictly increases its cyclic
// length, and no non-identity relabeling fixes its conjugacy class. The
// empty word is excluded by convention.
inline TsCheck ts_check(const CyclicWord& w, int rank) {
  TsCheck out;
  if (w.empty()) {
    out.verdict = TsCheck::Verdict::empty_word;
    return out;
  }
  if (is_proper_power(w).is_proper_power) {
    out.verdict = TsCheck::Verdict::proper_power;
    return out;
  }
  const auto& sets = whitehead_sets(rank);
  SubwordStats stats = subword_stats(w, rank);
  for (const auto& t : sets.type2_noninner) {
    if (cyclic_delta_counts(t, stats) <= 0) {
      out.verdict = TsCheck::Verdict::type2_nonincrease;
      out.type2_offender = t;
      return out;
    }
  }
  // Relabelings preserve length and cyclic reducedness, so "fixes the
  // conjugacy class" is exactly "image is a rotation", i.e. equality of
  // canonical rotations. Letters counts give a cheap pre-filter.
  const int lc = 2 * rank;
  for (const auto& s : sets.type1_nonidentity) {
    bool counts_match = true;
    for (int c = 0; c < lc && counts_match; ++c) {
      Letter image = s.image(Letter(static_cast<std::uint8_t>(c)));
      counts_match = stats.single[c] == stats.single[image.code];
    }
    if (!counts_match) continue;
    if (apply(s, w) == w) {
      out.verdict = TsCheck::Verdict::type1_fixes_class;
      out.type1_offender = s;
      return out;
    }
  }
  return out;
}

inline bool in_TS(const CyclicWord& w, int rank) { return ts_check(w, rank).member(); }

// TS' = words whose cyclic reduction lies in TS. Linear in |w| for fixed
// rank: one pass for the cyclic reduction and counts, constant-many
// count-based automorphism checks.
inline TsCheck ts_check_word(const Word& w, int rank) {
  return ts_check(cyclic_reduce(w).core, rank);
}

inline bool in_TS_prime(const Word& w, int rank) { return ts_check_word(w, rank).member(); }

}  // namespace freegrp
