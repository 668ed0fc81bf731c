#pragma once

#include <cstdint>
#include <random>

#include "freegrp/word.hpp"

namespace freegrp {

// splitmix64; used both as a seed mixer and for deriving per-task seeds so
// that parallel and sequential runs produce identical streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(master ^ splitmix64(a)) ^ splitmix64(~b));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  // Uniform draw from [0, k) by masked rejection. Platform-independent
  // given mt19937_64's standardized output.
  std::uint64_t below(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("empty range");
    std::uint64_t mask = k - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      std::uint64_t v = gen_() & mask;
      if (v < k) return v;
    }
  }

  bool coin() { return (gen_() & 1) != 0; }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Uniform over the sphere of freely reduced words of length exactly n:
// first letter uniform over 2N, each later letter uniform over the 2N-1
// non-cancelling choices.
inline Word random_reduced_word(int rank, long n, Rng& rng) {
  check_rank(rank);
  if (n < 0) throw std::invalid_argument("negative length");
  std::vector<Letter> ls;
  ls.reserve(static_cast<std::size_t>(n));
  const int lc = 2 * rank;
  for (long i = 0; i < n; ++i) {
    if (i == 0) {
      ls.push_back(Letter(static_cast<std::uint8_t>(rng.below(lc))));
    } else {
      std::uint8_t banned = ls.back().inverse().code;
      auto k = static_cast<std::uint8_t>(rng.below(lc - 1));
      if (k >= banned) ++k;
      ls.push_back(Letter(k));
    }
  }
  return Word::from_reduced(std::move(ls));
}

// Uniform-ish cyclically reduced word of length exactly n (resamples until
// the ends are non-inverse; at most a constant expected number of tries).
inline CyclicWord random_cyclic_word(int rank, long n, Rng& rng) {
  if (n == 0) return CyclicWord();
  for (;;) {
    Word w = random_reduced_word(rank, n, rng);
    if (w.size() < 2 || w.letters().front() != w.letters().back().inverse())
      return CyclicWord::from_cyclically_reduced(w.letters());
  }
}

}  // namespace freegrp
