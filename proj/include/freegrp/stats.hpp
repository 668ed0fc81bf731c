#pragma once

#include <stdexcept>
#include <vector>

#include "freegrp/word.hpp"

namespace freegrp {

// Occurrence counts of single letters (w_x) and cyclic two-letter subwords
// (w_xy, wrap-around included) of a cyclically reduced word. Digrams xy with
// y = x^-1 never occur in a cyclic word and stay zero.
struct SubwordStats {
  int rank = 0;
  long n = 0;                  // cyclic length
  std::vector<long> single;    // [code]
  std::vector<long> digram;    // [code_x * 2N + code_y]

  long single_count(Letter x) const { return single[x.code]; }
  long digram_count(Letter x, Letter y) const { return digram[x.code * 2 * rank + y.code]; }
};

inline SubwordStats subword_stats(const CyclicWord& w, int rank) {
  check_rank(rank);
  if (w.empty()) throw std::invalid_argument("subword stats of the empty word");
  const int lc = 2 * rank;
  SubwordStats s;
  s.rank = rank;
  s.n = static_cast<long>(w.size());
  s.single.assign(lc, 0);
  s.digram.assign(lc * lc, 0);
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (ls[i].gen() >= rank) throw std::invalid_argument("word letter outside rank");
    ++s.single[ls[i].code];
    Letter next = ls[(i + 1) % ls.size()];
    ++s.digram[ls[i].code * lc + next.code];
  }
  return s;
}

}  // namespace freegrp
