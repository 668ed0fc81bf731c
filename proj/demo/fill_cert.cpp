// Classifies a few representative elements of F(a, b): certified filling via
// the TS' test, or non-filling via an explicit elliptic witness.

#include <cstdio>

#include "freegrp/genericity.hpp"
#include "freegrp/splittings.hpp"
#include "freegrp/text.hpp"

using namespace freegrp;

int main() {
  const int rank = 2;
  const long bound = 4;
  const char* words[] = {"a", "ab", "abAB", "aabaBB", "aabaBBaabaBB", "aababbabaBBBaB"};

  for (const char* s : words) {
    Word w = parse_word(s, rank);
    std::printf("%-16s ", s);
    if (in_TS_prime(w, rank)) {
      std::printf("FILLING (TS')\n");
      continue;
    }
    auto res = find_nonfilling_witness(w, rank, bound);
    if (res.witness) {
      std::printf("NON-FILLING (%s)\n", res.witness->to_string().c_str());
    } else {
      std::printf("UNKNOWN at bound %ld (not TS', no witness found)\n", res.bound);
    }
  }
  return 0;
}
