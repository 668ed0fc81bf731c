#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "freegrp/letters.hpp"

namespace freegrp {

using BigInt = boost::multiprecision::cpp_int;

// Number of freely reduced words of length exactly n: 2N(2N-1)^(n-1).
// Arbitrary precision; (2N-1)^n leaves 64 bits around n = 40 already.
inline BigInt sphere_size(int rank, long n) {
  check_rank(rank);
  if (n < 0) throw std::invalid_argument("negative length");
  if (n == 0) return 1;
  BigInt out = 2 * rank;
  BigInt base = 2 * rank - 1;
  for (long i = 1; i < n; ++i) out *= base;
  return out;
}

// Number of freely reduced words of length at most n.
inline BigInt ball_size(int rank, long n) {
  check_rank(rank);
  if (n < 0) throw std::invalid_argument("negative length");
  BigInt out = 1;
  BigInt sphere = 2 * rank;
  for (long i = 1; i <= n; ++i) {
    out += sphere;
    sphere *= 2 * rank - 1;
  }
  return out;
}

}  // namespace freegrp
