// Minimal density scan: how quickly random elements of F(a, b) become TS'
// members (hence filling) as the word length grows.

#include <cstdio>

#include "freegrp/experiments.hpp"

using namespace freegrp;

int main() {
  std::vector<long> lengths = {10, 20, 40, 80, 160};
  auto rows = estimate_density(GenericSet::ts_prime, 2, lengths, 2000, epsilon_bound(2), 1);
  std::printf("%6s %10s %22s\n", "n", "density", "95%% Wilson interval");
  for (const auto& r : rows)
    std::printf("%6ld %10.4f       [%.4f, %.4f]\n", r.n, r.density, r.ci_low, r.ci_high);
  auto fit = fit_decay(rows);
  std::printf("log(1 - density) ~ %.4f - %.4f n   (r^2 = %.4f)\n", fit.alpha, fit.beta,
              fit.r_squared);
  return 0;
}
