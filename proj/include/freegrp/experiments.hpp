#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "freegrp/genericity.hpp"
#include "freegrp/rng.hpp"
#include "freegrp/splittings.hpp"
#include "freegrp/whitehead.hpp"

namespace freegrp {

enum class GenericSet { ts_prime, l_eps, l_prime_eps };

inline std::string set_id_name(GenericSet s) {
  switch (s) {
    case GenericSet::ts_prime: return "TS'";
    case GenericSet::l_eps: return "L(eps)";
    case GenericSet::l_prime_eps: return "L'(eps)";
  }
  return "?";
}

inline GenericSet parse_set_id(const std::string& s) {
  if (s == "TS'" || s == "TS" || s == "ts") return GenericSet::ts_prime;
  if (s == "L(eps)" || s == "L") return GenericSet::l_eps;
  if (s == "L'(eps)" || s == "L'") return GenericSet::l_prime_eps;
  throw std::invalid_argument("unknown set id '" + s + "' (expected TS', L, or L')");
}

// 95% Wilson score interval; stays sane at densities near 0 and 1.
struct Interval {
  double low, high;
};

inline Interval wilson_interval(long hits, long samples) {
  if (samples <= 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  double n = static_cast<double>(samples);
  double p = static_cast<double>(hits) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2 * n)) / denom;
  double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {center - half, center + half};
}

// One per-sphere sampling estimate: `hits` of `samples` uniform reduced
// words of length exactly n belong to the set.
struct DensityRow {
  std::string set_id;
  int rank = 0;
  long n = 0;
  long samples = 0;
  long hits = 0;
  double density = 0;
  double ci_low = 0, ci_high = 0;
  std::uint64_t seed = 0;
};

inline bool sample_in_set(GenericSet set, const Word& w, int rank, const Rational& eps) {
  switch (set) {
    case GenericSet::ts_prime:
      return in_TS_prime(w, rank);
    case GenericSet::l_eps: {
      // L(eps) lives inside C: a sampled word that is not cyclically
      // reduced is simply not a member.
      if (w.empty()) return false;
      if (w.size() >= 2 && w.letters().front() == w.letters().back().inverse()) return false;
      return in_L_epsilon(CyclicWord::from_cyclically_reduced(w.letters()), rank, eps);
    }
    case GenericSet::l_prime_eps: {
      CyclicWord core = cyclic_core(w);
      if (core.empty()) return false;
      return in_L_epsilon(core, rank, eps);
    }
  }
  return false;
}

// Per-sphere density estimation. Each sample draws from an rng seeded by
// (master seed, row index, sample index), so results are byte-identical no
// matter how the work is split across workers.
inline std::vector<DensityRow> estimate_density(GenericSet set, int rank,
                                                const std::vector<long>& lengths,
                                                long samples_per_length, const Rational& eps,
                                                std::uint64_t master_seed) {
  check_rank(rank);
  if (samples_per_length < 1) throw std::invalid_argument("need at least one sample per length");
  std::vector<DensityRow> rows;
  rows.reserve(lengths.size());
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    long n = lengths[i];
    long hits = 0;
    for (long s = 0; s < samples_per_length; ++s) {
      Rng rng(derive_seed(master_seed, i, static_cast<std::uint64_t>(s)));
      Word w = random_reduced_word(rank, n, rng);
      if (sample_in_set(set, w, rank, eps)) ++hits;
    }
    DensityRow row;
    row.set_id = set_id_name(set);
    row.rank = rank;
    row.n = n;
    row.samples = samples_per_length;
    row.hits = hits;
    row.density = static_cast<double>(hits) / static_cast<double>(samples_per_length);
    Interval ci = wilson_interval(hits, samples_per_length);
    row.ci_low = ci.low;
    row.ci_high = ci.high;
    row.seed = master_seed;
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void write_density_csv(std::ostream& os, const std::vector<DensityRow>& rows) {
  os << "set_id,N,n,samples,hits,density,ci_low,ci_high,seed\n";
  os << std::fixed << std::setprecision(6);
  for (const auto& r : rows) {
    os << r.set_id << ',' << r.rank << ',' << r.n << ',' << r.samples << ',' << r.hits << ','
       << r.density << ',' << r.ci_low << ',' << r.ci_high << ',' << r.seed << '\n';
  }
}

// Least squares for log(1 - density) ~ alpha - beta * n over unsaturated
// rows; beta > 0 is the empirical signature of exponential convergence.
struct DecayFit {
  double alpha = 0;
  double beta = 0;
  double r_squared = 0;
  long rows_used = 0;
};

inline DecayFit fit_decay(const std::vector<DensityRow>& rows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows)
    if (r.density < 1.0) pts.emplace_back(static_cast<double>(r.n), std::log1p(-r.density));
  if (pts.size() < 3) throw std::invalid_argument("decay fit needs at least 3 unsaturated rows");
  double sx = 0, sy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
  }
  double mx = sx / pts.size(), my = sy / pts.size();
  double sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0) throw std::invalid_argument("decay fit needs distinct lengths");
  double slope = sxy / sxx;
  DecayFit fit;
  fit.beta = -slope;
  fit.alpha = my - slope * mx;
  double ss_res = 0;
  for (auto [x, y] : pts) {
    double e = y - (fit.alpha - fit.beta * x);
    ss_res += e * e;
  }
  fit.r_squared = (syy == 0) ? 1.0 : 1.0 - ss_res / syy;
  fit.rows_used = static_cast<long>(pts.size());
  return fit;
}

// Wall-clock medians of the TS' membership test on random words; the
// doubling ratio median(2n)/median(n) should hover around 2 for a
// linear-time test.
struct BenchRow {
  long n = 0;
  double median_ns = 0;
  double ns_per_letter = 0;
  double doubling_ratio = 0;  // median(2n) / median(n)
};

inline std::vector<BenchRow> bench_linear_membership(int rank, const std::vector<long>& lengths,
                                                     int reps, std::uint64_t seed) {
  check_rank(rank);
  if (reps < 1) throw std::invalid_argument("need at least one repetition");
  auto median_time = [&](long n, std::uint64_t salt) {
    std::vector<double> times;
    times.reserve(reps);
    volatile bool sink = false;
    for (int r = 0; r < reps; ++r) {
      Rng rng(derive_seed(seed, salt, static_cast<std::uint64_t>(r)));
      Word w = random_reduced_word(rank, n, rng);
      auto t0 = std::chrono::steady_clock::now();
      sink = in_TS_prime(w, rank) ? !sink : sink;
      auto t1 = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
  };
  std::vector<BenchRow> out;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    long n = lengths[i];
    BenchRow row;
    row.n = n;
    row.median_ns = median_time(n, 2 * i);
    row.ns_per_letter = (n > 0) ? row.median_ns / static_cast<double>(n) : 0.0;
    double twice = median_time(2 * n, 2 * i + 1);
    row.doubling_ratio = (row.median_ns > 0) ? twice / row.median_ns : 0.0;
    out.push_back(row);
  }
  return out;
}

// A primitive element: the image of the first generator under a random
// bounded product of Whitehead automorphisms. Growth is capped so the
// element stays a manageable size; it is primitive no matter where the
// composition stops.
inline Word random_primitive(int rank, Rng& rng, int max_steps = 20, long length_cap = 4000) {
  const auto& sets = whitehead_sets(rank);
  Word w = Word::from_reduced({Letter::make(0, false)});
  int steps = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_steps)));
  for (int i = 0; i < steps; ++i) {
    Word next;
    if (rng.coin()) {
      next = apply(sets.type1[rng.below(sets.type1.size())], w);
    } else {
      next = apply(sets.type2[rng.below(sets.type2.size())], w);
    }
    if (static_cast<long>(next.size()) > length_cap) break;
    w = std::move(next);
  }
  return w;
}

// z^e for a random cyclically reduced root z and e >= 2, conjugated by a
// random word for variety.
inline Word random_proper_power(int rank, Rng& rng, long root_len_max = 30,
                                long conj_len_max = 10) {
  long root_len = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(root_len_max)));
  CyclicWord z = random_cyclic_word(rank, root_len, rng);
  long e = 2 + static_cast<long>(rng.below(4));
  Word w;
  for (long i = 0; i < e; ++i) w = concat(w, z.to_word());
  Word g = random_reduced_word(rank, static_cast<long>(rng.below(conj_len_max + 1)), rng);
  return conjugate(w, g);
}

// Consistency run against the filling characterization: sampled TS' words
// must admit no non-filling witness at the bound, and sampled vertex-group
// elements (non-filling by construction) must all fail the TS' test, as
// must sampled primitives. Any violation contradicts the main theorem.
struct CrossValidationReport {
  long ts_samples = 0;
  long ts_witness_violations = 0;
  long vertex_samples = 0;
  long vertex_ts_violations = 0;
  long primitive_samples = 0;
  long primitive_ts_violations = 0;

  bool ok() const {
    return ts_witness_violations == 0 && vertex_ts_violations == 0 &&
           primitive_ts_violations == 0;
  }
};

inline Word random_subgroup_element(const std::vector<Word>& gens, Rng& rng, long target_len) {
  Word w;
  for (int guard = 0; guard < 1000; ++guard) {
    const Word& g = gens[rng.below(gens.size())];
    w = concat(w, rng.coin() ? inverse(g) : g);
    if (static_cast<long>(w.size()) >= target_len) break;
  }
  return w;
}

inline CrossValidationReport cross_validate_filling(int rank, long sample_count, long length,
                                                    long bound, std::uint64_t seed) {
  check_rank(rank);
  CrossValidationReport rep;
  auto specs = enumerate_small_splittings(rank, bound);

  // TS' samples must be filling: no elliptic witness at this bound.
  {
    Rng rng(derive_seed(seed, 1));
    long draws_left = 50 * sample_count;
    while (rep.ts_samples < sample_count && draws_left-- > 0) {
      Word w = random_reduced_word(rank, length, rng);
      if (!in_TS_prime(w, rank)) continue;
      ++rep.ts_samples;
      for (const auto& spec : specs) {
        if (is_elliptic(spec, w)) {
          ++rep.ts_witness_violations;
          break;
        }
      }
    }
  }

  // Vertex-group elements are elliptic, hence non-filling, hence not TS'.
  {
    Rng rng(derive_seed(seed, 2));
    for (long i = 0; i < sample_count; ++i) {
      const auto& spec = specs[rng.below(specs.size())];
      auto groups = spec.vertex_group_generators();
      const auto& gens = groups[rng.below(groups.size())];
      long target = 1 + static_cast<long>(rng.below(40));
      Word w = random_subgroup_element(gens, rng, target);
      ++rep.vertex_samples;
      if (in_TS_prime(w, rank)) ++rep.vertex_ts_violations;
    }
  }

  // Primitive elements lie in proper free factors, hence are not TS'.
  {
    Rng rng(derive_seed(seed, 3));
    for (long i = 0; i < sample_count; ++i) {
      Word w = random_primitive(rank, rng);
      ++rep.primitive_samples;
      if (in_TS_prime(w, rank)) ++rep.primitive_ts_violations;
    }
  }
  return rep;
}

// Exhaustive helpers for the exact small-scale census.

// Visits every cyclic word of length exactly n once, via its canonical
// rotation representative, in lexicographic order.
template <typename Fn>
void for_each_cyclic_word(int rank, long n, Fn&& fn) {
  for_each_sphere_word(rank, n, [&](const Word& w) {
    if (n >= 2 && w.letters().front() == w.letters().back().inverse()) return;
    CyclicWord c = CyclicWord::from_cyclically_reduced(w.letters());
    if (!c.is_canonical_rotation()) return;
    fn(c);
  });
}

// Exact number of TS' members on the sphere of radius n.
inline long exact_ts_prime_sphere_count(int rank, long n) {
  long count = 0;
  for_each_sphere_word(rank, n, [&](const Word& w) {
    if (in_TS_prime(w, rank)) ++count;
  });
  return count;
}

}  // namespace freegrp
