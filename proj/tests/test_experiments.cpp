#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "freegrp/counting.hpp"
#include "freegrp/experiments.hpp"
#include "freegrp/text.hpp"

using namespace freegrp;

TEST_CASE("wilson interval") {
  auto ci = wilson_interval(50, 100);
  CHECK(ci.low < 0.5);
  CHECK(ci.high > 0.5);
  CHECK(ci.low > 0.39);
  CHECK(ci.high < 0.61);
  auto edge = wilson_interval(100, 100);
  CHECK(edge.high <= 1.0 + 1e-12);
  CHECK(edge.low < 1.0);  // saturated estimates keep a nontrivial lower bound
  auto zero = wilson_interval(0, 100);
  CHECK(zero.low >= 0.0 - 1e-12);
  CHECK(zero.high > 0.0);
}

TEST_CASE("density estimation") {
  Rational eps = epsilon_bound(2);

  SECTION("TS' density at n = 1 is exactly zero") {
    long exact = exact_ts_prime_sphere_count(2, 1);
    CHECK(exact == 0);
    auto rows = estimate_density(GenericSet::ts_prime, 2, {1}, 500, eps, 99);
    CHECK(rows[0].hits == 0);
  }

  SECTION("deterministic given the seed, including the CSV bytes") {
    auto a = estimate_density(GenericSet::ts_prime, 2, {6, 10}, 300, eps, 2024);
    auto b = estimate_density(GenericSet::ts_prime, 2, {6, 10}, 300, eps, 2024);
    std::ostringstream csv_a, csv_b;
    write_density_csv(csv_a, a);
    write_density_csv(csv_b, b);
    CHECK(csv_a.str() == csv_b.str());
    CHECK(csv_a.str().starts_with("set_id,N,n,samples,hits,density,ci_low,ci_high,seed\n"));
    auto c = estimate_density(GenericSet::ts_prime, 2, {6, 10}, 300, eps, 2025);
    CHECK(a[0].hits != c[0].hits);  // different seed, different draws (w.h.p.)
  }

  SECTION("sampled densities are consistent with the exact census") {
    for (long n : {6L, 8L}) {
      long exact_hits = exact_ts_prime_sphere_count(2, n);
      double exact = static_cast<double>(exact_hits) /
                     static_cast<double>(sphere_size(2, n).convert_to<long>());
      auto rows = estimate_density(GenericSet::ts_prime, 2, {n}, 3000, eps, 7);
      double width = rows[0].ci_high - rows[0].ci_low;
      CHECK(std::abs(rows[0].density - exact) < 3 * width);
    }
  }

  SECTION("L(eps) acceptance is monotone in eps at fixed n") {
    auto small = estimate_density(GenericSet::l_eps, 2, {400}, 400, Rational(1, 60), 5);
    auto large = estimate_density(GenericSet::l_eps, 2, {400}, 400, Rational(1, 15), 5);
    CHECK(small[0].hits <= large[0].hits);  // same draws, wider window
  }

  SECTION("L'(eps) admits conjugates that L(eps) cannot see") {
    // A word ending in the inverse of its first letter is never in C.
    auto l = estimate_density(GenericSet::l_eps, 2, {1001}, 200, eps, 11);
    auto lp = estimate_density(GenericSet::l_prime_eps, 2, {1001}, 200, eps, 11);
    CHECK(lp[0].hits >= l[0].hits);
  }
}

TEST_CASE("decay fit") {
  SECTION("recovers a synthetic generator exactly") {
    std::vector<DensityRow> rows;
    for (long n = 10; n <= 100; n += 10) {
      DensityRow r;
      r.n = n;
      r.density = 1.0 - std::exp(-0.05 * static_cast<double>(n));
      rows.push_back(r);
    }
    auto fit = fit_decay(rows);
    CHECK(std::abs(fit.beta - 0.05) < 1e-6);
    CHECK(fit.r_squared > 1.0 - 1e-9);
    CHECK(fit.rows_used == 10);
  }

  SECTION("constant density gives beta = 0") {
    std::vector<DensityRow> rows;
    for (long n = 10; n <= 50; n += 10) {
      DensityRow r;
      r.n = n;
      r.density = 0.5;
      rows.push_back(r);
    }
    auto fit = fit_decay(rows);
    CHECK(std::abs(fit.beta) < 1e-12);
  }

  SECTION("saturated rows are excluded, too few rows is an error") {
    std::vector<DensityRow> rows(5);
    for (int i = 0; i < 5; ++i) {
      rows[i].n = 10 * (i + 1);
      rows[i].density = (i < 3) ? 1.0 : 0.5;
    }
    CHECK_THROWS_AS(fit_decay(rows), std::invalid_argument);
    rows[0].density = 0.1;
    auto fit = fit_decay(rows);
    CHECK(fit.rows_used == 3);
  }
}

TEST_CASE("membership benchmark plumbing") {
  auto rows = bench_linear_membership(2, {0, 64}, 3, 123);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 0);
  CHECK(rows[0].ns_per_letter == 0.0);  // guard against division by zero
  CHECK(rows[1].median_ns > 0.0);
}

TEST_CASE("cross validation") {
  auto rep = cross_validate_filling(2, 60, 40, 2, 777);
  CHECK(rep.ts_samples == 60);
  CHECK(rep.vertex_samples == 60);
  CHECK(rep.primitive_samples == 60);
  CHECK(rep.ts_witness_violations == 0);
  CHECK(rep.vertex_ts_violations == 0);
  CHECK(rep.primitive_ts_violations == 0);
  CHECK(rep.ok());
}

TEST_CASE("set id names") {
  CHECK(set_id_name(parse_set_id("TS'")) == "TS'");
  CHECK(set_id_name(parse_set_id("L")) == "L(eps)");
  CHECK(set_id_name(parse_set_id("L'")) == "L'(eps)");
  CHECK_THROWS_AS(parse_set_id("nope"), std::invalid_argument);
}
