#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "freegrp/rng.hpp"
#include "freegrp/splittings.hpp"
#include "freegrp/text.hpp"
#include "freegrp/whitehead.hpp"

using namespace freegrp;

namespace {
Word W(const char* s, int rank = 2) { return parse_word(s, rank); }

Word random_product(const std::vector<Word>& gens, Rng& rng, int factors) {
  Word w;
  for (int i = 0; i < factors; ++i) {
    const Word& g = gens[rng.below(gens.size())];
    w = concat(w, rng.coin() ? inverse(g) : g);
  }
  return w;
}
}  // namespace

TEST_CASE("splitting specs and their vertex groups") {
  auto seg = SplittingSpec::segment_of(3, {0}, {1, 2}, W("bc", 3));
  CHECK(seg.to_string() == "segment A={a} B={b,c} b=bc");
  auto loop = SplittingSpec::loop_of(2, {0}, 1, W("a"));
  CHECK(loop.to_string() == "loop U={a} v=b u=a");
  auto fs = SplittingSpec::free_split_of(2, {0}, {1});
  CHECK(fs.to_string() == "free A={a} B={b}");

  SECTION("invariants are enforced") {
    CHECK_THROWS_AS(SplittingSpec::segment_of(2, {}, {0, 1}, W("a")), std::invalid_argument);
    CHECK_THROWS_AS(SplittingSpec::segment_of(3, {0}, {1, 2}, W("bb", 3)),
                    std::invalid_argument);  // proper power edge word
    CHECK_THROWS_AS(SplittingSpec::segment_of(3, {0}, {1, 2}, W("ab", 3)),
                    std::invalid_argument);  // edge word outside <B>
    CHECK_THROWS_AS(SplittingSpec::loop_of(2, {0}, 1, Word()), std::invalid_argument);
    CHECK_THROWS_AS(SplittingSpec::free_split_of(2, {0, 1}, {}), std::invalid_argument);
  }
}

TEST_CASE("ellipticity") {
  SECTION("segment vertex group <A, b>") {
    auto seg = SplittingSpec::segment_of(3, {0}, {1, 2}, W("bc", 3));
    Word w = W("abcAbc", 3);  // x b x^-1 b
    auto e = elliptic_witness(seg, w);
    REQUIRE(e.has_value());
    CHECK(e->vertex_side == 0);
    CHECK(is_elliptic(seg, W("bccb", 3)));       // lives in <B>
    CHECK_FALSE(is_elliptic(seg, W("ab", 3)));
  }

  SECTION("loop vertex group <U, u^v>") {
    auto loop = SplittingSpec::loop_of(2, {0}, 1, W("a"));
    CHECK(is_elliptic(loop, W("aBab")));  // x * y^-1 x y
    CHECK_FALSE(is_elliptic(loop, W("ab")));
  }

  SECTION("free splitting rejects the commutator") {
    auto fs = SplittingSpec::free_split_of(2, {0}, {1});
    CHECK_FALSE(is_elliptic(fs, W("abAB")));
    CHECK_FALSE(has_cut_vertex_or_disconnected(whitehead_graph(cyclic_core(W("abAB")), 2)));
    CHECK(is_elliptic(fs, W("a")));
    CHECK(is_elliptic(fs, conjugate(W("a"), W("bab"))));
  }

  SECTION("ellipticity witness conjugator is genuine") {
    auto loop = SplittingSpec::loop_of(2, {0}, 1, W("a"));
    Rng rng(3);
    auto groups = loop.vertex_group_generators();
    StallingsGraph vg = StallingsGraph::build(2, groups[0]);
    for (int i = 0; i < 60; ++i) {
      Word inside = random_product(groups[0], rng, 1 + static_cast<int>(rng.below(5)));
      Word g = random_reduced_word(2, static_cast<long>(rng.below(8)), rng);
      Word w = conjugate(inside, g);
      auto e = elliptic_witness(loop, w);
      REQUIRE(e.has_value());
      CHECK(vg.contains(conjugate(w, inverse(e->conjugator))));
    }
  }
}

TEST_CASE("enumeration of small splittings") {
  SECTION("rank 2 has no segments") {
    auto specs = enumerate_small_splittings(2, 2);
    long frees = 0, segments = 0, loops = 0;
    for (const auto& s : specs) {
      if (s.kind == SplittingSpec::Kind::free_split) ++frees;
      if (s.kind == SplittingSpec::Kind::segment) ++segments;
      if (s.kind == SplittingSpec::Kind::loop) ++loops;
    }
    CHECK(frees == 1);
    CHECK(segments == 0);  // #B >= 2 forces A empty in rank 2
    CHECK(loops == 4);     // u in {x, x^-1} per stable letter choice
  }

  SECTION("rank 3, bound 1 segment count") {
    auto specs = enumerate_small_splittings(3, 1);
    long segments = 0;
    for (const auto& s : specs)
      if (s.kind == SplittingSpec::Kind::segment) ++segments;
    CHECK(segments == 6);  // 3 partitions x 2 single-letter edge words up to inversion
  }

  SECTION("edge words are canonical, deduplicated and not powers") {
    auto specs = enumerate_small_splittings(3, 3);
    std::set<std::string> seen;
    for (const auto& s : specs) {
      CHECK(seen.insert(s.to_string()).second);
      if (s.kind == SplittingSpec::Kind::free_split) continue;
      CHECK_FALSE(is_proper_power(cyclic_core(s.edge_word)).is_proper_power);
      auto c = CyclicWord::from_cyclically_reduced(s.edge_word.letters());
      CHECK(c.is_canonical_rotation());
    }
  }
}

TEST_CASE("non-filling witnesses") {
  SECTION("a generator is witnessed by the free splitting") {
    auto res = find_nonfilling_witness(W("a"), 2, 2);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->kind == SplittingSpec::Kind::free_split);
    CHECK(res.witness->to_string() == "free A={a} B={b}");
  }

  SECTION("the TS fixture admits no witness at small bounds") {
    for (long bound : {1L, 2L, 3L, 4L}) {
      auto res = find_nonfilling_witness(W("aabaBB"), 2, bound);
      CHECK_FALSE(res.witness.has_value());
      CHECK(res.bound == bound);
    }
  }

  SECTION("x * x^y is witnessed by a loop") {
    auto res = find_nonfilling_witness(W("aBab"), 2, 2);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->to_string() == "loop U={a} v=b u=a");
  }
}

TEST_CASE("stabilizer witnesses") {
  SECTION("free case, w = x") {
    auto fs = SplittingSpec::free_split_of(2, {0}, {1});
    auto [sigma, tau] = stabilizer_witnesses(fs, W("a"));
    CHECK(apply(sigma, W("a")) == W("a"));
    CHECK(apply(tau, W("a")) == W("a"));
    CHECK(to_string(tau.images[1]) == "b");          // tau fixes y
    CHECK(to_string(sigma.images[1]) == "Aba");      // sigma moves y
    CHECK(generates_whole_group(2, sigma.images));
    CHECK(generates_whole_group(2, tau.images));
  }

  SECTION("loop case") {
    auto loop = SplittingSpec::loop_of(2, {0}, 1, W("a"));
    Word w = W("aBab");
    auto [sigma, tau] = stabilizer_witnesses(loop, w);
    CHECK(to_string(tau.images[1]) == "ab");  // v -> uv
    CHECK(apply(tau, w) == w);
    CHECK(apply(sigma, w) == w);
    CHECK(generates_whole_group(2, sigma.images));
    CHECK(generates_whole_group(2, tau.images));
    CHECK(sigma.images != tau.images);
  }

  SECTION("segment case") {
    auto seg = SplittingSpec::segment_of(3, {0}, {1, 2}, W("bc", 3));
    Word w = W("abcAbc", 3);
    auto [sigma, tau] = stabilizer_witnesses(seg, w);
    CHECK(apply(sigma, w) == w);
    CHECK(apply(tau, w) == w);
    CHECK(to_string(tau.images[0]) == "a");  // tau fixes A pointwise
    CHECK(apply(tau, W("bc", 3)) == W("bc", 3));  // and fixes b itself
    CHECK(generates_whole_group(3, sigma.images));
    CHECK(generates_whole_group(3, tau.images));
    CHECK(sigma.images != tau.images);
  }

  SECTION("preconditions are enforced") {
    auto fs = SplittingSpec::free_split_of(2, {0}, {1});
    CHECK_THROWS_AS(stabilizer_witnesses(fs, W("b")), std::invalid_argument);   // wrong side
    CHECK_THROWS_AS(stabilizer_witnesses(fs, W("aa")), std::invalid_argument);  // proper power
    CHECK_THROWS_AS(stabilizer_witnesses(fs, Word()), std::invalid_argument);
  }
}
