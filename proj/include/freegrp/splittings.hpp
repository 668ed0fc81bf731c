#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freegrp/automorphism.hpp"
#include "freegrp/stallings.hpp"
#include "freegrp/text.hpp"
#include "freegrp/word.hpp"

namespace freegrp {

// An elementary splitting of F(X): either a free splitting F = <A> * <B>
// (trivial edge group), a segment of groups with vertex groups <A, b> and
// <B> (b in <B>, #B >= 2), or a loop of groups with vertex group <U, u^v>
// (u in <U>, U ∪ {v} a basis). Edge words are cyclically reduced, nontrivial
// and not proper powers.
struct SplittingSpec {
  enum class Kind { free_split, segment, loop };

  Kind kind = Kind::free_split;
  int rank = 0;
  std::vector<int> side_a;  // free/segment: A; loop: U
  std::vector<int> side_b;  // free/segment: B; loop: {v}
  Word edge_word;           // b (segment), u (loop); empty for free splittings

  int loop_gen() const { return side_b.at(0); }

  static SplittingSpec free_split_of(int rank, std::vector<int> a, std::vector<int> b) {
    SplittingSpec s{Kind::free_split, rank, std::move(a), std::move(b), Word()};
    s.validate();
    return s;
  }
  static SplittingSpec segment_of(int rank, std::vector<int> a, std::vector<int> b, Word edge) {
    SplittingSpec s{Kind::segment, rank, std::move(a), std::move(b), std::move(edge)};
    s.validate();
    return s;
  }
  static SplittingSpec loop_of(int rank, std::vector<int> u, int v, Word edge) {
    SplittingSpec s{Kind::loop, rank, std::move(u), {v}, std::move(edge)};
    s.validate();
    return s;
  }

  void validate() const {
    check_rank(rank);
    std::vector<bool> seen(rank, false);
    auto mark = [&](const std::vector<int>& side) {
      for (int g : side) {
        if (g < 0 || g >= rank || seen[g]) throw std::invalid_argument("malformed basis partition");
        seen[g] = true;
      }
    };
    mark(side_a);
    mark(side_b);
    for (int g = 0; g < rank; ++g)
      if (!seen[g]) throw std::invalid_argument("partition does not cover the basis");
    switch (kind) {
      case Kind::free_split:
        if (side_a.empty() || side_b.empty() || !edge_word.empty())
          throw std::invalid_argument("malformed free splitting");
        break;
      case Kind::segment:
        if (side_a.empty() || side_b.size() < 2) throw std::invalid_argument("segment needs #B >= 2 and nonempty A");
        check_edge_word(side_b);
        break;
      case Kind::loop:
        if (side_b.size() != 1 || side_a.empty()) throw std::invalid_argument("loop needs one stable generator");
        check_edge_word(side_a);
        break;
    }
  }

  // Generator lists of the vertex groups (one for loops, two otherwise).
  std::vector<std::vector<Word>> vertex_group_generators() const {
    auto letters_of = [](const std::vector<int>& side) {
      std::vector<Word> out;
      out.reserve(side.size());
      for (int g : side) out.push_back(Word::from_reduced({Letter::make(g, false)}));
      return out;
    };
    switch (kind) {
      case Kind::free_split:
        return {letters_of(side_a), letters_of(side_b)};
      case Kind::segment: {
        auto g1 = letters_of(side_a);
        g1.push_back(edge_word);
        return {std::move(g1), letters_of(side_b)};
      }
      case Kind::loop: {
        auto g1 = letters_of(side_a);
        Word v = Word::from_reduced({Letter::make(loop_gen(), false)});
        g1.push_back(conjugate(edge_word, v));  // u^v = v^-1 u v
        return {std::move(g1)};
      }
    }
    throw std::logic_error("unreachable");
  }

  std::string to_string() const {
    auto side_str = [](const std::vector<int>& side) {
      std::string out = "{";
      for (std::size_t i = 0; i < side.size(); ++i) {
        if (i) out += ",";
        out += letter_to_char(Letter::make(side[i], false));
      }
      return out + "}";
    };
    switch (kind) {
      case Kind::free_split:
        return "free A=" + side_str(side_a) + " B=" + side_str(side_b);
      case Kind::segment:
        return "segment A=" + side_str(side_a) + " B=" + side_str(side_b) +
               " b=" + freegrp::to_string(edge_word);
      case Kind::loop:
        return "loop U=" + side_str(side_a) +
               " v=" + std::string(1, letter_to_char(Letter::make(loop_gen(), false))) +
               " u=" + freegrp::to_string(edge_word);
    }
    return "";
  }

 private:
  void check_edge_word(const std::vector<int>& alphabet) const {
    if (edge_word.empty()) throw std::invalid_argument("edge word must be nontrivial");
    std::vector<bool> ok(rank, false);
    for (int g : alphabet) ok[g] = true;
    for (Letter l : edge_word.letters())
      if (!ok[l.gen()]) throw std::invalid_argument("edge word leaves its vertex alphabet");
    if (edge_word.letters().front() == edge_word.letters().back().inverse() &&
        edge_word.size() >= 2)
      throw std::invalid_argument("edge word must be cyclically reduced");
    auto pw = is_proper_power(CyclicWord::from_cyclically_reduced(edge_word.letters()));
    if (pw.is_proper_power) throw std::invalid_argument("edge word must not be a proper power");
  }
};

struct EllipticityWitness {
  int vertex_side;   // index into vertex_group_generators()
  Word conjugator;   // g with g w g^-1 in that vertex group
};

// w is elliptic iff some conjugate lies in a vertex group.
inline std::optional<EllipticityWitness> elliptic_witness(const SplittingSpec& spec,
                                                          const Word& w) {
  auto groups = spec.vertex_group_generators();
  CyclicReduction red = cyclic_reduce(w);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    StallingsGraph g = StallingsGraph::build(spec.rank, groups[i]);
    if (red.core.empty())
      return EllipticityWitness{static_cast<int>(i), Word()};
    int v = g.conjugating_vertex(red.core);
    if (v >= 0) {
      // (p c) w (p c)^-1 = p z p^-1 lies in the subgroup, for p the base
      // path to the closing vertex and c the cyclic-reduction conjugator.
      Word p = g.path_from_base(v);
      return EllipticityWitness{static_cast<int>(i), concat(p, red.conjugator)};
    }
  }
  return std::nullopt;
}

inline bool is_elliptic(const SplittingSpec& spec, const Word& w) {
  return elliptic_witness(spec, w).has_value();
}

namespace detail {

// Cyclically reduced canonical-rotation representatives over a sub-alphabet,
// of length exactly len; optionally deduplicated against inversion.
inline std::vector<Word> edge_word_candidates(const std::vector<int>& alphabet, long len,
                                              bool up_to_inversion) {
  std::vector<Letter> letters;
  for (int g : alphabet) {
    letters.push_back(Letter::make(g, false));
    letters.push_back(Letter::make(g, true));
  }
  std::vector<Word> out;
  std::vector<Letter> cur;
  auto emit = [&]() {
    if (cur.front() == cur.back().inverse() && cur.size() >= 2) return;
    CyclicWord c = CyclicWord::from_cyclically_reduced(cur);
    if (!c.is_canonical_rotation()) return;  // one representative per cyclic word
    if (is_proper_power(c).is_proper_power) return;
    if (up_to_inversion) {
      CyclicWord inv = cyclic_core(inverse(c.to_word()));
      if (inv.canonical_rotation() < c.canonical_rotation()) return;
    }
    out.push_back(c.to_word());
  };
  auto rec = [&](auto&& self, long remaining) -> void {
    if (remaining == 0) {
      emit();
      return;
    }
    for (Letter l : letters) {
      if (!cur.empty() && cur.back() == l.inverse()) continue;
      cur.push_back(l);
      self(self, remaining - 1);
      cur.pop_back();
    }
  };
  if (len > 0) rec(rec, len);
  return out;
}

}  // namespace detail

// All nontrivial elementary splittings with edge words up to the stated
// length: free splittings first, then segments (edge words modulo rotation
// and inversion), then loops (edge words modulo rotation). Deterministic
// order; deduplicated by construction.
inline std::vector<SplittingSpec> enumerate_small_splittings(int rank, long max_edge_word_len) {
  check_rank(rank);
  if (max_edge_word_len < 1) throw std::invalid_argument("edge word bound must be >= 1");
  if (rank > 20) throw std::invalid_argument("splitting enumeration limited to rank <= 20");
  std::vector<SplittingSpec> out;
  const std::uint32_t full = (1u << rank) - 1;

  auto side_of = [&](std::uint32_t mask) {
    std::vector<int> side;
    for (int g = 0; g < rank; ++g)
      if ((mask >> g) & 1) side.push_back(g);
    return side;
  };

  // Free splittings: unordered partitions, canonicalized by putting the
  // first generator in A.
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    if (!(mask & 1)) continue;
    out.push_back(SplittingSpec::free_split_of(rank, side_of(mask), side_of(full & ~mask)));
  }

  // Segments: ordered (A carries the edge word b in <B>), #B >= 2.
  for (std::uint32_t bmask = 1; bmask < full; ++bmask) {
    std::uint32_t amask = full & ~bmask;
    if (amask == 0 || __builtin_popcount(bmask) < 2) continue;
    auto aside = side_of(amask), bside = side_of(bmask);
    for (long len = 1; len <= max_edge_word_len; ++len)
      for (const Word& b : detail::edge_word_candidates(bside, len, true))
        out.push_back(SplittingSpec::segment_of(rank, aside, bside, b));
  }

  // Loops: stable generator v ascending, u over <U>.
  for (int v = 0; v < rank; ++v) {
    std::vector<int> uside;
    for (int g = 0; g < rank; ++g)
      if (g != v) uside.push_back(g);
    for (long len = 1; len <= max_edge_word_len; ++len)
      for (const Word& u : detail::edge_word_candidates(uside, len, false))
        out.push_back(SplittingSpec::loop_of(rank, uside, v, u));
  }
  return out;
}

// Bounded non-filling search: the first enumerated splitting in which w is
// elliptic. An empty result means "no witness at this bound", never a
// filling certificate, so the bound travels with the answer.
struct WitnessResult {
  long bound;
  std::optional<SplittingSpec> witness;
  std::optional<EllipticityWitness> ellipticity;
};

inline WitnessResult find_nonfilling_witness(const Word& w, int rank, long max_edge_word_len) {
  for (const auto& spec : enumerate_small_splittings(rank, max_edge_word_len)) {
    if (auto e = elliptic_witness(spec, w)) return WitnessResult{max_edge_word_len, spec, e};
  }
  return WitnessResult{max_edge_word_len, std::nullopt, std::nullopt};
}

// The two commuting-stabilizer automorphisms for an element written inside a
// designated vertex group: sigma is right-conjugation by w; tau fixes w via
// the splitting (free: conjugate <A> by w; segment: conjugate <B> by b;
// loop: v -> uv). Both fix w, and they differ on some basis element.
inline std::pair<EndoByImages, EndoByImages> stabilizer_witnesses(const SplittingSpec& spec,
                                                                  const Word& w) {
  if (w.empty()) throw std::invalid_argument("stabilizer witnesses need a nontrivial element");
  if (is_proper_power(cyclic_core(w)).is_proper_power)
    throw std::invalid_argument("stabilizer witnesses need a non-proper-power element");
  auto groups = spec.vertex_group_generators();
  StallingsGraph vertex = StallingsGraph::build(spec.rank, groups[0]);
  if (!vertex.contains(w))
    throw std::invalid_argument("element is not in the designated vertex group as written");

  EndoByImages sigma = EndoByImages::conjugation_by(spec.rank, w);

  EndoByImages tau = EndoByImages::identity(spec.rank);
  switch (spec.kind) {
    case SplittingSpec::Kind::free_split:
      for (int g : spec.side_a) tau.images[g] = conjugate(tau.images[g], w);
      break;
    case SplittingSpec::Kind::segment:
      for (int g : spec.side_b) tau.images[g] = conjugate(tau.images[g], spec.edge_word);
      break;
    case SplittingSpec::Kind::loop:
      tau.images[spec.loop_gen()] = concat(spec.edge_word, tau.images[spec.loop_gen()]);
      break;
  }
  return {std::move(sigma), std::move(tau)};
}

}  // namespace freegrp
