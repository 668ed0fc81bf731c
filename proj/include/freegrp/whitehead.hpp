#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "freegrp/automorphism.hpp"
#include "freegrp/stats.hpp"
#include "freegrp/word.hpp"

namespace freegrp {

// Change of cyclic length under a type II automorphism, computed by
// substitution plus cyclic reduction. This is the oracle the count-based
// formula is validated against.
inline long cyclic_delta_direct(const TypeIIAut& t, const CyclicWord& w) {
  Word image = apply(t, w.to_word());
  return static_cast<long>(cyclic_reduce(image).core.size()) - static_cast<long>(w.size());
}

// Same quantity from subword counts alone, O(N^2) and independent of |w|.
//
// Substituting tau = (A, a) into a cyclic word inserts one multiplier letter
// per occurrence of each u in A \ {a^±1} (and of each u^-1), and the only
// cancellations are single a·a^-1 pairs at cyclic junctions u v with u in A
// and v^-1 in A (junctions where the left side ends in a and the right side
// starts with a^-1, counting the bare letters a and a^-1 themselves):
//
//   delta = sum_{u in A, u != a} (w_u + w_{u^-1})
//         - 2 * sum_{u in A, v^-1 in A} w_{uv}.
inline long cyclic_delta_counts(const TypeIIAut& t, const SubwordStats& s) {
  if (t.rank() != s.rank) throw std::invalid_argument("rank mismatch");
  const int lc = 2 * s.rank;
  const Letter a = t.multiplier();
  long inserted = 0;
  for (int c = 0; c < lc; ++c) {
    Letter u(static_cast<std::uint8_t>(c));
    if (u != a && t.in_A(u)) inserted += s.single[c] + s.single[c ^ 1];
  }
  long cancelled = 0;
  for (int cu = 0; cu < lc; ++cu) {
    if (!t.in_A(Letter(static_cast<std::uint8_t>(cu)))) continue;
    for (int cv = 0; cv < lc; ++cv) {
      if (!t.in_A(Letter(static_cast<std::uint8_t>(cv)).inverse())) continue;
      cancelled += s.digram[cu * lc + cv];
    }
  }
  return inserted - 2 * cancelled;
}

// Enumerations are constant per rank; cached so the linear-time membership
// test does no per-call setup.
struct WhiteheadSets {
  std::vector<TypeIAut> type1;             // all 2^N N!
  std::vector<TypeIAut> type1_nonidentity;
  std::vector<TypeIIAut> type2;            // all 2N 2^(2N-2)
  std::vector<TypeIIAut> type2_noninner;   // identity and conjugations dropped
};

inline const WhiteheadSets& whitehead_sets(int rank) {
  static std::map<int, WhiteheadSets> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(rank);
  if (it == cache.end()) {
    WhiteheadSets s;
    s.type1 = TypeIAut::enumerate(rank);
    for (const auto& a : s.type1)
      if (!a.is_identity()) s.type1_nonidentity.push_back(a);
    s.type2 = TypeIIAut::enumerate(rank, true);
    s.type2_noninner = TypeIIAut::enumerate(rank, false);
    it = cache.emplace(rank, std::move(s)).first;
  }
  return it->second;
}

struct MinimizationResult {
  CyclicWord minimal;
  std::vector<WhiteheadAut> applied;
};

// Greedy Whitehead minimization: while some type II automorphism shrinks the
// cyclic length, apply the steepest one (first in enumeration order on ties).
// By peak reduction the final length is the minimum over the Aut-orbit.
inline MinimizationResult whitehead_minimize(const CyclicWord& start, int rank) {
  const auto& sets = whitehead_sets(rank);
  MinimizationResult out;
  out.minimal = start;
  while (out.minimal.size() > 0) {
    SubwordStats stats = subword_stats(out.minimal, rank);
    const TypeIIAut* best = nullptr;
    long best_delta = 0;
    for (const auto& t : sets.type2_noninner) {
      long d = cyclic_delta_counts(t, stats);
      if (d < best_delta) {
        best_delta = d;
        best = &t;
      }
    }
    if (!best) break;
    out.minimal = cyclic_reduce(apply(*best, out.minimal.to_word())).core;
    out.applied.emplace_back(*best);
  }
  return out;
}

// Whitehead graph: vertices X±, one edge {x, y^-1} per cyclic occurrence of
// the digram xy. Total multiplicity equals the cyclic length.
struct WhiteheadGraph {
  int rank = 0;
  std::vector<long> adjacency;  // symmetric (2N)^2 multiplicity matrix

  long multiplicity(Letter x, Letter y) const { return adjacency[x.code * 2 * rank + y.code]; }
};

inline WhiteheadGraph whitehead_graph(const CyclicWord& w, int rank) {
  check_rank(rank);
  if (w.empty()) throw std::invalid_argument("whitehead graph of the empty word");
  const int lc = 2 * rank;
  WhiteheadGraph g;
  g.rank = rank;
  g.adjacency.assign(lc * lc, 0);
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    Letter x = ls[i];
    Letter y = ls[(i + 1) % ls.size()].inverse();
    ++g.adjacency[x.code * lc + y.code];
    ++g.adjacency[y.code * lc + x.code];
  }
  return g;
}

// True iff the graph on all 2N vertices is disconnected or has a cut vertex
// (isolated vertices count as disconnection). When false, the word lies in
// no proper free factor.
inline bool has_cut_vertex_or_disconnected(const WhiteheadGraph& g) {
  const int n = 2 * g.rank;
  auto connected_without = [&](int removed) {
    int start = -1;
    for (int v = 0; v < n && start < 0; ++v)
      if (v != removed) start = v;
    std::vector<bool> seen(n, false);
    std::vector<int> stack{start};
    seen[start] = true;
    int visited = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++visited;
      for (int u = 0; u < n; ++u) {
        if (u == removed || seen[u] || g.adjacency[v * n + u] == 0) continue;
        seen[u] = true;
        stack.push_back(u);
      }
    }
    return visited == n - (removed >= 0 ? 1 : 0);
  };
  if (!connected_without(-1)) return true;
  for (int v = 0; v < n; ++v)
    if (!connected_without(v)) return true;
  return false;
}

}  // namespace freegrp
