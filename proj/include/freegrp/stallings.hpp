#pragma once

#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "freegrp/word.hpp"

namespace freegrp {

// Folded core graph of a finitely generated subgroup: directed edges labeled
// by generators, traversed backwards for inverse letters. Closed paths at
// the base vertex spell exactly the subgroup's elements.
class StallingsGraph {
 public:
  static StallingsGraph build(int rank, std::span<const Word> generators) {
    check_rank(rank);
    Builder b(rank);
    for (const Word& w : generators) b.add_loop(w);
    b.fold();
    return b.finish();
  }

  int rank() const { return rank_; }
  int base() const { return base_; }
  int vertex_count() const { return static_cast<int>(out_.size()) / rank_; }

  int step(int v, Letter l) const {
    return l.negative() ? in_[v * rank_ + l.gen()] : out_[v * rank_ + l.gen()];
  }

  // Does w label a closed path at the base vertex?
  bool contains(const Word& w) const {
    int v = base_;
    for (Letter l : w.letters()) {
      v = step(v, l);
      if (v < 0) return false;
    }
    return v == base_;
  }

  // Is some conjugate of w in the subgroup? Equivalent to the cyclic
  // reduction labeling a closed loop at some vertex of the core graph.
  bool conjugate_into(const Word& w) const { return conjugating_vertex(cyclic_core(w)) >= 0; }
  bool conjugate_into(const CyclicWord& z) const { return conjugating_vertex(z) >= 0; }

  int conjugating_vertex(const CyclicWord& z) const {
    if (z.empty()) return base_;
    for (int v0 = 0; v0 < vertex_count(); ++v0) {
      int v = v0;
      for (Letter l : z.letters()) {
        v = step(v, l);
        if (v < 0) break;
      }
      if (v == v0) return v0;
    }
    return -1;
  }

  // A word spelled by some path base -> v (from the BFS tree).
  Word path_from_base(int target) const {
    std::vector<int> parent(vertex_count(), -1);
    std::vector<Letter> via(vertex_count());
    std::deque<int> queue{base_};
    parent[base_] = base_;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      if (v == target) break;
      for (int g = 0; g < rank_; ++g) {
        for (bool neg : {false, true}) {
          int u = step(v, Letter::make(g, neg));
          if (u >= 0 && parent[u] < 0) {
            parent[u] = v;
            via[u] = Letter::make(g, neg);
            queue.push_back(u);
          }
        }
      }
    }
    if (parent[target] < 0) throw std::logic_error("unreachable vertex in connected core graph");
    std::vector<Letter> rev;
    for (int v = target; v != base_; v = parent[v]) rev.push_back(via[v]);
    return Word::from_reduced({rev.rbegin(), rev.rend()});
  }

  // The wedge of N loops at a single vertex, i.e. the whole group.
  bool is_rose() const {
    if (vertex_count() != 1) return false;
    for (int g = 0; g < rank_; ++g)
      if (out_[g] != base_) return false;
    return true;
  }

  // BFS relabeling from the base with fixed label order; equal canonical
  // forms mean equal graphs, which makes fold confluence testable.
  std::vector<int> canonical_form() const {
    std::vector<int> order(vertex_count(), -1);
    int next = 0;
    std::deque<int> queue{base_};
    order[base_] = next++;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int g = 0; g < rank_; ++g) {
        for (bool neg : {false, true}) {
          int u = step(v, Letter::make(g, neg));
          if (u >= 0 && order[u] < 0) {
            order[u] = next++;
            queue.push_back(u);
          }
        }
      }
    }
    std::vector<int> blob;
    blob.push_back(rank_);
    blob.push_back(vertex_count());
    std::vector<int> inv(vertex_count());
    for (int v = 0; v < vertex_count(); ++v) inv[order[v]] = v;
    for (int i = 0; i < vertex_count(); ++i) {
      int v = inv[i];
      for (int g = 0; g < rank_; ++g) {
        int u = out_[v * rank_ + g];
        blob.push_back(u < 0 ? -1 : order[u]);
      }
      for (int g = 0; g < rank_; ++g) {
        int u = in_[v * rank_ + g];
        blob.push_back(u < 0 ? -1 : order[u]);
      }
    }
    return blob;
  }

 private:
  StallingsGraph(int rank, int base, std::vector<int> out, std::vector<int> in)
      : rank_(rank), base_(base), out_(std::move(out)), in_(std::move(in)) {}

  // Mutable build phase: union-find over vertices plus repeated folding of
  // equal-label edge pairs, then core trimming and compaction.
  class Builder {
   public:
    explicit Builder(int rank) : rank_(rank) { new_vertex(); }

    void add_loop(const Word& w) {
      if (w.empty()) return;
      int v = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        int next = (i + 1 == w.size()) ? 0 : new_vertex();
        Letter l = w.at(i);
        if (l.negative())
          add_edge(next, l.gen(), v);
        else
          add_edge(v, l.gen(), next);
        v = next;
      }
    }

    void fold() {
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t v = 0; v < parent_.size(); ++v) {
          if (find(static_cast<int>(v)) != static_cast<int>(v)) continue;
          if (fold_at(static_cast<int>(v))) changed = true;
        }
      }
    }

    StallingsGraph finish() {
      // Dense adjacency over live vertices.
      std::vector<int> live;
      for (std::size_t v = 0; v < parent_.size(); ++v)
        if (find(static_cast<int>(v)) == static_cast<int>(v)) live.push_back(static_cast<int>(v));
      std::vector<int> index(parent_.size(), -1);
      for (std::size_t i = 0; i < live.size(); ++i) index[live[i]] = static_cast<int>(i);
      int n = static_cast<int>(live.size());
      std::vector<int> out(n * rank_, -1), in(n * rank_, -1);
      for (int v : live) {
        for (auto [g, to] : edges_[v]) {
          int a = index[v], b = index[find(to)];
          out[a * rank_ + g] = b;
          in[b * rank_ + g] = a;
        }
      }
      int base = index[find(0)];

      // Core trim: drop non-base vertices of total degree <= 1.
      std::vector<int> degree(n, 0);
      for (int v = 0; v < n; ++v)
        for (int g = 0; g < rank_; ++g) {
          if (out[v * rank_ + g] >= 0) {
            ++degree[v];
            ++degree[out[v * rank_ + g]];
          }
        }
      std::vector<bool> dead(n, false);
      bool shrunk = true;
      while (shrunk) {
        shrunk = false;
        for (int v = 0; v < n; ++v) {
          if (dead[v] || v == base || degree[v] > 1) continue;
          dead[v] = true;
          shrunk = true;
          for (int g = 0; g < rank_; ++g) {
            int u = out[v * rank_ + g];
            if (u >= 0 && !dead[u]) {
              in[u * rank_ + g] = -1;
              --degree[u];
            }
            u = in[v * rank_ + g];
            if (u >= 0 && !dead[u]) {
              out[u * rank_ + g] = -1;
              --degree[u];
            }
          }
        }
      }
      std::vector<int> remap(n, -1);
      int m = 0;
      for (int v = 0; v < n; ++v)
        if (!dead[v]) remap[v] = m++;
      std::vector<int> out2(m * rank_, -1), in2(m * rank_, -1);
      for (int v = 0; v < n; ++v) {
        if (dead[v]) continue;
        for (int g = 0; g < rank_; ++g) {
          int u = out[v * rank_ + g];
          if (u >= 0 && !dead[u]) out2[remap[v] * rank_ + g] = remap[u];
          u = in[v * rank_ + g];
          if (u >= 0 && !dead[u]) in2[remap[v] * rank_ + g] = remap[u];
        }
      }
      return StallingsGraph(rank_, remap[base], std::move(out2), std::move(in2));
    }

   private:
    int new_vertex() {
      parent_.push_back(static_cast<int>(parent_.size()));
      edges_.emplace_back();
      back_edges_.emplace_back();
      return static_cast<int>(parent_.size()) - 1;
    }

    void add_edge(int from, int g, int to) {
      edges_[from].emplace_back(g, to);
      back_edges_[to].emplace_back(g, from);
    }

    int find(int v) {
      while (parent_[v] != v) {
        parent_[v] = parent_[parent_[v]];
        v = parent_[v];
      }
      return v;
    }

    void merge(int a, int b) {
      a = find(a);
      b = find(b);
      if (a == b) return;
      if (edges_[a].size() + back_edges_[a].size() < edges_[b].size() + back_edges_[b].size())
        std::swap(a, b);
      parent_[b] = a;
      edges_[a].insert(edges_[a].end(), edges_[b].begin(), edges_[b].end());
      back_edges_[a].insert(back_edges_[a].end(), back_edges_[b].begin(), back_edges_[b].end());
      edges_[b].clear();
      back_edges_[b].clear();
    }

    // Folds one duplicate out- or in-edge pair at v; true if anything merged.
    bool fold_at(int v) {
      auto dedupe = [&](std::vector<std::pair<int, int>>& list, bool outgoing) {
        std::vector<int> seen(rank_, -1);
        for (std::size_t i = 0; i < list.size(); ++i) {
          auto [g, other] = list[i];
          // A stale entry may point at a merged endpoint or duplicate an
          // already-rewritten edge; normalize through the union-find.
          int o = find(other);
          list[i].second = o;
          if (seen[g] < 0) {
            seen[g] = o;
            continue;
          }
          if (seen[g] == o) {  // literal duplicate edge, drop it
            list.erase(list.begin() + static_cast<std::ptrdiff_t>(i));
            return true;
          }
          merge(seen[g], o);
          (void)outgoing;
          return true;
        }
        return false;
      };
      if (dedupe(edges_[v], true)) return true;
      return dedupe(back_edges_[v], false);
    }

    int rank_;
    std::vector<int> parent_;
    std::vector<std::vector<std::pair<int, int>>> edges_;       // (label, target)
    std::vector<std::vector<std::pair<int, int>>> back_edges_;  // (label, source)

    friend class StallingsGraph;
  };

  int rank_;
  int base_;
  std::vector<int> out_, in_;
};

// Do the given words generate the whole group? Surjective endomorphisms of a
// free group are automorphisms, so this is the automorphism fold-check.
inline bool generates_whole_group(int rank, std::span<const Word> words) {
  return StallingsGraph::build(rank, words).is_rose();
}

}  // namespace freegrp
