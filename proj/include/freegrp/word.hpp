#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "freegrp/letters.hpp"

namespace freegrp {

namespace detail {

// Stack-based free reduction; linear in the input length.
inline void reduce_in_place(std::vector<Letter>& ls) {
  std::size_t top = 0;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (top > 0 && ls[top - 1] == ls[i].inverse()) {
      --top;
    } else {
      ls[top++] = ls[i];
    }
  }
  ls.resize(top);
}

// Appends one letter with cancellation against the current back.
inline void push_reduced(std::vector<Letter>& ls, Letter l) {
  if (!ls.empty() && ls.back() == l.inverse()) {
    ls.pop_back();
  } else {
    ls.push_back(l);
  }
}

inline bool is_reduced(std::span<const Letter> ls) {
  for (std::size_t i = 0; i + 1 < ls.size(); ++i)
    if (ls[i + 1] == ls[i].inverse()) return false;
  return true;
}

// Booth's least-rotation algorithm. Returns the start index of the
// lexicographically least rotation.
inline std::size_t least_rotation_index(std::span<const Letter> s) {
  const std::size_t n = s.size();
  if (n <= 1) return 0;
  std::vector<std::ptrdiff_t> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    Letter sj = s[j % n];
    std::ptrdiff_t i = f[j - k - 1];
    while (i != -1 && sj != s[(k + i + 1) % n]) {
      if (sj < s[(k + i + 1) % n]) k = j - i - 1;
      i = f[i];
    }
    if (sj != s[(k + i + 1) % n]) {
      if (sj < s[(k + i + 1) % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

}  // namespace detail

// A freely reduced word in F(X). The invariant (no adjacent inverse pair)
// is established on construction and preserved by every operation.
class Word {
 public:
  Word() = default;

  // Reduces an arbitrary letter sequence.
  static Word from_raw(std::vector<Letter> raw) {
    detail::reduce_in_place(raw);
    return Word(std::move(raw), kTrusted);
  }

  // Adopts a sequence the caller guarantees to be reduced.
  static Word from_reduced(std::vector<Letter> ls) {
    if (!detail::is_reduced(ls))
      throw std::invalid_argument("sequence is not freely reduced");
    return Word(std::move(ls), kTrusted);
  }

  std::size_t size() const { return ls_.size(); }
  bool empty() const { return ls_.empty(); }
  const std::vector<Letter>& letters() const { return ls_; }
  Letter at(std::size_t i) const { return ls_[i]; }

  auto begin() const { return ls_.begin(); }
  auto end() const { return ls_.end(); }

  auto operator<=>(const Word&) const = default;

 private:
  enum Trusted { kTrusted };
  Word(std::vector<Letter> ls, Trusted) : ls_(std::move(ls)) {}

  std::vector<Letter> ls_;

  friend Word inverse(const Word&);
  friend Word concat(const Word&, const Word&);
  friend class CyclicWord;
};

inline Word free_reduce(std::vector<Letter> raw) { return Word::from_raw(std::move(raw)); }

inline Word inverse(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    out.push_back(it->inverse());
  return Word(std::move(out), Word::kTrusted);  // reversal of a reduced word is reduced
}

inline Word concat(const Word& u, const Word& v) {
  std::vector<Letter> out = u.letters();
  out.reserve(u.size() + v.size());
  for (Letter l : v.letters()) detail::push_reduced(out, l);
  return Word(std::move(out), Word::kTrusted);
}

// g^-1 * w * g, freely reduced.
inline Word conjugate(const Word& w, const Word& g) {
  return concat(concat(inverse(g), w), g);
}

class CyclicWord;
struct CyclicReduction;
CyclicReduction cyclic_reduce(const Word& w);

// A cyclically reduced word. The letter sequence is kept exactly as given;
// the canonical (least) rotation index is derived on construction, and two
// cyclic words are equal iff their canonical rotations agree.
class CyclicWord {
 public:
  CyclicWord() = default;

  // The sequence must be freely reduced with non-inverse first/last letters.
  static CyclicWord from_cyclically_reduced(std::vector<Letter> ls) {
    if (!detail::is_reduced(ls))
      throw std::invalid_argument("sequence is not freely reduced");
    if (ls.size() >= 2 && ls.front() == ls.back().inverse())
      throw std::invalid_argument("sequence is not cyclically reduced");
    return CyclicWord(std::move(ls));
  }

  std::size_t size() const { return ls_.size(); }
  bool empty() const { return ls_.empty(); }
  const std::vector<Letter>& letters() const { return ls_; }
  Letter at(std::size_t i) const { return ls_[i % ls_.size()]; }

  bool is_canonical_rotation() const { return canon_ == 0; }

  std::vector<Letter> canonical_rotation() const {
    std::vector<Letter> out;
    out.reserve(ls_.size());
    for (std::size_t i = 0; i < ls_.size(); ++i) out.push_back(ls_[(canon_ + i) % ls_.size()]);
    return out;
  }

  // A representative reduced word (the sequence as stored).
  Word to_word() const { return Word(ls_, Word::kTrusted); }

  auto begin() const { return ls_.begin(); }
  auto end() const { return ls_.end(); }

  friend bool operator==(const CyclicWord& a, const CyclicWord& b) {
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
      if (a.ls_[(a.canon_ + i) % n] != b.ls_[(b.canon_ + i) % n]) return false;
    return true;
  }
  friend bool operator!=(const CyclicWord& a, const CyclicWord& b) { return !(a == b); }

 private:
  explicit CyclicWord(std::vector<Letter> ls)
      : ls_(std::move(ls)), canon_(detail::least_rotation_index(ls_)) {}

  std::vector<Letter> ls_;
  std::size_t canon_ = 0;

  friend CyclicReduction cyclic_reduce(const Word&);
};

struct CyclicReduction {
  CyclicWord core;
  Word conjugator;  // w == conjugate(core, conjugator), i.e. w = c^-1 * core * c
};

// Peels inverse end-pairs; a cyclically reduced input comes back unchanged
// with an empty conjugator.
inline CyclicReduction cyclic_reduce(const Word& w) {
  const auto& ls = w.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == ls[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(ls.begin() + static_cast<std::ptrdiff_t>(lo),
                           ls.begin() + static_cast<std::ptrdiff_t>(hi));
  // w = p * core * p^-1 for the peeled prefix p, i.e. w = (p^-1)^-1 core p^-1.
  std::vector<Letter> conj;
  conj.reserve(lo);
  for (std::size_t i = lo; i > 0; --i) conj.push_back(ls[i - 1].inverse());
  return CyclicReduction{CyclicWord(std::move(core)), Word::from_reduced(std::move(conj))};
}

inline CyclicWord cyclic_core(const Word& w) { return cyclic_reduce(w).core; }

struct PowerDecomposition {
  bool is_proper_power = false;
  CyclicWord root;
  long exponent = 1;
};

// Visits every freely reduced word of length exactly n, in lexicographic
// order of the letter codes.
template <typename Fn>
void for_each_sphere_word(int rank, long n, Fn&& fn) {
  check_rank(rank);
  if (n == 0) {
    fn(Word());
    return;
  }
  std::vector<Letter> cur;
  cur.reserve(static_cast<std::size_t>(n));
  auto rec = [&](auto&& self, long remaining) -> void {
    if (remaining == 0) {
      fn(Word::from_reduced(cur));
      return;
    }
    for (int c = 0; c < 2 * rank; ++c) {
      Letter l(static_cast<std::uint8_t>(c));
      if (!cur.empty() && cur.back() == l.inverse()) continue;
      cur.push_back(l);
      self(self, remaining - 1);
      cur.pop_back();
    }
  };
  rec(rec, n);
}

// Smallest-period root via the KMP prefix function; linear in |w|. The
// root is the leading period of the stored sequence, so root^e reproduces
// the word verbatim.
inline PowerDecomposition is_proper_power(const CyclicWord& w) {
  if (w.empty()) throw std::invalid_argument("no root of identity");
  const auto& s = w.letters();
  const std::size_t n = s.size();
  std::vector<std::size_t> pi(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = pi[i - 1];
    while (j > 0 && s[i] != s[j]) j = pi[j - 1];
    if (s[i] == s[j]) ++j;
    pi[i] = j;
  }
  std::size_t p = n - pi[n - 1];
  if (n % p != 0) p = n;
  std::vector<Letter> root(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(p));
  PowerDecomposition out;
  out.exponent = static_cast<long>(n / p);
  out.is_proper_power = out.exponent > 1;
  out.root = CyclicWord::from_cyclically_reduced(std::move(root));
  return out;
}

}  // namespace freegrp
