#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "freegrp/letters.hpp"
#include "freegrp/text.hpp"
#include "freegrp/word.hpp"

namespace freegrp {

// Relabeling automorphism: a signed permutation of the generators, i.e. a
// permutation of X ∪ X^-1 commuting with inversion. There are 2^N N! of them.
class TypeIAut {
 public:
  TypeIAut() = default;
  explicit TypeIAut(std::vector<Letter> gen_images) : img_(std::move(gen_images)) {
    std::vector<bool> seen(img_.size(), false);
    for (Letter l : img_) {
      if (l.gen() >= static_cast<int>(img_.size()) || seen[l.gen()])
        throw std::invalid_argument("not a signed permutation");
      seen[l.gen()] = true;
    }
  }

  static TypeIAut identity(int rank) {
    std::vector<Letter> img(rank);
    for (int g = 0; g < rank; ++g) img[g] = Letter::make(g, false);
    return TypeIAut(std::move(img));
  }

  int rank() const { return static_cast<int>(img_.size()); }

  Letter image(Letter l) const {
    Letter m = img_[l.gen()];
    return l.negative() ? m.inverse() : m;
  }

  bool is_identity() const {
    for (int g = 0; g < rank(); ++g)
      if (img_[g] != Letter::make(g, false)) return false;
    return true;
  }

  TypeIAut inverse() const {
    std::vector<Letter> inv(img_.size());
    for (int g = 0; g < rank(); ++g) {
      Letter m = img_[g];
      inv[m.gen()] = Letter::make(g, m.negative());
    }
    return TypeIAut(std::move(inv));
  }

  bool operator==(const TypeIAut&) const = default;

  // Enumeration order: permutations lexicographically, sign masks ascending
  // (bit g flips generator g). The identity comes first.
  static std::vector<TypeIAut> enumerate(int rank) {
    check_rank(rank);
    std::vector<int> perm(rank);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<TypeIAut> out;
    do {
      for (std::uint32_t mask = 0; mask < (1u << rank); ++mask) {
        std::vector<Letter> img(rank);
        for (int g = 0; g < rank; ++g) img[g] = Letter::make(perm[g], (mask >> g) & 1);
        out.emplace_back(std::move(img));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }

 private:
  std::vector<Letter> img_;  // img_[g] = image letter of generator g
};

// Type II Whitehead automorphism with multiplier a and letter set A
// (a in A, a^-1 not in A): each letter u != a^±1 maps to
//   a^-1 (if u^-1 in A)  ·  u  ·  a (if u in A),
// and the multiplier's own generator is fixed.
class TypeIIAut {
 public:
  TypeIIAut() = default;
  TypeIIAut(int rank, Letter a, std::uint64_t members) : rank_(rank), a_(a), members_(members) {
    if (a.gen() >= rank) throw std::invalid_argument("multiplier outside rank");
    if (!(members & bit(a)) || (members & bit(a.inverse())))
      throw std::invalid_argument("multiplier set must contain a and not a^-1");
    if (members >> (2 * rank)) throw std::invalid_argument("letter set outside rank");
  }

  static TypeIIAut from_set(int rank, Letter a, const std::vector<Letter>& set_a) {
    std::uint64_t m = 0;
    for (Letter l : set_a) m |= bit(l);
    return TypeIIAut(rank, a, m);
  }

  int rank() const { return rank_; }
  Letter multiplier() const { return a_; }
  bool in_A(Letter l) const { return (members_ >> l.code) & 1; }

  std::vector<Letter> set_A() const {
    std::vector<Letter> out;
    for (int c = 0; c < 2 * rank_; ++c)
      if ((members_ >> c) & 1) out.push_back(Letter(static_cast<std::uint8_t>(c)));
    return out;
  }

  bool is_identity() const { return members_ == bit(a_); }

  // A = X± \ {a^-1}: global conjugation by the multiplier.
  bool is_inner() const {
    std::uint64_t all = (rank_ >= 32) ? ~0ULL : ((1ULL << (2 * rank_)) - 1);
    return members_ == (all & ~bit(a_.inverse()));
  }

  // (A, a)^-1 = ((A \ {a}) ∪ {a^-1}, a^-1).
  TypeIIAut inverse() const {
    std::uint64_t m = (members_ & ~bit(a_)) | bit(a_.inverse());
    return TypeIIAut(rank_, a_.inverse(), m);
  }

  bool operator==(const TypeIIAut&) const = default;

  // Multipliers in letter order; per multiplier, subset masks of the other
  // 2N-2 letters ascending. include_inner=false drops A = {a} (identity)
  // and A = X± \ {a^-1} (conjugation by a).
  static std::vector<TypeIIAut> enumerate(int rank, bool include_inner) {
    check_rank(rank);
    if (rank > 6) throw std::invalid_argument("type II enumeration limited to rank <= 6");
    std::vector<TypeIIAut> out;
    const int lc = 2 * rank;
    std::vector<int> others;
    for (int ac = 0; ac < lc; ++ac) {
      Letter a(static_cast<std::uint8_t>(ac));
      others.clear();
      for (int c = 0; c < lc; ++c)
        if (c != ac && c != (ac ^ 1)) others.push_back(c);
      const std::uint64_t full = (1ULL << others.size()) - 1;
      for (std::uint64_t mask = 0; mask <= full; ++mask) {
        if (!include_inner && (mask == 0 || mask == full)) continue;
        std::uint64_t members = bit(a);
        for (std::size_t i = 0; i < others.size(); ++i)
          if ((mask >> i) & 1) members |= 1ULL << others[i];
        out.emplace_back(rank, a, members);
      }
    }
    return out;
  }

 private:
  static std::uint64_t bit(Letter l) { return 1ULL << l.code; }

  int rank_ = 0;
  Letter a_;
  std::uint64_t members_ = 0;
};

inline Word apply(const TypeIAut& s, const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter l : w.letters()) out.push_back(s.image(l));
  return Word::from_reduced(std::move(out));  // letter bijections preserve reducedness
}

inline CyclicWord apply(const TypeIAut& s, const CyclicWord& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter l : w.letters()) out.push_back(s.image(l));
  return CyclicWord::from_cyclically_reduced(std::move(out));
}

inline Word apply(const TypeIIAut& t, const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size() * 3);
  const Letter a = t.multiplier();
  const Letter ainv = a.inverse();
  for (Letter l : w.letters()) {
    if (l.gen() == a.gen()) {
      detail::push_reduced(out, l);
      continue;
    }
    if (t.in_A(l.inverse())) detail::push_reduced(out, ainv);
    detail::push_reduced(out, l);
    if (t.in_A(l)) detail::push_reduced(out, a);
  }
  return Word::from_raw(std::move(out));
}

// General endomorphism given by generator images; an automorphism exactly
// when the images generate F(X) (free groups are Hopfian).
struct EndoByImages {
  std::vector<Word> images;

  int rank() const { return static_cast<int>(images.size()); }

  Word apply_to(const Word& w) const {
    std::vector<Letter> out;
    for (Letter l : w.letters()) {
      const Word& im = images[l.gen()];
      if (l.negative()) {
        for (auto it = im.letters().rbegin(); it != im.letters().rend(); ++it)
          detail::push_reduced(out, it->inverse());
      } else {
        for (Letter m : im.letters()) detail::push_reduced(out, m);
      }
    }
    return Word::from_raw(std::move(out));
  }

  bool operator==(const EndoByImages&) const = default;

  static EndoByImages identity(int rank) {
    std::vector<Word> img;
    img.reserve(rank);
    for (int g = 0; g < rank; ++g)
      img.push_back(Word::from_reduced({Letter::make(g, false)}));
    return EndoByImages{std::move(img)};
  }

  static EndoByImages from(const TypeIAut& s) {
    std::vector<Word> img;
    img.reserve(s.rank());
    for (int g = 0; g < s.rank(); ++g)
      img.push_back(Word::from_reduced({s.image(Letter::make(g, false))}));
    return EndoByImages{std::move(img)};
  }

  static EndoByImages from(const TypeIIAut& t) {
    std::vector<Word> img;
    img.reserve(t.rank());
    for (int g = 0; g < t.rank(); ++g) {
      Word x = Word::from_reduced({Letter::make(g, false)});
      img.push_back(apply(t, x));
    }
    return EndoByImages{std::move(img)};
  }

  // Right-conjugation by w: x -> w^-1 x w.
  static EndoByImages conjugation_by(int rank, const Word& w) {
    std::vector<Word> img;
    img.reserve(rank);
    for (int g = 0; g < rank; ++g)
      img.push_back(conjugate(Word::from_reduced({Letter::make(g, false)}), w));
    return EndoByImages{std::move(img)};
  }
};

inline Word apply(const EndoByImages& e, const Word& w) { return e.apply_to(w); }

// phi then psi, i.e. (psi ∘ phi)(x) = psi(phi(x)).
inline EndoByImages compose(const EndoByImages& psi, const EndoByImages& phi) {
  std::vector<Word> img;
  img.reserve(phi.images.size());
  for (const Word& w : phi.images) img.push_back(psi.apply_to(w));
  return EndoByImages{std::move(img)};
}

// Either kind of Whitehead automorphism. A named struct rather than a bare
// std::variant so that unqualified calls never pull std::apply into overload
// resolution.
struct WhiteheadAut {
  std::variant<TypeIAut, TypeIIAut> aut;

  WhiteheadAut(TypeIAut a) : aut(std::move(a)) {}
  WhiteheadAut(TypeIIAut a) : aut(std::move(a)) {}

  const TypeIAut* type1() const { return std::get_if<TypeIAut>(&aut); }
  const TypeIIAut* type2() const { return std::get_if<TypeIIAut>(&aut); }
};

inline Word apply(const WhiteheadAut& a, const Word& w) {
  return std::visit([&](const auto& x) { return apply(x, w); }, a.aut);
}

inline std::string to_string(const TypeIAut& s) {
  std::string out;
  for (int g = 0; g < s.rank(); ++g) {
    if (g) out += ", ";
    out += letter_to_char(Letter::make(g, false));
    out += "->";
    out += letter_to_char(s.image(Letter::make(g, false)));
  }
  return out;
}

inline std::string to_string(const TypeIIAut& t) {
  std::string out = "(";
  out += letter_to_char(t.multiplier());
  out += "; {";
  bool first = true;
  for (Letter l : t.set_A()) {
    if (!first) out += ",";
    out += letter_to_char(l);
    first = false;
  }
  out += "})";
  return out;
}

inline std::string to_string(const WhiteheadAut& a) {
  return std::visit([](const auto& x) { return to_string(x); }, a.aut);
}

namespace detail {
inline std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '\t') out.push_back(c);
  return out;
}
}  // namespace detail

// Type I text form: "a->b, b->A" (every generator listed exactly once).
inline TypeIAut parse_type1(std::string_view text, int rank) {
  check_rank(rank);
  std::string s = detail::strip_spaces(text);
  std::vector<Letter> img(rank, Letter::make(0, false));
  std::vector<bool> given(rank, false);
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    std::string_view entry(s.data() + pos, end - pos);
    if (entry.size() != 4 || entry.substr(1, 2) != "->")
      throw std::invalid_argument("type I entry must look like 'a->b'");
    Letter src = letter_from_char(entry[0], rank);
    if (src.negative()) throw std::invalid_argument("type I sources must be positive letters");
    if (given[src.gen()]) throw std::invalid_argument("duplicate type I source");
    given[src.gen()] = true;
    img[src.gen()] = letter_from_char(entry[3], rank);
    pos = end + 1;
  }
  for (int g = 0; g < rank; ++g)
    if (!given[g]) throw std::invalid_argument("type I map must list every generator");
  return TypeIAut(std::move(img));
}

// Type II text form: "(a; {a,b})" — multiplier, then the letter set A.
inline TypeIIAut parse_type2(std::string_view text, int rank) {
  check_rank(rank);
  std::string s = detail::strip_spaces(text);
  if (s.size() < 7 || s.front() != '(' || s.back() != ')')
    throw std::invalid_argument("type II form is '(a; {x,y,...})'");
  std::size_t semi = s.find(';');
  std::size_t lbrace = s.find('{');
  std::size_t rbrace = s.find('}');
  if (semi != 2 || lbrace != 3 || rbrace != s.size() - 2)
    throw std::invalid_argument("type II form is '(a; {x,y,...})'");
  Letter a = letter_from_char(s[1], rank);
  std::vector<Letter> set_a;
  for (std::size_t i = lbrace + 1; i < rbrace; ++i) {
    if (s[i] == ',') continue;
    set_a.push_back(letter_from_char(s[i], rank));
  }
  return TypeIIAut::from_set(rank, a, set_a);
}

inline WhiteheadAut parse_whitehead(std::string_view text, int rank) {
  std::string s = detail::strip_spaces(text);
  if (!s.empty() && s.front() == '(') return parse_type2(text, rank);
  return parse_type1(text, rank);
}

}  // namespace freegrp
