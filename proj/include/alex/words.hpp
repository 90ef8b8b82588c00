#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace alex {

// One letter of a free-group word: a generator index with a sign.
struct Letter {
  int gen = 0;
  int sign = 1;  // +1 or -1

  Letter() = default;
  Letter(int g, int s) : gen(g), sign(s) {}
  Letter inverse() const { return Letter(gen, -sign); }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Freely reduced word over generators 0..m-1. The class invariant is that
// no letter is adjacent to its inverse.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  static Word generator(int gen, int sign = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool trivial() const { return letters_.empty(); }
  int length() const { return static_cast<int>(letters_.size()); }

  Word inverse() const;
  Word pow(int k) const;
  Word operator*(const Word& rhs) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Reduces a raw letter sequence; checks generator indices against the
// alphabet size and throws std::out_of_range on an unknown index.
Word word_reduce(const std::vector<Letter>& letters, int alphabet_size);

// Generator names plus word parsing/printing in the shared text syntax:
// single-letter names admit the compact form ("abAB" = a b a^-1 b^-1);
// otherwise tokens are separated by spaces, a leading-uppercase token is
// an inverse, and name^k (k possibly negative) is a power.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int gen) const { return names_.at(gen); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // -1 if absent

  Word parse_word(const std::string& text) const;
  std::string print_word(const Word& w) const;
  std::string print_letter(const Letter& l) const;

 private:
  bool all_single_lowercase() const;
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

// Element of the integral group ring of the free group: a finite map
// word -> nonzero coefficient.
class RingElement {
 public:
  RingElement() = default;
  explicit RingElement(const Word& w, long long c = 1);
  static RingElement zero() { return RingElement(); }
  static RingElement one() { return RingElement(Word{}); }

  const std::map<Word, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int support_size() const { return static_cast<int>(terms_.size()); }

  RingElement& add(const Word& w, long long c);
  RingElement operator+(const RingElement&) const;
  RingElement operator-(const RingElement&) const;
  RingElement operator-() const;
  RingElement operator*(const RingElement&) const;
  RingElement scaled(long long c) const;

  friend bool operator==(const RingElement&, const RingElement&) = default;

 private:
  std::map<Word, long long> terms_;
};

// Z-linear involution sending each word to its inverse.
RingElement involute(const RingElement& e);

// Left Fox derivative with respect to generator g:
//   d(uv) = du + u dv,  dg/dg = 1,  d(g^-1)/dg = -g^-1,  dh/dg = 0.
RingElement fox_derivative(const Word& w, int gen);

}  // namespace alex
