#include "alex/words.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace alex {

namespace {

void push_reduced(std::vector<Letter>& out, const Letter& l) {
  if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

std::vector<Letter> reduce_letters(const std::vector<Letter>& in) {
  std::vector<Letter> out;
  out.reserve(in.size());
  for (const Letter& l : in) push_reduced(out, l);
  return out;
}

}  // namespace

Word::Word(std::vector<Letter> letters) : letters_(reduce_letters(letters)) {}

Word Word::generator(int gen, int sign) {
  Word w;
  w.letters_.push_back(Letter(gen, sign));
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.letters_.push_back(it->inverse());
  }
  return w;  // reversal of a reduced word is reduced
}

Word Word::pow(int k) const {
  Word base = k >= 0 ? *this : inverse();
  int n = k >= 0 ? k : -k;
  Word acc;
  for (int i = 0; i < n; ++i) acc = acc * base;
  return acc;
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out = letters_;
  for (const Letter& l : rhs.letters_) push_reduced(out, l);
  Word w;
  w.letters_ = std::move(out);
  return w;
}

Word word_reduce(const std::vector<Letter>& letters, int alphabet_size) {
  for (const Letter& l : letters) {
    if (l.gen < 0 || l.gen >= alphabet_size) {
      throw std::out_of_range("word_reduce: unknown generator index " +
                              std::to_string(l.gen));
    }
    if (l.sign != 1 && l.sign != -1) {
      throw std::invalid_argument("word_reduce: letter sign must be +1 or -1");
    }
  }
  return Word(letters);
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
    const std::string& n = names_[i];
    if (n.empty()) throw std::invalid_argument("empty generator name");
    if (!std::islower(static_cast<unsigned char>(n[0]))) {
      throw std::invalid_argument("generator name must start lowercase: " + n);
    }
    if (!index_.emplace(n, i).second) {
      throw std::invalid_argument("duplicate generator name: " + n);
    }
  }
}

int Alphabet::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

bool Alphabet::all_single_lowercase() const {
  for (const std::string& n : names_) {
    if (n.size() != 1) return false;
  }
  return !names_.empty();
}

namespace {

// Lowercases the first character (used to match "A1" against name "a1").
std::string decapitalize(const std::string& s) {
  std::string t = s;
  if (!t.empty()) t[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(t[0])));
  return t;
}

}  // namespace

Word Alphabet::parse_word(const std::string& text) const {
  std::vector<Letter> letters;
  std::istringstream in(text);
  std::string token;
  std::vector<std::string> tokens;
  while (in >> token) tokens.push_back(token);
  if (tokens.empty()) return Word{};  // empty text = identity

  auto parse_token = [&](const std::string& tok) {
    // Split off an optional ^exponent suffix.
    std::string base = tok;
    long expo = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      base = tok.substr(0, caret);
      std::string etext = tok.substr(caret + 1);
      try {
        size_t used = 0;
        expo = std::stol(etext, &used);
        if (used != etext.size()) throw std::invalid_argument(etext);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent in word token '" + tok + "'");
      }
    }
    int gen = index_of(base);
    int sign = 1;
    if (gen < 0 && !base.empty() &&
        std::isupper(static_cast<unsigned char>(base[0]))) {
      gen = index_of(decapitalize(base));
      sign = -1;
    }
    if (gen >= 0) {
      long reps = expo >= 0 ? expo : -expo;
      int s = expo >= 0 ? sign : -sign;
      for (long r = 0; r < reps; ++r) letters.push_back(Letter(gen, s));
      return true;
    }
    return false;
  };

  auto parse_compact = [&](const std::string& tok) {
    // Per-character form; only valid when every name is a single letter.
    std::vector<Letter> local;
    for (char c : tok) {
      char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      int gen = index_of(std::string(1, lc));
      if (gen < 0) return false;
      local.push_back(Letter(gen, std::islower(static_cast<unsigned char>(c)) ? 1 : -1));
    }
    letters.insert(letters.end(), local.begin(), local.end());
    return true;
  };

  for (const std::string& tok : tokens) {
    if (tok == "1") continue;  // identity, as printed for the trivial word
    if (parse_token(tok)) continue;
    if (parse_compact(tok)) continue;
    throw std::invalid_argument("cannot parse word token '" + tok + "'");
  }
  return Word(letters);
}

std::string Alphabet::print_letter(const Letter& l) const {
  const std::string& n = name(l.gen);
  if (l.sign > 0) return n;
  std::string t = n;
  t[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(t[0])));
  return t;
}

std::string Alphabet::print_word(const Word& w) const {
  if (w.trivial()) return "1";
  std::string out;
  const bool compact = all_single_lowercase();
  for (const Letter& l : w.letters()) {
    if (!compact && !out.empty()) out += ' ';
    out += print_letter(l);
  }
  return out;
}

RingElement::RingElement(const Word& w, long long c) {
  if (c != 0) terms_[w] = c;
}

RingElement& RingElement::add(const Word& w, long long c) {
  if (c == 0) return *this;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

RingElement RingElement::operator+(const RingElement& rhs) const {
  RingElement out = *this;
  for (const auto& [w, c] : rhs.terms_) out.add(w, c);
  return out;
}

RingElement RingElement::operator-(const RingElement& rhs) const {
  RingElement out = *this;
  for (const auto& [w, c] : rhs.terms_) out.add(w, -c);
  return out;
}

RingElement RingElement::operator-() const {
  RingElement out;
  for (const auto& [w, c] : terms_) out.terms_[w] = -c;
  return out;
}

RingElement RingElement::operator*(const RingElement& rhs) const {
  RingElement out;
  for (const auto& [w1, c1] : terms_) {
    for (const auto& [w2, c2] : rhs.terms_) {
      out.add(w1 * w2, c1 * c2);
    }
  }
  return out;
}

RingElement RingElement::scaled(long long c) const {
  RingElement out;
  if (c == 0) return out;
  for (const auto& [w, k] : terms_) out.terms_[w] = k * c;
  return out;
}

RingElement involute(const RingElement& e) {
  RingElement out;
  for (const auto& [w, c] : e.terms()) out.add(w.inverse(), c);
  return out;
}

RingElement fox_derivative(const Word& w, int gen) {
  RingElement d;
  Word prefix;
  for (const Letter& l : w.letters()) {
    Word next = prefix * Word::generator(l.gen, l.sign);
    if (l.gen == gen) {
      if (l.sign > 0) {
        d.add(prefix, 1);        // + (prefix before the letter)
      } else {
        d.add(next, -1);         // - (prefix including the inverse letter)
      }
    }
    prefix = std::move(next);
  }
  return d;
}

}  // namespace alex
