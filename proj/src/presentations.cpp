#include "alex/presentations.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace alex {

int PresGenerator::color() const {
  int hit = -1;
  for (int i = 0; i < static_cast<int>(ab.size()); ++i) {
    if (ab[i] == 0) continue;
    if (ab[i] != 1 || hit >= 0) return -1;
    hit = i;
  }
  return hit < 0 ? 0 : hit + 1;
}

Alphabet WeightedPresentation::alphabet() const {
  std::vector<std::string> names;
  names.reserve(gens.size());
  for (const auto& g : gens) names.push_back(g.name);
  return Alphabet(names);
}

std::vector<long> WeightedPresentation::ab_image(const Word& w) const {
  std::vector<long> v(components, 0);
  for (const Letter& l : w.letters()) {
    const auto& ab = gens.at(l.gen).ab;
    for (int i = 0; i < components; ++i) v[i] += l.sign * ab[i];
  }
  return v;
}

long WeightedPresentation::psi_image(const Word& w) const {
  long v = 0;
  for (const Letter& l : w.letters()) v += l.sign * gens.at(l.gen).psi;
  return v;
}

std::vector<std::string> validate(const WeightedPresentation& p) {
  std::vector<std::string> out;
  const int s = p.components;
  if (p.gens.empty()) out.push_back("presentation has no generators");
  if (s < 0) out.push_back("negative component count");
  if (static_cast<int>(p.component_weights.size()) != s) {
    out.push_back("component weight list has wrong length");
    return out;
  }
  if (!p.degrees.empty() && static_cast<int>(p.degrees.size()) != s) {
    out.push_back("degree list has wrong length");
  }
  for (const auto& g : p.gens) {
    if (static_cast<int>(g.ab.size()) != s) {
      out.push_back("generator " + g.name + " has abelianization of wrong length");
      return out;
    }
    long want = 0;
    for (int i = 0; i < s; ++i) want += g.ab[i] * p.component_weights[i];
    if (g.psi != want) {
      out.push_back("generator " + g.name + " has weight " + std::to_string(g.psi) +
                    " but its abelianization gives " + std::to_string(want));
    }
    if (p.meridian && g.color() < 0) {
      out.push_back("generator " + g.name +
                    " is not a meridian (or auxiliary) in a meridian presentation");
    }
  }
  const Alphabet ab = p.alphabet();
  for (int j = 0; j < p.relator_count(); ++j) {
    std::vector<long> v = p.ab_image(p.relators[j]);
    if (std::any_of(v.begin(), v.end(), [](long x) { return x != 0; })) {
      std::ostringstream os;
      os << "relator " << (j + 1) << " (" << ab.print_word(p.relators[j])
         << ") abelianizes to (";
      for (int i = 0; i < s; ++i) os << (i ? "," : "") << v[i];
      os << "), expected zero";
      out.push_back(os.str());
    }
  }
  return out;
}

namespace {

[[noreturn]] void line_error(int lineno, const std::string& msg) {
  throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

long parse_long(const std::string& tok, int lineno) {
  try {
    size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    line_error(lineno, "expected an integer, got '" + tok + "'");
  }
}

}  // namespace

WeightedPresentation parse_presentation(const std::string& text) {
  WeightedPresentation p;
  std::vector<std::string> names;
  std::vector<long> weights, colors;
  std::vector<std::pair<int, std::string>> rel_lines;          // lineno, text
  std::vector<std::tuple<int, std::string, std::vector<long>>> ab_lines;
  std::vector<long> cweights, degrees;
  int components = -1;
  bool derived = false;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    std::vector<std::string> tok = split_tokens(line);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    auto rest_longs = [&](std::vector<long>& dst) {
      dst.clear();
      for (size_t i = 1; i < tok.size(); ++i) dst.push_back(parse_long(tok[i], lineno));
    };
    if (key == "gens") {
      names.assign(tok.begin() + 1, tok.end());
      if (names.empty()) line_error(lineno, "gens line needs at least one name");
    } else if (key == "weights") {
      rest_longs(weights);
    } else if (key == "colors") {
      rest_longs(colors);
    } else if (key == "degrees") {
      rest_longs(degrees);
    } else if (key == "cweights") {
      rest_longs(cweights);
    } else if (key == "components") {
      if (tok.size() != 2) line_error(lineno, "components line needs one number");
      components = static_cast<int>(parse_long(tok[1], lineno));
    } else if (key == "flags") {
      for (size_t i = 1; i < tok.size(); ++i) {
        if (tok[i] == "derived") {
          derived = true;
        } else {
          line_error(lineno, "unknown flag '" + tok[i] + "'");
        }
      }
    } else if (key == "ab") {
      if (tok.size() < 2) line_error(lineno, "ab line needs a generator name");
      std::vector<long> v;
      for (size_t i = 2; i < tok.size(); ++i) v.push_back(parse_long(tok[i], lineno));
      ab_lines.emplace_back(lineno, tok[1], std::move(v));
    } else if (key == "rel") {
      std::string body;
      for (size_t i = 1; i < tok.size(); ++i) {
        if (i > 1) body += ' ';
        body += tok[i];
      }
      rel_lines.emplace_back(lineno, body);
    } else {
      line_error(lineno, "unknown keyword '" + key + "'");
    }
  }

  if (names.empty()) throw std::invalid_argument("presentation has no gens line");
  const int m = static_cast<int>(names.size());
  if (weights.empty()) weights.assign(m, 1);
  if (static_cast<int>(weights.size()) != m) {
    throw std::invalid_argument("weights line length does not match gens");
  }
  if (colors.empty()) colors.assign(m, 0);
  if (static_cast<int>(colors.size()) != m) {
    throw std::invalid_argument("colors line length does not match gens");
  }
  long max_color = 0;
  for (long c : colors) {
    if (c < 0) throw std::invalid_argument("colors must be nonnegative");
    max_color = std::max(max_color, c);
  }
  int s = components >= 0 ? components : static_cast<int>(max_color);
  if (max_color > s) throw std::invalid_argument("color index exceeds component count");

  p.components = s;
  for (int i = 0; i < m; ++i) {
    PresGenerator g;
    g.name = names[i];
    g.psi = weights[i];
    g.ab.assign(s, 0);
    if (colors[i] > 0) g.ab[colors[i] - 1] = 1;
    p.gens.push_back(std::move(g));
  }
  Alphabet alpha = p.alphabet();  // validates names
  for (const auto& [ln, name, v] : ab_lines) {
    int idx = alpha.index_of(name);
    if (idx < 0) line_error(ln, "ab line names unknown generator '" + name + "'");
    if (static_cast<int>(v.size()) != s) {
      line_error(ln, "ab vector length does not match component count");
    }
    p.gens[idx].ab = v;
  }
  if (!cweights.empty() && static_cast<int>(cweights.size()) != s) {
    throw std::invalid_argument("cweights line length does not match components");
  }
  if (cweights.empty()) {
    // Infer from the first meridian generator of each component; default 1.
    cweights.assign(s, 1);
    std::vector<bool> seen(s, false);
    for (const auto& g : p.gens) {
      int c = g.color();
      if (c > 0 && !seen[c - 1]) {
        seen[c - 1] = true;
        cweights[c - 1] = g.psi;
      }
    }
  }
  p.component_weights = cweights;
  if (!degrees.empty() && static_cast<int>(degrees.size()) != s) {
    throw std::invalid_argument("degrees line length does not match components");
  }
  p.degrees = degrees;
  p.meridian = !derived;

  for (const auto& [ln, body] : rel_lines) {
    try {
      p.relators.push_back(alpha.parse_word(body));
    } catch (const std::exception& e) {
      line_error(ln, e.what());
    }
  }
  return p;
}

std::string print_presentation(const WeightedPresentation& p) {
  std::ostringstream os;
  const Alphabet alpha = p.alphabet();
  os << "components " << p.components << "\n";
  os << "gens";
  for (const auto& g : p.gens) os << ' ' << g.name;
  os << "\nweights";
  for (const auto& g : p.gens) os << ' ' << g.psi;
  os << "\ncolors";
  bool need_ab = false;
  for (const auto& g : p.gens) {
    int c = g.color();
    os << ' ' << std::max(c, 0);
    if (c < 0) need_ab = true;
  }
  os << "\n";
  if (need_ab) {
    for (const auto& g : p.gens) {
      if (g.color() >= 0) continue;
      os << "ab " << g.name;
      for (long v : g.ab) os << ' ' << v;
      os << "\n";
    }
  }
  os << "cweights";
  for (long w : p.component_weights) os << ' ' << w;
  os << "\n";
  if (!p.degrees.empty()) {
    os << "degrees";
    for (long d : p.degrees) os << ' ' << d;
    os << "\n";
  }
  if (!p.meridian) os << "flags derived\n";
  for (const Word& r : p.relators) os << "rel " << alpha.print_word(r) << "\n";
  return os.str();
}

WeightedPresentation product_presentation(const WeightedPresentation& left,
                                          const WeightedPresentation& right) {
  WeightedPresentation p;
  const int ml = left.gen_count(), mr = right.gen_count();
  const int sl = left.components, sr = right.components;
  p.components = sl + sr;

  std::set<std::string> used;
  for (const auto& g : left.gens) {
    PresGenerator ng = g;
    ng.ab.resize(sl + sr, 0);
    used.insert(ng.name);
    p.gens.push_back(std::move(ng));
  }
  for (const auto& g : right.gens) {
    PresGenerator ng;
    ng.name = g.name;
    while (used.count(ng.name)) ng.name += "_r";
    used.insert(ng.name);
    ng.psi = g.psi;
    ng.ab.assign(sl + sr, 0);
    for (int i = 0; i < sr; ++i) ng.ab[sl + i] = g.ab[i];
    p.gens.push_back(std::move(ng));
  }

  p.component_weights = left.component_weights;
  p.component_weights.insert(p.component_weights.end(),
                             right.component_weights.begin(),
                             right.component_weights.end());
  std::vector<long> dl = left.degrees.empty() ? std::vector<long>(sl, 0) : left.degrees;
  std::vector<long> dr = right.degrees.empty() ? std::vector<long>(sr, 0) : right.degrees;
  p.degrees = dl;
  p.degrees.insert(p.degrees.end(), dr.begin(), dr.end());
  p.meridian = left.meridian && right.meridian;

  for (const Word& r : left.relators) p.relators.push_back(r);
  for (const Word& r : right.relators) {
    std::vector<Letter> ls;
    for (const Letter& l : r.letters()) ls.emplace_back(l.gen + ml, l.sign);
    p.relators.push_back(Word(std::move(ls)));
  }
  for (int i = 0; i < ml; ++i) {
    for (int j = 0; j < mr; ++j) {
      p.relators.push_back(Word({Letter(i, 1), Letter(ml + j, 1),
                                 Letter(i, -1), Letter(ml + j, -1)}));
    }
  }
  ProductInfo info;
  info.left_gens = ml;
  info.right_gens = mr;
  info.left_relators = left.relator_count();
  info.right_relators = right.relator_count();
  info.left_components = sl;
  p.product = info;
  return p;
}

ChangedPresentation change_generators(const WeightedPresentation& p,
                                      ChangeScheme scheme) {
  if (!p.product) {
    throw std::invalid_argument("change_generators requires a product presentation");
  }
  const ProductInfo info = *p.product;
  const int ml = info.left_gens, mr = info.right_gens;
  const int m = ml + mr;
  if (p.gen_count() != m) {
    throw std::invalid_argument("product info inconsistent with generator count");
  }

  // New generators as words in the old ones.
  std::vector<Word> sub(m);
  sub[0] = Word::generator(0);  // x1 = a1
  for (int i = 1; i < ml; ++i) {
    sub[i] = Word::generator(i) * Word::generator(0, -1);  // xi = ai a1^-1
  }
  if (scheme == ChangeScheme::MIXED) {
    for (int j = 0; j < mr; ++j) {
      sub[ml + j] = Word::generator(ml + j) * Word::generator(0, -1);  // yj = bj a1^-1
    }
  } else {
    sub[ml] = Word::generator(ml);  // y1 = b1
    for (int j = 1; j < mr; ++j) {
      sub[ml + j] = Word::generator(ml + j) * Word::generator(ml, -1);  // yj = bj b1^-1
    }
  }

  // Old generators as words in the new ones.
  std::vector<Word> old_in_new(m);
  old_in_new[0] = Word::generator(0);
  for (int i = 1; i < ml; ++i) {
    old_in_new[i] = Word::generator(i) * Word::generator(0);  // ai = xi x1
  }
  if (scheme == ChangeScheme::MIXED) {
    for (int j = 0; j < mr; ++j) {
      old_in_new[ml + j] = Word::generator(ml + j) * Word::generator(0);  // bj = yj x1
    }
  } else {
    old_in_new[ml] = Word::generator(ml);
    for (int j = 1; j < mr; ++j) {
      old_in_new[ml + j] = Word::generator(ml + j) * Word::generator(ml);  // bj = yj y1
    }
  }

  auto substitute = [&](const Word& w) {
    Word out;
    for (const Letter& l : w.letters()) {
      out = out * (l.sign > 0 ? old_in_new[l.gen] : old_in_new[l.gen].inverse());
    }
    return out;
  };

  WeightedPresentation q;
  q.components = p.components;
  q.component_weights = p.component_weights;
  q.degrees = p.degrees;
  q.meridian = false;
  for (int k = 0; k < m; ++k) {
    PresGenerator g;
    g.name = (k < ml ? "x" + std::to_string(k + 1) : "y" + std::to_string(k - ml + 1));
    g.psi = p.psi_image(sub[k]);
    g.ab = p.ab_image(sub[k]);
    q.gens.push_back(std::move(g));
  }

  // Commutator relators first.
  if (scheme == ChangeScheme::MIXED) {
    for (int j = 0; j < mr; ++j) {  // [x1, yj]
      q.relators.push_back(Word({Letter(0, 1), Letter(ml + j, 1),
                                 Letter(0, -1), Letter(ml + j, -1)}));
    }
    for (int i = 1; i < ml; ++i) {
      for (int j = 0; j < mr; ++j) {  // xi x1 yj xi^-1 x1^-1 yj^-1
        q.relators.push_back(Word({Letter(i, 1), Letter(0, 1), Letter(ml + j, 1),
                                   Letter(i, -1), Letter(0, -1), Letter(ml + j, -1)}));
      }
    }
  } else {
    for (int i = 0; i < ml; ++i) {
      for (int j = 0; j < mr; ++j) {  // [xi, yj]
        q.relators.push_back(Word({Letter(i, 1), Letter(ml + j, 1),
                                   Letter(i, -1), Letter(ml + j, -1)}));
      }
    }
  }
  // Left relators, substituted.
  for (int r = 0; r < info.left_relators; ++r) {
    q.relators.push_back(substitute(p.relators[r]));
  }
  // Right relators: in the mixed scheme the x1 factors cancel (x1 commutes
  // with every yj and right relators have zero total exponent), so the
  // letter swap bj -> yj is a valid relator choice; the split scheme
  // substitutes honestly.
  for (int r = 0; r < info.right_relators; ++r) {
    const Word& w = p.relators[info.left_relators + r];
    if (scheme == ChangeScheme::MIXED) {
      q.relators.push_back(w);  // indices coincide: bj and yj share slot ml+j
    } else {
      q.relators.push_back(substitute(w));
    }
  }
  return ChangedPresentation{std::move(q), std::move(sub)};
}

namespace {

WeightedPresentation make_basic(const std::vector<std::string>& names,
                                const std::vector<long>& weights,
                                const std::vector<long>& colors, int s,
                                const std::vector<long>& degrees,
                                const std::vector<std::string>& rels) {
  WeightedPresentation p;
  p.components = s;
  p.component_weights.assign(s, 1);
  p.degrees = degrees;
  for (size_t i = 0; i < names.size(); ++i) {
    PresGenerator g;
    g.name = names[i];
    g.psi = weights[i];
    g.ab.assign(s, 0);
    if (colors[i] > 0) g.ab[colors[i] - 1] = 1;
    p.gens.push_back(std::move(g));
  }
  Alphabet a = p.alphabet();
  for (const std::string& r : rels) p.relators.push_back(a.parse_word(r));
  return p;
}

}  // namespace

std::vector<std::string> corpus_names() {
  return {"cuspidal-cubic", "conic", "line", "parallel-lines:k", "ffm1",
          "trefoil-x-line"};
}

std::optional<CorpusEntry> corpus_lookup(const std::string& name) {
  CorpusEntry e;
  e.name = name;
  if (name == "cuspidal-cubic") {
    e.summary = "cuspidal cubic; knot group of the trefoil";
    e.pres = make_basic({"a1", "a2"}, {1, 1}, {1, 1}, 1, {3},
                        {"a1 a2 a1 A2 A1 A2"});
    e.irreducible = true;
    e.delta0_class = 2;  // finite nonzero
    e.higher_class = 1;
    e.pencil_class = 2;
    return e;
  }
  if (name == "conic") {
    e.summary = "smooth conic; abelian complement";
    e.pres = make_basic({"a1", "a2"}, {1, 1}, {1, 1}, 1, {2}, {"a1 A2"});
    e.irreducible = true;
    e.delta0_class = 1;  // zero
    e.higher_class = 1;
    e.pencil_class = 2;
    return e;
  }
  if (name == "line") {
    e.summary = "single line; infinite cyclic complement";
    e.pres = make_basic({"b1"}, {1}, {1}, 1, {1}, {});
    e.irreducible = true;
    e.delta0_class = 1;  // zero
    e.higher_class = 1;
    e.pencil_class = 2;
    return e;
  }
  if (name.rfind("parallel-lines:", 0) == 0) {
    std::string arg = name.substr(std::string("parallel-lines:").size());
    long k = 0;
    try {
      size_t used = 0;
      k = std::stol(arg, &used);
      if (used != arg.size()) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (k < 1 || k > 64) return std::nullopt;
    std::vector<std::string> names;
    std::vector<long> ones(k, 1), colors, degs(k, 1);
    for (long i = 1; i <= k; ++i) {
      names.push_back("b" + std::to_string(i));
      colors.push_back(i);
    }
    e.summary = "arrangement of " + std::to_string(k) + " parallel lines; free group";
    e.pres = make_basic(names, ones, colors, static_cast<int>(k), degs, {});
    e.irreducible = (k == 1);
    e.delta0_class = (k == 1) ? 1 : 3;  // zero / infinite
    e.higher_class = (k == 1) ? 1 : 2;  // finite / infinite
    e.pencil_class = (k == 1) ? 2 : 1;
    return e;
  }
  if (name == "ffm1") {
    e.summary = "two cuspidal-cubic fibers of a pencil; braid-monodromy presentation";
    e.pres = make_basic({"a1", "a2", "g"}, {1, 1, 0}, {1, 2, 0}, 2, {3, 3},
                        {"g a2 G A2", "A1 g a1 a2 A1 G a1 A2",
                         "G A1 g a1 a1 g A1"});
    e.irreducible = false;
    e.delta0_class = 3;  // infinite
    e.higher_class = 1;  // finite at every level n >= 1
    e.pencil_class = 1;
    return e;
  }
  if (name == "trefoil-x-line") {
    auto cubic = corpus_lookup("cuspidal-cubic");
    auto line = corpus_lookup("line");
    e.summary = "cuspidal cubic with a transversal line; product group";
    e.pres = product_presentation(cubic->pres, line->pres);
    e.irreducible = false;
    e.delta0_class = 1;  // zero
    e.higher_class = 1;
    e.pencil_class = 2;
    return e;
  }
  return std::nullopt;
}

}  // namespace alex
