#pragma once

// Terms of the free unary semigroup: letters, concatenation, and a postfix
// unary operation rendered as '.  Products are kept flat (no product node
// directly under a product node), so structural equality on Word is equality
// modulo associativity and nothing else.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace epiworks {

// A variable name: one lowercase letter followed by optional digits.
class Letter {
 public:
  Letter() = default;
  explicit Letter(std::string name) : name_(std::move(name)) {
    if (!valid(name_)) {
      throw std::invalid_argument("invalid letter name '" + name_ + "'");
    }
  }

  static bool valid(const std::string& s) {
    if (s.empty() || s[0] < 'a' || s[0] > 'z') {
      return false;
    }
    return std::all_of(s.begin() + 1, s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  }

  const std::string& name() const { return name_; }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;

 private:
  std::string name_;
};

class Word {
 public:
  enum class Kind { Atom, Product, Bar };

  static Word atom(Letter l) {
    Word w(Kind::Atom);
    w.letter_ = std::move(l);
    return w;
  }

  static Word atom(const std::string& name) { return atom(Letter(name)); }

  static Word bar(Word body) {
    Word w(Kind::Bar);
    w.parts_.push_back(std::move(body));
    return w;
  }

  // Concatenation.  Nested products are spliced in place; a singleton list
  // yields its only entry unchanged.  Empty lists are rejected: there is no
  // empty word.
  static Word product(std::vector<Word> factors) {
    std::vector<Word> flat;
    flat.reserve(factors.size());
    for (Word& f : factors) {
      if (f.kind_ == Kind::Product) {
        for (Word& g : f.parts_) {
          flat.push_back(std::move(g));
        }
      } else {
        flat.push_back(std::move(f));
      }
    }
    if (flat.empty()) {
      throw std::invalid_argument("a word must have at least one factor");
    }
    if (flat.size() == 1) {
      return std::move(flat.front());
    }
    Word w(Kind::Product);
    w.parts_ = std::move(flat);
    return w;
  }

  static Word product(Word a, Word b) {
    std::vector<Word> fs;
    fs.push_back(std::move(a));
    fs.push_back(std::move(b));
    return product(std::move(fs));
  }

  // base^k for k >= 1.
  static Word power(const Word& base, long long k) {
    if (k < 1) {
      throw std::invalid_argument("power exponent must be positive");
    }
    std::vector<Word> fs(static_cast<std::size_t>(k), base);
    return product(std::move(fs));
  }

  Kind kind() const { return kind_; }
  bool is_atom() const { return kind_ == Kind::Atom; }
  bool is_product() const { return kind_ == Kind::Product; }
  bool is_bar() const { return kind_ == Kind::Bar; }

  const Letter& letter() const {
    if (!is_atom()) throw std::logic_error("letter() on a non-atom");
    return letter_;
  }

  const std::vector<Word>& factors() const {
    if (!is_product()) throw std::logic_error("factors() on a non-product");
    return parts_;
  }

  const Word& body() const {
    if (!is_bar()) throw std::logic_error("body() on a non-bar");
    return parts_.front();
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  explicit Word(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Atom;
  Letter letter_;            // Atom only
  std::vector<Word> parts_;  // Product: >= 2 factors; Bar: exactly the body
};

inline std::size_t weight(const Word& w) {
  switch (w.kind()) {
    case Word::Kind::Atom:
      return 0;
    case Word::Kind::Bar:
      return 1 + weight(w.body());
    case Word::Kind::Product: {
      std::size_t total = w.factors().size() - 1;
      for (const Word& f : w.factors()) {
        total += weight(f);
      }
      return total;
    }
  }
  return 0;  // unreachable
}

inline bool is_semigroup_word(const Word& w) {
  switch (w.kind()) {
    case Word::Kind::Atom:
      return true;
    case Word::Kind::Bar:
      return false;
    case Word::Kind::Product:
      return std::all_of(w.factors().begin(), w.factors().end(),
                         is_semigroup_word);
  }
  return true;  // unreachable
}

// Number of letter occurrences; nullopt when the word is not a semigroup
// word (the unary operation makes it "infinitely long").
inline std::optional<std::size_t> length(const Word& w) {
  switch (w.kind()) {
    case Word::Kind::Atom:
      return 1;
    case Word::Kind::Bar:
      return std::nullopt;
    case Word::Kind::Product: {
      std::size_t total = 0;
      for (const Word& f : w.factors()) {
        auto l = length(f);
        if (!l) return std::nullopt;
        total += *l;
      }
      return total;
    }
  }
  return std::nullopt;  // unreachable
}

inline void collect_content(const Word& w, std::set<Letter>& out) {
  switch (w.kind()) {
    case Word::Kind::Atom:
      out.insert(w.letter());
      return;
    case Word::Kind::Bar:
      collect_content(w.body(), out);
      return;
    case Word::Kind::Product:
      for (const Word& f : w.factors()) collect_content(f, out);
      return;
  }
}

inline std::set<Letter> content(const Word& w) {
  std::set<Letter> out;
  collect_content(w, out);
  return out;
}

// The rightmost letter; unary factors contribute the last letter of their
// body.
inline const Letter& last_letter(const Word& w) {
  switch (w.kind()) {
    case Word::Kind::Atom:
      return w.letter();
    case Word::Kind::Bar:
      return last_letter(w.body());
    case Word::Kind::Product:
      return last_letter(w.factors().back());
  }
  return w.letter();  // unreachable
}

inline const Letter& first_letter(const Word& w) {
  switch (w.kind()) {
    case Word::Kind::Atom:
      return w.letter();
    case Word::Kind::Bar:
      return first_letter(w.body());
    case Word::Kind::Product:
      return first_letter(w.factors().front());
  }
  return w.letter();  // unreachable
}

inline void count_occurrences(const Word& w, std::map<Letter, std::size_t>& out) {
  switch (w.kind()) {
    case Word::Kind::Atom:
      ++out[w.letter()];
      return;
    case Word::Kind::Bar:
      count_occurrences(w.body(), out);
      return;
    case Word::Kind::Product:
      for (const Word& f : w.factors()) count_occurrences(f, out);
      return;
  }
}

struct WordStats {
  std::size_t weight = 0;
  std::optional<std::size_t> length;  // nullopt = infinite
  std::set<Letter> content;
  Letter last_letter;
  // Per-letter occurrence counts; only meaningful (and only present) for
  // semigroup words.
  std::optional<std::map<Letter, std::size_t>> occurrences;
};

inline WordStats analyze_word(const Word& w) {
  WordStats s;
  s.weight = weight(w);
  s.length = length(w);
  s.content = content(w);
  s.last_letter = last_letter(w);
  if (is_semigroup_word(w)) {
    std::map<Letter, std::size_t> occ;
    count_occurrences(w, occ);
    s.occurrences = std::move(occ);
  }
  return s;
}

// Every letter occurs exactly once and there is no unary operation.
inline bool is_linear_word(const Word& w) {
  if (!is_semigroup_word(w)) return false;
  std::map<Letter, std::size_t> occ;
  count_occurrences(w, occ);
  return std::all_of(occ.begin(), occ.end(),
                     [](const auto& kv) { return kv.second == 1; });
}

namespace detail {

// Unary factors render as a postfix chain on their base: x'', (x y)'.
inline std::string render_bar_base(const Word& w);

}  // namespace detail

inline std::string render_word(const Word& w) {
  switch (w.kind()) {
    case Word::Kind::Atom:
      return w.letter().name();
    case Word::Kind::Bar:
      return detail::render_bar_base(w.body()) + "'";
    case Word::Kind::Product: {
      std::string out;
      for (const Word& f : w.factors()) {
        if (!out.empty()) out += ' ';
        out += render_word(f);
      }
      return out;
    }
  }
  return {};  // unreachable
}

namespace detail {

inline std::string render_bar_base(const Word& w) {
  switch (w.kind()) {
    case Word::Kind::Atom:
      return w.letter().name();
    case Word::Kind::Bar:
      return render_bar_base(w.body()) + "'";
    case Word::Kind::Product:
      return "(" + render_word(w) + ")";
  }
  return {};  // unreachable
}

}  // namespace detail

// Simultaneous substitution; letters absent from the map stay themselves.
// The result is re-flattened by construction.
inline Word substitute(const Word& w, const std::map<Letter, Word>& sub) {
  switch (w.kind()) {
    case Word::Kind::Atom: {
      auto it = sub.find(w.letter());
      return it == sub.end() ? w : it->second;
    }
    case Word::Kind::Bar:
      return Word::bar(substitute(w.body(), sub));
    case Word::Kind::Product: {
      std::vector<Word> fs;
      fs.reserve(w.factors().size());
      for (const Word& f : w.factors()) {
        fs.push_back(substitute(f, sub));
      }
      return Word::product(std::move(fs));
    }
  }
  return w;  // unreachable
}

// Mirror image: factors reversed at every level, unary bodies reversed in
// place.
inline Word reverse_word(const Word& w) {
  switch (w.kind()) {
    case Word::Kind::Atom:
      return w;
    case Word::Kind::Bar:
      return Word::bar(reverse_word(w.body()));
    case Word::Kind::Product: {
      std::vector<Word> fs;
      fs.reserve(w.factors().size());
      for (auto it = w.factors().rbegin(); it != w.factors().rend(); ++it) {
        fs.push_back(reverse_word(*it));
      }
      return Word::product(std::move(fs));
    }
  }
  return w;  // unreachable
}

}  // namespace epiworks
