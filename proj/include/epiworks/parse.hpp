#pragma once

// Concrete syntax for words, identities and identity systems.
//
//   word    := factor+                 juxtaposition = product
//   factor  := primary postfix*
//   primary := letter | '(' word ')'
//   postfix := ' (bar, stackable) | ^<positive integer> (power sugar)
//   letter  := [a-z][0-9]*
//
// Whitespace separates factors but is never required: "xx" and "x x" parse
// alike.  ^ is expanded at parse time, so parsed words never carry powers.

#include <cctype>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "epiworks/identity.hpp"
#include "epiworks/word.hpp"

namespace epiworks {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position + 1)),
        position(position) {}
  std::size_t position;
};

namespace detail {

// Recursive-descent parser over a string_view with 0-based positions.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Word parse_word_to_end() {
    Word w = parse_word();
    skip_ws();
    if (!at_end()) {
      throw ParseError("unexpected trailing input", pos_);
    }
    return w;
  }

  Word parse_word() {
    std::vector<Word> factors;
    skip_ws();
    while (!at_end() && peek() != ')') {
      factors.push_back(parse_factor());
      skip_ws();
    }
    if (factors.empty()) {
      throw ParseError("expected a word", pos_);
    }
    return Word::product(std::move(factors));
  }

 private:
  Word parse_factor() {
    Word w = parse_primary();
    while (!at_end()) {
      if (peek() == '\'') {
        ++pos_;
        w = Word::bar(std::move(w));
      } else if (peek() == '^') {
        ++pos_;
        w = Word::power(w, parse_positive_int());
      } else {
        break;
      }
    }
    return w;
  }

  Word parse_primary() {
    skip_ws();
    if (at_end()) {
      throw ParseError("unexpected end of input", pos_);
    }
    char c = peek();
    if (c == '(') {
      ++pos_;
      Word w = parse_word();
      skip_ws();
      if (at_end() || peek() != ')') {
        throw ParseError("expected ')'", pos_);
      }
      ++pos_;
      return w;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_++;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        ++pos_;
      }
      return Word::atom(std::string(text_.substr(start, pos_ - start)));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  long long parse_positive_int() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
    if (pos_ == start) {
      throw ParseError("expected an exponent", pos_);
    }
    long long value = 0;
    for (std::size_t i = start; i < pos_; ++i) {
      value = value * 10 + (text_[i] - '0');
      if (value > 1'000'000) {
        throw ParseError("exponent too large", start);
      }
    }
    if (value < 1) {
      throw ParseError("exponent must be positive", start);
    }
    return value;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Word parse_word(std::string_view text) {
  return detail::Parser(text).parse_word_to_end();
}

// One identity line: "<word> = <word>", or "<word> = 0" which expands to the
// two padded identities.
inline std::vector<Identity> parse_identity_line(std::string_view line) {
  std::size_t eq = line.find('=');
  if (eq == std::string_view::npos) {
    throw ParseError("expected '='", line.size());
  }
  if (line.find('=', eq + 1) != std::string_view::npos) {
    throw ParseError("more than one '='", line.find('=', eq + 1));
  }
  Word lhs = parse_word(line.substr(0, eq));
  std::string_view rhs_text = line.substr(eq + 1);
  // trim
  std::size_t b = rhs_text.find_first_not_of(" \t");
  std::size_t e = rhs_text.find_last_not_of(" \t");
  if (b == std::string_view::npos) {
    throw ParseError("expected a right-hand side", line.size());
  }
  rhs_text = rhs_text.substr(b, e - b + 1);
  if (rhs_text == "0") {
    auto [first, second] = expand_zero(lhs);
    return {first, second};
  }
  Word rhs = parse_word(rhs_text);
  return {Identity{std::move(lhs), std::move(rhs)}};
}

// A line that must denote a single identity (no "= 0" sugar).
inline Identity parse_identity(std::string_view line) {
  std::vector<Identity> ids = parse_identity_line(line);
  if (ids.size() != 1) {
    throw ParseError("'= 0' is a pair of identities, not one", 0);
  }
  return std::move(ids.front());
}

// System files: one identity per line, '#' starts a comment, blank lines are
// skipped.
inline IdentitySystem parse_system(std::string_view text) {
  IdentitySystem sys;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        for (Identity& id : parse_identity_line(line)) {
          sys.identities.push_back(std::move(id));
        }
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.what(),
                         e.position);
      }
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return sys;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline IdentitySystem parse_system_file(const std::string& path) {
  return parse_system(read_text_file(path));
}

}  // namespace epiworks
