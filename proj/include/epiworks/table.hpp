#pragma once

// Finite multiplication tables with a total unary operation, their
// validation, and the table file format:
//
//   line 1: n
//   line 2: n element names
//   n rows of n names (row r, column c = product r*c)
//   optional: "unary:" followed by n names (image of each element in order)
//
// '#' starts a comment anywhere; blank lines are skipped.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace epiworks {

struct TableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Carries the first offending triple by element name.
struct AssociativityError : TableError {
  AssociativityError(std::string a, std::string b, std::string c)
      : TableError("not associative: (" + a + " " + b + ") " + c +
                   " != " + a + " (" + b + " " + c + ")"),
        a(std::move(a)),
        b(std::move(b)),
        c(std::move(c)) {}
  std::string a, b, c;
};

// Parse result before any validation; unary may be absent.
struct RawTable {
  std::vector<std::string> names;
  std::vector<std::vector<int>> mult;
  std::optional<std::vector<int>> unary;
};

namespace detail {

// Row-major scan; returns the first triple with (ab)c != a(bc).
inline std::optional<std::array<int, 3>> first_associativity_failure(
    const std::vector<std::vector<int>>& mult) {
  const int n = static_cast<int>(mult.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int ab = mult[a][b];
      for (int c = 0; c < n; ++c) {
        if (mult[ab][c] != mult[a][mult[b][c]]) {
          return std::array<int, 3>{a, b, c};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

class FiniteUnarySemigroup {
 public:
  FiniteUnarySemigroup(std::vector<std::string> names,
                       std::vector<std::vector<int>> mult,
                       std::vector<int> unary)
      : names_(std::move(names)), unary_(std::move(unary)) {
    const std::size_t n = names_.size();
    if (n == 0) {
      throw TableError("a semigroup needs at least one element");
    }
    if (mult.size() != n || unary_.size() != n) {
      throw TableError("table shape does not match the element count");
    }
    for (const auto& row : mult) {
      if (row.size() != n) {
        throw TableError("table row length does not match the element count");
      }
      for (int v : row) {
        if (v < 0 || static_cast<std::size_t>(v) >= n) {
          throw TableError("table entry out of range");
        }
      }
    }
    for (int v : unary_) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw TableError("unary entry out of range");
      }
    }
    if (auto bad = detail::first_associativity_failure(mult)) {
      throw AssociativityError(names_[(*bad)[0]], names_[(*bad)[1]],
                               names_[(*bad)[2]]);
    }
    mult_.resize(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        mult_[r * n + c] = mult[r][c];
      }
    }
  }

  int size() const { return static_cast<int>(names_.size()); }

  int mul(int a, int b) const {
    return mult_[static_cast<std::size_t>(a) * names_.size() +
                 static_cast<std::size_t>(b)];
  }

  int bar(int a) const { return unary_[static_cast<std::size_t>(a)]; }

  // a^k for k >= 1, by squaring.
  int power(int a, long long k) const {
    int acc = a;
    --k;
    int sq = a;
    while (k > 0) {
      if (k & 1) acc = mul(acc, sq);
      sq = mul(sq, sq);
      k >>= 1;
    }
    return acc;
  }

  const std::string& name(int a) const {
    return names_[static_cast<std::size_t>(a)];
  }

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& unary_table() const { return unary_; }

  std::optional<int> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  std::vector<std::vector<int>> rows() const {
    const std::size_t n = names_.size();
    std::vector<std::vector<int>> out(n, std::vector<int>(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        out[r][c] = mult_[r * n + c];
      }
    }
    return out;
  }

  friend bool operator==(const FiniteUnarySemigroup&,
                         const FiniteUnarySemigroup&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> mult_;  // n*n row-major
  std::vector<int> unary_;
};

// Shape and associativity check for a raw table that already carries a unary
// operation.
inline FiniteUnarySemigroup validate_table(const RawTable& raw) {
  if (!raw.unary) {
    throw TableError("table has no unary line");
  }
  return FiniteUnarySemigroup(raw.names, raw.mult, *raw.unary);
}

// Opposite multiplication, same unary operation.
inline FiniteUnarySemigroup dual(const FiniteUnarySemigroup& s) {
  const int n = s.size();
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n),
                                     std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = s.mul(b, a);
    }
  }
  return FiniteUnarySemigroup(s.names(), rows, s.unary_table());
}

namespace detail {

inline std::vector<std::string> table_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream ss{std::string(line)};
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return tokens;
}

}  // namespace detail

inline RawTable parse_table(std::string_view text) {
  std::vector<std::string> tokens = detail::table_tokens(text);
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) {
      throw TableError("table file ends unexpectedly");
    }
    return tokens[pos++];
  };

  int n = 0;
  try {
    n = std::stoi(next());
  } catch (const std::exception&) {
    throw TableError("table file must start with the element count");
  }
  if (n < 1) {
    throw TableError("element count must be positive");
  }

  RawTable raw;
  for (int i = 0; i < n; ++i) {
    raw.names.push_back(next());
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (raw.names[static_cast<std::size_t>(i)] ==
          raw.names[static_cast<std::size_t>(j)]) {
        throw TableError("duplicate element name '" +
                         raw.names[static_cast<std::size_t>(i)] + "'");
      }
    }
  }

  auto lookup = [&](const std::string& tok) {
    for (std::size_t i = 0; i < raw.names.size(); ++i) {
      if (raw.names[i] == tok) return static_cast<int>(i);
    }
    throw TableError("unknown element name '" + tok + "'");
  };

  raw.mult.assign(static_cast<std::size_t>(n), {});
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      raw.mult[static_cast<std::size_t>(r)].push_back(lookup(next()));
    }
  }

  if (pos < tokens.size()) {
    if (tokens[pos] != "unary:") {
      throw TableError("unexpected token '" + tokens[pos] +
                       "' (expected 'unary:')");
    }
    ++pos;
    std::vector<int> unary;
    for (int i = 0; i < n; ++i) {
      unary.push_back(lookup(next()));
    }
    raw.unary = std::move(unary);
  }
  if (pos != tokens.size()) {
    throw TableError("trailing tokens after the table");
  }
  return raw;
}

inline std::string format_table(const std::vector<std::string>& names,
                                const std::vector<std::vector<int>>& rows,
                                const std::optional<std::vector<int>>& unary) {
  std::string out = std::to_string(names.size());
  out += '\n';
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ' ';
    out += names[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ' ';
      out += names[static_cast<std::size_t>(row[c])];
    }
    out += '\n';
  }
  if (unary) {
    out += "unary:";
    for (int v : *unary) {
      out += ' ';
      out += names[static_cast<std::size_t>(v)];
    }
    out += '\n';
  }
  return out;
}

inline std::string format_table(const FiniteUnarySemigroup& s) {
  return format_table(s.names(), s.rows(), s.unary_table());
}

}  // namespace epiworks
