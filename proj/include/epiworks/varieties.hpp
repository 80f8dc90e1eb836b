#pragma once

// System-level analysis: when a set of identities carves out a class closed
// under the usual operators, the prefix/suffix padding transform, forced
// periodicity, and the two identity shapes whose satisfaction measures how
// far a model is from complete regularity.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "epiworks/epigroup.hpp"
#include "epiworks/identity.hpp"
#include "epiworks/word.hpp"

namespace epiworks {

struct VarietyVerdict {
  bool verdict = false;
  // Index of the identity that settles a positive verdict, plus what kind it
  // is; a short explanation otherwise.
  std::optional<std::size_t> witness;
  std::string category;
};

// The class of all unary semigroups satisfying the system is a variety of
// epigroups exactly when some identity is either a non-balanced semigroup
// identity or mixes a semigroup side with a unary side.
inline VarietyVerdict is_variety_class(const IdentitySystem& sys) {
  for (std::size_t i = 0; i < sys.identities.size(); ++i) {
    IdentityFlags f = classify_identity(sys.identities[i]);
    if (f.is_semigroup && !f.is_balanced) {
      return {true, i, "semigroup non-balanced"};
    }
    if (f.is_mixed) {
      return {true, i, "mixed"};
    }
  }
  return {false, std::nullopt, "every identity is balanced or strictly unary"};
}

// The variety above coincides with the one generated by the same system over
// all epigroups exactly when some identity is a heterotypical semigroup
// identity or a mixed one.
inline VarietyVerdict equals_varE(const IdentitySystem& sys) {
  for (std::size_t i = 0; i < sys.identities.size(); ++i) {
    IdentityFlags f = classify_identity(sys.identities[i]);
    if (f.is_semigroup && f.is_heterotypical) {
      return {true, i, "semigroup heterotypical"};
    }
    if (f.is_mixed) {
      return {true, i, "mixed"};
    }
  }
  return {false, std::nullopt,
          "every identity is homotypical or strictly unary"};
}

// Prepends m fresh letters and appends n fresh letters to both sides of
// every identity.  The same fresh letters are used across the whole system:
// the first m from the supply go in front, the next n behind.
inline IdentitySystem transform_mn(const IdentitySystem& sys, int m, int n) {
  if (m < 0 || n < 0) {
    throw std::invalid_argument("padding counts must be nonnegative");
  }
  std::vector<Letter> fresh =
      sys.fresh_letters(static_cast<std::size_t>(m + n));
  IdentitySystem out;
  out.identities.reserve(sys.identities.size());
  for (const Identity& id : sys.identities) {
    auto pad = [&](const Word& w) {
      std::vector<Word> fs;
      for (int i = 0; i < m; ++i) {
        fs.push_back(Word::atom(fresh[static_cast<std::size_t>(i)]));
      }
      fs.push_back(w);
      for (int i = 0; i < n; ++i) {
        fs.push_back(Word::atom(fresh[static_cast<std::size_t>(m + i)]));
      }
      return Word::product(std::move(fs));
    };
    out.identities.push_back(Identity{pad(id.lhs), pad(id.rhs)});
  }
  return out;
}

struct PeriodicConsequence {
  long long p = 0;
  long long q = 0;
  Identity power_identity;  // x^p = x^(p+q)
  Identity mixed;           // x' = x^((p+1)q - 1)
};

// A non-balanced semigroup identity forces x^p = x^(p+q) (collapse all
// letters to x; if that balances the lengths, first double a letter the two
// sides count differently), and with it the mixed consequence
// x' = x^((p+1)q-1).
inline std::optional<PeriodicConsequence> periodic_consequence(
    const Identity& id) {
  IdentityFlags f = classify_identity(id);
  if (!f.is_semigroup || f.is_balanced) {
    return std::nullopt;
  }
  std::map<Letter, std::size_t> occ_l, occ_r;
  count_occurrences(id.lhs, occ_l);
  count_occurrences(id.rhs, occ_r);
  long long a = static_cast<long long>(*length(id.lhs));
  long long b = static_cast<long long>(*length(id.rhs));
  if (a == b) {
    // Double the alphabetically first letter the sides disagree on; the
    // lengths then differ by that letter's count difference.
    std::set<Letter> all = content(id);
    for (const Letter& l : all) {
      long long cl = static_cast<long long>(occ_l.count(l) ? occ_l[l] : 0);
      long long cr = static_cast<long long>(occ_r.count(l) ? occ_r[l] : 0);
      if (cl != cr) {
        a += cl;
        b += cr;
        break;
      }
    }
  }
  const long long p = std::min(a, b);
  const long long q = std::max(a, b) - p;
  Word x = Word::atom("x");
  return PeriodicConsequence{
      p, q, Identity{Word::power(x, p), Word::power(x, p + q)},
      Identity{Word::bar(x), Word::power(x, (p + 1) * q - 1)}};
}

// The two distinguished identity shapes, by increasing specificity:
//
//   (A) x_1...x_n = w            lhs linear, rhs longer than n (infinite counts)
//   (B) x_1...x_n = x_1...x_(i-1) bar(bar(x_i...x_j)) x_(j+1)...x_n
//
// recognize_degree_form reports (B) with its (n, i, j) when both apply.
inline constexpr int kFormLinearLonger = 5;
inline constexpr int kFormDoubleBarSegment = 6;

struct DegreeForm {
  int form = 0;  // kFormLinearLonger or kFormDoubleBarSegment
  int n = 0;
  std::optional<int> i;  // 1-based, only for the double-bar segment shape
  std::optional<int> j;
};

// Builds shape (B) on letters x1..xn for 1 <= i <= j <= n.
inline Identity degree_form_identity(int n, int i, int j) {
  if (n < 1 || i < 1 || i > j || j > n) {
    throw std::invalid_argument("need 1 <= i <= j <= n");
  }
  std::vector<Word> letters;
  for (int k = 1; k <= n; ++k) {
    letters.push_back(Word::atom("x" + std::to_string(k)));
  }
  std::vector<Word> lhs_fs = letters;
  std::vector<Word> rhs_fs;
  for (int k = 1; k < i; ++k) {
    rhs_fs.push_back(letters[static_cast<std::size_t>(k - 1)]);
  }
  std::vector<Word> seg(letters.begin() + (i - 1), letters.begin() + j);
  rhs_fs.push_back(Word::bar(Word::bar(Word::product(std::move(seg)))));
  for (int k = j + 1; k <= n; ++k) {
    rhs_fs.push_back(letters[static_cast<std::size_t>(k - 1)]);
  }
  return Identity{Word::product(std::move(lhs_fs)),
                  Word::product(std::move(rhs_fs))};
}

inline std::optional<DegreeForm> recognize_degree_form(const Identity& id) {
  if (!is_linear_word(id.lhs)) {
    return std::nullopt;
  }
  const auto lhs_len = *length(id.lhs);
  const int n = static_cast<int>(lhs_len);

  // Shape (B): compare against the built identity for each (i, j), renamed
  // onto the actual lhs letters.
  std::vector<Letter> lhs_letters;
  if (id.lhs.is_atom()) {
    lhs_letters.push_back(id.lhs.letter());
  } else {
    for (const Word& f : id.lhs.factors()) {
      lhs_letters.push_back(f.letter());
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      Identity pattern = degree_form_identity(n, i, j);
      std::map<Letter, Word> rename;
      for (int k = 1; k <= n; ++k) {
        rename.emplace(Letter("x" + std::to_string(k)),
                       Word::atom(lhs_letters[static_cast<std::size_t>(k - 1)]));
      }
      if (substitute(pattern.rhs, rename) == id.rhs) {
        return DegreeForm{kFormDoubleBarSegment, n, i, j};
      }
    }
  }

  // Shape (A): any rhs longer than the lhs; a side with the unary operation
  // counts as infinitely long.
  auto rhs_len = length(id.rhs);
  if (!rhs_len || *rhs_len > lhs_len) {
    return DegreeForm{kFormLinearLonger, n, std::nullopt, std::nullopt};
  }
  return std::nullopt;
}

struct DegreeWitness {
  int n = 0;
  int i = 0;
  int j = 0;
};

// Least n <= n_max, then lexicographically least (i, j), such that the model
// satisfies shape (B) with those parameters.
inline std::optional<DegreeWitness> find_degree_witness(
    const FiniteEpigroup& e, int n_max,
    std::uint64_t max_assignments = kDefaultAssignmentBound) {
  for (int n = 1; n <= n_max; ++n) {
    for (int i = 1; i <= n; ++i) {
      for (int j = i; j <= n; ++j) {
        if (satisfies(e, degree_form_identity(n, i, j), max_assignments)
                .holds) {
          return DegreeWitness{n, i, j};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace epiworks
