#pragma once

// Finite epigroups: every finite semigroup is one, so the unary operation
// can always be computed from the multiplication table.  For an element x
// with least i, p such that x^i = x^(i+p):
//
//   omega(x) = x^m   for the least multiple m of p with m >= i
//              (the identity of the group that the powers of x fall into)
//   bar(x)   = x^j   for the least j >= max(i, 1) with j = p-1 (mod p)
//              (the inverse of x * omega(x) in that group)
//
// Group elements are exactly those x with omega(x) * x = x.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "epiworks/identity.hpp"
#include "epiworks/table.hpp"
#include "epiworks/word.hpp"

namespace epiworks {

inline constexpr std::uint64_t kDefaultAssignmentBound = 100'000'000;

struct ResourceLimitError : std::runtime_error {
  ResourceLimitError(std::uint64_t needed, std::uint64_t bound)
      : std::runtime_error("assignment space of size " +
                           std::to_string(needed) + " exceeds the bound " +
                           std::to_string(bound)),
        needed(needed),
        bound(bound) {}
  std::uint64_t needed;
  std::uint64_t bound;
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CyclicData {
  int index = 0;   // least i with x^i = x^(i+p); >= 1
  int period = 0;  // least such p; >= 1
  int omega = 0;   // element id of x^m as above
  int pseudoinverse = 0;
};

namespace detail {

inline CyclicData cyclic_data_of(const std::vector<int>& mult, int n, int x) {
  // Walk x, x^2, ... until the first repeat; its first position gives the
  // index, the gap gives the period.
  std::vector<int> seen_at(static_cast<std::size_t>(n), -1);
  std::vector<int> powers;  // powers[e-1] = x^e
  int cur = x;
  int e = 1;
  while (seen_at[static_cast<std::size_t>(cur)] < 0) {
    seen_at[static_cast<std::size_t>(cur)] = e;
    powers.push_back(cur);
    cur = mult[static_cast<std::size_t>(cur) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(x)];
    ++e;
  }
  CyclicData d;
  d.index = seen_at[static_cast<std::size_t>(cur)];
  d.period = e - d.index;
  const auto pow_of = [&](int k) {
    return powers[static_cast<std::size_t>(k - 1)];
  };
  int m = ((d.index + d.period - 1) / d.period) * d.period;
  d.omega = pow_of(m);
  int j = std::max(d.index, 1);
  while (j % d.period != (d.period - 1) % d.period) {
    ++j;
  }
  d.pseudoinverse = pow_of(j);
  return d;
}

}  // namespace detail

inline CyclicData cyclic_data(const FiniteUnarySemigroup& s, int x) {
  const int n = s.size();
  std::vector<int> mult(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      mult[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(b)] = s.mul(a, b);
    }
  }
  return detail::cyclic_data_of(mult, n, x);
}

class FiniteEpigroup {
 public:
  // Builds the unary operation from the multiplication table.
  FiniteEpigroup(std::vector<std::string> names,
                 std::vector<std::vector<int>> mult)
      : sem_(make(std::move(names), std::move(mult))) {
    const int n = sem_.size();
    cyclic_.reserve(static_cast<std::size_t>(n));
    index_ = 1;
    for (int x = 0; x < n; ++x) {
      CyclicData d = cyclic_data(sem_, x);
      index_ = std::max(index_, d.index);
      group_.push_back(sem_.mul(d.omega, x) == x);
      cyclic_.push_back(d);
    }
  }

  const FiniteUnarySemigroup& table() const { return sem_; }
  int size() const { return sem_.size(); }
  const std::string& name(int a) const { return sem_.name(a); }
  int mul(int a, int b) const { return sem_.mul(a, b); }
  int bar(int a) const { return sem_.bar(a); }
  int power(int a, long long k) const { return sem_.power(a, k); }
  int omega(int a) const { return cyclic_[static_cast<std::size_t>(a)].omega; }
  const CyclicData& cyclic(int a) const {
    return cyclic_[static_cast<std::size_t>(a)];
  }
  bool is_group_element(int a) const {
    return group_[static_cast<std::size_t>(a)];
  }
  // Largest index over all elements.
  int index() const { return index_; }

 private:
  static FiniteUnarySemigroup make(std::vector<std::string> names,
                                   std::vector<std::vector<int>> mult) {
    // Validate associativity first (with a throwaway unary), then derive.
    const std::size_t n = names.size();
    FiniteUnarySemigroup probe(names, mult,
                               std::vector<int>(n, 0));
    std::vector<int> unary(n);
    for (int x = 0; x < static_cast<int>(n); ++x) {
      unary[static_cast<std::size_t>(x)] = cyclic_data(probe, x).pseudoinverse;
    }
    return FiniteUnarySemigroup(std::move(names), std::move(mult),
                                std::move(unary));
  }

  FiniteUnarySemigroup sem_;
  std::vector<CyclicData> cyclic_;
  std::vector<char> group_;
  int index_ = 1;
};

// A model with a display name, for reports that cite where a check ran.
struct NamedModel {
  std::string name;
  FiniteEpigroup model;
};

// An element whose declared unary image differs from the pseudoinversion.
struct UnaryMismatch {
  int element;
  int declared;
  int derived;
};

struct Derivation {
  FiniteEpigroup epigroup;
  std::vector<UnaryMismatch> mismatches;  // empty when no unary was declared
};

inline Derivation derive_epigroup(const RawTable& raw) {
  FiniteEpigroup e(raw.names, raw.mult);
  std::vector<UnaryMismatch> mismatches;
  if (raw.unary) {
    for (int x = 0; x < e.size(); ++x) {
      int declared = (*raw.unary)[static_cast<std::size_t>(x)];
      int derived = e.bar(x);
      if (declared != derived) {
        mismatches.push_back({x, declared, derived});
      }
    }
  }
  return {std::move(e), std::move(mismatches)};
}

inline Derivation derive_epigroup(const FiniteUnarySemigroup& s) {
  RawTable raw{s.names(), s.rows(), s.unary_table()};
  return derive_epigroup(raw);
}

inline FiniteEpigroup dual(const FiniteEpigroup& e) {
  const int n = e.size();
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n),
                                     std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = e.mul(b, a);
    }
  }
  return FiniteEpigroup(e.table().names(), rows);
}

// ---------------------------------------------------------------------------
// Word evaluation and identity satisfaction.

using Assignment = std::map<Letter, int>;

namespace detail {

inline int eval_rec(const FiniteUnarySemigroup& s, const Word& w,
                    const std::vector<Letter>& letters,
                    const std::vector<int>& values) {
  switch (w.kind()) {
    case Word::Kind::Atom: {
      for (std::size_t i = 0; i < letters.size(); ++i) {
        if (letters[i] == w.letter()) return values[i];
      }
      throw EvalError("letter '" + w.letter().name() + "' is not assigned");
    }
    case Word::Kind::Bar:
      return s.bar(eval_rec(s, w.body(), letters, values));
    case Word::Kind::Product: {
      int acc = eval_rec(s, w.factors().front(), letters, values);
      for (std::size_t i = 1; i < w.factors().size(); ++i) {
        acc = s.mul(acc, eval_rec(s, w.factors()[i], letters, values));
      }
      return acc;
    }
  }
  throw EvalError("malformed word");  // unreachable
}

}  // namespace detail

inline int eval_word(const FiniteUnarySemigroup& s, const Word& w,
                     const Assignment& assignment) {
  std::vector<Letter> letters;
  std::vector<int> values;
  letters.reserve(assignment.size());
  values.reserve(assignment.size());
  for (const auto& [l, v] : assignment) {
    if (v < 0 || v >= s.size()) {
      throw EvalError("assignment value out of range for letter '" +
                      l.name() + "'");
    }
    letters.push_back(l);
    values.push_back(v);
  }
  return detail::eval_rec(s, w, letters, values);
}

inline int eval_word(const FiniteEpigroup& e, const Word& w,
                     const Assignment& assignment) {
  return eval_word(e.table(), w, assignment);
}

struct Witness {
  Assignment assignment;
  int lhs_value = 0;
  int rhs_value = 0;
};

struct SatisfactionResult {
  bool holds = true;
  std::optional<Witness> witness;
};

// Exhaustive check over all assignments, enumerated as an odometer in
// element order over the name-sorted letters; a returned witness is the
// lexicographically first one.
inline SatisfactionResult satisfies(
    const FiniteUnarySemigroup& s, const Identity& id,
    std::uint64_t max_assignments = kDefaultAssignmentBound) {
  std::set<Letter> letter_set = content(id);
  std::vector<Letter> letters(letter_set.begin(), letter_set.end());
  const std::uint64_t n = static_cast<std::uint64_t>(s.size());
  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    total *= n;
    if (total > max_assignments) {
      throw ResourceLimitError(
          static_cast<std::uint64_t>(std::min<unsigned __int128>(
              total, ~std::uint64_t{0})),
          max_assignments);
    }
  }

  std::vector<int> values(letters.size(), 0);
  while (true) {
    int lv = detail::eval_rec(s, id.lhs, letters, values);
    int rv = detail::eval_rec(s, id.rhs, letters, values);
    if (lv != rv) {
      Witness w;
      for (std::size_t i = 0; i < letters.size(); ++i) {
        w.assignment[letters[i]] = values[i];
      }
      w.lhs_value = lv;
      w.rhs_value = rv;
      return {false, std::move(w)};
    }
    // odometer: rightmost letter fastest = lexicographic order
    std::size_t i = letters.size();
    while (i > 0) {
      --i;
      if (++values[i] < s.size()) break;
      values[i] = 0;
      if (i == 0) return {true, std::nullopt};
    }
    if (letters.empty()) return {true, std::nullopt};
  }
}

inline SatisfactionResult satisfies(
    const FiniteEpigroup& e, const Identity& id,
    std::uint64_t max_assignments = kDefaultAssignmentBound) {
  return satisfies(e.table(), id, max_assignments);
}

struct SystemSatisfaction {
  bool holds = true;
  std::optional<std::size_t> failed_index;
  std::optional<Witness> witness;
};

inline SystemSatisfaction satisfies_system(
    const FiniteUnarySemigroup& s, const IdentitySystem& sys,
    std::uint64_t max_assignments = kDefaultAssignmentBound) {
  for (std::size_t i = 0; i < sys.identities.size(); ++i) {
    SatisfactionResult r = satisfies(s, sys.identities[i], max_assignments);
    if (!r.holds) {
      return {false, i, std::move(r.witness)};
    }
  }
  return {true, std::nullopt, std::nullopt};
}

inline SystemSatisfaction satisfies_system(
    const FiniteEpigroup& e, const IdentitySystem& sys,
    std::uint64_t max_assignments = kDefaultAssignmentBound) {
  return satisfies_system(e.table(), sys, max_assignments);
}

// ---------------------------------------------------------------------------
// Structure reports.

struct EpigroupProfile {
  std::vector<int> group_elements;  // ascending element ids
  int index = 1;
  bool completely_regular = false;
};

inline EpigroupProfile epigroup_profile(const FiniteEpigroup& e) {
  EpigroupProfile p;
  p.index = e.index();
  for (int x = 0; x < e.size(); ++x) {
    if (e.is_group_element(x)) p.group_elements.push_back(x);
  }
  // Two routes to complete regularity that must agree: all elements lie in
  // groups iff x = bar(bar(x)) is satisfied.
  const bool all_group = static_cast<int>(p.group_elements.size()) == e.size();
  Identity cr{Word::atom("x"), Word::bar(Word::bar(Word::atom("x")))};
  const bool by_identity = satisfies(e, cr).holds;
  if (all_group != by_identity) {
    throw std::logic_error("complete-regularity checks disagree");
  }
  p.completely_regular = all_group;
  return p;
}

struct NilProfile {
  bool is_nil = false;
  std::optional<int> degree;  // least n with S^n = {zero}
};

inline std::optional<int> zero_element(const FiniteUnarySemigroup& s) {
  for (int z = 0; z < s.size(); ++z) {
    bool ok = true;
    for (int x = 0; x < s.size() && ok; ++x) {
      ok = s.mul(z, x) == z && s.mul(x, z) == z;
    }
    if (ok) return z;
  }
  return std::nullopt;
}

inline NilProfile nil_profile(const FiniteEpigroup& e) {
  NilProfile np;
  auto zero = zero_element(e.table());
  if (!zero) return np;
  for (int x = 0; x < e.size(); ++x) {
    if (e.omega(x) != *zero) return np;  // some power chain avoids zero
  }
  np.is_nil = true;
  // S^n as a set, grown one multiplication at a time.
  std::set<int> cur;
  for (int x = 0; x < e.size(); ++x) cur.insert(x);
  int n = 1;
  while (!(cur.size() == 1 && *cur.begin() == *zero)) {
    std::set<int> next;
    for (int a : cur) {
      for (int x = 0; x < e.size(); ++x) next.insert(e.mul(a, x));
    }
    cur = std::move(next);
    ++n;
    if (n > e.size() + 1) {
      throw std::logic_error("nil degree exceeds the element count");
    }
  }
  np.degree = n;
  return np;
}

struct RightIdealCheck {
  bool holds = true;
  // First (group element, element) pair in element order whose product
  // leaves the group part.
  std::optional<std::pair<int, int>> witness;
};

inline RightIdealCheck gr_right_ideal(const FiniteEpigroup& e) {
  for (int x = 0; x < e.size(); ++x) {
    if (!e.is_group_element(x)) continue;
    for (int y = 0; y < e.size(); ++y) {
      if (!e.is_group_element(e.mul(x, y))) {
        return {false, std::make_pair(x, y)};
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace epiworks
