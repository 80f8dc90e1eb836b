#pragma once

// Stock structures used as oracles everywhere else, plus exhaustive
// enumeration of small semigroups by backtracking over multiplication
// tables with associativity pruning.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "epiworks/epigroup.hpp"
#include "epiworks/identity.hpp"
#include "epiworks/table.hpp"
#include "epiworks/word.hpp"

namespace epiworks {

// {e, a, 0} with e^2 = e, ea = a, ae = 0; a^2 = (ae)a = 0 is forced.
inline RawTable table_P() {
  return RawTable{{"e", "a", "0"},
                  {{0, 1, 2}, {2, 2, 2}, {2, 2, 2}},
                  std::nullopt};
}

// {e, a, 0} with e^2 = e, ae = ea = a, a^2 = 0.
inline RawTable table_C() {
  return RawTable{{"e", "a", "0"},
                  {{0, 1, 2}, {1, 2, 2}, {2, 2, 2}},
                  std::nullopt};
}

// Two-element semilattice with a declared unary operation that sends
// everything to 0.  The declared table deliberately disagrees with the
// derived pseudoinverse at e (whose derived value is e itself).
inline RawTable table_T() {
  return RawTable{{"e", "0"}, {{0, 1}, {1, 1}}, std::vector<int>{1, 1}};
}

// Nil cycle: a with a^(k+1) = 0, elements a, a^2, ..., a^k, 0.
inline RawTable table_N(int k) {
  if (k < 1) {
    throw std::invalid_argument("N(k) needs k >= 1");
  }
  RawTable t;
  t.names.push_back("a");
  for (int i = 2; i <= k; ++i) {
    t.names.push_back("a" + std::to_string(i));
  }
  t.names.push_back("0");
  int n = k + 1;
  int zero = k;
  t.mult.assign(n, std::vector<int>(n, zero));
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      t.mult[i - 1][j - 1] = i + j <= k ? i + j - 1 : zero;
    }
  }
  return t;
}

// Cyclic group of order n, elements g0 ... g{n-1}.
inline RawTable table_Z(int n) {
  if (n < 1) {
    throw std::invalid_argument("Z(n) needs n >= 1");
  }
  RawTable t;
  for (int i = 0; i < n; ++i) {
    t.names.push_back("g" + std::to_string(i));
  }
  t.mult.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      t.mult[i][j] = (i + j) % n;
    }
  }
  return t;
}

// Monogenic semigroup with the given index and period: elements
// a^1 ... a^(index+period-1), named a1 ... ; exponents reduce into the
// cycle once they pass index+period-1.
inline RawTable table_cyclic(int index, int period) {
  if (index < 1 || period < 1) {
    throw std::invalid_argument("cyclic(i,p) needs i >= 1 and p >= 1");
  }
  int n = index + period - 1;
  RawTable t;
  for (int e = 1; e <= n; ++e) {
    t.names.push_back("a" + std::to_string(e));
  }
  auto reduce = [&](int e) {
    return e <= n ? e : (e - index) % period + index;
  };
  t.mult.assign(n, std::vector<int>(n, 0));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      t.mult[i - 1][j - 1] = reduce(i + j) - 1;
    }
  }
  return t;
}

namespace detail {

inline std::vector<std::string> free_nil_letters(int m) {
  std::vector<std::string> ls;
  if (m <= 3) {
    const char* base[] = {"x", "y", "z"};
    for (int i = 0; i < m; ++i) ls.push_back(base[i]);
  } else {
    for (int i = 1; i <= m; ++i) ls.push_back("x" + std::to_string(i));
  }
  return ls;
}

}  // namespace detail

inline constexpr int kMaxCatalogSize = 4096;

// Free object on m letters in the variety cut out by x^2 = 0, xy = yx and
// x1 ... xk = 0: elements are the nonempty letter sets of size < k plus a
// zero; disjoint sets multiply by union, everything else collapses to 0.
inline RawTable table_free_nil(int k, int m) {
  if (k < 2 || m < 1) {
    throw std::invalid_argument("free(k,m) needs k >= 2 and m >= 1");
  }
  if (m > 20) {
    throw ResourceLimitError(~std::uint64_t{0}, kMaxCatalogSize);
  }
  std::vector<std::string> letters = detail::free_nil_letters(m);
  std::vector<unsigned> masks;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    if (std::popcount(mask) <= k - 1) masks.push_back(mask);
    if (masks.size() > static_cast<std::size_t>(kMaxCatalogSize)) {
      throw ResourceLimitError(masks.size(), kMaxCatalogSize);
    }
  }
  std::vector<int> index_of(std::size_t{1} << m, -1);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    index_of[masks[i]] = static_cast<int>(i);
  }
  RawTable t;
  for (unsigned mask : masks) {
    std::string name;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) name += letters[i];
    }
    t.names.push_back(name);
  }
  t.names.push_back("0");
  int n = static_cast<int>(masks.size()) + 1;
  int zero = n - 1;
  t.mult.assign(n, std::vector<int>(n, zero));
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = 0; j < masks.size(); ++j) {
      if ((masks[i] & masks[j]) != 0) continue;
      unsigned u = masks[i] | masks[j];
      if (std::popcount(u) > k - 1) continue;
      t.mult[i][j] = index_of[u];
    }
  }
  return t;
}

// The defining system of the nil variety above, with the zero equations
// spelled out through the absorbing-element sugar.
inline IdentitySystem free_nil_system(int k) {
  IdentitySystem sys;
  Word x = Word::atom("x");
  Word y = Word::atom("y");
  auto push_zero = [&](const Word& w) {
    auto [left, right] = expand_zero(w);
    sys.identities.push_back(left);
    sys.identities.push_back(right);
  };
  push_zero(Word::power(x, 2));
  std::vector<Word> run;
  for (int i = 1; i <= k; ++i) {
    run.push_back(Word::atom("x" + std::to_string(i)));
  }
  push_zero(Word::product(run));
  sys.identities.push_back(Identity{Word::product(x, y), Word::product(y, x)});
  return sys;
}

inline FiniteEpigroup make_P() { return derive_epigroup(table_P()).epigroup; }
inline FiniteEpigroup make_C() { return derive_epigroup(table_C()).epigroup; }
inline FiniteUnarySemigroup make_T() { return validate_table(table_T()); }
inline FiniteEpigroup make_N(int k) {
  return derive_epigroup(table_N(k)).epigroup;
}
inline FiniteEpigroup make_Z(int n) {
  return derive_epigroup(table_Z(n)).epigroup;
}
inline FiniteEpigroup make_cyclic(int index, int period) {
  return derive_epigroup(table_cyclic(index, period)).epigroup;
}

inline FiniteEpigroup make_free_nil(int k, int m) {
  FiniteEpigroup s = derive_epigroup(table_free_nil(k, m)).epigroup;
  // Self-check against the defining system whenever that is affordable:
  // the longest equation uses k+1 distinct letters.
  double cost = 1;
  for (int i = 0; i < k + 1; ++i) cost *= static_cast<double>(s.size());
  if (cost <= 1e7) {
    SystemSatisfaction sat = satisfies_system(s, free_nil_system(k));
    if (!sat.holds) {
      throw std::logic_error("free nil table fails its defining system");
    }
  }
  return s;
}

using NamedStructure = std::variant<FiniteEpigroup, FiniteUnarySemigroup>;

// Accepts P, C, T, N(k), Z(n), cyclic(i,p), free(k,m).
inline RawTable named_table(std::string_view name) {
  std::size_t open = name.find('(');
  std::string base{name.substr(0, open)};
  std::vector<int> args;
  if (open != std::string_view::npos) {
    if (name.back() != ')') {
      throw std::invalid_argument("malformed structure name '" +
                                  std::string(name) + "'");
    }
    std::string_view inner = name.substr(open + 1, name.size() - open - 2);
    std::size_t start = 0;
    while (start <= inner.size()) {
      std::size_t comma = inner.find(',', start);
      std::string part{inner.substr(
          start,
          comma == std::string_view::npos ? std::string_view::npos
                                          : comma - start)};
      try {
        args.push_back(std::stoi(part));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad parameter in structure name '" +
                                    std::string(name) + "'");
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  auto arity = [&](std::size_t want) {
    if (args.size() != want) {
      throw std::invalid_argument("structure '" + base + "' takes " +
                                  std::to_string(want) + " parameter(s)");
    }
  };
  if (base == "P") { arity(0); return table_P(); }
  if (base == "C") { arity(0); return table_C(); }
  if (base == "T") { arity(0); return table_T(); }
  if (base == "N") { arity(1); return table_N(args[0]); }
  if (base == "Z") { arity(1); return table_Z(args[0]); }
  if (base == "cyclic") { arity(2); return table_cyclic(args[0], args[1]); }
  if (base == "free") { arity(2); return table_free_nil(args[0], args[1]); }
  throw std::invalid_argument("unknown structure name '" + std::string(name) +
                              "'");
}

inline NamedStructure make_named(std::string_view name) {
  RawTable t = named_table(name);
  if (t.unary.has_value()) {
    return NamedStructure{validate_table(t)};
  }
  return NamedStructure{derive_epigroup(t).epigroup};
}

// The fixed model suite backing oracle comparisons in the rewrite tests.
inline std::vector<NamedModel> oracle_models() {
  std::vector<NamedModel> out;
  auto add = [&](std::string name, FiniteEpigroup s) {
    out.push_back(NamedModel{std::move(name), std::move(s)});
  };
  add("P", make_P());
  add("C", make_C());
  add("N(2)", make_N(2));
  add("N(3)", make_N(3));
  add("Z(2)", make_Z(2));
  add("Z(3)", make_Z(3));
  add("Z(4)", make_Z(4));
  add("cyclic(2,2)", make_cyclic(2, 2));
  add("cyclic(3,2)", make_cyclic(3, 2));
  add("cyclic(2,3)", make_cyclic(2, 3));
  add("free(3,2)", make_free_nil(3, 2));
  add("free(4,2)", make_free_nil(4, 2));
  add("free(4,3)", make_free_nil(4, 3));
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration of all associative tables on {0, ..., order-1}.

namespace detail {

class TableSearch {
 public:
  TableSearch(int n, bool up_to_iso) : n_(n), up_to_iso_(up_to_iso) {
    cells_.assign(static_cast<std::size_t>(n) * n, -1);
  }

  std::vector<RawTable> run() {
    fill(0);
    return std::move(found_);
  }

 private:
  int at(int i, int j) const { return cells_[static_cast<std::size_t>(i) * n_ + j]; }

  // Associativity over every triple whose partial products are all decided;
  // undecided cells stay unconstrained until later assignments revisit them.
  bool consistent() const {
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) {
        int ab = at(a, b);
        if (ab < 0) continue;
        for (int c = 0; c < n_; ++c) {
          int bc = at(b, c);
          if (bc < 0) continue;
          int left = at(ab, c);
          int right = at(a, bc);
          if (left >= 0 && right >= 0 && left != right) return false;
        }
      }
    }
    return true;
  }

  bool canonical() const {
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
      // Lexicographic compare of the permuted table against this one.
      bool smaller = false, equal = true;
      for (std::size_t idx = 0; idx < cells_.size() && equal; ++idx) {
        int i = static_cast<int>(idx) / n_;
        int j = static_cast<int>(idx) % n_;
        // Inverse image: permuted[i][j] = perm[t[inv(i)][inv(j)]].
        int pi = 0, pj = 0;
        for (int v = 0; v < n_; ++v) {
          if (perm[v] == i) pi = v;
          if (perm[v] == j) pj = v;
        }
        int mapped = perm[at(pi, pj)];
        if (mapped != cells_[idx]) {
          smaller = mapped < cells_[idx];
          equal = false;
        }
      }
      if (!equal && smaller) return false;
    }
    return true;
  }

  void fill(std::size_t pos) {
    if (pos == cells_.size()) {
      if (!up_to_iso_ || canonical()) {
        RawTable t;
        for (int i = 0; i < n_; ++i) t.names.push_back(std::to_string(i));
        t.mult.assign(n_, std::vector<int>(n_, 0));
        for (int i = 0; i < n_; ++i) {
          for (int j = 0; j < n_; ++j) t.mult[i][j] = at(i, j);
        }
        found_.push_back(std::move(t));
      }
      return;
    }
    for (int v = 0; v < n_; ++v) {
      cells_[pos] = v;
      if (consistent()) fill(pos + 1);
    }
    cells_[pos] = -1;
  }

  int n_;
  bool up_to_iso_;
  std::vector<int> cells_;
  std::vector<RawTable> found_;
};

}  // namespace detail

// All associative multiplication tables on order elements, in lexicographic
// table order; with up_to_iso only the representatives whose table is the
// least among all relabelings survive.  Order 4 is allowed but noticeably
// slower than the instant 1..3.
inline std::vector<RawTable> enumerate_semigroup_tables(int order,
                                                        bool up_to_iso = false) {
  if (order < 1 || order > 4) {
    throw std::invalid_argument("enumeration supports orders 1 through 4");
  }
  return detail::TableSearch(order, up_to_iso).run();
}

inline std::vector<FiniteEpigroup> enumerate_semigroups(int order,
                                                        bool up_to_iso = false) {
  std::vector<FiniteEpigroup> out;
  for (const RawTable& t : enumerate_semigroup_tables(order, up_to_iso)) {
    out.push_back(derive_epigroup(t).epigroup);
  }
  return out;
}

}  // namespace epiworks
