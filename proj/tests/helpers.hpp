#pragma once

// Shared generators and independent oracles for the test suite.  The word
// generators here count and enumerate flattened terms directly, so they can
// cross-check the library's own constructions.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "epiworks/epiworks.hpp"

namespace ewtest {

namespace ew = epiworks;

// All distinct flattened words of weight <= max_weight over the given
// letters.  A flat product splits uniquely as (non-product head) * (rest),
// which keeps the enumeration duplicate-free.
inline std::vector<ew::Word> all_words(const std::vector<ew::Letter>& letters,
                                       int max_weight) {
  // by_weight[w] = all words of weight exactly w; heads[w] = the non-product
  // ones (atoms and bars).
  std::vector<std::vector<ew::Word>> by_weight(
      static_cast<std::size_t>(max_weight) + 1);
  std::vector<std::vector<ew::Word>> heads(
      static_cast<std::size_t>(max_weight) + 1);
  for (const ew::Letter& l : letters) {
    heads[0].push_back(ew::Word::atom(l));
    by_weight[0].push_back(ew::Word::atom(l));
  }
  for (int w = 1; w <= max_weight; ++w) {
    for (const ew::Word& body : by_weight[static_cast<std::size_t>(w - 1)]) {
      heads[static_cast<std::size_t>(w)].push_back(ew::Word::bar(body));
      by_weight[static_cast<std::size_t>(w)].push_back(ew::Word::bar(body));
    }
    for (int wa = 0; wa <= w - 1; ++wa) {
      int wb = w - 1 - wa;
      for (const ew::Word& head : heads[static_cast<std::size_t>(wa)]) {
        for (const ew::Word& rest : by_weight[static_cast<std::size_t>(wb)]) {
          by_weight[static_cast<std::size_t>(w)].push_back(
              ew::Word::product(head, rest));
        }
      }
    }
  }
  std::vector<ew::Word> out;
  for (auto& bucket : by_weight) {
    for (ew::Word& w : bucket) out.push_back(std::move(w));
  }
  return out;
}

// Random flattened word of weight <= budget; deterministic for a fixed rng.
inline ew::Word random_word(std::mt19937& rng,
                            const std::vector<ew::Letter>& letters,
                            int budget) {
  auto pick_letter = [&]() {
    return letters[rng() % letters.size()];
  };
  if (budget == 0) return ew::Word::atom(pick_letter());
  switch (rng() % 3) {
    case 0:
      return ew::Word::atom(pick_letter());
    case 1:
      return ew::Word::bar(random_word(rng, letters, budget - 1));
    default: {
      int left = static_cast<int>(rng() % static_cast<unsigned>(budget));
      return ew::Word::product(random_word(rng, letters, left),
                               random_word(rng, letters, budget - 1 - left));
    }
  }
}

// Independent associativity count: walk every table on n elements as an
// odometer and test all triples.  Usable up to n = 3.
inline int count_associative_tables(int n) {
  const int cells = n * n;
  std::vector<int> t(static_cast<std::size_t>(cells), 0);
  auto at = [&](int i, int j) { return t[static_cast<std::size_t>(i) * n + j]; };
  int count = 0;
  while (true) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      for (int b = 0; b < n && ok; ++b) {
        for (int c = 0; c < n && ok; ++c) {
          ok = at(at(a, b), c) == at(a, at(b, c));
        }
      }
    }
    if (ok) ++count;
    int i = cells;
    while (i > 0) {
      --i;
      if (++t[static_cast<std::size_t>(i)] < n) break;
      t[static_cast<std::size_t>(i)] = 0;
      if (i == 0) return count;
    }
  }
}

// The fixed oracle suite, built once per test binary.
inline const std::vector<ew::NamedModel>& models() {
  static const std::vector<ew::NamedModel> ms = ew::oracle_models();
  return ms;
}

}  // namespace ewtest
