#pragma once

// Identities (formal equalities of words) and finite systems of them.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "epiworks/word.hpp"

namespace epiworks {

struct Identity {
  Word lhs;
  Word rhs;

  bool trivial() const { return lhs == rhs; }

  friend bool operator==(const Identity&, const Identity&) = default;
};

inline std::string render_identity(const Identity& id) {
  return render_word(id.lhs) + " = " + render_word(id.rhs);
}

inline std::set<Letter> content(const Identity& id) {
  std::set<Letter> out = content(id.lhs);
  collect_content(id.rhs, out);
  return out;
}

struct IdentityFlags {
  bool is_semigroup = false;      // no unary operation on either side
  bool is_balanced = false;       // semigroup and per-letter counts agree
  bool is_homotypical = false;    // the two sides mention the same letters
  bool is_heterotypical = false;
  bool is_mixed = false;          // exactly one side is a semigroup word
  bool is_strictly_unary = false; // neither side is a semigroup word
  bool is_permutational = false;  // linear sides related by a nontrivial permutation
  bool is_linear_lhs = false;
  bool is_linear_rhs = false;

  friend bool operator==(const IdentityFlags&, const IdentityFlags&) = default;
};

inline IdentityFlags classify_identity(const Identity& id) {
  IdentityFlags f;
  const bool sg_l = is_semigroup_word(id.lhs);
  const bool sg_r = is_semigroup_word(id.rhs);
  f.is_semigroup = sg_l && sg_r;
  f.is_mixed = sg_l != sg_r;
  f.is_strictly_unary = !sg_l && !sg_r;
  if (f.is_semigroup) {
    std::map<Letter, std::size_t> occ_l, occ_r;
    count_occurrences(id.lhs, occ_l);
    count_occurrences(id.rhs, occ_r);
    f.is_balanced = occ_l == occ_r;
  }
  f.is_homotypical = content(id.lhs) == content(id.rhs);
  f.is_heterotypical = !f.is_homotypical;
  f.is_linear_lhs = is_linear_word(id.lhs);
  f.is_linear_rhs = is_linear_word(id.rhs);
  // Sides that are linear, mention the same letters and differ must be
  // rearrangements of each other.
  f.is_permutational = f.is_linear_lhs && f.is_linear_rhs &&
                       f.is_homotypical && !id.trivial();
  return f;
}

// Names guaranteed not to occur among `used`: z1, z2, ... skipping any name
// already present, so outputs are reproducible.
inline std::vector<Letter> fresh_letters(const std::set<Letter>& used,
                                         std::size_t count) {
  std::vector<Letter> out;
  for (std::size_t k = 1; out.size() < count; ++k) {
    Letter cand("z" + std::to_string(k));
    if (!used.contains(cand)) {
      out.push_back(std::move(cand));
    }
  }
  return out;
}

struct IdentitySystem {
  std::vector<Identity> identities;

  std::set<Letter> letters() const {
    std::set<Letter> out;
    for (const Identity& id : identities) {
      collect_content(id.lhs, out);
      collect_content(id.rhs, out);
    }
    return out;
  }

  std::vector<Letter> fresh_letters(std::size_t count) const {
    return epiworks::fresh_letters(letters(), count);
  }

  friend bool operator==(const IdentitySystem&, const IdentitySystem&) = default;
};

inline std::string render_system(const IdentitySystem& sys) {
  std::string out;
  for (const Identity& id : sys.identities) {
    out += render_identity(id);
    out += '\n';
  }
  return out;
}

// The equality "w = 0" abbreviates the pair of identities saying that w
// absorbs everything; the padding letter is fresh for w.
inline std::pair<Identity, Identity> expand_zero(const Word& lhs) {
  Letter z = fresh_letters(content(lhs), 1).front();
  Word az = Word::atom(z);
  return {Identity{Word::product(lhs, az), lhs},
          Identity{Word::product(az, lhs), lhs}};
}

}  // namespace epiworks
