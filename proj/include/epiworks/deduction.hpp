#pragma once

// Checking equational derivations.  A deduction works from a system of
// axioms plus a fixed auxiliary basis; each step carries the identity it
// claims and a justification naming earlier steps.  Verification replays
// every justification syntactically.
//
// Proof script format:
//
//   axioms: <path>          (optional; '-' or absence = no axioms)
//   delta_bound: <int>      (optional; default 7)
//   <n>. <word> = <word> ; <rule>
//
// with rules  axiom | sym j | trans j k | prod j k | bar j |
//             subst j x:=<word>[,...] | refl
// and 0-based step numbers.  '#' starts a comment.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epiworks/identity.hpp"
#include "epiworks/parse.hpp"
#include "epiworks/word.hpp"

namespace epiworks {

struct Justification {
  enum class Rule {
    Axiom,
    Symmetry,
    Transitivity,
    ProductOf,
    BarOf,
    SubstitutionOf,
    Reflexive,
  };

  Rule rule = Rule::Axiom;
  std::size_t j = 0;
  std::size_t k = 0;
  std::map<Letter, Word> substitution;

  static Justification axiom() { return {Rule::Axiom, 0, 0, {}}; }
  static Justification sym(std::size_t j) { return {Rule::Symmetry, j, 0, {}}; }
  static Justification trans(std::size_t j, std::size_t k) {
    return {Rule::Transitivity, j, k, {}};
  }
  static Justification prod(std::size_t j, std::size_t k) {
    return {Rule::ProductOf, j, k, {}};
  }
  static Justification bar(std::size_t j) { return {Rule::BarOf, j, 0, {}}; }
  static Justification subst(std::size_t j, std::map<Letter, Word> sub) {
    return {Rule::SubstitutionOf, j, 0, std::move(sub)};
  }
  static Justification refl() { return {Rule::Reflexive, 0, 0, {}}; }
};

inline std::string render_justification(const Justification& just) {
  switch (just.rule) {
    case Justification::Rule::Axiom:
      return "axiom";
    case Justification::Rule::Symmetry:
      return "sym " + std::to_string(just.j);
    case Justification::Rule::Transitivity:
      return "trans " + std::to_string(just.j) + " " + std::to_string(just.k);
    case Justification::Rule::ProductOf:
      return "prod " + std::to_string(just.j) + " " + std::to_string(just.k);
    case Justification::Rule::BarOf:
      return "bar " + std::to_string(just.j);
    case Justification::Rule::SubstitutionOf: {
      std::string out = "subst " + std::to_string(just.j);
      bool first = true;
      for (const auto& [l, w] : just.substitution) {
        out += first ? " " : ",";
        out += l.name() + ":=" + render_word(w);
        first = false;
      }
      return out;
    }
    case Justification::Rule::Reflexive:
      return "refl";
  }
  return {};  // unreachable
}

struct DeductionStep {
  Identity identity;
  Justification justification;
};

struct Deduction {
  IdentitySystem axioms;
  int delta_bound = 7;
  std::vector<DeductionStep> steps;

  const Identity& conclusion() const {
    if (steps.empty()) {
      throw std::logic_error("empty deduction has no conclusion");
    }
    return steps.back().identity;
  }
};

// The auxiliary basis: associativity, the shuffle of a barred pair, the two
// absorption laws of the unary operation, the fixed point (x' x)' = x' x,
// and (x^p)' = x'^p for every prime p up to the bound.
inline IdentitySystem delta_basis(int prime_bound) {
  if (prime_bound < 2) {
    throw std::invalid_argument("the prime bound must be at least 2");
  }
  Word x = Word::atom("x");
  Word y = Word::atom("y");
  Word z = Word::atom("z");
  Word bx = Word::bar(x);
  IdentitySystem sys;
  // (x y) z = x (y z): both sides are the flat word x y z.
  sys.identities.push_back(
      Identity{Word::product({x, y, z}), Word::product({x, y, z})});
  sys.identities.push_back(Identity{
      Word::product(Word::bar(Word::product(x, y)), x),
      Word::product(x, Word::bar(Word::product(y, x)))});
  sys.identities.push_back(
      Identity{Word::product({bx, bx, x}), bx});
  sys.identities.push_back(
      Identity{Word::product({x, x, bx}), Word::bar(bx)});
  sys.identities.push_back(Identity{Word::bar(Word::product(bx, x)),
                                    Word::product(bx, x)});
  for (int p = 2; p <= prime_bound; ++p) {
    bool prime = p >= 2;
    for (int d = 2; d * d <= p && prime; ++d) {
      prime = p % d != 0;
    }
    if (!prime) continue;
    sys.identities.push_back(
        Identity{Word::bar(Word::power(x, p)), Word::power(bx, p)});
  }
  return sys;
}

namespace detail {

inline bool match_rename(const Word& pat, const Word& tgt,
                         std::map<Letter, Letter>& fwd,
                         std::map<Letter, Letter>& bwd) {
  if (pat.kind() != tgt.kind()) return false;
  switch (pat.kind()) {
    case Word::Kind::Atom: {
      auto f = fwd.find(pat.letter());
      auto b = bwd.find(tgt.letter());
      if (f == fwd.end() && b == bwd.end()) {
        fwd.emplace(pat.letter(), tgt.letter());
        bwd.emplace(tgt.letter(), pat.letter());
        return true;
      }
      return f != fwd.end() && b != bwd.end() && f->second == tgt.letter() &&
             b->second == pat.letter();
    }
    case Word::Kind::Bar:
      return match_rename(pat.body(), tgt.body(), fwd, bwd);
    case Word::Kind::Product: {
      if (pat.factors().size() != tgt.factors().size()) return false;
      for (std::size_t i = 0; i < pat.factors().size(); ++i) {
        if (!match_rename(pat.factors()[i], tgt.factors()[i], fwd, bwd)) {
          return false;
        }
      }
      return true;
    }
  }
  return false;  // unreachable
}

}  // namespace detail

// Equality modulo a bijective renaming of letters, sides kept in order.
inline bool equal_up_to_renaming(const Identity& a, const Identity& b) {
  std::map<Letter, Letter> fwd, bwd;
  return detail::match_rename(a.lhs, b.lhs, fwd, bwd) &&
         detail::match_rename(a.rhs, b.rhs, fwd, bwd);
}

struct DeductionOptions {
  // Admit axioms up to bijective letter renaming; substitution instances
  // still need an explicit subst step.  In strict mode the match must be
  // syntactic.
  bool axioms_up_to_renaming = true;
};

struct VerificationResult {
  bool valid = false;
  std::optional<std::size_t> failed_step;
  std::string reason;
};

inline VerificationResult verify_deduction(const Deduction& d,
                                           DeductionOptions options = {}) {
  if (d.steps.empty()) {
    return {false, std::nullopt, "a deduction needs at least one step"};
  }
  IdentitySystem delta = delta_basis(d.delta_bound);
  auto is_axiom = [&](const Identity& id) {
    auto matches = [&](const Identity& ax) {
      return options.axioms_up_to_renaming ? equal_up_to_renaming(ax, id)
                                           : ax == id;
    };
    return std::any_of(d.axioms.identities.begin(), d.axioms.identities.end(),
                       matches) ||
           std::any_of(delta.identities.begin(), delta.identities.end(),
                       matches);
  };

  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Identity& id = d.steps[i].identity;
    const Justification& just = d.steps[i].justification;
    const auto fail = [&](const std::string& reason) {
      return VerificationResult{false, i, reason};
    };
    const auto earlier = [&](std::size_t idx) { return idx < i; };

    switch (just.rule) {
      case Justification::Rule::Axiom:
        if (!is_axiom(id)) return fail("no rule matches");
        break;
      case Justification::Rule::Symmetry: {
        if (!earlier(just.j)) return fail("justification index out of range");
        const Identity& src = d.steps[just.j].identity;
        if (!(id.lhs == src.rhs && id.rhs == src.lhs)) {
          return fail("no rule matches");
        }
        break;
      }
      case Justification::Rule::Transitivity: {
        if (!earlier(just.j) || !earlier(just.k)) {
          return fail("justification index out of range");
        }
        const Identity& a = d.steps[just.j].identity;
        const Identity& b = d.steps[just.k].identity;
        if (!(a.lhs == id.lhs && a.rhs == b.lhs && b.rhs == id.rhs)) {
          return fail("no rule matches");
        }
        break;
      }
      case Justification::Rule::ProductOf: {
        if (!earlier(just.j) || !earlier(just.k)) {
          return fail("justification index out of range");
        }
        const Identity& a = d.steps[just.j].identity;
        const Identity& b = d.steps[just.k].identity;
        if (!(id.lhs == Word::product(a.lhs, b.lhs) &&
              id.rhs == Word::product(a.rhs, b.rhs))) {
          return fail("no rule matches");
        }
        break;
      }
      case Justification::Rule::BarOf: {
        if (!earlier(just.j)) return fail("justification index out of range");
        const Identity& src = d.steps[just.j].identity;
        if (!(id.lhs == Word::bar(src.lhs) && id.rhs == Word::bar(src.rhs))) {
          return fail("no rule matches");
        }
        break;
      }
      case Justification::Rule::SubstitutionOf: {
        if (!earlier(just.j)) return fail("justification index out of range");
        const Identity& src = d.steps[just.j].identity;
        if (!(id.lhs == substitute(src.lhs, just.substitution) &&
              id.rhs == substitute(src.rhs, just.substitution))) {
          return fail("no rule matches");
        }
        break;
      }
      case Justification::Rule::Reflexive:
        if (!(id.lhs == id.rhs)) return fail("no rule matches");
        break;
    }
  }
  return {true, std::nullopt, ""};
}

struct TailInvariantResult {
  bool applicable = false;  // every axiom keeps its last letter
  bool holds = true;        // meaningful only when applicable
  // Step whose identity breaks the invariant, when one does.
  std::optional<std::size_t> failed_step;
};

// When every axiom preserves the trailing letter, so must every derived
// identity; vacuously fine otherwise.
inline TailInvariantResult check_tail_invariant(const Deduction& d) {
  for (const Identity& ax : delta_basis(d.delta_bound).identities) {
    if (last_letter(ax.lhs) != last_letter(ax.rhs)) {
      throw std::logic_error("auxiliary basis lost the tail property");
    }
  }
  TailInvariantResult out;
  out.applicable =
      std::all_of(d.axioms.identities.begin(), d.axioms.identities.end(),
                  [](const Identity& id) {
                    return last_letter(id.lhs) == last_letter(id.rhs);
                  });
  if (!out.applicable) {
    return out;
  }
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Identity& id = d.steps[i].identity;
    if (last_letter(id.lhs) != last_letter(id.rhs)) {
      out.holds = false;
      out.failed_step = i;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Proof scripts.

struct ProofScript {
  std::optional<std::string> axioms_path;
  int delta_bound = 7;
  std::vector<DeductionStep> steps;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline Justification parse_rule(std::string_view text) {
  std::istringstream ss{std::string(text)};
  std::string name;
  ss >> name;
  auto need_index = [&]() {
    long long v = -1;
    if (!(ss >> v) || v < 0) {
      throw ParseError("expected a step index after '" + name + "'", 0);
    }
    return static_cast<std::size_t>(v);
  };
  if (name == "axiom") return Justification::axiom();
  if (name == "refl") return Justification::refl();
  if (name == "sym") return Justification::sym(need_index());
  if (name == "bar") return Justification::bar(need_index());
  if (name == "trans") {
    std::size_t j = need_index();
    return Justification::trans(j, need_index());
  }
  if (name == "prod") {
    std::size_t j = need_index();
    return Justification::prod(j, need_index());
  }
  if (name == "subst") {
    std::size_t j = need_index();
    std::string rest;
    std::getline(ss, rest);
    std::map<Letter, Word> sub;
    std::string_view rv = trim(rest);
    if (rv.empty()) {
      throw ParseError("subst needs at least one binding", 0);
    }
    std::size_t start = 0;
    while (start <= rv.size()) {
      std::size_t comma = rv.find(',', start);
      std::string_view part = trim(rv.substr(
          start, comma == std::string_view::npos ? std::string_view::npos
                                                 : comma - start));
      std::size_t assign = part.find(":=");
      if (assign == std::string_view::npos) {
        throw ParseError("expected '<letter>:=<word>' in subst", 0);
      }
      Letter l{std::string(trim(part.substr(0, assign)))};
      Word w = parse_word(part.substr(assign + 2));
      if (!sub.emplace(std::move(l), std::move(w)).second) {
        throw ParseError("duplicate letter in subst", 0);
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return Justification::subst(j, std::move(sub));
  }
  throw ParseError("unknown rule '" + name + "'", 0);
}

}  // namespace detail

inline ProofScript parse_proof_script(std::string_view text) {
  ProofScript script;
  std::size_t lineno = 0;
  std::size_t start = 0;
  bool saw_step = false;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view raw = text.substr(
        start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++lineno;
    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = detail::trim(raw);
    auto error = [&](const std::string& what) {
      return ParseError("line " + std::to_string(lineno) + ": " + what, 0);
    };
    if (!line.empty()) {
      if (line.rfind("axioms:", 0) == 0) {
        if (saw_step) throw error("headers must precede the steps");
        std::string_view path = detail::trim(line.substr(7));
        if (!path.empty() && path != "-") {
          script.axioms_path = std::string(path);
        }
      } else if (line.rfind("delta_bound:", 0) == 0) {
        if (saw_step) throw error("headers must precede the steps");
        try {
          script.delta_bound = std::stoi(std::string(detail::trim(line.substr(12))));
        } catch (const std::exception&) {
          throw error("delta_bound needs an integer");
        }
      } else {
        std::size_t dot = line.find('.');
        if (dot == std::string_view::npos) {
          throw error("expected '<n>. <identity> ; <rule>'");
        }
        long long n = -1;
        try {
          n = std::stoll(std::string(detail::trim(line.substr(0, dot))));
        } catch (const std::exception&) {
          throw error("expected a step number");
        }
        if (n != static_cast<long long>(script.steps.size())) {
          throw error("step numbers must count up from 0");
        }
        std::string_view body = line.substr(dot + 1);
        std::size_t semi = body.find(';');
        if (semi == std::string_view::npos) {
          throw error("expected ';' before the rule");
        }
        try {
          Identity id = parse_identity(body.substr(0, semi));
          Justification just = detail::parse_rule(body.substr(semi + 1));
          script.steps.push_back({std::move(id), std::move(just)});
        } catch (const ParseError& e) {
          throw error(e.what());
        }
        saw_step = true;
      }
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return script;
}

inline Deduction to_deduction(const ProofScript& script,
                              IdentitySystem axioms) {
  return Deduction{std::move(axioms), script.delta_bound, script.steps};
}

}  // namespace epiworks
