#pragma once

// Rewriting words over a single letter into the normal form x^p x'^q, and
// peeling a trailing letter off arbitrary words.  Every derivation records a
// trace of one-position rewrites; each step cites one of a fixed set of
// oriented rules, so traces can be replayed and checked mechanically:
//
//   unfold-bar    w' -> (w w)' w
//   bar-of-power  (w^n)' -> w'^n                      n >= 2
//   bar-case-hi   (x^s x'^t)' -> x'^(s-t)             s > t >= 1
//   bar-case-eq   (x^s x'^s)' -> x x'                 s >= 1
//   bar-case-lo   (x^s x'^t)' -> x^(2(t-s)) x'^(t-s)  0 <= s < t
//   R1            x'^t x^m -> x^(m-t+1) x'            1 <= t <= m
//   R2            x'^t x^m -> x'^(t-m)                t > m >= 1
//
// R1 and R2 rewrite a segment of a product; the bar rules rewrite a unary
// subterm.  Plain concatenation of powers needs no rule: products are flat,
// so x^a x^b and x^(a+b) are the same word.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "epiworks/epigroup.hpp"
#include "epiworks/identity.hpp"
#include "epiworks/word.hpp"

namespace epiworks {

inline constexpr const char* kRuleUnfoldBar = "unfold-bar";
inline constexpr const char* kRuleBarOfPower = "bar-of-power";
inline constexpr const char* kRuleBarCaseHi = "bar-case-hi";
inline constexpr const char* kRuleBarCaseEq = "bar-case-eq";
inline constexpr const char* kRuleBarCaseLo = "bar-case-lo";
inline constexpr const char* kRuleR1 = "R1";
inline constexpr const char* kRuleR2 = "R2";

struct RewriteStep {
  Word before;
  Word after;
  std::string rule;
};

using RewriteTrace = std::vector<RewriteStep>;

inline std::string render_trace(const RewriteTrace& trace) {
  std::string out;
  for (const RewriteStep& s : trace) {
    out += render_word(s.before);
    out += "  --[";
    out += s.rule;
    out += "]-->  ";
    out += render_word(s.after);
    out += '\n';
  }
  return out;
}

struct OneLetterNF {
  Letter letter;
  long long p = 0;
  long long q = 0;

  friend bool operator==(const OneLetterNF&, const OneLetterNF&) = default;
};

namespace detail {

inline std::vector<Word> nf_factors(const Letter& x, long long p, long long q) {
  std::vector<Word> fs;
  fs.reserve(static_cast<std::size_t>(p + q));
  for (long long i = 0; i < p; ++i) fs.push_back(Word::atom(x));
  for (long long i = 0; i < q; ++i) fs.push_back(Word::bar(Word::atom(x)));
  return fs;
}

}  // namespace detail

inline Word nf_word(const OneLetterNF& nf) {
  if (nf.p < 0 || nf.q < 0 || nf.p + nf.q < 1) {
    throw std::invalid_argument("normal form needs p + q >= 1");
  }
  return Word::product(detail::nf_factors(nf.letter, nf.p, nf.q));
}

// Display form, e.g. "x^2 x'^1".
inline std::string render_nf(const OneLetterNF& nf) {
  std::string out;
  if (nf.p > 0) {
    out += nf.letter.name() + "^" + std::to_string(nf.p);
  }
  if (nf.q > 0) {
    if (!out.empty()) out += ' ';
    out += nf.letter.name() + "'^" + std::to_string(nf.q);
  }
  return out;
}

namespace detail {

inline RewriteTrace lift_trace(RewriteTrace trace,
                               const std::function<Word(const Word&)>& wrap) {
  for (RewriteStep& s : trace) {
    s.before = wrap(s.before);
    s.after = wrap(s.after);
  }
  return trace;
}

struct NormState {
  long long p = 0;
  long long q = 0;
  RewriteTrace trace;  // rewrites w ->* x^p x'^q, phrased on w itself
};

// (p, q) * (m, k) in one step; no step is needed when one side of the
// junction is empty, because flat products concatenate syntactically.
struct MergeOutcome {
  long long p;
  long long q;
  std::optional<std::string> rule;
};

inline MergeOutcome merge_nf(long long p, long long q, long long m,
                             long long k) {
  if (q == 0) {
    return {p + m, k, std::nullopt};
  }
  if (m == 0) {
    return {p, q + k, std::nullopt};
  }
  if (q <= m) {
    return {p + m - q + 1, k + 1, kRuleR1};
  }
  return {p, q - m + k, kRuleR2};
}

inline NormState normalize_rec(const Word& w, const Letter& x) {
  switch (w.kind()) {
    case Word::Kind::Atom:
      return {1, 0, {}};
    case Word::Kind::Bar: {
      const Word& u = w.body();
      if (is_semigroup_word(u)) {
        // u is literally x^r
        const long long r = static_cast<long long>(*length(u));
        if (r == 1) {
          return {0, 1, {}};
        }
        NormState st{0, r, {}};
        st.trace.push_back(
            {w, nf_word({x, 0, r}), kRuleBarOfPower});
        return st;
      }
      NormState inner = normalize_rec(u, x);
      NormState st;
      st.trace = lift_trace(std::move(inner.trace),
                            [](const Word& v) { return Word::bar(v); });
      const long long s = inner.p;
      const long long t = inner.q;  // >= 1 here
      std::string rule;
      if (s > t) {
        st.p = 0;
        st.q = s - t;
        rule = kRuleBarCaseHi;
      } else if (s == t) {
        st.p = 1;
        st.q = 1;
        rule = kRuleBarCaseEq;
      } else {
        st.p = 2 * (t - s);
        st.q = t - s;
        rule = kRuleBarCaseLo;
      }
      st.trace.push_back(
          {Word::bar(nf_word({x, s, t})), nf_word({x, st.p, st.q}), rule});
      return st;
    }
    case Word::Kind::Product: {
      const std::vector<Word>& fs = w.factors();
      NormState acc;
      bool first = true;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        std::vector<Word> rest(fs.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                               fs.end());
        NormState fi = normalize_rec(fs[i], x);
        // Place the factor's own rewrites in context: accumulated prefix in
        // front, untouched factors behind.
        std::vector<Word> prefix =
            first ? std::vector<Word>{} : nf_factors(x, acc.p, acc.q);
        RewriteTrace lifted = lift_trace(
            std::move(fi.trace), [&](const Word& v) {
              std::vector<Word> all = prefix;
              all.push_back(v);
              all.insert(all.end(), rest.begin(), rest.end());
              return Word::product(std::move(all));
            });
        acc.trace.insert(acc.trace.end(),
                         std::make_move_iterator(lifted.begin()),
                         std::make_move_iterator(lifted.end()));
        if (first) {
          acc.p = fi.p;
          acc.q = fi.q;
          first = false;
          continue;
        }
        MergeOutcome merged = merge_nf(acc.p, acc.q, fi.p, fi.q);
        if (merged.rule) {
          std::vector<Word> before = nf_factors(x, acc.p, acc.q);
          std::vector<Word> mid = nf_factors(x, fi.p, fi.q);
          before.insert(before.end(), mid.begin(), mid.end());
          before.insert(before.end(), rest.begin(), rest.end());
          std::vector<Word> after = nf_factors(x, merged.p, merged.q);
          after.insert(after.end(), rest.begin(), rest.end());
          acc.trace.push_back({Word::product(std::move(before)),
                               Word::product(std::move(after)), *merged.rule});
        }
        acc.p = merged.p;
        acc.q = merged.q;
      }
      return acc;
    }
  }
  return {};  // unreachable
}

}  // namespace detail

// Rewrites a word in one letter into x^p x'^q.  p + q >= 1 always; q = 0
// exactly for semigroup words.
inline std::pair<OneLetterNF, RewriteTrace> normalize_one_letter(
    const Word& w) {
  std::set<Letter> c = content(w);
  if (c.size() != 1) {
    throw std::invalid_argument(
        "one-letter normalization needs a word in exactly one letter, got " +
        std::to_string(c.size()));
  }
  const Letter x = *c.begin();
  detail::NormState st = detail::normalize_rec(w, x);
  return {OneLetterNF{x, st.p, st.q}, std::move(st.trace)};
}

// Product of two normal forms over the same letter.
inline std::pair<OneLetterNF, RewriteTrace> nf_multiply(const OneLetterNF& a,
                                                        const OneLetterNF& b) {
  if (a.letter != b.letter) {
    throw std::invalid_argument("normal forms over different letters");
  }
  detail::MergeOutcome m = detail::merge_nf(a.p, a.q, b.p, b.q);
  OneLetterNF out{a.letter, m.p, m.q};
  RewriteTrace trace;
  if (m.rule) {
    std::vector<Word> before = detail::nf_factors(a.letter, a.p, a.q);
    std::vector<Word> mid = detail::nf_factors(b.letter, b.p, b.q);
    before.insert(before.end(), mid.begin(), mid.end());
    trace.push_back(
        {Word::product(std::move(before)), nf_word(out), *m.rule});
  }
  return {std::move(out), std::move(trace)};
}

// ---------------------------------------------------------------------------
// Trailing-letter factorization: u ->* u_star z with z = last_letter(u), by
// unfolding the trailing unary factor until a plain letter surfaces.  The
// prefix is empty exactly when u is a single letter.

struct TailFactorization {
  std::optional<Word> prefix;
  Letter tail;
  RewriteTrace trace;

  Word recombined() const {
    return prefix ? Word::product(*prefix, Word::atom(tail))
                  : Word::atom(tail);
  }
};

inline TailFactorization factor_tail(const Word& u) {
  Word current = u;
  RewriteTrace trace;
  while (true) {
    std::vector<Word> fs = current.is_product()
                               ? current.factors()
                               : std::vector<Word>{current};
    const Word& last = fs.back();
    if (last.is_atom()) {
      Letter z = last.letter();
      std::optional<Word> prefix;
      if (fs.size() >= 2) {
        fs.pop_back();
        prefix = Word::product(std::move(fs));
      }
      return {std::move(prefix), std::move(z), std::move(trace)};
    }
    // last is a unary factor w': unfold to (w w)' w, whose trailing weight
    // is strictly smaller.
    const Word& body = last.body();
    Word replacement =
        Word::product(Word::bar(Word::product(body, body)), body);
    fs.back() = std::move(replacement);
    Word next = Word::product(std::move(fs));
    trace.push_back({std::move(current), next, kRuleUnfoldBar});
    current = std::move(next);
  }
}

// ---------------------------------------------------------------------------
// Rule replay: all words reachable from w by one application of `rule` at
// one position.  A trace step is valid iff its after-word is among the
// applications of its rule to its before-word.

namespace detail {

inline std::vector<Word> factor_view(const Word& w) {
  return w.is_product() ? w.factors() : std::vector<Word>{w};
}

// Splits the factors of a barred body as x^s x'^t; nullopt when they do not
// have that shape.
struct PowerBarShape {
  Letter letter;
  long long s = 0;
  long long t = 0;
};

inline std::optional<PowerBarShape> power_bar_shape(const Word& u) {
  std::vector<Word> fs = factor_view(u);
  std::optional<Letter> x;
  long long s = 0, t = 0;
  for (const Word& f : fs) {
    const Word* a = nullptr;
    bool barred = false;
    if (f.is_atom()) {
      a = &f;
    } else if (f.is_bar() && f.body().is_atom()) {
      a = &f.body();
      barred = true;
    } else {
      return std::nullopt;
    }
    if (!x) {
      x = a->letter();
    } else if (*x != a->letter()) {
      return std::nullopt;
    }
    if (barred) {
      ++t;
    } else {
      if (t > 0) return std::nullopt;  // atoms must precede the bars
      ++s;
    }
  }
  if (t < 1) return std::nullopt;
  return PowerBarShape{*x, s, t};
}

inline void local_rule_apps(const std::string& rule, const Word& w,
                            std::vector<Word>& out) {
  if (rule == kRuleUnfoldBar) {
    if (w.is_bar()) {
      const Word& body = w.body();
      out.push_back(
          Word::product(Word::bar(Word::product(body, body)), body));
    }
    return;
  }
  if (rule == kRuleBarOfPower) {
    if (w.is_bar() && w.body().is_product()) {
      const std::vector<Word>& fs = w.body().factors();
      const std::size_t len = fs.size();
      for (std::size_t n = 2; n <= len; ++n) {
        if (len % n != 0) continue;
        const std::size_t block = len / n;
        bool equal = true;
        for (std::size_t i = block; i < len && equal; ++i) {
          equal = fs[i] == fs[i % block];
        }
        if (!equal) continue;
        std::vector<Word> base(fs.begin(),
                               fs.begin() + static_cast<std::ptrdiff_t>(block));
        Word b = Word::bar(Word::product(std::move(base)));
        std::vector<Word> reps(n, b);
        out.push_back(Word::product(std::move(reps)));
      }
    }
    return;
  }
  if (rule == kRuleBarCaseHi || rule == kRuleBarCaseEq ||
      rule == kRuleBarCaseLo) {
    if (!w.is_bar()) return;
    auto shape = power_bar_shape(w.body());
    if (!shape) return;
    const auto [x, s, t] = *shape;
    if (rule == kRuleBarCaseHi && s > t) {
      out.push_back(nf_word({x, 0, s - t}));
    } else if (rule == kRuleBarCaseEq && s == t) {
      out.push_back(nf_word({x, 1, 1}));
    } else if (rule == kRuleBarCaseLo && s < t) {
      out.push_back(nf_word({x, 2 * (t - s), t - s}));
    }
    return;
  }
  if (rule == kRuleR1 || rule == kRuleR2) {
    if (!w.is_product()) return;
    const std::vector<Word>& fs = w.factors();
    // Segments of the shape x'^t x^m.
    for (std::size_t b = 0; b < fs.size(); ++b) {
      for (std::size_t e = b + 1; e < fs.size(); ++e) {
        std::optional<Letter> x;
        long long t = 0, m = 0;
        bool good = true;
        for (std::size_t i = b; i <= e && good; ++i) {
          const Word& f = fs[i];
          const Word* a = nullptr;
          bool barred = false;
          if (f.is_atom()) {
            a = &f;
          } else if (f.is_bar() && f.body().is_atom()) {
            a = &f.body();
            barred = true;
          } else {
            good = false;
            break;
          }
          if (!x) {
            x = a->letter();
          } else if (*x != a->letter()) {
            good = false;
            break;
          }
          if (barred) {
            if (m > 0) good = false;  // bars must precede the atoms
            ++t;
          } else {
            ++m;
          }
        }
        if (!good || t < 1 || m < 1) continue;
        const bool r1 = rule == kRuleR1;
        if (r1 && t > m) continue;
        if (!r1 && t <= m) continue;
        std::vector<Word> rebuilt(fs.begin(),
                                  fs.begin() + static_cast<std::ptrdiff_t>(b));
        std::vector<Word> seg = r1 ? nf_factors(*x, m - t + 1, 1)
                                   : nf_factors(*x, 0, t - m);
        rebuilt.insert(rebuilt.end(), seg.begin(), seg.end());
        rebuilt.insert(rebuilt.end(),
                       fs.begin() + static_cast<std::ptrdiff_t>(e) + 1,
                       fs.end());
        out.push_back(Word::product(std::move(rebuilt)));
      }
    }
    return;
  }
  throw std::invalid_argument("unknown rewrite rule '" + rule + "'");
}

}  // namespace detail

inline std::vector<Word> rule_applications(const std::string& rule,
                                           const Word& w) {
  std::vector<Word> out;
  detail::local_rule_apps(rule, w, out);
  switch (w.kind()) {
    case Word::Kind::Atom:
      break;
    case Word::Kind::Bar:
      for (Word& r : rule_applications(rule, w.body())) {
        out.push_back(Word::bar(std::move(r)));
      }
      break;
    case Word::Kind::Product: {
      const std::vector<Word>& fs = w.factors();
      for (std::size_t i = 0; i < fs.size(); ++i) {
        for (Word& r : rule_applications(rule, fs[i])) {
          std::vector<Word> rebuilt = fs;
          rebuilt[i] = std::move(r);
          out.push_back(Word::product(std::move(rebuilt)));
        }
      }
      break;
    }
  }
  return out;
}

inline bool trace_step_valid(const RewriteStep& step) {
  std::vector<Word> apps = rule_applications(step.rule, step.before);
  return std::find(apps.begin(), apps.end(), step.after) != apps.end();
}

// A chained replay check: steps connect (after_i == before_{i+1}), the first
// step starts at `from`, the last ends at `to`, and every step is a valid
// one-position application of its rule.  Empty traces require from == to.
inline bool trace_valid(const Word& from, const Word& to,
                        const RewriteTrace& trace) {
  const Word* cur = &from;
  for (const RewriteStep& s : trace) {
    if (!(s.before == *cur) || !trace_step_valid(s)) {
      return false;
    }
    cur = &s.after;
  }
  return *cur == to;
}

// ---------------------------------------------------------------------------
// Semantic cross-check of a claimed equality in finite models.

struct OracleSeparation {
  std::string model;
  Assignment assignment;
  int lhs_value = 0;
  int rhs_value = 0;
};

struct OracleReport {
  std::vector<OracleSeparation> separations;  // first witness per model
  bool ok() const { return separations.empty(); }
};

inline OracleReport oracle_check(
    const Word& lhs, const Word& rhs, const std::vector<NamedModel>& models,
    std::uint64_t max_assignments = kDefaultAssignmentBound) {
  OracleReport report;
  Identity id{lhs, rhs};
  for (const NamedModel& nm : models) {
    SatisfactionResult r = satisfies(nm.model, id, max_assignments);
    if (!r.holds) {
      report.separations.push_back({nm.name, r.witness->assignment,
                                    r.witness->lhs_value,
                                    r.witness->rhs_value});
    }
  }
  return report;
}

}  // namespace epiworks
