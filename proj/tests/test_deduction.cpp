#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>
#include <vector>

#include "helpers.hpp"

using namespace epiworks;

namespace {

Identity id_of(const std::string& text) { return parse_identity(text); }

// Loads a proof script from samples/scripts and resolves its axiom file
// the same way the command line tool does: relative to the script.
Deduction load_script(const std::string& stem) {
  const std::string dir = std::string(EPIWORKS_SAMPLES) + "/scripts";
  ProofScript script = parse_proof_script(read_text_file(dir + "/" + stem));
  IdentitySystem axioms;
  if (script.axioms_path) {
    axioms = parse_system_file(dir + "/" + *script.axioms_path);
  }
  return to_deduction(script, std::move(axioms));
}

const std::vector<std::string> kScripts = {
    "band_power.eqp", "double_bar.eqp", "comm_rotate.eqp",
    "bar_congruence.eqp", "absorb_sym.eqp"};

}  // namespace

TEST_CASE("auxiliary basis layout", "[deduction]") {
  IdentitySystem d3 = delta_basis(3);
  REQUIRE(d3.identities.size() == 7);  // 5 fixed + primes 2, 3
  IdentitySystem d7 = delta_basis(7);
  REQUIRE(d7.identities.size() == 9);  // + primes 5, 7
  REQUIRE_THROWS_AS(delta_basis(1), std::invalid_argument);

  for (const Identity& id : d7.identities) {
    REQUIRE(last_letter(id.lhs) == last_letter(id.rhs));
  }
  REQUIRE(render_identity(d7.identities[1]) == "(x y)' x = x (y x)'");
  REQUIRE(render_identity(d7.identities[5]) == "(x x)' = x' x'");
}

TEST_CASE("identity equality up to renaming", "[deduction]") {
  REQUIRE(equal_up_to_renaming(id_of("x y = y x"), id_of("u v = v u")));
  REQUIRE_FALSE(equal_up_to_renaming(id_of("x y = y x"), id_of("x y = x y")));
  REQUIRE(equal_up_to_renaming(id_of("x = x x"), id_of("y = y y")));
  REQUIRE_FALSE(equal_up_to_renaming(id_of("x = x x"), id_of("y = z z")));
  REQUIRE(equal_up_to_renaming(id_of("(x y)' = y'"), id_of("(u v)' = v'")));
  // The renaming must be a bijection.
  REQUIRE_FALSE(equal_up_to_renaming(id_of("x y = x"), id_of("x x = x")));
  REQUIRE_FALSE(equal_up_to_renaming(id_of("x x = x"), id_of("x y = x")));
}

TEST_CASE("a hand-built deduction verifies", "[deduction]") {
  IdentitySystem band;
  band.identities.push_back(id_of("x = x x"));
  Deduction d{band, 7, {}};
  d.steps.push_back({id_of("x = x x"), Justification::axiom()});
  d.steps.push_back({id_of("x x = x x x x"), Justification::prod(0, 0)});
  d.steps.push_back({id_of("x = x x x x"), Justification::trans(0, 1)});

  VerificationResult r = verify_deduction(d);
  REQUIRE(r.valid);
  REQUIRE_FALSE(r.failed_step.has_value());
  REQUIRE(render_identity(d.conclusion()) == "x = x x x x");

  Deduction empty{band, 7, {}};
  REQUIRE_THROWS_AS(empty.conclusion(), std::logic_error);
  VerificationResult re = verify_deduction(empty);
  REQUIRE_FALSE(re.valid);
  REQUIRE(re.reason == "a deduction needs at least one step");
  REQUIRE_FALSE(re.failed_step.has_value());
}

TEST_CASE("justification indices must point at earlier steps", "[deduction]") {
  IdentitySystem band;
  band.identities.push_back(id_of("x = x x"));

  Deduction self{band, 7, {}};
  self.steps.push_back({id_of("x = x x"), Justification::axiom()});
  self.steps.push_back({id_of("x x = x"), Justification::sym(1)});
  VerificationResult r1 = verify_deduction(self);
  REQUIRE_FALSE(r1.valid);
  REQUIRE(r1.failed_step == 1);
  REQUIRE(r1.reason == "justification index out of range");

  Deduction fwd{band, 7, {}};
  fwd.steps.push_back({id_of("x x = x x"), Justification::trans(1, 5)});
  VerificationResult r2 = verify_deduction(fwd);
  REQUIRE_FALSE(r2.valid);
  REQUIRE(r2.failed_step == 0);
  REQUIRE(r2.reason == "justification index out of range");
}

TEST_CASE("mismatched rule shapes are rejected", "[deduction]") {
  IdentitySystem band;
  band.identities.push_back(id_of("x = x x"));

  Deduction d{band, 7, {}};
  d.steps.push_back({id_of("x = x x"), Justification::axiom()});
  d.steps.push_back({id_of("x x x = x"), Justification::sym(0)});
  VerificationResult r = verify_deduction(d);
  REQUIRE_FALSE(r.valid);
  REQUIRE(r.failed_step == 1);
  REQUIRE(r.reason == "no rule matches");

  // Reflexivity accepts exactly the trivial identities.
  Deduction refl{band, 7, {}};
  refl.steps.push_back({id_of("x y = x y"), Justification::refl()});
  REQUIRE(verify_deduction(refl).valid);
  Deduction badrefl{band, 7, {}};
  badrefl.steps.push_back({id_of("x y = y x"), Justification::refl()});
  VerificationResult rb = verify_deduction(badrefl);
  REQUIRE_FALSE(rb.valid);
  REQUIRE(rb.reason == "no rule matches");
}

TEST_CASE("axiom matching mode", "[deduction]") {
  IdentitySystem band;
  band.identities.push_back(id_of("x = x x"));
  Deduction d{band, 7, {}};
  d.steps.push_back({id_of("y = y y"), Justification::axiom()});

  REQUIRE(verify_deduction(d).valid);  // renamed copies pass by default

  VerificationResult strict =
      verify_deduction(d, DeductionOptions{.axioms_up_to_renaming = false});
  REQUIRE_FALSE(strict.valid);
  REQUIRE(strict.failed_step == 0);
  REQUIRE(strict.reason == "no rule matches");

  // A literal axiom still passes in strict mode.
  Deduction lit{band, 7, {}};
  lit.steps.push_back({id_of("x = x x"), Justification::axiom()});
  REQUIRE(
      verify_deduction(lit, DeductionOptions{.axioms_up_to_renaming = false})
          .valid);
}

TEST_CASE("auxiliary bound prunes the power axioms", "[deduction]") {
  Deduction d{IdentitySystem{}, 3, {}};
  d.steps.push_back({id_of("(x x x)' = x' x' x'"), Justification::axiom()});
  REQUIRE(verify_deduction(d).valid);

  d.delta_bound = 2;
  VerificationResult r = verify_deduction(d);
  REQUIRE_FALSE(r.valid);
  REQUIRE(r.failed_step == 0);
  REQUIRE(r.reason == "no rule matches");
}

TEST_CASE("trailing letter invariant", "[deduction]") {
  Deduction band = load_script("band_power.eqp");
  TailInvariantResult tb = check_tail_invariant(band);
  REQUIRE(tb.applicable);
  REQUIRE(tb.holds);

  Deduction comm = load_script("comm_rotate.eqp");
  TailInvariantResult tc = check_tail_invariant(comm);
  REQUIRE_FALSE(tc.applicable);

  Deduction absorb = load_script("absorb_sym.eqp");
  TailInvariantResult ta = check_tail_invariant(absorb);
  REQUIRE(ta.applicable);
  REQUIRE(ta.holds);

  // A claimed identity that moves the tail is flagged by position.
  Deduction broken = band;
  broken.steps.push_back({id_of("x = x y"), Justification::axiom()});
  TailInvariantResult tbad = check_tail_invariant(broken);
  REQUIRE(tbad.applicable);
  REQUIRE_FALSE(tbad.holds);
  REQUIRE(tbad.failed_step == broken.steps.size() - 1);
}

TEST_CASE("the shipped proof scripts verify", "[deduction]") {
  for (const std::string& stem : kScripts) {
    INFO(stem);
    Deduction d = load_script(stem);
    VerificationResult r = verify_deduction(d);
    INFO(r.reason);
    REQUIRE(r.valid);
    REQUIRE_FALSE(d.steps.empty());
  }
}

TEST_CASE("single mutations break the scripts at the mutated step",
          "[deduction]") {
  for (const std::string& stem : kScripts) {
    Deduction d = load_script(stem);
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
      INFO(stem << " step " << i);

      Deduction skew = d;
      const Identity& orig = d.steps[i].identity;
      skew.steps[i].identity =
          Identity{orig.lhs, Word::product(orig.rhs, orig.lhs)};
      VerificationResult ra = verify_deduction(skew);
      REQUIRE_FALSE(ra.valid);
      REQUIRE(ra.failed_step == i);
      REQUIRE(ra.reason == "no rule matches");

      Deduction relabel = d;
      relabel.steps[i].justification = Justification::refl();
      VerificationResult rb = verify_deduction(relabel);
      REQUIRE_FALSE(rb.valid);
      REQUIRE(rb.failed_step == i);
      REQUIRE(rb.reason == "no rule matches");
    }
  }
}

TEST_CASE("script conclusions hold wherever their axioms do", "[deduction]") {
  std::vector<NamedModel> ms = ewtest::models();
  // A two-element semilattice satisfies every sample axiom system, so each
  // script gets exercised in at least one model.
  ms.push_back(NamedModel{"semilattice", FiniteEpigroup({"e", "0"}, {{0, 1}, {1, 1}})});
  for (const std::string& stem : kScripts) {
    Deduction d = load_script(stem);
    const Identity& goal = d.conclusion();
    int checked = 0;
    for (const NamedModel& nm : ms) {
      if (!satisfies_system(nm.model, d.axioms).holds) continue;
      ++checked;
      INFO(stem << " in " << nm.name);
      REQUIRE(satisfies(nm.model, goal).holds);
    }
    INFO(stem);
    REQUIRE(checked >= 1);
  }
}

TEST_CASE("proof script parsing", "[deduction]") {
  ProofScript s = parse_proof_script(
      "# demo\n"
      "axioms: -\n"
      "delta_bound: 3\n"
      "0. x = x x ; refl # trailing note\n"
      "1. x y = x y ; subst 0 x:=y y,y:=w\n");
  REQUIRE_FALSE(s.axioms_path.has_value());
  REQUIRE(s.delta_bound == 3);
  REQUIRE(s.steps.size() == 2);
  const Justification& j = s.steps[1].justification;
  REQUIRE(j.rule == Justification::Rule::SubstitutionOf);
  REQUIRE(j.j == 0);
  REQUIRE(j.substitution.size() == 2);
  REQUIRE(j.substitution.at(Letter("x")) == parse_word("y y"));
  REQUIRE(j.substitution.at(Letter("y")) == parse_word("w"));
  REQUIRE(render_justification(j) == "subst 0 x:=y y,y:=w");

  ProofScript with_path = parse_proof_script("axioms: band.eqs\n0. x = x ; refl\n");
  REQUIRE(with_path.axioms_path == "band.eqs");
  REQUIRE(with_path.delta_bound == 7);

  using Catch::Matchers::ContainsSubstring;
  REQUIRE_THROWS_WITH(parse_proof_script("1. x = x ; refl\n"),
                      ContainsSubstring("count up from 0"));
  REQUIRE_THROWS_WITH(
      parse_proof_script("0. x = x ; refl\n0. y = y ; refl\n"),
      ContainsSubstring("line 2"));
  REQUIRE_THROWS_WITH(parse_proof_script("0. x = x ; zap\n"),
                      ContainsSubstring("unknown rule"));
  REQUIRE_THROWS_WITH(parse_proof_script("0. x = x refl\n"),
                      ContainsSubstring("';'"));
  REQUIRE_THROWS_WITH(parse_proof_script("0. x = x ; sym\n"),
                      ContainsSubstring("step index"));
  REQUIRE_THROWS_WITH(parse_proof_script("0. x = x ; subst 0\n"),
                      ContainsSubstring("binding"));
  REQUIRE_THROWS_WITH(parse_proof_script("0. x = x ; subst 0 x=y\n"),
                      ContainsSubstring(":="));
  REQUIRE_THROWS_WITH(parse_proof_script("0. x = x ; subst 0 x:=y,x:=z\n"),
                      ContainsSubstring("duplicate"));
  REQUIRE_THROWS_WITH(
      parse_proof_script("0. x = x ; refl\naxioms: band.eqs\n"),
      ContainsSubstring("precede"));
  REQUIRE_THROWS_WITH(parse_proof_script("delta_bound: seven\n"),
                      ContainsSubstring("integer"));
  REQUIRE_THROWS_WITH(parse_proof_script("x = x ; refl\n"),
                      ContainsSubstring("expected"));
}

TEST_CASE("justification rendering", "[deduction]") {
  REQUIRE(render_justification(Justification::axiom()) == "axiom");
  REQUIRE(render_justification(Justification::sym(2)) == "sym 2");
  REQUIRE(render_justification(Justification::trans(0, 1)) == "trans 0 1");
  REQUIRE(render_justification(Justification::prod(3, 4)) == "prod 3 4");
  REQUIRE(render_justification(Justification::bar(0)) == "bar 0");
  REQUIRE(render_justification(Justification::refl()) == "refl");
}
