#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <string>

#include "helpers.hpp"

using namespace epiworks;

namespace {

IdentitySystem system_of(const std::string& text) { return parse_system(text); }

}  // namespace

TEST_CASE("variety verdicts follow the identity shapes", "[varieties]") {
  VarietyVerdict comm = is_variety_class(system_of("x y = y x\n"));
  REQUIRE_FALSE(comm.verdict);
  REQUIRE(comm.category == "every identity is balanced or strictly unary");

  VarietyVerdict band = is_variety_class(system_of("x = x x\n"));
  REQUIRE(band.verdict);
  REQUIRE(band.category == "semigroup non-balanced");
  REQUIRE(band.witness == 0);

  VarietyVerdict mixed = is_variety_class(system_of("x' = x\n"));
  REQUIRE(mixed.verdict);
  REQUIRE(mixed.category == "mixed");

  // A balanced system plus one non-balanced identity flips the verdict;
  // the witness is the flipping identity.
  VarietyVerdict both = is_variety_class(system_of("x y = y x\nx y = x y x y\n"));
  REQUIRE(both.verdict);
  REQUIRE(both.witness == 1);

  VarietyVerdict unary = is_variety_class(system_of("x' = x''\n"));
  REQUIRE_FALSE(unary.verdict);
}

TEST_CASE("varE coincidence needs heterotypical or mixed input",
          "[varieties]") {
  REQUIRE_FALSE(equals_varE(system_of("x = x x\n")).verdict);
  REQUIRE(equals_varE(system_of("x y = x\n")).verdict);
  REQUIRE(equals_varE(system_of("x y = x\n")).category ==
          "semigroup heterotypical");
  REQUIRE(equals_varE(system_of("x' = x\n")).verdict);
  REQUIRE(equals_varE(system_of("x' = x\n")).category == "mixed");
  REQUIRE_FALSE(equals_varE(system_of("x y = y x\n")).verdict);

  // A mixed system makes both verdicts positive at once.
  IdentitySystem m = system_of("x y' = y' x\nx' = x\n");
  REQUIRE(is_variety_class(m).verdict);
  REQUIRE(equals_varE(m).verdict);
}

TEST_CASE("padding transformation appends and prepends fresh letters",
          "[varieties]") {
  IdentitySystem comm = system_of("x y = y x\n");
  REQUIRE(render_system(transform_mn(comm, 0, 1)) == "x y z1 = y x z1\n");
  REQUIRE(render_system(transform_mn(comm, 1, 0)) == "z1 x y = z1 y x\n");
  REQUIRE(render_system(transform_mn(comm, 2, 1)) ==
          "z1 z2 x y z3 = z1 z2 y x z3\n");
  REQUIRE(render_system(transform_mn(comm, 0, 0)) == "x y = y x\n");

  // The same fresh letters pad every identity of a system, and letters
  // already in use are skipped.
  IdentitySystem two = system_of("x = x x\nz1 y = y z1\n");
  IdentitySystem padded = transform_mn(two, 1, 1);
  REQUIRE(render_system(padded) ==
          "z2 x z3 = z2 x x z3\nz2 z1 y z3 = z2 y z1 z3\n");

  // Unary sides pad the same way.
  REQUIRE(render_system(transform_mn(system_of("x' = x\n"), 0, 1)) ==
          "x' z1 = x z1\n");
}

TEST_CASE("padded systems stay satisfied on stock models", "[varieties]") {
  IdentitySystem comm = system_of("x y = y x\n");
  IdentitySystem band = system_of("x = x x\n");
  FiniteEpigroup z4 = make_Z(4);
  FiniteEpigroup c = make_C();
  for (int m = 0; m <= 2; ++m) {
    for (int n = 0; n <= 2; ++n) {
      REQUIRE(satisfies_system(z4, transform_mn(comm, m, n)).holds);
      REQUIRE(satisfies_system(c, transform_mn(comm, m, n)).holds);
    }
  }
  // Z(4) is a group, so x = x x fails, but padding can only weaken a
  // system: the padded failure stays consistent with the original one.
  REQUIRE_FALSE(satisfies_system(z4, band).holds);
}

TEST_CASE("periodic consequence of a non-balanced semigroup identity",
          "[varieties]") {
  std::optional<PeriodicConsequence> pc =
      periodic_consequence(parse_identity("x y = x y x y"));
  REQUIRE(pc.has_value());
  REQUIRE(pc->p == 2);
  REQUIRE(pc->q == 2);
  REQUIRE(render_identity(pc->power_identity) == "x x = x x x x");
  REQUIRE(render_identity(pc->mixed) == "x' = x x x x x");

  std::optional<PeriodicConsequence> band =
      periodic_consequence(parse_identity("x = x x"));
  REQUIRE(band.has_value());
  REQUIRE(band->p == 1);
  REQUIRE(band->q == 1);
  REQUIRE(render_identity(band->mixed) == "x' = x");

  // Equal-length sides with unequal per-letter counts: doubling the first
  // letter with differing counts unbalances the collapse.
  std::optional<PeriodicConsequence> sided =
      periodic_consequence(parse_identity("x x y = x y y"));
  REQUIRE(sided.has_value());
  REQUIRE(render_identity(sided->power_identity) ==
          "x x x x = x x x x x");
  REQUIRE(sided->p == 4);
  REQUIRE(sided->q == 1);

  REQUIRE_FALSE(periodic_consequence(parse_identity("x y = y x")).has_value());
  REQUIRE_FALSE(periodic_consequence(parse_identity("x' = x")).has_value());
  REQUIRE_FALSE(periodic_consequence(parse_identity("x = x")).has_value());
}

TEST_CASE("periodic consequences hold wherever the source does",
          "[varieties]") {
  Identity band = parse_identity("x = x x");
  PeriodicConsequence pc = *periodic_consequence(band);
  for (const NamedModel& nm : ewtest::models()) {
    if (!satisfies(nm.model, band).holds) continue;
    INFO(nm.name);
    REQUIRE(satisfies(nm.model, pc.power_identity).holds);
    REQUIRE(satisfies(nm.model, pc.mixed).holds);
  }
  Identity xy = parse_identity("x y = x y x y");
  PeriodicConsequence pc2 = *periodic_consequence(xy);
  for (const NamedModel& nm : ewtest::models()) {
    if (!satisfies(nm.model, xy).holds) continue;
    INFO(nm.name);
    REQUIRE(satisfies(nm.model, pc2.power_identity).holds);
    REQUIRE(satisfies(nm.model, pc2.mixed).holds);
  }
}

TEST_CASE("degree form identities and recognition", "[varieties]") {
  REQUIRE(render_identity(degree_form_identity(2, 1, 1)) ==
          "x1 x2 = x1'' x2");
  REQUIRE(render_identity(degree_form_identity(2, 1, 2)) ==
          "x1 x2 = (x1 x2)''");
  REQUIRE(render_identity(degree_form_identity(3, 2, 3)) ==
          "x1 x2 x3 = x1 (x2 x3)''");
  REQUIRE(render_identity(degree_form_identity(1, 1, 1)) == "x1 = x1''");

  std::optional<DegreeForm> seg =
      recognize_degree_form(parse_identity("a b = a'' b"));
  REQUIRE(seg.has_value());
  REQUIRE(seg->form == kFormDoubleBarSegment);
  REQUIRE(seg->n == 2);
  REQUIRE(seg->i == 1);
  REQUIRE(seg->j == 1);

  std::optional<DegreeForm> longer =
      recognize_degree_form(parse_identity("x y = x y x"));
  REQUIRE(longer.has_value());
  REQUIRE(longer->form == kFormLinearLonger);
  REQUIRE(longer->n == 2);

  // An infinitely long right side also counts as longer, but the segment
  // shape takes precedence when both apply.
  std::optional<DegreeForm> prec =
      recognize_degree_form(parse_identity("x y = (x y)''"));
  REQUIRE(prec.has_value());
  REQUIRE(prec->form == kFormDoubleBarSegment);

  std::optional<DegreeForm> barred =
      recognize_degree_form(parse_identity("x y = y' x"));
  REQUIRE(barred.has_value());
  REQUIRE(barred->form == kFormLinearLonger);

  REQUIRE_FALSE(recognize_degree_form(parse_identity("x x = y")).has_value());
  REQUIRE_FALSE(recognize_degree_form(parse_identity("x y = y x")).has_value());
  REQUIRE_FALSE(recognize_degree_form(parse_identity("x' = x")).has_value());
}

TEST_CASE("degree witnesses on stock models", "[varieties]") {
  std::optional<DegreeWitness> p = find_degree_witness(make_P(), 3);
  REQUIRE(p.has_value());
  REQUIRE(p->n == 2);
  REQUIRE(p->i == 1);
  REQUIRE(p->j == 1);

  std::optional<DegreeWitness> z3 = find_degree_witness(make_Z(3), 1);
  REQUIRE(z3.has_value());
  REQUIRE(z3->n == 1);
  REQUIRE(z3->i == 1);
  REQUIRE(z3->j == 1);

  REQUIRE_FALSE(find_degree_witness(make_free_nil(3, 2), 2).has_value());
  std::optional<DegreeWitness> f3 = find_degree_witness(make_free_nil(3, 2), 3);
  REQUIRE(f3.has_value());
  REQUIRE(f3->n == 3);
  REQUIRE(f3->i == 1);
  REQUIRE(f3->j == 1);
}
