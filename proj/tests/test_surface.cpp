#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stagec/builtins.hpp"
#include "stagec/pretty.hpp"
#include "stagec/stager.hpp"
#include "stagec/surface.hpp"
#include "stagec/validate.hpp"
#include "support/generators.hpp"

using namespace stagec;
using namespace stagec::kernel;
namespace sf = stagec::surface;

namespace {

sf::Program parsed(const std::string& text) {
  auto program = sf::parse(text);
  if (!program.ok()) FAIL(program.error().render());
  return program.value();
}

std::vector<sf::ElabDef> elaborated(const std::string& text,
                                    sf::Profile profile = sf::Profile::Full) {
  auto defs = sf::elaborate(parsed(text), profile);
  if (!defs.ok()) FAIL(text, " | ", defs.error().render());
  return defs.value();
}

Diag elaborationError(const std::string& text, sf::Profile profile = sf::Profile::Full) {
  auto defs = sf::elaborate(parsed(text), profile);
  REQUIRE_FALSE(defs.ok());
  return defs.error();
}

}  // namespace

TEST_CASE("parse: basic defs") {
  sf::Program id = parsed("def id : (Base@d -> Base@d) = \\x. x;");
  REQUIRE(id.defs.size() == 1);
  CHECK(id.defs[0].name == "id");
  CHECK(id.defs[0].body->kind == sf::Expr::Kind::Lam);

  sf::Program n = parsed("def n : Nat@s = succ (succ zero);");
  CHECK(n.defs[0].body->kind == sf::Expr::Kind::Succ);
}

TEST_CASE("parse: comments and whitespace") {
  sf::Program p = parsed("-- a numeral\ndef n : Nat@s = 3@s; -- trailing\n");
  REQUIRE(p.defs.size() == 1);
  CHECK(p.defs[0].body->kind == sf::Expr::Kind::NumLit);
}

TEST_CASE("parse: syntax errors carry positions") {
  auto bad = sf::parse("def bad : = ;");
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.error().code == DiagCode::SyntaxError);
  CHECK(bad.error().line == 1);
  CHECK(bad.error().col == 11);  // the '=' where a type was expected

  auto sameAgain = sf::parse("def bad : = ;");
  REQUIRE_FALSE(sameAgain.ok());
  CHECK(sameAgain.error().render() == bad.error().render());
}

TEST_CASE("elaborate: the identity def") {
  auto defs = elaborated("def id : Base@d -> Base@d = \\x. x;");
  TyPtr base = Ty::base(Phase::Src, Stage::Dyn);
  CHECK(equal(defs[0].term, Term::lam(base, Term::var(0, base))));
  CHECK(equal(defs[0].type, Ty::arrow(base, base)));
}

TEST_CASE("elaborate: the testid01 program matches the hand-built term") {
  std::string text =
      "def idD : Base@d -> Base@d = \\x. x;\n"
      "def idDF : (Base@d -> Base@d) -> (Base@d -> Base@d) = \\f. f;\n"
      "def idS : Up (Base@d -> Base@d) -> Up (Base@d -> Base@d) = \\x. x;\n"
      "def main : Base@d -> Base@d = idDF ~(idS <idD>);\n";
  auto defs = elaborated(text);

  TyPtr base = Ty::base(Phase::Src, Stage::Dyn);
  TyPtr arrow = Ty::arrow(base, base);
  TermPtr idD = Term::lam(base, Term::var(0, base));
  TermPtr idDF = Term::lam(arrow, Term::var(0, arrow));
  TermPtr idS = Term::lam(Ty::lift(arrow), Term::var(0, Ty::lift(arrow)));
  TermPtr expected = Term::app(idDF, Term::splice(Term::app(idS, Term::quote(idD))));
  CHECK(equal(defs[3].term, expected));
}

TEST_CASE("elaborate: stage errors") {
  Diag pairInDyn = elaborationError("def p : Nat@d = (zero, zero);");
  CHECK(pairInDyn.code == DiagCode::StageError);

  Diag quoteInDyn = elaborationError("def q : Nat@d = <zero>;");
  CHECK(quoteInDyn.code == DiagCode::StageError);

  Diag quoteAtNat = elaborationError("def q : Nat@s = <zero>;");
  CHECK(quoteAtNat.code == DiagCode::TypeMismatch);

  Diag mixedArrow = elaborationError("def f : Nat@s -> Nat@d = \\x. x;");
  CHECK(mixedArrow.code == DiagCode::StageError);

  Diag upOfStatic = elaborationError("def u : Up Nat@s = <zero>;");
  CHECK(upOfStatic.code == DiagCode::StageError);

  Diag dynProd = elaborationError("def p : Nat@d * Nat@d = (zero, zero);");
  CHECK(dynProd.code == DiagCode::StageError);
}

TEST_CASE("elaborate: unbound identifiers and annotations") {
  CHECK(elaborationError("def f : Nat@s = z;").code == DiagCode::UnboundIdentifier);
  CHECK(elaborationError("def f : Nat@s = (\\x. x) zero;").code ==
        DiagCode::AnnotationRequired);
  CHECK(elaborationError("def f : Circ 2 2 = par (mix [0]) (mix [0]);").code ==
        DiagCode::AnnotationRequired);
}

TEST_CASE("elaborate: ascriptions unlock stuck positions") {
  auto defs = elaborated(
      "def f : Nat@s = ((\\x. x : Nat@s -> Nat@s)) zero;\n"
      "def g : Circ 2 2 = par ((mix [0] : Circ 1 1)) (mix [0]);\n");
  CHECK(defs[0].type->stage() == Stage::Sta);
  CHECK(defs[1].term->kind() == Term::Kind::Par);
}

TEST_CASE("resolve: de Bruijn indices, innermost first") {
  auto defs = elaborated(
      "def k : Base@d -> Base@d -> Base@d = \\x. \\y. x;\n"
      "def shadow : Base@d -> Base@d -> Base@d = \\x. \\x. x;\n");
  CHECK(defs[0].term->body()->body()->varIndex() == 1);   // outer binder
  CHECK(defs[1].term->body()->body()->varIndex() == 0);   // innermost wins
}

TEST_CASE("scopeCheck finds the first unbound identifier") {
  sf::Program good = parsed("def a : Nat@s = zero; def b : Nat@s = a;");
  CHECK_FALSE(sf::scopeCheck(good));

  sf::Program bad = parsed("def a : Nat@s = succ z;");
  auto diag = sf::scopeCheck(bad);
  REQUIRE(diag);
  CHECK(diag->code == DiagCode::UnboundIdentifier);
}

TEST_CASE("binders shadow defs of the same name") {
  auto defs = elaborated(
      "def f : Nat@s = zero;\n"
      "def g : Bool -> Bool = \\f. f;\n");
  CHECK(defs[1].term->body()->kind() == Term::Kind::Var);
}

TEST_CASE("duplicate defs are rejected") {
  Diag dup = elaborationError("def a : Nat@s = zero; def a : Nat@s = zero;");
  CHECK(dup.code == DiagCode::SyntaxError);
}

TEST_CASE("cross-def references are inlined") {
  auto defs = elaborated(
      "def two : Nat@s = 2@s;\n"
      "def four : Nat@s = iter two two (\\k. succ k);\n");
  // `four` contains the literal numeral tree of `two`, not a reference.
  CHECK(defs[1].term->count()->kind() == Term::Kind::Succ);
}

TEST_CASE("every elaboration output validates") {
  std::string text =
      "def dup : Circ 1 2 = mix [0,0];\n"
      "def diag : Up (Circ 2 1) -> Up (Circ 1 1) = \\c. <seq dup ~c>;\n"
      "def notc : Circ 1 1 = ~(diag <nand>);\n"
      "def andc : Circ 2 1 = seq nand notc;\n"
      "def orc : Circ 2 1 = seq (par notc notc) nand;\n";
  for (const auto& def : elaborated(text)) {
    CHECK_FALSE(validate(def.term, Phase::Src, def.type->stage(), def.type, Ctx::empty()));
  }
}

TEST_CASE("the circuit profile confines dynamic types to Circ") {
  std::string circuitsOnly =
      "def dup : Circ 1 2 = mix [0,0];\n"
      "def diag : Up (Circ 2 1) -> Up (Circ 1 1) = \\c. <seq dup ~c>;\n"
      "def main : Circ 1 1 = ~(diag <nand>);\n";
  CHECK(elaborated(circuitsOnly, sf::Profile::Circuit).size() == 3);

  Diag dynNat = elaborationError("def n : Nat@d = zero;", sf::Profile::Circuit);
  CHECK(dynNat.code == DiagCode::ProfileViolation);

  // The full profile accepts the same program.
  CHECK(elaborated("def n : Nat@d = zero;").size() == 1);
}

TEST_CASE("pretty output of source fuzz programs re-elaborates") {
  // Source programs exercise the printer on quotes, splices, and the whole
  // static layer, not just the residual fragment.
  generators::Gen gen(57);
  for (int i = 0; i < 150; ++i) {
    TermPtr t = gen.genClosedDynProgram(5);
    std::string text = "def main : " + prettyType(t->type()) + " = " + prettyTerm(t) + ";";
    auto program = sf::parse(text);
    REQUIRE_MESSAGE(program.ok(), text);
    auto defs = sf::elaborate(program.value());
    if (!defs.ok()) FAIL(text, " | ", defs.error().render());
    CHECK_MESSAGE(equal(defs.value()[0].term, t), text);
  }
}

TEST_CASE("pretty output of staged fuzz programs re-elaborates") {
  generators::Gen gen(41);
  for (int i = 0; i < 150; ++i) {
    TermPtr t = gen.genClosedDynProgram(5);
    TermPtr staged = stager::stage(t);
    std::string text =
        "def main : " + prettyType(staged->type()) + " = " + prettyTerm(staged) + ";";
    auto program = sf::parse(text);
    REQUIRE_MESSAGE(program.ok(), text);
    auto defs = sf::elaborate(program.value());
    if (!defs.ok()) FAIL(text, " | ", defs.error().render());
    CHECK_MESSAGE(equalModPhase(defs.value()[0].term, staged), text);
  }
}

TEST_CASE("first diagnostics are deterministic") {
  std::string text = "def a : Nat@s = succ (succ wrong);";
  Diag first = elaborationError(text);
  Diag second = elaborationError(text);
  CHECK(first.render() == second.render());
  CHECK(first.line == 1);
}
