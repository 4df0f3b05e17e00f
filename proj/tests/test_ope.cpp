#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stagec/builtins.hpp"
#include "stagec/ope.hpp"
#include "stagec/validate.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace stagec;
using namespace stagec::kernel;
using stagec::ope::Ope;

namespace {

Ctx ctxOf(std::size_t n, const TyPtr& ty) {
  Ctx ctx = Ctx::empty();
  for (std::size_t i = 0; i < n; ++i) ctx = ctx.snoc(ty);
  return ctx;
}

}  // namespace

TEST_CASE("identity embedding") {
  CHECK(Ope::id(0) == Ope::done());
  CHECK(Ope::id(1) == Ope::done().kept());
  CHECK(Ope::id(3).source() == 3);
  CHECK(Ope::id(3).target() == 3);
}

TEST_CASE("wkVar rejects variables outside the source context") {
  CHECK(ope::wkVar(Ope::id(1), 0) == 0);
  CHECK_THROWS_AS(ope::wkVar(Ope::id(0).dropped(), 0), InternalError);
}

TEST_CASE("wkVar on the spec examples") {
  // wkVar(Keep sigma, Here) = Here
  CHECK(ope::wkVar(Ope::id(2).kept(), 0) == 0);
  // wkVar(Drop oid, Here) = There Here
  CHECK(ope::wkVar(Ope::id(1).dropped(), 0) == 1);
  // wkVar(Keep (Drop oid), There Here) = There (There Here)
  CHECK(ope::wkVar(Ope::id(1).dropped().kept(), 1) == 2);
}

TEST_CASE("composition against the position-map oracle") {
  // ocomp(Drop Done, Keep Done) = Drop Done
  CHECK(ope::compose(Ope::done().dropped(), Ope::done().kept()) == Ope::done().dropped());

  for (std::size_t mid = 0; mid <= 3; ++mid) {
    for (const Ope& sigma : oracles::allOpesInto(mid)) {
      for (std::size_t top = mid; top <= 3; ++top) {
        for (const Ope& tau : oracles::allOpes(mid, top)) {
          Ope composed = ope::compose(sigma, tau);
          CHECK(composed.source() == sigma.source());
          CHECK(composed.target() == tau.target());
          auto viaSigma = oracles::opeSemantics(sigma);
          auto viaTau = oracles::opeSemantics(tau);
          auto direct = oracles::opeSemantics(composed);
          REQUIRE(direct.size() == viaSigma.size());
          for (std::size_t v = 0; v < viaSigma.size(); ++v) {
            CHECK(direct[v] == viaTau[viaSigma[v]]);
            // wkVar matches both the oracle and the two-step route.
            CHECK(ope::wkVar(composed, v) == direct[v]);
            CHECK(ope::wkVar(tau, ope::wkVar(sigma, v)) == direct[v]);
          }
        }
      }
    }
  }
}

TEST_CASE("composition unit laws") {
  for (std::size_t top = 0; top <= 4; ++top) {
    for (const Ope& sigma : oracles::allOpesInto(top)) {
      CHECK(ope::compose(sigma, Ope::id(sigma.target())) == sigma);
      CHECK(ope::compose(Ope::id(sigma.source()), sigma) == sigma);
    }
  }
}

TEST_CASE("composition is associative") {
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t b = a; b <= 3; ++b)
      for (std::size_t c = b; c <= 3; ++c)
        for (const Ope& s1 : oracles::allOpes(a, b))
          for (const Ope& s2 : oracles::allOpes(b, c))
            for (const Ope& s3 : oracles::allOpes(c, 3))
              CHECK(ope::compose(ope::compose(s1, s2), s3) ==
                    ope::compose(s1, ope::compose(s2, s3)));
}

TEST_CASE("composition rejects mismatched shapes") {
  CHECK_THROWS_AS(ope::compose(Ope::id(2), Ope::id(1)), Error);
}

TEST_CASE("wkTerm spec examples") {
  TyPtr base = Ty::base(Phase::Src, Stage::Dyn);
  TermPtr id = Term::lam(base, Term::var(0, base));
  // Closed terms are untouched up to context re-indexing.
  CHECK(equal(ope::wkTerm(Ope::id(0).dropped(), id), id));
  // A free variable shifts past the new slot.
  CHECK(equal(ope::wkTerm(Ope::id(1).dropped(), Term::var(0, base)), Term::var(1, base)));
  // Numerals carry no variables at all.
  for (std::uint64_t n = 0; n <= 10; ++n) {
    TermPtr num = numeral(n, Phase::Src, Stage::Dyn);
    CHECK(equal(ope::wkTerm(Ope::id(2).dropped().kept(), num), num));
  }
}

TEST_CASE("weakening the builtins with the identity is the identity") {
  for (const std::string& name : builtinNames()) {
    TermPtr t = builtin(name);
    CHECK(equal(ope::wkTerm(Ope::id(0), t), t));
  }
}

TEST_CASE("functor laws over enumerated embeddings and generated terms") {
  generators::Gen gen(11);
  TyPtr natD = Ty::nat(Phase::Src, Stage::Dyn);

  for (std::size_t srcLen = 0; srcLen <= 3; ++srcLen) {
    // Terms over a context of srcLen dynamic Nat entries.
    std::vector<TyPtr> ctxTypes(srcLen, natD);
    std::vector<TermPtr> terms;
    for (int i = 0; i < 6; ++i) {
      TyPtr goal = gen.genDynTy(1, ctxTypes);
      std::vector<TyPtr> scratch = ctxTypes;
      terms.push_back(gen.genTerm(goal, scratch, 5));
    }

    Ctx ctx = ctxOf(srcLen, natD);
    for (const TermPtr& t : terms) {
      REQUIRE_FALSE(validate(t, Phase::Src, t->stage(), t->type(), ctx));
      CHECK(equal(ope::wkTerm(Ope::id(srcLen), t), t));

      for (std::size_t mid = srcLen; mid <= 3; ++mid) {
        for (const Ope& sigma : oracles::allOpes(srcLen, mid)) {
          TermPtr once = ope::wkTerm(sigma, t);
          // Weakening preserves well-typedness and the node count.
          CHECK_FALSE(validate(once, Phase::Src, t->stage(), t->type(), ctxOf(mid, natD)));
          CHECK(nodeCount(once) == nodeCount(t));
          for (const Ope& tau : oracles::allOpes(mid, 3)) {
            TermPtr stepwise = ope::wkTerm(tau, once);
            TermPtr direct = ope::wkTerm(ope::compose(sigma, tau), t);
            CHECK(equal(stepwise, direct));
          }
        }
      }
    }
  }
}
