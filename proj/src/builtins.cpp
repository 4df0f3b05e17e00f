#include "stagec/builtins.hpp"

#include <functional>
#include <map>

#include "stagec/diag.hpp"
#include "stagec/ope.hpp"

namespace stagec::kernel {

TermPtr numeral(std::uint64_t n, Phase ph, Stage st) {
  TermPtr t = Term::zero(ph, st);
  for (std::uint64_t i = 0; i < n; ++i) t = Term::succ(std::move(t));
  return t;
}

TermPtr compose(const TermPtr& g, const TermPtr& f) {
  const TyPtr& gty = g->type();
  const TyPtr& fty = f->type();
  if (gty->kind() != Ty::Kind::Arrow || fty->kind() != Ty::Kind::Arrow)
    throw InternalError("compose of non-functions");
  ope::Ope under = ope::Ope::id(0).dropped();
  // Closed operands: the weakening is structurally the identity, but going
  // under the fresh binder is part of the pseudo-constructor's definition.
  TermPtr x = Term::var(0, fty->left());
  return Term::lam(fty->left(), Term::app(ope::wkTerm(under, g),
                                          Term::app(ope::wkTerm(under, f), std::move(x))));
}

namespace {

using Maker = std::function<TermPtr()>;

TyPtr dynBase() { return Ty::base(Phase::Src, Stage::Dyn); }
TyPtr staBase() { return Ty::base(Phase::Src, Stage::Sta); }
TyPtr dynNat() { return Ty::nat(Phase::Src, Stage::Dyn); }
TyPtr staNat() { return Ty::nat(Phase::Src, Stage::Sta); }

// \x. x at the given type.
TermPtr identityAt(const TyPtr& ty) { return Term::lam(ty, Term::var(0, ty)); }

// \m. \n. iter m n (\k. succ k) — addition as iterated succ, valid at
// either stage depending on the number type handed in.
TermPtr additionAt(const TyPtr& natTy) {
  TermPtr step = Term::lam(natTy, Term::succ(Term::var(0, natTy)));
  TermPtr body = Term::iter(Term::var(1, natTy), Term::var(0, natTy), std::move(step));
  return Term::lam(natTy, Term::lam(natTy, std::move(body)));
}

// \n. iter n <zero> (\r. <succ ~r>) — rebuilds a static number as dynamic
// syntax.
TermPtr reifyTerm() {
  TyPtr upNat = Ty::lift(dynNat());
  TermPtr seed = Term::quote(Term::zero(Phase::Src, Stage::Dyn));
  TermPtr step =
      Term::lam(upNat, Term::quote(Term::succ(Term::splice(Term::var(0, upNat)))));
  return Term::lam(staNat(),
                   Term::iter(Term::var(0, staNat()), std::move(seed), std::move(step)));
}

// fst . (\n. iter n (0, 1) (\p. (snd p, add (fst p) (snd p))))
TermPtr fibTerm() {
  TyPtr natTy = staNat();
  TyPtr pairTy = Ty::prod(natTy, natTy);
  TermPtr add = additionAt(natTy);
  TermPtr p = Term::var(0, pairTy);
  TermPtr stepBody = Term::pair(
      Term::snd(p), Term::app(Term::app(add, Term::fst(p)), Term::snd(p)));
  TermPtr step = Term::lam(pairTy, std::move(stepBody));
  TermPtr seed = Term::pair(Term::zero(Phase::Src, Stage::Sta),
                            Term::succ(Term::zero(Phase::Src, Stage::Sta)));
  TermPtr loop = Term::lam(
      natTy, Term::iter(Term::var(0, natTy), std::move(seed), std::move(step)));
  TermPtr first = Term::lam(pairTy, Term::fst(Term::var(0, pairTy)));
  return compose(first, loop);
}

// \c. <seq dup ~c> — feeds a duplicated input to both ports of a 2-to-1
// circuit.
TermPtr diagTerm() {
  TyPtr upTwoOne = Ty::lift(Ty::circ(2, 1, Phase::Src));
  TermPtr dup = Term::mix({0, 0}, 1, Phase::Src);
  TermPtr body = Term::quote(Term::seq(std::move(dup), Term::splice(Term::var(0, upTwoOne))));
  return Term::lam(upTwoOne, std::move(body));
}

// ~(diag <nand>)
TermPtr notTerm() {
  return Term::splice(Term::app(diagTerm(), Term::quote(Term::nandGate(Phase::Src))));
}

// seq nand not
TermPtr andTerm() { return Term::seq(Term::nandGate(Phase::Src), notTerm()); }

// seq (par not not) nand
TermPtr orTerm() {
  return Term::seq(Term::par(notTerm(), notTerm()), Term::nandGate(Phase::Src));
}

// \f. < seq (mix [0,1,0,1])
//          (seq (par (seq (par (mix [0]) ~(f true)) and)
//                    (seq (par not      ~(f false)) and))
//               or) >
// Tabulates a boolean-indexed family of 1-to-1 circuits into a multiplexer.
TermPtr tabTerm() {
  TyPtr upOneOne = Ty::lift(Ty::circ(1, 1, Phase::Src));
  TyPtr fTy = Ty::arrow(Ty::boolean(), upOneOne);
  TermPtr f = Term::var(0, fTy);
  TermPtr onTrue = Term::splice(Term::app(f, Term::trueLit()));
  TermPtr onFalse = Term::splice(Term::app(f, Term::falseLit()));
  TermPtr keepB = Term::mix({0}, 1, Phase::Src);
  TermPtr high = Term::seq(Term::par(std::move(keepB), std::move(onTrue)), andTerm());
  TermPtr low = Term::seq(Term::par(notTerm(), std::move(onFalse)), andTerm());
  TermPtr fanout = Term::mix({0, 1, 0, 1}, 2, Phase::Src);
  TermPtr body = Term::seq(std::move(fanout),
                           Term::seq(Term::par(std::move(high), std::move(low)), orTerm()));
  return Term::lam(fTy, Term::quote(std::move(body)));
}

const std::vector<std::pair<std::string, Maker>>& catalogue() {
  static const std::vector<std::pair<std::string, Maker>> entries = {
      {"idDyn", [] { return identityAt(dynBase()); }},
      {"idSta", [] { return identityAt(staBase()); }},
      {"add", [] { return additionAt(staNat()); }},
      {"addDyn", [] { return additionAt(dynNat()); }},
      {"reify", reifyTerm},
      {"fib", fibTerm},
      {"id2", [] { return Term::mix({0, 1}, 2, Phase::Src); }},
      {"swap", [] { return Term::mix({1, 0}, 2, Phase::Src); }},
      {"dup", [] { return Term::mix({0, 0}, 1, Phase::Src); }},
      {"diag", diagTerm},
      {"not", notTerm},
      {"and", andTerm},
      {"or", orTerm},
      {"tab", tabTerm},
  };
  return entries;
}

}  // namespace

TermPtr builtin(std::string_view name) {
  for (const auto& [entryName, make] : catalogue())
    if (entryName == name) return make();
  throw Error({DiagCode::UnknownBuiltin, "no builtin named '" + std::string(name) + "'", ""});
}

const std::vector<std::string>& builtinNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, make] : catalogue()) out.push_back(name);
    return out;
  }();
  return names;
}

}  // namespace stagec::kernel
