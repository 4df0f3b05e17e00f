#include <map>
#include <utility>

#include "stagec/builtins.hpp"
#include "stagec/pretty.hpp"
#include "stagec/surface.hpp"
#include "stagec/validate.hpp"

namespace stagec::surface {

using kernel::Phase;
using kernel::Stage;
using kernel::Term;
using kernel::TermPtr;
using kernel::Ty;
using kernel::TyPtr;

namespace {

Diag at(DiagCode code, std::string message, Loc loc) {
  return Diag{code, std::move(message), "", loc.line, loc.col};
}

struct Binder {
  std::string name;
  TyPtr type;
};

struct Synthed {
  TermPtr term;
  TyPtr type;
};

struct Elaborator {
  const std::map<std::string, Synthed>& defs;
  std::vector<Binder> binders;  // innermost last

  // --- types ---------------------------------------------------------

  Expected<TyPtr> elabType(const TypeExprPtr& t) {
    switch (t->kind) {
      case TypeExpr::Kind::Base:
        return Ty::base(Phase::Src, t->stage);
      case TypeExpr::Kind::Nat:
        return Ty::nat(Phase::Src, t->stage);
      case TypeExpr::Kind::Bool:
        return Ty::boolean();
      case TypeExpr::Kind::Up: {
        auto inner = elabType(t->left);
        if (!inner) return inner.error();
        if (inner.value()->stage() != Stage::Dyn)
          return at(DiagCode::StageError, "Up embeds dynamic types only", t->loc);
        return Ty::lift(inner.value());
      }
      case TypeExpr::Kind::Arrow: {
        auto dom = elabType(t->left);
        if (!dom) return dom.error();
        auto cod = elabType(t->right);
        if (!cod) return cod.error();
        if (dom.value()->stage() != cod.value()->stage())
          return at(DiagCode::StageError,
                    "function domain and codomain must live at the same stage", t->loc);
        return Ty::arrow(dom.value(), cod.value());
      }
      case TypeExpr::Kind::Prod: {
        auto lhs = elabType(t->left);
        if (!lhs) return lhs.error();
        auto rhs = elabType(t->right);
        if (!rhs) return rhs.error();
        if (lhs.value()->stage() != Stage::Sta || rhs.value()->stage() != Stage::Sta)
          return at(DiagCode::StageError, "pair types live in the static layer", t->loc);
        return Ty::prod(lhs.value(), rhs.value());
      }
      case TypeExpr::Kind::Circ:
        return Ty::circ(t->inputs, t->outputs, Phase::Src);
    }
    return at(DiagCode::SyntaxError, "unhandled type form", t->loc);
  }

  // --- helpers -------------------------------------------------------

  static bool staticOnlyForm(Expr::Kind kind) {
    switch (kind) {
      case Expr::Kind::TrueLit:
      case Expr::Kind::FalseLit:
      case Expr::Kind::If:
      case Expr::Kind::Pair:
      case Expr::Kind::Fst:
      case Expr::Kind::Snd:
        return true;
      default:
        return false;
    }
  }

  static bool circuitForm(Expr::Kind kind) {
    switch (kind) {
      case Expr::Kind::Nand:
      case Expr::Kind::Par:
      case Expr::Kind::Seq:
      case Expr::Kind::Mix:
        return true;
      default:
        return false;
    }
  }

  Diag mismatch(const ExprPtr& e, const TyPtr& expected, const TyPtr& got) {
    return at(DiagCode::TypeMismatch,
              "expected " + kernel::prettyType(expected) + ", found " + kernel::prettyType(got),
              e->loc);
  }

  // --- checking ------------------------------------------------------

  Expected<TermPtr> check(const ExprPtr& e, const TyPtr& expected) {
    const Stage st = expected->stage();

    if (staticOnlyForm(e->kind) && st == Stage::Dyn)
      return at(DiagCode::StageError, "static construct in dynamic position", e->loc);
    if (circuitForm(e->kind) && st == Stage::Sta)
      return at(DiagCode::StageError, "dynamic construct in static position", e->loc);

    switch (e->kind) {
      case Expr::Kind::Lam: {
        if (expected->kind() != Ty::Kind::Arrow)
          return at(DiagCode::TypeMismatch,
                    "lambda checked against " + kernel::prettyType(expected), e->loc);
        binders.push_back({e->name, expected->left()});
        auto body = check(e->kids[0], expected->right());
        binders.pop_back();
        if (!body) return body.error();
        return Term::lam(expected->left(), body.value());
      }
      case Expr::Kind::Quote: {
        if (expected->kind() != Ty::Kind::Lift) {
          if (st == Stage::Dyn)
            return at(DiagCode::StageError, "static construct in dynamic position", e->loc);
          return at(DiagCode::TypeMismatch,
                    "quote checked against " + kernel::prettyType(expected), e->loc);
        }
        auto inner = check(e->kids[0], expected->left());
        if (!inner) return inner.error();
        return Term::quote(inner.value());
      }
      case Expr::Kind::Splice: {
        if (st != Stage::Dyn)
          return at(DiagCode::StageError, "splice lives in the dynamic layer", e->loc);
        auto inner = check(e->kids[0], Ty::lift(expected));
        if (!inner) return inner.error();
        return Term::splice(inner.value());
      }
      case Expr::Kind::Zero:
        if (expected->kind() != Ty::Kind::Nat)
          return at(DiagCode::TypeMismatch, "zero checked against " + kernel::prettyType(expected),
                    e->loc);
        return Term::zero(Phase::Src, st);
      case Expr::Kind::Succ: {
        if (expected->kind() != Ty::Kind::Nat)
          return at(DiagCode::TypeMismatch, "succ checked against " + kernel::prettyType(expected),
                    e->loc);
        auto inner = check(e->kids[0], expected);
        if (!inner) return inner.error();
        return Term::succ(inner.value());
      }
      case Expr::Kind::NumLit: {
        if (expected->kind() != Ty::Kind::Nat)
          return at(DiagCode::TypeMismatch,
                    "numeral checked against " + kernel::prettyType(expected), e->loc);
        if (expected->stage() != e->litStage)
          return at(DiagCode::StageError, "numeral marked for the other stage", e->loc);
        return kernel::numeral(e->number, Phase::Src, e->litStage);
      }
      case Expr::Kind::Iter: {
        auto count = check(e->kids[0], Ty::nat(Phase::Src, st));
        if (!count) return count.error();
        auto seed = check(e->kids[1], expected);
        if (!seed) return seed.error();
        auto step = check(e->kids[2], Ty::arrow(expected, expected));
        if (!step) return step.error();
        return Term::iter(count.value(), seed.value(), step.value());
      }
      case Expr::Kind::TrueLit:
      case Expr::Kind::FalseLit:
        if (expected->kind() != Ty::Kind::Bool)
          return at(DiagCode::TypeMismatch,
                    "boolean checked against " + kernel::prettyType(expected), e->loc);
        return e->kind == Expr::Kind::TrueLit ? Term::trueLit() : Term::falseLit();
      case Expr::Kind::If: {
        auto cond = check(e->kids[0], Ty::boolean());
        if (!cond) return cond.error();
        auto thenB = check(e->kids[1], expected);
        if (!thenB) return thenB.error();
        auto elseB = check(e->kids[2], expected);
        if (!elseB) return elseB.error();
        return Term::ifThenElse(cond.value(), thenB.value(), elseB.value());
      }
      case Expr::Kind::Pair: {
        if (expected->kind() != Ty::Kind::Prod)
          return at(DiagCode::TypeMismatch, "pair checked against " + kernel::prettyType(expected),
                    e->loc);
        auto lhs = check(e->kids[0], expected->left());
        if (!lhs) return lhs.error();
        auto rhs = check(e->kids[1], expected->right());
        if (!rhs) return rhs.error();
        return Term::pair(lhs.value(), rhs.value());
      }
      case Expr::Kind::Nand:
      case Expr::Kind::Par:
      case Expr::Kind::Seq:
      case Expr::Kind::Mix: {
        if (expected->kind() != Ty::Kind::Circ)
          return at(DiagCode::TypeMismatch,
                    "circuit checked against " + kernel::prettyType(expected), e->loc);
        return checkCirc(e, expected->inputs(), expected->outputs());
      }
      default: {
        auto synthed = synth(e);
        if (!synthed) return synthed.error();
        if (!kernel::equal(synthed.value().type, expected))
          return mismatch(e, expected, synthed.value().type);
        return synthed.value().term;
      }
    }
  }

  // --- synthesis -----------------------------------------------------

  Expected<Synthed> synth(const ExprPtr& e) {
    switch (e->kind) {
      case Expr::Kind::Ident: {
        for (std::size_t i = binders.size(); i-- > 0;) {
          if (binders[i].name == e->name) {
            std::size_t index = binders.size() - 1 - i;
            return Synthed{Term::var(index, binders[i].type), binders[i].type};
          }
        }
        auto def = defs.find(e->name);
        if (def != defs.end()) return def->second;  // closed term, inlined as-is
        return at(DiagCode::UnboundIdentifier, "unbound identifier '" + e->name + "'", e->loc);
      }
      case Expr::Kind::App: {
        auto fun = synth(e->kids[0]);
        if (!fun) return fun.error();
        if (fun.value().type->kind() != Ty::Kind::Arrow)
          return at(DiagCode::TypeMismatch,
                    "applying a term of type " + kernel::prettyType(fun.value().type), e->loc);
        auto arg = check(e->kids[1], fun.value().type->left());
        if (!arg) return arg.error();
        return Synthed{Term::app(fun.value().term, arg.value()), fun.value().type->right()};
      }
      case Expr::Kind::Splice: {
        auto inner = synth(e->kids[0]);
        if (!inner) return inner.error();
        if (inner.value().type->kind() != Ty::Kind::Lift)
          return at(DiagCode::TypeMismatch,
                    "splicing a term of type " + kernel::prettyType(inner.value().type), e->loc);
        return Synthed{Term::splice(inner.value().term), inner.value().type->left()};
      }
      case Expr::Kind::Quote: {
        auto inner = synth(e->kids[0]);
        if (!inner) return inner.error();
        if (inner.value().type->stage() != Stage::Dyn)
          return at(DiagCode::StageError, "quoting a static term", e->loc);
        return Synthed{Term::quote(inner.value().term), Ty::lift(inner.value().type)};
      }
      case Expr::Kind::Succ: {
        auto inner = synth(e->kids[0]);
        if (!inner) return inner.error();
        if (inner.value().type->kind() != Ty::Kind::Nat)
          return at(DiagCode::TypeMismatch, "succ of a non-number", e->loc);
        return Synthed{Term::succ(inner.value().term), inner.value().type};
      }
      case Expr::Kind::NumLit: {
        TyPtr ty = Ty::nat(Phase::Src, e->litStage);
        return Synthed{kernel::numeral(e->number, Phase::Src, e->litStage), ty};
      }
      case Expr::Kind::Iter: {
        auto seed = synth(e->kids[1]);
        if (!seed) return seed.error();
        const TyPtr& accTy = seed.value().type;
        auto count = check(e->kids[0], Ty::nat(Phase::Src, accTy->stage()));
        if (!count) return count.error();
        auto step = check(e->kids[2], Ty::arrow(accTy, accTy));
        if (!step) return step.error();
        return Synthed{Term::iter(count.value(), seed.value().term, step.value()), accTy};
      }
      case Expr::Kind::TrueLit:
        return Synthed{Term::trueLit(), Ty::boolean()};
      case Expr::Kind::FalseLit:
        return Synthed{Term::falseLit(), Ty::boolean()};
      case Expr::Kind::If: {
        auto thenB = synth(e->kids[1]);
        if (!thenB) return thenB.error();
        auto cond = check(e->kids[0], Ty::boolean());
        if (!cond) return cond.error();
        auto elseB = check(e->kids[2], thenB.value().type);
        if (!elseB) return elseB.error();
        return Synthed{Term::ifThenElse(cond.value(), thenB.value().term, elseB.value()),
                       thenB.value().type};
      }
      case Expr::Kind::Pair: {
        auto lhs = synth(e->kids[0]);
        if (!lhs) return lhs.error();
        auto rhs = synth(e->kids[1]);
        if (!rhs) return rhs.error();
        if (lhs.value().type->stage() != Stage::Sta || rhs.value().type->stage() != Stage::Sta)
          return at(DiagCode::StageError, "pairs live in the static layer", e->loc);
        return Synthed{Term::pair(lhs.value().term, rhs.value().term),
                       Ty::prod(lhs.value().type, rhs.value().type)};
      }
      case Expr::Kind::Fst: {
        auto inner = synth(e->kids[0]);
        if (!inner) return inner.error();
        if (inner.value().type->kind() != Ty::Kind::Prod)
          return at(DiagCode::TypeMismatch, "fst of a non-pair", e->loc);
        return Synthed{Term::fst(inner.value().term), inner.value().type->left()};
      }
      case Expr::Kind::Snd: {
        auto inner = synth(e->kids[0]);
        if (!inner) return inner.error();
        if (inner.value().type->kind() != Ty::Kind::Prod)
          return at(DiagCode::TypeMismatch, "snd of a non-pair", e->loc);
        return Synthed{Term::snd(inner.value().term), inner.value().type->right()};
      }
      case Expr::Kind::Ascribe: {
        auto ty = elabType(e->annotation);
        if (!ty) return ty.error();
        auto term = check(e->kids[0], ty.value());
        if (!term) return term.error();
        return Synthed{term.value(), ty.value()};
      }
      case Expr::Kind::Nand:
      case Expr::Kind::Par:
      case Expr::Kind::Seq:
      case Expr::Kind::Mix: {
        auto term = checkCirc(e, std::nullopt, std::nullopt);
        if (!term) return term.error();
        return Synthed{term.value(), term.value()->type()};
      }
      case Expr::Kind::Zero:
        return at(DiagCode::AnnotationRequired, "cannot infer the stage of a bare zero", e->loc);
      case Expr::Kind::Lam:
        return at(DiagCode::AnnotationRequired,
                  "cannot synthesize the type of an unannotated lambda", e->loc);
    }
    return at(DiagCode::AnnotationRequired, "cannot synthesize a type here", e->loc);
  }

  // --- circuit arity resolution ---------------------------------------
  //
  // Checks a circuit expression against partially known arities. nand pins
  // both; mix pins the output arity but needs the input arity from context;
  // seq and par recover the missing pieces from whichever side resolves on
  // its own. The pretty printer mirrors this discipline when deciding where
  // to put ascriptions.

  using OptArity = std::optional<std::size_t>;

  Expected<TermPtr> checkCirc(const ExprPtr& e, OptArity wantIn, OptArity wantOut) {
    switch (e->kind) {
      case Expr::Kind::Nand: {
        if ((wantIn && *wantIn != 2) || (wantOut && *wantOut != 1))
          return at(DiagCode::TypeMismatch, "nand is a 2-to-1 gate", e->loc);
        return Term::nandGate(Phase::Src);
      }
      case Expr::Kind::Mix: {
        if (!wantIn)
          return at(DiagCode::AnnotationRequired,
                    "the input arity of this mix is not determined; ascribe it", e->loc);
        if (wantOut && *wantOut != e->wires.size())
          return at(DiagCode::TypeMismatch,
                    "mix provides " + std::to_string(e->wires.size()) + " outputs, " +
                        std::to_string(*wantOut) + " expected",
                    e->loc);
        for (std::size_t w : e->wires)
          if (w >= *wantIn)
            return at(DiagCode::ArityViolation,
                      "mix entry " + std::to_string(w) + " is not below the input arity " +
                          std::to_string(*wantIn),
                      e->loc);
        return Term::mix(e->wires, *wantIn, Phase::Src);
      }
      case Expr::Kind::Seq: {
        if (auto lhs = tryCirc(e->kids[0], wantIn, std::nullopt)) {
          auto rhs = checkCirc(e->kids[1], (*lhs)->type()->outputs(), wantOut);
          if (!rhs) return rhs.error();
          return Term::seq(*lhs, rhs.value());
        }
        if (auto rhs = tryCirc(e->kids[1], std::nullopt, wantOut)) {
          auto lhs = checkCirc(e->kids[0], wantIn, (*rhs)->type()->inputs());
          if (!lhs) return lhs.error();
          return Term::seq(lhs.value(), *rhs);
        }
        return at(DiagCode::AnnotationRequired,
                  "cannot determine the middle arity of this seq; ascribe a side", e->loc);
      }
      case Expr::Kind::Par: {
        if (auto lhs = tryCirc(e->kids[0], std::nullopt, std::nullopt)) {
          OptArity remIn, remOut;
          if (auto diag = subtract(wantIn, (*lhs)->type()->inputs(), e, remIn)) return *diag;
          if (auto diag = subtract(wantOut, (*lhs)->type()->outputs(), e, remOut)) return *diag;
          auto rhs = checkCirc(e->kids[1], remIn, remOut);
          if (!rhs) return rhs.error();
          return Term::par(*lhs, rhs.value());
        }
        if (auto rhs = tryCirc(e->kids[1], std::nullopt, std::nullopt)) {
          OptArity remIn, remOut;
          if (auto diag = subtract(wantIn, (*rhs)->type()->inputs(), e, remIn)) return *diag;
          if (auto diag = subtract(wantOut, (*rhs)->type()->outputs(), e, remOut)) return *diag;
          auto lhs = checkCirc(e->kids[0], remIn, remOut);
          if (!lhs) return lhs.error();
          return Term::par(lhs.value(), *rhs);
        }
        return at(DiagCode::AnnotationRequired,
                  "cannot split the arities of this par; ascribe a side", e->loc);
      }
      default: {
        // A non-wiring subprogram (splice, application, reference, ...).
        if (wantIn && wantOut) return check(e, Ty::circ(*wantIn, *wantOut, Phase::Src));
        auto synthed = synth(e);
        if (!synthed) return synthed.error();
        const TyPtr& ty = synthed.value().type;
        if (ty->kind() != Ty::Kind::Circ)
          return at(DiagCode::TypeMismatch,
                    "expected a circuit, found " + kernel::prettyType(ty), e->loc);
        if ((wantIn && *wantIn != ty->inputs()) || (wantOut && *wantOut != ty->outputs()))
          return at(DiagCode::TypeMismatch,
                    "circuit arities disagree: found " + kernel::prettyType(ty), e->loc);
        return synthed.value().term;
      }
    }
  }

  // Speculative resolution; failures are discarded.
  std::optional<TermPtr> tryCirc(const ExprPtr& e, OptArity wantIn, OptArity wantOut) {
    auto result = checkCirc(e, wantIn, wantOut);
    if (!result) return std::nullopt;
    return result.value();
  }

  std::optional<Diag> subtract(OptArity total, std::size_t used, const ExprPtr& e,
                               OptArity& remainder) {
    remainder.reset();
    if (!total) return std::nullopt;
    if (used > *total)
      return at(DiagCode::TypeMismatch,
                "parallel component uses more wires than the type provides", e->loc);
    remainder = *total - used;
    return std::nullopt;
  }
};

// Walks a type tree; in the circuit profile every dynamic node must be Circ.
std::optional<Diag> profileCheckType(const TyPtr& ty, Loc loc) {
  if (ty->stage() == Stage::Dyn && ty->kind() != Ty::Kind::Circ)
    return Diag{DiagCode::ProfileViolation,
                "the circuit profile confines dynamic types to Circ; found " +
                    kernel::prettyType(ty),
                "", loc.line, loc.col};
  if (ty->left())
    if (auto diag = profileCheckType(ty->left(), loc)) return diag;
  if (ty->right())
    if (auto diag = profileCheckType(ty->right(), loc)) return diag;
  return std::nullopt;
}

std::optional<Diag> profileCheckTerm(const TermPtr& t, Loc loc) {
  if (auto diag = profileCheckType(t->type(), loc)) return diag;
  for (std::size_t i = 0; i < t->childCount(); ++i)
    if (auto diag = profileCheckTerm(t->child(i), loc)) return diag;
  return std::nullopt;
}

struct ScopeWalker {
  std::vector<std::string> binders;
  const std::vector<std::string>& defNames;
  std::optional<Diag> failure;

  void walk(const ExprPtr& e) {
    if (failure) return;
    if (e->kind == Expr::Kind::Ident) {
      for (std::size_t i = binders.size(); i-- > 0;)
        if (binders[i] == e->name) return;
      for (const std::string& name : defNames)
        if (name == e->name) return;
      failure = Diag{DiagCode::UnboundIdentifier, "unbound identifier '" + e->name + "'", "",
                     e->loc.line, e->loc.col};
      return;
    }
    if (e->kind == Expr::Kind::Lam) {
      binders.push_back(e->name);
      walk(e->kids[0]);
      binders.pop_back();
      return;
    }
    for (const ExprPtr& kid : e->kids) walk(kid);
  }
};

}  // namespace

std::optional<Diag> scopeCheck(const Program& program) {
  std::vector<std::string> known;
  for (const Def& def : program.defs) {
    ScopeWalker walker{{}, known, std::nullopt};
    walker.walk(def.body);
    if (walker.failure) return walker.failure;
    known.push_back(def.name);
  }
  return std::nullopt;
}

Expected<std::vector<ElabDef>> elaborate(const Program& program, Profile profile) {
  std::map<std::string, Synthed> defs;
  std::vector<ElabDef> out;
  for (const Def& def : program.defs) {
    if (defs.count(def.name))
      return Diag{DiagCode::SyntaxError, "duplicate def '" + def.name + "'", "", def.loc.line,
                  def.loc.col};
    Elaborator elab{defs, {}};
    auto ty = elab.elabType(def.declaredType);
    if (!ty) return ty.error();
    auto term = elab.check(def.body, ty.value());
    if (!term) return term.error();
    if (auto diag = kernel::validate(term.value(), Phase::Src, ty.value()->stage(), ty.value(),
                                     kernel::Ctx::empty()))
      throw InternalError("elaboration produced an ill-indexed term: " + diag->render());
    if (profile == Profile::Circuit)
      if (auto diag = profileCheckTerm(term.value(), def.loc)) return *diag;
    defs.emplace(def.name, Synthed{term.value(), ty.value()});
    out.push_back({def.name, ty.value(), term.value()});
  }
  return out;
}

}  // namespace stagec::surface
