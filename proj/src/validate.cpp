#include "stagec/validate.hpp"

#include <string>
#include <vector>

#include "stagec/pretty.hpp"

namespace stagec::kernel {

namespace {

struct Checker {
  std::vector<const char*> path;
  std::optional<Diag> failure;

  std::string renderPath() const {
    std::string out;
    for (const char* step : path) {
      if (!out.empty()) out += ".";
      out += step;
    }
    return out;
  }

  bool fail(DiagCode code, std::string message) {
    if (!failure) failure = Diag{code, std::move(message), renderPath()};
    return false;
  }

  bool child(const char* edge, const TermPtr& t, const TyPtr& expected, Ctx const& ctx) {
    path.push_back(edge);
    bool ok = check(t, expected, ctx);
    path.pop_back();
    return ok;
  }

  // `expected` carries the claimed (phase, stage) for this node in its own
  // indices; children's expectations are derived from the typing rules,
  // consulting cached child types only where the rules leave a blank (the
  // argument type of an application, the hidden component of a projection,
  // the split of a parallel composition).
  bool check(const TermPtr& t, const TyPtr& expected, const Ctx& ctx) {
    if (!t) return fail(DiagCode::TypeMismatch, "missing subterm");
    const Phase ph = expected->phase();
    const Stage st = expected->stage();

    switch (t->kind()) {
      case Term::Kind::Quote:
        if (ph != Phase::Src) return fail(DiagCode::PhaseViolation, "quote outside the src phase");
        if (st != Stage::Sta) return fail(DiagCode::StageViolation, "quote is a static construct");
        break;
      case Term::Kind::Splice:
        if (ph != Phase::Src) return fail(DiagCode::PhaseViolation, "splice outside the src phase");
        if (st != Stage::Dyn) return fail(DiagCode::StageViolation, "splice is a dynamic construct");
        break;
      case Term::Kind::TrueLit:
      case Term::Kind::FalseLit:
      case Term::Kind::If:
      case Term::Kind::Pair:
      case Term::Kind::Fst:
      case Term::Kind::Snd:
        if (st != Stage::Sta)
          return fail(DiagCode::StageViolation,
                      std::string(kindName(t->kind())) + " is only available in the static layer");
        break;
      case Term::Kind::Nand:
      case Term::Kind::Par:
      case Term::Kind::Seq:
      case Term::Kind::Mix:
        if (st != Stage::Dyn)
          return fail(DiagCode::StageViolation,
                      std::string(kindName(t->kind())) + " is only available in the dynamic layer");
        break;
      default:
        break;
    }

    switch (t->kind()) {
      case Term::Kind::Var: {
        const TyPtr* bound = ctx.lookup(t->varIndex());
        if (!bound)
          return fail(DiagCode::ScopeViolation,
                      "variable index " + std::to_string(t->varIndex()) +
                          " exceeds context of size " + std::to_string(ctx.size()));
        if (!equal(*bound, expected))
          return fail(DiagCode::TypeMismatch, "variable bound at " + prettyType(*bound) +
                                                  " used at " + prettyType(expected));
        return true;
      }
      case Term::Kind::App: {
        TyPtr argTy = retag(t->arg()->type(), ph, st);
        if (!argTy)
          return fail(DiagCode::StageViolation,
                      "argument type only exists in the static layer");
        TyPtr funTy = Ty::arrow(argTy, expected);
        return child("fun", t->fun(), funTy, ctx) && child("arg", t->arg(), argTy, ctx);
      }
      case Term::Kind::Lam: {
        if (expected->kind() != Ty::Kind::Arrow)
          return fail(DiagCode::TypeMismatch, "lambda checked at " + prettyType(expected));
        return child("body", t->body(), expected->right(), ctx.snoc(expected->left()));
      }
      case Term::Kind::Quote: {
        if (expected->kind() != Ty::Kind::Lift)
          return fail(DiagCode::TypeMismatch, "quote checked at " + prettyType(expected));
        return child("inner", t->inner(), expected->left(), ctx);
      }
      case Term::Kind::Splice:
        return child("inner", t->inner(), Ty::lift(expected), ctx);
      case Term::Kind::Zero:
        if (expected->kind() != Ty::Kind::Nat)
          return fail(DiagCode::TypeMismatch, "zero checked at " + prettyType(expected));
        return true;
      case Term::Kind::Succ:
        if (expected->kind() != Ty::Kind::Nat)
          return fail(DiagCode::TypeMismatch, "succ checked at " + prettyType(expected));
        return child("inner", t->inner(), expected, ctx);
      case Term::Kind::Iter:
        return child("count", t->count(), Ty::nat(ph, st), ctx) &&
               child("seed", t->seed(), expected, ctx) &&
               child("step", t->step(), Ty::arrow(expected, expected), ctx);
      case Term::Kind::TrueLit:
      case Term::Kind::FalseLit:
        if (expected->kind() != Ty::Kind::Bool)
          return fail(DiagCode::TypeMismatch, "boolean checked at " + prettyType(expected));
        return true;
      case Term::Kind::If:
        return child("cond", t->cond(), Ty::boolean(), ctx) &&
               child("then", t->thenBranch(), expected, ctx) &&
               child("else", t->elseBranch(), expected, ctx);
      case Term::Kind::Pair:
        if (expected->kind() != Ty::Kind::Prod)
          return fail(DiagCode::TypeMismatch, "pair checked at " + prettyType(expected));
        return child("left", t->left(), expected->left(), ctx) &&
               child("right", t->right(), expected->right(), ctx);
      case Term::Kind::Fst: {
        const TyPtr& inner = t->inner()->type();
        if (inner->kind() != Ty::Kind::Prod)
          return fail(DiagCode::TypeMismatch, "fst of a non-pair");
        if (!equal(inner->left(), expected))
          return fail(DiagCode::TypeMismatch, "fst projects " + prettyType(inner->left()) +
                                                  ", expected " + prettyType(expected));
        return child("inner", t->inner(), inner, ctx);
      }
      case Term::Kind::Snd: {
        const TyPtr& inner = t->inner()->type();
        if (inner->kind() != Ty::Kind::Prod)
          return fail(DiagCode::TypeMismatch, "snd of a non-pair");
        if (!equal(inner->right(), expected))
          return fail(DiagCode::TypeMismatch, "snd projects " + prettyType(inner->right()) +
                                                  ", expected " + prettyType(expected));
        return child("inner", t->inner(), inner, ctx);
      }
      case Term::Kind::Nand:
        if (expected->kind() != Ty::Kind::Circ || expected->inputs() != 2 ||
            expected->outputs() != 1)
          return fail(DiagCode::TypeMismatch, "nand checked at " + prettyType(expected));
        return true;
      case Term::Kind::Par: {
        if (expected->kind() != Ty::Kind::Circ)
          return fail(DiagCode::TypeMismatch, "par checked at " + prettyType(expected));
        const TyPtr& a = t->left()->type();
        const TyPtr& b = t->right()->type();
        if (a->kind() != Ty::Kind::Circ || b->kind() != Ty::Kind::Circ)
          return fail(DiagCode::TypeMismatch, "par of non-circuits");
        if (a->inputs() + b->inputs() != expected->inputs() ||
            a->outputs() + b->outputs() != expected->outputs())
          return fail(DiagCode::TypeMismatch, "par arities do not add up to " +
                                                  prettyType(expected));
        return child("left", t->left(), Ty::circ(a->inputs(), a->outputs(), ph), ctx) &&
               child("right", t->right(), Ty::circ(b->inputs(), b->outputs(), ph), ctx);
      }
      case Term::Kind::Seq: {
        if (expected->kind() != Ty::Kind::Circ)
          return fail(DiagCode::TypeMismatch, "seq checked at " + prettyType(expected));
        const TyPtr& a = t->left()->type();
        const TyPtr& b = t->right()->type();
        if (a->kind() != Ty::Kind::Circ || b->kind() != Ty::Kind::Circ)
          return fail(DiagCode::TypeMismatch, "seq of non-circuits");
        if (a->outputs() != b->inputs())
          return fail(DiagCode::TypeMismatch, "seq components do not meet in the middle");
        if (a->inputs() != expected->inputs() || b->outputs() != expected->outputs())
          return fail(DiagCode::TypeMismatch, "seq arities disagree with " + prettyType(expected));
        return child("left", t->left(), Ty::circ(a->inputs(), a->outputs(), ph), ctx) &&
               child("right", t->right(), Ty::circ(b->inputs(), b->outputs(), ph), ctx);
      }
      case Term::Kind::Mix: {
        if (expected->kind() != Ty::Kind::Circ)
          return fail(DiagCode::TypeMismatch, "mix checked at " + prettyType(expected));
        if (t->wires().size() != expected->outputs())
          return fail(DiagCode::ArityViolation,
                      "mix provides " + std::to_string(t->wires().size()) + " outputs, type wants " +
                          std::to_string(expected->outputs()));
        for (std::size_t w : t->wires())
          if (w >= expected->inputs())
            return fail(DiagCode::ArityViolation, "mix entry " + std::to_string(w) +
                                                      " is not below the input arity " +
                                                      std::to_string(expected->inputs()));
        return true;
      }
    }
    return fail(DiagCode::TypeMismatch, "unhandled constructor");
  }
};

}  // namespace

std::optional<Diag> validate(const TermPtr& t, Phase ph, Stage st, const TyPtr& ty,
                             const Ctx& ctx) {
  if (!ty) return Diag{DiagCode::TypeMismatch, "missing claimed type", ""};
  if (!stageLegal(ph, st))
    return Diag{DiagCode::StageViolation, "the sta stage is only legal in the src phase", ""};
  if (ty->stage() != st)
    return Diag{DiagCode::StageViolation, "claimed type lives at stage " +
                                              std::string(stageName(ty->stage())) +
                                              ", claim says " + stageName(st),
                ""};
  if (ty->phase() != ph)
    return Diag{DiagCode::PhaseViolation, "claimed type lives in phase " +
                                              std::string(phaseName(ty->phase())) +
                                              ", claim says " + phaseName(ph),
                ""};
  Checker checker;
  checker.check(t, ty, ctx);
  return checker.failure;
}

}  // namespace stagec::kernel
