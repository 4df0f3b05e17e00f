#include "stagec/ty.hpp"

#include "stagec/diag.hpp"

namespace stagec::kernel {

const char* phaseName(Phase ph) { return ph == Phase::Src ? "src" : "stg"; }
const char* stageName(Stage st) { return st == Stage::Sta ? "sta" : "dyn"; }

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw InternalError("ill-indexed type: " + what);
}

}  // namespace

TyPtr Ty::make(Kind kind, Phase ph, Stage st, TyPtr left, TyPtr right, std::size_t inputs,
               std::size_t outputs) {
  auto node = std::shared_ptr<Ty>(new Ty(kind, ph, st));
  node->left_ = std::move(left);
  node->right_ = std::move(right);
  node->inputs_ = inputs;
  node->outputs_ = outputs;
  return node;
}

TyPtr Ty::base(Phase ph, Stage st) {
  if (!stageLegal(ph, st)) bad("sta stage outside the src phase");
  return make(Kind::Base, ph, st);
}

TyPtr Ty::nat(Phase ph, Stage st) {
  if (!stageLegal(ph, st)) bad("sta stage outside the src phase");
  return make(Kind::Nat, ph, st);
}

TyPtr Ty::boolean() { return make(Kind::Bool, Phase::Src, Stage::Sta); }

TyPtr Ty::arrow(TyPtr dom, TyPtr cod) {
  if (!dom || !cod) bad("arrow with missing operand");
  if (dom->phase() != cod->phase() || dom->stage() != cod->stage())
    bad("arrow operands at different indices");
  Phase ph = dom->phase();
  Stage st = dom->stage();
  return make(Kind::Arrow, ph, st, std::move(dom), std::move(cod));
}

TyPtr Ty::lift(TyPtr inner) {
  if (!inner) bad("lift with missing operand");
  if (inner->phase() != Phase::Src || inner->stage() != Stage::Dyn)
    bad("lift of a non-(src,dyn) type");
  return make(Kind::Lift, Phase::Src, Stage::Sta, std::move(inner));
}

TyPtr Ty::prod(TyPtr lhs, TyPtr rhs) {
  if (!lhs || !rhs) bad("prod with missing operand");
  if (lhs->stage() != Stage::Sta || rhs->stage() != Stage::Sta)
    bad("prod of non-static components");
  return make(Kind::Prod, Phase::Src, Stage::Sta, std::move(lhs), std::move(rhs));
}

TyPtr Ty::circ(std::size_t inputs, std::size_t outputs, Phase ph) {
  return make(Kind::Circ, ph, Stage::Dyn, nullptr, nullptr, inputs, outputs);
}

namespace {

bool equalImpl(const TyPtr& a, const TyPtr& b, bool comparePhase) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind() || a->stage() != b->stage()) return false;
  if (comparePhase && a->phase() != b->phase()) return false;
  switch (a->kind()) {
    case Ty::Kind::Base:
    case Ty::Kind::Nat:
    case Ty::Kind::Bool:
      return true;
    case Ty::Kind::Arrow:
    case Ty::Kind::Prod:
      return equalImpl(a->left(), b->left(), comparePhase) &&
             equalImpl(a->right(), b->right(), comparePhase);
    case Ty::Kind::Lift:
      return equalImpl(a->left(), b->left(), comparePhase);
    case Ty::Kind::Circ:
      return a->inputs() == b->inputs() && a->outputs() == b->outputs();
  }
  return false;
}

}  // namespace

bool equal(const TyPtr& a, const TyPtr& b) { return equalImpl(a, b, true); }
bool equalModPhase(const TyPtr& a, const TyPtr& b) { return equalImpl(a, b, false); }

std::size_t nodeCount(const TyPtr& ty) {
  if (!ty) return 0;
  std::size_t n = 1;
  if (ty->left()) n += nodeCount(ty->left());
  if (ty->right()) n += nodeCount(ty->right());
  return n;
}

TyPtr asStaged(const TyPtr& ty) {
  if (!ty || ty->phase() != Phase::Src || ty->stage() != Stage::Dyn)
    throw InternalError("asStaged on a type that is not (src, dyn)");
  switch (ty->kind()) {
    case Ty::Kind::Base:
      return Ty::base(Phase::Stg, Stage::Dyn);
    case Ty::Kind::Nat:
      return Ty::nat(Phase::Stg, Stage::Dyn);
    case Ty::Kind::Arrow:
      return Ty::arrow(asStaged(ty->left()), asStaged(ty->right()));
    case Ty::Kind::Circ:
      return Ty::circ(ty->inputs(), ty->outputs(), Phase::Stg);
    default:
      throw InternalError("asStaged met a static-only constructor");
  }
}

TyPtr retag(const TyPtr& ty, Phase ph, Stage st) {
  if (!ty || !stageLegal(ph, st)) return nullptr;
  switch (ty->kind()) {
    case Ty::Kind::Base:
      return Ty::base(ph, st);
    case Ty::Kind::Nat:
      return Ty::nat(ph, st);
    case Ty::Kind::Bool:
    case Ty::Kind::Lift:
    case Ty::Kind::Prod:
      return (ph == Phase::Src && st == Stage::Sta) ? ty : nullptr;
    case Ty::Kind::Arrow: {
      TyPtr dom = retag(ty->left(), ph, st);
      TyPtr cod = retag(ty->right(), ph, st);
      return (dom && cod) ? Ty::arrow(std::move(dom), std::move(cod)) : nullptr;
    }
    case Ty::Kind::Circ:
      return st == Stage::Dyn ? Ty::circ(ty->inputs(), ty->outputs(), ph) : nullptr;
  }
  return nullptr;
}

}  // namespace stagec::kernel
