#include "stagec/term.hpp"

#include <string>

#include "stagec/diag.hpp"

namespace stagec::kernel {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw InternalError("ill-typed term construction: " + what);
}

void needSame(const TermPtr& a, const TermPtr& b, const char* who) {
  if (a->phase() != b->phase() || a->stage() != b->stage())
    bad(std::string(who) + " operands live at different indices");
}

}  // namespace

const char* kindName(Term::Kind kind) {
  switch (kind) {
    case Term::Kind::Var: return "var";
    case Term::Kind::App: return "app";
    case Term::Kind::Lam: return "lam";
    case Term::Kind::Quote: return "quote";
    case Term::Kind::Splice: return "splice";
    case Term::Kind::Zero: return "zero";
    case Term::Kind::Succ: return "succ";
    case Term::Kind::Iter: return "iter";
    case Term::Kind::TrueLit: return "true";
    case Term::Kind::FalseLit: return "false";
    case Term::Kind::If: return "if";
    case Term::Kind::Pair: return "pair";
    case Term::Kind::Fst: return "fst";
    case Term::Kind::Snd: return "snd";
    case Term::Kind::Nand: return "nand";
    case Term::Kind::Par: return "par";
    case Term::Kind::Seq: return "seq";
    case Term::Kind::Mix: return "mix";
  }
  return "?";
}

TermPtr Term::make(Kind kind, TyPtr ty, std::vector<TermPtr> children, std::size_t varIndex,
                   std::vector<std::size_t> wires) {
  auto node = std::shared_ptr<Term>(new Term(kind, std::move(ty)));
  node->children_ = std::move(children);
  node->varIndex_ = varIndex;
  node->wires_ = std::move(wires);
  return node;
}

TermPtr Term::unchecked(Kind kind, TyPtr ty, std::vector<TermPtr> children, std::size_t varIndex,
                        std::vector<std::size_t> wires) {
  return make(kind, std::move(ty), std::move(children), varIndex, std::move(wires));
}

TermPtr Term::var(std::size_t index, TyPtr ty) {
  if (!ty) bad("var without a type");
  return make(Kind::Var, std::move(ty), {}, index);
}

TermPtr Term::app(TermPtr fun, TermPtr arg) {
  if (!fun || !arg) bad("app with missing operand");
  needSame(fun, arg, "app");
  const TyPtr& fty = fun->type();
  if (fty->kind() != Ty::Kind::Arrow) bad("app of a non-function");
  if (!equal(fty->left(), arg->type())) bad("app argument type mismatch");
  TyPtr cod = fty->right();
  return make(Kind::App, std::move(cod), {std::move(fun), std::move(arg)});
}

TermPtr Term::lam(TyPtr dom, TermPtr body) {
  if (!dom || !body) bad("lam with missing operand");
  if (dom->phase() != body->phase() || dom->stage() != body->stage())
    bad("lam domain and body at different indices");
  TyPtr ty = Ty::arrow(std::move(dom), body->type());
  return make(Kind::Lam, std::move(ty), {std::move(body)});
}

TermPtr Term::quote(TermPtr t) {
  if (!t) bad("quote of nothing");
  if (t->phase() != Phase::Src || t->stage() != Stage::Dyn)
    bad("quote expects a (src, dyn) term");
  TyPtr ty = Ty::lift(t->type());
  return make(Kind::Quote, std::move(ty), {std::move(t)});
}

TermPtr Term::splice(TermPtr t) {
  if (!t) bad("splice of nothing");
  if (t->phase() != Phase::Src || t->stage() != Stage::Sta)
    bad("splice expects a (src, sta) term");
  if (t->type()->kind() != Ty::Kind::Lift) bad("splice of a non-lifted term");
  TyPtr ty = t->type()->left();
  return make(Kind::Splice, std::move(ty), {std::move(t)});
}

TermPtr Term::zero(Phase ph, Stage st) { return make(Kind::Zero, Ty::nat(ph, st), {}); }

TermPtr Term::succ(TermPtr t) {
  if (!t) bad("succ of nothing");
  if (t->type()->kind() != Ty::Kind::Nat) bad("succ of a non-number");
  TyPtr ty = t->type();
  return make(Kind::Succ, std::move(ty), {std::move(t)});
}

TermPtr Term::iter(TermPtr count, TermPtr seed, TermPtr step) {
  if (!count || !seed || !step) bad("iter with missing operand");
  needSame(count, seed, "iter");
  needSame(seed, step, "iter");
  if (count->type()->kind() != Ty::Kind::Nat) bad("iter count is not a number");
  const TyPtr& sty = step->type();
  if (sty->kind() != Ty::Kind::Arrow || !equal(sty->left(), seed->type()) ||
      !equal(sty->right(), seed->type()))
    bad("iter step is not an endofunction on the seed type");
  TyPtr ty = seed->type();
  return make(Kind::Iter, std::move(ty), {std::move(count), std::move(seed), std::move(step)});
}

TermPtr Term::trueLit() { return make(Kind::TrueLit, Ty::boolean(), {}); }
TermPtr Term::falseLit() { return make(Kind::FalseLit, Ty::boolean(), {}); }

TermPtr Term::ifThenElse(TermPtr cond, TermPtr thenB, TermPtr elseB) {
  if (!cond || !thenB || !elseB) bad("if with missing operand");
  if (cond->type()->kind() != Ty::Kind::Bool) bad("if condition is not a boolean");
  if (!equal(thenB->type(), elseB->type())) bad("if branches disagree");
  TyPtr ty = thenB->type();
  return make(Kind::If, std::move(ty), {std::move(cond), std::move(thenB), std::move(elseB)});
}

TermPtr Term::pair(TermPtr l, TermPtr r) {
  if (!l || !r) bad("pair with missing operand");
  TyPtr ty = Ty::prod(l->type(), r->type());
  return make(Kind::Pair, std::move(ty), {std::move(l), std::move(r)});
}

TermPtr Term::fst(TermPtr t) {
  if (!t) bad("fst of nothing");
  if (t->type()->kind() != Ty::Kind::Prod) bad("fst of a non-pair");
  TyPtr ty = t->type()->left();
  return make(Kind::Fst, std::move(ty), {std::move(t)});
}

TermPtr Term::snd(TermPtr t) {
  if (!t) bad("snd of nothing");
  if (t->type()->kind() != Ty::Kind::Prod) bad("snd of a non-pair");
  TyPtr ty = t->type()->right();
  return make(Kind::Snd, std::move(ty), {std::move(t)});
}

TermPtr Term::nandGate(Phase ph) { return make(Kind::Nand, Ty::circ(2, 1, ph), {}); }

TermPtr Term::par(TermPtr l, TermPtr r) {
  if (!l || !r) bad("par with missing operand");
  needSame(l, r, "par");
  const TyPtr& a = l->type();
  const TyPtr& b = r->type();
  if (a->kind() != Ty::Kind::Circ || b->kind() != Ty::Kind::Circ) bad("par of non-circuits");
  TyPtr ty = Ty::circ(a->inputs() + b->inputs(), a->outputs() + b->outputs(), a->phase());
  return make(Kind::Par, std::move(ty), {std::move(l), std::move(r)});
}

TermPtr Term::seq(TermPtr l, TermPtr r) {
  if (!l || !r) bad("seq with missing operand");
  needSame(l, r, "seq");
  const TyPtr& a = l->type();
  const TyPtr& b = r->type();
  if (a->kind() != Ty::Kind::Circ || b->kind() != Ty::Kind::Circ) bad("seq of non-circuits");
  if (a->outputs() != b->inputs()) bad("seq arity mismatch in the middle");
  TyPtr ty = Ty::circ(a->inputs(), b->outputs(), a->phase());
  return make(Kind::Seq, std::move(ty), {std::move(l), std::move(r)});
}

TermPtr Term::mix(std::vector<std::size_t> wires, std::size_t inputs, Phase ph) {
  for (std::size_t w : wires)
    if (w >= inputs) bad("mix wire out of range");
  TyPtr ty = Ty::circ(inputs, wires.size(), ph);
  return make(Kind::Mix, std::move(ty), {}, 0, std::move(wires));
}

namespace {

bool equalImpl(const TermPtr& a, const TermPtr& b, bool comparePhase) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  if (a->varIndex() != b->varIndex()) return false;
  if (a->wires() != b->wires()) return false;
  bool tyOk = comparePhase ? equal(a->type(), b->type()) : equalModPhase(a->type(), b->type());
  if (!tyOk) return false;
  if (a->childCount() != b->childCount()) return false;
  for (std::size_t i = 0; i < a->childCount(); ++i)
    if (!equalImpl(a->child(i), b->child(i), comparePhase)) return false;
  return true;
}

}  // namespace

bool equal(const TermPtr& a, const TermPtr& b) { return equalImpl(a, b, true); }
bool equalModPhase(const TermPtr& a, const TermPtr& b) { return equalImpl(a, b, false); }

std::size_t nodeCount(const TermPtr& t) {
  if (!t) return 0;
  std::size_t n = 1;
  for (std::size_t i = 0; i < t->childCount(); ++i) n += nodeCount(t->child(i));
  return n;
}

bool containsSrcOnly(const TermPtr& t) {
  if (!t) return false;
  switch (t->kind()) {
    case Term::Kind::Quote:
    case Term::Kind::Splice:
    case Term::Kind::TrueLit:
    case Term::Kind::FalseLit:
    case Term::Kind::If:
    case Term::Kind::Pair:
    case Term::Kind::Fst:
    case Term::Kind::Snd:
      return true;
    default:
      break;
  }
  for (std::size_t i = 0; i < t->childCount(); ++i)
    if (containsSrcOnly(t->child(i))) return true;
  return false;
}

}  // namespace stagec::kernel
