#include "stagec/ope.hpp"

#include "stagec/diag.hpp"

namespace stagec::ope {

using kernel::Term;
using kernel::TermPtr;

Ope compose(const Ope& sigma, const Ope& tau) {
  if (sigma.target() != tau.source())
    throw Error({DiagCode::ShapeMismatch,
                 "composing embeddings with mismatched middle context (" +
                     std::to_string(sigma.target()) + " vs " + std::to_string(tau.source()) + ")",
                 ""});
  // Walk both derivations from the outermost constructor in: a drop in tau
  // stays a drop, a keep in tau defers to the next step of sigma.
  std::vector<bool> steps;
  steps.reserve(tau.target());
  std::size_t si = 0;
  for (std::size_t ti = 0; ti < tau.size(); ++ti) {
    if (!tau.keepsAt(ti)) {
      steps.push_back(false);
    } else {
      steps.push_back(sigma.keepsAt(si));
      ++si;
    }
  }
  Ope result = Ope::done();
  for (auto it = steps.rbegin(); it != steps.rend(); ++it)
    result = *it ? result.kept() : result.dropped();
  return result;
}

std::size_t wkVar(const Ope& sigma, std::size_t index) {
  std::size_t out = 0;
  std::size_t remaining = index;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (!sigma.keepsAt(i)) {
      ++out;  // drop: every source variable shifts past the new slot
      continue;
    }
    if (remaining == 0) return out;
    ++out;
    --remaining;
  }
  throw InternalError("wkVar: variable not in the embedding's source context");
}

TermPtr wkTerm(const Ope& sigma, const TermPtr& t) {
  if (!t) throw InternalError("wkTerm of nothing");
  switch (t->kind()) {
    case Term::Kind::Var:
      return Term::var(wkVar(sigma, t->varIndex()), t->type());
    case Term::Kind::Lam:
      return Term::lam(t->type()->left(), wkTerm(sigma.kept(), t->body()));
    case Term::Kind::App:
      return Term::app(wkTerm(sigma, t->fun()), wkTerm(sigma, t->arg()));
    case Term::Kind::Quote:
      return Term::quote(wkTerm(sigma, t->inner()));
    case Term::Kind::Splice:
      return Term::splice(wkTerm(sigma, t->inner()));
    case Term::Kind::Zero:
    case Term::Kind::TrueLit:
    case Term::Kind::FalseLit:
    case Term::Kind::Nand:
    case Term::Kind::Mix:
      return t;
    case Term::Kind::Succ:
      return Term::succ(wkTerm(sigma, t->inner()));
    case Term::Kind::Iter:
      return Term::iter(wkTerm(sigma, t->count()), wkTerm(sigma, t->seed()),
                        wkTerm(sigma, t->step()));
    case Term::Kind::If:
      return Term::ifThenElse(wkTerm(sigma, t->cond()), wkTerm(sigma, t->thenBranch()),
                              wkTerm(sigma, t->elseBranch()));
    case Term::Kind::Pair:
      return Term::pair(wkTerm(sigma, t->left()), wkTerm(sigma, t->right()));
    case Term::Kind::Fst:
      return Term::fst(wkTerm(sigma, t->inner()));
    case Term::Kind::Snd:
      return Term::snd(wkTerm(sigma, t->inner()));
    case Term::Kind::Par:
      return Term::par(wkTerm(sigma, t->left()), wkTerm(sigma, t->right()));
    case Term::Kind::Seq:
      return Term::seq(wkTerm(sigma, t->left()), wkTerm(sigma, t->right()));
  }
  throw InternalError("wkTerm: unhandled constructor");
}

}  // namespace stagec::ope
