#pragma once

#include <cstddef>
#include <vector>

#include "stagec/ty.hpp"

namespace stagec::kernel {

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Typing context: a left-nested list of types. De Bruijn index 0 refers to
// the most recently bound (rightmost) entry.
class Ctx {
public:
  static Ctx empty() { return Ctx{}; }

  Ctx snoc(TyPtr ty) const {
    Ctx out = *this;
    out.entries_.push_back(std::move(ty));
    return out;
  }

  // nullptr when the index is out of range.
  const TyPtr* lookup(std::size_t index) const {
    if (index >= entries_.size()) return nullptr;
    return &entries_[entries_.size() - 1 - index];
  }

  std::size_t size() const { return entries_.size(); }

private:
  std::vector<TyPtr> entries_;  // oldest binding first
};

// Well-typed syntax tree. Each node caches its type (and through it the
// phase/stage it was built at); the factories enforce the typing rules and
// `validate` re-checks a whole tree against claimed indices from scratch.
class Term {
public:
  enum class Kind : std::uint8_t {
    Var,
    App,
    Lam,
    Quote,
    Splice,
    Zero,
    Succ,
    Iter,
    TrueLit,
    FalseLit,
    If,
    Pair,
    Fst,
    Snd,
    Nand,
    Par,
    Seq,
    Mix,
  };

  Kind kind() const { return kind_; }
  const TyPtr& type() const { return type_; }
  Phase phase() const { return type_->phase(); }
  Stage stage() const { return type_->stage(); }

  std::size_t varIndex() const { return varIndex_; }
  const std::vector<std::size_t>& wires() const { return wires_; }

  std::size_t childCount() const { return children_.size(); }
  const TermPtr& child(std::size_t i) const { return children_[i]; }

  // Named child accessors, by constructor role.
  const TermPtr& fun() const { return children_[0]; }
  const TermPtr& arg() const { return children_[1]; }
  const TermPtr& body() const { return children_[0]; }
  const TermPtr& inner() const { return children_[0]; }
  const TermPtr& count() const { return children_[0]; }
  const TermPtr& seed() const { return children_[1]; }
  const TermPtr& step() const { return children_[2]; }
  const TermPtr& cond() const { return children_[0]; }
  const TermPtr& thenBranch() const { return children_[1]; }
  const TermPtr& elseBranch() const { return children_[2]; }
  const TermPtr& left() const { return children_[0]; }
  const TermPtr& right() const { return children_[1]; }

  static TermPtr var(std::size_t index, TyPtr ty);
  static TermPtr app(TermPtr fun, TermPtr arg);
  static TermPtr lam(TyPtr dom, TermPtr body);
  static TermPtr quote(TermPtr t);
  static TermPtr splice(TermPtr t);
  static TermPtr zero(Phase ph, Stage st);
  static TermPtr succ(TermPtr t);
  static TermPtr iter(TermPtr count, TermPtr seed, TermPtr step);
  static TermPtr trueLit();
  static TermPtr falseLit();
  static TermPtr ifThenElse(TermPtr cond, TermPtr thenB, TermPtr elseB);
  static TermPtr pair(TermPtr l, TermPtr r);
  static TermPtr fst(TermPtr t);
  static TermPtr snd(TermPtr t);
  static TermPtr nandGate(Phase ph);
  static TermPtr par(TermPtr l, TermPtr r);
  static TermPtr seq(TermPtr l, TermPtr r);
  static TermPtr mix(std::vector<std::size_t> wires, std::size_t inputs, Phase ph);

  // Bypasses every check. Exists so tests can hand `validate` ill-formed
  // trees; nothing else should call it.
  static TermPtr unchecked(Kind kind, TyPtr ty, std::vector<TermPtr> children,
                           std::size_t varIndex = 0, std::vector<std::size_t> wires = {});

private:
  Term(Kind kind, TyPtr ty) : kind_(kind), type_(std::move(ty)) {}

  static TermPtr make(Kind kind, TyPtr ty, std::vector<TermPtr> children,
                      std::size_t varIndex = 0, std::vector<std::size_t> wires = {});

  Kind kind_;
  TyPtr type_;
  std::vector<TermPtr> children_;
  std::size_t varIndex_ = 0;
  std::vector<std::size_t> wires_;
};

const char* kindName(Term::Kind kind);

bool equal(const TermPtr& a, const TermPtr& b);
bool equalModPhase(const TermPtr& a, const TermPtr& b);
std::size_t nodeCount(const TermPtr& t);

// True iff the tree contains a constructor only legal in the src phase
// (quote, splice, or any of the static-pair/boolean machinery).
bool containsSrcOnly(const TermPtr& t);

}  // namespace stagec::kernel
