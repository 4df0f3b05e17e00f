#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stagec/diag.hpp"
#include "stagec/term.hpp"

namespace stagec::surface {

struct Loc {
  int line = 1;
  int col = 1;
};

struct TypeExpr;
using TypeExprPtr = std::shared_ptr<const TypeExpr>;

struct TypeExpr {
  enum class Kind : std::uint8_t { Base, Nat, Bool, Up, Arrow, Prod, Circ };
  Kind kind;
  Loc loc;
  kernel::Stage stage = kernel::Stage::Dyn;  // Base/Nat stage mark
  TypeExprPtr left, right;
  std::size_t inputs = 0, outputs = 0;  // Circ
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Named-variable surface tree; everything is checked during elaboration.
struct Expr {
  enum class Kind : std::uint8_t {
    Ident,
    Lam,
    App,
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
    NumLit,
    Ascribe,
  };
  Kind kind;
  Loc loc;
  std::string name;  // Ident; Lam binder
  std::vector<ExprPtr> kids;
  std::uint64_t number = 0;                    // NumLit
  kernel::Stage litStage = kernel::Stage::Dyn;  // NumLit mark
  std::vector<std::size_t> wires;              // Mix
  TypeExprPtr annotation;                      // Ascribe
};

struct Def {
  std::string name;
  TypeExprPtr declaredType;
  ExprPtr body;
  Loc loc;
};

struct Program {
  std::vector<Def> defs;
};

Expected<Program> parse(const std::string& text);

// Scope check only: verifies every identifier resolves to a binder
// (innermost first) or an earlier def.
std::optional<Diag> scopeCheck(const Program& program);

enum class Profile : std::uint8_t { Full, Circuit };

struct ElabDef {
  std::string name;
  kernel::TyPtr type;
  kernel::TermPtr term;
};

// Bidirectional elaboration of every def against its declared type, at
// phase src; cross-def references inline the earlier elaborated term.
// The circuit profile additionally rejects dynamic types other than Circ.
Expected<std::vector<ElabDef>> elaborate(const Program& program,
                                         Profile profile = Profile::Full);

}  // namespace stagec::surface
