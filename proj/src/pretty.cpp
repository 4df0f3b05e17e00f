#include "stagec/pretty.hpp"

#include <string>

#include "stagec/diag.hpp"

namespace stagec::kernel {

namespace {

// Type precedence: arrow < prod < up < atom.
void printType(const TyPtr& ty, int level, std::string& out) {
  auto wrap = [&](int mine, auto&& body) {
    bool parens = level > mine;
    if (parens) out += "(";
    body();
    if (parens) out += ")";
  };
  switch (ty->kind()) {
    case Ty::Kind::Base:
      out += ty->stage() == Stage::Sta ? "Base@s" : "Base@d";
      return;
    case Ty::Kind::Nat:
      out += ty->stage() == Stage::Sta ? "Nat@s" : "Nat@d";
      return;
    case Ty::Kind::Bool:
      out += "Bool";
      return;
    case Ty::Kind::Arrow:
      wrap(0, [&] {
        printType(ty->left(), 1, out);
        out += " -> ";
        printType(ty->right(), 0, out);
      });
      return;
    case Ty::Kind::Prod:
      wrap(1, [&] {
        printType(ty->left(), 2, out);
        out += " * ";
        printType(ty->right(), 1, out);
      });
      return;
    case Ty::Kind::Lift:
      wrap(2, [&] {
        out += "Up ";
        printType(ty->left(), 3, out);
      });
      return;
    case Ty::Kind::Circ:
      wrap(2, [&] {
        out += "Circ " + std::to_string(ty->inputs()) + " " + std::to_string(ty->outputs());
      });
      return;
  }
}

// Term precedence levels: 0 = open expression, 1 = application head,
// 2 = keyword form, 3 = argument position (self-delimited atoms only).
constexpr int kExpr = 0;
constexpr int kHead = 1;
constexpr int kAtom = 2;
constexpr int kArg = 3;

struct Printer {
  std::string out;
  std::size_t depth = 0;  // binder nesting, for generated names

  std::string binderName(std::size_t d) const {
    return d == 0 ? "x" : "x" + std::to_string(d);
  }

  // Mirror of the elaborator's synthesis mode: true when the term's type can
  // be reconstructed with no expected type around it.
  static bool canSynth(const TermPtr& t) {
    switch (t->kind()) {
      case Term::Kind::Var:
      case Term::Kind::TrueLit:
      case Term::Kind::FalseLit:
      case Term::Kind::Nand:
        return true;
      case Term::Kind::Lam:
      case Term::Kind::Zero:
        return false;
      case Term::Kind::App:
        return canSynth(t->fun());
      case Term::Kind::Quote:
      case Term::Kind::Splice:
      case Term::Kind::Succ:
      case Term::Kind::Fst:
      case Term::Kind::Snd:
        return canSynth(t->child(0));
      case Term::Kind::Iter:
        return canSynth(t->seed());
      case Term::Kind::If:
        return canSynth(t->thenBranch());
      case Term::Kind::Pair:
        return canSynth(t->left()) && canSynth(t->right());
      case Term::Kind::Par:
      case Term::Kind::Seq:
      case Term::Kind::Mix:
        return circResolvable(t, false, false);
    }
    return false;
  }

  // Mirror of the elaborator's circuit arity resolution: knownIn/knownOut
  // say which arities the checker will have in hand at this position.
  static bool circResolvable(const TermPtr& t, bool knownIn, bool knownOut) {
    switch (t->kind()) {
      case Term::Kind::Nand:
        return true;
      case Term::Kind::Mix:
        return knownIn;
      case Term::Kind::Seq:
        return (circResolvable(t->left(), knownIn, false) &&
                circResolvable(t->right(), true, knownOut)) ||
               (circResolvable(t->right(), false, knownOut) &&
                circResolvable(t->left(), knownIn, true));
      case Term::Kind::Par:
        return (circResolvable(t->left(), false, false) &&
                circResolvable(t->right(), knownIn, knownOut)) ||
               (circResolvable(t->right(), false, false) &&
                circResolvable(t->left(), knownIn, knownOut));
      default:
        return (knownIn && knownOut) ? true : canSynth(t);
    }
  }

  void parens(int level, int mine, auto&& body) {
    bool wrap = level > mine;
    if (wrap) out += "(";
    body();
    if (wrap) out += ")";
  }

  void ascribe(const TermPtr& t, bool circuitPosition) {
    out += "(";
    if (circuitPosition)
      printCirc(t, true, true, kExpr);
    else
      printCheck(t, kExpr);
    out += " : ";
    printType(t->type(), 0, out);
    out += ")";
  }

  // Printed where elaboration re-checks against a known expected type.
  void printCheck(const TermPtr& t, int level) {
    switch (t->kind()) {
      case Term::Kind::Var: {
        std::size_t idx = t->varIndex();
        if (idx < depth)
          out += binderName(depth - 1 - idx);
        else
          out += "#" + std::to_string(idx - depth);  // free variable, debug only
        return;
      }
      case Term::Kind::Lam:
        parens(level, kExpr, [&] {
          out += "\\" + binderName(depth) + ". ";
          ++depth;
          printCheck(t->body(), kExpr);
          --depth;
        });
        return;
      case Term::Kind::App:
        parens(level, kHead, [&] {
          printSynth(t->fun(), kHead);
          out += " ";
          printCheck(t->arg(), kArg);
        });
        return;
      case Term::Kind::Quote:
        out += "<";
        printCheck(t->inner(), kExpr);
        out += ">";
        return;
      case Term::Kind::Splice:
        out += "~";
        printCheck(t->inner(), kArg);
        return;
      case Term::Kind::Zero:
        out += "zero";
        return;
      case Term::Kind::Succ:
        parens(level, kAtom, [&] {
          out += "succ ";
          printCheck(t->inner(), kArg);
        });
        return;
      case Term::Kind::Iter:
        parens(level, kAtom, [&] {
          out += "iter ";
          printCheck(t->count(), kArg);
          out += " ";
          printCheck(t->seed(), kArg);
          out += " ";
          printCheck(t->step(), kArg);
        });
        return;
      case Term::Kind::TrueLit:
        out += "true";
        return;
      case Term::Kind::FalseLit:
        out += "false";
        return;
      case Term::Kind::If:
        parens(level, kExpr, [&] {
          out += "if ";
          printCheck(t->cond(), kExpr);
          out += " then ";
          printCheck(t->thenBranch(), kExpr);
          out += " else ";
          printCheck(t->elseBranch(), kExpr);
        });
        return;
      case Term::Kind::Pair:
        out += "(";
        printCheck(t->left(), kExpr);
        out += ", ";
        printCheck(t->right(), kExpr);
        out += ")";
        return;
      case Term::Kind::Fst:
        parens(level, kAtom, [&] {
          out += "fst ";
          printSynth(t->inner(), kArg);
        });
        return;
      case Term::Kind::Snd:
        parens(level, kAtom, [&] {
          out += "snd ";
          printSynth(t->inner(), kArg);
        });
        return;
      case Term::Kind::Nand:
      case Term::Kind::Par:
      case Term::Kind::Seq:
      case Term::Kind::Mix:
        printCirc(t, true, true, level);
        return;
    }
  }

  // Printed where elaboration will synthesize; falls back to an ascription
  // when synthesis would be stuck.
  void printSynth(const TermPtr& t, int level) {
    if (!canSynth(t)) {
      bool circuit = t->type()->kind() == Ty::Kind::Circ;
      ascribe(t, circuit);
      return;
    }
    switch (t->kind()) {
      case Term::Kind::App:
        parens(level, kHead, [&] {
          printSynth(t->fun(), kHead);
          out += " ";
          printCheck(t->arg(), kArg);
        });
        return;
      case Term::Kind::Par:
      case Term::Kind::Seq:
      case Term::Kind::Mix:
        printCirc(t, false, false, level);
        return;
      default:
        printCheck(t, level);
        return;
    }
  }

  void printCirc(const TermPtr& t, bool knownIn, bool knownOut, int level) {
    switch (t->kind()) {
      case Term::Kind::Nand:
        out += "nand";
        return;
      case Term::Kind::Mix: {
        if (!knownIn) {
          ascribe(t, true);
          return;
        }
        parens(level, kAtom, [&] {
          out += "mix [";
          for (std::size_t i = 0; i < t->wires().size(); ++i) {
            if (i) out += ",";
            out += std::to_string(t->wires()[i]);
          }
          out += "]";
        });
        return;
      }
      case Term::Kind::Seq:
        parens(level, kAtom, [&] {
          out += "seq ";
          if (circResolvable(t->left(), knownIn, false)) {
            printCirc(t->left(), knownIn, false, kArg);
            out += " ";
            printCirc(t->right(), true, knownOut, kArg);
          } else if (circResolvable(t->right(), false, knownOut)) {
            printCirc(t->left(), knownIn, true, kArg);
            out += " ";
            printCirc(t->right(), false, knownOut, kArg);
          } else {
            ascribe(t->left(), true);
            out += " ";
            printCirc(t->right(), true, knownOut, kArg);
          }
        });
        return;
      case Term::Kind::Par:
        parens(level, kAtom, [&] {
          out += "par ";
          if (circResolvable(t->left(), false, false)) {
            printCirc(t->left(), false, false, kArg);
            out += " ";
            printCirc(t->right(), knownIn, knownOut, kArg);
          } else if (circResolvable(t->right(), false, false)) {
            printCirc(t->left(), knownIn, knownOut, kArg);
            out += " ";
            printCirc(t->right(), false, false, kArg);
          } else {
            ascribe(t->left(), true);
            out += " ";
            printCirc(t->right(), knownIn, knownOut, kArg);
          }
        });
        return;
      default:
        // Not a wiring constructor: a spliced or applied subprogram.
        if (knownIn && knownOut)
          printCheck(t, level);
        else
          printSynth(t, level);
        return;
    }
  }
};

}  // namespace

std::string prettyTerm(const TermPtr& t) {
  if (!t) throw InternalError("prettyTerm of nothing");
  Printer printer;
  printer.printCheck(t, kExpr);
  return std::move(printer.out);
}

std::string prettyType(const TyPtr& ty) {
  if (!ty) throw InternalError("prettyType of nothing");
  std::string out;
  printType(ty, 0, out);
  return out;
}

}  // namespace stagec::kernel
