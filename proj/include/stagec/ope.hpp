#pragma once

#include <cstddef>
#include <vector>

#include "stagec/term.hpp"

namespace stagec::ope {

// Order-preserving embedding between contexts, stored as the done/keep/drop
// derivation read from the most local end: step(0) decides the fate of the
// target's most recently bound slot.
class Ope {
public:
  static Ope done() { return Ope{}; }

  // Identity embedding on a context of n entries.
  static Ope id(std::size_t n) {
    Ope out;
    out.steps_.assign(n, true);
    return out;
  }

  // keep sigma : (G, A) <= (D, A)
  Ope kept() const {
    Ope out;
    out.steps_.reserve(steps_.size() + 1);
    out.steps_.push_back(true);
    out.steps_.insert(out.steps_.end(), steps_.begin(), steps_.end());
    return out;
  }

  // drop sigma : G <= (D, B)
  Ope dropped() const {
    Ope out;
    out.steps_.reserve(steps_.size() + 1);
    out.steps_.push_back(false);
    out.steps_.insert(out.steps_.end(), steps_.begin(), steps_.end());
    return out;
  }

  std::size_t source() const {
    std::size_t n = 0;
    for (bool keep : steps_) n += keep ? 1 : 0;
    return n;
  }

  std::size_t target() const { return steps_.size(); }

  std::size_t size() const { return steps_.size(); }
  bool keepsAt(std::size_t i) const { return steps_[i]; }

  bool operator==(const Ope& other) const = default;

private:
  std::vector<bool> steps_;  // outermost constructor first; true = keep
};

// Diagrammatic composition: first <sigma> : G <= D, then <tau> : D <= T.
// Throws on a source/target length mismatch.
Ope compose(const Ope& sigma, const Ope& tau);

// Image of a de Bruijn index under the embedding.
std::size_t wkVar(const Ope& sigma, std::size_t index);

// Structural weakening of a term; the embedding grows a keep under binders.
kernel::TermPtr wkTerm(const Ope& sigma, const kernel::TermPtr& t);

}  // namespace stagec::ope
