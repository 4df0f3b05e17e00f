#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

namespace stagec::kernel {

// Src marks terms still to be staged, Stg the residue staging produces.
enum class Phase : std::uint8_t { Src, Stg };

// The layer a type/term lives in. Sta is only legal in the Src phase.
enum class Stage : std::uint8_t { Sta, Dyn };

const char* phaseName(Phase ph);
const char* stageName(Stage st);

inline bool stageLegal(Phase ph, Stage st) {
  return st == Stage::Dyn || ph == Phase::Src;
}

class Ty;
using TyPtr = std::shared_ptr<const Ty>;

// Object-language type. Every node carries the (phase, stage) it lives at;
// the factory functions enforce the per-constructor index constraints.
class Ty {
public:
  enum class Kind : std::uint8_t { Base, Nat, Bool, Arrow, Lift, Prod, Circ };

  Kind kind() const { return kind_; }
  Phase phase() const { return phase_; }
  Stage stage() const { return stage_; }

  // Arrow domain, Prod left component, Lift inner type.
  const TyPtr& left() const { return left_; }
  // Arrow codomain, Prod right component.
  const TyPtr& right() const { return right_; }

  std::size_t inputs() const { return inputs_; }
  std::size_t outputs() const { return outputs_; }

  static TyPtr base(Phase ph, Stage st);
  static TyPtr nat(Phase ph, Stage st);
  static TyPtr boolean();                    // (Src, Sta)
  static TyPtr arrow(TyPtr dom, TyPtr cod);  // operands share the node's indices
  static TyPtr lift(TyPtr inner);            // (Src, Sta) over a (Src, Dyn) type
  static TyPtr prod(TyPtr lhs, TyPtr rhs);   // (Src, Sta)
  static TyPtr circ(std::size_t inputs, std::size_t outputs, Phase ph);

private:
  Ty(Kind kind, Phase ph, Stage st) : kind_(kind), phase_(ph), stage_(st) {}

  static TyPtr make(Kind kind, Phase ph, Stage st, TyPtr left = nullptr, TyPtr right = nullptr,
                    std::size_t inputs = 0, std::size_t outputs = 0);

  Kind kind_;
  Phase phase_;
  Stage stage_;
  TyPtr left_;
  TyPtr right_;
  std::size_t inputs_ = 0;
  std::size_t outputs_ = 0;
};

bool equal(const TyPtr& a, const TyPtr& b);
bool equalModPhase(const TyPtr& a, const TyPtr& b);
std::size_t nodeCount(const TyPtr& ty);

// Re-indexes a purely dynamic source type into the staged phase; structure
// is untouched. Requires indices (Src, Dyn).
TyPtr asStaged(const TyPtr& ty);

// Rebuilds `ty` at the given indices where its constructors admit them;
// returns nullptr if some node is pinned to other indices (Bool, Prod, Lift
// at non-(Src,Sta), Circ at Sta).
TyPtr retag(const TyPtr& ty, Phase ph, Stage st);

}  // namespace stagec::kernel
