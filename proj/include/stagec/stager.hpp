#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "stagec/box.hpp"
#include "stagec/term.hpp"

namespace stagec::stager {

class Value;
using ValuePtr = std::shared_ptr<const Value>;

// A Kripke function space: a boxed host function from values to values.
using SemFn = std::function<ValuePtr(const ValuePtr&)>;
using Kripke = Boxed<SemFn>;

// Stage-indexed semantic value. Dynamic values are staged residual terms;
// static values are computed by induction on the type: host numbers and
// booleans, pairs of values, staged terms for lifted types, and Kripke
// functions for static arrows. The base type has no static values at all,
// so no alternative exists for it here.
class Value {
public:
  enum class Kind : std::uint8_t { Dyn, Nat, Bool, Pair, Fn };

  Kind kind() const { return kind_; }

  static ValuePtr dyn(kernel::TermPtr term);
  static ValuePtr nat(std::uint64_t n);
  static ValuePtr boolean(bool b);
  static ValuePtr pair(ValuePtr first, ValuePtr second);
  static ValuePtr fn(Kripke fn);

  // Accessors throw StuckEvaluation when the tag disagrees: reaching one of
  // those throws means the validator let an ill-typed term through.
  const kernel::TermPtr& term() const;
  std::uint64_t natValue() const;
  bool boolValue() const;
  const ValuePtr& first() const;
  const ValuePtr& second() const;
  const Kripke& fnValue() const;

private:
  explicit Value(Kind kind) : kind_(kind) {}

  Kind kind_;
  kernel::TermPtr term_;
  std::uint64_t nat_ = 0;
  bool bool_ = false;
  ValuePtr first_, second_;
  std::shared_ptr<const Kripke> fn_;
};

// Total map from the source context's variables to values over a staged
// target context of `targetSize` entries.
class Env {
public:
  static Env empty() { return Env{}; }
  Env(std::vector<ValuePtr> values, std::size_t targetSize)
      : values_(std::move(values)), targetSize_(targetSize) {}
  Env() = default;

  const ValuePtr& lookup(std::size_t index) const;
  std::size_t size() const { return values_.size(); }
  std::size_t targetSize() const { return targetSize_; }
  const std::vector<ValuePtr>& values() const { return values_; }

private:
  std::vector<ValuePtr> values_;  // index 0 is the most recently bound
  std::size_t targetSize_ = 0;
};

// Semantic application: run the Kripke function at its own context.
ValuePtr semApp(const Kripke& f, const ValuePtr& v);

Kripke wkKripke(const ope::Ope& sigma, const Kripke& f);
ValuePtr wkValue(const ope::Ope& sigma, const ValuePtr& v);

// The boxed map that, given an embedding and a value for the fresh
// variable, extends the environment into the embedding's target.
Boxed<std::function<Env(const ValuePtr&)>> extend(const Env& env);

// s applied n times to z.
template <class V, class Step>
V iterate(std::uint64_t n, V z, Step&& s) {
  V acc = std::move(z);
  for (std::uint64_t i = 0; i < n; ++i) acc = s(acc);
  return acc;
}

ValuePtr eval(const kernel::TermPtr& t, const Env& env);

// Meaning of a one-variable-deeper term as a Kripke function.
Kripke body(const kernel::TermPtr& t, const Env& env);

// Partially evaluates a closed (src, dyn) term, eliminating every static
// subterm, quote, and splice. Throws Error when the input fails validation.
kernel::TermPtr stage(const kernel::TermPtr& t);

}  // namespace stagec::stager
