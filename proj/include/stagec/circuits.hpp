#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stagec/term.hpp"

namespace stagec::circuits {

// A wire feeding a gate or an output: either one of the netlist's inputs or
// the output of an earlier gate (topological order, so no cycles).
struct WireRef {
  enum class Kind : std::uint8_t { Input, Gate };
  Kind kind = Kind::Input;
  std::size_t index = 0;

  static WireRef input(std::size_t i) { return {Kind::Input, i}; }
  static WireRef gate(std::size_t i) { return {Kind::Gate, i}; }

  bool operator==(const WireRef&) const = default;
};

struct NandGate {
  WireRef a, b;
};

// Flattened gate graph extracted from a staged circuit term.
struct Netlist {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<NandGate> gates;
  std::vector<WireRef> outputMap;  // one entry per output
};

// Compositional flattening of a first-order staged circuit term. Throws
// Error(NonCircuitConstruct) with a node path when the term still contains
// residual lambdas, applications, or variables.
Netlist toNetlist(const kernel::TermPtr& t);

// Evaluates every gate as not(a and b). Throws Error(ArityMismatch) when
// the bit vector does not match the input arity.
std::vector<bool> simulate(const Netlist& netlist, const std::vector<bool>& bits);

// All 2^inputs rows in ascending binary input order (input 0 is the most
// significant bit). Throws Error(TooManyInputs) above 20 inputs.
std::vector<std::vector<bool>> truthTable(const Netlist& netlist);

// Graphviz rendering with in#/g#/out# nodes in a deterministic order.
std::string emitDot(const Netlist& netlist);

// Line-based text form: `inputs N outputs M`, `gate K = nand <ref> <ref>`,
// `out J = <ref>`; refs spelled inI or gK.
std::string toText(const Netlist& netlist);

}  // namespace stagec::circuits
