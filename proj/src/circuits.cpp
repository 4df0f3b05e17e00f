#include "stagec/circuits.hpp"

#include <string>

#include "stagec/diag.hpp"

namespace stagec::circuits {

using kernel::Term;
using kernel::TermPtr;
using kernel::Ty;

namespace {

struct Flattener {
  Netlist netlist;
  std::vector<const char*> path;

  std::string renderPath() const {
    std::string out;
    for (const char* step : path) {
      if (!out.empty()) out += ".";
      out += step;
    }
    return out;
  }

  std::vector<WireRef> flatten(const TermPtr& t, const std::vector<WireRef>& ins) {
    switch (t->kind()) {
      case Term::Kind::Nand: {
        netlist.gates.push_back({ins[0], ins[1]});
        return {WireRef::gate(netlist.gates.size() - 1)};
      }
      case Term::Kind::Mix: {
        std::vector<WireRef> outs;
        outs.reserve(t->wires().size());
        for (std::size_t w : t->wires()) outs.push_back(ins[w]);
        return outs;
      }
      case Term::Kind::Par: {
        auto leftIns = static_cast<std::ptrdiff_t>(t->left()->type()->inputs());
        std::vector<WireRef> leftWires(ins.begin(), ins.begin() + leftIns);
        std::vector<WireRef> rightWires(ins.begin() + leftIns, ins.end());
        path.push_back("left");
        std::vector<WireRef> a = flatten(t->left(), leftWires);
        path.back() = "right";
        std::vector<WireRef> b = flatten(t->right(), rightWires);
        path.pop_back();
        a.insert(a.end(), b.begin(), b.end());
        return a;
      }
      case Term::Kind::Seq: {
        path.push_back("left");
        std::vector<WireRef> mid = flatten(t->left(), ins);
        path.back() = "right";
        std::vector<WireRef> outs = flatten(t->right(), mid);
        path.pop_back();
        return outs;
      }
      default:
        throw Error({DiagCode::NonCircuitConstruct,
                     std::string("the simulator only accepts first-order circuit terms; found ") +
                         kernel::kindName(t->kind()),
                     renderPath()});
    }
  }
};

std::string refName(const WireRef& ref) {
  return (ref.kind == WireRef::Kind::Input ? "in" : "g") + std::to_string(ref.index);
}

bool wireValue(const WireRef& ref, const std::vector<bool>& inputBits,
               const std::vector<bool>& gateBits) {
  return ref.kind == WireRef::Kind::Input ? inputBits[ref.index] : gateBits[ref.index];
}

}  // namespace

Netlist toNetlist(const TermPtr& t) {
  if (!t || t->type()->kind() != Ty::Kind::Circ)
    throw Error({DiagCode::NonCircuitConstruct, "not a circuit-typed term", ""});
  Flattener flattener;
  flattener.netlist.inputs = t->type()->inputs();
  flattener.netlist.outputs = t->type()->outputs();
  std::vector<WireRef> ins;
  ins.reserve(flattener.netlist.inputs);
  for (std::size_t i = 0; i < flattener.netlist.inputs; ++i) ins.push_back(WireRef::input(i));
  flattener.netlist.outputMap = flattener.flatten(t, ins);
  return flattener.netlist;
}

std::vector<bool> simulate(const Netlist& netlist, const std::vector<bool>& bits) {
  if (bits.size() != netlist.inputs)
    throw Error({DiagCode::ArityMismatch,
                 "got " + std::to_string(bits.size()) + " input bits, circuit wants " +
                     std::to_string(netlist.inputs),
                 ""});
  std::vector<bool> gateBits;
  gateBits.reserve(netlist.gates.size());
  for (const NandGate& gate : netlist.gates) {
    bool a = wireValue(gate.a, bits, gateBits);
    bool b = wireValue(gate.b, bits, gateBits);
    gateBits.push_back(!(a && b));
  }
  std::vector<bool> outs;
  outs.reserve(netlist.outputs);
  for (const WireRef& ref : netlist.outputMap) outs.push_back(wireValue(ref, bits, gateBits));
  return outs;
}

std::vector<std::vector<bool>> truthTable(const Netlist& netlist) {
  if (netlist.inputs > 20)
    throw Error({DiagCode::TooManyInputs,
                 "truth table over " + std::to_string(netlist.inputs) + " inputs is too large",
                 ""});
  std::vector<std::vector<bool>> rows;
  std::size_t count = std::size_t{1} << netlist.inputs;
  rows.reserve(count);
  for (std::size_t row = 0; row < count; ++row) {
    std::vector<bool> bits(netlist.inputs);
    for (std::size_t i = 0; i < netlist.inputs; ++i)
      bits[i] = (row >> (netlist.inputs - 1 - i)) & 1;
    rows.push_back(simulate(netlist, bits));
  }
  return rows;
}

std::string emitDot(const Netlist& netlist) {
  std::string out = "digraph circuit {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < netlist.inputs; ++i)
    out += "  in" + std::to_string(i) + " [shape=circle];\n";
  for (std::size_t i = 0; i < netlist.gates.size(); ++i)
    out += "  g" + std::to_string(i) + " [shape=box, label=\"NAND\"];\n";
  for (std::size_t i = 0; i < netlist.outputs; ++i)
    out += "  out" + std::to_string(i) + " [shape=doublecircle];\n";
  for (std::size_t i = 0; i < netlist.gates.size(); ++i) {
    out += "  " + refName(netlist.gates[i].a) + " -> g" + std::to_string(i) + ";\n";
    out += "  " + refName(netlist.gates[i].b) + " -> g" + std::to_string(i) + ";\n";
  }
  for (std::size_t i = 0; i < netlist.outputMap.size(); ++i)
    out += "  " + refName(netlist.outputMap[i]) + " -> out" + std::to_string(i) + ";\n";
  out += "}\n";
  return out;
}

std::string toText(const Netlist& netlist) {
  std::string out =
      "inputs " + std::to_string(netlist.inputs) + " outputs " + std::to_string(netlist.outputs) + "\n";
  for (std::size_t i = 0; i < netlist.gates.size(); ++i)
    out += "gate " + std::to_string(i) + " = nand " + refName(netlist.gates[i].a) + " " +
           refName(netlist.gates[i].b) + "\n";
  for (std::size_t i = 0; i < netlist.outputMap.size(); ++i)
    out += "out " + std::to_string(i) + " = " + refName(netlist.outputMap[i]) + "\n";
  return out;
}

}  // namespace stagec::circuits
