#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stagec/builtins.hpp"
#include "stagec/circuits.hpp"
#include "stagec/stager.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace stagec;
using namespace stagec::kernel;
using namespace stagec::circuits;

namespace {

Netlist netlistOf(const char* builtinName) {
  return toNetlist(stager::stage(builtin(builtinName)));
}

std::vector<bool> bits(std::initializer_list<int> raw) {
  std::vector<bool> out;
  for (int b : raw) out.push_back(b != 0);
  return out;
}

}  // namespace

TEST_CASE("toNetlist flattens the primitive circuits") {
  Netlist nand = toNetlist(Term::nandGate(Phase::Stg));
  CHECK(nand.gates.size() == 1);
  REQUIRE(nand.outputMap.size() == 1);
  CHECK(nand.outputMap[0] == WireRef::gate(0));

  Netlist dup = toNetlist(Term::mix({0, 0}, 1, Phase::Stg));
  CHECK(dup.gates.empty());
  REQUIRE(dup.outputMap.size() == 2);
  CHECK(dup.outputMap[0] == WireRef::input(0));
  CHECK(dup.outputMap[1] == WireRef::input(0));

  Netlist notGate = netlistOf("not");
  REQUIRE(notGate.gates.size() == 1);
  CHECK(notGate.gates[0].a == WireRef::input(0));
  CHECK(notGate.gates[0].b == WireRef::input(0));
  CHECK(notGate.outputMap[0] == WireRef::gate(0));
}

TEST_CASE("toNetlist rejects residual higher-order terms") {
  TyPtr circTy = Ty::circ(1, 1, Phase::Stg);
  TermPtr redex =
      Term::app(Term::lam(circTy, Term::var(0, circTy)), Term::mix({0}, 1, Phase::Stg));
  CHECK_THROWS_AS(toNetlist(redex), Error);
  try {
    toNetlist(redex);
  } catch (const Error& err) {
    CHECK(err.code() == DiagCode::NonCircuitConstruct);
  }
}

TEST_CASE("simulate: gate algebra of the builtins") {
  Netlist nand = toNetlist(Term::nandGate(Phase::Stg));
  CHECK(simulate(nand, bits({1, 1})) == bits({0}));
  CHECK(simulate(nand, bits({0, 1})) == bits({1}));

  Netlist andNet = netlistOf("and");
  CHECK(simulate(andNet, bits({1, 1})) == bits({1}));
  CHECK(simulate(andNet, bits({1, 0})) == bits({0}));

  Netlist orNet = netlistOf("or");
  CHECK(simulate(orNet, bits({0, 0})) == bits({0}));
  CHECK(simulate(orNet, bits({0, 1})) == bits({1}));

  CHECK_THROWS_AS(simulate(nand, bits({1})), Error);
}

TEST_CASE("truth tables in ascending binary order") {
  auto notRows = truthTable(netlistOf("not"));
  REQUIRE(notRows.size() == 2);
  CHECK(notRows[0] == bits({1}));
  CHECK(notRows[1] == bits({0}));

  // swap: identity on bits with the columns exchanged.
  auto swapRows = truthTable(netlistOf("swap"));
  REQUIRE(swapRows.size() == 4);
  CHECK(swapRows[0] == bits({0, 0}));
  CHECK(swapRows[1] == bits({1, 0}));  // inputs 01 -> outputs 10
  CHECK(swapRows[2] == bits({0, 1}));
  CHECK(swapRows[3] == bits({1, 1}));

  Netlist wide;
  wide.inputs = 21;
  CHECK_THROWS_AS(truthTable(wide), Error);
}

TEST_CASE("tab builds the multiplexer from the paper diagram") {
  // f = \b. if b then <not> else <id1>: the tabulated circuit must behave
  // as (b ? !x : x) on every row.
  TyPtr upOneOne = Ty::lift(Ty::circ(1, 1, Phase::Src));
  TermPtr f = Term::lam(
      Ty::boolean(),
      Term::ifThenElse(Term::var(0, Ty::boolean()), Term::quote(builtin("not")),
                       Term::quote(Term::mix({0}, 1, Phase::Src))));
  REQUIRE(equal(f->type(), Ty::arrow(Ty::boolean(), upOneOne)));

  TermPtr program = Term::splice(Term::app(builtin("tab"), f));
  auto rows = truthTable(toNetlist(stager::stage(program)));
  REQUIRE(rows.size() == 4);
  for (std::size_t row = 0; row < 4; ++row) {
    bool b = (row >> 1) & 1;
    bool x = row & 1;
    bool expected = b ? oracles::notBit(x) : x;
    CHECK_MESSAGE(rows[row] == std::vector<bool>{expected}, "row ", row);
  }
}

TEST_CASE("emitDot output") {
  Netlist dup = toNetlist(Term::mix({0, 0}, 1, Phase::Stg));
  std::string dot = emitDot(dup);
  CHECK(dot.find("in0") != std::string::npos);
  CHECK(dot.find("out0") != std::string::npos);
  CHECK(dot.find("out1") != std::string::npos);
  CHECK(dot.find("NAND") == std::string::npos);
  CHECK(oracles::dotParses(dot));

  std::string notDot = emitDot(netlistOf("not"));
  CHECK(notDot.find("in0 -> g0") != std::string::npos);
  CHECK(notDot.find("g0 -> out0") != std::string::npos);
  CHECK(oracles::dotParses(notDot));

  // Determinism: two runs, identical bytes.
  CHECK(emitDot(netlistOf("or")) == emitDot(netlistOf("or")));
  CHECK(oracles::dotParses(emitDot(netlistOf("or"))));
}

TEST_CASE("netlist text serialization") {
  std::string text = toText(netlistOf("not"));
  CHECK(text ==
        "inputs 1 outputs 1\n"
        "gate 0 = nand in0 in0\n"
        "out 0 = g0\n");
}

TEST_CASE("netlists are topologically ordered") {
  generators::Gen gen(71);
  auto wellFormed = [](const Netlist& n) {
    for (std::size_t g = 0; g < n.gates.size(); ++g) {
      for (const WireRef& ref : {n.gates[g].a, n.gates[g].b}) {
        bool ok = ref.kind == WireRef::Kind::Input ? ref.index < n.inputs : ref.index < g;
        if (!ok) return false;
      }
    }
    if (n.outputMap.size() != n.outputs) return false;
    for (const WireRef& ref : n.outputMap) {
      bool ok = ref.kind == WireRef::Kind::Input ? ref.index < n.inputs
                                                 : ref.index < n.gates.size();
      if (!ok) return false;
    }
    return true;
  };
  for (int i = 0; i < 100; ++i) {
    std::vector<TyPtr> scratch;
    TermPtr t = gen.genClosedCircuit(4, 5);
    CHECK(wellFormed(toNetlist(t)));
  }
}

TEST_CASE("circuit algebra on generated terms") {
  generators::Gen gen(31);
  std::vector<TyPtr> noCtx;

  auto allInputs = [](std::size_t n) {
    std::vector<std::vector<bool>> out;
    for (std::size_t row = 0; row < (std::size_t{1} << n); ++row) {
      std::vector<bool> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = (row >> (n - 1 - i)) & 1;
      out.push_back(v);
    }
    return out;
  };

  for (int i = 0; i < 60; ++i) {
    std::size_t inputs = 1 + gen.pick(4);
    std::size_t mid = 1 + gen.pick(3);
    std::size_t outputs = gen.pick(3);

    std::vector<TyPtr> scratch;
    TermPtr a = gen.genCirc(inputs, mid, Phase::Stg, scratch, 4, true);
    TermPtr b = gen.genCirc(mid, outputs, Phase::Stg, scratch, 4, true);

    // Sequencing is function composition of the simulations.
    Netlist seqNet = toNetlist(Term::seq(a, b));
    Netlist aNet = toNetlist(a);
    Netlist bNet = toNetlist(b);
    for (const auto& x : allInputs(inputs))
      CHECK(simulate(seqNet, x) == simulate(bNet, simulate(aNet, x)));

    // Parallel composition splits its inputs and concatenates outputs.
    TermPtr c = gen.genCirc(mid, outputs, Phase::Stg, scratch, 4, true);
    Netlist parNet = toNetlist(Term::par(a, c));
    Netlist cNet = toNetlist(c);
    CHECK(parNet.gates.size() == aNet.gates.size() + cNet.gates.size());
    for (const auto& x : allInputs(inputs))
      for (const auto& y : allInputs(mid)) {
        std::vector<bool> xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        std::vector<bool> expected = simulate(aNet, x);
        std::vector<bool> rest = simulate(cNet, y);
        expected.insert(expected.end(), rest.begin(), rest.end());
        CHECK(simulate(parNet, xy) == expected);
      }

    // Mix is pure projection and contributes no gates.
    std::vector<std::size_t> wires;
    for (std::size_t w = 0; w < outputs; ++w) wires.push_back(gen.pick(inputs));
    Netlist mixNet = toNetlist(Term::mix(wires, inputs, Phase::Stg));
    CHECK(mixNet.gates.empty());
    for (const auto& x : allInputs(inputs)) {
      std::vector<bool> expected;
      for (std::size_t w : wires) expected.push_back(x[w]);
      CHECK(simulate(mixNet, x) == expected);
    }

    CHECK(seqNet.gates.size() == aNet.gates.size() + bNet.gates.size());
  }
}
