#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stagec/builtins.hpp"
#include "stagec/circuits.hpp"
#include "stagec/pretty.hpp"
#include "stagec/stager.hpp"
#include "stagec/surface.hpp"

namespace {

using namespace stagec;

bool useColor() {
  const char* env = std::getenv("STAGEC_COLOR");
  if (env && std::string(env) == "0") return false;
  return isatty(fileno(stderr));
}

void printDiag(const std::string& file, const Diag& diag) {
  bool color = useColor();
  std::cerr << (color ? "\033[1m" : "") << file << ":" << (color ? "\033[0m" : "") << " "
            << (color ? "\033[31m" : "") << "error:" << (color ? "\033[0m" : "") << " "
            << diag.render() << "\n";
}

struct Options {
  std::string file;
  std::string defName = "main";
  std::string inputBits;
  std::string outputPath;
  bool circuitProfile = false;
};

int emit(const Options& opts, const std::string& text) {
  if (opts.outputPath.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(opts.outputPath, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open " << opts.outputPath << " for writing\n";
    return 1;
  }
  out << text;
  return 0;
}

Expected<std::vector<surface::ElabDef>> loadProgram(const Options& opts) {
  std::ifstream in(opts.file, std::ios::binary);
  if (!in)
    return Diag{DiagCode::SyntaxError, "cannot read " + opts.file, ""};
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto program = surface::parse(buffer.str());
  if (!program) return program.error();
  return surface::elaborate(program.value(), opts.circuitProfile ? surface::Profile::Circuit
                                                                 : surface::Profile::Full);
}

Expected<surface::ElabDef> loadDef(const Options& opts) {
  auto defs = loadProgram(opts);
  if (!defs) return defs.error();
  for (const surface::ElabDef& def : defs.value())
    if (def.name == opts.defName) return def;
  return Diag{DiagCode::UnboundIdentifier, "no def named '" + opts.defName + "' in " + opts.file,
              ""};
}

Expected<surface::ElabDef> loadStagedDef(const Options& opts) {
  auto def = loadDef(opts);
  if (!def) return def.error();
  if (def.value().type->stage() != kernel::Stage::Dyn)
    return Diag{DiagCode::StageError,
                "def '" + opts.defName + "' is static; only dynamic defs can be staged", ""};
  surface::ElabDef out = def.value();
  out.term = stager::stage(out.term);
  out.type = kernel::asStaged(out.type);
  return out;
}

Expected<circuits::Netlist> loadNetlist(const Options& opts) {
  auto def = loadStagedDef(opts);
  if (!def) return def.error();
  return circuits::toNetlist(def.value().term);
}

std::string bitsToString(const std::vector<bool>& bits) {
  std::string out;
  for (bool b : bits) out += b ? '1' : '0';
  return out;
}

int cmdCheck(const Options& opts) {
  auto defs = loadProgram(opts);
  if (!defs) {
    printDiag(opts.file, defs.error());
    return 1;
  }
  return emit(opts, "ok\n");
}

int cmdStage(const Options& opts) {
  auto def = loadStagedDef(opts);
  if (!def) {
    printDiag(opts.file, def.error());
    return 1;
  }
  std::string text = "def " + def.value().name + " : " + kernel::prettyType(def.value().type) +
                     " = " + kernel::prettyTerm(def.value().term) + ";\n";
  return emit(opts, text);
}

int cmdRun(const Options& opts) {
  auto netlist = loadNetlist(opts);
  if (!netlist) {
    printDiag(opts.file, netlist.error());
    return 1;
  }
  std::vector<bool> bits;
  for (char c : opts.inputBits) {
    if (c != '0' && c != '1') {
      printDiag(opts.file, Diag{DiagCode::ArityMismatch,
                                "--inputs expects a bit string of 0s and 1s", ""});
      return 1;
    }
    bits.push_back(c == '1');
  }
  if (bits.size() != netlist.value().inputs) {
    printDiag(opts.file,
              Diag{DiagCode::ArityMismatch,
                   "--inputs has " + std::to_string(bits.size()) + " bits, circuit wants " +
                       std::to_string(netlist.value().inputs),
                   ""});
    return 1;
  }
  return emit(opts, bitsToString(circuits::simulate(netlist.value(), bits)) + "\n");
}

int cmdTable(const Options& opts) {
  auto netlist = loadNetlist(opts);
  if (!netlist) {
    printDiag(opts.file, netlist.error());
    return 1;
  }
  auto rows = circuits::truthTable(netlist.value());
  std::string text;
  std::size_t inputs = netlist.value().inputs;
  for (std::size_t row = 0; row < rows.size(); ++row) {
    std::vector<bool> bits(inputs);
    for (std::size_t i = 0; i < inputs; ++i) bits[i] = (row >> (inputs - 1 - i)) & 1;
    text += bitsToString(bits) + " -> " + bitsToString(rows[row]) + "\n";
  }
  return emit(opts, text);
}

int cmdDot(const Options& opts) {
  auto netlist = loadNetlist(opts);
  if (!netlist) {
    printDiag(opts.file, netlist.error());
    return 1;
  }
  return emit(opts, circuits::emitDot(netlist.value()));
}

int cmdBuiltins(const Options& opts) {
  std::string text;
  for (const std::string& name : kernel::builtinNames()) {
    kernel::TermPtr term = kernel::builtin(name);
    text += name + " : " + kernel::prettyType(term->type()) + "\n";
  }
  return emit(opts, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stagec — staging compiler for a two-level typed calculus"};
  app.require_subcommand(1);

  Options opts;

  std::string profile = "full";
  auto addCommon = [&](CLI::App* cmd, bool needsFile) {
    if (needsFile) cmd->add_option("file", opts.file, "input .2lt file")->required();
    cmd->add_option("--def", opts.defName, "definition to operate on (default: main)");
    cmd->add_option("-o,--output", opts.outputPath, "write output to a file instead of stdout");
    cmd->add_option("--profile", profile, "'full' (default) or 'circuit' (dynamic types must be circuits)")
        ->check(CLI::IsMember({"full", "circuit"}));
  };

  CLI::App* check = app.add_subcommand("check", "type-check a program");
  addCommon(check, true);
  CLI::App* stage = app.add_subcommand("stage", "partially evaluate a def and print the residue");
  addCommon(stage, true);
  CLI::App* run = app.add_subcommand("run", "stage a circuit def and simulate it once");
  addCommon(run, true);
  run->add_option("--inputs", opts.inputBits, "input bit string, e.g. 01")->required();
  CLI::App* table = app.add_subcommand("table", "print the full truth table of a circuit def");
  addCommon(table, true);
  CLI::App* dot = app.add_subcommand("dot", "emit the staged circuit as a Graphviz digraph");
  addCommon(dot, true);
  CLI::App* builtins = app.add_subcommand("builtins", "list the builtin term catalogue");
  addCommon(builtins, false);

  CLI11_PARSE(app, argc, argv);
  opts.circuitProfile = profile == "circuit";

  try {
    if (check->parsed()) return cmdCheck(opts);
    if (stage->parsed()) return cmdStage(opts);
    if (run->parsed()) return cmdRun(opts);
    if (table->parsed()) return cmdTable(opts);
    if (dot->parsed()) return cmdDot(opts);
    if (builtins->parsed()) return cmdBuiltins(opts);
  } catch (const stagec::Error& err) {
    printDiag(opts.file, err.diag());
    return 1;
  } catch (const std::logic_error& err) {
    std::cerr << "internal invariant failure: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
