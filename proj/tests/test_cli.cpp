#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exitCode = -1;
  std::string output;  // stdout only
};

std::string binPath() {
  const char* bin = std::getenv("STAGEC_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "STAGEC_BIN must point at the stagec executable");
  return bin;
}

std::string dataPath() {
  const char* data = std::getenv("STAGEC_DATA");
  REQUIRE_MESSAGE(data != nullptr, "STAGEC_DATA must point at the programs directory");
  return data;
}

RunResult run(const std::string& args) {
  std::string cmd = "STAGEC_COLOR=0 " + binPath() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, n);
  int status = pclose(pipe);
  result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string golden(const std::string& name) { return slurp(dataPath() + "/golden/" + name); }

}  // namespace

TEST_CASE("check prints ok on the shipped programs") {
  for (const char* name :
       {"id", "add42", "testid01", "fib", "not", "and", "or", "tab", "swap", "chain"}) {
    RunResult result = run("check " + dataPath() + "/" + std::string(name) + ".2lt");
    CHECK_MESSAGE(result.exitCode == 0, name);
    CHECK(result.output == "ok\n");
  }
}

TEST_CASE("a static loop can generate hardware") {
  // chain 3 = three not-gates in sequence: still an inverter.
  RunResult table = run("table " + dataPath() + "/chain.2lt");
  CHECK(table.exitCode == 0);
  CHECK(table.output ==
        "0 -> 1\n"
        "1 -> 0\n");
}

TEST_CASE("stage matches the goldens") {
  CHECK(run("stage " + dataPath() + "/add42.2lt").output == golden("add42.stage.txt"));
  CHECK(run("stage " + dataPath() + "/not.2lt").output == golden("not.stage.txt"));
  CHECK(run("stage " + dataPath() + "/testid01.2lt").output == golden("testid01.stage.txt"));
  CHECK(run("stage " + dataPath() + "/fib.2lt").output == golden("fib.stage.txt"));
}

TEST_CASE("run simulates a staged circuit") {
  CHECK(run("run " + dataPath() + "/not.2lt --inputs 1").output == "0\n");
  CHECK(run("run " + dataPath() + "/not.2lt --inputs 0").output == "1\n");
  RunResult wrongArity = run("run " + dataPath() + "/not.2lt --inputs 01");
  CHECK(wrongArity.exitCode == 1);
}

TEST_CASE("table prints every row in ascending input order") {
  RunResult result = run("table " + dataPath() + "/and.2lt");
  CHECK(result.exitCode == 0);
  CHECK(result.output ==
        "00 -> 0\n"
        "01 -> 0\n"
        "10 -> 0\n"
        "11 -> 1\n");
  CHECK(run("table " + dataPath() + "/tab.2lt --def mux").output == golden("tab.table.txt"));
}

TEST_CASE("dot emits the wiring graph") {
  CHECK(run("dot " + dataPath() + "/not.2lt").output == golden("not.dot.txt"));
}

TEST_CASE("builtins lists the catalogue") {
  RunResult result = run("builtins");
  CHECK(result.exitCode == 0);
  CHECK(result.output.find("fib : Nat@s -> Nat@s") != std::string::npos);
  CHECK(result.output.find("tab : (Bool -> Up (Circ 1 1)) -> Up (Circ 2 1)") !=
        std::string::npos);
}

TEST_CASE("output is byte-deterministic") {
  std::string first = run("stage " + dataPath() + "/fib.2lt").output;
  std::string second = run("stage " + dataPath() + "/fib.2lt").output;
  CHECK(first == second);
}

TEST_CASE("stage output re-parses and re-validates") {
  for (const char* name : {"add42", "not", "fib", "testid01", "tab"}) {
    std::string staged = run("stage " + dataPath() + "/" + std::string(name) + ".2lt").output;
    std::string tmp = std::string("/tmp/stagec_restage_") + name + ".2lt";
    {
      std::ofstream out(tmp, std::ios::binary);
      out << staged;
    }
    RunResult recheck = run("check " + tmp);
    CHECK_MESSAGE(recheck.exitCode == 0, name, ": ", staged);
    CHECK(recheck.output == "ok\n");
    std::remove(tmp.c_str());
  }
}

TEST_CASE("user errors exit 1 with diagnostics on stderr") {
  RunResult missing = run("check " + dataPath() + "/no_such_file.2lt");
  CHECK(missing.exitCode == 1);
  CHECK(missing.output.empty());

  RunResult badDef = run("stage " + dataPath() + "/add42.2lt --def nope");
  CHECK(badDef.exitCode == 1);

  // Static defs cannot be staged.
  RunResult staticDef = run("stage " + dataPath() + "/add42.2lt --def add");
  CHECK(staticDef.exitCode == 1);

  // Residual higher-order terms are not circuits.
  RunResult lambdaTable = run("table " + dataPath() + "/id.2lt");
  CHECK(lambdaTable.exitCode == 1);
}

TEST_CASE("STAGEC_COLOR=0 keeps diagnostics free of escape codes") {
  std::string cmd = "STAGEC_COLOR=0 " + binPath() + " check " + dataPath() +
                    "/no_such_file.2lt 2>&1 >/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string err;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) err.append(buffer, n);
  pclose(pipe);
  CHECK(err.find("\033") == std::string::npos);
  CHECK(err.find("error:") != std::string::npos);
}

TEST_CASE("the circuit profile flag is honoured") {
  CHECK(run("check " + dataPath() + "/not.2lt --profile circuit").exitCode == 0);
  CHECK(run("check " + dataPath() + "/add42.2lt --profile circuit").exitCode == 1);
}
