#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <regex>
#include <string>
#include <sys/wait.h>

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

// Runs the installed binary through the shell and captures one stream.
CliResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string command = std::string("\"") + TREEAUT_CLI_PATH + "\" " + args;
  command += merge_stderr ? " 2>&1" : " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.output.append(buffer, got);
  }
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  result.exit_code = WEXITSTATUS(status);
  return result;
}

std::string normalize_duration(std::string text) {
  static const std::regex duration("\"duration_ms\": [0-9]+");
  return std::regex_replace(text, duration, "\"duration_ms\": X");
}

}  // namespace

TEST_CASE("eval prints portraits") {
  CliResult r = run_cli("--n 2 eval tau --depth 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "((•, •)(), (•, •)(0 1))(0 1)\n");

  CliResult named = run_cli("--n 2 eval 'tau^2' --depth 2 --names");
  CHECK(named.exit_code == 0);
  CHECK(named.output == "(tau, tau)()\n");
}

TEST_CASE("apply prints the image vertex") {
  CliResult r = run_cli("--n 2 apply tau 111");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "000\n");
}

TEST_CASE("equal reports verdicts with matching exit codes") {
  CliResult equal = run_cli("--n 2 equal 'tau*tau' 'wreath(tau, tau;)' --bisim");
  CHECK(equal.exit_code == 0);
  CHECK(equal.output == "EQUAL pairs=1\n");

  CliResult depth = run_cli("--n 2 equal tau id --depth 3");
  CHECK(depth.exit_code == 1);
  CHECK(depth.output == "NOT-EQUAL depth=3\n");

  CliResult witness = run_cli("--n 2 equal 'tau^2' 'tau^3' --bisim");
  CHECK(witness.exit_code == 1);
  CHECK(witness.output == "NOT-EQUAL witness=0\n");

  CliResult unknown = run_cli("--n 2 equal 'conj(tau, lambda(3))' 'tau^3' --bisim --budget 1");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.output == "UNKNOWN budget=1\n");
}

TEST_CASE("commutes reports both verdicts") {
  CliResult yes = run_cli("--n 4 commutes tau 'tau^1/3'");
  CHECK(yes.exit_code == 0);
  CHECK(yes.output == "COMMUTES depth=8\n");

  CliResult no = run_cli("--n 4 commutes tau 'rigid((0 1))' --depth 2");
  CHECK(no.exit_code == 1);
  CHECK(no.output == "DOES-NOT-COMMUTE depth=2\n");
}

TEST_CASE("dot exports the adding machine state graph") {
  CliResult r = run_cli("--n 2 dot tau");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "digraph automaton {\n"
        "  rankdir=LR;\n"
        "  node [shape=circle];\n"
        "  s0 [label=\"s0\\ntau\", shape=doublecircle];\n"
        "  s1 [label=\"s1\\nid\"];\n"
        "  s0 -> s1 [label=\"0|1\"];\n"
        "  s0 -> s0 [label=\"1|0\"];\n"
        "  s1 -> s1 [label=\"0|0\"];\n"
        "  s1 -> s1 [label=\"1|1\"];\n"
        "}\n");
}

TEST_CASE("conjugate-to-tau certifies the inactive conjugate example") {
  CliResult r =
      run_cli("--n 4 conjugate-to-tau 'conj(tau, wreath(rigid((0 1)), id, id, id;))' --levels 6");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "CONJUGATOR ((•, •, •, •)(1 3 2), (•, •, •, •)(0 3 2 1), (•, •, •, •)(0 3 2 1), "
        "(•, •, •, •)(0 3 2 1))()\n"
        "SCREENING exponents=0,1 passed=no\n"
        "POWER-REDUCTION 1\n"
        "STAGES 6\n"
        "ADJUSTMENT none\n"
        "NOTE commuting-conjugates check fails at exponent 1\n"
        "CERTIFIED depth=6\n");
}

TEST_CASE("conjugate-to-tau straightens tau squared at degree five") {
  CliResult r = run_cli("--n 5 conjugate-to-tau 'tau^2'");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "CONJUGATOR ((•, •, •, •, •)(1 3 4 2), (•, •, •, •, •)(0 2 3 1), "
        "(•, •, •, •, •)(1 3 4 2), (•, •, •, •, •)(0 2 3 1), "
        "(•, •, •, •, •)(1 3 4 2))(1 3 4 2)\n"
        "SCREENING exponents=0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25"
        " passed=yes\n"
        "POWER-REDUCTION 3\n"
        "STAGES 6\n"
        "ADJUSTMENT composed with the inverse of the conjugator onto exponent 1/3\n"
        "NOTE raised to power 3 to straighten the activity\n"
        "CERTIFIED depth=6\n");
}

TEST_CASE("conjugate-to-tau rejects activities sharing a factor with the degree") {
  CliResult r = run_cli("--n 4 conjugate-to-tau 'tau^2'");
  CHECK(r.exit_code == 1);
  CHECK(r.output == "NOT-CONJUGATE activity rotation power 2 is not coprime to 4\n");
}

TEST_CASE("verify prints one line per relation and a verdict") {
  CliResult r = run_cli("--n 4 verify wreath");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "RELATION a-order PASS\n"
        "RELATION block-shifts-commute PASS\n"
        "RELATION orbit-product PASS\n"
        "RELATION pair-swap PASS\n"
        "RELATION u-order PASS\n"
        "SUITE wreath PASS\n");
}

TEST_CASE("usage errors exit with code 64") {
  CliResult suite = run_cli("--n 4 verify nope", true);
  CHECK(suite.exit_code == 64);
  CHECK(suite.output == "error: unknown suite 'nope'\n");

  CliResult param = run_cli("--n 4 verify delta --param depth", true);
  CHECK(param.exit_code == 64);
  CHECK(param.output == "error: --param expects key=value, got 'depth'\n");

  CliResult vertex = run_cli("--n 2 apply tau 121", true);
  CHECK(vertex.exit_code == 64);
  CHECK(vertex.output == "error: vertex letter 2 out of range for degree 2\n");

  CliResult missing = run_cli("eval tau", true);
  CHECK(missing.exit_code == 64);
  CHECK(missing.output == "--n is required\nRun with --help for more information.\n");

  CliResult format = run_cli("--n 2 --format yaml eval tau", true);
  CHECK(format.exit_code == 64);
  CHECK(format.output == "--format: yaml not in {text,json}\nRun with --help for more information.\n");
}

TEST_CASE("evaluation errors exit with code 65") {
  CliResult parse = run_cli("--n 2 eval 'tau^'", true);
  CHECK(parse.exit_code == 65);
  CHECK(parse.output == "error: expected a rational at column 5\n");

  CliResult eval = run_cli("--n 4 eval 'psi(2)'", true);
  CHECK(eval.exit_code == 65);
  CHECK(eval.output == "error: psi exponent 2 is 0 or 2 mod 4 (columns 1-6)\n");
}

TEST_CASE("help exits cleanly") {
  CliResult r = run_cli("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Usage") != std::string::npos);
}

TEST_CASE("json output matches the documented schema") {
  CliResult eval = run_cli("--n 2 --format json eval tau --depth 2");
  CHECK(eval.exit_code == 0);
  CHECK(eval.output ==
        "{\n"
        "  \"command\": \"eval\",\n"
        "  \"n\": 2,\n"
        "  \"depth\": 2,\n"
        "  \"names\": false,\n"
        "  \"portrait\": \"((•, •)(), (•, •)(0 1))(0 1)\"\n"
        "}\n");

  CliResult equal = run_cli("--n 2 --format json equal 'tau*tau' 'wreath(tau, tau;)' --bisim");
  CHECK(equal.exit_code == 0);
  CHECK(equal.output ==
        "{\n"
        "  \"command\": \"equal\",\n"
        "  \"n\": 2,\n"
        "  \"mode\": \"bisim\",\n"
        "  \"budget\": 10000,\n"
        "  \"verdict\": \"equal\",\n"
        "  \"pairs_explored\": 1\n"
        "}\n");

  CliResult unknown =
      run_cli("--n 2 --format json equal 'conj(tau, lambda(3))' 'tau^3' --bisim --budget 1");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.output.find("\"verdict\": \"unknown\"") != std::string::npos);
}

TEST_CASE("verify json is stable apart from the duration field") {
  CliResult first = run_cli("--n 4 --format json verify wreath --seed 7");
  CliResult second = run_cli("--n 4 --format json verify wreath --seed 7");
  CHECK(first.exit_code == 0);
  CHECK(normalize_duration(first.output) == normalize_duration(second.output));
  CHECK(first.output.find("\"passed\": true") != std::string::npos);
  CHECK(first.output.find("\"seed\": 7") != std::string::npos);
  CHECK(first.output.find("\"duration_ms\": ") != std::string::npos);
}

TEST_CASE("text output is byte-identical across runs") {
  const std::string commands[] = {
      "--n 2 eval tau --depth 3",
      "--n 5 conjugate-to-tau 'tau^2'",
      "--n 4 verify transposition",
      "--n 2 dot tau",
  };
  for (const std::string& args : commands) {
    CAPTURE(args);
    CliResult first = run_cli(args);
    CliResult second = run_cli(args);
    CHECK(first.exit_code == second.exit_code);
    CHECK(first.output == second.output);
  }
}
