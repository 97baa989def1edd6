// Runs the eqa binary and checks exit codes and JSON payloads.

#include <doctest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "eqa/json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(EQA_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

eqa::Json json_of(const Run& r) { return eqa::Json::parse(r.out); }

std::string data(const std::string& rel) {
  return std::string("'") + EQA_SOURCE_DATA_DIR + "/" + rel + "'";
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("eqa_cli_test_" + name)).string();
}

}  // namespace

TEST_CASE("prove: proved goals exit 0 and emit a checkable proof") {
  const std::string out = tmp_path("rid.eqp");
  const Run r = run("prove -t J -g '(x * e) = x' --emit-proof " + out);
  CHECK(r.code == 0);
  CHECK(r.out.find("Proved") != std::string::npos);
  CHECK(run("check-proof -t J -p " + out).code == 0);
  CHECK(run("check-proof -p " + out).code == 0);  // theory from the header

  const auto j = json_of(run("--json prove -t J -g '(x * e) = x'"));
  CHECK(j["status"] == "Proved");
  CHECK(j["proof"]["lines"].size() > 0);
  CHECK(j.contains("nodes_explored"));
}

TEST_CASE("prove: unknown within budget exits 2") {
  const Run r = run("prove -t J -g '(x * y) = (y * x)' --max-nodes 500 --max-seconds 5");
  CHECK(r.code == 2);
  const auto j = json_of(run("prove --json -t J -g '(x * y) = (y * x)' --max-nodes 500"));
  CHECK(j["status"] == "Unknown");
  CHECK(j["reason"] == "max_nodes");
}

TEST_CASE("quasi") {
  CHECK(run("quasi -t J --premise '(x -> y) = e' --premise '(y -> x) = e' -g 'x = y'").code == 0);
  const auto j =
      json_of(run("quasi --json -t J --premise '(x -> y) = e' --premise '(y -> x) = e' -g 'x = y'"));
  CHECK(j["proof"]["premises"].size() == 2);
}

TEST_CASE("refute") {
  const Run r = run("refute -t J -g '(x * y) = x'");
  CHECK(r.code == 0);
  const auto j = json_of(run("refute --json -t J -g '(x * y) = x'"));
  CHECK(j["status"] == "Refuted");
  CHECK(j["countermodel"]["model"]["size"] == 2);
  CHECK(run("refute -t J -g '(x -> x) = e'").code == 1);
  CHECK(run("refute -t J --premise '(x -> y) = e' -g '(((x -> y) -> y) * x) = x'").code <= 1);
}

TEST_CASE("models") {
  const Run r = run("models -t J --size 2 --jsonl");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    const auto m = eqa::Json::parse(line);
    CHECK(m["size"] == 2);
    CHECK(m["tables"].contains("->"));
    ++count;
  }
  CHECK(count == 12);
  CHECK(json_of(run("--json models -t J --size 2 --iso"))["count"] == 6);
  CHECK(json_of(run("--json models -t group --size 2"))["count"] == 2);
  CHECK(run("models -t J --size 0").code == 3);
}

TEST_CASE("check-proof on the bundled scripts") {
  for (const char* f : {"mc_flattening", "mc_closure_stability", "antisym_x_le_xy",
                        "antisym_xy_le_x", "antisym_x_y"}) {
    CHECK_MESSAGE(run("check-proof -p " + data(std::string("proofs/") + f + ".eqp")).code == 0, f);
  }
  CHECK(run("check-proof -t J -p " + data("proofs/mc_flattening.eqp")).code == 1);
  const auto j = json_of(run("--json check-proof -t J -p " + data("proofs/mc_flattening.eqp")));
  CHECK(j["valid"] == false);
  CHECK(j["line"] == 1);
}

TEST_CASE("check-proof rejects a tampered proof") {
  const std::string path = tmp_path("bad.eqp");
  std::ofstream(path) << "proof bad over J\n1: (x0 -> x1) = e by axiom refl [];\n";
  CHECK(run("check-proof -p " + path).code == 1);
}

TEST_CASE("analyze malcev") {
  const Run mon = run("analyze malcev -t monoid");
  CHECK(mon.code == 1);
  CHECK(mon.out.find("balanced") != std::string::npos);
  const auto lat = json_of(run("--json analyze malcev -t lattice"));
  CHECK(lat["status"] == "ImpossibleModel");
  CHECK(lat["clone_size"] == 18);
  const auto ll = json_of(run("analyze malcev --json -t left-loop"));
  CHECK(ll["status"] == "Found");
  CHECK(ll["term"] == "(x0 * (x1 -> x2))");
  CHECK(run("analyze malcev -t left-loop").code == 0);
}

TEST_CASE("analyze protomodular") {
  CHECK(run("analyze protomodular -t J").code == 0);
  const auto j = json_of(run("--json analyze protomodular -t J"));
  CHECK(j["all_proved"] == "true");
  CHECK(j["malcev_term"] == "(((x0 -> x1) -> x2) * (((x0 -> x1) -> x1) -> x0))");
  CHECK(run("analyze protomodular -t left-loop --theta '(x0 * x1)' --thetas '(x -> y)' "
            "--form swapped")
            .code == 0);
  CHECK(run("analyze protomodular -t group --theta '(x0 * x1)' --thetas '(x * y)'").code == 1);
  CHECK(run("analyze protomodular -t J --form sideways").code == 3);
}

TEST_CASE("analyze determination and closure") {
  const auto d = json_of(run("--json analyze determination -t J"));
  CHECK(d["semi"]["status"] == "Proved");
  CHECK(run("analyze determination -t J").code == 0);
  const auto c = json_of(run("--json analyze closure -t " + data("theories/weak_closure.eqt") +
                             " --term 't(x, y)' --max-seconds 3"));
  CHECK(c["equations"]["right_absorption"]["status"] == "Proved");
  CHECK(c["equations"]["flattening"]["status"] == "Proved");
}

TEST_CASE("analyze nogo, galois and antisym on bundled models") {
  const auto m = json_of(run("--json analyze nogo -t lattice -m " +
                             data("models/chain2_lattice.eqm") + " --order natural"));
  CHECK(m["certificate"]["kind"] == "Monotone");
  CHECK(m["certificate"]["conclusion"] == "NotMalcev");
  const auto i = json_of(run("--json analyze nogo -t " + data("theories/implicative.eqt") +
                             " -m " + data("models/b2_implication.eqm")));
  CHECK(i["certificate"]["kind"] == "Inflationary");
  CHECK(run("analyze nogo -t J -m " + data("models/j_boolean.eqm")).code == 1);
  CHECK(run("analyze galois -t RBJ").code == 0);
  CHECK(run("analyze antisym -t J -m " + data("models/j_boolean.eqm")).code == 0);
}

TEST_CASE("catalog") {
  const auto l = json_of(run("--json catalog list"));
  CHECK(l["axioms"].size() == 22);
  CHECK(l["theories"].size() > 5);
  const Run s = run("catalog show hoop");
  CHECK(s.code == 0);
  CHECK(s.out.find("theory hoop") == 0);
  CHECK(run("catalog show NOPE").code == 3);
}

TEST_CASE("usage and input errors exit 3") {
  CHECK(run("").code == 3);
  CHECK(run("bogus").code == 3);
  CHECK(run("prove -t J").code == 3);
  CHECK(run("prove -t J -g '(x *'").code == 3);
  CHECK(run("prove -t /nonexistent/theory.eqt -g 'x = x'").code == 3);
  CHECK(run("prove -t J -g '(x + y) = x'").code == 3);
  CHECK(run("check-proof -t J -p /nonexistent.eqp").code == 3);
  CHECK(run("--help").code == 0);
}

TEST_CASE("verify-paper nogo suite") {
  const Run r = run("verify-paper --suite nogo");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS [6]") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(run("verify-paper --suite nothing").code == 3);
}
