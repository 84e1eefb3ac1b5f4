#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "foon/exporter.hpp"
#include "foon/parse.hpp"
#include "support.hpp"

using namespace foon;
using namespace foon::testing;

namespace {

struct CliResult {
    int exitCode;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CliResult runCli(const std::string &args) {
    auto dir = std::filesystem::temp_directory_path();
    auto outPath = dir / "foon_cli_out.txt";
    auto errPath = dir / "foon_cli_err.txt";
    std::string cmd = std::string(FOON_CLI_PATH) + " " + args + " >" +
                      outPath.string() + " 2>" + errPath.string();
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return CliResult{code, slurp(outPath), slurp(errPath)};
}

std::string q(const std::string &path) { return "'" + path + "'"; }

}  // namespace

TEST_CASE("stats on the add-yoghurt file") {
    auto r = runCli("stats " + q(dataPath("add_yoghurt.foon")));
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("units: 1") != std::string::npos);
    CHECK(r.out.find("object nodes: 5") != std::string::npos);
    CHECK(r.out.find("motions: 1") != std::string::npos);
}

TEST_CASE("merge writes a reparseable file and dedupes") {
    auto out = std::filesystem::temp_directory_path() / "merged.foon";
    auto r = runCli("merge " + q(dataPath("add_yoghurt.foon")) + " " +
                    q(dataPath("add_yoghurt.foon")) + " -o " + q(out.string()));
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("units: 1") != std::string::npos);
    CHECK(parse_subgraph(slurp(out)).size() == 1);

    r = runCli("merge " + q(dataPath("chain.foon")) + " " +
               q(dataPath("diamond.foon")));
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("units: 5") != std::string::npos);
}

TEST_CASE("merge reports parse errors with file and line") {
    auto bad = std::filesystem::temp_directory_path() / "bad.foon";
    std::ofstream(bad) << "O\tbowl\t0\nZ\tnope\n";
    auto r = runCli("merge " + q(bad.string()));
    CHECK(r.exitCode == 2);
    CHECK(r.err.find("bad.foon") != std::string::npos);
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("retrieve with IDS on the chain corpus") {
    auto r = runCli("retrieve " + q(dataPath("chain.foon")) + " -k " +
                    q(dataPath("chain_kitchen.txt")) + " -g bread -a ids");
    CHECK(r.exitCode == 0);
    CHECK(r.err.find("task tree size: 3") != std::string::npos);
    CHECK(parse_subgraph(r.out).size() == 3);
}

TEST_CASE("retrieve errors use the documented exit codes") {
    // h1 without rates is a usage error
    auto r = runCli("retrieve " + q(dataPath("chain.foon")) + " -k " +
                    q(dataPath("chain_kitchen.txt")) + " -g bread -a h1");
    CHECK(r.exitCode == 1);

    // unknown goal
    r = runCli("retrieve " + q(dataPath("chain.foon")) + " -k " +
               q(dataPath("chain_kitchen.txt")) + " -g pizza");
    CHECK(r.exitCode == 3);
    CHECK(r.err.find("GoalUnknown") != std::string::npos);

    // dead end
    r = runCli("retrieve " + q(dataPath("deadend.foon")) + " -k " +
               q(dataPath("deadend_kitchen.txt")) +
               " -g cake -s iced -a h2");
    CHECK(r.exitCode == 3);
    CHECK(r.err.find("DeadEnd") != std::string::npos);

    // depth-limited chain
    r = runCli("retrieve " + q(dataPath("chain.foon")) + " -k " +
               q(dataPath("chain_kitchen.txt")) + " -g bread -a ids -d 2");
    CHECK(r.exitCode == 3);
    CHECK(r.err.find("NotFoundWithinDepth") != std::string::npos);

    // ambiguous name-only goal: "dough" has two states in the chain corpus
    r = runCli("retrieve " + q(dataPath("chain.foon")) + " -k " +
               q(dataPath("chain_kitchen.txt")) + " -g dough");
    CHECK(r.exitCode == 3);
    CHECK(r.err.find("ambiguous") != std::string::npos);

    // parse failure
    r = runCli("retrieve /nonexistent.foon -k " +
               q(dataPath("chain_kitchen.txt")) + " -g bread");
    CHECK(r.exitCode == 2);
}

TEST_CASE("retrieve with a goal already in the kitchen") {
    auto r = runCli("retrieve " + q(dataPath("chain.foon")) + " -k " +
                    q(dataPath("chain_kitchen.txt")) + " -g flour");
    CHECK(r.exitCode == 0);
    CHECK(r.err.find("task tree size: 0") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("retrieve honors goal states and h1 rates") {
    auto r = runCli("retrieve " + q(dataPath("branching.foon")) + " -k " +
                    q(dataPath("branching_kitchen.txt")) +
                    " -g drink -s ready -a h1 --rates " + q(dataPath("rates.txt")));
    CHECK(r.exitCode == 0);
    CHECK(r.err.find("task tree size: 4") != std::string::npos);

    r = runCli("retrieve " + q(dataPath("branching.foon")) + " -k " +
               q(dataPath("branching_kitchen.txt")) + " -g drink -s ready -a h2");
    CHECK(r.exitCode == 0);
    CHECK(r.err.find("task tree size: 2") != std::string::npos);
}

TEST_CASE("export round-trips through JSON") {
    auto json = std::filesystem::temp_directory_path() / "units.json";
    auto r = runCli("export " + q(dataPath("branching.foon")) + " -f json -o " +
                    q(json.string()));
    CHECK(r.exitCode == 0);
    auto back = runCli("export " + q(json.string()) + " -f foon");
    CHECK(back.exitCode == 0);
    CHECK(back.out ==
          serialize_subgraph(parse_subgraph(read_file(dataPath("branching.foon")))));
}

TEST_CASE("export emits DOT") {
    auto r = runCli("export " + q(dataPath("add_yoghurt.foon")) + " -f dot");
    CHECK(r.exitCode == 0);
    CHECK(r.out.rfind("digraph", 0) == 0);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(runCli("frobnicate").exitCode == 1);
    CHECK(runCli("retrieve").exitCode == 1);
}

TEST_CASE("CLI output is deterministic") {
    std::string args = "retrieve " + q(dataPath("branching.foon")) + " -k " +
                       q(dataPath("branching_kitchen.txt")) + " -g drink -s ready -a h2";
    CHECK(runCli(args).out == runCli(args).out);
}
