#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "stablab/homology.hpp"
#include "stablab/io.hpp"
#include "stablab/models.hpp"

using nlohmann::json;
using namespace stablab;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI with the given arguments inside `dir`, capturing stdout.
RunResult run_cli(const fs::path& dir, const std::string& args, bool quiet_stderr = false) {
    std::string cmd = "cd " + dir.string() + " && " + STABLAB_CLI_PATH + " " + args;
    if (quiet_stderr) cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof(buf), pipe)) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Fresh scratch directory per test case, removed on scope exit.
struct Scratch {
    fs::path dir;
    Scratch() {
        std::mt19937_64 rng(std::random_device{}());
        dir = fs::temp_directory_path() / ("stablab-cli-" + std::to_string(rng()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
};

}  // namespace

TEST_CASE("generators write parseable complexes with manifests") {
    Scratch s;

    auto r = run_cli(s.dir, "gen quotient-simplex --n 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "quotient-simplex.json\n");

    std::string payload = slurp(s.dir / "quotient-simplex.json");
    auto parsed = any_complex_from_json(payload);
    CHECK_FALSE(parsed.is_simplicial);
    CHECK(parsed.semi.dim() == 3);
    for (int k = 0; k <= 3; ++k) CHECK(parsed.semi.cells(k) == 1);

    json doc = json::parse(payload);
    CHECK(doc["provenance"]["generator"] == "quotient-simplex");
    CHECK(doc["provenance"]["parameters"]["n"] == 4);
    CHECK(doc["provenance"]["budgets"].contains("faces"));

    json manifest = json::parse(slurp(s.dir / "quotient-simplex.json.manifest.json"));
    CHECK(manifest["command"] == "quotient-simplex");
    CHECK(manifest["artifacts"] == json::array({"quotient-simplex.json"}));
    CHECK(manifest["seed"] == 0);

    r = run_cli(s.dir, "gen polygon-arcs --m 6 --out hex.json");
    CHECK(r.exit_code == 0);
    auto hex = any_complex_from_json(slurp(s.dir / "hex.json"));
    REQUIRE(hex.is_simplicial);
    CHECK(hex.simplicial.vertices().size() == 9);
    CHECK(hex.simplicial.maximal_simplices().size() == 14);

    r = run_cli(s.dir, "gen wedge --g 2 --k 3 --out w.json");
    CHECK(r.exit_code == 0);
    auto w = any_complex_from_json(slurp(s.dir / "w.json"));
    REQUIRE(w.is_simplicial);
    CHECK(w.simplicial.vertices().size() == 6);
    CHECK(w.simplicial.maximal_simplices().size() == 9);
}

TEST_CASE("the tether generator records its truncation budgets") {
    Scratch s;
    auto r = run_cli(s.dir, "gen tether --n 3 --d 1 --coconnected --words 4 --bound 6");
    CHECK(r.exit_code == 0);

    json doc = json::parse(slurp(s.dir / "tether.json"));
    CHECK(doc["vertex_count"] == 79);
    CHECK(doc["provenance"]["parameters"]["coconnected"] == true);
    CHECK(doc["provenance"]["budgets"]["word_length"] == 4);
    CHECK(doc["provenance"]["budgets"]["crossing_bound"] == 6);

    auto parsed = any_complex_from_json(slurp(s.dir / "tether.json"));
    REQUIRE(parsed.is_simplicial);
    CHECK(parsed.simplicial.vertices().size() == 79);
}

TEST_CASE("identical invocations produce byte-identical artifacts") {
    Scratch s;
    for (std::string args : {std::string("gen polygon-arcs --m 7 --out a.json"),
                             std::string("gen chain --g 2 --bound 1 --out a.json"),
                             std::string("gen tether --n 3 --d 1 --words 2 --bound 4 --out a.json")}) {
        auto r1 = run_cli(s.dir, args);
        REQUIRE(r1.exit_code == 0);
        std::string first = slurp(s.dir / "a.json");
        std::string first_manifest = slurp(s.dir / "a.json.manifest.json");

        auto r2 = run_cli(s.dir, args);
        REQUIRE(r2.exit_code == 0);
        CHECK(slurp(s.dir / "a.json") == first);
        CHECK(slurp(s.dir / "a.json.manifest.json") == first_manifest);
    }
}

TEST_CASE("verify homology reproduces the in-process betti table") {
    Scratch s;
    REQUIRE(run_cli(s.dir, "gen polygon-arcs --m 6 --out hex.json").exit_code == 0);

    auto r = run_cli(s.dir, "verify homology hex.json");
    CHECK(r.exit_code == 0);
    CHECK(r.out == betti_csv(reduced_homology(polygon_arc_complex(6))));
    CHECK(r.out.find("2,1,") != std::string::npos);

    REQUIRE(run_cli(s.dir, "verify homology hex.json --out betti.csv").exit_code == 0);
    CHECK(slurp(s.dir / "betti.csv") == r.out);
}

TEST_CASE("verify ordered-connectivity reports on a generated complex") {
    Scratch s;
    REQUIRE(run_cli(s.dir, "gen wedge --g 2 --k 3 --out w.json").exit_code == 0);
    auto r = run_cli(s.dir, "verify ordered-connectivity w.json --n 1");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["hypotheses"][0]["pass"] == true);
    CHECK(doc["conclusion_crosscheck"].get<std::string>().rfind("confirmed", 0) == 0);
}

TEST_CASE("verify stability parses connectivity formulas and reports ranges") {
    Scratch s;

    auto r = run_cli(s.dir, "verify stability --cx \"(n-3)/2\" --imax 10");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["feasible"] == true);
    CHECK(doc["c"] == 2);

    r = run_cli(s.dir, "verify stability --cx \"n-3\" --imax 10");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["c"] == 1);

    r = run_cli(s.dir, "verify stability --cx \"(n-3)/3\" --imax 8", true);
    CHECK(r.exit_code == 1);
    doc = json::parse(r.out);
    CHECK(doc["feasible"] == false);
    CHECK(doc["infeasibility"].get<std::string>().find("slope") != std::string::npos);

    r = run_cli(s.dir, "verify stability --cx \"2n+5\" --imax 5", true);
    CHECK(r.exit_code == 2);
}

TEST_CASE("specseq subcommands emit page and range tables") {
    Scratch s;

    auto r = run_cli(s.dir, "specseq braid --n 5 --imax 6");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["n"] == 5);
    CHECK(doc.contains("grid"));
    CHECK(doc.contains("d1"));
    CHECK(doc.contains("e2"));
    CHECK(doc["audits"].size() == 1);
    CHECK(doc["audits"][0]["hypotheses"][0]["pass"] == true);

    r = run_cli(s.dir, "specseq mcg --imax 2");
    CHECK(r.exit_code == 0);
    json rows = json::parse(r.out);
    CHECK(rows.size() == 12);  // four maps per degree, degrees 0..2
    for (const auto& row : rows) {
        CHECK(row.contains("map"));
        CHECK(row.contains("iso_from"));
    }
}

TEST_CASE("usage errors and budget overruns map to distinct exit codes") {
    Scratch s;

    CHECK(run_cli(s.dir, "gen bogus --n 3", true).exit_code == 2);
    CHECK(run_cli(s.dir, "gen chain --g 2", true).exit_code == 2);
    CHECK(run_cli(s.dir, "verify nothing", true).exit_code == 2);
    CHECK(run_cli(s.dir, "gen polygon-arcs --m 9 --budget-faces 10", true).exit_code == 3);

    // the environment override kicks in, and an explicit flag beats it
    std::string env = "STABLAB_BUDGET_FACES=10 ";
    std::string cmd = "cd " + s.dir.string() + " && " + env + STABLAB_CLI_PATH +
                      " gen polygon-arcs --m 6 --out e.json >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 3);
    cmd = "cd " + s.dir.string() + " && " + env + STABLAB_CLI_PATH +
          " gen polygon-arcs --m 6 --budget-faces 500000 --out e.json >/dev/null 2>&1";
    status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 0);
}
