#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gtmm/cli_io.hpp"

using namespace gtmm;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("GTMM_CLI");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.output.append(buf, n);
    int st = pclose(p);
    r.exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

bool has_line_with(const std::string& out, const std::string& needle) {
    return out.find(needle) != std::string::npos;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/gtmm_test_" + name;
    std::ofstream f(path, std::ios::trunc);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("format_real") {
    CHECK(format_real(2.0) == "2");
    CHECK(format_real(16.392304845413264) == "16.3923048454");
    CHECK(format_real(1.0 / 3.0) == "0.333333333333");
    CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_real(std::nan("")) == "nan");
    CHECK(format_real(-0.5) == "-0.5");
}

TEST_CASE("hex_digest matches FNV-1a 64 test vectors") {
    CHECK(hex_digest("") == "cbf29ce484222325");
    CHECK(hex_digest("a") == "af63dc4c8601ec8c");
    CHECK(hex_digest("foobar") == "85944171f73967e8");
    CHECK(hex_digest("x") != hex_digest("y"));
}

TEST_CASE("ResultRecord round-trips through render/parse") {
    ResultRecord r;
    r.command = "tpp search";
    r.subject = "family=symmetric;n=4";
    r.inputs_digest = hex_digest("payload");
    r.seed = 11;
    r.outputs = {{"rank", "0"}, {"product", "36"}, {"ratio", format_real(1.127)}};
    std::string line = r.render();
    ResultRecord q = ResultRecord::parse(line);
    CHECK(q.command == r.command);
    CHECK(q.subject == r.subject);
    CHECK(q.inputs_digest == r.inputs_digest);
    REQUIRE(q.seed.has_value());
    CHECK(*q.seed == 11);
    CHECK(q.version == kToolVersion);
    CHECK(q.outputs == r.outputs);
    CHECK(q.render() == line);
    SUBCASE("seedless record omits the field") {
        r.seed.reset();
        ResultRecord s = ResultRecord::parse(r.render());
        CHECK(!s.seed.has_value());
    }
    SUBCASE("malformed field is rejected") {
        CHECK_THROWS_AS(ResultRecord::parse("command=x|garbage"), InvalidSpec);
    }
}

TEST_CASE("element literals") {
    Element e = {2, 0, 1};
    CHECK(render_element(e) == "2,0,1");
    CHECK(parse_element("2,0,1") == e);
    CHECK(parse_element("5") == Element{5});
    CHECK_THROWS_AS(parse_element(""), InvalidSpec);
    CHECK_THROWS_AS(parse_element("1,x"), InvalidSpec);
}

TEST_CASE("sets file parsing") {
    SUBCASE("valid file with comments and blank lines") {
        std::istringstream in(
            "# a triple in the cyclic group\n"
            "family=cyclic;n=6\n"
            "\n"
            "S:\n0\n1\n"
            "T:\n0\n2  # trailing comment\n"
            "U:\n0\n");
        SetsFile f = parse_sets_file(in);
        CHECK(f.spec.render() == "family=cyclic;n=6");
        CHECK(f.sets[0].size() == 2);
        CHECK(f.sets[1] == std::vector<Element>{{0}, {2}});
        CHECK(f.sets[2] == std::vector<Element>{{0}});
    }
    SUBCASE("empty input lacks the spec line") {
        std::istringstream in("# nothing\n");
        CHECK_THROWS_AS(parse_sets_file(in), InvalidSpec);
    }
    SUBCASE("element before any block header") {
        std::istringstream in("family=cyclic;n=6\n0\nS:\n0\nT:\n0\nU:\n0\n");
        CHECK_THROWS_AS(parse_sets_file(in), InvalidSpec);
    }
    SUBCASE("a missing block is rejected") {
        std::istringstream in("family=cyclic;n=6\nS:\n0\nT:\n0\n");
        CHECK_THROWS_AS(parse_sets_file(in), InvalidSpec);
    }
    SUBCASE("load_sets_file on a missing path") {
        CHECK_THROWS_AS(load_sets_file("/nonexistent/sets.txt"), InvalidSpec);
    }
}

TEST_CASE("cli: group info") {
    RunResult r = run_cli("group info \"family=symmetric;n=3\"");
    CHECK(r.exit_code == 0);
    CHECK(has_line_with(r.output, "order=6"));
    CHECK(has_line_with(r.output, "classes=3"));
    CHECK(has_line_with(r.output, "degrees=1,1,2"));
    CHECK(has_line_with(r.output, "n_g=2"));
}

TEST_CASE("cli: bounds omega closed form") {
    RunResult r = run_cli("bounds omega --stu 64 --degrees 2,2,2,2");
    CHECK(r.exit_code == 0);
    CHECK(has_line_with(r.output, "omega_bound=2"));
    CHECK(has_line_with(r.output, "vacuous=false"));
}

TEST_CASE("cli: lie table reproduces the bound column") {
    RunResult r = run_cli("lie table --n 4 --m 2");
    CHECK(r.exit_code == 0);
    CHECK(has_line_with(r.output, "name=three_conjugates_real|"));
    CHECK(has_line_with(r.output, "|lie_bound=inf|"));
    CHECK(has_line_with(r.output, "|lie_bound=6|"));
    CHECK(has_line_with(r.output, "|lie_bound=4|"));
    CHECK(has_line_with(r.output, "meets_packing=yes"));
}

TEST_CASE("cli: tpp check on a sets file") {
    std::string path = write_temp(
        "sets_ok.txt", "family=cyclic;n=6\nS:\n0\n1\nT:\n0\n2\nU:\n0\n");
    RunResult r = run_cli("tpp check \"family=cyclic;n=6\" --sets " + path);
    CHECK(r.exit_code == 0);
    CHECK(has_line_with(r.output, "verdict=true"));
    CHECK(has_line_with(r.output, "product=4"));
    SUBCASE("a failing triple reports verdict=false") {
        std::string bad = write_temp(
            "sets_bad.txt", "family=cyclic;n=6\nS:\n0\n1\nT:\n0\n2\nU:\n0\n3\n");
        RunResult rb = run_cli("tpp check \"family=cyclic;n=6\" --sets " + bad);
        CHECK(rb.exit_code == 0);
        CHECK(has_line_with(rb.output, "verdict=false"));
    }
    SUBCASE("group mismatch is a domain error") {
        RunResult rm = run_cli("tpp check \"family=cyclic;n=8\" --sets " + path);
        CHECK(rm.exit_code == 1);
    }
}

TEST_CASE("cli: exit codes") {
    SUBCASE("domain error -> 1") {
        // stu beyond |G|^(3/2) is inconsistent input
        RunResult r = run_cli("bounds omega --stu 15 --degrees 1,1,2");
        CHECK(r.exit_code == 1);
        CHECK(has_line_with(r.output, "error"));
    }
    SUBCASE("usage error -> 2") {
        CHECK(run_cli("frobnicate").exit_code == 2);
        CHECK(run_cli("bounds omega --stu 10").exit_code == 2);
        CHECK(run_cli("tpp search \"family=symmetric;n=3\" --mode anneal").exit_code == 2);
        CHECK(run_cli("tpp search \"family=symmetric;n=3\" --mode nonsense").exit_code == 2);
    }
}

TEST_CASE("cli: seeded search is byte-deterministic") {
    std::string args =
        "tpp search \"family=symmetric;n=3\" --mode anneal --budget 2000 --seed 7";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(has_line_with(a.output, "seed=7"));
    CHECK(has_line_with(a.output, "verdict=true"));
}

TEST_CASE("cli: --results appends parseable records") {
    std::string path = "/tmp/gtmm_test_results.txt";
    std::remove(path.c_str());
    RunResult r = run_cli("--results " + path + " group info \"family=dihedral;n=4\"");
    CHECK(r.exit_code == 0);
    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    ResultRecord rec = ResultRecord::parse(line);
    CHECK(rec.command == "group info");
    CHECK(rec.subject == "family=dihedral;n=4");
    CHECK(rec.version == kToolVersion);
    bool saw_order = false;
    for (const auto& [k, v] : rec.outputs)
        if (k == "order") {
            saw_order = true;
            CHECK(v == "8");
        }
    CHECK(saw_order);
}
