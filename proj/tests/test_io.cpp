#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"

#include "trieopt/errors.hpp"
#include "trieopt/io.hpp"
#include "trieopt/reconfig.hpp"

using namespace trieopt;
namespace oracle = trieopt::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("trieopt_io_test_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

} // namespace

TEST_CASE("topology files round-trip") {
    TempDir dir;
    const TreeTopology tree = oracle::seven_node_initial();
    io::write_topology(dir.path / "t.json", tree);
    CHECK(io::read_topology(dir.path / "t.json") == tree);
}

TEST_CASE("malformed and invalid topology files") {
    TempDir dir;
    SUBCASE("syntax errors carry the parser's position") {
        write_text(dir.path / "bad.json", "{\"root\": 0,\n  \"edges\": [[0, 1]\n}");
        try {
            io::read_topology(dir.path / "bad.json");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("line") != std::string::npos);
        }
    }
    SUBCASE("wrong types are parse failures") {
        write_text(dir.path / "typed.json", R"({"root": "zero", "edges": []})");
        CHECK_THROWS_AS(io::read_topology(dir.path / "typed.json"), ParseError);
    }
    SUBCASE("well-formed non-trees are invalid input") {
        write_text(dir.path / "cycle.json", R"({"root": 0, "edges": [[0,1],[1,2],[2,1]]})");
        CHECK_THROWS_AS(io::read_topology(dir.path / "cycle.json"), InvalidInputError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(io::read_topology(dir.path / "absent.json"), ParseError);
    }
}

TEST_CASE("flow files round-trip and validate") {
    TempDir dir;
    FlowSet flows;
    flows.add(4, 6, 0.5);
    flows.add(5, 0, 0.25);
    io::write_flows(dir.path / "f.json", flows);
    CHECK(io::read_flows(dir.path / "f.json").entries() == flows.entries());

    write_text(dir.path / "neg.json", R"({"flows": [{"src": 1, "dst": 2, "mbps": -3.0}]})");
    CHECK_THROWS_AS(io::read_flows(dir.path / "neg.json"), InvalidInputError);
    write_text(dir.path / "self.json", R"({"flows": [{"src": 1, "dst": 1, "mbps": 1.0}]})");
    CHECK_THROWS_AS(io::read_flows(dir.path / "self.json"), InvalidInputError);
}

TEST_CASE("budget files round-trip and validate") {
    TempDir dir;
    EnergyBudget budgets;
    budgets.set(0, 0);
    budgets.set(1, 3);
    io::write_budgets(dir.path / "b.json", budgets);
    CHECK(io::read_budgets(dir.path / "b.json").entries() == budgets.entries());

    write_text(dir.path / "neg.json", R"({"budgets": [{"id": 1, "hops": -2}]})");
    CHECK_THROWS_AS(io::read_budgets(dir.path / "neg.json"), InvalidInputError);
    write_text(dir.path / "dup.json", R"({"budgets": [{"id": 1, "hops": 2}, {"id": 1, "hops": 3}]})");
    CHECK_THROWS_AS(io::read_budgets(dir.path / "dup.json"), InvalidInputError);
}

TEST_CASE("plan files round-trip through the planner") {
    TempDir dir;
    const LabeledTree initial = assign_prefix_labels(oracle::seven_node_initial());
    const ReconfigPlan plan = plan_labels(initial, oracle::seven_node_desired());
    io::write_plan(dir.path / "p.json", plan);

    const ReconfigPlan reread = plan_from_entries(initial, io::read_plan_entries(dir.path / "p.json"));
    CHECK(reread.desired() == plan.desired());
    CHECK(reread.moving_nodes() == plan.moving_nodes());
    CHECK(reread.entry(4).move_distance == 2);
}

TEST_CASE("trace files carry steps and the final labeling") {
    TempDir dir;
    const LabeledTree initial = assign_prefix_labels(oracle::seven_node_initial());
    const MovementTrace trace = simulate(plan_labels(initial, oracle::seven_node_desired()));
    io::write_trace(dir.path / "trace.json", trace);

    std::ifstream in(dir.path / "trace.json");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("\"steps\"") != std::string::npos);
    CHECK(text.find("\"0.2.2.1\"") != std::string::npos);
}

TEST_CASE("summary records render as a single line") {
    const io::SummaryRecord record{"optimal", "admissible", 2.0, 1.0, 12, 3, 0.5};
    const std::string line = io::summary_line(record);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(line.find("\"algorithm\":\"optimal\"") != std::string::npos);
    CHECK(line.find("\"traffic_final\":1.0") != std::string::npos);
}
