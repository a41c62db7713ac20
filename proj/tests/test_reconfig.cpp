#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "trieopt/errors.hpp"
#include "trieopt/reconfig.hpp"

using namespace trieopt;
namespace oracle = trieopt::testing;

namespace {

ReconfigPlan worked_example_plan() {
    const LabeledTree initial = assign_prefix_labels(oracle::seven_node_initial());
    return plan_labels(initial, oracle::seven_node_desired());
}

} // namespace

TEST_CASE("planning the worked example") {
    const ReconfigPlan plan = worked_example_plan();

    CHECK(plan.moving_nodes() == std::vector<NodeId>{4, 5});

    const PlanEntry& first = plan.entry(4);
    CHECK(first.moving);
    CHECK(first.anchor_label->str() == "0.2");
    CHECK(first.desired_label->str() == "0.2.2");
    CHECK(first.move_distance == 2);

    const PlanEntry& second = plan.entry(5);
    CHECK(second.moving);
    CHECK(second.anchor_label->str() == "0.2");
    CHECK(second.desired_label->str() == "0.2.2.1");
    CHECK(second.move_distance == 4);

    for (NodeId v : {0, 1, 2, 3, 6}) {
        CHECK_FALSE(plan.entry(v).moving);
        CHECK(plan.entry(v).move_distance == 0);
    }
    CHECK(plan.desired().label(4).str() == "0.2.2");
    CHECK(plan.desired().label(5).str() == "0.2.2.1");
}

TEST_CASE("planning a tree onto itself moves nothing") {
    const LabeledTree initial = assign_prefix_labels(oracle::seven_node_initial());
    const ReconfigPlan plan = plan_labels(initial, initial.topology());
    CHECK(plan.empty());
    CHECK(plan.desired() == initial);
}

TEST_CASE("re-homing the tail of a path") {
    // 0 - 1 - 2 becomes 0 - {1, 2}: node 2 climbs one hop and takes the next
    // free suffix under the root.
    const LabeledTree initial = assign_prefix_labels(TreeTopology(0, {{0, 1}, {1, 2}}));
    const ReconfigPlan plan = plan_labels(initial, TreeTopology(0, {{0, 1}, {0, 2}}));
    CHECK(plan.moving_nodes() == std::vector<NodeId>{2});
    CHECK(plan.entry(2).anchor_label->str() == "0");
    CHECK(plan.entry(2).desired_label->str() == "0.2");
    CHECK(plan.entry(2).move_distance == 1);
}

TEST_CASE("planning rejects mismatched inputs") {
    const LabeledTree initial = assign_prefix_labels(TreeTopology(0, {{0, 1}}));
    CHECK_THROWS_AS(plan_labels(initial, TreeTopology(0, {{0, 2}})), InvalidInputError);
    CHECK_THROWS_AS(plan_labels(initial, TreeTopology(1, {{1, 0}})), InvalidInputError);
}

TEST_CASE("move distance arithmetic") {
    const LabeledTree initial = assign_prefix_labels(oracle::seven_node_initial());
    const ReconfigPlan plan = worked_example_plan();
    const LabeledTree& desired = plan.desired();

    CHECK(move_distance(initial, desired, 4, 2) == 2);  // 3 + 1 - 2
    CHECK(move_distance(initial, desired, 5, 2) == 4);  // 4 + 2 - 2

    SUBCASE("adjacent to the anchor on both sides is a zero-distance move") {
        // Node 2 relabelled in place: one hop from the root before and after.
        std::map<NodeId, PrefixLabel> relabeled{{0, PrefixLabel({0})},
                                                {1, PrefixLabel({0, 1})},
                                                {2, PrefixLabel({0, 7})}};
        const LabeledTree before = assign_prefix_labels(TreeTopology(0, {{0, 1}, {0, 2}}));
        const LabeledTree after(TreeTopology(0, {{0, 1}, {0, 2}}), relabeled);
        CHECK(move_distance(before, after, 2, 0) == 0);
    }
}

TEST_CASE("feasibility under hop budgets") {
    const LabeledTree initial = assign_prefix_labels(oracle::seven_node_initial());
    const TreeTopology desired = oracle::seven_node_desired();

    EnergyBudget budgets = EnergyBudget::uniform(initial.topology(), 0);
    budgets.set(4, 2);
    budgets.set(5, 4);
    CHECK(feasible(initial, desired, budgets));

    budgets.set(5, 3);
    CHECK_FALSE(feasible(initial, desired, budgets));

    CHECK(feasible(initial, initial.topology(), EnergyBudget::uniform(initial.topology(), 0)));

    SUBCASE("structural mismatch is false, not an error") {
        const LabeledTree other = assign_prefix_labels(TreeTopology(0, {{0, 1}}));
        CHECK_FALSE(feasible(other, desired, budgets));
    }
}

TEST_CASE("simulating the worked example reproduces the canonical step order") {
    const MovementTrace trace = simulate(worked_example_plan());

    // Node 5 vacates first; both climb through 1 and the root; node 4 docks
    // at its anchor and relabels; node 5 follows and docks under it.
    REQUIRE(trace.steps.size() == 6);
    auto step = [&](std::size_t i) {
        return std::tuple<NodeId, NodeId, NodeId>{trace.steps[i].node, trace.steps[i].from,
                                                  trace.steps[i].to};
    };
    CHECK(step(0) == std::tuple<NodeId, NodeId, NodeId>{5, 4, 1});
    CHECK(step(1) == std::tuple<NodeId, NodeId, NodeId>{4, 1, 0});
    CHECK(step(2) == std::tuple<NodeId, NodeId, NodeId>{5, 1, 0});
    CHECK(step(3) == std::tuple<NodeId, NodeId, NodeId>{4, 0, 2});
    CHECK(step(4) == std::tuple<NodeId, NodeId, NodeId>{5, 0, 2});
    CHECK(step(5) == std::tuple<NodeId, NodeId, NodeId>{5, 2, 4});

    for (const MovementStep& s : trace.steps) CHECK(oracle::connected(s.snapshot));
    CHECK(trace.final.topology() == oracle::seven_node_desired());
    CHECK(trace.final.label(4).str() == "0.2.2");
    CHECK(trace.final.label(5).str() == "0.2.2.1");
}

TEST_CASE("simulating an empty plan") {
    const LabeledTree initial = assign_prefix_labels(oracle::seven_node_initial());
    const MovementTrace trace = simulate(plan_labels(initial, initial.topology()));
    CHECK(trace.steps.empty());
    CHECK(trace.final == initial);
}

TEST_CASE("a single leaf moving two hops takes exactly two steps") {
    const LabeledTree initial = assign_prefix_labels(TreeTopology(0, {{0, 1}, {0, 2}, {1, 3}}));
    const ReconfigPlan plan = plan_labels(initial, TreeTopology(0, {{0, 1}, {0, 2}, {2, 3}}));
    CHECK(plan.entry(3).move_distance == 2);
    const MovementTrace trace = simulate(plan);
    REQUIRE(trace.steps.size() == 2);
    for (const MovementStep& s : trace.steps) CHECK(oracle::connected(s.snapshot));
}

TEST_CASE("every snapshot of every random reconfiguration stays connected") {
    Rng rng(137);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(9)); // up to 10 nodes
        const TreeTopology initial_topo = random_tree(n, rng);
        const TreeTopology desired = random_tree(n, rng); // same node set, same root 0
        const LabeledTree initial = assign_prefix_labels(initial_topo);
        const ReconfigPlan plan = plan_labels(initial, desired);
        const MovementTrace trace = simulate(plan);

        std::map<NodeId, int> steps_per_node;
        for (const MovementStep& s : trace.steps) {
            CHECK(oracle::connected(s.snapshot));
            ++steps_per_node[s.node];
            ++checked;
        }
        for (const PlanEntry& e : plan.entries()) {
            CHECK(steps_per_node[e.node] == e.move_distance);
        }
        CHECK(trace.final.topology() == desired);

        // Moving set is closed under initial-tree descendants.
        for (const PlanEntry& e : plan.entries()) {
            if (!e.moving) continue;
            for (NodeId c : initial_topo.children(e.node)) CHECK(plan.entry(c).moving);
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("rebuilding a plan from its entries") {
    const ReconfigPlan plan = worked_example_plan();
    const ReconfigPlan rebuilt = plan_from_entries(plan.initial(), plan.entries());
    CHECK(rebuilt.desired() == plan.desired());
    CHECK(rebuilt.moving_nodes() == plan.moving_nodes());

    SUBCASE("a parent marked moving while its child stays is rejected") {
        std::vector<PlanEntry> corrupt = plan.entries();
        for (PlanEntry& e : corrupt) {
            if (e.node == 5) { // child of mover 4 left behind
                e.moving = false;
                e.anchor_label.reset();
                e.desired_label.reset();
                e.move_distance = 0;
            }
        }
        CHECK_THROWS_AS(plan_from_entries(plan.initial(), corrupt), InvalidInputError);
    }
    SUBCASE("a wrong move distance is rejected") {
        std::vector<PlanEntry> corrupt = plan.entries();
        for (PlanEntry& e : corrupt) {
            if (e.node == 4) e.move_distance = 7;
        }
        CHECK_THROWS_AS(plan_from_entries(plan.initial(), corrupt), InvalidInputError);
    }
    SUBCASE("an anchor that itself moves is rejected") {
        std::vector<PlanEntry> corrupt = plan.entries();
        for (PlanEntry& e : corrupt) {
            if (e.node == 5) e.anchor_label = PrefixLabel({0, 2, 2}); // node 4's new label
        }
        CHECK_THROWS_AS(plan_from_entries(plan.initial(), corrupt), InvalidInputError);
    }
}
