#include "trieopt/reconfig.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "trieopt/errors.hpp"

namespace trieopt {

namespace {

std::string id_str(NodeId v) { return std::to_string(v); }

// Smallest suffix >= 1 that no settled child of this parent position uses yet.
std::uint32_t next_free_suffix(const PrefixLabel& parent_label,
                               const std::vector<NodeId>& desired_children,
                               const std::map<NodeId, PrefixLabel>& final_labels) {
    std::set<std::uint32_t> used;
    for (NodeId c : desired_children) {
        const auto it = final_labels.find(c);
        if (it != final_labels.end() && it->second.length() == parent_label.length() + 1) {
            used.insert(it->second.last_symbol());
        }
    }
    std::uint32_t suffix = 1;
    while (used.count(suffix)) ++suffix;
    return suffix;
}

} // namespace

ReconfigPlan::ReconfigPlan(LabeledTree initial, LabeledTree desired, std::vector<PlanEntry> entries)
    : initial_(std::move(initial)), desired_(std::move(desired)), entries_(std::move(entries)) {
    const TreeTopology& init_topo = initial_.topology();
    const TreeTopology& final_topo = desired_.topology();
    if (init_topo.nodes() != final_topo.nodes()) {
        throw InvalidInputError("plan trees must share one node set");
    }
    if (init_topo.root() != final_topo.root()) {
        throw InvalidInputError("plan trees must share the root");
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const PlanEntry& a, const PlanEntry& b) { return a.node < b.node; });
    if (entries_.size() != init_topo.size()) {
        throw InvalidInputError("plan needs exactly one entry per node");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].node != init_topo.nodes()[i]) {
            throw InvalidInputError("plan entries do not cover the node set");
        }
    }

    for (const PlanEntry& e : entries_) {
        if (!e.moving) {
            if (e.anchor_label || e.desired_label) {
                throw InvalidInputError("non-moving node " + id_str(e.node) + " carries movement labels");
            }
            if (e.move_distance != 0) {
                throw InvalidInputError("non-moving node " + id_str(e.node) + " has nonzero move distance");
            }
            if (desired_.label(e.node) != initial_.label(e.node)) {
                throw InvalidInputError("non-moving node " + id_str(e.node) + " changes label");
            }
            continue;
        }
        if (e.node == init_topo.root()) {
            throw InvalidInputError("the root cannot move");
        }
        if (!e.anchor_label || !e.desired_label) {
            throw InvalidInputError("moving node " + id_str(e.node) + " lacks anchor or desired label");
        }
        if (desired_.label(e.node) != *e.desired_label) {
            throw InvalidInputError("desired label of node " + id_str(e.node) +
                                    " disagrees with the desired tree");
        }
        const auto anchor = initial_.node_with_label(*e.anchor_label);
        if (!anchor.has_value()) {
            throw InvalidInputError("anchor label " + e.anchor_label->str() + " names no node");
        }
        if (entry(*anchor).moving) {
            throw InvalidInputError("anchor " + id_str(*anchor) + " of node " + id_str(e.node) +
                                    " is itself moving");
        }
        if (!e.anchor_label->is_prefix_of(*e.desired_label) || *e.anchor_label == *e.desired_label) {
            throw InvalidInputError("anchor of node " + id_str(e.node) +
                                    " is not an ancestor of its destination");
        }
        const int expected = move_distance(initial_, desired_, e.node, *anchor);
        if (e.move_distance != expected) {
            throw InvalidInputError("move distance of node " + id_str(e.node) + " is " +
                                    std::to_string(e.move_distance) + ", expected " +
                                    std::to_string(expected));
        }
        // A departing parent strands any child left behind.
        for (NodeId c : init_topo.children(e.node)) {
            if (!entry(c).moving) {
                throw InvalidInputError("node " + id_str(e.node) + " moves but its child " +
                                        id_str(c) + " does not");
            }
        }
    }
}

const PlanEntry& ReconfigPlan::entry(NodeId v) const {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                                     [](const PlanEntry& e, NodeId id) { return e.node < id; });
    if (it == entries_.end() || it->node != v) {
        throw InvalidInputError("no plan entry for node " + id_str(v));
    }
    return *it;
}

std::vector<NodeId> ReconfigPlan::moving_nodes() const {
    std::vector<NodeId> out;
    for (const PlanEntry& e : entries_) {
        if (e.moving) out.push_back(e.node);
    }
    return out;
}

bool ReconfigPlan::empty() const {
    return std::none_of(entries_.begin(), entries_.end(), [](const PlanEntry& e) { return e.moving; });
}

ReconfigPlan plan_labels(const LabeledTree& initial, const TreeTopology& desired) {
    const TreeTopology& init_topo = initial.topology();
    if (init_topo.nodes() != desired.nodes()) {
        throw InvalidInputError("initial and desired trees must share one node set");
    }
    if (init_topo.root() != desired.root()) {
        throw InvalidInputError("initial and desired trees must share the root");
    }

    std::map<NodeId, PlanEntry> entries;
    std::map<NodeId, PrefixLabel> final_labels;
    entries[desired.root()] = PlanEntry{desired.root(), false, std::nullopt, std::nullopt, 0};
    final_labels.emplace(desired.root(), initial.label(desired.root()));

    for (NodeId v : desired.bfs_order()) {
        const std::vector<NodeId> children = desired.children(v);
        if (children.empty()) continue;
        const PlanEntry& parent_entry = entries.at(v);
        const PrefixLabel parent_label = final_labels.at(v);

        if (!parent_entry.moving) {
            // Settle the keepers first so their suffixes are taken before any
            // desired label under this parent is generated.
            for (NodeId c : children) {
                const PrefixLabel& c_initial = initial.label(c);
                const bool keeps_place = c_initial.length() >= 2 && c_initial.parent() == parent_label;
                entries[c] = PlanEntry{c, !keeps_place, std::nullopt, std::nullopt, 0};
                if (keeps_place) final_labels.emplace(c, c_initial);
            }
            for (NodeId c : children) {
                PlanEntry& e = entries.at(c);
                if (!e.moving) continue;
                e.anchor_label = parent_label;
                e.desired_label = parent_label.child(next_free_suffix(parent_label, children, final_labels));
                final_labels.emplace(c, *e.desired_label);
            }
        } else {
            // Children of a mover are dragged along and inherit its anchor.
            for (NodeId c : children) {
                PlanEntry e{c, true, parent_entry.anchor_label, std::nullopt, 0};
                e.desired_label = parent_label.child(next_free_suffix(parent_label, children, final_labels));
                final_labels.emplace(c, *e.desired_label);
                entries[c] = std::move(e);
            }
        }
    }

    LabeledTree desired_labeled(desired, final_labels);
    std::vector<PlanEntry> flat;
    flat.reserve(entries.size());
    for (auto& [v, e] : entries) {
        if (e.moving) {
            const NodeId anchor = *initial.node_with_label(*e.anchor_label);
            e.move_distance = move_distance(initial, desired_labeled, v, anchor);
        }
        flat.push_back(std::move(e));
    }
    return ReconfigPlan(initial, std::move(desired_labeled), std::move(flat));
}

int move_distance(const LabeledTree& initial, const LabeledTree& desired, NodeId v, NodeId anchor) {
    return label_distance(initial.label(v), initial.label(anchor)) +
           label_distance(desired.label(v), desired.label(anchor)) - 2;
}

bool feasible(const LabeledTree& initial, const TreeTopology& desired, const EnergyBudget& budgets) {
    try {
        if (!budgets.covers(initial.topology())) return false;
        const ReconfigPlan plan = plan_labels(initial, desired);
        for (const PlanEntry& e : plan.entries()) {
            if (e.moving && e.move_distance > budgets.hops(e.node)) return false;
        }
        return true;
    } catch (const InvalidInputError&) {
        return false;
    }
}

namespace {

// Mutable tree state during a simulation run.
struct SimState {
    std::map<NodeId, NodeId> parent; // root absent
    std::map<NodeId, int> child_count;
    NodeId root;

    bool is_leaf(NodeId v) const {
        const auto it = child_count.find(v);
        return it == child_count.end() || it->second == 0;
    }
    std::optional<NodeId> parent_of(NodeId v) const {
        const auto it = parent.find(v);
        if (it == parent.end()) return std::nullopt;
        return it->second;
    }
    void reparent(NodeId v, NodeId to) {
        --child_count[parent.at(v)];
        parent[v] = to;
        ++child_count[to];
    }
    TreeTopology snapshot() const { return TreeTopology::from_parent_map(root, parent); }
};

} // namespace

MovementTrace simulate(const ReconfigPlan& plan) {
    const LabeledTree& initial = plan.initial();
    const LabeledTree& desired = plan.desired();
    const TreeTopology& init_topo = initial.topology();

    SimState state;
    state.root = init_topo.root();
    for (const auto& [p, c] : init_topo.edges()) {
        state.parent[c] = p;
        ++state.child_count[p];
    }

    // Precompute each mover's waypoints: up the initial tree to its anchor,
    // then down the rebuilt subtree to its destination parent. The climb
    // portion follows edges that stay in place until the convoy has passed;
    // the descent portion waits for each position's occupant to arrive.
    struct Route {
        NodeId node = 0;
        int initial_depth = 0;
        std::vector<NodeId> targets;
        std::size_t climb_count = 0;
        std::size_t next = 0;
    };
    std::vector<Route> routes;
    std::map<NodeId, bool> arrived;

    for (NodeId v : plan.moving_nodes()) {
        const PlanEntry& e = plan.entry(v);
        const NodeId anchor = *initial.node_with_label(*e.anchor_label);
        Route r;
        r.node = v;
        r.initial_depth = init_topo.depth(v);

        const std::vector<NodeId> climb = init_topo.path(*init_topo.parent(v), anchor);
        r.targets.assign(climb.begin() + 1, climb.end());
        r.climb_count = r.targets.size();

        const PrefixLabel& goal = *e.desired_label;
        const PrefixLabel& anchor_label = *e.anchor_label;
        for (int len = anchor_label.length() + 1; len < goal.length(); ++len) {
            const PrefixLabel waypoint(std::vector<std::uint32_t>(
                goal.symbols().begin(), goal.symbols().begin() + len));
            const auto occupant = desired.node_with_label(waypoint);
            if (!occupant.has_value()) {
                throw InternalInvariantError("no node is destined for position " + waypoint.str());
            }
            r.targets.push_back(*occupant);
        }
        if (static_cast<int>(r.targets.size()) != e.move_distance) {
            throw InternalInvariantError("route of node " + id_str(v) + " has " +
                                         std::to_string(r.targets.size()) + " steps, plan says " +
                                         std::to_string(e.move_distance));
        }
        arrived[v] = r.targets.empty();
        routes.push_back(std::move(r));
    }

    // Deeper movers step first within a round, so parents shed their children
    // before it is their turn.
    std::sort(routes.begin(), routes.end(), [](const Route& a, const Route& b) {
        if (a.initial_depth != b.initial_depth) return a.initial_depth > b.initial_depth;
        return a.node < b.node;
    });

    MovementTrace trace{{}, desired};
    auto pending = [&] {
        return std::any_of(routes.begin(), routes.end(),
                           [&](const Route& r) { return !arrived.at(r.node); });
    };

    while (pending()) {
        bool progressed = false;
        for (Route& r : routes) {
            if (arrived.at(r.node)) continue;
            if (!state.is_leaf(r.node)) continue; // children still attached

            const NodeId target = r.targets[r.next];
            if (r.next >= r.climb_count) {
                const auto it = arrived.find(target);
                if (it != arrived.end() && !it->second) continue; // position not built yet
            }
            const NodeId from = *state.parent_of(r.node);
            const auto from_parent = state.parent_of(from);
            const auto target_parent = state.parent_of(target);
            const bool edge_up = from_parent.has_value() && *from_parent == target;
            const bool edge_down = target_parent.has_value() && *target_parent == from;
            if (!edge_up && !edge_down) {
                throw InternalInvariantError("node " + id_str(r.node) + " cannot reach " +
                                             id_str(target) + " from " + id_str(from) +
                                             ": no such edge");
            }

            state.reparent(r.node, target);
            TreeTopology snapshot = [&] {
                try {
                    return state.snapshot();
                } catch (const InvalidInputError& err) {
                    throw InternalInvariantError(std::string("network disconnected after moving node ") +
                                                 id_str(r.node) + ": " + err.what());
                }
            }();
            trace.steps.push_back(MovementStep{r.node, from, target, std::move(snapshot)});

            if (++r.next == r.targets.size()) arrived.at(r.node) = true;
            progressed = true;
        }
        if (!progressed) {
            throw InternalInvariantError("reconfiguration deadlocked; the plan is inconsistent");
        }
    }

    const TreeTopology result = state.snapshot();
    if (!(result == desired.topology())) {
        throw InternalInvariantError("executed topology does not match the planned one");
    }
    return trace;
}

ReconfigPlan plan_from_entries(const LabeledTree& initial, const std::vector<PlanEntry>& entries) {
    const TreeTopology& init_topo = initial.topology();
    std::map<NodeId, PrefixLabel> final_labels;
    for (const PlanEntry& e : entries) {
        if (!init_topo.contains(e.node)) {
            throw InvalidInputError("plan entry for unknown node " + id_str(e.node));
        }
        if (e.moving) {
            if (!e.desired_label) {
                throw InvalidInputError("moving node " + id_str(e.node) + " lacks a desired label");
            }
            final_labels.emplace(e.node, *e.desired_label);
        } else {
            final_labels.emplace(e.node, initial.label(e.node));
        }
    }
    if (final_labels.size() != init_topo.size()) {
        throw InvalidInputError("plan needs exactly one entry per node");
    }

    // The final labels fully determine the desired topology: every non-root
    // label hangs under the node holding its parent prefix.
    std::map<PrefixLabel, NodeId> by_label;
    for (const auto& [v, label] : final_labels) {
        if (!by_label.emplace(label, v).second) {
            throw InvalidInputError("two nodes claim final label " + label.str());
        }
    }
    std::map<NodeId, NodeId> parent_of;
    for (const auto& [v, label] : final_labels) {
        if (label.length() == 1) {
            if (v != init_topo.root()) {
                throw InvalidInputError("node " + id_str(v) + " claims a root-level label");
            }
            continue;
        }
        const auto p = by_label.find(label.parent());
        if (p == by_label.end()) {
            throw InvalidInputError("final label " + label.str() + " has no parent position");
        }
        parent_of[v] = p->second;
    }
    TreeTopology desired_topo = TreeTopology::from_parent_map(init_topo.root(), parent_of);
    LabeledTree desired(std::move(desired_topo), std::move(final_labels));
    return ReconfigPlan(initial, std::move(desired), entries);
}

} // namespace trieopt
