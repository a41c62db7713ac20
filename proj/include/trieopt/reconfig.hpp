#ifndef TRIEOPT_RECONFIG_HPP
#define TRIEOPT_RECONFIG_HPP

#include <optional>
#include <vector>

#include "trieopt/budget.hpp"
#include "trieopt/flow.hpp"
#include "trieopt/tree.hpp"

namespace trieopt {

/// Per-node reconfiguration record. Moving nodes carry the label of the
/// non-moving node they route toward (anchor), the label they assume on
/// arrival, and their total hop cost. Non-moving nodes carry neither; their
/// move distance is zero by convention.
struct PlanEntry {
    NodeId node = 0;
    bool moving = false;
    std::optional<PrefixLabel> anchor_label;
    std::optional<PrefixLabel> desired_label;
    int move_distance = 0;
};

/// The full reconfiguration plan from an initial labeled tree to a desired
/// topology. Guarantees on construction:
///  - the moving set is closed under initial-tree descendants (a node whose
///    parent departs would be disconnected, so it must move too);
///  - anchors always name non-moving nodes;
///  - desired labels are mutually unique and consistent with the desired
///    topology, forming a valid LabeledTree.
class ReconfigPlan {
public:
    ReconfigPlan(LabeledTree initial, LabeledTree desired, std::vector<PlanEntry> entries);

    const LabeledTree& initial() const { return initial_; }

    /// Desired tree with final labels: initial labels for non-moving nodes,
    /// assigned desired labels for moving ones.
    const LabeledTree& desired() const { return desired_; }

    /// Entries in ascending node-identifier order.
    const std::vector<PlanEntry>& entries() const { return entries_; }
    const PlanEntry& entry(NodeId v) const;

    std::vector<NodeId> moving_nodes() const;
    bool empty() const; // no moving nodes

private:
    LabeledTree initial_;
    LabeledTree desired_;
    std::vector<PlanEntry> entries_;
};

/// Computes the plan for reshaping `initial` into `desired`.
///
/// Sweeps the desired tree breadth-first from the shared root. A node whose
/// desired parent is non-moving keeps its place iff its initial label extends
/// that parent's label by one symbol; every other node moves. A mover under a
/// non-moving parent anchors at that parent; a mover under a moving parent
/// inherits the parent's anchor. Desired labels extend the desired parent's
/// final label with the smallest unused suffix >= 1, so results are
/// deterministic. Throws InvalidInputError on node-set or root mismatch.
ReconfigPlan plan_labels(const LabeledTree& initial, const TreeTopology& desired);

/// Hops node v must travel to reach its final position: the initial-tree
/// distance to its anchor plus the desired-tree distance from the anchor,
/// minus two because v starts adjacent to its first waypoint and stops when
/// adjacent to its destination.
int move_distance(const LabeledTree& initial, const LabeledTree& desired, NodeId v, NodeId anchor);

/// True iff the desired topology is reachable: planning succeeds, the root
/// stays put, and every mover's distance fits its hop budget. Structural
/// violations yield false rather than an exception.
bool feasible(const LabeledTree& initial, const TreeTopology& desired, const EnergyBudget& budgets);

/// One single-edge movement: `node` detaches from `from` and re-attaches at
/// `to`, which is adjacent to `from`. The snapshot is the topology after the
/// step; constructing it revalidates connectivity.
struct MovementStep {
    NodeId node = 0;
    NodeId from = 0;
    NodeId to = 0;
    TreeTopology snapshot;
};

struct MovementTrace {
    std::vector<MovementStep> steps;
    LabeledTree final;
};

/// Executes the plan one edge-step at a time and audits connectivity.
///
/// Movers are stepped in rounds, deepest initial position first, so children
/// always vacate before their parent departs. Each mover climbs toward its
/// anchor along the initial tree, then descends into the rebuilt subtree,
/// waiting whenever its next position's occupant has not arrived yet. A mover
/// is relabeled the moment it reaches its final position. Per-node step
/// counts equal the plan's move distances exactly.
///
/// Throws InternalInvariantError if execution would disconnect the network or
/// deadlock; that means the plan is corrupt, and it is surfaced, not repaired.
MovementTrace simulate(const ReconfigPlan& plan);

/// Rebuilds a plan from externally supplied entries (e.g. a plan file),
/// reconstructing the desired topology from the final labels and validating
/// every plan invariant against `initial`. Throws InvalidInputError on any
/// inconsistency: unknown nodes, moving root, colliding labels, anchors that
/// move, descendants left behind by a mover, or a wrong move distance.
ReconfigPlan plan_from_entries(const LabeledTree& initial, const std::vector<PlanEntry>& entries);

} // namespace trieopt

#endif
