#ifndef TRIEOPT_OPTIMIZER_HPP
#define TRIEOPT_OPTIMIZER_HPP

#include <cstdint>
#include <vector>

#include "trieopt/budget.hpp"
#include "trieopt/flow.hpp"
#include "trieopt/reconfig.hpp"
#include "trieopt/tree.hpp"

namespace trieopt {

/// Partition of the nodes ahead of a topology search.
///
/// Active movers carry traffic, can afford at least one hop, and every one of
/// their initial-tree descendants can afford the climb out of the subtree
/// (a departing ancestor drags all descendants with it). Passive movers are
/// the flow-free nodes inside a retained mover's subtree. The skeleton is
/// everything else with its initial edges; it always contains the root and
/// stays connected because mover subtrees are removed whole.
struct Classification {
    std::vector<NodeId> active_moving;  // ascending
    std::vector<NodeId> passive_moving; // ascending
    TreeTopology skeleton;
};

Classification classify(const LabeledTree& initial, const FlowSet& flows,
                        const EnergyBudget& budgets);

/// How branch-and-bound under-estimates the cost of unfinished placements.
///
/// Admissible: each demand with at least one unplaced endpoint contributes its
/// rate once (every route costs at least one hop), so the bound never exceeds
/// the best completion and the search stays exact. PaperLiteral: sums the full
/// flow rows of every unplaced node, which counts a demand between two
/// unplaced nodes twice and can therefore prune the true optimum; kept as a
/// selectable mode for comparison experiments.
enum class BoundMode { Admissible, PaperLiteral };

struct SearchResult {
    LabeledTree final;
    double traffic = 0.0;
    ReconfigPlan plan;
    std::uint64_t nodes_explored = 0;  // attachments applied (greedy: evaluations)
    std::uint64_t nodes_pruned = 0;    // subtrees cut by bound or budget
    std::uint64_t leaves_explored = 0; // complete placements evaluated
};

/// Lower bound on the traffic of any completion of `partial`: exact traffic of
/// demands already inside the partial graph plus, once each, the rate of every
/// demand with an endpoint among `unplaced`.
double traffic_lower_bound(const TreeTopology& partial, const FlowSet& flows,
                           const std::vector<NodeId>& unplaced);

/// Exact minimizer over all root-preserving rebuilds reachable by attaching
/// the active movers one by one, in permutation order, to the growing graph.
///
/// Depth-first with an incumbent initialized to the unchanged topology's
/// traffic, so the result is never worse than doing nothing. Each attachment
/// is checked against the mover's hop budget, measured to its nearest
/// stationary ancestor. Passive movers are re-attached afterwards at their
/// cheapest feasible positions. Deterministic: permutations in lexicographic
/// id order, positions in level order, strict improvement to replace the
/// incumbent.
SearchResult optimize_bnb(const LabeledTree& initial, const FlowSet& flows,
                          const EnergyBudget& budgets,
                          BoundMode bound = BoundMode::Admissible);

/// One locally best attachment per step over all (unplaced mover, position)
/// pairs. Ties break to the lowest mover id, then lowest position id. At most
/// as good as optimize_bnb, never worse than the unchanged topology.
SearchResult optimize_greedy(const LabeledTree& initial, const FlowSet& flows,
                             const EnergyBudget& budgets);

/// The same search space as optimize_bnb with pruning disabled; the reference
/// answer for equivalence tests. Refuses more than six active movers.
SearchResult brute_force_oracle(const LabeledTree& initial, const FlowSet& flows,
                                const EnergyBudget& budgets);

/// Attaches each passive node, in ascending id order, at the position in
/// `working` minimizing its move distance subject to its hop budget.
/// Candidate positions are the nodes of `working` only, evaluated
/// independently per passive node; ties break to the lowest position id.
TreeTopology attach_passive(const TreeTopology& working, const std::vector<NodeId>& passive,
                            const LabeledTree& initial, const EnergyBudget& budgets);

} // namespace trieopt

#endif
