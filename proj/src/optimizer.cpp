#include "trieopt/optimizer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "trieopt/errors.hpp"

namespace trieopt {

namespace {

void validate_inputs(const LabeledTree& initial, const FlowSet& flows, const EnergyBudget& budgets) {
    const TreeTopology& topo = initial.topology();
    for (const auto& [pair, rate] : flows.entries()) {
        if (!topo.contains(pair.first) || !topo.contains(pair.second)) {
            throw InvalidInputError("flow endpoint " +
                                    std::to_string(topo.contains(pair.first) ? pair.second : pair.first) +
                                    " is not in the topology");
        }
    }
    if (!budgets.covers(topo)) {
        throw InvalidInputError("hop budgets do not cover every node");
    }
}

std::vector<NodeId> subtree_of(const TreeTopology& topo, NodeId v) {
    std::vector<NodeId> out;
    std::vector<NodeId> stack{v};
    while (!stack.empty()) {
        const NodeId x = stack.back();
        stack.pop_back();
        out.push_back(x);
        for (NodeId c : topo.children(x)) stack.push_back(c);
    }
    return out;
}

/// Shared depth-first machinery for the exact searches and the greedy build.
/// Works in a dense index space over the initial tree's nodes; the skeleton is
/// pre-placed and movers attach as new leaves, with O(1) undo.
class SearchEngine {
public:
    SearchEngine(const LabeledTree& initial, const FlowSet& flows, const EnergyBudget& budgets,
                 const Classification& classification)
        : initial_(initial), flows_(flows), budgets_(budgets) {
        const TreeTopology& topo = initial.topology();
        ids_ = topo.nodes();
        n_ = static_cast<int>(ids_.size());

        init_parent_.assign(static_cast<std::size_t>(n_), -1);
        init_depth_.assign(static_cast<std::size_t>(n_), 0);
        for (int i = 0; i < n_; ++i) {
            const auto p = topo.parent(ids_[static_cast<std::size_t>(i)]);
            if (p.has_value()) init_parent_[static_cast<std::size_t>(i)] = index_of(*p);
            init_depth_[static_cast<std::size_t>(i)] = topo.depth(ids_[static_cast<std::size_t>(i)]);
        }
        init_dist_.assign(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_), 0));
        for (int i = 0; i < n_; ++i) {
            for (int j = i + 1; j < n_; ++j) {
                const int d = trie_distance(initial, ids_[static_cast<std::size_t>(i)],
                                            ids_[static_cast<std::size_t>(j)]);
                init_dist_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d;
                init_dist_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = d;
            }
        }

        sym_rate_.assign(static_cast<std::size_t>(n_), std::vector<double>(static_cast<std::size_t>(n_), 0.0));
        for (const auto& [pair, rate] : flows.entries()) {
            const int a = index_of(pair.first), b = index_of(pair.second);
            sym_rate_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += rate;
            sym_rate_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] += rate;
        }
        rowsum_.assign(static_cast<std::size_t>(n_), 0.0);
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) rowsum_[static_cast<std::size_t>(i)] += sym_rate_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        total_rate_ = flows.total();

        hop_budget_.assign(static_cast<std::size_t>(n_), 0);
        for (int i = 0; i < n_; ++i) {
            const NodeId v = ids_[static_cast<std::size_t>(i)];
            hop_budget_[static_cast<std::size_t>(i)] = v == topo.root() ? 0 : budgets.hops(v);
        }

        for (NodeId v : classification.active_moving) actives_.push_back(index_of(v));
        passive_ids_ = classification.passive_moving;

        placed_.assign(static_cast<std::size_t>(n_), 0);
        work_parent_.assign(static_cast<std::size_t>(n_), -1);
        work_depth_.assign(static_cast<std::size_t>(n_), 0);
        anchor_of_.assign(static_cast<std::size_t>(n_), -1);
        stationary_.assign(static_cast<std::size_t>(n_), 0);
        work_children_.assign(static_cast<std::size_t>(n_), {});
        for (NodeId v : classification.skeleton.nodes()) {
            const int i = index_of(v);
            placed_[static_cast<std::size_t>(i)] = 1;
            work_parent_[static_cast<std::size_t>(i)] = init_parent_[static_cast<std::size_t>(i)];
            work_depth_[static_cast<std::size_t>(i)] = init_depth_[static_cast<std::size_t>(i)];
            stationary_[static_cast<std::size_t>(i)] = 1;
            anchor_of_[static_cast<std::size_t>(i)] = i;
        }
        for (int i = 0; i < n_; ++i) {
            if (placed_[static_cast<std::size_t>(i)] && work_parent_[static_cast<std::size_t>(i)] >= 0) {
                work_children_[static_cast<std::size_t>(work_parent_[static_cast<std::size_t>(i)])].push_back(i);
            }
        }
        for (int i = 0; i < n_; ++i) {
            if (!placed_[static_cast<std::size_t>(i)]) continue;
            for (int j = i + 1; j < n_; ++j) {
                if (!placed_[static_cast<std::size_t>(j)]) continue;
                const double r = sym_rate_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (r > 0.0) {
                    traffic_partial_ += r * work_distance(i, j);
                    placed_rate_ += r;
                }
            }
        }

        root_index_ = index_of(topo.root());
        initial_traffic_ = aggregate_traffic(topo, flows);
        best_traffic_ = initial_traffic_;
    }

    enum class Bound { Admissible, Literal, Off };

    void run_search(Bound bound) {
        bound_ = bound;
        if (actives_.empty()) return;
        std::vector<int> perm = actives_;
        do {
            if (bound_ == Bound::Literal) {
                suffix_rowsum_.assign(perm.size() + 1, 0.0);
                for (std::size_t k = perm.size(); k-- > 0;) {
                    suffix_rowsum_[k] = suffix_rowsum_[k + 1] + rowsum_[static_cast<std::size_t>(perm[k])];
                }
            }
            dfs(perm, 0);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    void run_greedy() {
        std::vector<int> unplaced = actives_;
        while (!unplaced.empty()) {
            bool found = false;
            double best_t = 0.0;
            int best_u = -1, best_pos = -1;
            const std::vector<int> positions = level_order_positions();
            for (int u : unplaced) {
                for (int pos : positions) {
                    ++explored_;
                    const Delta delta = attach(u, pos);
                    const bool fits = attach_distance(u) <= hop_budget_[static_cast<std::size_t>(u)];
                    const double t = traffic_partial_;
                    detach(u, pos, delta);
                    if (!fits) {
                        ++pruned_;
                        continue;
                    }
                    const bool better =
                        !found || t < best_t ||
                        (t == best_t && (ids_[static_cast<std::size_t>(u)] < ids_[static_cast<std::size_t>(best_u)] ||
                                         (ids_[static_cast<std::size_t>(u)] == ids_[static_cast<std::size_t>(best_u)] &&
                                          ids_[static_cast<std::size_t>(pos)] < ids_[static_cast<std::size_t>(best_pos)])));
                    if (better) {
                        found = true;
                        best_t = t;
                        best_u = u;
                        best_pos = pos;
                    }
                }
            }
            if (!found) {
                // Last resort kept for malformed budget sets: put a mover back
                // where it started. Classification guarantees a feasible pair
                // exists, so this is not expected to run.
                for (int u : unplaced) {
                    const int p = init_parent_[static_cast<std::size_t>(u)];
                    if (p >= 0 && placed_[static_cast<std::size_t>(p)]) {
                        best_u = u;
                        best_pos = p;
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    throw InternalInvariantError("greedy search found no attachable mover");
                }
            }
            attach(best_u, best_pos);
            unplaced.erase(std::find(unplaced.begin(), unplaced.end(), best_u));
        }
        best_parent_ = work_parent_;
        improved_ = true; // greedy always proposes its build; finish() arbitrates vs initial
        best_traffic_ = traffic_partial_;
    }

    SearchResult finish() {
        if (improved_) {
            // best_parent_ covers skeleton and actives; passives re-attach now.
            std::map<NodeId, NodeId> working_edges;
            for (int i = 0; i < n_; ++i) {
                if (i == root_index_) continue;
                if (placed_skeleton_or_active(i)) {
                    working_edges[ids_[static_cast<std::size_t>(i)]] =
                        ids_[static_cast<std::size_t>(best_parent_[static_cast<std::size_t>(i)])];
                }
            }
            const TreeTopology working =
                TreeTopology::from_parent_map(ids_[static_cast<std::size_t>(root_index_)], working_edges);
            const TreeTopology final_topo = attach_passive(working, passive_ids_, initial_, budgets_);
            const double traffic = aggregate_traffic(final_topo, flows_);
            if (traffic < initial_traffic_) {
                ReconfigPlan plan = plan_labels(initial_, final_topo);
                return SearchResult{plan.desired(), traffic, std::move(plan),
                                    explored_, pruned_, leaves_};
            }
        }
        ReconfigPlan plan = plan_labels(initial_, initial_.topology());
        return SearchResult{plan.desired(), initial_traffic_, std::move(plan),
                            explored_, pruned_, leaves_};
    }

    std::size_t active_count() const { return actives_.size(); }

private:
    struct Delta {
        double traffic = 0.0;
        double rate = 0.0;
    };

    int index_of(NodeId v) const {
        const auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
        return static_cast<int>(it - ids_.begin());
    }

    bool placed_skeleton_or_active(int i) const {
        return best_parent_[static_cast<std::size_t>(i)] >= 0 || i == root_index_;
    }

    int work_distance(int u, int v) const {
        int a = u, b = v, d = 0;
        while (work_depth_[static_cast<std::size_t>(a)] > work_depth_[static_cast<std::size_t>(b)]) {
            a = work_parent_[static_cast<std::size_t>(a)];
            ++d;
        }
        while (work_depth_[static_cast<std::size_t>(b)] > work_depth_[static_cast<std::size_t>(a)]) {
            b = work_parent_[static_cast<std::size_t>(b)];
            ++d;
        }
        while (a != b) {
            a = work_parent_[static_cast<std::size_t>(a)];
            b = work_parent_[static_cast<std::size_t>(b)];
            d += 2;
        }
        return d;
    }

    Delta attach(int v, int pos) {
        work_parent_[static_cast<std::size_t>(v)] = pos;
        work_depth_[static_cast<std::size_t>(v)] = work_depth_[static_cast<std::size_t>(pos)] + 1;
        stationary_[static_cast<std::size_t>(v)] =
            pos == init_parent_[static_cast<std::size_t>(v)] && stationary_[static_cast<std::size_t>(pos)];
        anchor_of_[static_cast<std::size_t>(v)] =
            stationary_[static_cast<std::size_t>(pos)] ? pos : anchor_of_[static_cast<std::size_t>(pos)];
        auto& siblings = work_children_[static_cast<std::size_t>(pos)];
        siblings.insert(std::lower_bound(siblings.begin(), siblings.end(), v), v);
        placed_[static_cast<std::size_t>(v)] = 1;

        Delta delta;
        for (int j = 0; j < n_; ++j) {
            if (j == v || !placed_[static_cast<std::size_t>(j)]) continue;
            const double r = sym_rate_[static_cast<std::size_t>(v)][static_cast<std::size_t>(j)];
            if (r > 0.0) {
                delta.traffic += r * work_distance(v, j);
                delta.rate += r;
            }
        }
        traffic_partial_ += delta.traffic;
        placed_rate_ += delta.rate;
        return delta;
    }

    void detach(int v, int pos, const Delta& delta) {
        traffic_partial_ -= delta.traffic;
        placed_rate_ -= delta.rate;
        placed_[static_cast<std::size_t>(v)] = 0;
        auto& siblings = work_children_[static_cast<std::size_t>(pos)];
        siblings.erase(std::find(siblings.begin(), siblings.end(), v));
        work_parent_[static_cast<std::size_t>(v)] = -1;
        stationary_[static_cast<std::size_t>(v)] = 0;
        anchor_of_[static_cast<std::size_t>(v)] = -1;
    }

    /// Move distance of a just-attached node: initial distance to its nearest
    /// stationary ancestor plus its new depth below that anchor, minus two.
    int attach_distance(int v) const {
        const int a = anchor_of_[static_cast<std::size_t>(v)];
        return init_dist_[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)] +
               (work_depth_[static_cast<std::size_t>(v)] - work_depth_[static_cast<std::size_t>(a)]) - 2;
    }

    std::vector<int> level_order_positions() const {
        std::vector<int> order{root_index_};
        for (std::size_t head = 0; head < order.size(); ++head) {
            for (int c : work_children_[static_cast<std::size_t>(order[head])]) order.push_back(c);
        }
        return order;
    }

    void dfs(const std::vector<int>& perm, std::size_t k) {
        if (k == perm.size()) {
            ++leaves_;
            if (traffic_partial_ < best_traffic_) {
                best_traffic_ = traffic_partial_;
                best_parent_ = work_parent_;
                improved_ = true;
            }
            return;
        }
        const int mover = perm[k];
        const std::vector<int> positions = level_order_positions();
        for (std::size_t i = 0; i < positions.size(); ++i) {
            // The first mover is placed unconditionally; bounds guard every
            // later level and are re-read per position because the incumbent
            // can tighten mid-loop.
            if (bound_ != Bound::Off && k > 0) {
                const double pending =
                    bound_ == Bound::Admissible ? total_rate_ - placed_rate_ : suffix_rowsum_[k];
                if (!(traffic_partial_ + pending < best_traffic_)) {
                    pruned_ += positions.size() - i;
                    break;
                }
            }
            const int pos = positions[i];
            const Delta delta = attach(mover, pos);
            ++explored_;
            if (attach_distance(mover) <= hop_budget_[static_cast<std::size_t>(mover)]) {
                dfs(perm, k + 1);
            } else {
                ++pruned_;
            }
            detach(mover, pos, delta);
        }
    }

    const LabeledTree& initial_;
    const FlowSet& flows_;
    const EnergyBudget& budgets_;

    int n_ = 0;
    std::vector<NodeId> ids_;
    std::vector<int> init_parent_, init_depth_;
    std::vector<std::vector<int>> init_dist_;
    std::vector<std::vector<double>> sym_rate_;
    std::vector<double> rowsum_;
    double total_rate_ = 0.0;
    std::vector<int> hop_budget_;
    std::vector<int> actives_;
    std::vector<NodeId> passive_ids_;
    int root_index_ = 0;

    std::vector<char> placed_, stationary_;
    std::vector<int> work_parent_, work_depth_, anchor_of_;
    std::vector<std::vector<int>> work_children_;
    double traffic_partial_ = 0.0, placed_rate_ = 0.0;
    double initial_traffic_ = 0.0;

    Bound bound_ = Bound::Admissible;
    std::vector<double> suffix_rowsum_;
    std::uint64_t explored_ = 0, pruned_ = 0, leaves_ = 0;
    double best_traffic_ = 0.0;
    bool improved_ = false;
    std::vector<int> best_parent_;
};

} // namespace

Classification classify(const LabeledTree& initial, const FlowSet& flows, const EnergyBudget& budgets) {
    validate_inputs(initial, flows, budgets);
    const TreeTopology& topo = initial.topology();

    std::set<NodeId> active;
    for (NodeId v : topo.nodes()) {
        if (v == topo.root()) continue;
        if (!flows.has_flow_at(v) || budgets.hops(v) < 1) continue;
        bool retained = true;
        for (NodeId d : subtree_of(topo, v)) {
            if (d == v) continue;
            if (budgets.hops(d) < topo.depth(d) - topo.depth(v)) {
                retained = false;
                break;
            }
        }
        if (retained) active.insert(v);
    }

    std::set<NodeId> passive;
    for (NodeId v : active) {
        for (NodeId d : subtree_of(topo, v)) {
            if (!flows.has_flow_at(d)) passive.insert(d);
        }
    }

    std::map<NodeId, NodeId> skeleton_parent;
    for (NodeId v : topo.nodes()) {
        if (active.count(v) || passive.count(v) || v == topo.root()) continue;
        const NodeId p = *topo.parent(v);
        if (active.count(p) || passive.count(p)) {
            throw InternalInvariantError("skeleton node " + std::to_string(v) +
                                         " hangs under a moving node");
        }
        skeleton_parent[v] = p;
    }

    return Classification{std::vector<NodeId>(active.begin(), active.end()),
                          std::vector<NodeId>(passive.begin(), passive.end()),
                          TreeTopology::from_parent_map(topo.root(), skeleton_parent)};
}

double traffic_lower_bound(const TreeTopology& partial, const FlowSet& flows,
                           const std::vector<NodeId>& unplaced) {
    for (NodeId v : unplaced) {
        if (partial.contains(v)) {
            throw InvalidInputError("unplaced node " + std::to_string(v) +
                                    " is already in the partial graph");
        }
    }
    double placed = 0.0, pending = 0.0;
    const LabeledTree labeled = assign_prefix_labels(partial);
    for (const auto& [pair, rate] : flows.entries()) {
        if (partial.contains(pair.first) && partial.contains(pair.second)) {
            placed += rate * trie_distance(labeled, pair.first, pair.second);
        } else {
            pending += rate;
        }
    }
    return placed + pending;
}

TreeTopology attach_passive(const TreeTopology& working, const std::vector<NodeId>& passive,
                            const LabeledTree& initial, const EnergyBudget& budgets) {
    const TreeTopology& init_topo = initial.topology();
    if (working.root() != init_topo.root()) {
        throw InvalidInputError("working graph must keep the initial root");
    }
    for (NodeId u : passive) {
        if (working.contains(u)) {
            throw InvalidInputError("passive node " + std::to_string(u) +
                                    " is already in the working graph");
        }
    }

    // A position is "stationary" when its whole ancestor chain still matches
    // the initial tree; such a node is a valid routing anchor.
    std::map<NodeId, bool> stationary;
    std::map<NodeId, NodeId> anchor;
    for (NodeId v : working.bfs_order()) {
        const auto p = working.parent(v);
        if (!p.has_value()) {
            stationary[v] = true;
            anchor[v] = v;
            continue;
        }
        stationary[v] = stationary.at(*p) && init_topo.parent(v) == p;
        anchor[v] = stationary.at(v) ? v : anchor.at(*p);
    }

    std::vector<std::pair<NodeId, NodeId>> edges = working.edges();
    std::vector<NodeId> order = passive;
    std::sort(order.begin(), order.end());
    for (NodeId u : order) {
        int best_distance = 0;
        NodeId best_pos = 0;
        bool found = false;
        for (NodeId v : working.nodes()) {
            const NodeId a = anchor.at(v);
            const int distance = init_topo.path_length(u, a) + (working.depth(v) + 1 - working.depth(a)) - 2;
            if (distance > budgets.hops(u)) continue;
            if (!found || distance < best_distance) {
                found = true;
                best_distance = distance;
                best_pos = v;
            }
        }
        if (!found) {
            throw InvalidInputError("no feasible position for passive node " + std::to_string(u));
        }
        edges.emplace_back(best_pos, u);
    }
    return TreeTopology(working.root(), edges);
}

SearchResult optimize_bnb(const LabeledTree& initial, const FlowSet& flows,
                          const EnergyBudget& budgets, BoundMode bound) {
    validate_inputs(initial, flows, budgets);
    const Classification classification = classify(initial, flows, budgets);
    SearchEngine engine(initial, flows, budgets, classification);
    engine.run_search(bound == BoundMode::Admissible ? SearchEngine::Bound::Admissible
                                                     : SearchEngine::Bound::Literal);
    return engine.finish();
}

SearchResult optimize_greedy(const LabeledTree& initial, const FlowSet& flows,
                             const EnergyBudget& budgets) {
    validate_inputs(initial, flows, budgets);
    const Classification classification = classify(initial, flows, budgets);
    SearchEngine engine(initial, flows, budgets, classification);
    engine.run_greedy();
    return engine.finish();
}

SearchResult brute_force_oracle(const LabeledTree& initial, const FlowSet& flows,
                                const EnergyBudget& budgets) {
    validate_inputs(initial, flows, budgets);
    const Classification classification = classify(initial, flows, budgets);
    if (classification.active_moving.size() > 6) {
        throw InvalidInputError("exhaustive search limited to six active movers, got " +
                                std::to_string(classification.active_moving.size()));
    }
    SearchEngine engine(initial, flows, budgets, classification);
    engine.run_search(SearchEngine::Bound::Off);
    return engine.finish();
}

} // namespace trieopt
