#ifndef TRIEOPT_TREE_HPP
#define TRIEOPT_TREE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "trieopt/prefix_label.hpp"
#include "trieopt/rng.hpp"

namespace trieopt {

using NodeId = std::int64_t;

/// A rooted tree over arbitrary node identifiers.
///
/// Construction validates that the edge set forms a single tree hanging from
/// the root: exactly |nodes|-1 parent entries, no self-parenting, and every
/// node reaches the root by following parent links. For trees this is exactly
/// the connectivity predicate, so a constructed TreeTopology is connected by
/// definition. Instances are immutable and safe to share across threads.
class TreeTopology {
public:
    /// Builds from oriented (parent, child) edges. The node set is the union
    /// of the root and all edge endpoints.
    TreeTopology(NodeId root, const std::vector<std::pair<NodeId, NodeId>>& parent_child_edges);

    /// Builds from an explicit child -> parent mapping (the root is absent).
    static TreeTopology from_parent_map(NodeId root, const std::map<NodeId, NodeId>& parent_of);

    NodeId root() const { return root_; }
    std::size_t size() const { return ids_.size(); }

    /// Node identifiers in ascending order.
    const std::vector<NodeId>& nodes() const { return ids_; }

    bool contains(NodeId v) const;

    /// Parent of v, or nullopt for the root. Throws on unknown nodes.
    std::optional<NodeId> parent(NodeId v) const;

    /// Children of v in ascending identifier order.
    std::vector<NodeId> children(NodeId v) const;

    /// Edge count from the root down to v.
    int depth(NodeId v) const;

    /// Level-order traversal from the root, children in ascending id order.
    std::vector<NodeId> bfs_order() const;

    /// All (parent, child) edges sorted by child identifier.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    /// Nodes on the unique path from u to v, inclusive of both endpoints.
    std::vector<NodeId> path(NodeId u, NodeId v) const;

    /// Hop count of the unique path between u and v.
    int path_length(NodeId u, NodeId v) const;

    /// Same node set, same root, same parent assignment.
    bool operator==(const TreeTopology& other) const;

private:
    TreeTopology() = default;
    void finish_construction();
    int index_of(NodeId v) const; // throws InvalidInputError on unknown ids

    std::vector<NodeId> ids_;     // ascending
    NodeId root_ = 0;
    std::vector<int> parent_;     // index into ids_; -1 for the root
    std::vector<std::vector<int>> children_;
    std::vector<int> depth_;
};

/// The same undirected tree re-rooted at `new_root` (parent links reversed
/// along the path from the old root).
TreeTopology rerooted(const TreeTopology& tree, NodeId new_root);

/// A uniformly distributed labeled tree on nodes 0..n-1, rooted at node 0.
/// Drawn by decoding a random Prufer sequence, so all n^(n-2) labeled trees
/// are equally likely. Deterministic for a fixed generator state.
TreeTopology random_tree(int n, Rng& rng);
TreeTopology random_tree(int n, std::uint64_t seed);

/// A rooted tree together with a consistent prefix-label addressing:
/// label(parent(v)) is always label(v) minus its final symbol, labels are
/// unique, and the root's label has length one. Immutable after construction.
class LabeledTree {
public:
    LabeledTree(TreeTopology topology, std::map<NodeId, PrefixLabel> labels);

    const TreeTopology& topology() const { return topology_; }
    const PrefixLabel& label(NodeId v) const;
    std::optional<NodeId> node_with_label(const PrefixLabel& label) const;

    bool operator==(const LabeledTree& other) const {
        return topology_ == other.topology_ && labels_ == other.labels_;
    }

private:
    TreeTopology topology_;
    std::map<NodeId, PrefixLabel> labels_;
    std::map<PrefixLabel, NodeId> by_label_;
};

/// Assigns the canonical prefix labeling: the root gets label 0 and the
/// children of each node get suffixes 1, 2, 3, ... in ascending identifier
/// order. Deterministic, so labelings are reproducible in golden tests.
LabeledTree assign_prefix_labels(const TreeTopology& tree);

/// Hop count between u and v computed purely from their labels.
/// Equals the tree-path edge count.
int trie_distance(const LabeledTree& tree, NodeId u, NodeId v);

} // namespace trieopt

#endif
