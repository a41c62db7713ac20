#include "trieopt/tree.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "trieopt/errors.hpp"

namespace trieopt {

namespace {

std::string id_str(NodeId v) { return std::to_string(v); }

} // namespace

TreeTopology::TreeTopology(NodeId root, const std::vector<std::pair<NodeId, NodeId>>& parent_child_edges) {
    std::set<NodeId> id_set{root};
    for (const auto& [p, c] : parent_child_edges) {
        id_set.insert(p);
        id_set.insert(c);
    }
    ids_.assign(id_set.begin(), id_set.end());
    root_ = root;
    parent_.assign(ids_.size(), -1);

    if (parent_child_edges.size() + 1 != ids_.size()) {
        throw InvalidInputError("tree must have exactly node-count minus one edges, got " +
                                std::to_string(parent_child_edges.size()) + " edges for " +
                                std::to_string(ids_.size()) + " nodes");
    }
    std::vector<bool> has_parent(ids_.size(), false);
    for (const auto& [p, c] : parent_child_edges) {
        if (p == c) throw InvalidInputError("self-edge at node " + id_str(p));
        const int ci = index_of(c);
        if (c == root_) throw InvalidInputError("root " + id_str(root_) + " listed as a child");
        if (has_parent[static_cast<std::size_t>(ci)]) {
            throw InvalidInputError("node " + id_str(c) + " has two parents");
        }
        has_parent[static_cast<std::size_t>(ci)] = true;
        parent_[static_cast<std::size_t>(ci)] = index_of(p);
    }
    finish_construction();
}

TreeTopology TreeTopology::from_parent_map(NodeId root, const std::map<NodeId, NodeId>& parent_of) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(parent_of.size());
    for (const auto& [child, parent] : parent_of) edges.emplace_back(parent, child);
    return TreeTopology(root, edges);
}

void TreeTopology::finish_construction() {
    const std::size_t n = ids_.size();
    children_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        if (parent_[i] >= 0) children_[static_cast<std::size_t>(parent_[i])].push_back(static_cast<int>(i));
    }
    // Indices follow ascending ids, so child lists are already ordered.

    depth_.assign(n, -1);
    const int root_index = index_of(root_);
    depth_[static_cast<std::size_t>(root_index)] = 0;
    std::vector<int> queue{root_index};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (int c : children_[static_cast<std::size_t>(v)]) {
            depth_[static_cast<std::size_t>(c)] = depth_[static_cast<std::size_t>(v)] + 1;
            queue.push_back(c);
        }
    }
    if (queue.size() != n) {
        throw InvalidInputError("edges do not connect every node to root " + id_str(root_));
    }
}

int TreeTopology::index_of(NodeId v) const {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) {
        throw InvalidInputError("unknown node " + id_str(v));
    }
    return static_cast<int>(it - ids_.begin());
}

bool TreeTopology::contains(NodeId v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

std::optional<NodeId> TreeTopology::parent(NodeId v) const {
    const int p = parent_[static_cast<std::size_t>(index_of(v))];
    if (p < 0) return std::nullopt;
    return ids_[static_cast<std::size_t>(p)];
}

std::vector<NodeId> TreeTopology::children(NodeId v) const {
    std::vector<NodeId> out;
    for (int c : children_[static_cast<std::size_t>(index_of(v))]) out.push_back(ids_[static_cast<std::size_t>(c)]);
    return out;
}

int TreeTopology::depth(NodeId v) const { return depth_[static_cast<std::size_t>(index_of(v))]; }

std::vector<NodeId> TreeTopology::bfs_order() const {
    std::vector<NodeId> order;
    order.reserve(ids_.size());
    std::vector<int> queue{index_of(root_)};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        order.push_back(ids_[static_cast<std::size_t>(v)]);
        for (int c : children_[static_cast<std::size_t>(v)]) queue.push_back(c);
    }
    return order;
}

std::vector<std::pair<NodeId, NodeId>> TreeTopology::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(ids_.size() - 1);
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (parent_[i] >= 0) out.emplace_back(ids_[static_cast<std::size_t>(parent_[i])], ids_[i]);
    }
    return out;
}

std::vector<NodeId> TreeTopology::path(NodeId u, NodeId v) const {
    // Climb both endpoints to their common ancestor.
    std::vector<int> up_u, up_v;
    int a = index_of(u), b = index_of(v);
    while (depth_[static_cast<std::size_t>(a)] > depth_[static_cast<std::size_t>(b)]) {
        up_u.push_back(a);
        a = parent_[static_cast<std::size_t>(a)];
    }
    while (depth_[static_cast<std::size_t>(b)] > depth_[static_cast<std::size_t>(a)]) {
        up_v.push_back(b);
        b = parent_[static_cast<std::size_t>(b)];
    }
    while (a != b) {
        up_u.push_back(a);
        up_v.push_back(b);
        a = parent_[static_cast<std::size_t>(a)];
        b = parent_[static_cast<std::size_t>(b)];
    }
    std::vector<NodeId> out;
    for (int i : up_u) out.push_back(ids_[static_cast<std::size_t>(i)]);
    out.push_back(ids_[static_cast<std::size_t>(a)]);
    for (auto it = up_v.rbegin(); it != up_v.rend(); ++it) out.push_back(ids_[static_cast<std::size_t>(*it)]);
    return out;
}

int TreeTopology::path_length(NodeId u, NodeId v) const {
    return static_cast<int>(path(u, v).size()) - 1;
}

bool TreeTopology::operator==(const TreeTopology& other) const {
    return root_ == other.root_ && ids_ == other.ids_ && parent_ == other.parent_;
}

TreeTopology rerooted(const TreeTopology& tree, NodeId new_root) {
    if (!tree.contains(new_root)) {
        throw InvalidInputError("cannot re-root at unknown node " + id_str(new_root));
    }
    // Orient the undirected edge set away from the new root.
    std::map<NodeId, std::vector<NodeId>> adjacency;
    for (const auto& [p, c] : tree.edges()) {
        adjacency[p].push_back(c);
        adjacency[c].push_back(p);
    }
    std::map<NodeId, NodeId> parent_of;
    std::vector<NodeId> queue{new_root};
    std::set<NodeId> seen{new_root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId v = queue[head];
        for (NodeId w : adjacency[v]) {
            if (seen.insert(w).second) {
                parent_of[w] = v;
                queue.push_back(w);
            }
        }
    }
    return TreeTopology::from_parent_map(new_root, parent_of);
}

TreeTopology random_tree(int n, Rng& rng) {
    if (n < 1) throw InvalidInputError("random tree needs at least one node");
    if (n == 1) return TreeTopology(0, {});
    if (n == 2) return TreeTopology(0, {{0, 1}});

    // Decode a uniform Prufer sequence of length n-2.
    std::vector<int> sequence(static_cast<std::size_t>(n - 2));
    for (int& s : sequence) s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));

    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (int s : sequence) ++degree[static_cast<std::size_t>(s)];

    std::vector<std::pair<NodeId, NodeId>> undirected;
    std::set<int> leaves;
    for (int v = 0; v < n; ++v) {
        if (degree[static_cast<std::size_t>(v)] == 1) leaves.insert(v);
    }
    for (int s : sequence) {
        const int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        undirected.emplace_back(leaf, s);
        if (--degree[static_cast<std::size_t>(s)] == 1) leaves.insert(s);
    }
    const int a = *leaves.begin();
    const int b = *std::next(leaves.begin());
    undirected.emplace_back(a, b);

    std::map<NodeId, std::vector<NodeId>> adjacency;
    for (const auto& [u, v] : undirected) {
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
    }
    std::map<NodeId, NodeId> parent_of;
    std::vector<NodeId> queue{0};
    std::set<NodeId> seen{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId v = queue[head];
        for (NodeId w : adjacency[v]) {
            if (seen.insert(w).second) {
                parent_of[w] = v;
                queue.push_back(w);
            }
        }
    }
    return TreeTopology::from_parent_map(0, parent_of);
}

TreeTopology random_tree(int n, std::uint64_t seed) {
    Rng rng(seed);
    return random_tree(n, rng);
}

LabeledTree::LabeledTree(TreeTopology topology, std::map<NodeId, PrefixLabel> labels)
    : topology_(std::move(topology)), labels_(std::move(labels)) {
    if (labels_.size() != topology_.size()) {
        throw InvalidInputError("label map must cover every node exactly once");
    }
    for (const auto& [v, label] : labels_) {
        if (!topology_.contains(v)) throw InvalidInputError("label for unknown node " + id_str(v));
        if (!by_label_.emplace(label, v).second) {
            throw InvalidInputError("duplicate label " + label.str());
        }
        const auto p = topology_.parent(v);
        if (!p.has_value()) {
            if (label.length() != 1) {
                throw InvalidInputError("root label must have length one, got " + label.str());
            }
        } else if (label.length() < 2 || label.parent() != labels_.at(*p)) {
            throw InvalidInputError("label " + label.str() + " of node " + id_str(v) +
                                    " does not extend its parent's label");
        }
    }
}

const PrefixLabel& LabeledTree::label(NodeId v) const {
    const auto it = labels_.find(v);
    if (it == labels_.end()) throw InvalidInputError("unknown node " + id_str(v));
    return it->second;
}

std::optional<NodeId> LabeledTree::node_with_label(const PrefixLabel& label) const {
    const auto it = by_label_.find(label);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

LabeledTree assign_prefix_labels(const TreeTopology& tree) {
    std::map<NodeId, PrefixLabel> labels;
    labels.emplace(tree.root(), PrefixLabel::root());
    for (NodeId v : tree.bfs_order()) {
        const PrefixLabel& base = labels.at(v);
        std::uint32_t suffix = 1;
        for (NodeId c : tree.children(v)) {
            labels.emplace(c, base.child(suffix++));
        }
    }
    return LabeledTree(tree, std::move(labels));
}

int trie_distance(const LabeledTree& tree, NodeId u, NodeId v) {
    return label_distance(tree.label(u), tree.label(v));
}

} // namespace trieopt
