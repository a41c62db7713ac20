#include "trieopt/flow.hpp"

#include <string>

#include "trieopt/errors.hpp"

namespace trieopt {

void FlowSet::add(NodeId src, NodeId dst, double mbps) {
    if (src == dst) {
        throw InvalidInputError("flow source equals destination at node " + std::to_string(src));
    }
    if (mbps < 0.0) {
        throw InvalidInputError("negative flow rate " + std::to_string(mbps));
    }
    if (mbps == 0.0) return;
    flows_[{src, dst}] += mbps;
    endpoints_.insert(src);
    endpoints_.insert(dst);
}

double FlowSet::rate(NodeId src, NodeId dst) const {
    const auto it = flows_.find({src, dst});
    return it == flows_.end() ? 0.0 : it->second;
}

double FlowSet::total() const {
    double sum = 0.0;
    for (const auto& [pair, rate] : flows_) sum += rate;
    return sum;
}

double FlowSet::endpoint_rate(NodeId v) const {
    double sum = 0.0;
    for (const auto& [pair, rate] : flows_) {
        if (pair.first == v || pair.second == v) sum += rate;
    }
    return sum;
}

double aggregate_traffic(const TreeTopology& tree, const FlowSet& flows) {
    if (flows.empty()) return 0.0;
    const LabeledTree labeled = assign_prefix_labels(tree);
    double sum = 0.0;
    for (const auto& [pair, rate] : flows.entries()) {
        sum += rate * trie_distance(labeled, pair.first, pair.second);
    }
    return sum;
}

} // namespace trieopt
