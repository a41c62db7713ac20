#include "trieopt/budget.hpp"

#include <string>

#include "trieopt/errors.hpp"

namespace trieopt {

EnergyBudget::EnergyBudget(std::map<NodeId, int> hops) : hops_(std::move(hops)) {
    for (const auto& [v, h] : hops_) {
        if (h < 0) throw InvalidInputError("negative hop budget at node " + std::to_string(v));
    }
}

EnergyBudget EnergyBudget::uniform(const TreeTopology& tree, int hops) {
    std::map<NodeId, int> map;
    for (NodeId v : tree.nodes()) map[v] = hops;
    return EnergyBudget(std::move(map));
}

void EnergyBudget::set(NodeId v, int hops) {
    if (hops < 0) throw InvalidInputError("negative hop budget at node " + std::to_string(v));
    hops_[v] = hops;
}

int EnergyBudget::hops(NodeId v) const {
    const auto it = hops_.find(v);
    if (it == hops_.end()) throw InvalidInputError("no hop budget for node " + std::to_string(v));
    return it->second;
}

bool EnergyBudget::covers(const TreeTopology& tree) const {
    for (NodeId v : tree.nodes()) {
        if (hops_.find(v) == hops_.end()) return false;
    }
    return true;
}

} // namespace trieopt
