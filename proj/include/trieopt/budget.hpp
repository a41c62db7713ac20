#ifndef TRIEOPT_BUDGET_HPP
#define TRIEOPT_BUDGET_HPP

#include <map>

#include "trieopt/tree.hpp"

namespace trieopt {

/// Per-node movement allowance in hops. The root never moves, so its entry is
/// treated as zero wherever budgets are consulted, whatever value it stores.
class EnergyBudget {
public:
    EnergyBudget() = default;
    explicit EnergyBudget(std::map<NodeId, int> hops);

    /// Every node gets the same allowance. Handy in tests.
    static EnergyBudget uniform(const TreeTopology& tree, int hops);

    void set(NodeId v, int hops);

    /// Raw allowance of v; throws on unknown nodes.
    int hops(NodeId v) const;

    bool covers(const TreeTopology& tree) const;

    const std::map<NodeId, int>& entries() const { return hops_; }

private:
    std::map<NodeId, int> hops_;
};

} // namespace trieopt

#endif
