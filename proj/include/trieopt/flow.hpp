#ifndef TRIEOPT_FLOW_HPP
#define TRIEOPT_FLOW_HPP

#include <map>
#include <set>
#include <utility>

#include "trieopt/tree.hpp"

namespace trieopt {

/// Directed traffic demands in Mbps, keyed by ordered (source, destination)
/// pairs. Self-flows are rejected at insertion rather than assumed zero;
/// absent pairs mean rate zero. Value-like and safe to share once built.
class FlowSet {
public:
    FlowSet() = default;

    /// Accumulates rate onto the (src, dst) demand. Zero-rate adds are
    /// dropped so that "has any flow" stays an exact predicate.
    void add(NodeId src, NodeId dst, double mbps);

    double rate(NodeId src, NodeId dst) const;

    /// Sum of all rates.
    double total() const;

    /// True when v is the source or destination of any positive demand.
    bool has_flow_at(NodeId v) const { return endpoints_.count(v) > 0; }

    /// Sum of rates of all demands with v as an endpoint.
    double endpoint_rate(NodeId v) const;

    const std::map<std::pair<NodeId, NodeId>, double>& entries() const { return flows_; }

    bool empty() const { return flows_.empty(); }

private:
    std::map<std::pair<NodeId, NodeId>, double> flows_;
    std::set<NodeId> endpoints_;
};

/// Aggregate traffic carried by the tree: the sum over all demands of
/// rate times tree-path hop count, in Mbps-hops. Relays count once per hop,
/// which is why distant endpoints inflate the total. Distances come from the
/// canonical prefix labeling of the topology.
/// Throws InvalidInputError if a demand endpoint is not in the tree.
double aggregate_traffic(const TreeTopology& tree, const FlowSet& flows);

} // namespace trieopt

#endif
