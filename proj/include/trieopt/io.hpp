#ifndef TRIEOPT_IO_HPP
#define TRIEOPT_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "trieopt/budget.hpp"
#include "trieopt/flow.hpp"
#include "trieopt/optimizer.hpp"
#include "trieopt/reconfig.hpp"
#include "trieopt/tree.hpp"

namespace trieopt::io {

// File formats. All files are JSON:
//   topology: {"root": id, "edges": [[parent, child], ...]}
//   flows:    {"flows": [{"src": id, "dst": id, "mbps": number}, ...]}
//   budgets:  {"budgets": [{"id": id, "hops": count}, ...]}
//   plan:     {"root": id, "entries": [{"id", "moving", "anchor_label",
//              "desired_label", "move_distance"}, ...]}
//   trace:    {"steps": [{"node", "from", "to"}, ...], "final": topology
//              with per-node labels}
// Malformed JSON or wrong value types raise ParseError (with the parser's
// line/column diagnostics); well-formed files that break a structural rule
// raise InvalidInputError.

TreeTopology read_topology(const std::filesystem::path& path);
void write_topology(const std::filesystem::path& path, const TreeTopology& topology);

FlowSet read_flows(const std::filesystem::path& path);
void write_flows(const std::filesystem::path& path, const FlowSet& flows);

EnergyBudget read_budgets(const std::filesystem::path& path);
void write_budgets(const std::filesystem::path& path, const EnergyBudget& budgets);

std::vector<PlanEntry> read_plan_entries(const std::filesystem::path& path);
void write_plan(const std::filesystem::path& path, const ReconfigPlan& plan);

void write_trace(const std::filesystem::path& path, const MovementTrace& trace);

struct SummaryRecord {
    std::string algorithm;
    std::string bound;
    double traffic_initial = 0.0;
    double traffic_final = 0.0;
    std::uint64_t nodes_explored = 0;
    std::uint64_t nodes_pruned = 0;
    double wall_time_ms = 0.0;
};

/// Single-line JSON rendering of the run summary.
std::string summary_line(const SummaryRecord& record);
void write_summary(const std::filesystem::path& path, const SummaryRecord& record);

} // namespace trieopt::io

#endif
