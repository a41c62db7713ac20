#include "trieopt/io.hpp"

#include <fstream>

#include "json.hpp"

#include "trieopt/errors.hpp"

namespace trieopt::io {

namespace {

using nlohmann::json;

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_json(const std::filesystem::path& path, const json& value) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write " + path.string());
    }
    out << value.dump(2) << '\n';
}

// Re-badges type errors ("expected number, got string") as parse failures of
// the named file.
template <typename F>
auto shaped(const std::filesystem::path& path, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

} // namespace

TreeTopology read_topology(const std::filesystem::path& path) {
    const json doc = load_json(path);
    return shaped(path, [&] {
        const NodeId root = doc.at("root").get<NodeId>();
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (const json& edge : doc.at("edges")) {
            if (!edge.is_array() || edge.size() != 2) {
                throw ParseError(path.string() + ": each edge must be a [parent, child] pair");
            }
            edges.emplace_back(edge.at(0).get<NodeId>(), edge.at(1).get<NodeId>());
        }
        return TreeTopology(root, edges);
    });
}

void write_topology(const std::filesystem::path& path, const TreeTopology& topology) {
    json edges = json::array();
    for (const auto& [p, c] : topology.edges()) edges.push_back({p, c});
    save_json(path, json{{"root", topology.root()}, {"edges", edges}});
}

FlowSet read_flows(const std::filesystem::path& path) {
    const json doc = load_json(path);
    return shaped(path, [&] {
        FlowSet flows;
        for (const json& entry : doc.at("flows")) {
            flows.add(entry.at("src").get<NodeId>(), entry.at("dst").get<NodeId>(),
                      entry.at("mbps").get<double>());
        }
        return flows;
    });
}

void write_flows(const std::filesystem::path& path, const FlowSet& flows) {
    json list = json::array();
    for (const auto& [pair, rate] : flows.entries()) {
        list.push_back({{"src", pair.first}, {"dst", pair.second}, {"mbps", rate}});
    }
    save_json(path, json{{"flows", list}});
}

EnergyBudget read_budgets(const std::filesystem::path& path) {
    const json doc = load_json(path);
    return shaped(path, [&] {
        std::map<NodeId, int> hops;
        for (const json& entry : doc.at("budgets")) {
            const NodeId id = entry.at("id").get<NodeId>();
            if (!hops.emplace(id, entry.at("hops").get<int>()).second) {
                throw InvalidInputError("duplicate budget for node " + std::to_string(id));
            }
        }
        return EnergyBudget(std::move(hops));
    });
}

void write_budgets(const std::filesystem::path& path, const EnergyBudget& budgets) {
    json list = json::array();
    for (const auto& [id, hops] : budgets.entries()) {
        list.push_back({{"id", id}, {"hops", hops}});
    }
    save_json(path, json{{"budgets", list}});
}

std::vector<PlanEntry> read_plan_entries(const std::filesystem::path& path) {
    const json doc = load_json(path);
    return shaped(path, [&] {
        std::vector<PlanEntry> entries;
        for (const json& entry : doc.at("entries")) {
            PlanEntry e;
            e.node = entry.at("id").get<NodeId>();
            e.moving = entry.at("moving").get<bool>();
            if (e.moving) {
                e.anchor_label = PrefixLabel::parse(entry.at("anchor_label").get<std::string>());
                e.desired_label = PrefixLabel::parse(entry.at("desired_label").get<std::string>());
                e.move_distance = entry.at("move_distance").get<int>();
            }
            entries.push_back(std::move(e));
        }
        return entries;
    });
}

void write_plan(const std::filesystem::path& path, const ReconfigPlan& plan) {
    json list = json::array();
    for (const PlanEntry& e : plan.entries()) {
        json entry{{"id", e.node}, {"moving", e.moving}};
        if (e.moving) {
            entry["anchor_label"] = e.anchor_label->str();
            entry["desired_label"] = e.desired_label->str();
            entry["move_distance"] = e.move_distance;
        }
        list.push_back(std::move(entry));
    }
    save_json(path, json{{"root", plan.initial().topology().root()}, {"entries", list}});
}

void write_trace(const std::filesystem::path& path, const MovementTrace& trace) {
    json steps = json::array();
    for (const MovementStep& step : trace.steps) {
        steps.push_back({{"node", step.node}, {"from", step.from}, {"to", step.to}});
    }
    const TreeTopology& topo = trace.final.topology();
    json edges = json::array();
    for (const auto& [p, c] : topo.edges()) edges.push_back({p, c});
    json labels = json::array();
    for (NodeId v : topo.nodes()) {
        labels.push_back({{"id", v}, {"label", trace.final.label(v).str()}});
    }
    save_json(path, json{{"steps", steps},
                         {"final", json{{"root", topo.root()}, {"edges", edges}, {"labels", labels}}}});
}

std::string summary_line(const SummaryRecord& record) {
    json value{{"algorithm", record.algorithm},
               {"bound", record.bound},
               {"traffic_initial", record.traffic_initial},
               {"traffic_final", record.traffic_final},
               {"nodes_explored", record.nodes_explored},
               {"nodes_pruned", record.nodes_pruned},
               {"wall_time_ms", record.wall_time_ms}};
    return value.dump();
}

void write_summary(const std::filesystem::path& path, const SummaryRecord& record) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write " + path.string());
    }
    out << summary_line(record) << '\n';
}

} // namespace trieopt::io
