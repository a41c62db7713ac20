#include "trieopt/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <tuple>

#include "trieopt/errors.hpp"
#include "trieopt/rng.hpp"

namespace trieopt {

namespace {

double run_timed(Algorithm algorithm, const Instance& instance, BoundMode bound, bool timing,
                 TrialRecord& record) {
    const auto start = std::chrono::steady_clock::now();
    SearchResult result = [&] {
        switch (algorithm) {
            case Algorithm::Greedy:
                return optimize_greedy(instance.tree, instance.flows, instance.budgets);
            case Algorithm::Optimal:
                return optimize_bnb(instance.tree, instance.flows, instance.budgets, bound);
            case Algorithm::Oracle:
            default:
                return brute_force_oracle(instance.tree, instance.flows, instance.budgets);
        }
    }();
    const auto stop = std::chrono::steady_clock::now();
    record.traffic_final = result.traffic;
    record.explored = result.nodes_explored;
    record.pruned = result.nodes_pruned;
    record.ms = timing ? std::chrono::duration<double, std::milli>(stop - start).count() : 0.0;
    return result.traffic;
}

std::string fixed(double value, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
    return buffer;
}

} // namespace

Instance generate_instance(const InstanceSpec& spec) {
    if (spec.n < 3) throw InvalidInputError("instance needs at least 3 nodes");
    if (!(spec.total_flow > 0.0)) throw InvalidInputError("total flow must be positive");
    if (spec.h_max < 0) throw InvalidInputError("h_max must be non-negative");

    Rng rng(spec.seed);

    // Draw order is part of the format: tree, root, flow weights, budgets.
    TreeTopology base = random_tree(spec.n, rng);
    const NodeId root = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(spec.n)));
    TreeTopology topo = root == base.root() ? std::move(base) : rerooted(base, root);

    std::vector<double> weights;
    weights.reserve(static_cast<std::size_t>(spec.n) * static_cast<std::size_t>(spec.n - 1));
    double weight_sum = 0.0;
    for (int src = 0; src < spec.n; ++src) {
        for (int dst = 0; dst < spec.n; ++dst) {
            if (src == dst) continue;
            const double w = rng.uniform01();
            weights.push_back(w);
            weight_sum += w;
        }
    }
    FlowSet flows;
    std::size_t k = 0;
    for (int src = 0; src < spec.n; ++src) {
        for (int dst = 0; dst < spec.n; ++dst) {
            if (src == dst) continue;
            flows.add(src, dst, spec.total_flow * weights[k++] / weight_sum);
        }
    }

    std::map<NodeId, int> hops;
    for (int v = 0; v < spec.n; ++v) {
        const int h = static_cast<int>(rng.uniform01() * (spec.h_max + 1));
        hops[v] = std::min(h, spec.h_max);
    }

    return Instance{assign_prefix_labels(topo), std::move(flows), EnergyBudget(std::move(hops))};
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Greedy: return "greedy";
        case Algorithm::Optimal: return "optimal";
        case Algorithm::Oracle: return "oracle";
    }
    return "unknown";
}

std::vector<TrialRecord> run_sweep(const SweepConfig& config) {
    if (config.trials < 1) throw ParseError("trials must be at least 1");
    if (config.sizes.empty() || config.h_maxes.empty() || config.algorithms.empty()) {
        throw ParseError("sweep needs sizes, h_max values and algorithms");
    }

    std::vector<TrialRecord> rows;
    for (int n : config.sizes) {
        for (int h_max : config.h_maxes) {
            for (int trial = 0; trial < config.trials; ++trial) {
                const InstanceSpec spec{n, config.total_flow, h_max, config.base_seed + static_cast<std::uint64_t>(trial)};
                const Instance instance = generate_instance(spec);
                const double traffic_initial = aggregate_traffic(instance.tree.topology(), instance.flows);
                for (Algorithm algorithm : config.algorithms) {
                    if (algorithm != Algorithm::Greedy && n > config.optimal_ceiling) continue;
                    TrialRecord record;
                    record.spec = spec;
                    record.algorithm = algorithm;
                    record.roots_considered = 1;
                    record.traffic_initial = traffic_initial;
                    run_timed(algorithm, instance, config.bound, config.timing, record);
                    rows.push_back(record);
                }
            }
        }
    }
    return rows;
}

std::vector<TrialRecord> run_multi_root(const MultiRootConfig& config) {
    if (config.trials < 1) throw ParseError("trials must be at least 1");
    if (config.h_maxes.empty() || config.roots_considered.empty() || config.algorithms.empty()) {
        throw ParseError("multi-root run needs h_max values, root counts and algorithms");
    }
    int max_k = 0;
    for (int k : config.roots_considered) {
        if (k < 1) throw ParseError("root count must be at least 1");
        if (k > config.n) {
            throw ParseError("cannot consider " + std::to_string(k) + " roots in a " +
                             std::to_string(config.n) + "-node network");
        }
        max_k = std::max(max_k, k);
    }

    std::vector<TrialRecord> rows;
    for (int h_max : config.h_maxes) {
        for (int trial = 0; trial < config.trials; ++trial) {
            const InstanceSpec spec{config.n, config.total_flow, h_max,
                                    config.base_seed + static_cast<std::uint64_t>(trial)};
            const Instance instance = generate_instance(spec);
            const double traffic_initial = aggregate_traffic(instance.tree.topology(), instance.flows);

            // Candidate roots: the instance's own first, then the remaining
            // nodes in an order drawn from a salted stream so the instance
            // itself is untouched.
            Rng root_rng(spec.seed ^ 0x9e3779b97f4a7c15ull);
            const NodeId instance_root = instance.tree.topology().root();
            std::vector<NodeId> others;
            for (NodeId v : instance.tree.topology().nodes()) {
                if (v != instance_root) others.push_back(v);
            }
            for (std::size_t i = others.size(); i > 1; --i) {
                std::swap(others[i - 1], others[root_rng.below(i)]);
            }
            std::vector<NodeId> roots{instance_root};
            roots.insert(roots.end(), others.begin(), others.end());

            for (Algorithm algorithm : config.algorithms) {
                std::vector<double> per_root;
                std::vector<double> per_root_ms;
                std::uint64_t explored = 0, pruned = 0;
                for (int r = 0; r < max_k; ++r) {
                    Instance view{roots[static_cast<std::size_t>(r)] == instance_root
                                      ? instance.tree
                                      : assign_prefix_labels(rerooted(instance.tree.topology(),
                                                                      roots[static_cast<std::size_t>(r)])),
                                  instance.flows, instance.budgets};
                    TrialRecord probe;
                    probe.spec = spec;
                    per_root.push_back(run_timed(algorithm, view, config.bound, config.timing, probe));
                    per_root_ms.push_back(probe.ms);
                    explored += probe.explored;
                    pruned += probe.pruned;
                }
                for (int k : config.roots_considered) {
                    TrialRecord record;
                    record.spec = spec;
                    record.algorithm = algorithm;
                    record.roots_considered = k;
                    record.traffic_initial = traffic_initial;
                    record.traffic_final = *std::min_element(per_root.begin(), per_root.begin() + k);
                    record.explored = explored;
                    record.pruned = pruned;
                    double ms = 0.0;
                    for (int r = 0; r < k; ++r) ms += per_root_ms[static_cast<std::size_t>(r)];
                    record.ms = ms;
                    rows.push_back(record);
                }
            }
        }
    }
    return rows;
}

std::uint64_t greedy_worst_case_evaluations(int n) {
    std::uint64_t total = 0;
    for (int i = 1; i <= n - 1; ++i) {
        total += static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n - i);
    }
    return total;
}

std::uint64_t bnb_leaf_ceiling(int n) {
    std::uint64_t factorial = 1;
    for (int i = 2; i <= n - 1; ++i) factorial *= static_cast<std::uint64_t>(i);
    return factorial * factorial;
}

std::vector<ComplexityRow> complexity_probe(int n_min, int n_max, int bnb_n_max) {
    if (n_min < 3) throw ParseError("probe needs n >= 3");
    if (n_max < n_min) throw ParseError("empty probe range");

    std::vector<ComplexityRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        // Everyone-moves chain: each non-root node sends to the root and has
        // budget to reach any position.
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (int v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
        const LabeledTree tree = assign_prefix_labels(TreeTopology(0, edges));
        FlowSet flows;
        for (int v = 1; v < n; ++v) flows.add(v, 0, 1.0 / (v + 1));
        const EnergyBudget budgets = EnergyBudget::uniform(tree.topology(), 1000);

        ComplexityRow row;
        row.n = n;
        row.greedy_expected = greedy_worst_case_evaluations(n);
        row.leaf_ceiling = bnb_leaf_ceiling(n);
        row.greedy_evaluations = optimize_greedy(tree, flows, budgets).nodes_explored;
        if (n <= bnb_n_max) {
            row.bnb_leaves = optimize_bnb(tree, flows, budgets).leaves_explored;
            if (n <= 6) {
                row.oracle_leaves = brute_force_oracle(tree, flows, budgets).leaves_explored;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

void write_results_csv(std::ostream& out, const std::vector<TrialRecord>& rows) {
    std::vector<TrialRecord> sorted = rows;
    std::stable_sort(sorted.begin(), sorted.end(), [](const TrialRecord& a, const TrialRecord& b) {
        return std::make_tuple(a.spec.n, a.spec.h_max, algorithm_name(a.algorithm), a.roots_considered, a.spec.seed) <
               std::make_tuple(b.spec.n, b.spec.h_max, algorithm_name(b.algorithm), b.roots_considered, b.spec.seed);
    });
    out << "n,h_max,seed,algorithm,roots_considered,traffic_initial,traffic_final,explored,pruned,ms\n";
    for (const TrialRecord& r : sorted) {
        out << r.spec.n << ',' << r.spec.h_max << ',' << r.spec.seed << ','
            << algorithm_name(r.algorithm) << ',' << r.roots_considered << ','
            << fixed(r.traffic_initial, 9) << ',' << fixed(r.traffic_final, 9) << ','
            << r.explored << ',' << r.pruned << ',' << fixed(r.ms, 3) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<TrialRecord>& rows) {
    struct Cell {
        int count = 0;
        double traffic_initial = 0.0;
        double traffic_final = 0.0;
        double ms = 0.0;
    };
    std::map<std::tuple<int, int, std::string, int>, Cell> cells;
    for (const TrialRecord& r : rows) {
        Cell& cell = cells[{r.spec.n, r.spec.h_max, algorithm_name(r.algorithm), r.roots_considered}];
        ++cell.count;
        cell.traffic_initial += r.traffic_initial;
        cell.traffic_final += r.traffic_final;
        cell.ms += r.ms;
    }
    out << "n,h_max,algorithm,roots_considered,trials,mean_traffic_initial,mean_traffic_final,mean_ms\n";
    for (const auto& [key, cell] : cells) {
        out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ','
            << std::get<3>(key) << ',' << cell.count << ','
            << fixed(cell.traffic_initial / cell.count, 9) << ','
            << fixed(cell.traffic_final / cell.count, 9) << ','
            << fixed(cell.ms / cell.count, 3) << '\n';
    }
}

} // namespace trieopt
