// trieopt command-line driver: files in, files out.
//
// Exit codes: 0 success, 1 unusable input (malformed file, bad parameter
// combination), 2 structural violation (non-tree topology, missing flow
// endpoint, negative budget, or a reconfiguration that breaks connectivity).

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "trieopt/errors.hpp"
#include "trieopt/experiment.hpp"
#include "trieopt/io.hpp"
#include "trieopt/optimizer.hpp"
#include "trieopt/reconfig.hpp"

namespace {

using namespace trieopt;

namespace fs = std::filesystem;

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<int> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string part = text.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            const int value = std::stoi(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            values.push_back(value);
        } catch (const std::exception&) {
            throw ParseError("invalid value '" + part + "' in " + flag);
        }
        pos = comma + 1;
    }
    return values;
}

BoundMode parse_bound(const std::string& text) {
    if (text == "admissible") return BoundMode::Admissible;
    if (text == "paper-literal") return BoundMode::PaperLiteral;
    throw ParseError("unknown bound mode '" + text + "' (admissible|paper-literal)");
}

Algorithm parse_algorithm(const std::string& text) {
    if (text == "greedy") return Algorithm::Greedy;
    if (text == "optimal") return Algorithm::Optimal;
    if (text == "oracle") return Algorithm::Oracle;
    throw ParseError("unknown algorithm '" + text + "' (greedy|optimal|oracle)");
}

struct OptimizeArgs {
    std::string topology, flows, budgets;
    std::string algorithm = "optimal";
    std::string bound = "admissible";
    std::string out;
};

int cmd_optimize(const OptimizeArgs& args) {
    const TreeTopology topo = io::read_topology(args.topology);
    const FlowSet flows = io::read_flows(args.flows);
    const EnergyBudget budgets = io::read_budgets(args.budgets);
    const Algorithm algorithm = parse_algorithm(args.algorithm);
    const BoundMode bound = parse_bound(args.bound);

    const LabeledTree initial = assign_prefix_labels(topo);
    const double traffic_initial = aggregate_traffic(topo, flows);

    const auto start = std::chrono::steady_clock::now();
    const SearchResult result = [&] {
        switch (algorithm) {
            case Algorithm::Greedy: return optimize_greedy(initial, flows, budgets);
            case Algorithm::Optimal: return optimize_bnb(initial, flows, budgets, bound);
            case Algorithm::Oracle:
            default: return brute_force_oracle(initial, flows, budgets);
        }
    }();
    const auto stop = std::chrono::steady_clock::now();

    fs::create_directories(args.out);
    io::write_topology(fs::path(args.out) / "final_topology.json", result.final.topology());
    io::write_plan(fs::path(args.out) / "plan.json", result.plan);
    io::SummaryRecord summary{args.algorithm,
                              args.bound,
                              traffic_initial,
                              result.traffic,
                              result.nodes_explored,
                              result.nodes_pruned,
                              std::chrono::duration<double, std::milli>(stop - start).count()};
    io::write_summary(fs::path(args.out) / "summary.json", summary);
    std::cout << io::summary_line(summary) << '\n';
    return 0;
}

struct PlanArgs {
    std::string topology, desired, out;
};

int cmd_plan(const PlanArgs& args) {
    const TreeTopology initial_topo = io::read_topology(args.topology);
    const TreeTopology desired_topo = io::read_topology(args.desired);
    const ReconfigPlan plan = plan_labels(assign_prefix_labels(initial_topo), desired_topo);
    fs::create_directories(args.out);
    io::write_plan(fs::path(args.out) / "plan.json", plan);
    return 0;
}

struct SimulateArgs {
    std::string topology, plan, out;
};

int cmd_simulate(const SimulateArgs& args) {
    const TreeTopology topo = io::read_topology(args.topology);
    const LabeledTree initial = assign_prefix_labels(topo);
    const ReconfigPlan plan = plan_from_entries(initial, io::read_plan_entries(args.plan));
    const MovementTrace trace = simulate(plan);

    fs::create_directories(args.out);
    io::write_trace(fs::path(args.out) / "trace.json", trace);
    int step_number = 0;
    for (const MovementStep& step : trace.steps) {
        std::cout << "step " << ++step_number << ": node " << step.node << " " << step.from
                  << " -> " << step.to << " [connected]\n";
    }
    std::cout << "final topology reached in " << trace.steps.size() << " steps\n";
    return 0;
}

struct ExperimentArgs {
    std::string sizes = "3,4,5,6,7";
    std::string h_maxes = "1,3,10";
    int trials = 50;
    std::string algorithms = "greedy,optimal";
    std::uint64_t seed = 1;
    double total_flow = 1.0;
    int optimal_ceiling = 7;
    std::string bound = "admissible";
    std::string roots; // empty = plain sweep
    bool no_timing = false;
    std::string out;
};

int cmd_experiment(const ExperimentArgs& args) {
    std::vector<Algorithm> algorithms;
    {
        std::size_t pos = 0;
        const std::string& text = args.algorithms;
        while (pos <= text.size()) {
            const std::size_t comma = std::min(text.find(',', pos), text.size());
            algorithms.push_back(parse_algorithm(text.substr(pos, comma - pos)));
            pos = comma + 1;
        }
    }
    const std::vector<int> sizes = parse_int_list(args.sizes, "--sizes");
    const std::vector<int> h_maxes = parse_int_list(args.h_maxes, "--hmax");

    std::vector<TrialRecord> rows;
    if (args.roots.empty()) {
        SweepConfig config;
        config.sizes = sizes;
        config.h_maxes = h_maxes;
        config.trials = args.trials;
        config.algorithms = algorithms;
        config.base_seed = args.seed;
        config.total_flow = args.total_flow;
        config.optimal_ceiling = args.optimal_ceiling;
        config.bound = parse_bound(args.bound);
        config.timing = !args.no_timing;
        rows = run_sweep(config);
    } else {
        if (sizes.size() != 1) {
            throw ParseError("multi-root experiments need exactly one --sizes value");
        }
        MultiRootConfig config;
        config.n = sizes.front();
        config.h_maxes = h_maxes;
        config.roots_considered = parse_int_list(args.roots, "--roots");
        config.trials = args.trials;
        config.algorithms = algorithms;
        config.base_seed = args.seed;
        config.total_flow = args.total_flow;
        config.bound = parse_bound(args.bound);
        config.timing = !args.no_timing;
        rows = run_multi_root(config);
    }

    fs::create_directories(args.out);
    std::ofstream results(fs::path(args.out) / "results.csv");
    write_results_csv(results, rows);
    std::ofstream summary(fs::path(args.out) / "summary.csv");
    write_summary_csv(summary, rows);
    std::cout << "wrote " << rows.size() << " rows to " << args.out << "/results.csv\n";
    return 0;
}

struct BenchArgs {
    int min_n = 3;
    int max_n = 6;
    int bnb_max = 6;
    std::string out;
};

int cmd_bench(const BenchArgs& args) {
    const std::vector<ComplexityRow> rows = complexity_probe(args.min_n, args.max_n, args.bnb_max);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!args.out.empty()) {
        fs::create_directories(fs::path(args.out).parent_path().empty() ? "." : fs::path(args.out).parent_path());
        file.open(args.out);
        out = &file;
    }
    *out << "n,greedy_evaluations,greedy_expected,bnb_leaves,oracle_leaves,leaf_ceiling\n";
    for (const ComplexityRow& r : rows) {
        *out << r.n << ',' << r.greedy_evaluations << ',' << r.greedy_expected << ','
             << r.bnb_leaves << ',' << r.oracle_leaves << ',' << r.leaf_ceiling << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tree-network traffic minimizer and reconfiguration planner"};
    app.require_subcommand(1);

    OptimizeArgs optimize_args;
    CLI::App* optimize = app.add_subcommand("optimize", "compute a traffic-minimizing final topology");
    optimize->add_option("--topology", optimize_args.topology, "initial topology file")->required();
    optimize->add_option("--flows", optimize_args.flows, "traffic demand file")->required();
    optimize->add_option("--budgets", optimize_args.budgets, "per-node hop budget file")->required();
    optimize->add_option("--algorithm", optimize_args.algorithm, "greedy|optimal|oracle");
    optimize->add_option("--bound", optimize_args.bound, "admissible|paper-literal");
    optimize->add_option("--out", optimize_args.out, "output directory")->required();

    PlanArgs plan_args;
    CLI::App* plan = app.add_subcommand("plan", "plan the move to a given desired topology");
    plan->add_option("--topology", plan_args.topology, "initial topology file")->required();
    plan->add_option("--desired", plan_args.desired, "desired topology file")->required();
    plan->add_option("--out", plan_args.out, "output directory")->required();

    SimulateArgs simulate_args;
    CLI::App* sim = app.add_subcommand("simulate", "execute a plan step by step, auditing connectivity");
    sim->add_option("--topology", simulate_args.topology, "initial topology file")->required();
    sim->add_option("--plan", simulate_args.plan, "plan file")->required();
    sim->add_option("--out", simulate_args.out, "output directory")->required();

    ExperimentArgs experiment_args;
    CLI::App* experiment = app.add_subcommand("experiment", "seeded Monte Carlo sweeps, CSV out");
    experiment->add_option("--sizes", experiment_args.sizes, "comma list of network sizes");
    experiment->add_option("--hmax", experiment_args.h_maxes, "comma list of budget caps");
    experiment->add_option("--trials", experiment_args.trials, "instances per cell");
    experiment->add_option("--algorithms", experiment_args.algorithms, "comma list: greedy,optimal,oracle");
    experiment->add_option("--seed", experiment_args.seed, "base seed; trial t uses seed+t");
    experiment->add_option("--total-flow", experiment_args.total_flow, "total demand in Mbps");
    experiment->add_option("--optimal-ceiling", experiment_args.optimal_ceiling,
                           "largest n for the exact algorithms");
    experiment->add_option("--bound", experiment_args.bound, "admissible|paper-literal");
    experiment->add_option("--roots", experiment_args.roots,
                           "comma list of root counts; switches to the multi-root experiment");
    experiment->add_flag("--no-timing", experiment_args.no_timing, "write ms=0 for byte-stable output");
    experiment->add_option("--out", experiment_args.out, "output directory")->required();

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "operation counters on worst-case instances");
    bench->add_option("--min", bench_args.min_n, "smallest network size");
    bench->add_option("--max", bench_args.max_n, "largest network size");
    bench->add_option("--bnb-max", bench_args.bnb_max, "largest size for the exhaustive counters");
    bench->add_option("--out", bench_args.out, "CSV file (default: stdout)");

    try {
        app.parse(argc, argv);
        if (optimize->parsed()) return cmd_optimize(optimize_args);
        if (plan->parsed()) return cmd_plan(plan_args);
        if (sim->parsed()) return cmd_simulate(simulate_args);
        if (experiment->parsed()) return cmd_experiment(experiment_args);
        if (bench->parsed()) return cmd_bench(bench_args);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const InvalidInputError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const InternalInvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 2;
    }
}
