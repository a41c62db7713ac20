#ifndef TRIEOPT_EXPERIMENT_HPP
#define TRIEOPT_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "trieopt/optimizer.hpp"

namespace trieopt {

/// Parameters of one random problem instance.
struct InstanceSpec {
    int n = 3;
    double total_flow = 1.0; // Mbps shared across all ordered pairs
    int h_max = 0;           // per-node budgets drawn from {0, ..., h_max}
    std::uint64_t seed = 0;
};

struct Instance {
    LabeledTree tree;
    FlowSet flows;
    EnergyBudget budgets;
};

/// Draws an instance deterministically from the seed: a uniform random
/// labeled tree, a uniform random root, per-ordered-pair flow weights drawn
/// uniform(0,1) and normalized to total_flow, and integer budgets uniform on
/// {0..h_max}. Budgets are derived as floor(u * (h_max + 1)) from the same
/// underlying draws for every h_max, so raising h_max never lowers any
/// node's budget and cross-h_max comparisons are paired.
Instance generate_instance(const InstanceSpec& spec);

enum class Algorithm { Greedy, Optimal, Oracle };
std::string algorithm_name(Algorithm a);

/// One optimizer run on one instance.
struct TrialRecord {
    InstanceSpec spec;
    Algorithm algorithm = Algorithm::Greedy;
    int roots_considered = 1;
    double traffic_initial = 0.0;
    double traffic_final = 0.0;
    std::uint64_t explored = 0;
    std::uint64_t pruned = 0;
    double ms = 0.0;
};

struct SweepConfig {
    std::vector<int> sizes;
    std::vector<int> h_maxes;
    int trials = 50;
    std::vector<Algorithm> algorithms;
    std::uint64_t base_seed = 1;
    double total_flow = 1.0;
    int optimal_ceiling = 7; // exact algorithms skipped above this size
    BoundMode bound = BoundMode::Admissible;
    bool timing = true;      // false writes ms = 0 for byte-stable output
};

/// Runs `trials` instances per (n, h_max) cell. Trial t uses seed
/// base_seed + t for every cell, so algorithms and h_max values are compared
/// on paired instances.
std::vector<TrialRecord> run_sweep(const SweepConfig& config);

struct MultiRootConfig {
    int n = 5;
    std::vector<int> h_maxes;
    std::vector<int> roots_considered; // values of k
    int trials = 50;
    std::vector<Algorithm> algorithms;
    std::uint64_t base_seed = 1;
    double total_flow = 1.0;
    BoundMode bound = BoundMode::Admissible;
    bool timing = true;
};

/// Re-runs each instance from several roots and reports, for each k, the
/// minimum traffic over the first k roots of a per-trial root permutation.
/// The first root is the instance's own, so k = 1 reproduces run_sweep;
/// larger k minimize over nested root sets, so per-trial results are
/// non-increasing in k. Throws ParseError if any k exceeds n.
std::vector<TrialRecord> run_multi_root(const MultiRootConfig& config);

/// Worst-case operation counts on the everyone-moves instance (all nodes but
/// the root active, effectively unlimited budgets).
struct ComplexityRow {
    int n = 0;
    std::uint64_t greedy_evaluations = 0;
    std::uint64_t greedy_expected = 0;   // sum of i*(n-i)
    std::uint64_t bnb_leaves = 0;        // 0 when not measured
    std::uint64_t oracle_leaves = 0;     // 0 when not measured
    std::uint64_t leaf_ceiling = 0;      // ((n-1)!)^2
};

/// Greedy is probed for every n in [n_min, n_max]; the exhaustive searches
/// only up to bnb_n_max (the unpruned solution tree has ((n-1)!)^2 leaves).
std::vector<ComplexityRow> complexity_probe(int n_min, int n_max, int bnb_n_max);

std::uint64_t greedy_worst_case_evaluations(int n);
std::uint64_t bnb_leaf_ceiling(int n);

/// One row per (trial, algorithm, k), sorted by
/// (n, h_max, algorithm, roots_considered, seed). Fixed-precision numbers:
/// reruns with the same configuration and seed are byte-identical when
/// timing is disabled.
void write_results_csv(std::ostream& out, const std::vector<TrialRecord>& rows);

/// Per-cell means over trials, one row per (n, h_max, algorithm, k).
void write_summary_csv(std::ostream& out, const std::vector<TrialRecord>& rows);

} // namespace trieopt

#endif
