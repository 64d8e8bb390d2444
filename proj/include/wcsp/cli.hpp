#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wcsp/graph.hpp"
#include "wcsp/solvers.hpp"

namespace wcsp::cli {

/// One query of an instance file. Ids are 0-based in memory and 1-based
/// on disk. Either a weight limit or a tightness in [0, 1] is given.
struct InstanceRow {
    StateId start = 0;
    StateId goal = 0;
    bool is_delta = false;
    Cost weight = 0;
    double delta = 0.0;
};

struct InstanceFile {
    std::filesystem::path cost1_file;
    std::filesystem::path cost2_file;
    std::optional<std::filesystem::path> coord_file;
    std::vector<InstanceRow> rows;
};

/// Relative graph paths are resolved against `base_dir`.
InstanceFile parse_instance_file(std::istream& in, const std::filesystem::path& base_dir = {});
void write_instance_file(std::ostream& out, const InstanceFile& f);

/// Minimal cost2 (h2) and the cost2 of the lexicographic cost1-shortest
/// path (ub2) between start and goal. Empty when goal is unreachable.
struct PairBounds {
    Cost h2;
    Cost ub2;
};
std::optional<PairBounds> pair_bounds(const Graph& g, StateId start, StateId goal);

/// W = round-half-up(h2 + delta * (ub2 - h2)).
Cost weight_from_delta(Cost h2, Cost ub2, double delta);

/// Resolves a row to a concrete weight limit; empty when unreachable.
std::optional<Cost> resolve_weight(const Graph& g, const InstanceRow& row);

struct GenResult {
    std::vector<InstanceRow> rows;
    std::vector<std::string> warnings;
};
GenResult gen_instances(const Graph& g, const std::vector<std::pair<StateId, StateId>>& pairs,
                        const std::vector<double>& deltas, bool add_reversed);

inline constexpr const char* kCsvVersionLine = "# wcsp-results v1";

struct ResultRow {
    std::string instance;
    std::string algorithm;
    std::string queue;
    std::string tie;
    std::string status;
    Cost cost1 = 0;
    Cost cost2 = 0;
    std::uint64_t runtime_us = 0;
    std::uint64_t expansions = 0;
    std::uint64_t generations = 0;
    std::uint64_t pruned_dominance = 0;
    std::uint64_t pruned_state_ub = 0;
    std::uint64_t pruned_global = 0;
    std::uint64_t queue_ops = 0;
    std::uint64_t peak_pool_blocks = 0;
    std::uint64_t memory_bytes = 0;

    bool operator==(const ResultRow&) const = default;
};

std::string csv_header();
std::string to_csv(const ResultRow& r);
ResultRow parse_csv_row(const std::string& line);

ResultRow make_row(const std::string& instance, Algorithm a, const QueueSettings& q, const SolveOutcome& o);

struct BenchConfig {
    std::vector<Algorithm> algorithms;
    std::vector<QueueSettings> queues;
    unsigned repeats = 5;
    SolveOptions options;
};

/// Runs every (row, algorithm, queue) cell `repeats` times and writes the
/// median-runtime run of each cell. Failures become status rows.
std::size_t run_bench(const Graph& g, const InstanceFile& inst, const BenchConfig& cfg, std::ostream& csv);

struct OracleCheckConfig {
    std::uint64_t seed = 7;
    unsigned graphs = 100;
    StateId max_states = 30;
    std::uint32_t cost_max = 10;
    unsigned pairs_per_graph = 2;
};

struct SuiteCase {
    Graph graph;
    StateId start;
    StateId goal;
    std::vector<Cost> weights;
    std::uint64_t seed;
};

/// Seeded random graphs, random pairs, and a weight sweep from infeasible
/// to loose for each pair. Unreachable pairs are redrawn.
std::vector<SuiteCase> random_suite(const OracleCheckConfig& cfg);

/// All solvers and queue settings the solver accepts.
std::vector<QueueSettings> all_queue_settings();

using SolverFn = std::function<SolveOutcome(Algorithm, const Graph&, const ProblemInstance&,
                                            const QueueSettings&)>;

/// Compares all solvers against the oracle. Prints the first
/// counterexample and returns false on a mismatch. `solver` defaults to
/// the library's solve().
bool oracle_check(const OracleCheckConfig& cfg, std::ostream& out, const SolverFn& solver = {});

/// Entry point of the command-line tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wcsp::cli
