#pragma once

#include "slicebed/embed.hpp"
#include "slicebed/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <chrono>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace slicebed {

/// Deterministic random stream: mt19937_64 seeded from (seed, stream) through
/// splitmix64, with portable inverse-CDF draws.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    int uniform_int(int lo, int hi);        // inclusive
    double exponential(double mean);
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

/// Parameters of the random multi-operator instance generator.
struct ScenarioGen {
    int operators = 3;
    int nodes_per_operator = 10;
    double extra_edge_prob = 0.15;     // intra-operator chords beyond the spanning tree
    int border_nodes = 2;              // per operator
    double inter_link_prob = 0.5;      // pi
    double utilization = 0.6;          // rho: reference load / capacity
    double trust_density = 0.6;
    double function_node_fraction = 0.5;
    int vnf_count = 4;
    std::vector<std::string> resources{"cpu", "ram"};
    double delay_min = 1.0, delay_max = 4.0;
    double link_price_min = 1.0, link_price_max = 4.0;
    double inter_link_price_factor = 1.5;
    double node_price_min = 1.0, node_price_max = 3.0;
    double capacity_spread = 0.5;      // capacities scaled by U[1 - s, 1 + s]
    int connectivity_retries = 100;
    // true: each element sized from its own baseline load; false: from the network mean
    bool proportional_capacity = false;
    int calibration_samples = 1000;    // requests embedded alone to measure the mean footprint
    Workload workload{.arrival_rate = 8.0, .mean_holding = 10.0, .horizon = 200.0};
    std::vector<SliceTypeSpec> slice_types = default_slice_types();
    PricingPolicy pricing;

    void validate() const;
};

/// The four congestion regimes used by default.
inline const std::vector<double> kCongestionRegimes{0.3, 0.6, 0.8, 0.95};

Scenario generate_scenario(const ScenarioGen& gen, std::uint64_t seed);

/// Arrival trace over [0, horizon): Poisson arrivals, slice contents and holding
/// times each come from their own stream, so they never depend on admission outcomes.
std::vector<SliceRequest> generate_trace(const Scenario& scenario, const Workload& workload);

/// Draws one request of a given type from `rng` (used by the trace and by tests).
SliceRequest draw_request(const Scenario& scenario, const SliceTypeSpec& type, Rng& rng, SliceId id);

struct RunConfig {
    std::string label;
    Engine engine = Engine::path_link;
    PricingPolicy pricing;
    int k_paths = 8;
    std::chrono::milliseconds time_limit{10000};
    bool check_conservation = false; // recompute the ledger after every event
    bool record_events = false;

    nlohmann::json to_json() const;
};

struct TypeMetrics {
    long offered = 0;
    long blocked = 0;
    double accepted_cost = 0.0;
    std::vector<double> solve_ms; // wall time per attempt; excluded from deterministic outputs

    double mean_solve_ms() const;
    double solve_ms_percentile(double q) const; // nearest rank, q in [0, 1]
    double blocking_probability() const { return offered ? static_cast<double>(blocked) / static_cast<double>(offered) : 0.0; }
    double mean_accepted_cost() const {
        const long accepted = offered - blocked;
        return accepted ? accepted_cost / static_cast<double>(accepted) : 0.0;
    }
};

struct Sample {
    double time = 0.0;
    std::size_t active = 0;
    double mean_link_utilization = 0.0;
};

struct RunMetrics {
    RunConfig config;
    std::uint64_t seed = 0;
    TypeMetrics total;
    std::map<std::string, TypeMetrics> by_type;
    std::map<std::string, long> block_reasons;
    double mean_concurrent = 0.0;
    long checker_failures = 0;
    long non_optimal_accepts = 0;
    bool conservation_ok = true;
    bool final_state_clean = true;
    std::vector<Sample> series;
    std::vector<nlohmann::json> events;
};

RunMetrics run(const Scenario& scenario, const Workload& workload, const RunConfig& config);
/// Same as run over a pre-generated trace.
RunMetrics run_trace(const Scenario& scenario, const Workload& workload, const std::vector<SliceRequest>& trace,
                     const RunConfig& config);

/// Runs every config on the identical arrival trace; fans out over SLICEBED_THREADS workers.
std::vector<RunMetrics> compare(const Scenario& scenario, const Workload& workload,
                                const std::vector<RunConfig>& configs);

/// Worker count from SLICEBED_THREADS, defaulting to the hardware concurrency.
unsigned worker_threads();

// Output files. Everything except timing.json is a pure function of the inputs.
std::string config_hash(const RunConfig& config, const Workload& workload);
std::string metrics_csv(const RunMetrics& m);
nlohmann::json summary_json(const RunMetrics& m);
nlohmann::json timing_json(const RunMetrics& m);
/// Writes metrics.csv, summary.json, timing.json, events.jsonl (if recorded) and
/// timeseries.csv (if sampled) into out/<hash>-s<seed>; returns that directory.
std::filesystem::path write_run_dir(const std::filesystem::path& out, const RunMetrics& m, const Workload& workload);
/// Long-format comparison rows with deltas against the first config; no header line.
std::string comparison_csv(const std::vector<RunMetrics>& runs);
std::string comparison_csv_header();

}  // namespace slicebed
