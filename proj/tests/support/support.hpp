#pragma once

// Test-only builders, generators and independent oracles. Nothing here calls
// into the formulations it is used to check.

#include "slicebed/embed.hpp"
#include "slicebed/expand.hpp"
#include "slicebed/milp.hpp"
#include "slicebed/model.hpp"
#include "slicebed/scenario.hpp"
#include "slicebed/sim.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace testkit {

using namespace slicebed;

std::string data_path(const std::string& name);

/// Fluent builder for small hand-made networks.
class NetBuilder {
public:
    explicit NetBuilder(int resources = 1, int operators = 1);
    NodeId node(OperatorId op = 1, std::vector<double> capacity = {}, std::vector<double> price = {});
    /// Undirected link: two directed links with identical attributes. Returns the forward id.
    LinkId link(NodeId a, NodeId b, double capacity, double delay, double price);
    LinkId arc(NodeId a, NodeId b, double capacity, double delay, double price);
    VnfId vnf(double delay, std::vector<double> demand, std::vector<NodeId> candidates = {});
    PhysicalNetwork build();

private:
    PhysicalNetwork net_;
};

/// One-service slice with a derived catalog.
SliceRequest service_slice(const PhysicalNetwork& net, NodeId s, NodeId t, std::vector<VnfId> chain, double bandwidth,
                           double max_latency, OperatorId origin = 1, SliceId id = 1);

// ---------------------------------------------------------------- oracles

struct RawPath {
    std::vector<int> edges;
    std::vector<int> nodes;
    double cost = 0.0;
    double latency = 0.0;
};

/// Every simple source-to-sink path of an expanded network, by DFS.
std::vector<RawPath> all_simple_paths(const ExpandedNetwork& exp);

/// 0/1 knapsack optimum by dynamic programming over integer weights.
long knapsack_dp(const std::vector<int>& weights, const std::vector<int>& values, int capacity);

/// Exact LP optimum by vertex enumeration in rational arithmetic. Every
/// variable must have finite bounds. Returns nullopt when infeasible.
std::optional<double> rational_lp(const milp::IlpModel& model);

struct BruteResult {
    bool feasible = false;
    double cost = 0.0;
    long combinations = 0;
};

/// Best embedding of a whole slice by enumerating every placement and every
/// simple physical route per hop, at the static prices of `net`. Capacity,
/// latency and trust are checked here, independently of model.cpp.
BruteResult brute_force_embedding(const PhysicalNetwork& net, const TrustRelation& trust, const ResidualState& state,
                                  const SliceRequest& slice, const EmbeddingOptions& opts = {});

// ---------------------------------------------------------------- generators

struct TinyInstance {
    PhysicalNetwork net;
    TrustRelation trust;
    SliceRequest slice;
};

/// At most 4 nodes, at most 2 VNFs, integer data, 1 or 2 services.
TinyInstance tiny_instance(std::mt19937_64& rng);

/// Random binary program with at most `max_binaries` variables.
milp::IlpModel random_ilp(std::mt19937_64& rng, int max_binaries = 12);

/// Random LP with `n` bounded continuous variables and `m` rows.
milp::IlpModel random_lp(std::mt19937_64& rng, int n, int m);

struct MediumInstance {
    Scenario scenario;
    ResidualState state;
    SliceRequest slice;
};

/// ~30 nodes, 3 operators, chains of length 3, with the network preloaded by
/// a warm-up of PL admissions drawn from the same generator.
MediumInstance medium_instance(std::uint64_t seed, int warmup = 40);

/// Total number of simple expanded paths over the slice's services (max across services).
int simple_path_count(const PhysicalNetwork& net, const TrustRelation& trust, const SliceRequest& slice);

int uniform_int(std::mt19937_64& rng, int lo, int hi);
double uniform_real(std::mt19937_64& rng, double lo, double hi);

}  // namespace testkit
