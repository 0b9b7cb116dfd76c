#pragma once

#include "slicebed/expand.hpp"
#include "slicebed/model.hpp"
#include "slicebed/pricing.hpp"

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace slicebed {

enum class PathWeight { cost, latency };

/// Loopless path in an expanded network, as edge ids plus the visited node ids.
struct ExpandedPath {
    std::vector<int> edges;
    std::vector<int> nodes;
    double weight = 0.0;
};

/// Minimum-weight source-to-sink path (Dijkstra); ties go to the smaller node id.
std::optional<ExpandedPath> shortest_path(const ExpandedNetwork& exp, PathWeight weight = PathWeight::cost);

/// Up to k loopless source-to-sink paths in nondecreasing weight (Yen). Among
/// pending deviations of equal weight the lexicographically smaller expanded
/// node sequence wins. The result for k is always a prefix of the result for k + 1.
std::vector<ExpandedPath> k_shortest_paths(const ExpandedNetwork& exp, int k, PathWeight weight = PathWeight::cost);

struct CandidatePath {
    int service = 0; // index into SliceRequest::services
    int index = 0;   // rank within the service's list
    std::vector<int> expanded_nodes;
    std::vector<NodeId> placement;
    std::vector<std::vector<LinkId>> hop_routes;
    double cost = 0.0;
    double link_cost = 0.0;
    double node_cost = 0.0;
    double latency = 0.0;
    std::vector<std::pair<LinkId, double>> link_load;                  // bandwidth per link
    std::vector<std::tuple<NodeId, ResourceId, double>> node_load;     // demand per node resource
};

struct CandidateOptions {
    int k_paths = 8;
    EmbeddingOptions embedding;
    // Drop saturated links and full hosts from the expanded network before the path search.
    bool prune_saturated = true;
};

struct CandidateSet {
    std::vector<std::vector<CandidatePath>> per_service;
    std::vector<std::string> empty_reason; // per service, set when its list is empty

    std::size_t total() const;
    bool any_empty() const;
};

/// Trust- and order-compliant candidate paths for each service of `slice`.
/// Throws UntrustableRequest when the slice's trust specification admits no operator.
CandidateSet generate_candidates(const PhysicalNetwork& net, const TrustRelation& trust, const ResidualState& state,
                                 const SliceRequest& slice, const PriceSnapshot& prices,
                                 const CandidateOptions& options = {});

}  // namespace slicebed
