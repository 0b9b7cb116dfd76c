#pragma once

#include "slicebed/embed.hpp"

#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace slicebed {

/// Node-link program of one slice request plus what is needed to decode it.
///
/// Variables: x (VNF placement on a function node) and y (logical hop h of
/// service g routed over directed link e). Constraints per service: one host
/// per chain position, per-hop unit flow conservation tied to the hosts,
/// residual link and node capacities, and the end-to-end latency bound.
struct NlModel {
    milp::IlpModel model;
    // placement[g][k] lists (host, variable) for chain position k of service g
    std::vector<std::vector<std::vector<std::pair<NodeId, int>>>> placement;
    // routing[g][h] lists (link, variable) for hop h of service g
    std::vector<std::vector<std::vector<std::pair<LinkId, int>>>> routing;
};

/// Returns the model, or a block reason when trust or capacity leave no variables.
/// Throws UntrustableRequest when the trust specification admits no operator.
std::variant<NlModel, std::string> build_nl(const PhysicalNetwork& net, const TrustRelation& trust,
                                            const ResidualState& state, const SliceRequest& slice,
                                            const PriceSnapshot& prices, const EmbeddingOptions& options = {});

/// Decodes a (near-)integral assignment into an embedding; cycles in a hop's support are dropped.
Embedding decode_nl(const NlModel& nl, const PhysicalNetwork& net, const SliceRequest& slice,
                    const std::vector<double>& values);

EmbedResult solve_nl(const PhysicalNetwork& net, const TrustRelation& trust, const ResidualState& state,
                     const SliceRequest& slice, const PriceSnapshot& prices, const SolveOptions& options = {});

}  // namespace slicebed
