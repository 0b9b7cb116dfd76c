#pragma once

#include "slicebed/embed.hpp"
#include "slicebed/paths.hpp"

#include <string>
#include <variant>
#include <vector>

namespace slicebed {

/// Path-link program: one binary per candidate path, exactly one path per
/// service, shared residual link and node capacities.
struct PlModel {
    milp::IlpModel model;
    std::vector<std::vector<int>> choice; // choice[g][p] = variable of candidate p of service g
    // shared-VNF mode only: (vnf, host) -> variable
    std::map<std::pair<VnfId, NodeId>, int> instance;
};

std::variant<PlModel, std::string> build_pl(const PhysicalNetwork& net, const CandidateSet& candidates,
                                            const ResidualState& state, const SliceRequest& slice,
                                            const PriceSnapshot& prices, const EmbeddingOptions& options = {});

Embedding decode_pl(const PlModel& pl, const CandidateSet& candidates, const SliceRequest& slice,
                    const std::vector<double>& values);

/// Generates candidates, then builds and solves the path-link program. Timings include generation.
EmbedResult solve_pl(const PhysicalNetwork& net, const TrustRelation& trust, const ResidualState& state,
                     const SliceRequest& slice, const PriceSnapshot& prices, const SolveOptions& options = {});

/// Same as solve_pl over a precomputed candidate set.
EmbedResult solve_pl_with(const PhysicalNetwork& net, const CandidateSet& candidates, const ResidualState& state,
                          const SliceRequest& slice, const PriceSnapshot& prices, const SolveOptions& options = {});

}  // namespace slicebed
