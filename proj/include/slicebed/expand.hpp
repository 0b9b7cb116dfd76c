#pragma once

#include "slicebed/model.hpp"
#include "slicebed/pricing.hpp"

#include <iosfwd>
#include <set>
#include <vector>

namespace slicebed {

/// Layered copy of the physical network for one service chain of length m.
/// Layer k holds the traffic after k VNFs have been applied; moving from
/// layer k-1 to layer k at node v means running the k-th VNF at v.
struct ExpandedEdge {
    enum class Kind { transport, processing };
    int from = 0;
    int to = 0;
    double cost = 0.0;
    double latency = 0.0;
    Kind kind = Kind::transport;
    int layer = 0;    // layer of `from`
    LinkId link = -1; // transport edges
    NodeId node = -1; // processing edges
};

class ExpandedNetwork {
public:
    int physical_nodes() const { return physical_nodes_; }
    int layers() const { return layers_; }
    int id_space() const { return physical_nodes_ * layers_; }
    int node_id(int layer, NodeId v) const { return layer * physical_nodes_ + v; }
    int layer_of(int id) const { return id / physical_nodes_; }
    NodeId physical_of(int id) const { return id % physical_nodes_; }

    bool present(int id) const { return present_[static_cast<std::size_t>(id)] != 0; }
    /// Number of expanded nodes that survived trust filtering.
    int node_count() const;

    int source() const { return source_; }
    int sink() const { return sink_; }

    const std::vector<ExpandedEdge>& edges() const { return edges_; }
    const std::vector<int>& out_edges(int id) const { return out_[static_cast<std::size_t>(id)]; }
    int processing_edge_count() const;
    int transport_edge_count() const;

    /// Edge id of the transport copy of `link` inside `layer`, or -1.
    int transport_edge(int layer, LinkId link) const;
    /// Edge id of the processing edge at v from layer-1 to layer, or -1.
    int processing_edge(int layer, NodeId v) const;

    void write_dot(std::ostream& out) const;

private:
    friend struct ExpandedBuilder;
    int physical_nodes_ = 0;
    int layers_ = 1;
    int source_ = 0;
    int sink_ = 0;
    std::vector<char> present_;
    std::vector<ExpandedEdge> edges_;
    std::vector<std::vector<int>> out_;
    std::vector<int> transport_index_;  // layer * |E| + link -> edge id
    std::vector<int> processing_index_; // layer * |V| + v -> edge id
};

struct ExpandOptions {
    // When set, links whose residual bandwidth is below the service bandwidth
    // and hosts that cannot fit the VNF are left out.
    const ResidualState* prune_by = nullptr;
};

/// Builds the expanded network of one service. Nodes and links of operators
/// outside `allowed` are omitted; throws UntrustableRequest when an endpoint is filtered out.
ExpandedNetwork build_expanded(const PhysicalNetwork& net, const ServiceChain& service, const SliceRequest& slice,
                               const std::set<OperatorId>& allowed, const PriceSnapshot& prices,
                               const ExpandOptions& options = {});

/// Embedding of one service decoded from an expanded source-to-sink edge path.
struct MappedPath {
    std::vector<NodeId> placement;
    std::vector<std::vector<LinkId>> hop_routes;
    double cost = 0.0;
    double latency = 0.0;
};

MappedPath map_back(const ExpandedNetwork& exp, const std::vector<int>& edge_path);

/// Inverse of map_back; returns an empty vector if the embedding has no expanded counterpart.
std::vector<int> encode_path(const ExpandedNetwork& exp, const std::vector<NodeId>& placement,
                             const std::vector<std::vector<LinkId>>& hop_routes);

}  // namespace slicebed
