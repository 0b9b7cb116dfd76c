#include "slicebed/expand.hpp"

#include <algorithm>
#include <ostream>

namespace slicebed {

struct ExpandedBuilder {
    static ExpandedNetwork build(const PhysicalNetwork& net, const ServiceChain& g, const SliceRequest& slice,
                                 const std::set<OperatorId>& allowed, const PriceSnapshot& prices,
                                 const ExpandOptions& options) {
        const int nv = static_cast<int>(net.nodes.size());
        const int ne = static_cast<int>(net.links.size());
        const int m = static_cast<int>(g.vnf_sequence.size());
        auto trusted = [&](NodeId v) { return allowed.count(net.nodes[static_cast<std::size_t>(v)].operator_id) != 0; };
        if (!trusted(g.source) || !trusted(g.sink))
            throw UntrustableRequest("unreachable endpoints: service " + std::to_string(g.id) + " endpoint is untrusted");

        ExpandedNetwork exp;
        exp.physical_nodes_ = nv;
        exp.layers_ = m + 1;
        exp.source_ = exp.node_id(0, g.source);
        exp.sink_ = exp.node_id(m, g.sink);
        exp.present_.assign(static_cast<std::size_t>(exp.id_space()), 0);
        exp.out_.assign(static_cast<std::size_t>(exp.id_space()), {});
        exp.transport_index_.assign(static_cast<std::size_t>((m + 1) * ne), -1);
        exp.processing_index_.assign(static_cast<std::size_t>((m + 1) * nv), -1);

        for (int layer = 0; layer <= m; ++layer)
            for (NodeId v = 0; v < nv; ++v)
                if (trusted(v)) exp.present_[static_cast<std::size_t>(exp.node_id(layer, v))] = 1;

        const ResidualState* state = options.prune_by;
        auto add = [&](ExpandedEdge e) {
            const int id = static_cast<int>(exp.edges_.size());
            exp.out_[static_cast<std::size_t>(e.from)].push_back(id);
            exp.edges_.push_back(e);
            return id;
        };

        for (int layer = 0; layer <= m; ++layer) {
            for (const PhysLink& link : net.links) {
                if (!trusted(link.src) || !trusted(link.dst)) continue;
                if (state && state->link_residual(net, link.id) < g.bandwidth - 1e-9) continue;
                ExpandedEdge e;
                e.from = exp.node_id(layer, link.src);
                e.to = exp.node_id(layer, link.dst);
                e.cost = prices.link_cost(link.id, g.bandwidth);
                e.latency = link.prop_delay;
                e.kind = ExpandedEdge::Kind::transport;
                e.layer = layer;
                e.link = link.id;
                exp.transport_index_[static_cast<std::size_t>(layer * ne + link.id)] = add(e);
            }
            if (layer == m) break;

            const VnfId f = g.vnf_sequence[static_cast<std::size_t>(layer)];
            const VnfRequirement* req = slice.requirement(f);
            const Vnf& vnf = net.vnfs[static_cast<std::size_t>(f)];
            std::vector<NodeId> hosts = req ? req->candidates : net.default_hosts(f);
            std::sort(hosts.begin(), hosts.end());
            hosts.erase(std::unique(hosts.begin(), hosts.end()), hosts.end());
            for (NodeId v : hosts) {
                if (!net.nodes[static_cast<std::size_t>(v)].is_function_node || !trusted(v)) continue;
                if (state) {
                    bool fits = true;
                    for (std::size_t r = 0; r < vnf.demand.size(); ++r)
                        if (vnf.demand[r] > 0.0 &&
                            state->node_residual(net, v, static_cast<ResourceId>(r)) < vnf.demand[r] - 1e-9)
                            fits = false;
                    if (!fits) continue;
                }
                ExpandedEdge e;
                e.from = exp.node_id(layer, v);
                e.to = exp.node_id(layer + 1, v);
                e.cost = prices.vnf_cost(net, v, f);
                e.latency = vnf.proc_delay;
                e.kind = ExpandedEdge::Kind::processing;
                e.layer = layer;
                e.node = v;
                exp.processing_index_[static_cast<std::size_t>((layer + 1) * nv + v)] = add(e);
            }
        }
        return exp;
    }
};

int ExpandedNetwork::node_count() const {
    return static_cast<int>(std::count(present_.begin(), present_.end(), 1));
}

int ExpandedNetwork::processing_edge_count() const {
    return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                          [](const ExpandedEdge& e) { return e.kind == ExpandedEdge::Kind::processing; }));
}

int ExpandedNetwork::transport_edge_count() const { return static_cast<int>(edges_.size()) - processing_edge_count(); }

int ExpandedNetwork::transport_edge(int layer, LinkId link) const {
    if (layer < 0 || layer >= layers_ || physical_nodes_ == 0) return -1;
    const std::size_t ne = transport_index_.size() / static_cast<std::size_t>(layers_);
    if (link < 0 || static_cast<std::size_t>(link) >= ne) return -1;
    return transport_index_[static_cast<std::size_t>(layer) * ne + static_cast<std::size_t>(link)];
}

int ExpandedNetwork::processing_edge(int layer, NodeId v) const {
    if (layer < 1 || layer >= layers_ || v < 0 || v >= physical_nodes_) return -1;
    return processing_index_[static_cast<std::size_t>(layer * physical_nodes_ + v)];
}

void ExpandedNetwork::write_dot(std::ostream& out) const {
    out << "digraph expanded {\n  rankdir=LR;\n";
    for (int layer = 0; layer < layers_; ++layer) {
        out << "  subgraph cluster_" << layer << " {\n    label=\"layer " << layer << "\";\n";
        for (NodeId v = 0; v < physical_nodes_; ++v) {
            const int id = node_id(layer, v);
            if (!present(id)) continue;
            out << "    n" << id << " [label=\"" << v << "@" << layer << "\"";
            if (id == source_ || id == sink_) out << " shape=doublecircle";
            out << "];\n";
        }
        out << "  }\n";
    }
    for (const auto& e : edges_) {
        out << "  n" << e.from << " -> n" << e.to << " [label=\"c=" << e.cost << " d=" << e.latency << "\"";
        if (e.kind == ExpandedEdge::Kind::processing) out << " style=dashed";
        out << "];\n";
    }
    out << "}\n";
}

ExpandedNetwork build_expanded(const PhysicalNetwork& net, const ServiceChain& service, const SliceRequest& slice,
                               const std::set<OperatorId>& allowed, const PriceSnapshot& prices,
                               const ExpandOptions& options) {
    return ExpandedBuilder::build(net, service, slice, allowed, prices, options);
}

MappedPath map_back(const ExpandedNetwork& exp, const std::vector<int>& edge_path) {
    MappedPath out;
    out.hop_routes.assign(static_cast<std::size_t>(exp.layers()), {});
    for (int id : edge_path) {
        const ExpandedEdge& e = exp.edges()[static_cast<std::size_t>(id)];
        out.cost += e.cost;
        out.latency += e.latency;
        if (e.kind == ExpandedEdge::Kind::processing) out.placement.push_back(e.node);
        else out.hop_routes[static_cast<std::size_t>(e.layer)].push_back(e.link);
    }
    return out;
}

std::vector<int> encode_path(const ExpandedNetwork& exp, const std::vector<NodeId>& placement,
                             const std::vector<std::vector<LinkId>>& hop_routes) {
    if (static_cast<int>(hop_routes.size()) != exp.layers() || static_cast<int>(placement.size()) + 1 != exp.layers())
        return {};
    std::vector<int> path;
    for (int layer = 0; layer < exp.layers(); ++layer) {
        for (LinkId link : hop_routes[static_cast<std::size_t>(layer)]) {
            const int id = exp.transport_edge(layer, link);
            if (id < 0) return {};
            path.push_back(id);
        }
        if (layer + 1 < exp.layers()) {
            const int id = exp.processing_edge(layer + 1, placement[static_cast<std::size_t>(layer)]);
            if (id < 0) return {};
            path.push_back(id);
        }
    }
    return path;
}

}  // namespace slicebed
