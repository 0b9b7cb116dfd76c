#include "slicebed/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace slicebed {

std::string to_string(PricingMode mode) { return mode == PricingMode::kleinrock ? "kleinrock" : "static"; }

PricingMode parse_pricing_mode(const std::string& text) {
    if (text == "static") return PricingMode::fixed;
    if (text == "kleinrock") return PricingMode::kleinrock;
    throw InputError("unknown pricing mode '" + text + "' (expected static or kleinrock)");
}

void PricingPolicy::validate() const {
    if (!std::isfinite(cap) || cap <= 1.0) throw InputError("pricing: cap must be > 1");
}

double congestion_multiplier(double utilization, double cap) {
    const double u = std::clamp(utilization, 0.0, 1.0);
    if (u >= 1.0) return cap;
    return std::min(cap, 1.0 / (1.0 - u));
}

namespace {

double utilization(double used, double capacity) {
    if (capacity <= 0.0) return 1.0;
    return used / capacity;
}

}  // namespace

double link_price(const PricingPolicy& policy, const PhysicalNetwork& net, LinkId e, const ResidualState& state) {
    const PhysLink& link = net.links[static_cast<std::size_t>(e)];
    if (policy.mode == PricingMode::fixed || !policy.apply_to_links) return link.unit_price;
    return link.unit_price * congestion_multiplier(utilization(state.link_used(e), link.capacity), policy.cap);
}

double node_price(const PricingPolicy& policy, const PhysicalNetwork& net, NodeId v, ResourceId r,
                  const ResidualState& state) {
    const PhysNode& node = net.nodes[static_cast<std::size_t>(v)];
    const double base = node.unit_price[static_cast<std::size_t>(r)];
    if (policy.mode == PricingMode::fixed || !policy.apply_to_nodes) return base;
    return base * congestion_multiplier(utilization(state.node_used(v, r), node.capacity[static_cast<std::size_t>(r)]),
                                        policy.cap);
}

PriceSnapshot::PriceSnapshot(const PhysicalNetwork& net, const ResidualState& state, const PricingPolicy& policy)
    : resources_(net.resource_count()), link_(net.links.size()), node_(net.nodes.size() * net.resource_count()) {
    for (std::size_t e = 0; e < net.links.size(); ++e) link_[e] = link_price(policy, net, static_cast<LinkId>(e), state);
    for (std::size_t v = 0; v < net.nodes.size(); ++v)
        for (std::size_t r = 0; r < resources_; ++r)
            node_[v * resources_ + r] =
                node_price(policy, net, static_cast<NodeId>(v), static_cast<ResourceId>(r), state);
}

PriceSnapshot PriceSnapshot::unloaded(const PhysicalNetwork& net) {
    return PriceSnapshot(net, ResidualState(net), PricingPolicy{});
}

double PriceSnapshot::vnf_cost(const PhysicalNetwork& net, NodeId v, VnfId vnf) const {
    const auto& demand = net.vnfs[static_cast<std::size_t>(vnf)].demand;
    double cost = 0.0;
    for (std::size_t r = 0; r < demand.size(); ++r) cost += node(v, static_cast<ResourceId>(r)) * demand[r];
    return cost;
}

PriceSnapshot PriceSnapshot::scaled(double alpha) const {
    PriceSnapshot out = *this;
    for (double& p : out.link_) p *= alpha;
    for (double& p : out.node_) p *= alpha;
    return out;
}

void evaluate_cost(const PhysicalNetwork& net, const SliceRequest& slice, const PriceSnapshot& prices,
                   const EmbeddingOptions& opts, Embedding& emb) {
    std::set<std::pair<VnfId, NodeId>> instances;
    emb.total_cost = 0.0;
    for (std::size_t gi = 0; gi < emb.services.size(); ++gi) {
        const ServiceChain& g = slice.services[gi];
        ServiceEmbedding& se = emb.services[gi];
        double cost = 0.0;
        double latency = 0.0;
        for (const auto& hop : se.hop_routes)
            for (LinkId e : hop) {
                cost += prices.link_cost(e, g.bandwidth);
                latency += net.links[static_cast<std::size_t>(e)].prop_delay;
            }
        for (std::size_t k = 0; k < se.placement.size(); ++k) {
            const VnfId f = g.vnf_sequence[k];
            latency += net.vnfs[static_cast<std::size_t>(f)].proc_delay;
            if (opts.shared_vnf_per_slice && !instances.insert({f, se.placement[k]}).second) continue;
            cost += prices.vnf_cost(net, se.placement[k], f);
        }
        se.cost = cost;
        se.latency = latency;
        emb.total_cost += cost;
    }
}

}  // namespace slicebed
