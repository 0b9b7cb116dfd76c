#pragma once

#include "slicebed/model.hpp"

#include <string>
#include <vector>

namespace slicebed {

enum class PricingMode { fixed, kleinrock };

std::string to_string(PricingMode mode);
PricingMode parse_pricing_mode(const std::string& text);

struct PricingPolicy {
    PricingMode mode = PricingMode::fixed;
    double cap = 100.0; // maximum congestion multiplier, > 1
    bool apply_to_links = true;
    bool apply_to_nodes = true;

    void validate() const;
};

/// Kleinrock multiplier min(cap, 1 / (1 - u)); u is clamped to [0, 1].
double congestion_multiplier(double utilization, double cap);

double link_price(const PricingPolicy& policy, const PhysicalNetwork& net, LinkId e, const ResidualState& state);
double node_price(const PricingPolicy& policy, const PhysicalNetwork& net, NodeId v, ResourceId r,
                  const ResidualState& state);

/// Unit prices frozen at one instant; every cost inside a single admission decision reads from here.
class PriceSnapshot {
public:
    PriceSnapshot() = default;
    PriceSnapshot(const PhysicalNetwork& net, const ResidualState& state, const PricingPolicy& policy);

    /// Static prices of an unloaded network.
    static PriceSnapshot unloaded(const PhysicalNetwork& net);

    double link(LinkId e) const { return link_[static_cast<std::size_t>(e)]; }
    double node(NodeId v, ResourceId r) const { return node_[static_cast<std::size_t>(v) * resources_ + r]; }

    /// Cost of routing `bandwidth` over link e.
    double link_cost(LinkId e, double bandwidth) const { return link(e) * bandwidth; }
    /// Cost of hosting one instance of `vnf` at v: sum_r price(v, r) * demand_r.
    double vnf_cost(const PhysicalNetwork& net, NodeId v, VnfId vnf) const;

    /// Multiplies every price by alpha.
    PriceSnapshot scaled(double alpha) const;

private:
    std::size_t resources_ = 0;
    std::vector<double> link_;
    std::vector<double> node_;
};

/// Recomputes the cost of a decoded embedding: per service and total.
void evaluate_cost(const PhysicalNetwork& net, const SliceRequest& slice, const PriceSnapshot& prices,
                   const EmbeddingOptions& opts, Embedding& emb);

}  // namespace slicebed
