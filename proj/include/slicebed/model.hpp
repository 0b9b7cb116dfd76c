#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slicebed {

using NodeId = int;
using LinkId = int;
using OperatorId = int;
using VnfId = int;
using ResourceId = int;
using SliceId = int;

/// Malformed or invalid input (scenario files, request files, CLI flags).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The slice's trust specification leaves no operator it may use.
class UntrustableRequest : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Resource {
    ResourceId id = 0;
    std::string name;
};

struct Operator {
    OperatorId id = 0;
    std::string name;
};

struct PhysNode {
    NodeId id = 0;
    OperatorId operator_id = 0;
    bool is_function_node = false;
    std::vector<double> capacity;   // per resource; all zero on plain nodes
    std::vector<double> unit_price; // per resource
    std::string name;
};

/// Directed link. Undirected links in scenario files become two of these.
struct PhysLink {
    LinkId id = 0;
    NodeId src = 0;
    NodeId dst = 0;
    double capacity = 0.0;
    double prop_delay = 0.0;
    double unit_price = 0.0;
};

struct Vnf {
    VnfId id = 0;
    std::string name;
    double proc_delay = 0.0;
    std::vector<double> demand; // per resource
    // Function nodes able to host this VNF; empty means every function node.
    std::vector<NodeId> candidate_nodes;
};

class PhysicalNetwork {
public:
    std::vector<Resource> resources;
    std::vector<Operator> operators; // operators[i].id == i + 1
    std::vector<PhysNode> nodes;     // nodes[i].id == i
    std::vector<PhysLink> links;     // links[i].id == i
    std::vector<Vnf> vnfs;           // vnfs[i].id == i

    std::size_t resource_count() const { return resources.size(); }
    std::size_t operator_count() const { return operators.size(); }

    const std::vector<LinkId>& out_links(NodeId v) const { return out_[static_cast<std::size_t>(v)]; }
    const std::vector<LinkId>& in_links(NodeId v) const { return in_[static_cast<std::size_t>(v)]; }

    /// Function nodes eligible for `vnf` per its catalog entry.
    std::vector<NodeId> default_hosts(VnfId vnf) const;

    /// Rebuilds adjacency and checks every structural invariant; throws InputError.
    void finalize();

private:
    std::vector<std::vector<LinkId>> out_;
    std::vector<std::vector<LinkId>> in_;
};

/// i T j: operator i trusts operator j. Always reflexive.
class TrustRelation {
public:
    TrustRelation() = default;
    explicit TrustRelation(std::size_t operators);

    std::size_t size() const { return n_; }
    bool trusts(OperatorId i, OperatorId j) const;
    void set(OperatorId i, OperatorId j, bool value = true);

    static TrustRelation identity(std::size_t operators) { return TrustRelation(operators); }
    static TrustRelation full(std::size_t operators);

private:
    std::size_t n_ = 0;
    std::vector<char> m_;
};

struct ServiceChain {
    int id = 0;
    NodeId source = 0;
    NodeId sink = 0;
    std::vector<VnfId> vnf_sequence;
    double bandwidth = 0.0;
    double max_latency = 0.0;
};

struct VnfRequirement {
    VnfId vnf = 0;
    double total_bandwidth = 0.0; // lambda_f
    std::vector<NodeId> candidates;
};

struct TrustSpec {
    OperatorId origin = 1;
    std::set<OperatorId> allow;
    std::set<OperatorId> deny;
};

struct SliceRequest {
    SliceId id = 0;
    std::string slice_type;
    std::vector<ServiceChain> services;
    std::vector<VnfRequirement> vnf_catalog;
    TrustSpec trust;
    double arrival_time = 0.0;
    double holding_time = 0.0;

    const VnfRequirement* requirement(VnfId f) const;
};

/// Checks the request against `net`; throws InputError naming the first violated invariant.
void validate_slice(const PhysicalNetwork& net, const SliceRequest& slice);

/// Fills vnf_catalog from the chains (lambda_f and default hosts).
void derive_vnf_catalog(const PhysicalNetwork& net, SliceRequest& slice);

/// ({j : origin T j} ∪ allow) \ deny. Throws UntrustableRequest when the origin is denied.
std::set<OperatorId> allowed_operators(const SliceRequest& slice, const TrustRelation& trust);

struct EmbeddingOptions {
    // One VNF instance per (slice, vnf), shared by all services of the slice.
    bool shared_vnf_per_slice = false;
};

struct ServiceEmbedding {
    int service_id = 0;
    std::vector<NodeId> placement;               // host of each chain position
    std::vector<std::vector<LinkId>> hop_routes; // size = chain length + 1
    double cost = 0.0;
    double latency = 0.0;
};

struct Embedding {
    SliceId slice_id = 0;
    std::vector<ServiceEmbedding> services; // same order as SliceRequest::services
    double total_cost = 0.0;
};

/// Resources held by one slice.
struct Footprint {
    std::map<LinkId, double> link_bandwidth;
    std::map<std::pair<NodeId, ResourceId>, double> node_resources;
};

Footprint footprint_of(const PhysicalNetwork& net, const SliceRequest& slice, const Embedding& emb,
                       const EmbeddingOptions& opts);

/// Residual-capacity ledger. Used amounts are always the ordered sum of active
/// footprints, so reserve followed by release restores the previous values exactly.
class ResidualState {
public:
    ResidualState() = default;
    explicit ResidualState(const PhysicalNetwork& net);

    double link_used(LinkId e) const { return link_used_[static_cast<std::size_t>(e)]; }
    double node_used(NodeId v, ResourceId r) const { return node_used_[index(v, r)]; }
    double link_residual(const PhysicalNetwork& net, LinkId e) const;
    double node_residual(const PhysicalNetwork& net, NodeId v, ResourceId r) const;

    void reserve(SliceId slice, Footprint fp);
    void release(SliceId slice);

    bool is_active(SliceId slice) const { return active_.count(slice) != 0; }
    std::size_t active_count() const { return active_.size(); }
    const std::map<SliceId, Footprint>& active() const { return active_; }

    /// Recomputes all usage from the active footprints and compares bit-exactly.
    bool consistent() const;
    /// Overflow check against capacities with tolerance eps.
    bool within_capacity(const PhysicalNetwork& net, double eps = 1e-6) const;

    bool operator==(const ResidualState& other) const {
        return link_used_ == other.link_used_ && node_used_ == other.node_used_;
    }

private:
    std::size_t index(NodeId v, ResourceId r) const {
        return static_cast<std::size_t>(v) * resources_ + static_cast<std::size_t>(r);
    }
    void recompute(const Footprint& touched);

    std::size_t resources_ = 0;
    std::vector<double> link_used_;
    std::vector<double> node_used_;
    std::map<SliceId, Footprint> active_;
};

void reserve(ResidualState& state, const PhysicalNetwork& net, const SliceRequest& slice, const Embedding& emb,
             const EmbeddingOptions& opts = {});
void release(ResidualState& state, SliceId slice);

struct Violation {
    std::string kind; // structure, contiguity, placement, link_capacity, node_capacity, latency, trust
    int service = -1;
    std::string detail;
};

/// Independent feasibility check of a full slice embedding against the current ledger.
std::vector<Violation> check_embedding(const PhysicalNetwork& net, const TrustRelation& trust,
                                       const ResidualState& state, const SliceRequest& slice, const Embedding& emb,
                                       const EmbeddingOptions& opts = {});

}  // namespace slicebed
