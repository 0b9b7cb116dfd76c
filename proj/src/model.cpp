#include "slicebed/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace slicebed {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

[[noreturn]] void fail(const std::string& what) { throw InputError(what); }

}  // namespace

std::vector<NodeId> PhysicalNetwork::default_hosts(VnfId vnf) const {
    const Vnf& f = vnfs.at(static_cast<std::size_t>(vnf));
    if (!f.candidate_nodes.empty()) return f.candidate_nodes;
    std::vector<NodeId> hosts;
    for (const auto& v : nodes)
        if (v.is_function_node) hosts.push_back(v.id);
    return hosts;
}

void PhysicalNetwork::finalize() {
    const std::size_t nr = resources.size();
    std::set<std::string> names;
    for (std::size_t i = 0; i < resources.size(); ++i) {
        if (resources[i].id != static_cast<int>(i)) fail("resource ids must be dense 0..|R|-1");
        if (!names.insert(resources[i].name).second) fail("resource names must be unique: " + resources[i].name);
    }
    if (operators.empty()) fail("at least one operator is required");
    for (std::size_t i = 0; i < operators.size(); ++i)
        if (operators[i].id != static_cast<int>(i) + 1) fail("operator ids must be dense 1..N");

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const PhysNode& v = nodes[i];
        const std::string tag = "node " + std::to_string(i) + ": ";
        if (v.id != static_cast<int>(i)) fail(tag + "node ids must be dense 0..|V|-1");
        if (v.operator_id < 1 || v.operator_id > static_cast<int>(operators.size())) fail(tag + "unknown operator");
        if (v.capacity.size() != nr || v.unit_price.size() != nr)
            fail(tag + "capacity and unit_price must have one entry per resource");
        for (std::size_t r = 0; r < nr; ++r) {
            if (!finite_nonneg(v.capacity[r])) fail(tag + "capacity >= 0");
            if (!finite_nonneg(v.unit_price[r])) fail(tag + "unit_price >= 0");
            if (!v.is_function_node && v.capacity[r] != 0.0) fail(tag + "only function nodes carry capacity");
        }
    }

    out_.assign(nodes.size(), {});
    in_.assign(nodes.size(), {});
    for (std::size_t i = 0; i < links.size(); ++i) {
        const PhysLink& e = links[i];
        const std::string tag = "link " + std::to_string(i) + ": ";
        if (e.id != static_cast<int>(i)) fail(tag + "link ids must be dense");
        if (e.src < 0 || e.dst < 0 || e.src >= static_cast<int>(nodes.size()) || e.dst >= static_cast<int>(nodes.size()))
            fail(tag + "unknown endpoint");
        if (e.src == e.dst) fail(tag + "no self-loops");
        if (!std::isfinite(e.capacity) || e.capacity <= 0.0) fail(tag + "capacity > 0");
        if (!finite_nonneg(e.prop_delay)) fail(tag + "prop_delay >= 0");
        if (!finite_nonneg(e.unit_price)) fail(tag + "unit_price >= 0");
        out_[static_cast<std::size_t>(e.src)].push_back(e.id);
        in_[static_cast<std::size_t>(e.dst)].push_back(e.id);
    }

    for (std::size_t i = 0; i < vnfs.size(); ++i) {
        const Vnf& f = vnfs[i];
        const std::string tag = "vnf " + std::to_string(i) + ": ";
        if (f.id != static_cast<int>(i)) fail(tag + "vnf ids must be dense");
        if (!finite_nonneg(f.proc_delay)) fail(tag + "proc_delay >= 0");
        if (f.demand.size() != nr) fail(tag + "demand must have one entry per resource");
        for (double d : f.demand)
            if (!finite_nonneg(d)) fail(tag + "demand >= 0");
        for (NodeId v : f.candidate_nodes) {
            if (v < 0 || v >= static_cast<int>(nodes.size())) fail(tag + "unknown candidate node");
            if (!nodes[static_cast<std::size_t>(v)].is_function_node) fail(tag + "candidate nodes must be function nodes");
        }
    }
}

TrustRelation::TrustRelation(std::size_t operators) : n_(operators), m_(operators * operators, 0) {
    for (std::size_t i = 0; i < n_; ++i) m_[i * n_ + i] = 1;
}

TrustRelation TrustRelation::full(std::size_t operators) {
    TrustRelation t(operators);
    std::fill(t.m_.begin(), t.m_.end(), 1);
    return t;
}

bool TrustRelation::trusts(OperatorId i, OperatorId j) const {
    if (i == j) return true;
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n_ || static_cast<std::size_t>(j) > n_) return false;
    return m_[static_cast<std::size_t>(i - 1) * n_ + static_cast<std::size_t>(j - 1)] != 0;
}

void TrustRelation::set(OperatorId i, OperatorId j, bool value) {
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n_ || static_cast<std::size_t>(j) > n_)
        throw InputError("trust: unknown operator");
    if (i == j && !value) throw InputError("trust must be reflexive");
    m_[static_cast<std::size_t>(i - 1) * n_ + static_cast<std::size_t>(j - 1)] = value ? 1 : 0;
}

const VnfRequirement* SliceRequest::requirement(VnfId f) const {
    for (const auto& req : vnf_catalog)
        if (req.vnf == f) return &req;
    return nullptr;
}

void derive_vnf_catalog(const PhysicalNetwork& net, SliceRequest& slice) {
    std::map<VnfId, double> lambda;
    for (const auto& g : slice.services) {
        std::set<VnfId> seen(g.vnf_sequence.begin(), g.vnf_sequence.end());
        for (VnfId f : seen) lambda[f] += g.bandwidth;
    }
    slice.vnf_catalog.clear();
    for (const auto& [f, total] : lambda) {
        if (f < 0 || f >= static_cast<int>(net.vnfs.size())) throw InputError("unknown vnf " + std::to_string(f));
        slice.vnf_catalog.push_back({f, total, net.default_hosts(f)});
    }
}

void validate_slice(const PhysicalNetwork& net, const SliceRequest& slice) {
    const auto nv = static_cast<int>(net.nodes.size());
    const auto nops = static_cast<int>(net.operators.size());
    const std::string tag = "slice " + std::to_string(slice.id) + ": ";
    if (slice.services.empty()) fail(tag + "at least one service");
    std::map<VnfId, double> lambda;
    for (const auto& g : slice.services) {
        const std::string gt = tag + "service " + std::to_string(g.id) + ": ";
        if (g.source < 0 || g.source >= nv || g.sink < 0 || g.sink >= nv) fail(gt + "unknown endpoint");
        if (g.source == g.sink) fail(gt + "source != sink");
        if (!std::isfinite(g.bandwidth) || g.bandwidth <= 0.0) fail(gt + "bandwidth > 0");
        if (!std::isfinite(g.max_latency) || g.max_latency <= 0.0) fail(gt + "max_latency > 0");
        for (VnfId f : g.vnf_sequence) {
            if (f < 0 || f >= static_cast<int>(net.vnfs.size())) fail(gt + "unknown vnf " + std::to_string(f));
            if (slice.requirement(f) == nullptr) fail(gt + "vnf " + std::to_string(f) + " missing from vnf_catalog");
        }
        std::set<VnfId> seen(g.vnf_sequence.begin(), g.vnf_sequence.end());
        for (VnfId f : seen) lambda[f] += g.bandwidth;
    }
    for (const auto& req : slice.vnf_catalog) {
        const std::string ft = tag + "vnf " + std::to_string(req.vnf) + ": ";
        if (req.candidates.empty()) fail(ft + "candidate set D(f) must be nonempty");
        for (NodeId v : req.candidates) {
            if (v < 0 || v >= nv || !net.nodes[static_cast<std::size_t>(v)].is_function_node)
                fail(ft + "candidates must be function nodes");
        }
        const double expected = lambda.count(req.vnf) ? lambda[req.vnf] : 0.0;
        if (std::abs(req.total_bandwidth - expected) > 1e-9 * std::max(1.0, expected))
            fail(ft + "total bandwidth must equal the sum of service bandwidths using it");
    }
    auto known = [&](OperatorId o) { return o >= 1 && o <= nops; };
    if (!known(slice.trust.origin)) fail(tag + "unknown origin operator");
    for (OperatorId o : slice.trust.allow)
        if (!known(o)) fail(tag + "unknown operator in allow-list");
    for (OperatorId o : slice.trust.deny) {
        if (!known(o)) fail(tag + "unknown operator in deny-list");
        if (slice.trust.allow.count(o)) fail(tag + "allow-list and deny-list must be disjoint");
    }
    if (!std::isfinite(slice.holding_time) || slice.holding_time < 0.0) fail(tag + "holding_time >= 0");
}

std::set<OperatorId> allowed_operators(const SliceRequest& slice, const TrustRelation& trust) {
    const OperatorId origin = slice.trust.origin;
    if (slice.trust.deny.count(origin)) throw UntrustableRequest("origin operator is on its own deny-list");
    std::set<OperatorId> allowed;
    for (std::size_t j = 1; j <= trust.size(); ++j)
        if (trust.trusts(origin, static_cast<OperatorId>(j))) allowed.insert(static_cast<OperatorId>(j));
    allowed.insert(origin);
    allowed.insert(slice.trust.allow.begin(), slice.trust.allow.end());
    for (OperatorId o : slice.trust.deny) allowed.erase(o);
    if (allowed.empty()) throw UntrustableRequest("no operator left after trust filtering");
    return allowed;
}

Footprint footprint_of(const PhysicalNetwork& net, const SliceRequest& slice, const Embedding& emb,
                       const EmbeddingOptions& opts) {
    Footprint fp;
    std::set<std::pair<VnfId, NodeId>> instances;
    for (std::size_t gi = 0; gi < emb.services.size() && gi < slice.services.size(); ++gi) {
        const ServiceChain& g = slice.services[gi];
        const ServiceEmbedding& se = emb.services[gi];
        for (const auto& hop : se.hop_routes)
            for (LinkId e : hop) fp.link_bandwidth[e] += g.bandwidth;
        for (std::size_t k = 0; k < g.vnf_sequence.size() && k < se.placement.size(); ++k) {
            const VnfId f = g.vnf_sequence[k];
            const NodeId v = se.placement[k];
            if (opts.shared_vnf_per_slice && !instances.insert({f, v}).second) continue;
            const Vnf& vnf = net.vnfs[static_cast<std::size_t>(f)];
            for (std::size_t r = 0; r < vnf.demand.size(); ++r)
                if (vnf.demand[r] != 0.0) fp.node_resources[{v, static_cast<ResourceId>(r)}] += vnf.demand[r];
        }
    }
    return fp;
}

ResidualState::ResidualState(const PhysicalNetwork& net)
    : resources_(net.resource_count()),
      link_used_(net.links.size(), 0.0),
      node_used_(net.nodes.size() * net.resource_count(), 0.0) {}

double ResidualState::link_residual(const PhysicalNetwork& net, LinkId e) const {
    return net.links[static_cast<std::size_t>(e)].capacity - link_used(e);
}

double ResidualState::node_residual(const PhysicalNetwork& net, NodeId v, ResourceId r) const {
    return net.nodes[static_cast<std::size_t>(v)].capacity[static_cast<std::size_t>(r)] - node_used(v, r);
}

void ResidualState::recompute(const Footprint& touched) {
    for (const auto& [e, amount] : touched.link_bandwidth) {
        double sum = 0.0;
        for (const auto& [id, fp] : active_) {
            auto it = fp.link_bandwidth.find(e);
            if (it != fp.link_bandwidth.end()) sum += it->second;
        }
        link_used_[static_cast<std::size_t>(e)] = sum;
    }
    for (const auto& [key, amount] : touched.node_resources) {
        double sum = 0.0;
        for (const auto& [id, fp] : active_) {
            auto it = fp.node_resources.find(key);
            if (it != fp.node_resources.end()) sum += it->second;
        }
        node_used_[index(key.first, key.second)] = sum;
    }
}

void ResidualState::reserve(SliceId slice, Footprint fp) {
    if (active_.count(slice)) throw std::logic_error("slice " + std::to_string(slice) + " already active");
    for (const auto& [e, amount] : fp.link_bandwidth)
        if (e < 0 || static_cast<std::size_t>(e) >= link_used_.size()) throw std::logic_error("footprint: unknown link");
    for (const auto& [key, amount] : fp.node_resources)
        if (key.first < 0 || index(key.first, key.second) >= node_used_.size())
            throw std::logic_error("footprint: unknown node resource");
    auto [it, inserted] = active_.emplace(slice, std::move(fp));
    recompute(it->second);
}

void ResidualState::release(SliceId slice) {
    auto it = active_.find(slice);
    if (it == active_.end()) throw std::invalid_argument("release: unknown slice id " + std::to_string(slice));
    Footprint fp = std::move(it->second);
    active_.erase(it);
    recompute(fp);
}

bool ResidualState::consistent() const {
    std::vector<double> links(link_used_.size(), 0.0);
    std::vector<double> nodes(node_used_.size(), 0.0);
    for (const auto& [id, fp] : active_) {
        for (const auto& [e, amount] : fp.link_bandwidth) links[static_cast<std::size_t>(e)] += amount;
        for (const auto& [key, amount] : fp.node_resources) nodes[index(key.first, key.second)] += amount;
    }
    return links == link_used_ && nodes == node_used_;
}

bool ResidualState::within_capacity(const PhysicalNetwork& net, double eps) const {
    for (std::size_t e = 0; e < link_used_.size(); ++e)
        if (link_used_[e] < -eps || link_used_[e] > net.links[e].capacity + eps) return false;
    for (std::size_t v = 0; v < net.nodes.size(); ++v)
        for (std::size_t r = 0; r < resources_; ++r) {
            const double used = node_used_[v * resources_ + r];
            if (used < -eps || used > net.nodes[v].capacity[r] + eps) return false;
        }
    return true;
}

void reserve(ResidualState& state, const PhysicalNetwork& net, const SliceRequest& slice, const Embedding& emb,
             const EmbeddingOptions& opts) {
    Footprint fp = footprint_of(net, slice, emb, opts);
    for (const auto& [e, amount] : fp.link_bandwidth)
        if (state.link_used(e) + amount > net.links[static_cast<std::size_t>(e)].capacity + 1e-6)
            throw std::logic_error("reserve: link capacity overflow on link " + std::to_string(e));
    for (const auto& [key, amount] : fp.node_resources)
        if (state.node_used(key.first, key.second) + amount >
            net.nodes[static_cast<std::size_t>(key.first)].capacity[static_cast<std::size_t>(key.second)] + 1e-6)
            throw std::logic_error("reserve: node capacity overflow on node " + std::to_string(key.first));
    state.reserve(slice.id, std::move(fp));
}

void release(ResidualState& state, SliceId slice) { state.release(slice); }

std::vector<Violation> check_embedding(const PhysicalNetwork& net, const TrustRelation& trust,
                                       const ResidualState& state, const SliceRequest& slice, const Embedding& emb,
                                       const EmbeddingOptions& opts) {
    std::vector<Violation> out;
    auto report = [&](std::string kind, int service, std::string detail) {
        out.push_back({std::move(kind), service, std::move(detail)});
    };

    if (emb.slice_id != slice.id) report("structure", -1, "embedding belongs to another slice");
    if (emb.services.size() != slice.services.size()) {
        report("structure", -1, "service count mismatch");
        return out;
    }

    std::set<OperatorId> allowed;
    try {
        allowed = allowed_operators(slice, trust);
    } catch (const UntrustableRequest&) {
        report("trust", -1, "request is untrustable");
    }
    auto trusted = [&](NodeId v) {
        return v >= 0 && v < static_cast<int>(net.nodes.size()) &&
               allowed.count(net.nodes[static_cast<std::size_t>(v)].operator_id) != 0;
    };

    std::map<LinkId, double> link_load;
    std::map<std::pair<NodeId, ResourceId>, double> node_load;
    std::set<std::pair<VnfId, NodeId>> instances;
    const auto nlinks = static_cast<int>(net.links.size());

    for (std::size_t gi = 0; gi < slice.services.size(); ++gi) {
        const ServiceChain& g = slice.services[gi];
        const ServiceEmbedding& se = emb.services[gi];
        const int sid = g.id;
        const std::size_t m = g.vnf_sequence.size();
        if (se.placement.size() != m || se.hop_routes.size() != m + 1) {
            report("structure", sid, "placement/hop sizes do not match the chain");
            continue;
        }

        // waypoints: source, hosts in chain order, sink
        std::vector<NodeId> waypoints{g.source};
        waypoints.insert(waypoints.end(), se.placement.begin(), se.placement.end());
        waypoints.push_back(g.sink);

        double latency = 0.0;
        bool well_formed = true;
        for (std::size_t h = 0; h <= m; ++h) {
            NodeId at = waypoints[h];
            for (LinkId e : se.hop_routes[h]) {
                if (e < 0 || e >= nlinks) {
                    report("structure", sid, "unknown link " + std::to_string(e));
                    well_formed = false;
                    break;
                }
                const PhysLink& link = net.links[static_cast<std::size_t>(e)];
                if (link.src != at) {
                    std::ostringstream os;
                    os << "hop " << h << " breaks at link " << e << " (expected to leave node " << at << ")";
                    report("contiguity", sid, os.str());
                    well_formed = false;
                    break;
                }
                if (!trusted(link.src) || !trusted(link.dst))
                    report("trust", sid, "link " + std::to_string(e) + " touches an untrusted operator");
                latency += link.prop_delay;
                link_load[e] += g.bandwidth;
                at = link.dst;
            }
            if (well_formed && at != waypoints[h + 1]) {
                std::ostringstream os;
                os << "hop " << h << " ends at node " << at << " instead of " << waypoints[h + 1];
                report("contiguity", sid, os.str());
                well_formed = false;
            }
        }
        for (NodeId v : {g.source, g.sink})
            if (!trusted(v)) report("trust", sid, "endpoint " + std::to_string(v) + " is untrusted");

        for (std::size_t k = 0; k < m; ++k) {
            const VnfId f = g.vnf_sequence[k];
            const NodeId v = se.placement[k];
            const VnfRequirement* req = slice.requirement(f);
            const bool in_candidates = req && std::find(req->candidates.begin(), req->candidates.end(), v) != req->candidates.end();
            if (!in_candidates || v < 0 || v >= static_cast<int>(net.nodes.size()) ||
                !net.nodes[static_cast<std::size_t>(v)].is_function_node) {
                report("placement", sid, "vnf " + std::to_string(f) + " placed outside D(f) at node " + std::to_string(v));
                continue;
            }
            if (!trusted(v)) report("trust", sid, "vnf host " + std::to_string(v) + " is untrusted");
            const Vnf& vnf = net.vnfs[static_cast<std::size_t>(f)];
            latency += vnf.proc_delay;
            if (opts.shared_vnf_per_slice && !instances.insert({f, v}).second) continue;
            for (std::size_t r = 0; r < vnf.demand.size(); ++r) node_load[{v, static_cast<ResourceId>(r)}] += vnf.demand[r];
        }

        if (latency > g.max_latency * (1.0 + 1e-12) + 1e-12) {
            std::ostringstream os;
            os << "latency " << latency << " exceeds " << g.max_latency;
            report("latency", sid, os.str());
        }
    }

    for (const auto& [e, load] : link_load) {
        const double cap = net.links[static_cast<std::size_t>(e)].capacity;
        if (state.link_used(e) + load > cap + 1e-6) {
            std::ostringstream os;
            os << "link " << e << ": used " << state.link_used(e) << " + " << load << " > " << cap;
            report("link_capacity", -1, os.str());
        }
    }
    for (const auto& [key, load] : node_load) {
        if (load == 0.0) continue;
        const double cap = net.nodes[static_cast<std::size_t>(key.first)].capacity[static_cast<std::size_t>(key.second)];
        if (state.node_used(key.first, key.second) + load > cap + 1e-6) {
            std::ostringstream os;
            os << "node " << key.first << " resource " << key.second << ": used "
               << state.node_used(key.first, key.second) << " + " << load << " > " << cap;
            report("node_capacity", -1, os.str());
        }
    }
    return out;
}

}  // namespace slicebed
