#include "slicebed/embed_nl.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>
#include <stdexcept>

namespace slicebed {

using milp::Relation;
using milp::Term;

namespace {

struct PlacementVar {
    int var;
    NodeId node;
    VnfId vnf;
};

std::vector<NodeId> usable_hosts(const PhysicalNetwork& net, const ResidualState& state, const SliceRequest& slice,
                                 const std::set<OperatorId>& allowed, VnfId f) {
    const VnfRequirement* req = slice.requirement(f);
    std::vector<NodeId> hosts = req ? req->candidates : net.default_hosts(f);
    std::sort(hosts.begin(), hosts.end());
    hosts.erase(std::unique(hosts.begin(), hosts.end()), hosts.end());
    const auto& demand = net.vnfs[static_cast<std::size_t>(f)].demand;
    std::vector<NodeId> out;
    for (NodeId v : hosts) {
        const PhysNode& node = net.nodes[static_cast<std::size_t>(v)];
        if (!node.is_function_node || !allowed.count(node.operator_id)) continue;
        bool fits = true;
        for (std::size_t r = 0; r < demand.size(); ++r)
            if (demand[r] > 0.0 && state.node_residual(net, v, static_cast<ResourceId>(r)) < demand[r] - 1e-9) fits = false;
        if (fits) out.push_back(v);
    }
    return out;
}

}  // namespace

std::variant<NlModel, std::string> build_nl(const PhysicalNetwork& net, const TrustRelation& trust,
                                            const ResidualState& state, const SliceRequest& slice,
                                            const PriceSnapshot& prices, const EmbeddingOptions& options) {
    const std::set<OperatorId> allowed = allowed_operators(slice, trust);
    auto trusted = [&](NodeId v) { return allowed.count(net.nodes[static_cast<std::size_t>(v)].operator_id) != 0; };

    NlModel nl;
    milp::IlpModel& model = nl.model;
    const std::size_t ng = slice.services.size();
    nl.placement.resize(ng);
    nl.routing.resize(ng);

    for (const auto& g : slice.services)
        if (!trusted(g.source) || !trusted(g.sink)) return std::string("unreachable endpoints");

    // placement variables, one host per chain position
    std::vector<PlacementVar> xvars;
    std::map<std::pair<VnfId, NodeId>, int> shared;
    if (options.shared_vnf_per_slice) {
        std::set<VnfId> used;
        for (const auto& g : slice.services) used.insert(g.vnf_sequence.begin(), g.vnf_sequence.end());
        for (VnfId f : used) {
            const auto hosts = usable_hosts(net, state, slice, allowed, f);
            if (hosts.empty()) return std::string("no host");
            std::vector<Term> one;
            for (NodeId v : hosts) {
                const int var = model.add_binary(prices.vnf_cost(net, v, f),
                                                 "x_f" + std::to_string(f) + "_v" + std::to_string(v));
                shared[{f, v}] = var;
                xvars.push_back({var, v, f});
                one.push_back({var, 1.0});
            }
            model.add_constraint(std::move(one), Relation::equal, 1.0, "place_f" + std::to_string(f));
        }
    }
    for (std::size_t gi = 0; gi < ng; ++gi) {
        const ServiceChain& g = slice.services[gi];
        nl.placement[gi].resize(g.vnf_sequence.size());
        for (std::size_t k = 0; k < g.vnf_sequence.size(); ++k) {
            const VnfId f = g.vnf_sequence[k];
            if (options.shared_vnf_per_slice) {
                for (const auto& [key, var] : shared)
                    if (key.first == f) nl.placement[gi][k].emplace_back(key.second, var);
                continue;
            }
            const auto hosts = usable_hosts(net, state, slice, allowed, f);
            if (hosts.empty()) return std::string("no host");
            std::vector<Term> one;
            for (NodeId v : hosts) {
                const int var = model.add_binary(
                    prices.vnf_cost(net, v, f),
                    "x_g" + std::to_string(gi) + "_k" + std::to_string(k) + "_v" + std::to_string(v));
                nl.placement[gi][k].emplace_back(v, var);
                xvars.push_back({var, v, f});
                one.push_back({var, 1.0});
            }
            model.add_constraint(std::move(one), Relation::equal, 1.0,
                                 "place_g" + std::to_string(gi) + "_k" + std::to_string(k));
        }
    }

    // routing variables over trusted links with enough residual bandwidth
    std::map<LinkId, double> potential_load;
    for (std::size_t gi = 0; gi < ng; ++gi) {
        const ServiceChain& g = slice.services[gi];
        const std::size_t hops = g.vnf_sequence.size() + 1;
        nl.routing[gi].resize(hops);
        for (const PhysLink& e : net.links) {
            if (!trusted(e.src) || !trusted(e.dst)) continue;
            if (state.link_residual(net, e.id) < g.bandwidth - 1e-9) continue;
            potential_load[e.id] += g.bandwidth * static_cast<double>(hops);
            for (std::size_t h = 0; h < hops; ++h) {
                const int var = model.add_binary(prices.link_cost(e.id, g.bandwidth),
                                                 "y_g" + std::to_string(gi) + "_h" + std::to_string(h) + "_e" +
                                                     std::to_string(e.id));
                nl.routing[gi][h].emplace_back(e.id, var);
            }
        }
    }

    // per-hop flow conservation: out - in = a_h(v) - a_{h+1}(v)
    for (std::size_t gi = 0; gi < ng; ++gi) {
        const ServiceChain& g = slice.services[gi];
        const std::size_t m = g.vnf_sequence.size();
        for (std::size_t h = 0; h <= m; ++h) {
            std::map<NodeId, std::vector<Term>> rows;
            for (const auto& [e, var] : nl.routing[gi][h]) {
                const PhysLink& link = net.links[static_cast<std::size_t>(e)];
                rows[link.src].push_back({var, 1.0});
                rows[link.dst].push_back({var, -1.0});
            }
            if (h >= 1)
                for (const auto& [v, var] : nl.placement[gi][h - 1]) rows[v].push_back({var, -1.0});
            if (h < m)
                for (const auto& [v, var] : nl.placement[gi][h]) rows[v].push_back({var, 1.0});
            if (h == 0) rows[g.source];
            if (h == m) rows[g.sink];
            for (auto& [v, terms] : rows) {
                double rhs = 0.0;
                if (h == 0 && v == g.source) rhs += 1.0;
                if (h == m && v == g.sink) rhs -= 1.0;
                model.add_constraint(std::move(terms), Relation::equal, rhs,
                                     "flow_g" + std::to_string(gi) + "_h" + std::to_string(h) + "_v" + std::to_string(v));
            }
        }
    }

    // residual link capacity, only where it can bind
    for (const auto& [e, load] : potential_load) {
        const double residual = state.link_residual(net, e);
        if (load <= residual + 1e-9) continue;
        std::vector<Term> terms;
        for (std::size_t gi = 0; gi < ng; ++gi)
            for (const auto& hop : nl.routing[gi])
                for (const auto& [link, var] : hop)
                    if (link == e) terms.push_back({var, slice.services[gi].bandwidth});
        model.add_constraint(std::move(terms), Relation::less_equal, residual, "cap_e" + std::to_string(e));
    }

    // residual node resources
    std::map<std::pair<NodeId, ResourceId>, std::vector<Term>> node_rows;
    for (const auto& x : xvars) {
        const auto& demand = net.vnfs[static_cast<std::size_t>(x.vnf)].demand;
        for (std::size_t r = 0; r < demand.size(); ++r)
            if (demand[r] > 0.0) node_rows[{x.node, static_cast<ResourceId>(r)}].push_back({x.var, demand[r]});
    }
    for (auto& [key, terms] : node_rows) {
        double potential = 0.0;
        for (const auto& t : terms) potential += t.coef;
        const double residual = state.node_residual(net, key.first, key.second);
        if (potential <= residual + 1e-9) continue;
        model.add_constraint(std::move(terms), Relation::less_equal, residual,
                             "res_v" + std::to_string(key.first) + "_r" + std::to_string(key.second));
    }

    // end-to-end latency
    for (std::size_t gi = 0; gi < ng; ++gi) {
        const ServiceChain& g = slice.services[gi];
        double processing = 0.0;
        for (VnfId f : g.vnf_sequence) processing += net.vnfs[static_cast<std::size_t>(f)].proc_delay;
        const double budget = g.max_latency - processing;
        if (budget < -1e-12) return std::string("latency");
        std::vector<Term> terms;
        for (const auto& hop : nl.routing[gi])
            for (const auto& [e, var] : hop) {
                const double delay = net.links[static_cast<std::size_t>(e)].prop_delay;
                if (delay > 0.0) terms.push_back({var, delay});
            }
        if (!terms.empty())
            model.add_constraint(std::move(terms), Relation::less_equal, std::max(0.0, budget),
                                 "lat_g" + std::to_string(gi));
    }
    return nl;
}

Embedding decode_nl(const NlModel& nl, const PhysicalNetwork& net, const SliceRequest& slice,
                    const std::vector<double>& values) {
    Embedding emb;
    emb.slice_id = slice.id;
    for (std::size_t gi = 0; gi < slice.services.size(); ++gi) {
        const ServiceChain& g = slice.services[gi];
        ServiceEmbedding se;
        se.service_id = g.id;
        for (const auto& options : nl.placement[gi]) {
            NodeId host = -1;
            for (const auto& [v, var] : options)
                if (values[static_cast<std::size_t>(var)] > 0.5) {
                    host = v;
                    break;
                }
            if (host < 0) throw std::logic_error("decode_nl: chain position without a host");
            se.placement.push_back(host);
        }
        std::vector<NodeId> waypoints{g.source};
        waypoints.insert(waypoints.end(), se.placement.begin(), se.placement.end());
        waypoints.push_back(g.sink);

        for (std::size_t h = 0; h < nl.routing[gi].size(); ++h) {
            const NodeId from = waypoints[h];
            const NodeId to = waypoints[h + 1];
            std::map<NodeId, std::vector<LinkId>> support;
            for (const auto& [e, var] : nl.routing[gi][h])
                if (values[static_cast<std::size_t>(var)] > 0.5) support[net.links[static_cast<std::size_t>(e)].src].push_back(e);
            std::vector<LinkId> route;
            if (from != to) {
                // BFS inside the support drops any detached cycles
                std::map<NodeId, LinkId> via;
                std::deque<NodeId> queue{from};
                std::set<NodeId> seen{from};
                while (!queue.empty() && !seen.count(to)) {
                    const NodeId u = queue.front();
                    queue.pop_front();
                    for (LinkId e : support[u]) {
                        const NodeId w = net.links[static_cast<std::size_t>(e)].dst;
                        if (seen.insert(w).second) {
                            via[w] = e;
                            queue.push_back(w);
                        }
                    }
                }
                if (!seen.count(to)) throw std::logic_error("decode_nl: hop support does not connect its endpoints");
                for (NodeId at = to; at != from;) {
                    const LinkId e = via[at];
                    route.push_back(e);
                    at = net.links[static_cast<std::size_t>(e)].src;
                }
                std::reverse(route.begin(), route.end());
            }
            se.hop_routes.push_back(std::move(route));
        }
        emb.services.push_back(std::move(se));
    }
    return emb;
}

EmbedResult solve_nl(const PhysicalNetwork& net, const TrustRelation& trust, const ResidualState& state,
                     const SliceRequest& slice, const PriceSnapshot& prices, const SolveOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    auto since = [&] { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count(); };

    std::variant<NlModel, std::string> built;
    try {
        built = build_nl(net, trust, state, slice, prices, options.embedding);
    } catch (const UntrustableRequest&) {
        EmbedResult r = EmbedResult::blocked("untrusted");
        r.total_ms = since();
        return r;
    }
    if (auto* reason = std::get_if<std::string>(&built)) {
        EmbedResult r = EmbedResult::blocked(*reason);
        r.total_ms = r.build_ms = since();
        return r;
    }
    const NlModel& nl = std::get<NlModel>(built);

    EmbedResult r;
    r.variables = nl.model.variable_count();
    r.constraints = nl.model.constraint_count();
    r.build_ms = since();
    const milp::IlpSolution sol = detail::run_solver(nl.model, options);
    r.status = sol.status;
    r.bb_nodes = sol.nodes;
    r.solve_ms = sol.wall_ms;
    const bool usable = sol.status == milp::SolveStatus::optimal ||
                        (sol.status == milp::SolveStatus::time_limit_best_incumbent && options.accept_incumbent);
    if (usable) {
        Embedding emb = decode_nl(nl, net, slice, sol.values);
        evaluate_cost(net, slice, prices, options.embedding, emb);
        r.embedding = std::move(emb);
        r.optimal = sol.status == milp::SolveStatus::optimal;
        r.objective = sol.objective;
    } else {
        switch (sol.status) {
        case milp::SolveStatus::infeasible: r.blocked_reason = "infeasible"; break;
        case milp::SolveStatus::time_limit_best_incumbent:
        case milp::SolveStatus::time_limit_no_incumbent: r.blocked_reason = "time_limit"; break;
        default: r.blocked_reason = "solver_error"; break;
        }
    }
    r.total_ms = since();
    return r;
}

}  // namespace slicebed
