#include "slicebed/embed_pl.hpp"

#include <chrono>
#include <map>
#include <set>

namespace slicebed {

using milp::Relation;
using milp::Term;

std::variant<PlModel, std::string> build_pl(const PhysicalNetwork& net, const CandidateSet& candidates,
                                            const ResidualState& state, const SliceRequest& slice,
                                            const PriceSnapshot& prices, const EmbeddingOptions& options) {
    for (std::size_t gi = 0; gi < candidates.per_service.size(); ++gi)
        if (candidates.per_service[gi].empty()) {
            const std::string& why = candidates.empty_reason[gi];
            return "no candidate path" + (why.empty() ? std::string() : " (" + why + ")");
        }

    PlModel pl;
    milp::IlpModel& model = pl.model;
    const bool shared = options.shared_vnf_per_slice;

    // one candidate per service
    pl.choice.resize(candidates.per_service.size());
    for (std::size_t gi = 0; gi < candidates.per_service.size(); ++gi) {
        std::vector<Term> one;
        for (const auto& c : candidates.per_service[gi]) {
            const int var = model.add_binary(shared ? c.link_cost : c.cost,
                                             "z_g" + std::to_string(gi) + "_p" + std::to_string(c.index));
            pl.choice[gi].push_back(var);
            one.push_back({var, 1.0});
        }
        model.add_constraint(std::move(one), Relation::equal, 1.0, "choose_g" + std::to_string(gi));
    }

    // link capacity; a row is only needed when the worst case can overflow
    std::map<LinkId, std::vector<Term>> link_rows;
    std::map<LinkId, double> worst;
    for (std::size_t gi = 0; gi < candidates.per_service.size(); ++gi) {
        std::map<LinkId, double> service_max;
        for (const auto& c : candidates.per_service[gi])
            for (const auto& [e, load] : c.link_load) {
                link_rows[e].push_back({pl.choice[gi][static_cast<std::size_t>(c.index)], load});
                service_max[e] = std::max(service_max[e], load);
            }
        for (const auto& [e, load] : service_max) worst[e] += load;
    }
    for (auto& [e, terms] : link_rows) {
        const double residual = state.link_residual(net, e);
        if (worst[e] <= residual + 1e-9) continue;
        model.add_constraint(std::move(terms), Relation::less_equal, residual, "cap_e" + std::to_string(e));
    }

    // node resources
    std::map<std::pair<NodeId, ResourceId>, std::vector<Term>> node_rows;
    std::map<std::pair<NodeId, ResourceId>, double> node_worst;
    if (!shared) {
        for (std::size_t gi = 0; gi < candidates.per_service.size(); ++gi) {
            std::map<std::pair<NodeId, ResourceId>, double> service_max;
            for (const auto& c : candidates.per_service[gi])
                for (const auto& [v, r, load] : c.node_load) {
                    node_rows[{v, r}].push_back({pl.choice[gi][static_cast<std::size_t>(c.index)], load});
                    service_max[{v, r}] = std::max(service_max[{v, r}], load);
                }
            for (const auto& [key, load] : service_max) node_worst[key] += load;
        }
    } else {
        // one instance per (vnf, host), all services agree on the host of each vnf
        for (std::size_t gi = 0; gi < candidates.per_service.size(); ++gi) {
            const ServiceChain& g = slice.services[gi];
            for (const auto& c : candidates.per_service[gi])
                for (std::size_t k = 0; k < c.placement.size(); ++k) {
                    const auto key = std::make_pair(g.vnf_sequence[k], c.placement[k]);
                    if (!pl.instance.count(key))
                        pl.instance[key] = model.add_binary(prices.vnf_cost(net, key.second, key.first),
                                                            "w_f" + std::to_string(key.first) + "_v" +
                                                                std::to_string(key.second));
                }
        }
        std::map<VnfId, std::vector<Term>> one_host;
        for (const auto& [key, var] : pl.instance) one_host[key.first].push_back({var, 1.0});
        for (auto& [f, terms] : one_host)
            model.add_constraint(std::move(terms), Relation::equal, 1.0, "host_f" + std::to_string(f));
        for (std::size_t gi = 0; gi < candidates.per_service.size(); ++gi) {
            const ServiceChain& g = slice.services[gi];
            for (const auto& c : candidates.per_service[gi]) {
                std::set<int> linked;
                for (std::size_t k = 0; k < c.placement.size(); ++k)
                    linked.insert(pl.instance.at({g.vnf_sequence[k], c.placement[k]}));
                for (int w : linked)
                    model.add_constraint({{pl.choice[gi][static_cast<std::size_t>(c.index)], 1.0}, {w, -1.0}},
                                         Relation::less_equal, 0.0);
            }
        }
        for (const auto& [key, var] : pl.instance) {
            const auto& demand = net.vnfs[static_cast<std::size_t>(key.first)].demand;
            for (std::size_t r = 0; r < demand.size(); ++r) {
                if (demand[r] <= 0.0) continue;
                const std::pair<NodeId, ResourceId> nr{key.second, static_cast<ResourceId>(r)};
                node_rows[nr].push_back({var, demand[r]});
                node_worst[nr] += demand[r];
            }
        }
    }
    for (auto& [key, terms] : node_rows) {
        const double residual = state.node_residual(net, key.first, key.second);
        if (node_worst[key] <= residual + 1e-9) continue;
        model.add_constraint(std::move(terms), Relation::less_equal, residual,
                             "res_v" + std::to_string(key.first) + "_r" + std::to_string(key.second));
    }
    return pl;
}

Embedding decode_pl(const PlModel& pl, const CandidateSet& candidates, const SliceRequest& slice,
                    const std::vector<double>& values) {
    Embedding emb;
    emb.slice_id = slice.id;
    for (std::size_t gi = 0; gi < pl.choice.size(); ++gi) {
        const CandidatePath* chosen = nullptr;
        for (std::size_t p = 0; p < pl.choice[gi].size(); ++p)
            if (values[static_cast<std::size_t>(pl.choice[gi][p])] > 0.5) {
                chosen = &candidates.per_service[gi][p];
                break;
            }
        if (!chosen) throw std::logic_error("decode_pl: service without a chosen path");
        ServiceEmbedding se;
        se.service_id = slice.services[gi].id;
        se.placement = chosen->placement;
        se.hop_routes = chosen->hop_routes;
        emb.services.push_back(std::move(se));
    }
    return emb;
}

EmbedResult solve_pl_with(const PhysicalNetwork& net, const CandidateSet& candidates, const ResidualState& state,
                          const SliceRequest& slice, const PriceSnapshot& prices, const SolveOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    auto since = [&] { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count(); };

    auto built = build_pl(net, candidates, state, slice, prices, options.embedding);
    if (auto* reason = std::get_if<std::string>(&built)) {
        EmbedResult r = EmbedResult::blocked(*reason);
        r.total_ms = r.build_ms = since();
        return r;
    }
    const PlModel& pl = std::get<PlModel>(built);
    EmbedResult r;
    r.variables = pl.model.variable_count();
    r.constraints = pl.model.constraint_count();
    r.build_ms = since();
    const milp::IlpSolution sol = detail::run_solver(pl.model, options);
    r.status = sol.status;
    r.bb_nodes = sol.nodes;
    r.solve_ms = sol.wall_ms;
    const bool usable = sol.status == milp::SolveStatus::optimal ||
                        (sol.status == milp::SolveStatus::time_limit_best_incumbent && options.accept_incumbent);
    if (usable) {
        Embedding emb = decode_pl(pl, candidates, slice, sol.values);
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

EmbedResult solve_pl(const PhysicalNetwork& net, const TrustRelation& trust, const ResidualState& state,
                     const SliceRequest& slice, const PriceSnapshot& prices, const SolveOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    CandidateOptions copts;
    copts.k_paths = options.k_paths;
    copts.embedding = options.embedding;
    copts.prune_saturated = options.prune_saturated;
    CandidateSet candidates;
    try {
        candidates = generate_candidates(net, trust, state, slice, prices, copts);
    } catch (const UntrustableRequest&) {
        EmbedResult r = EmbedResult::blocked("untrusted");
        r.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return r;
    }
    const double generation_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    EmbedResult r = solve_pl_with(net, candidates, state, slice, prices, options);
    r.build_ms += generation_ms;
    r.total_ms += generation_ms;
    return r;
}

}  // namespace slicebed
