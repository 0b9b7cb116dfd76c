#include "slicebed/embed.hpp"

#include "slicebed/embed_nl.hpp"
#include "slicebed/embed_pl.hpp"

namespace slicebed {

std::string to_string(Engine engine) { return engine == Engine::node_link ? "nl" : "pl"; }

Engine parse_engine(const std::string& text) {
    if (text == "nl") return Engine::node_link;
    if (text == "pl") return Engine::path_link;
    throw InputError("unknown engine '" + text + "' (expected nl or pl)");
}

namespace detail {

milp::IlpSolution run_solver(const milp::IlpModel& model, const SolveOptions& options) {
    milp::BranchAndBoundOptions bb;
    bb.time_limit = options.time_limit;
    if (options.solver) return options.solver->solve(model, bb);
    return milp::branch_and_bound(model, bb);
}

}  // namespace detail

EmbedResult embed_request(Engine engine, const PhysicalNetwork& net, const TrustRelation& trust,
                          const ResidualState& state, const SliceRequest& slice, const PricingPolicy& pricing,
                          const SolveOptions& options) {
    const PriceSnapshot prices(net, state, pricing);
    if (engine == Engine::node_link) return solve_nl(net, trust, state, slice, prices, options);
    return solve_pl(net, trust, state, slice, prices, options);
}

}  // namespace slicebed
