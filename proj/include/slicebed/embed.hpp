#pragma once

#include "slicebed/milp.hpp"
#include "slicebed/model.hpp"
#include "slicebed/paths.hpp"
#include "slicebed/pricing.hpp"

#include <chrono>
#include <optional>
#include <string>

namespace slicebed {

enum class Engine { node_link, path_link };

std::string to_string(Engine engine);
Engine parse_engine(const std::string& text);

struct SolveOptions {
    EmbeddingOptions embedding;
    int k_paths = 8;
    bool prune_saturated = true;
    std::chrono::milliseconds time_limit{10000};
    // Admit the best incumbent when the time limit cuts the search short.
    bool accept_incumbent = true;
    milp::Solver* solver = nullptr; // nullptr selects the built-in branch and bound
};

/// Outcome of one admission attempt: an embedding, or the reason it was blocked.
struct EmbedResult {
    std::optional<Embedding> embedding;
    std::string blocked_reason;
    milp::SolveStatus status = milp::SolveStatus::infeasible;
    bool optimal = false;
    double objective = 0.0;
    std::size_t variables = 0;
    std::size_t constraints = 0;
    long bb_nodes = 0;
    double build_ms = 0.0;
    double solve_ms = 0.0;
    double total_ms = 0.0;

    bool accepted() const { return embedding.has_value(); }

    static EmbedResult blocked(std::string reason) {
        EmbedResult r;
        r.blocked_reason = std::move(reason);
        return r;
    }
};

/// Snapshots prices from `state` and runs the chosen engine.
EmbedResult embed_request(Engine engine, const PhysicalNetwork& net, const TrustRelation& trust,
                          const ResidualState& state, const SliceRequest& slice, const PricingPolicy& pricing,
                          const SolveOptions& options = {});

namespace detail {
milp::IlpSolution run_solver(const milp::IlpModel& model, const SolveOptions& options);
}

}  // namespace slicebed
