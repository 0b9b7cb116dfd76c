// JSON strings cross the boundary; the Python package decodes them.

#include "slicebed/cli.hpp"
#include "slicebed/embed.hpp"
#include "slicebed/scenario.hpp"
#include "slicebed/sim.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace slicebed;

namespace {

std::tuple<int, std::string, std::string> cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = run_cli(args, out, err);
    }
    return {code, out.str(), err.str()};
}

std::string generate(std::uint64_t seed, int operators, int nodes_per_operator, double utilization) {
    ScenarioGen gen;
    gen.operators = operators;
    gen.nodes_per_operator = nodes_per_operator;
    gen.utilization = utilization;
    return scenario_to_json(generate_scenario(gen, seed)).dump();
}

std::string solve(const std::string& scenario_json, const std::string& request_json, const std::string& engine,
                  int k_paths, const std::string& pricing) {
    const Scenario sc = parse_scenario(nlohmann::json::parse(scenario_json));
    const SliceRequest req = parse_request(sc.net, nlohmann::json::parse(request_json));
    PricingPolicy policy = sc.pricing;
    policy.mode = parse_pricing_mode(pricing);
    SolveOptions opts;
    opts.k_paths = k_paths;
    opts.embedding = sc.options;
    EmbedResult r;
    {
        py::gil_scoped_release release;
        r = embed_request(parse_engine(engine), sc.net, sc.trust, ResidualState(sc.net), req, policy, opts);
    }
    nlohmann::json doc{{"accepted", r.accepted()}, {"optimal", r.optimal}, {"total_ms", r.total_ms}};
    if (r.accepted()) {
        doc["cost"] = r.embedding->total_cost;
        doc["embedding"] = embedding_to_json(*r.embedding);
    } else {
        doc["blocked_reason"] = r.blocked_reason;
    }
    return doc.dump();
}

std::vector<std::string> check(const std::string& scenario_json, const std::string& request_json,
                               const std::string& embedding_json) {
    const Scenario sc = parse_scenario(nlohmann::json::parse(scenario_json));
    const SliceRequest req = parse_request(sc.net, nlohmann::json::parse(request_json));
    const Embedding emb = embedding_from_json(nlohmann::json::parse(embedding_json));
    std::vector<std::string> kinds;
    for (const auto& v : check_embedding(sc.net, sc.trust, ResidualState(sc.net), req, emb, sc.options))
        kinds.push_back(v.kind + ": " + v.detail);
    return kinds;
}

std::string simulate(const std::string& scenario_json, const std::string& engine, const std::string& pricing,
                     int k_paths, std::uint64_t seed, double horizon) {
    const Scenario sc = parse_scenario(nlohmann::json::parse(scenario_json));
    Workload w = sc.workload;
    w.seed = seed;
    if (horizon > 0) w.horizon = horizon;
    RunConfig cfg;
    cfg.engine = parse_engine(engine);
    cfg.pricing = sc.pricing;
    cfg.pricing.mode = parse_pricing_mode(pricing);
    cfg.k_paths = k_paths;
    RunMetrics m;
    {
        py::gil_scoped_release release;
        m = run(sc, w, cfg);
    }
    return summary_json(m).dump();
}

}  // namespace

PYBIND11_MODULE(_slicebed, m) {
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    m.def("run_cli", &cli, py::arg("args"));
    m.def("generate", &generate, py::arg("seed"), py::arg("operators") = 3, py::arg("nodes_per_operator") = 10,
          py::arg("utilization") = 0.6);
    m.def("solve", &solve, py::arg("scenario"), py::arg("request"), py::arg("engine") = "pl", py::arg("k_paths") = 8,
          py::arg("pricing") = "static");
    m.def("check", &check, py::arg("scenario"), py::arg("request"), py::arg("embedding"));
    m.def("simulate", &simulate, py::arg("scenario"), py::arg("engine") = "pl", py::arg("pricing") = "static",
          py::arg("k_paths") = 8, py::arg("seed") = 1, py::arg("horizon") = 0.0);
}
