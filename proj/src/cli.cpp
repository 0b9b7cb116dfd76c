#include "slicebed/cli.hpp"

#include "slicebed/expand.hpp"
#include "slicebed/sim.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

namespace slicebed {

namespace {

struct GenFlags {
    std::optional<int> operators, nodes_per_operator, border_nodes, vnf_count;
    std::optional<double> pi, rho, trust_density;
    std::optional<std::uint64_t> gen_seed;
};

struct WorkloadFlags {
    std::optional<double> lambda, holding, horizon, sample_interval;
    std::optional<std::uint64_t> seed;
    std::string seeds;
};

struct Flags {
    std::string scenario, request, out, dot_service;
    std::vector<std::string> engines, pricing;
    std::vector<int> k_paths;
    std::optional<long> time_limit_ms;
    std::optional<double> cap;
    int service = 0;
    bool events = false, check_conservation = false;
    GenFlags gen;
    WorkloadFlags work;
};

void add_gen_flags(CLI::App* app, GenFlags& g, CLI::Option* scenario) {
    std::vector<CLI::Option*> opts{
        app->add_option("--operators", g.operators, "operator count"),
        app->add_option("--nodes-per-operator", g.nodes_per_operator, "nodes per operator"),
        app->add_option("--border-nodes", g.border_nodes, "border nodes per operator"),
        app->add_option("--vnfs", g.vnf_count, "VNF catalog size"),
        app->add_option("--pi", g.pi, "inter-operator link probability"),
        app->add_option("--rho", g.rho, "target utilization regime"),
        app->add_option("--trust-density", g.trust_density, "probability that i trusts j"),
        app->add_option("--gen-seed", g.gen_seed, "generator seed")};
    if (scenario)
        for (auto* o : opts) o->excludes(scenario);
}

void add_workload_flags(CLI::App* app, WorkloadFlags& w, bool multi_seed) {
    app->add_option("--lambda", w.lambda, "arrival rate");
    app->add_option("--holding", w.holding, "mean holding time");
    app->add_option("--horizon", w.horizon, "simulated horizon");
    app->add_option("--sample-interval", w.sample_interval, "time-series sampling interval (0 disables)");
    auto* seed = app->add_option("--seed", w.seed, "workload seed");
    if (multi_seed) app->add_option("--seeds", w.seeds, "inclusive seed range A..B")->excludes(seed);
}

void add_solver_flags(CLI::App* app, Flags& f, bool repeat) {
    auto* engine = app->add_option("--engine", f.engines, "nl or pl")->check(CLI::IsMember({"nl", "pl"}));
    auto* pricing = app->add_option("--pricing", f.pricing, "static or kleinrock")->check(CLI::IsMember({"static", "kleinrock"}));
    auto* k = app->add_option("--k-paths", f.k_paths, "candidate paths per service");
    if (!repeat) {
        engine->expected(1);
        pricing->expected(1);
        k->expected(1);
    }
    app->add_option("--cap", f.cap, "Kleinrock multiplier cap");
    app->add_option("--time-limit-ms", f.time_limit_ms, "per-request solver time limit");
}

std::vector<std::uint64_t> seed_list(const WorkloadFlags& w, std::uint64_t fallback) {
    if (w.seeds.empty()) return {w.seed.value_or(fallback)};
    const auto dots = w.seeds.find("..");
    if (dots == std::string::npos) throw InputError("--seeds expects A..B");
    std::uint64_t a = 0, b = 0;
    try {
        std::size_t used = 0;
        a = std::stoull(w.seeds.substr(0, dots), &used);
        if (used != dots) throw std::invalid_argument("seed");
        const std::string rest = w.seeds.substr(dots + 2);
        b = std::stoull(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("seed");
    } catch (const std::logic_error&) {
        throw InputError("--seeds expects A..B with non-negative integers");
    }
    if (b < a) throw InputError("--seeds range is empty");
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
    return seeds;
}

void apply_workload(Workload& w, const WorkloadFlags& f) {
    if (f.lambda) w.arrival_rate = *f.lambda;
    if (f.holding) w.mean_holding = *f.holding;
    if (f.horizon) w.horizon = *f.horizon;
    if (f.sample_interval) w.sample_interval = *f.sample_interval;
    if (f.seed) w.seed = *f.seed;
    w.validate();
}

Scenario make_scenario(const Flags& f) {
    if (!f.scenario.empty()) {
        Scenario sc = load_scenario(f.scenario);
        apply_workload(sc.workload, f.work);
        return sc;
    }
    ScenarioGen gen;
    const GenFlags& g = f.gen;
    if (g.operators) gen.operators = *g.operators;
    if (g.nodes_per_operator) gen.nodes_per_operator = *g.nodes_per_operator;
    if (g.border_nodes) gen.border_nodes = *g.border_nodes;
    if (g.vnf_count) gen.vnf_count = *g.vnf_count;
    if (g.pi) gen.inter_link_prob = *g.pi;
    if (g.rho) gen.utilization = *g.rho;
    if (g.trust_density) gen.trust_density = *g.trust_density;
    apply_workload(gen.workload, f.work);
    return generate_scenario(gen, g.gen_seed.value_or(1));
}

PricingPolicy pricing_for(const Scenario& sc, const Flags& f, const std::string& mode) {
    PricingPolicy p = sc.pricing;
    if (!mode.empty()) p.mode = parse_pricing_mode(mode);
    if (f.cap) p.cap = *f.cap;
    p.validate();
    return p;
}

SolveOptions solve_options(const Scenario& sc, const Flags& f, int k) {
    SolveOptions o;
    o.embedding = sc.options;
    o.k_paths = k;
    if (o.k_paths < 1) throw InputError("--k-paths must be >= 1");
    if (f.time_limit_ms) {
        if (*f.time_limit_ms < 1) throw InputError("--time-limit-ms must be >= 1");
        o.time_limit = std::chrono::milliseconds(*f.time_limit_ms);
    }
    return o;
}

std::vector<RunConfig> run_configs(const Scenario& sc, const Flags& f) {
    const std::vector<std::string> engines = f.engines.empty() ? std::vector<std::string>{"pl"} : f.engines;
    const std::vector<std::string> pricing = f.pricing.empty() ? std::vector<std::string>{""} : f.pricing;
    const std::vector<int> ks = f.k_paths.empty() ? std::vector<int>{8} : f.k_paths;
    std::vector<RunConfig> configs;
    for (const auto& e : engines)
        for (const auto& p : pricing)
            for (int k : ks) {
                RunConfig c;
                c.engine = parse_engine(e);
                c.pricing = pricing_for(sc, f, p);
                const SolveOptions o = solve_options(sc, f, k);
                c.k_paths = o.k_paths;
                c.time_limit = o.time_limit;
                c.record_events = f.events;
                c.check_conservation = f.check_conservation;
                c.label = e + "-" + to_string(c.pricing.mode) + "-k" + std::to_string(k);
                configs.push_back(c);
            }
    return configs;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

int cmd_gen(const Flags& f, std::ostream& out) {
    write_text(f.out, scenario_to_json(make_scenario(f)).dump(2) + "\n", out);
    return 0;
}

int cmd_validate(const Flags& f, std::ostream& out) {
    const Scenario sc = load_scenario(f.scenario);
    out << "ok: " << sc.net.operator_count() << " operators, " << sc.net.nodes.size() << " nodes, "
        << sc.net.links.size() << " directed links, " << sc.net.vnfs.size() << " vnfs\n";
    if (!f.request.empty()) {
        const SliceRequest req = load_request(sc.net, f.request);
        out << "ok: request " << req.id << " with " << req.services.size() << " services\n";
    }
    return 0;
}

int cmd_solve(const Flags& f, std::ostream& out) {
    const Scenario sc = load_scenario(f.scenario);
    const SliceRequest req = load_request(sc.net, f.request);
    const PricingPolicy pricing = pricing_for(sc, f, f.pricing.empty() ? "" : f.pricing.front());
    const SolveOptions opts = solve_options(sc, f, f.k_paths.empty() ? 8 : f.k_paths.front());
    const ResidualState state(sc.net);
    const std::vector<std::string> engines = f.engines.empty() ? std::vector<std::string>{"pl"} : f.engines;

    nlohmann::json doc = nlohmann::json::object();
    bool blocked = false;
    for (const auto& name : engines) {
        const EmbedResult r = embed_request(parse_engine(name), sc.net, sc.trust, state, req, pricing, opts);
        out << name << ": ";
        if (!r.accepted()) {
            blocked = true;
            out << "blocked (" << r.blocked_reason << ")\n";
            doc[name] = {{"blocked", r.blocked_reason}};
            continue;
        }
        const auto violations = check_embedding(sc.net, sc.trust, state, req, *r.embedding, sc.options);
        out << "cost " << r.embedding->total_cost << ", " << milp::to_string(r.status) << ", "
            << r.variables << " vars, " << r.constraints << " rows, " << r.total_ms << " ms, "
            << (violations.empty() ? "valid" : "INVALID") << "\n";
        for (const auto& s : r.embedding->services)
            out << "  service " << s.service_id << ": cost " << s.cost << ", latency " << s.latency << "\n";
        for (const auto& v : violations) out << "  violation " << v.kind << ": " << v.detail << "\n";
        doc[name] = embedding_to_json(*r.embedding);
        if (!violations.empty()) throw std::logic_error("engine produced an infeasible embedding");
    }
    if (!f.out.empty()) write_text(f.out, (engines.size() == 1 ? doc[engines.front()] : doc).dump(2) + "\n", out);
    return blocked ? 1 : 0;
}

template <class Fn>
void parallel_for(std::size_t n, Fn fn) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    };
    const unsigned threads = std::min<unsigned>(worker_threads(), static_cast<unsigned>(std::max<std::size_t>(n, 1)));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

int cmd_simulate(const Flags& f, std::ostream& out) {
    const Scenario sc = make_scenario(f);
    const RunConfig config = run_configs(sc, f).front();
    const auto seeds = seed_list(f.work, sc.workload.seed);
    std::vector<RunMetrics> runs(seeds.size());
    std::vector<Workload> loads(seeds.size(), sc.workload);
    parallel_for(seeds.size(), [&](std::size_t i) {
        loads[i].seed = seeds[i];
        runs[i] = run(sc, loads[i], config);
    });
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto dir = write_run_dir(f.out.empty() ? "runs" : f.out, runs[i], loads[i]);
        out << dir.string() << ": offered " << runs[i].total.offered << ", blocking "
            << runs[i].total.blocking_probability() << "\n";
    }
    return 0;
}

int cmd_compare(const Flags& f, std::ostream& out) {
    const Scenario sc = make_scenario(f);
    const auto configs = run_configs(sc, f);
    if (configs.size() < 2) throw InputError("compare needs at least two configurations (repeat --engine, --pricing or --k-paths)");
    const std::filesystem::path root = f.out.empty() ? "runs" : f.out;
    std::string csv = comparison_csv_header();
    for (std::uint64_t seed : seed_list(f.work, sc.workload.seed)) {
        Workload w = sc.workload;
        w.seed = seed;
        const auto runs = compare(sc, w, configs);
        for (const auto& r : runs) write_run_dir(root, r, w);
        csv += comparison_csv(runs);
    }
    std::filesystem::create_directories(root);
    write_text((root / "comparison.csv").string(), csv, out);
    out << (root / "comparison.csv").string() << "\n";
    return 0;
}

int cmd_dump_expanded(const Flags& f, std::ostream& out) {
    const Scenario sc = load_scenario(f.scenario);
    const SliceRequest req = load_request(sc.net, f.request);
    if (f.service < 0 || f.service >= static_cast<int>(req.services.size())) throw InputError("--service out of range");
    const PricingPolicy pricing = pricing_for(sc, f, f.pricing.empty() ? "" : f.pricing.front());
    const ResidualState state(sc.net);
    const PriceSnapshot prices(sc.net, state, pricing);
    const auto allowed = allowed_operators(req, sc.trust);
    const ExpandedNetwork exp =
        build_expanded(sc.net, req.services[static_cast<std::size_t>(f.service)], req, allowed, prices);
    std::ostringstream dot;
    exp.write_dot(dot);
    write_text(f.out, dot.str(), out);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trust-aware multi-operator network slice embedding"};
    app.name("slicebed");
    app.require_subcommand(1);
    Flags f;

    auto* gen = app.add_subcommand("gen", "emit a random scenario as JSON");
    add_gen_flags(gen, f.gen, nullptr);
    add_workload_flags(gen, f.work, false);
    gen->add_option("--out", f.out, "output file (default stdout)");

    auto* validate = app.add_subcommand("validate", "lint a scenario (and optionally a request)");
    validate->add_option("scenario,--scenario", f.scenario, "scenario file")->required();
    validate->add_option("--request", f.request, "request file");

    auto* solve = app.add_subcommand("solve", "embed one slice request on an empty network");
    solve->add_option("--scenario", f.scenario, "scenario file")->required();
    solve->add_option("--request", f.request, "request file")->required();
    add_solver_flags(solve, f, true);
    solve->add_option("--out", f.out, "write the embedding JSON here");

    auto* simulate = app.add_subcommand("simulate", "run the online simulator");
    auto* sim_scenario = simulate->add_option("--scenario", f.scenario, "scenario file");
    add_gen_flags(simulate, f.gen, sim_scenario);
    add_workload_flags(simulate, f.work, true);
    add_solver_flags(simulate, f, false);
    simulate->add_option("--out", f.out, "run directory root (default runs)");
    simulate->add_flag("--events", f.events, "write events.jsonl");
    simulate->add_flag("--check-conservation", f.check_conservation, "verify the ledger after every event");

    auto* cmp = app.add_subcommand("compare", "run several configurations on common arrivals");
    auto* cmp_scenario = cmp->add_option("--scenario", f.scenario, "scenario file");
    add_gen_flags(cmp, f.gen, cmp_scenario);
    add_workload_flags(cmp, f.work, true);
    add_solver_flags(cmp, f, true);
    cmp->add_option("--out", f.out, "output root (default runs)");
    cmp->add_flag("--events", f.events, "write events.jsonl per run");
    cmp->add_flag("--check-conservation", f.check_conservation, "verify the ledger after every event");

    auto* dump = app.add_subcommand("dump-expanded", "write the expanded network of one service as DOT");
    dump->add_option("--scenario", f.scenario, "scenario file")->required();
    dump->add_option("--request", f.request, "request file")->required();
    dump->add_option("--service", f.service, "service index");
    dump->add_option("--pricing", f.pricing, "static or kleinrock")->expected(1)->check(CLI::IsMember({"static", "kleinrock"}));
    dump->add_option("--out", f.out, "output file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(f, out);
        if (validate->parsed()) return cmd_validate(f, out);
        if (solve->parsed()) return cmd_solve(f, out);
        if (simulate->parsed()) return cmd_simulate(f, out);
        if (cmp->parsed()) return cmd_compare(f, out);
        if (dump->parsed()) return cmd_dump_expanded(f, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UntrustableRequest& e) {
        err << "blocked: " << e.what() << "\n";
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace slicebed
