#include "slicebed/sim.hpp"

#include "slicebed/embed_pl.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace slicebed {

using nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed;
    const std::uint64_t a = splitmix64(x);
    x = stream ^ 0xa0761d6478bd642fULL;
    return a ^ splitmix64(x);
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct UEdge {
    NodeId a, b;
    bool inter;
};

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix_seed(seed, stream)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
    if (hi <= lo) return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(std::min<std::uint64_t>(span - 1, static_cast<std::uint64_t>(uniform() * static_cast<double>(span))));
}

double Rng::exponential(double mean) { return -mean * std::log1p(-uniform()); }

void ScenarioGen::validate() const {
    if (operators < 1) throw InputError("generator: operators >= 1");
    if (nodes_per_operator < 1 || operators * nodes_per_operator < 2) throw InputError("generator: need at least 2 nodes");
    auto prob = [](double p, const char* what) {
        if (!(p >= 0.0 && p <= 1.0)) throw InputError(std::string("generator: ") + what + " must lie in [0, 1]");
    };
    prob(extra_edge_prob, "extra_edge_prob");
    prob(inter_link_prob, "inter-operator link probability");
    prob(trust_density, "trust_density");
    prob(function_node_fraction, "function_node_fraction");
    if (!(utilization > 0.0)) throw InputError("generator: utilization > 0");
    if (border_nodes < 0) throw InputError("generator: border_nodes >= 0");
    if (vnf_count < 1) throw InputError("generator: vnf_count >= 1");
    if (resources.empty()) throw InputError("generator: at least one resource");
    if (!(capacity_spread >= 0.0 && capacity_spread < 1.0)) throw InputError("generator: capacity_spread in [0, 1)");
    if (delay_min < 0 || delay_max < delay_min) throw InputError("generator: delay range");
    if (link_price_min < 0 || link_price_max < link_price_min) throw InputError("generator: link price range");
    if (node_price_min < 0 || node_price_max < node_price_min) throw InputError("generator: node price range");
    if (connectivity_retries < 1) throw InputError("generator: connectivity_retries >= 1");
    if (calibration_samples < 1) throw InputError("generator: calibration_samples >= 1");
    if (slice_types.empty()) throw InputError("generator: at least one slice type");
    double w = 0.0;
    for (const auto& t : slice_types) w += t.weight;
    if (std::abs(w - 1.0) > 1e-9) throw InputError("slice type weights must sum to 1");
    workload.validate();
    pricing.validate();
}

namespace {

bool connected(int n, const std::vector<UEdge>& edges) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& e : edges) {
        adj[static_cast<std::size_t>(e.a)].push_back(e.b);
        adj[static_cast<std::size_t>(e.b)].push_back(e.a);
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == n;
}

struct Topology {
    std::vector<int> op_of;          // node -> operator id
    std::vector<char> function;
    std::vector<UEdge> edges;
};

Topology draw_topology(const ScenarioGen& gen, Rng& rng) {
    Topology topo;
    const int n_op = gen.operators;
    const int per = gen.nodes_per_operator;
    const int n = n_op * per;
    topo.op_of.resize(static_cast<std::size_t>(n));
    topo.function.assign(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> borders(static_cast<std::size_t>(n_op));
    for (int o = 0; o < n_op; ++o) {
        std::vector<int> members(static_cast<std::size_t>(per));
        for (int i = 0; i < per; ++i) {
            members[static_cast<std::size_t>(i)] = o * per + i;
            topo.op_of[static_cast<std::size_t>(o * per + i)] = o + 1;
        }
        // random spanning tree keeps every operator connected on its own
        std::vector<int> order = members;
        shuffle(order, rng);
        std::set<std::pair<int, int>> present;
        for (int i = 1; i < per; ++i) {
            const int a = order[static_cast<std::size_t>(i)];
            const int b = order[static_cast<std::size_t>(rng.uniform_int(0, i - 1))];
            topo.edges.push_back({std::min(a, b), std::max(a, b), false});
            present.insert({std::min(a, b), std::max(a, b)});
        }
        for (int i = 0; i < per; ++i)
            for (int j = i + 1; j < per; ++j) {
                const int a = members[static_cast<std::size_t>(i)], b = members[static_cast<std::size_t>(j)];
                if (present.count({a, b})) continue;
                if (rng.bernoulli(gen.extra_edge_prob)) topo.edges.push_back({a, b, false});
            }
        std::vector<int> pick = members;
        shuffle(pick, rng);
        const int fcount = std::max(1, static_cast<int>(std::lround(gen.function_node_fraction * per)));
        for (int i = 0; i < std::min(fcount, per); ++i) topo.function[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])] = 1;
        shuffle(pick, rng);
        pick.resize(static_cast<std::size_t>(std::min(gen.border_nodes, per)));
        std::sort(pick.begin(), pick.end());
        borders[static_cast<std::size_t>(o)] = pick;
    }
    for (int o1 = 0; o1 < n_op; ++o1)
        for (int o2 = o1 + 1; o2 < n_op; ++o2)
            for (int a : borders[static_cast<std::size_t>(o1)])
                for (int b : borders[static_cast<std::size_t>(o2)])
                    if (rng.bernoulli(gen.inter_link_prob)) topo.edges.push_back({a, b, true});
    return topo;
}

}  // namespace

namespace {

std::size_t pick_type(const std::vector<SliceTypeSpec>& types, double u) {
    std::size_t ti = 0;
    for (double acc = 0.0; ti + 1 < types.size(); ++ti) {
        acc += types[ti].weight;
        if (u < acc) break;
    }
    return ti;
}

// Mean per-element footprint of one offered request embedded alone, at
// static prices, on an uncapacitated copy of the network.
struct Calibration {
    std::vector<double> link;                 // per link
    std::vector<std::vector<double>> node;    // per node, per resource
};

Calibration calibrate(const Scenario& sc, int samples, std::uint64_t seed) {
    Scenario open = sc;
    for (auto& l : open.net.links) l.capacity = 1e12;
    for (auto& v : open.net.nodes)
        for (auto& c : v.capacity) c = v.is_function_node ? 1e12 : 0.0;
    const ResidualState empty(open.net);
    const PriceSnapshot prices = PriceSnapshot::unloaded(open.net);
    SolveOptions opts;
    opts.embedding = open.options;
    Calibration cal;
    cal.link.assign(open.net.links.size(), 0.0);
    cal.node.assign(open.net.nodes.size(), std::vector<double>(open.net.resource_count(), 0.0));
    Rng rng(seed, 7);
    for (int i = 0; i < samples; ++i) {
        const SliceTypeSpec& type = open.slice_types[pick_type(open.slice_types, rng.uniform())];
        const SliceRequest req = draw_request(open, type, rng, i + 1);
        const EmbedResult r = solve_pl(open.net, open.trust, empty, req, prices, opts);
        if (!r.accepted()) continue;
        const Footprint fp = footprint_of(open.net, req, *r.embedding, open.options);
        for (const auto& [e, bw] : fp.link_bandwidth) cal.link[static_cast<std::size_t>(e)] += bw / samples;
        for (const auto& [key, amount] : fp.node_resources)
            cal.node[static_cast<std::size_t>(key.first)][static_cast<std::size_t>(key.second)] += amount / samples;
    }
    return cal;
}

}  // namespace

Scenario generate_scenario(const ScenarioGen& gen, std::uint64_t seed) {
    gen.validate();
    Rng rng(seed, 0);
    const int n = gen.operators * gen.nodes_per_operator;
    Topology topo;
    bool ok = false;
    for (int attempt = 0; attempt < gen.connectivity_retries && !ok; ++attempt) {
        topo = draw_topology(gen, rng);
        ok = gen.inter_link_prob == 0.0 || gen.operators == 1 || connected(n, topo.edges);
    }
    if (!ok) throw InputError("generator: connectivity retries exhausted");

    Scenario sc;
    PhysicalNetwork& net = sc.net;
    const std::size_t nr = gen.resources.size();
    for (std::size_t r = 0; r < nr; ++r) net.resources.push_back({static_cast<ResourceId>(r), gen.resources[r]});
    for (int o = 1; o <= gen.operators; ++o) net.operators.push_back({o, "op" + std::to_string(o)});

    for (int f = 0; f < gen.vnf_count; ++f) {
        Vnf vnf;
        vnf.id = f;
        vnf.name = "vnf" + std::to_string(f);
        vnf.proc_delay = rng.uniform(0.5, 2.0);
        for (std::size_t r = 0; r < nr; ++r) vnf.demand.push_back(rng.uniform(1.0, 4.0));
        net.vnfs.push_back(std::move(vnf));
    }

    // capacities hold the spread factor until calibration fixes the scale
    for (int v = 0; v < n; ++v) {
        PhysNode node;
        node.id = v;
        node.operator_id = topo.op_of[static_cast<std::size_t>(v)];
        node.is_function_node = topo.function[static_cast<std::size_t>(v)] != 0;
        node.name = "n" + std::to_string(v);
        for (std::size_t r = 0; r < nr; ++r) {
            const double spread = rng.uniform(1.0 - gen.capacity_spread, 1.0 + gen.capacity_spread);
            node.unit_price.push_back(rng.uniform(gen.node_price_min, gen.node_price_max));
            node.capacity.push_back(node.is_function_node ? spread : 0.0);
        }
        net.nodes.push_back(std::move(node));
    }
    for (const auto& e : topo.edges) {
        const double spread = rng.uniform(1.0 - gen.capacity_spread, 1.0 + gen.capacity_spread);
        const double delay = rng.uniform(gen.delay_min, gen.delay_max);
        const double price = rng.uniform(gen.link_price_min, gen.link_price_max) *
                             (e.inter ? gen.inter_link_price_factor : 1.0);
        for (const auto& [s, d] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
            PhysLink l;
            l.id = static_cast<LinkId>(net.links.size());
            l.src = s;
            l.dst = d;
            l.capacity = spread;
            l.prop_delay = delay;
            l.unit_price = price;
            net.links.push_back(l);
        }
    }
    net.finalize();

    sc.trust = TrustRelation(static_cast<std::size_t>(gen.operators));
    for (int i = 1; i <= gen.operators; ++i)
        for (int j = 1; j <= gen.operators; ++j)
            if (i != j && rng.bernoulli(gen.trust_density)) sc.trust.set(i, j);
    sc.slice_types = gen.slice_types;
    sc.workload = gen.workload;
    sc.pricing = gen.pricing;

    // reference load: lambda * tau slices in the system, each with the mean
    // standalone footprint; every element is sized so that load / capacity = rho
    const Calibration cal = calibrate(sc, gen.calibration_samples, seed);
    const double in_system = gen.workload.arrival_rate * gen.workload.mean_holding;
    double max_bw = 0.0;
    for (const auto& t : gen.slice_types) max_bw = std::max(max_bw, t.bandwidth_max);
    // floors keep every element able to carry at least the largest single demand
    double link_mean = 0.0;
    for (double x : cal.link) link_mean += x / static_cast<double>(cal.link.size());
    for (auto& l : net.links) {
        const double load = gen.proportional_capacity ? cal.link[static_cast<std::size_t>(l.id)] : link_mean;
        l.capacity = std::max(l.capacity * in_system * load / gen.utilization, max_bw);
    }
    const auto fn_count = static_cast<double>(std::count(topo.function.begin(), topo.function.end(), 1));
    for (std::size_t r = 0; r < nr; ++r) {
        double max_demand = 0.0, node_mean = 0.0;
        for (const auto& v : net.vnfs) max_demand = std::max(max_demand, v.demand[r]);
        for (const auto& v : net.nodes) node_mean += cal.node[static_cast<std::size_t>(v.id)][r] / fn_count;
        for (auto& v : net.nodes)
            if (v.is_function_node) {
                const double load = gen.proportional_capacity ? cal.node[static_cast<std::size_t>(v.id)][r] : node_mean;
                v.capacity[r] = std::max(v.capacity[r] * in_system * load / gen.utilization, max_demand);
            }
    }
    net.finalize();
    return sc;
}


SliceRequest draw_request(const Scenario& scenario, const SliceTypeSpec& type, Rng& rng, SliceId id) {
    const PhysicalNetwork& net = scenario.net;
    const int n_op = static_cast<int>(net.operator_count());
    std::vector<std::vector<NodeId>> members(static_cast<std::size_t>(n_op) + 1);
    for (const auto& v : net.nodes) members[static_cast<std::size_t>(v.operator_id)].push_back(v.id);

    SliceRequest s;
    s.id = id;
    s.slice_type = type.name;
    std::vector<OperatorId> with_nodes;
    for (int o = 1; o <= n_op; ++o)
        if (!members[static_cast<std::size_t>(o)].empty()) with_nodes.push_back(o);
    const OperatorId origin = with_nodes[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(with_nodes.size()) - 1))];
    s.trust.origin = origin;

    std::vector<OperatorId> others;
    for (int o = 1; o <= n_op; ++o)
        if (o != origin) others.push_back(o);
    shuffle(others, rng);
    for (int i = 0; i < std::min<int>(type.deny_count, static_cast<int>(others.size())); ++i)
        s.trust.deny.insert(others[static_cast<std::size_t>(i)]);
    std::vector<OperatorId> extra;
    for (OperatorId o : others)
        if (!scenario.trust.trusts(origin, o) && !s.trust.deny.count(o)) extra.push_back(o);
    std::sort(extra.begin(), extra.end());
    shuffle(extra, rng);
    for (int i = 0; i < std::min<int>(type.allow_count, static_cast<int>(extra.size())); ++i)
        s.trust.allow.insert(extra[static_cast<std::size_t>(i)]);

    std::vector<OperatorId> remote;
    for (int o = 1; o <= n_op; ++o)
        if (o != origin && !members[static_cast<std::size_t>(o)].empty() && !s.trust.deny.count(o) &&
            (scenario.trust.trusts(origin, o) || s.trust.allow.count(o)))
            remote.push_back(o);

    const auto& local = members[static_cast<std::size_t>(origin)];
    const int n_services = rng.uniform_int(type.services_min, type.services_max);
    const int max_chain = std::min<int>(type.chain_max, static_cast<int>(net.vnfs.size()));
    for (int gi = 0; gi < n_services; ++gi) {
        ServiceChain g;
        g.id = gi;
        g.source = local[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(local.size()) - 1))];
        bool cross = rng.bernoulli(type.cross_operator_prob) && !remote.empty();
        if (!cross && local.size() < 2) cross = !remote.empty();
        const std::vector<NodeId>* pool = &local;
        if (cross)
            pool = &members[static_cast<std::size_t>(remote[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(remote.size()) - 1))])];
        std::vector<NodeId> sinks;
        for (NodeId v : *pool)
            if (v != g.source) sinks.push_back(v);
        if (sinks.empty())
            for (const auto& v : net.nodes)
                if (v.id != g.source) sinks.push_back(v.id);
        g.sink = sinks[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(sinks.size()) - 1))];

        const int len = rng.uniform_int(std::min(type.chain_min, max_chain), max_chain);
        std::vector<VnfId> vnfs(net.vnfs.size());
        for (std::size_t f = 0; f < vnfs.size(); ++f) vnfs[f] = static_cast<VnfId>(f);
        shuffle(vnfs, rng);
        g.vnf_sequence.assign(vnfs.begin(), vnfs.begin() + len);
        g.bandwidth = rng.uniform(type.bandwidth_min, type.bandwidth_max);
        g.max_latency = rng.uniform(type.max_latency_min, type.max_latency_max);
        s.services.push_back(std::move(g));
    }
    derive_vnf_catalog(net, s);
    return s;
}

std::vector<SliceRequest> generate_trace(const Scenario& scenario, const Workload& workload) {
    workload.validate();
    std::vector<SliceRequest> trace;
    if (workload.arrival_rate == 0.0) return trace;
    Rng arrivals(workload.seed, 1), contents(workload.seed, 2), holding(workload.seed, 3);
    const double mean_gap = 1.0 / workload.arrival_rate;
    double t = 0.0;
    for (SliceId id = 1;; ++id) {
        t += arrivals.exponential(mean_gap);
        if (t >= workload.horizon) break;
        const std::size_t ti = pick_type(scenario.slice_types, contents.uniform());
        SliceRequest s = draw_request(scenario, scenario.slice_types[ti], contents, id);
        s.arrival_time = t;
        s.holding_time = workload.deterministic_holding ? workload.mean_holding : holding.exponential(workload.mean_holding);
        trace.push_back(std::move(s));
    }
    return trace;
}

json RunConfig::to_json() const {
    return {{"label", label},
            {"engine", to_string(engine)},
            {"pricing", to_string(pricing.mode)},
            {"cap", pricing.cap},
            {"apply_to_links", pricing.apply_to_links},
            {"apply_to_nodes", pricing.apply_to_nodes},
            {"k_paths", k_paths},
            {"time_limit_ms", time_limit.count()}};
}

double TypeMetrics::mean_solve_ms() const {
    if (solve_ms.empty()) return 0.0;
    double s = 0.0;
    for (double x : solve_ms) s += x;
    return s / static_cast<double>(solve_ms.size());
}

double TypeMetrics::solve_ms_percentile(double q) const {
    if (solve_ms.empty()) return 0.0;
    std::vector<double> v = solve_ms;
    std::sort(v.begin(), v.end());
    const auto rank = static_cast<std::size_t>(std::ceil(std::clamp(q, 0.0, 1.0) * static_cast<double>(v.size())));
    return v[rank == 0 ? 0 : rank - 1];
}

RunMetrics run_trace(const Scenario& scenario, const Workload& workload, const std::vector<SliceRequest>& trace,
                     const RunConfig& config) {
    const PhysicalNetwork& net = scenario.net;
    RunMetrics m;
    m.config = config;
    m.seed = workload.seed;
    for (const auto& t : scenario.slice_types) m.by_type[t.name];

    SolveOptions opts;
    opts.embedding = scenario.options;
    opts.k_paths = config.k_paths;
    opts.time_limit = config.time_limit;

    ResidualState state(net);
    std::set<std::pair<double, SliceId>> departures;
    const double horizon = workload.horizon;
    const double interval = workload.sample_interval;
    double now = 0.0, area = 0.0;
    double next_sample = interval > 0.0 ? 0.0 : horizon + 1.0;

    auto check = [&] {
        if (config.check_conservation && !(state.consistent() && state.within_capacity(net))) m.conservation_ok = false;
    };
    auto advance = [&](double t) {
        for (; next_sample <= t && next_sample <= horizon; next_sample += interval) {
            Sample s;
            s.time = next_sample;
            s.active = state.active_count();
            double u = 0.0;
            for (const auto& l : net.links) u += state.link_used(l.id) / l.capacity;
            s.mean_link_utilization = net.links.empty() ? 0.0 : u / static_cast<double>(net.links.size());
            m.series.push_back(s);
        }
        area += static_cast<double>(state.active_count()) * (t - now);
        now = t;
    };
    auto depart = [&] {
        const auto [t, id] = *departures.begin();
        departures.erase(departures.begin());
        release(state, id);
        if (config.record_events) m.events.push_back({{"t", t}, {"kind", "departure"}, {"slice", id}});
        check();
    };

    for (const SliceRequest& req : trace) {
        while (!departures.empty() && departures.begin()->first <= req.arrival_time) {
            advance(departures.begin()->first);
            depart();
        }
        advance(req.arrival_time);

        EmbedResult res = embed_request(config.engine, net, scenario.trust, state, req, config.pricing, opts);
        TypeMetrics& tm = m.by_type[req.slice_type];
        ++tm.offered;
        ++m.total.offered;
        tm.solve_ms.push_back(res.total_ms);
        m.total.solve_ms.push_back(res.total_ms);
        if (res.accepted() && !check_embedding(net, scenario.trust, state, req, *res.embedding, scenario.options).empty()) {
            ++m.checker_failures;
            res.embedding.reset();
            res.blocked_reason = "checker";
        }
        json ev{{"t", req.arrival_time}, {"kind", "arrival"}, {"slice", req.id}, {"type", req.slice_type}};
        if (res.accepted()) {
            reserve(state, net, req, *res.embedding, scenario.options);
            departures.insert({req.arrival_time + req.holding_time, req.id});
            tm.accepted_cost += res.embedding->total_cost;
            m.total.accepted_cost += res.embedding->total_cost;
            if (!res.optimal) ++m.non_optimal_accepts;
            ev["accepted"] = true;
            ev["cost"] = res.embedding->total_cost;
        } else {
            ++tm.blocked;
            ++m.total.blocked;
            ++m.block_reasons[res.blocked_reason];
            ev["accepted"] = false;
            ev["reason"] = res.blocked_reason;
        }
        if (config.record_events) m.events.push_back(std::move(ev));
        check();
    }
    while (!departures.empty() && departures.begin()->first <= horizon) {
        advance(departures.begin()->first);
        depart();
    }
    advance(horizon);
    m.mean_concurrent = area / horizon;
    // drain: every admitted slice eventually leaves
    while (!departures.empty()) depart();
    m.final_state_clean = state.active_count() == 0 && state == ResidualState(net);
    return m;
}

RunMetrics run(const Scenario& scenario, const Workload& workload, const RunConfig& config) {
    return run_trace(scenario, workload, generate_trace(scenario, workload), config);
}

unsigned worker_threads() {
    if (const char* env = std::getenv("SLICEBED_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<RunMetrics> compare(const Scenario& scenario, const Workload& workload,
                                const std::vector<RunConfig>& configs) {
    if (configs.size() < 2) throw InputError("compare needs at least two configurations");
    const std::vector<SliceRequest> trace = generate_trace(scenario, workload);
    std::vector<RunMetrics> out(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < configs.size();) out[i] = run_trace(scenario, workload, trace, configs[i]);
    };
    const unsigned n = std::min<unsigned>(worker_threads(), static_cast<unsigned>(configs.size()));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

namespace {

using Row = std::tuple<std::string, std::string, double>;

void type_rows(std::vector<Row>& rows, const std::string& name, const TypeMetrics& t) {
    rows.emplace_back("offered", name, static_cast<double>(t.offered));
    rows.emplace_back("blocked", name, static_cast<double>(t.blocked));
    rows.emplace_back("accepted", name, static_cast<double>(t.offered - t.blocked));
    rows.emplace_back("blocking_probability", name, t.blocking_probability());
    rows.emplace_back("mean_accepted_cost", name, t.mean_accepted_cost());
}

std::vector<Row> metric_rows(const RunMetrics& m) {
    std::vector<Row> rows;
    for (const auto& [name, t] : m.by_type) type_rows(rows, name, t);
    type_rows(rows, "all", m.total);
    rows.emplace_back("mean_concurrent_slices", "all", m.mean_concurrent);
    rows.emplace_back("checker_failures", "all", static_cast<double>(m.checker_failures));
    rows.emplace_back("non_optimal_accepts", "all", static_cast<double>(m.non_optimal_accepts));
    for (const auto& [reason, n] : m.block_reasons) rows.emplace_back("blocked_reason:" + reason, "all", static_cast<double>(n));
    return rows;
}

json type_json(const TypeMetrics& t) {
    return {{"offered", t.offered},
            {"blocked", t.blocked},
            {"blocking_probability", t.blocking_probability()},
            {"mean_accepted_cost", t.mean_accepted_cost()}};
}

json timing_of(const TypeMetrics& t) {
    return {{"attempts", t.solve_ms.size()},
            {"mean_ms", t.mean_solve_ms()},
            {"p50_ms", t.solve_ms_percentile(0.5)},
            {"p95_ms", t.solve_ms_percentile(0.95)},
            {"max_ms", t.solve_ms_percentile(1.0)}};
}

json workload_json(const Workload& w) {
    return {{"lambda", w.arrival_rate},
            {"mean_holding", w.mean_holding},
            {"horizon", w.horizon},
            {"deterministic_holding", w.deterministic_holding},
            {"sample_interval", w.sample_interval}};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw InputError("cannot write " + p.string());
    f << text;
}

}  // namespace

std::string config_hash(const RunConfig& config, const Workload& workload) {
    json key = config.to_json();
    key.erase("label");
    key["workload"] = workload_json(workload);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : key.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string metrics_csv(const RunMetrics& m) {
    std::string out = "metric,slice_type,value\n";
    for (const auto& [metric, type, value] : metric_rows(m)) out += metric + "," + type + "," + fmt(value) + "\n";
    return out;
}

json summary_json(const RunMetrics& m) {
    json by_type = json::object();
    for (const auto& [name, t] : m.by_type) by_type[name] = type_json(t);
    return {{"config", m.config.to_json()},
            {"seed", m.seed},
            {"total", type_json(m.total)},
            {"by_type", by_type},
            {"block_reasons", m.block_reasons},
            {"mean_concurrent_slices", m.mean_concurrent},
            {"checker_failures", m.checker_failures},
            {"non_optimal_accepts", m.non_optimal_accepts},
            {"conservation_ok", m.conservation_ok},
            {"final_state_clean", m.final_state_clean}};
}

json timing_json(const RunMetrics& m) {
    json by_type = json::object();
    for (const auto& [name, t] : m.by_type) by_type[name] = timing_of(t);
    return {{"total", timing_of(m.total)}, {"by_type", by_type}};
}

std::filesystem::path write_run_dir(const std::filesystem::path& out, const RunMetrics& m, const Workload& workload) {
    const auto dir = out / (config_hash(m.config, workload) + "-s" + std::to_string(m.seed));
    std::filesystem::create_directories(dir);
    write_file(dir / "metrics.csv", metrics_csv(m));
    write_file(dir / "summary.json", summary_json(m).dump(2) + "\n");
    write_file(dir / "timing.json", timing_json(m).dump(2) + "\n");
    if (m.config.record_events) {
        std::string lines;
        for (const auto& ev : m.events) lines += ev.dump() + "\n";
        write_file(dir / "events.jsonl", lines);
    }
    if (!m.series.empty()) {
        std::string csv = "time,active_slices,mean_link_utilization\n";
        for (const auto& s : m.series) csv += fmt(s.time) + "," + std::to_string(s.active) + "," + fmt(s.mean_link_utilization) + "\n";
        write_file(dir / "timeseries.csv", csv);
    }
    return dir;
}

std::string comparison_csv_header() { return "seed,config,metric,slice_type,value,delta_vs_first\n"; }

std::string comparison_csv(const std::vector<RunMetrics>& runs) {
    std::string out;
    if (runs.empty()) return out;
    std::map<std::pair<std::string, std::string>, double> base;
    for (const auto& [metric, type, value] : metric_rows(runs.front())) base[{metric, type}] = value;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const std::string label = runs[i].config.label.empty() ? "config" + std::to_string(i) : runs[i].config.label;
        for (const auto& [metric, type, value] : metric_rows(runs[i])) {
            const auto it = base.find({metric, type});
            out += std::to_string(runs[i].seed) + "," + label + "," + metric + "," + type + "," + fmt(value) + "," +
                   fmt(value - (it == base.end() ? 0.0 : it->second)) + "\n";
        }
    }
    return out;
}

}  // namespace slicebed
