#include "slicebed/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace slicebed {

using nlohmann::json;

namespace {

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return fallback;
    return it->get<T>();
}

const json& require(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(std::string("missing key '") + key + "'");
    return *it;
}

double finite(const json& value, const char* what) {
    const double x = value.get<double>();
    if (!std::isfinite(x)) throw InputError(std::string(what) + " must be finite");
    return x;
}

std::vector<double> vector_or_zero(const json& obj, const char* key, std::size_t n) {
    auto it = obj.find(key);
    if (it == obj.end()) return std::vector<double>(n, 0.0);
    return it->get<std::vector<double>>();
}

SliceTypeSpec parse_slice_type(const json& j) {
    SliceTypeSpec t;
    t.name = require(j, "name").get<std::string>();
    t.weight = get_or(j, "weight", t.weight);
    t.services_min = get_or(j, "services_min", t.services_min);
    t.services_max = get_or(j, "services_max", t.services_max);
    t.bandwidth_min = get_or(j, "bandwidth_min", t.bandwidth_min);
    t.bandwidth_max = get_or(j, "bandwidth_max", t.bandwidth_max);
    t.max_latency_min = get_or(j, "max_latency_min", t.max_latency_min);
    t.max_latency_max = get_or(j, "max_latency_max", t.max_latency_max);
    t.chain_min = get_or(j, "chain_min", t.chain_min);
    t.chain_max = get_or(j, "chain_max", t.chain_max);
    t.deny_count = get_or(j, "deny_count", t.deny_count);
    t.allow_count = get_or(j, "allow_count", t.allow_count);
    t.cross_operator_prob = get_or(j, "cross_operator_prob", t.cross_operator_prob);
    if (t.weight < 0 || t.services_min < 1 || t.services_max < t.services_min || t.bandwidth_min <= 0 ||
        t.bandwidth_max < t.bandwidth_min || t.max_latency_min <= 0 || t.max_latency_max < t.max_latency_min ||
        t.chain_min < 0 || t.chain_max < t.chain_min || t.deny_count < 0 || t.allow_count < 0 ||
        t.cross_operator_prob < 0 || t.cross_operator_prob > 1)
        throw InputError("slice type '" + t.name + "': inconsistent parameters");
    return t;
}

json slice_type_to_json(const SliceTypeSpec& t) {
    return {{"name", t.name},
            {"weight", t.weight},
            {"services_min", t.services_min},
            {"services_max", t.services_max},
            {"bandwidth_min", t.bandwidth_min},
            {"bandwidth_max", t.bandwidth_max},
            {"max_latency_min", t.max_latency_min},
            {"max_latency_max", t.max_latency_max},
            {"chain_min", t.chain_min},
            {"chain_max", t.chain_max},
            {"deny_count", t.deny_count},
            {"allow_count", t.allow_count},
            {"cross_operator_prob", t.cross_operator_prob}};
}

Scenario parse_scenario_impl(const json& doc) {
    if (!doc.is_object()) throw InputError("scenario must be a JSON object");
    Scenario sc;
    PhysicalNetwork& net = sc.net;

    for (const auto& r : require(doc, "resources"))
        net.resources.push_back({r.at("id").get<int>(), r.at("name").get<std::string>()});
    for (const auto& o : require(doc, "operators"))
        net.operators.push_back({o.at("id").get<int>(), get_or<std::string>(o, "name", "op" + std::to_string(o.at("id").get<int>()))});
    const std::size_t nr = net.resources.size();

    for (const auto& n : require(doc, "nodes")) {
        PhysNode v;
        v.id = n.at("id").get<int>();
        v.operator_id = n.at("operator_id").get<int>();
        v.is_function_node = get_or(n, "is_function_node", false);
        v.capacity = vector_or_zero(n, "capacity", nr);
        v.unit_price = vector_or_zero(n, "unit_price", nr);
        v.name = get_or<std::string>(n, "name", "");
        net.nodes.push_back(std::move(v));
    }

    for (const auto& l : require(doc, "links")) {
        const auto ends = l.at("endpoints").get<std::vector<int>>();
        if (ends.size() != 2) throw InputError("link endpoints must be a pair");
        PhysLink e;
        e.src = ends[0];
        e.dst = ends[1];
        e.capacity = finite(l.at("capacity"), "capacity");
        e.prop_delay = finite(l.at("prop_delay"), "prop_delay");
        e.unit_price = finite(l.at("unit_price"), "unit_price");
        e.id = static_cast<int>(net.links.size());
        net.links.push_back(e);
        if (!get_or(l, "directed", false)) {
            std::swap(e.src, e.dst);
            e.id = static_cast<int>(net.links.size());
            net.links.push_back(e);
        }
    }

    for (const auto& f : require(doc, "vnfs")) {
        Vnf vnf;
        vnf.id = f.at("id").get<int>();
        vnf.name = get_or<std::string>(f, "name", "f" + std::to_string(vnf.id));
        vnf.proc_delay = finite(f.at("proc_delay"), "proc_delay");
        vnf.demand = f.at("demand").get<std::vector<double>>();
        vnf.candidate_nodes = get_or(f, "candidate_nodes", std::vector<int>{});
        net.vnfs.push_back(std::move(vnf));
    }
    net.finalize();

    sc.trust = TrustRelation(net.operators.size());
    if (auto it = doc.find("trust"); it != doc.end()) {
        for (const auto& [key, targets] : it->items()) {
            int from = 0;
            try {
                from = std::stoi(key);
            } catch (const std::exception&) {
                throw InputError("trust keys must be operator ids, got '" + key + "'");
            }
            for (int to : targets.get<std::vector<int>>()) sc.trust.set(from, to);
        }
    }

    if (auto it = doc.find("slice_types"); it != doc.end()) {
        for (const auto& t : *it) sc.slice_types.push_back(parse_slice_type(t));
    }
    if (sc.slice_types.empty()) sc.slice_types = default_slice_types();
    double total_weight = 0.0;
    for (const auto& t : sc.slice_types) total_weight += t.weight;
    if (std::abs(total_weight - 1.0) > 1e-9) throw InputError("slice type weights must sum to 1");

    if (auto it = doc.find("workload"); it != doc.end()) {
        sc.workload.arrival_rate = get_or(*it, "lambda", sc.workload.arrival_rate);
        sc.workload.mean_holding = get_or(*it, "mean_holding", sc.workload.mean_holding);
        sc.workload.horizon = get_or(*it, "horizon", sc.workload.horizon);
        sc.workload.seed = get_or<std::uint64_t>(*it, "seed", sc.workload.seed);
        sc.workload.deterministic_holding = get_or(*it, "deterministic_holding", false);
        sc.workload.sample_interval = get_or(*it, "sample_interval", 0.0);
    }
    sc.workload.validate();

    if (auto it = doc.find("pricing"); it != doc.end()) {
        sc.pricing.mode = parse_pricing_mode(get_or<std::string>(*it, "mode", "static"));
        sc.pricing.cap = get_or(*it, "cap", sc.pricing.cap);
        const auto apply = get_or<std::string>(*it, "apply_to", "both");
        if (apply != "both" && apply != "links" && apply != "nodes")
            throw InputError("pricing.apply_to must be both, links or nodes");
        sc.pricing.apply_to_links = apply != "nodes";
        sc.pricing.apply_to_nodes = apply != "links";
    }
    sc.pricing.validate();
    sc.options.shared_vnf_per_slice = get_or(doc, "shared_vnf_per_slice", false);
    return sc;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("parse error in " + path.string() + ": " + e.what());
    }
}

Scenario parse_scenario(const json& doc) {
    try {
        return parse_scenario_impl(doc);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed scenario: ") + e.what());
    }
}

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(read_json_file(path)); }

json scenario_to_json(const Scenario& sc) {
    const PhysicalNetwork& net = sc.net;
    json doc;
    doc["_units"] = "bandwidth and resource amounts in abstract units; delays in time units; prices per unit";
    doc["resources"] = json::array();
    for (const auto& r : net.resources) doc["resources"].push_back({{"id", r.id}, {"name", r.name}});
    doc["operators"] = json::array();
    for (const auto& o : net.operators) doc["operators"].push_back({{"id", o.id}, {"name", o.name}});
    doc["nodes"] = json::array();
    for (const auto& v : net.nodes) {
        json n = {{"id", v.id}, {"operator_id", v.operator_id}, {"is_function_node", v.is_function_node},
                  {"capacity", v.capacity}, {"unit_price", v.unit_price}};
        if (!v.name.empty()) n["name"] = v.name;
        doc["nodes"].push_back(std::move(n));
    }
    doc["links"] = json::array();
    for (const auto& e : net.links)
        doc["links"].push_back({{"endpoints", {e.src, e.dst}},
                                {"capacity", e.capacity},
                                {"prop_delay", e.prop_delay},
                                {"unit_price", e.unit_price},
                                {"directed", true}});
    json trust = json::object();
    for (std::size_t i = 1; i <= sc.trust.size(); ++i) {
        std::vector<int> targets;
        for (std::size_t j = 1; j <= sc.trust.size(); ++j)
            if (i != j && sc.trust.trusts(static_cast<int>(i), static_cast<int>(j))) targets.push_back(static_cast<int>(j));
        trust[std::to_string(i)] = targets;
    }
    doc["trust"] = trust;
    doc["vnfs"] = json::array();
    for (const auto& f : net.vnfs) {
        json j = {{"id", f.id}, {"name", f.name}, {"proc_delay", f.proc_delay}, {"demand", f.demand}};
        if (!f.candidate_nodes.empty()) j["candidate_nodes"] = f.candidate_nodes;
        doc["vnfs"].push_back(std::move(j));
    }
    doc["slice_types"] = json::array();
    for (const auto& t : sc.slice_types) doc["slice_types"].push_back(slice_type_to_json(t));
    doc["workload"] = {{"lambda", sc.workload.arrival_rate},
                       {"mean_holding", sc.workload.mean_holding},
                       {"horizon", sc.workload.horizon},
                       {"seed", sc.workload.seed},
                       {"deterministic_holding", sc.workload.deterministic_holding},
                       {"sample_interval", sc.workload.sample_interval}};
    std::string apply = "both";
    if (!sc.pricing.apply_to_nodes) apply = "links";
    if (!sc.pricing.apply_to_links) apply = "nodes";
    doc["pricing"] = {{"mode", to_string(sc.pricing.mode)}, {"cap", sc.pricing.cap}, {"apply_to", apply}};
    doc["shared_vnf_per_slice"] = sc.options.shared_vnf_per_slice;
    return doc;
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << scenario_to_json(scenario).dump(2) << '\n';
}

SliceRequest parse_request(const PhysicalNetwork& net, const json& doc) {
    try {
        SliceRequest s;
        s.id = get_or(doc, "id", 0);
        s.slice_type = get_or<std::string>(doc, "slice_type", "");
        for (const auto& g : require(doc, "services")) {
            ServiceChain c;
            c.id = get_or(g, "id", static_cast<int>(s.services.size()));
            c.source = g.at("source").get<int>();
            c.sink = g.at("sink").get<int>();
            c.vnf_sequence = get_or(g, "vnf_sequence", std::vector<int>{});
            c.bandwidth = finite(g.at("bandwidth"), "bandwidth");
            c.max_latency = finite(g.at("max_latency"), "max_latency");
            s.services.push_back(std::move(c));
        }
        if (auto it = doc.find("vnf_catalog"); it != doc.end()) {
            for (const auto& f : *it)
                s.vnf_catalog.push_back({f.at("vnf").get<int>(), finite(f.at("total_bandwidth"), "total_bandwidth"),
                                         f.at("candidates").get<std::vector<int>>()});
        } else {
            derive_vnf_catalog(net, s);
        }
        if (auto it = doc.find("trust_spec"); it != doc.end()) {
            s.trust.origin = it->at("origin").get<int>();
            auto allow = get_or(*it, "allow", std::vector<int>{});
            auto deny = get_or(*it, "deny", std::vector<int>{});
            s.trust.allow = {allow.begin(), allow.end()};
            s.trust.deny = {deny.begin(), deny.end()};
        } else if (!s.services.empty() && s.services.front().source >= 0 &&
                   s.services.front().source < static_cast<int>(net.nodes.size())) {
            s.trust.origin = net.nodes[static_cast<std::size_t>(s.services.front().source)].operator_id;
        }
        s.arrival_time = get_or(doc, "arrival_time", 0.0);
        s.holding_time = get_or(doc, "holding_time", 0.0);
        validate_slice(net, s);
        return s;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed request: ") + e.what());
    }
}

SliceRequest load_request(const PhysicalNetwork& net, const std::filesystem::path& path) {
    return parse_request(net, read_json_file(path));
}

json request_to_json(const SliceRequest& s) {
    json services = json::array();
    for (const auto& g : s.services)
        services.push_back({{"id", g.id},
                            {"source", g.source},
                            {"sink", g.sink},
                            {"vnf_sequence", g.vnf_sequence},
                            {"bandwidth", g.bandwidth},
                            {"max_latency", g.max_latency}});
    json catalog = json::array();
    for (const auto& f : s.vnf_catalog)
        catalog.push_back({{"vnf", f.vnf}, {"total_bandwidth", f.total_bandwidth}, {"candidates", f.candidates}});
    return {{"id", s.id},
            {"slice_type", s.slice_type},
            {"services", services},
            {"vnf_catalog", catalog},
            {"trust_spec",
             {{"origin", s.trust.origin},
              {"allow", std::vector<int>(s.trust.allow.begin(), s.trust.allow.end())},
              {"deny", std::vector<int>(s.trust.deny.begin(), s.trust.deny.end())}}},
            {"arrival_time", s.arrival_time},
            {"holding_time", s.holding_time}};
}

json embedding_to_json(const Embedding& emb) {
    json services = json::array();
    for (const auto& se : emb.services)
        services.push_back({{"service_id", se.service_id},
                            {"placement", se.placement},
                            {"hop_routes", se.hop_routes},
                            {"cost", se.cost},
                            {"latency", se.latency}});
    return {{"slice_id", emb.slice_id}, {"total_cost", emb.total_cost}, {"services", services}};
}

Embedding embedding_from_json(const json& doc) {
    try {
        Embedding emb;
        emb.slice_id = doc.at("slice_id").get<int>();
        emb.total_cost = get_or(doc, "total_cost", 0.0);
        for (const auto& s : doc.at("services")) {
            ServiceEmbedding se;
            se.service_id = s.at("service_id").get<int>();
            se.placement = s.at("placement").get<std::vector<int>>();
            se.hop_routes = s.at("hop_routes").get<std::vector<std::vector<int>>>();
            se.cost = get_or(s, "cost", 0.0);
            se.latency = get_or(s, "latency", 0.0);
            emb.services.push_back(std::move(se));
        }
        return emb;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed embedding: ") + e.what());
    }
}

}  // namespace slicebed
