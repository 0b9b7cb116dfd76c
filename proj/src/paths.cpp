#include "slicebed/paths.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace slicebed {

namespace {

double edge_weight(const ExpandedEdge& e, PathWeight w) { return w == PathWeight::cost ? e.cost : e.latency; }

double path_weight(const ExpandedNetwork& exp, const std::vector<int>& edges, PathWeight w) {
    double total = 0.0;
    for (int id : edges) total += edge_weight(exp.edges()[static_cast<std::size_t>(id)], w);
    return total;
}

ExpandedPath make_path(const ExpandedNetwork& exp, int from, std::vector<int> edges, PathWeight w) {
    ExpandedPath p;
    p.nodes.push_back(from);
    for (int id : edges) p.nodes.push_back(exp.edges()[static_cast<std::size_t>(id)].to);
    p.weight = path_weight(exp, edges, w);
    p.edges = std::move(edges);
    return p;
}

// Dijkstra from `from` to `to` avoiding blocked nodes and edges.
std::optional<std::vector<int>> dijkstra(const ExpandedNetwork& exp, int from, int to, PathWeight w,
                                         const std::vector<char>& blocked_node, const std::vector<char>& blocked_edge) {
    const auto n = static_cast<std::size_t>(exp.id_space());
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<int> pred(n, -1);
    std::vector<char> done(n, 0);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(from)] = 0.0;
    heap.emplace(0.0, from);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (done[static_cast<std::size_t>(u)]) continue;
        done[static_cast<std::size_t>(u)] = 1;
        if (u == to) break;
        for (int id : exp.out_edges(u)) {
            if (blocked_edge[static_cast<std::size_t>(id)]) continue;
            const ExpandedEdge& e = exp.edges()[static_cast<std::size_t>(id)];
            const auto v = static_cast<std::size_t>(e.to);
            if (blocked_node[v] || done[v]) continue;
            const double nd = d + edge_weight(e, w);
            if (nd < dist[v]) {
                dist[v] = nd;
                pred[v] = id;
                heap.emplace(nd, e.to);
            }
        }
    }
    if (!done[static_cast<std::size_t>(to)]) return std::nullopt;
    std::vector<int> edges;
    for (int at = to; at != from;) {
        const int id = pred[static_cast<std::size_t>(at)];
        edges.push_back(id);
        at = exp.edges()[static_cast<std::size_t>(id)].from;
    }
    std::reverse(edges.begin(), edges.end());
    return edges;
}

struct Ranked {
    double weight;
    std::vector<int> nodes;
    std::vector<int> edges;

    bool operator<(const Ranked& o) const {
        if (weight != o.weight) return weight < o.weight;
        if (nodes != o.nodes) return nodes < o.nodes;
        return edges < o.edges;
    }
};

}  // namespace

std::optional<ExpandedPath> shortest_path(const ExpandedNetwork& exp, PathWeight weight) {
    std::vector<char> blocked_node(static_cast<std::size_t>(exp.id_space()), 0);
    std::vector<char> blocked_edge(exp.edges().size(), 0);
    for (int id = 0; id < exp.id_space(); ++id)
        if (!exp.present(id)) blocked_node[static_cast<std::size_t>(id)] = 1;
    if (!exp.present(exp.source()) || !exp.present(exp.sink())) return std::nullopt;
    auto edges = dijkstra(exp, exp.source(), exp.sink(), weight, blocked_node, blocked_edge);
    if (!edges) return std::nullopt;
    return make_path(exp, exp.source(), std::move(*edges), weight);
}

std::vector<ExpandedPath> k_shortest_paths(const ExpandedNetwork& exp, int k, PathWeight weight) {
    if (k < 1) throw std::invalid_argument("k_shortest_paths: k must be >= 1");
    std::vector<ExpandedPath> found;
    auto first = shortest_path(exp, weight);
    if (!first) return found;
    found.push_back(std::move(*first));

    std::set<Ranked> pending;
    std::set<std::vector<int>> known{found.front().edges};
    std::vector<char> base_blocked(static_cast<std::size_t>(exp.id_space()), 0);
    for (int id = 0; id < exp.id_space(); ++id)
        if (!exp.present(id)) base_blocked[static_cast<std::size_t>(id)] = 1;

    while (static_cast<int>(found.size()) < k) {
        const ExpandedPath prev = found.back();
        for (std::size_t i = 0; i + 1 < prev.nodes.size(); ++i) {
            const int spur = prev.nodes[i];
            const std::vector<int> root(prev.edges.begin(), prev.edges.begin() + static_cast<long>(i));

            std::vector<char> blocked_edge(exp.edges().size(), 0);
            for (const auto& p : found)
                if (p.edges.size() > i && std::equal(root.begin(), root.end(), p.edges.begin()))
                    blocked_edge[static_cast<std::size_t>(p.edges[i])] = 1;
            std::vector<char> blocked_node = base_blocked;
            for (std::size_t r = 0; r < i; ++r) blocked_node[static_cast<std::size_t>(prev.nodes[r])] = 1;

            auto spur_edges = dijkstra(exp, spur, exp.sink(), weight, blocked_node, blocked_edge);
            if (!spur_edges) continue;
            std::vector<int> total = root;
            total.insert(total.end(), spur_edges->begin(), spur_edges->end());
            if (!known.insert(total).second) continue;
            ExpandedPath p = make_path(exp, exp.source(), std::move(total), weight);
            pending.insert(Ranked{p.weight, std::move(p.nodes), std::move(p.edges)});
        }
        if (pending.empty()) break;
        auto best = pending.begin();
        ExpandedPath next;
        next.weight = best->weight;
        next.nodes = best->nodes;
        next.edges = best->edges;
        pending.erase(best);
        found.push_back(std::move(next));
    }
    return found;
}

std::size_t CandidateSet::total() const {
    std::size_t n = 0;
    for (const auto& list : per_service) n += list.size();
    return n;
}

bool CandidateSet::any_empty() const {
    return std::any_of(per_service.begin(), per_service.end(), [](const auto& l) { return l.empty(); });
}

CandidateSet generate_candidates(const PhysicalNetwork& net, const TrustRelation& trust, const ResidualState& state,
                                 const SliceRequest& slice, const PriceSnapshot& prices,
                                 const CandidateOptions& options) {
    const std::set<OperatorId> allowed = allowed_operators(slice, trust);
    CandidateSet out;
    out.per_service.resize(slice.services.size());
    out.empty_reason.resize(slice.services.size());

    ExpandOptions expand_opts;
    if (options.prune_saturated) expand_opts.prune_by = &state;

    for (std::size_t gi = 0; gi < slice.services.size(); ++gi) {
        const ServiceChain& g = slice.services[gi];
        ExpandedNetwork exp;
        try {
            exp = build_expanded(net, g, slice, allowed, prices, expand_opts);
        } catch (const UntrustableRequest&) {
            out.empty_reason[gi] = "unreachable endpoints";
            continue;
        }
        const auto paths = k_shortest_paths(exp, std::max(1, options.k_paths), PathWeight::cost);
        if (paths.empty()) {
            out.empty_reason[gi] = "no path";
            continue;
        }

        bool latency_pruned = false;
        bool capacity_pruned = false;
        for (const auto& p : paths) {
            MappedPath mp = map_back(exp, p.edges);
            if (mp.latency > g.max_latency * (1.0 + 1e-12) + 1e-12) {
                latency_pruned = true;
                continue;
            }
            CandidatePath c;
            c.service = static_cast<int>(gi);
            c.expanded_nodes = p.nodes;
            c.placement = std::move(mp.placement);
            c.hop_routes = std::move(mp.hop_routes);
            c.latency = mp.latency;

            std::map<LinkId, double> links;
            for (const auto& hop : c.hop_routes)
                for (LinkId e : hop) {
                    links[e] += g.bandwidth;
                    c.link_cost += prices.link_cost(e, g.bandwidth);
                }
            std::map<std::pair<NodeId, ResourceId>, double> nodes;
            std::set<std::pair<VnfId, NodeId>> instances;
            for (std::size_t k = 0; k < c.placement.size(); ++k) {
                const VnfId f = g.vnf_sequence[k];
                const NodeId v = c.placement[k];
                if (options.embedding.shared_vnf_per_slice && !instances.insert({f, v}).second) continue;
                c.node_cost += prices.vnf_cost(net, v, f);
                const auto& demand = net.vnfs[static_cast<std::size_t>(f)].demand;
                for (std::size_t r = 0; r < demand.size(); ++r)
                    if (demand[r] != 0.0) nodes[{v, static_cast<ResourceId>(r)}] += demand[r];
            }
            c.cost = c.link_cost + c.node_cost;

            bool fits = true;
            for (const auto& [e, load] : links)
                if (state.link_used(e) + load > net.links[static_cast<std::size_t>(e)].capacity + 1e-6) fits = false;
            for (const auto& [key, load] : nodes)
                if (state.node_used(key.first, key.second) + load >
                    net.nodes[static_cast<std::size_t>(key.first)].capacity[static_cast<std::size_t>(key.second)] + 1e-6)
                    fits = false;
            if (!fits) {
                capacity_pruned = true;
                continue;
            }
            c.link_load.assign(links.begin(), links.end());
            for (const auto& [key, load] : nodes) c.node_load.emplace_back(key.first, key.second, load);
            c.index = static_cast<int>(out.per_service[gi].size());
            out.per_service[gi].push_back(std::move(c));
        }
        if (out.per_service[gi].empty())
            out.empty_reason[gi] = latency_pruned ? "latency" : (capacity_pruned ? "capacity" : "no path");
    }
    return out;
}

}  // namespace slicebed
