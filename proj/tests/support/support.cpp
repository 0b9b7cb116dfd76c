#include "support.hpp"

#include "slicebed/embed_pl.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>

namespace testkit {

std::string data_path(const std::string& name) { return std::string(SLICEBED_DATA_DIR) + "/" + name; }

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform_real(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

NetBuilder::NetBuilder(int resources, int operators) {
    for (int r = 0; r < resources; ++r) net_.resources.push_back({r, "r" + std::to_string(r)});
    for (int o = 1; o <= operators; ++o) net_.operators.push_back({o, "op" + std::to_string(o)});
}

NodeId NetBuilder::node(OperatorId op, std::vector<double> capacity, std::vector<double> price) {
    PhysNode v;
    v.id = static_cast<NodeId>(net_.nodes.size());
    v.operator_id = op;
    v.is_function_node = !capacity.empty();
    const std::size_t nr = net_.resources.size();
    v.capacity = capacity.empty() ? std::vector<double>(nr, 0.0) : std::move(capacity);
    v.unit_price = price.empty() ? std::vector<double>(nr, 0.0) : std::move(price);
    net_.nodes.push_back(std::move(v));
    return net_.nodes.back().id;
}

LinkId NetBuilder::arc(NodeId a, NodeId b, double capacity, double delay, double price) {
    PhysLink e;
    e.id = static_cast<LinkId>(net_.links.size());
    e.src = a;
    e.dst = b;
    e.capacity = capacity;
    e.prop_delay = delay;
    e.unit_price = price;
    net_.links.push_back(e);
    return e.id;
}

LinkId NetBuilder::link(NodeId a, NodeId b, double capacity, double delay, double price) {
    const LinkId id = arc(a, b, capacity, delay, price);
    arc(b, a, capacity, delay, price);
    return id;
}

VnfId NetBuilder::vnf(double delay, std::vector<double> demand, std::vector<NodeId> candidates) {
    Vnf f;
    f.id = static_cast<VnfId>(net_.vnfs.size());
    f.name = "f" + std::to_string(f.id);
    f.proc_delay = delay;
    f.demand = std::move(demand);
    f.candidate_nodes = std::move(candidates);
    net_.vnfs.push_back(std::move(f));
    return net_.vnfs.back().id;
}

PhysicalNetwork NetBuilder::build() {
    net_.finalize();
    return net_;
}

SliceRequest service_slice(const PhysicalNetwork& net, NodeId s, NodeId t, std::vector<VnfId> chain, double bandwidth,
                           double max_latency, OperatorId origin, SliceId id) {
    SliceRequest slice;
    slice.id = id;
    ServiceChain g;
    g.id = 0;
    g.source = s;
    g.sink = t;
    g.vnf_sequence = std::move(chain);
    g.bandwidth = bandwidth;
    g.max_latency = max_latency;
    slice.services.push_back(g);
    slice.trust.origin = origin;
    derive_vnf_catalog(net, slice);
    return slice;
}

std::vector<RawPath> all_simple_paths(const ExpandedNetwork& exp) {
    std::vector<RawPath> out;
    std::vector<char> on_path(static_cast<std::size_t>(exp.id_space()), 0);
    RawPath cur;
    std::function<void(int)> dfs = [&](int v) {
        if (v == exp.sink()) {
            out.push_back(cur);
            return;
        }
        for (int eid : exp.out_edges(v)) {
            const ExpandedEdge& e = exp.edges()[static_cast<std::size_t>(eid)];
            if (on_path[static_cast<std::size_t>(e.to)]) continue;
            on_path[static_cast<std::size_t>(e.to)] = 1;
            cur.edges.push_back(eid);
            cur.nodes.push_back(e.to);
            cur.cost += e.cost;
            cur.latency += e.latency;
            dfs(e.to);
            cur.cost -= e.cost;
            cur.latency -= e.latency;
            cur.nodes.pop_back();
            cur.edges.pop_back();
            on_path[static_cast<std::size_t>(e.to)] = 0;
        }
    };
    if (!exp.present(exp.source())) return out;
    on_path[static_cast<std::size_t>(exp.source())] = 1;
    cur.nodes.push_back(exp.source());
    dfs(exp.source());
    // recompute sums in path order so ties compare exactly with the code under test
    for (auto& p : out) {
        p.cost = 0.0;
        p.latency = 0.0;
        for (int eid : p.edges) {
            p.cost += exp.edges()[static_cast<std::size_t>(eid)].cost;
            p.latency += exp.edges()[static_cast<std::size_t>(eid)].latency;
        }
    }
    return out;
}

long knapsack_dp(const std::vector<int>& weights, const std::vector<int>& values, int capacity) {
    std::vector<long> best(static_cast<std::size_t>(capacity) + 1, 0);
    for (std::size_t i = 0; i < weights.size(); ++i)
        for (int c = capacity; c >= weights[i]; --c)
            best[static_cast<std::size_t>(c)] =
                std::max(best[static_cast<std::size_t>(c)], best[static_cast<std::size_t>(c - weights[i])] + values[i]);
    return best[static_cast<std::size_t>(capacity)];
}

namespace {

using Q = boost::multiprecision::cpp_rational;

Q exact(double x) {
    // test data are small integers or halves; anything else would make the oracle inexact
    const double scaled = x * 1024.0;
    if (scaled != std::floor(scaled) || std::abs(scaled) > 1e15) throw std::invalid_argument("rational_lp: non-dyadic data");
    return Q(static_cast<long long>(scaled), 1024);
}

// Solves the square system; false when singular.
bool solve_square(std::vector<std::vector<Q>> a, std::vector<Q> b, std::vector<Q>& x) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Q f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    x.resize(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return true;
}

}  // namespace

std::optional<double> rational_lp(const milp::IlpModel& model) {
    const auto& vars = model.variables();
    const std::size_t n = vars.size();
    struct Plane {
        std::vector<Q> a;
        Q b;
        milp::Relation rel;
    };
    std::vector<Plane> planes;
    std::vector<Plane> equalities;
    for (const auto& row : model.constraints()) {
        Plane p{std::vector<Q>(n, Q(0)), exact(row.rhs), row.relation};
        for (const auto& t : row.terms) p.a[static_cast<std::size_t>(t.var)] += exact(t.coef);
        (row.relation == milp::Relation::equal ? equalities : planes).push_back(std::move(p));
    }
    std::vector<Q> lo(n), hi(n), c(n);
    for (std::size_t j = 0; j < n; ++j) {
        const bool binary = vars[j].kind == milp::VarKind::binary;
        const double l = binary ? std::max(0.0, vars[j].lower) : vars[j].lower;
        const double u = binary ? std::min(1.0, vars[j].upper) : vars[j].upper;
        if (!std::isfinite(l) || !std::isfinite(u)) throw std::invalid_argument("rational_lp: unbounded variable");
        lo[j] = exact(l);
        hi[j] = exact(u);
        c[j] = exact(vars[j].objective);
        Plane pl{std::vector<Q>(n, Q(0)), lo[j], milp::Relation::greater_equal};
        pl.a[j] = 1;
        planes.push_back(pl);
        Plane pu{std::vector<Q>(n, Q(0)), hi[j], milp::Relation::less_equal};
        pu.a[j] = 1;
        planes.push_back(pu);
    }
    auto feasible = [&](const std::vector<Q>& x) {
        for (std::size_t j = 0; j < n; ++j)
            if (x[j] < lo[j] || x[j] > hi[j]) return false;
        for (const auto& rows : {&planes, &equalities})
            for (const auto& p : *rows) {
                Q lhs = 0;
                for (std::size_t j = 0; j < n; ++j) lhs += p.a[j] * x[j];
                if (p.rel == milp::Relation::less_equal && lhs > p.b) return false;
                if (p.rel == milp::Relation::greater_equal && lhs < p.b) return false;
                if (p.rel == milp::Relation::equal && lhs != p.b) return false;
            }
        return true;
    };
    if (n == 0) {
        std::vector<Q> x;
        return feasible(x) ? std::optional<double>(0.0) : std::nullopt;
    }
    // a vertex is fixed by n independent active constraints; equalities are always active
    // but may be redundant, so they join the pool and are enforced by the feasibility check
    for (const auto& e : equalities) planes.push_back(e);
    equalities.clear();
    const std::size_t need = n - equalities.size();
    std::optional<Q> best;
    std::vector<std::size_t> pick(need);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t from, std::size_t depth) {
        if (depth == need) {
            std::vector<std::vector<Q>> a;
            std::vector<Q> b;
            for (const auto& e : equalities) {
                a.push_back(e.a);
                b.push_back(e.b);
            }
            for (std::size_t i : pick) {
                a.push_back(planes[i].a);
                b.push_back(planes[i].b);
            }
            std::vector<Q> x;
            if (!solve_square(a, b, x) || !feasible(x)) return;
            Q obj = 0;
            for (std::size_t j = 0; j < n; ++j) obj += c[j] * x[j];
            if (!best || obj < *best) best = obj;
            return;
        }
        for (std::size_t i = from; i + (need - depth) <= planes.size(); ++i) {
            pick[depth] = i;
            choose(i + 1, depth + 1);
        }
    };
    choose(0, 0);
    if (!best) return std::nullopt;
    return static_cast<double>(*best);
}

namespace {

std::set<OperatorId> allowed_set(const SliceRequest& slice, const TrustRelation& trust) {
    std::set<OperatorId> a;
    for (std::size_t j = 1; j <= trust.size(); ++j)
        if (trust.trusts(slice.trust.origin, static_cast<OperatorId>(j))) a.insert(static_cast<OperatorId>(j));
    a.insert(slice.trust.allow.begin(), slice.trust.allow.end());
    for (OperatorId d : slice.trust.deny) a.erase(d);
    return a;
}

struct Option {
    std::vector<NodeId> placement;
    std::map<LinkId, double> links;
    std::map<std::pair<VnfId, NodeId>, int> instances; // (vnf, host) -> occurrences
    double link_cost = 0.0;
    double node_cost = 0.0; // per-occurrence node cost
    double cost = 0.0;
};

}  // namespace

BruteResult brute_force_embedding(const PhysicalNetwork& net, const TrustRelation& trust, const ResidualState& state,
                                  const SliceRequest& slice, const EmbeddingOptions& opts) {
    BruteResult result;
    const std::set<OperatorId> allowed = allowed_set(slice, trust);
    auto ok_node = [&](NodeId v) { return allowed.count(net.nodes[static_cast<std::size_t>(v)].operator_id) != 0; };
    const std::size_t n = net.nodes.size();

    // simple routes between every ordered pair over allowed nodes
    std::map<std::pair<NodeId, NodeId>, std::vector<std::vector<LinkId>>> routes;
    auto routes_between = [&](NodeId a, NodeId b) -> const std::vector<std::vector<LinkId>>& {
        auto key = std::make_pair(a, b);
        auto it = routes.find(key);
        if (it != routes.end()) return it->second;
        std::vector<std::vector<LinkId>> found;
        std::vector<char> seen(n, 0);
        std::vector<LinkId> cur;
        std::function<void(NodeId)> dfs = [&](NodeId v) {
            if (v == b) {
                found.push_back(cur);
                return;
            }
            for (const auto& e : net.links) {
                if (e.src != v || seen[static_cast<std::size_t>(e.dst)] || !ok_node(e.dst)) continue;
                seen[static_cast<std::size_t>(e.dst)] = 1;
                cur.push_back(e.id);
                dfs(e.dst);
                cur.pop_back();
                seen[static_cast<std::size_t>(e.dst)] = 0;
            }
        };
        if (ok_node(a) && ok_node(b)) {
            seen[static_cast<std::size_t>(a)] = 1;
            dfs(a);
        }
        return routes.emplace(key, std::move(found)).first->second;
    };

    auto vnf_price = [&](VnfId f, NodeId v) {
        double c = 0.0;
        const auto& d = net.vnfs[static_cast<std::size_t>(f)].demand;
        for (std::size_t r = 0; r < d.size(); ++r) c += net.nodes[static_cast<std::size_t>(v)].unit_price[r] * d[r];
        return c;
    };

    std::vector<std::vector<Option>> per_service;
    for (const auto& g : slice.services) {
        std::vector<Option> opts_g;
        if (!ok_node(g.source) || !ok_node(g.sink)) return result;
        const std::size_t m = g.vnf_sequence.size();
        std::vector<std::vector<NodeId>> hosts(m);
        for (std::size_t k = 0; k < m; ++k) {
            const VnfRequirement* req = slice.requirement(g.vnf_sequence[k]);
            for (NodeId v : req->candidates)
                if (net.nodes[static_cast<std::size_t>(v)].is_function_node && ok_node(v)) hosts[k].push_back(v);
        }
        std::vector<NodeId> place(m);
        std::function<void(std::size_t)> over_place = [&](std::size_t k) {
            if (k < m) {
                for (NodeId v : hosts[k]) {
                    place[k] = v;
                    over_place(k + 1);
                }
                return;
            }
            std::vector<NodeId> stops{g.source};
            stops.insert(stops.end(), place.begin(), place.end());
            stops.push_back(g.sink);
            double fixed_latency = 0.0;
            for (VnfId f : g.vnf_sequence) fixed_latency += net.vnfs[static_cast<std::size_t>(f)].proc_delay;
            std::vector<const std::vector<LinkId>*> chosen(m + 1);
            std::function<void(std::size_t, double)> over_routes = [&](std::size_t h, double latency) {
                if (latency > g.max_latency * (1.0 + 1e-12) + 1e-12) return;
                if (h <= m) {
                    for (const auto& r : routes_between(stops[h], stops[h + 1])) {
                        double lat = 0.0;
                        for (LinkId e : r) lat += net.links[static_cast<std::size_t>(e)].prop_delay;
                        chosen[h] = &r;
                        over_routes(h + 1, latency + lat);
                    }
                    return;
                }
                Option o;
                o.placement = place;
                for (const auto* r : chosen)
                    for (LinkId e : *r) {
                        o.links[e] += g.bandwidth;
                        o.link_cost += net.links[static_cast<std::size_t>(e)].unit_price * g.bandwidth;
                    }
                for (std::size_t k = 0; k < m; ++k) {
                    ++o.instances[{g.vnf_sequence[k], place[k]}];
                    o.node_cost += vnf_price(g.vnf_sequence[k], place[k]);
                }
                o.cost = o.link_cost + o.node_cost;
                opts_g.push_back(std::move(o));
            };
            over_routes(0, fixed_latency);
        };
        over_place(0);
        std::sort(opts_g.begin(), opts_g.end(), [](const Option& a, const Option& b) { return a.cost < b.cost; });
        if (opts_g.empty()) return result;
        per_service.push_back(std::move(opts_g));
    }

    // depth-first over services, pruned by the running cost bound
    const bool shared = opts.shared_vnf_per_slice;
    std::vector<double> min_rest(per_service.size() + 1, 0.0);
    if (!shared)
        for (std::size_t i = per_service.size(); i-- > 0;) min_rest[i] = min_rest[i + 1] + per_service[i].front().cost;
    double best = std::numeric_limits<double>::infinity();
    std::vector<const Option*> pick(per_service.size());
    std::function<void(std::size_t, double)> dfs = [&](std::size_t i, double partial) {
        if (!shared && partial + min_rest[i] >= best) return;
        if (i < per_service.size()) {
            for (const auto& o : per_service[i]) {
                if (!shared && partial + o.cost + min_rest[i + 1] >= best) break;
                pick[i] = &o;
                dfs(i + 1, partial + o.cost);
            }
            return;
        }
        ++result.combinations;
        std::map<LinkId, double> links;
        std::map<std::pair<VnfId, NodeId>, int> inst;
        double link_cost = 0.0;
        for (const auto* o : pick) {
            for (const auto& [e, bw] : o->links) links[e] += bw;
            for (const auto& [key, cnt] : o->instances) inst[key] += cnt;
            link_cost += o->link_cost;
        }
        std::map<std::pair<NodeId, std::size_t>, double> node_load;
        double node_cost = 0.0;
        std::map<VnfId, NodeId> host_of;
        for (const auto& [key, cnt] : inst) {
            const auto [f, v] = key;
            if (shared) {
                auto [it, fresh] = host_of.emplace(f, v);
                if (!fresh && it->second != v) return; // one host per vnf per slice
            }
            const int copies = shared ? 1 : cnt;
            const auto& d = net.vnfs[static_cast<std::size_t>(f)].demand;
            for (std::size_t r = 0; r < d.size(); ++r) node_load[{v, r}] += copies * d[r];
            node_cost += copies * vnf_price(f, v);
        }
        for (const auto& [e, bw] : links)
            if (state.link_used(e) + bw > net.links[static_cast<std::size_t>(e)].capacity + 1e-6) return;
        for (const auto& [key, amount] : node_load)
            if (amount > 0.0 && state.node_used(key.first, static_cast<ResourceId>(key.second)) + amount >
                                    net.nodes[static_cast<std::size_t>(key.first)].capacity[key.second] + 1e-6)
                return;
        best = std::min(best, link_cost + node_cost);
    };
    dfs(0, 0.0);
    if (std::isfinite(best)) {
        result.feasible = true;
        result.cost = best;
    }
    return result;
}

TinyInstance tiny_instance(std::mt19937_64& rng) {
    const int n = uniform_int(rng, 2, 4);
    const int ops = uniform_int(rng, 1, 2);
    const int nvnf = uniform_int(rng, 1, 2);
    const int nr = uniform_int(rng, 1, 2);
    NetBuilder b(nr, ops);
    bool any_function = false;
    for (int v = 0; v < n; ++v) {
        const OperatorId op = v == 0 ? 1 : uniform_int(rng, 1, ops);
        const bool function = uniform_int(rng, 0, 9) < 6 || (v == n - 1 && !any_function);
        std::vector<double> cap, price;
        if (function) {
            any_function = true;
            for (int r = 0; r < nr; ++r) {
                cap.push_back(uniform_int(rng, 2, 8));
                price.push_back(uniform_int(rng, 1, 4));
            }
        }
        b.node(op, cap, price);
    }
    for (int a = 0; a < n; ++a)
        for (int c = a + 1; c < n; ++c) {
            const int roll = uniform_int(rng, 0, 9);
            const double cap = uniform_int(rng, 2, 10), delay = uniform_int(rng, 1, 4), price = uniform_int(rng, 1, 5);
            if (roll < 5)
                b.link(a, c, cap, delay, price);
            else if (roll < 7)
                roll == 5 ? b.arc(a, c, cap, delay, price) : b.arc(c, a, cap, delay, price);
        }
    for (int f = 0; f < nvnf; ++f) {
        std::vector<double> demand;
        for (int r = 0; r < nr; ++r) demand.push_back(uniform_int(rng, 1, 4));
        b.vnf(uniform_int(rng, 0, 2), demand);
    }
    TinyInstance inst;
    inst.net = b.build();
    inst.trust = TrustRelation(static_cast<std::size_t>(ops));
    for (int i = 1; i <= ops; ++i)
        for (int j = 1; j <= ops; ++j)
            if (i != j && uniform_int(rng, 0, 9) < 6) inst.trust.set(i, j);

    SliceRequest& s = inst.slice;
    s.id = 1;
    s.trust.origin = 1;
    if (ops == 2 && uniform_int(rng, 0, 9) == 0) s.trust.allow.insert(2);
    const int services = uniform_int(rng, 0, 9) < 7 ? 1 : 2;
    for (int gi = 0; gi < services; ++gi) {
        ServiceChain g;
        g.id = gi;
        g.source = uniform_int(rng, 0, n - 1);
        do g.sink = uniform_int(rng, 0, n - 1);
        while (g.sink == g.source);
        const int len = uniform_int(rng, 0, nvnf);
        std::vector<VnfId> fs(static_cast<std::size_t>(nvnf));
        for (int f = 0; f < nvnf; ++f) fs[static_cast<std::size_t>(f)] = f;
        std::shuffle(fs.begin(), fs.end(), rng);
        g.vnf_sequence.assign(fs.begin(), fs.begin() + len);
        g.bandwidth = uniform_int(rng, 1, 4);
        g.max_latency = uniform_int(rng, 3, 15);
        s.services.push_back(std::move(g));
    }
    derive_vnf_catalog(inst.net, s);
    return inst;
}

milp::IlpModel random_ilp(std::mt19937_64& rng, int max_binaries) {
    milp::IlpModel m;
    const int n = uniform_int(rng, 1, max_binaries);
    for (int j = 0; j < n; ++j) m.add_binary(uniform_int(rng, -10, 10));
    std::vector<int> x0(static_cast<std::size_t>(n));
    for (auto& x : x0) x = uniform_int(rng, 0, 1);
    const int rows = uniform_int(rng, 0, std::max(1, n));
    for (int i = 0; i < rows; ++i) {
        std::vector<milp::Term> terms;
        double at_x0 = 0.0;
        for (int j = 0; j < n; ++j)
            if (uniform_int(rng, 0, 9) < 6) {
                const int c = uniform_int(rng, -6, 6);
                if (c == 0) continue;
                terms.push_back({j, static_cast<double>(c)});
                at_x0 += c * x0[static_cast<std::size_t>(j)];
            }
        const int kind = uniform_int(rng, 0, 9);
        // mostly satisfied by x0 so feasible models dominate; the slack draw sometimes breaks that
        const int slack = uniform_int(rng, -2, 4);
        if (kind < 5)
            m.add_constraint(terms, milp::Relation::less_equal, at_x0 + slack);
        else if (kind < 8)
            m.add_constraint(terms, milp::Relation::greater_equal, at_x0 - slack);
        else
            m.add_constraint(terms, milp::Relation::equal, at_x0 + (slack < 0 ? 1 : 0));
    }
    return m;
}

milp::IlpModel random_lp(std::mt19937_64& rng, int n, int rows) {
    milp::IlpModel m;
    std::vector<double> x0;
    for (int j = 0; j < n; ++j) {
        const double lo = uniform_int(rng, -3, 0), hi = uniform_int(rng, 1, 5);
        m.add_continuous(lo, hi, uniform_int(rng, -5, 5));
        x0.push_back(0.5 * (lo + hi));
    }
    for (int i = 0; i < rows; ++i) {
        std::vector<milp::Term> terms;
        double at = 0.0;
        for (int j = 0; j < n; ++j) {
            const int c = uniform_int(rng, -4, 4);
            if (c == 0) continue;
            terms.push_back({j, static_cast<double>(c)});
            at += c * x0[static_cast<std::size_t>(j)];
        }
        const int kind = uniform_int(rng, 0, 5);
        const double slack = uniform_int(rng, -1, 3);
        if (kind < 3)
            m.add_constraint(terms, milp::Relation::less_equal, std::floor(at) + slack);
        else if (kind < 5)
            m.add_constraint(terms, milp::Relation::greater_equal, std::ceil(at) - slack);
        else
            m.add_constraint(terms, milp::Relation::equal, std::round(at));
    }
    return m;
}

MediumInstance medium_instance(std::uint64_t seed, int warmup) {
    ScenarioGen gen;
    gen.operators = 3;
    gen.nodes_per_operator = 10;
    gen.calibration_samples = 300;
    SliceTypeSpec t;
    t.name = "medium";
    t.weight = 1.0;
    t.services_min = 1;
    t.services_max = 2;
    t.bandwidth_min = 2.0;
    t.bandwidth_max = 8.0;
    t.max_latency_min = 40.0;
    t.max_latency_max = 70.0;
    t.chain_min = 3;
    t.chain_max = 3;
    t.cross_operator_prob = 0.6;
    gen.slice_types = {t};
    gen.workload.arrival_rate = 2.0;
    gen.workload.mean_holding = 20.0;
    gen.utilization = 0.8;

    MediumInstance inst{generate_scenario(gen, seed), ResidualState(), SliceRequest()};
    inst.state = ResidualState(inst.scenario.net);
    Rng rng(seed, 11);
    SolveOptions opts;
    for (int i = 0; i < warmup; ++i) {
        const SliceRequest r = draw_request(inst.scenario, t, rng, i + 1);
        const EmbedResult res = embed_request(Engine::path_link, inst.scenario.net, inst.scenario.trust, inst.state, r,
                                              inst.scenario.pricing, opts);
        if (res.accepted()) reserve(inst.state, inst.scenario.net, r, *res.embedding);
    }
    inst.slice = draw_request(inst.scenario, t, rng, warmup + 1);
    return inst;
}

int simple_path_count(const PhysicalNetwork& net, const TrustRelation& trust, const SliceRequest& slice) {
    int most = 0;
    const auto allowed = allowed_operators(slice, trust);
    const PriceSnapshot prices = PriceSnapshot::unloaded(net);
    for (const auto& g : slice.services) {
        try {
            const ExpandedNetwork exp = build_expanded(net, g, slice, allowed, prices);
            most = std::max(most, static_cast<int>(all_simple_paths(exp).size()));
        } catch (const UntrustableRequest&) {
        }
    }
    return most;
}

}  // namespace testkit
