#include <doctest.h>

#include "support.hpp"

#include "slicebed/scenario.hpp"

#include <nlohmann/json.hpp>

using namespace testkit;
using nlohmann::json;

namespace {

json two_node_doc() {
    return json::parse(R"({
      "resources": [{"id": 0, "name": "cpu"}],
      "operators": [{"id": 1, "name": "a"}],
      "nodes": [{"id": 0, "operator_id": 1}, {"id": 1, "operator_id": 1}],
      "links": [{"endpoints": [0, 1], "capacity": 5, "prop_delay": 1, "unit_price": 1}],
      "vnfs": []
    })");
}

// 0 (function, op1) --1-- 1 (op1); one VNF with delay 2
struct LineCase {
    PhysicalNetwork net;
    SliceRequest slice;
    Embedding emb;
};

LineCase line_case(double max_latency) {
    NetBuilder b(1, 1);
    b.node(1, {10}, {1});
    b.node(1);
    b.link(0, 1, 10, 1, 1);
    b.vnf(2, {1});
    LineCase c;
    c.net = b.build();
    c.slice = service_slice(c.net, 0, 1, {0}, 1, max_latency);
    ServiceEmbedding se;
    se.placement = {0};
    se.hop_routes = {{}, {0}};
    c.emb.slice_id = c.slice.id;
    c.emb.services = {se};
    return c;
}

bool has_kind(const std::vector<Violation>& v, const std::string& kind) {
    for (const auto& x : v)
        if (x.kind == kind) return true;
    return false;
}

}  // namespace

TEST_CASE("load: undirected link becomes two directed links") {
    const Scenario sc = parse_scenario(two_node_doc());
    CHECK(sc.net.nodes.size() == 2);
    REQUIRE(sc.net.links.size() == 2);
    CHECK(sc.net.links[0].src == 0);
    CHECK(sc.net.links[0].dst == 1);
    CHECK(sc.net.links[1].src == 1);
    CHECK(sc.net.links[1].dst == 0);
}

TEST_CASE("load: negative link capacity is rejected by name") {
    json doc = two_node_doc();
    doc["links"][0]["capacity"] = -1;
    try {
        parse_scenario(doc);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("capacity > 0") != std::string::npos);
    }
}

TEST_CASE("load: malformed input is an InputError") {
    json doc = two_node_doc();
    doc.erase("nodes");
    CHECK_THROWS_AS(parse_scenario(doc), InputError);
    doc = two_node_doc();
    doc["links"][0]["endpoints"] = json::array({0, 0});
    CHECK_THROWS_AS(parse_scenario(doc), InputError);
    doc = two_node_doc();
    doc["nodes"][1]["capacity"] = json::array({3});
    CHECK_THROWS_AS(parse_scenario(doc), InputError);
}

TEST_CASE("load: demo scenario matches hand counts") {
    const Scenario sc = load_scenario(data_path("demo_3op.json"));
    CHECK(sc.net.operators.size() == 3);
    CHECK(sc.net.nodes.size() == 9);
    CHECK(sc.net.links.size() == 18); // 9 undirected links in the file
    int function_nodes = 0;
    for (const auto& v : sc.net.nodes) function_nodes += v.is_function_node;
    CHECK(function_nodes == 3);
    CHECK(sc.net.vnfs.size() == 3);
    CHECK(sc.slice_types.size() == 3);
    CHECK(sc.trust.trusts(1, 2));
    CHECK_FALSE(sc.trust.trusts(1, 3));
    CHECK(sc.trust.trusts(3, 3));
}

TEST_CASE("load: scenario json round trip") {
    const Scenario sc = load_scenario(data_path("demo_3op.json"));
    const json once = scenario_to_json(sc);
    const json twice = scenario_to_json(parse_scenario(once));
    CHECK(once.dump() == twice.dump());
}

TEST_CASE("allowed_operators examples") {
    SliceRequest s;
    s.trust.origin = 1;
    CHECK(allowed_operators(s, TrustRelation::identity(3)) == std::set<OperatorId>{1});

    TrustRelation t(3);
    t.set(1, 2);
    t.set(1, 3);
    s.trust.deny = {3};
    CHECK(allowed_operators(s, t) == std::set<OperatorId>{1, 2});

    s.trust.deny = {2, 4};
    CHECK(allowed_operators(s, TrustRelation::full(4)) == std::set<OperatorId>{1, 3});

    s.trust.deny = {1};
    CHECK_THROWS_AS(allowed_operators(s, TrustRelation::full(4)), UntrustableRequest);
}

TEST_CASE("allowed_operators is monotone in allow and deny lists") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = uniform_int(rng, 1, 6);
        TrustRelation t(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (uniform_int(rng, 0, 2) == 0) t.set(i, j);
        SliceRequest s;
        s.trust.origin = uniform_int(rng, 1, n);
        for (int j = 1; j <= n; ++j) {
            const int roll = uniform_int(rng, 0, 3);
            if (roll == 0) s.trust.allow.insert(j);
            if (roll == 1 && j != s.trust.origin) s.trust.deny.insert(j);
        }
        const auto base = allowed_operators(s, t);
        CHECK(base.count(s.trust.origin) == 1);

        const int extra = uniform_int(rng, 1, n);
        SliceRequest more_allow = s;
        more_allow.trust.allow.insert(extra);
        const auto grown = allowed_operators(more_allow, t);
        CHECK(std::includes(grown.begin(), grown.end(), base.begin(), base.end()));

        SliceRequest more_deny = s;
        more_deny.trust.deny.insert(extra);
        if (extra == s.trust.origin) {
            CHECK_THROWS_AS(allowed_operators(more_deny, t), UntrustableRequest);
        } else {
            const auto shrunk = allowed_operators(more_deny, t);
            CHECK(std::includes(base.begin(), base.end(), shrunk.begin(), shrunk.end()));
        }
    }
}

TEST_CASE("reserve and release examples") {
    NetBuilder b(1, 1);
    b.node(1);
    b.node(1);
    b.node(1);
    const LinkId e = b.link(0, 1, 20, 1, 1);
    b.link(1, 2, 20, 1, 1);
    const PhysicalNetwork net = b.build();
    const ResidualState empty(net);

    SliceRequest one = service_slice(net, 0, 1, {}, 5, 10);
    Embedding emb;
    emb.slice_id = one.id;
    emb.services = {ServiceEmbedding{0, {}, {{e}}, 0, 0}};

    ResidualState st(net);
    reserve(st, net, one, emb);
    CHECK(st.link_used(e) == 5.0);
    CHECK(st.is_active(one.id));
    release(st, one.id);
    CHECK(st == empty);
    CHECK(st.active_count() == 0);
    CHECK_THROWS(release(st, 42));

    // two services of one slice on the same link
    SliceRequest two = service_slice(net, 0, 1, {}, 3, 10, 1, 7);
    two.services.push_back(two.services.front());
    two.services.back().id = 1;
    derive_vnf_catalog(net, two);
    Embedding emb2;
    emb2.slice_id = 7;
    emb2.services = {ServiceEmbedding{0, {}, {{e}}, 0, 0}, ServiceEmbedding{1, {}, {{e}}, 0, 0}};
    reserve(st, net, two, emb2);
    CHECK(st.link_used(e) == 6.0);

    // releasing one of two active slices keeps the other's footprint
    reserve(st, net, one, emb);
    CHECK(st.link_used(e) == 11.0);
    release(st, one.id);
    CHECK(st.link_used(e) == 6.0);
    CHECK(st.is_active(7));
    CHECK(st.consistent());
}

TEST_CASE("reserve counts one instance per service occurrence unless shared") {
    NetBuilder b(1, 1);
    b.node(1, {10}, {1});
    b.node(1);
    b.link(0, 1, 20, 1, 1);
    b.vnf(0, {3});
    const PhysicalNetwork net = b.build();
    SliceRequest s = service_slice(net, 0, 1, {0}, 1, 10);
    s.services.push_back(s.services.front());
    s.services.back().id = 1;
    derive_vnf_catalog(net, s);
    Embedding emb;
    emb.slice_id = s.id;
    ServiceEmbedding se{0, {0}, {{}, {0}}, 0, 0};
    emb.services = {se, se};
    emb.services[1].service_id = 1;

    ResidualState per(net), shared(net);
    reserve(per, net, s, emb);
    reserve(shared, net, s, emb, EmbeddingOptions{true});
    CHECK(per.node_used(0, 0) == 6.0);
    CHECK(shared.node_used(0, 0) == 3.0);
    CHECK(per.link_used(0) == 2.0);
}

TEST_CASE("property: reserve then release is the identity, bit for bit") {
    NetBuilder b(2, 1);
    for (int v = 0; v < 6; ++v) b.node(1, {100, 100}, {1, 1});
    for (int v = 0; v < 5; ++v) b.link(v, v + 1, 1000, 1, 1);
    const PhysicalNetwork net = b.build();
    std::mt19937_64 rng(5);
    ResidualState st(net);
    std::vector<SliceId> live;
    SliceId next = 1;
    for (int step = 0; step < 2000; ++step) {
        const bool add = live.empty() || (live.size() < 12 && uniform_int(rng, 0, 1) == 0);
        if (add) {
            Footprint fp;
            for (int k = uniform_int(rng, 1, 4); k > 0; --k)
                fp.link_bandwidth[uniform_int(rng, 0, 9)] += uniform_real(rng, 0.01, 3.0);
            for (int k = uniform_int(rng, 0, 3); k > 0; --k)
                fp.node_resources[{uniform_int(rng, 0, 5), uniform_int(rng, 0, 1)}] += uniform_real(rng, 0.01, 2.0);
            const ResidualState before = st;
            st.reserve(next, fp);
            ResidualState probe = st;
            probe.release(next);
            CHECK(probe == before);
            live.push_back(next++);
        } else {
            const std::size_t idx = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(live.size()) - 1));
            st.release(live[idx]);
            live.erase(live.begin() + static_cast<long>(idx));
        }
        REQUIRE(st.consistent());
    }
    for (SliceId s : live) st.release(s);
    CHECK(st == ResidualState(net));
}

TEST_CASE("check_embedding: latency boundary") {
    LineCase ok = line_case(3.0);
    const ResidualState st(ok.net);
    CHECK(check_embedding(ok.net, TrustRelation::identity(1), st, ok.slice, ok.emb).empty());

    LineCase tight = line_case(2.9);
    const auto v = check_embedding(tight.net, TrustRelation::identity(1), st, tight.slice, tight.emb);
    REQUIRE(v.size() == 1);
    CHECK(v.front().kind == "latency");
}

TEST_CASE("check_embedding: route through a denied operator") {
    NetBuilder b(1, 2);
    b.node(1);
    b.node(2);
    b.node(1);
    const LinkId a = b.link(0, 1, 10, 1, 1);
    const LinkId c = b.link(1, 2, 10, 1, 1);
    const PhysicalNetwork net = b.build();
    SliceRequest s = service_slice(net, 0, 2, {}, 1, 10);
    s.trust.deny = {2};
    Embedding emb;
    emb.slice_id = s.id;
    emb.services = {ServiceEmbedding{0, {}, {{a, c}}, 0, 0}};
    const auto v = check_embedding(net, TrustRelation::full(2), ResidualState(net), s, emb);
    CHECK(has_kind(v, "trust"));
}

TEST_CASE("check_embedding: reports every violation") {
    LineCase c = line_case(2.0);
    c.net.links[0].capacity = 0.5; // bandwidth 1 no longer fits
    c.net.nodes[0].capacity = {0.5};
    const auto v = check_embedding(c.net, TrustRelation::identity(1), ResidualState(c.net), c.slice, c.emb);
    CHECK(has_kind(v, "latency"));
    CHECK(has_kind(v, "link_capacity"));
    CHECK(has_kind(v, "node_capacity"));

    LineCase broken = line_case(10.0);
    broken.emb.services[0].hop_routes = {{0}, {}}; // walk leaves from the wrong node
    CHECK_FALSE(check_embedding(broken.net, TrustRelation::identity(1), ResidualState(broken.net), broken.slice,
                                broken.emb)
                    .empty());
}

TEST_CASE("validate_slice: aggregate vnf bandwidth must match the chains") {
    NetBuilder b(1, 1);
    b.node(1, {10}, {1});
    b.node(1);
    b.link(0, 1, 20, 1, 1);
    b.vnf(0, {1});
    const PhysicalNetwork net = b.build();
    SliceRequest s = service_slice(net, 0, 1, {0}, 2, 10);
    CHECK_NOTHROW(validate_slice(net, s));
    s.vnf_catalog.front().total_bandwidth = 3;
    CHECK_THROWS_AS(validate_slice(net, s), InputError);

    SliceRequest bad = service_slice(net, 0, 1, {0}, 2, 10);
    bad.trust.allow = {1};
    bad.trust.deny = {1};
    CHECK_THROWS_AS(validate_slice(net, bad), InputError);

    SliceRequest loop = service_slice(net, 0, 1, {}, 2, 10);
    loop.services[0].sink = 0;
    CHECK_THROWS_AS(validate_slice(net, loop), InputError);
}
