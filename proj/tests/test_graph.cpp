#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "mbtd/generators.hpp"
#include "mbtd/structure.hpp"
#include "support.hpp"

using namespace mbtd;
using testsupport::girth;
using testsupport::isomorphic;
using testsupport::two_colourable;

namespace {

Graph prism_k3_k2() {
    std::vector<Edge> es{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}};
    return Graph(6, es);
}

bool is_cubic(const Graph& g) {
    for (Vertex v = 0; v < g.order(); ++v)
        if (g.degree(v) != 3) return false;
    return true;
}

std::vector<Graph> generated_cubic() {
    std::vector<Graph> v;
    for (int n = 3; n <= 15; ++n)
        for (int k = 1; 2 * k < n; ++k) v.push_back(generate_gp(n, k));
    for (int c = 2; c <= 5; ++c) v.push_back(generate_necklace(NecklaceKind::Diamond, c));
    for (int c = 2; c <= 5; ++c) v.push_back(generate_necklace(NecklaceKind::Claw, c));
    for (int m = 3; m <= 10; ++m) v.push_back(generate_bipartite_circulant(m));
    v.push_back(truncate(complete_graph(4)));
    v.push_back(truncate(complete_bipartite(3, 3)));
    v.push_back(truncate(generate_gp(4, 1)));
    v.push_back(truncate(generate_gp(5, 2)));
    v.push_back(generate_eta());
    for (int m = 1; m <= 4; ++m) v.push_back(generate_omega(m));
    return v;
}

}  // namespace

TEST_CASE("json-edges parsing") {
    Graph c4 = parse_graph(R"({"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]})", GraphFormat::JsonEdges);
    CHECK(c4.order() == 4);
    CHECK(c4.size() == 4);
    CHECK(c4.adjacent(3, 0));
    Graph k1 = parse_graph(R"({"n":1,"edges":[]})", GraphFormat::JsonEdges);
    CHECK(k1.order() == 1);
    CHECK(k1.size() == 0);

    CHECK_THROWS_AS(parse_graph(R"({"n":3,"edges":[[0,0]]})", GraphFormat::JsonEdges), GraphError);
    CHECK_THROWS_AS(parse_graph(R"({"n":3,"edges":[[0,1],[1,0]]})", GraphFormat::JsonEdges), GraphError);
    CHECK_THROWS_AS(parse_graph(R"({"n":3,"edges":[[0,3]]})", GraphFormat::JsonEdges), GraphError);
    CHECK_THROWS_AS(parse_graph(R"({"n":3,"edges":[[0,1)", GraphFormat::JsonEdges), GraphError);
    CHECK_THROWS_AS(parse_graph("{}", GraphFormat::JsonEdges), GraphError);
}

TEST_CASE("graph6 decoding matches hand decoding") {
    // "C~": n = 'C' - 63 = 4; '~' - 63 = 63 = 111111 sets all six upper-triangle bits.
    Graph k4 = parse_graph("C~", GraphFormat::Graph6);
    CHECK(k4.order() == 4);
    CHECK(k4.size() == 6);
    CHECK(serialize_graph(complete_graph(4), GraphFormat::Graph6) == "C~");

    Graph petersen = parse_graph("IheA@GUAo", GraphFormat::Graph6);
    CHECK(petersen.order() == 10);
    CHECK(petersen.size() == 15);
    CHECK(isomorphic(petersen, generate_gp(5, 2)));
    CHECK_FALSE(isomorphic(petersen, generate_gp(5, 1)));

    CHECK_THROWS_AS(parse_graph("", GraphFormat::Graph6), GraphError);
    CHECK_THROWS_AS(parse_graph("C", GraphFormat::Graph6), GraphError);
}

TEST_CASE("serialization round-trips byte-stably") {
    for (const auto& g : generated_cubic()) {
        for (auto fmt : {GraphFormat::JsonEdges, GraphFormat::Graph6}) {
            std::string text = serialize_graph(g, fmt);
            Graph back = parse_graph(text, fmt);
            CHECK(back.edges() == g.edges());
            CHECK(serialize_graph(back, fmt) == text);
        }
        Graph back = parse_graph_auto(serialize_graph(g, GraphFormat::JsonEdges));
        CHECK(back == g);
    }
}

TEST_CASE("graph construction rejects bad input") {
    std::vector<Edge> loop{{1, 1}};
    CHECK_THROWS_AS(Graph(3, loop), GraphError);
    std::vector<Edge> dup{{0, 1}, {1, 0}};
    CHECK_THROWS_AS(Graph(3, dup), GraphError);
    std::vector<Edge> range{{0, 5}};
    CHECK_THROWS_AS(Graph(3, range), GraphError);
}

TEST_CASE("generalized Petersen graphs") {
    Graph p = generate_gp(5, 2);
    CHECK(p.order() == 10);
    CHECK(p.size() == 15);
    CHECK(girth(p) == 5);
    Graph g92 = generate_gp(9, 2);
    CHECK(g92.order() == 18);
    CHECK(g92.size() == 27);
    CHECK(isomorphic(generate_gp(3, 1), prism_k3_k2()));
    CHECK(g92.label(0) == "u0");
    CHECK(g92.label(9) == "v0");
    CHECK(g92.adjacent(g92.vertex("v0"), g92.vertex("v2")));

    for (int n = 3; n <= 30; ++n)
        for (int k = 1; 2 * k < n; ++k) {
            Graph g = generate_gp(n, k);
            CHECK(g.order() == 2 * n);
            CHECK(g.size() == static_cast<std::size_t>(3 * n));
            CHECK(is_cubic(g));
        }
    CHECK_THROWS_AS(generate_gp(2, 1), GraphError);
    CHECK_THROWS_AS(generate_gp(6, 3), GraphError);
    CHECK_THROWS_AS(generate_gp(6, 0), GraphError);
}

TEST_CASE("necklaces") {
    Graph d2 = generate_necklace(NecklaceKind::Diamond, 2);
    CHECK(d2.order() == 8);
    CHECK(d2.size() == 12);
    CHECK(is_cubic(d2));
    CHECK(find_factor(d2, FactorKind::Diamond).has_value());

    Graph c2 = generate_necklace(NecklaceKind::Claw, 2);
    CHECK(c2.order() == 8);
    CHECK(is_cubic(c2));
    for (auto e : {std::pair{"x1", "x2"}, {"y1", "y2"}, {"z1", "z2"}, {"x1", "y2"}, {"y1", "z2"}, {"z1", "x2"}})
        CHECK(c2.adjacent(c2.vertex(e.first), c2.vertex(e.second)));
    for (auto part : {std::vector<std::string>{"x1", "t1", "y1", "y2"}, {"z1", "z2", "t2", "x2"}}) {
        std::vector<Vertex> vs;
        for (const auto& l : part) vs.push_back(c2.vertex(l));
        CHECK(isomorphic(c2.induced(vs), cycle_graph(4)));
    }

    Graph c3 = generate_necklace(NecklaceKind::Claw, 3);
    CHECK(c3.order() == 12);
    CHECK(is_cubic(c3));
    CHECK(validate(c3).connected);
    for (auto e : {std::pair{"x1", "x3"}, {"y1", "y3"}, {"z1", "z3"}})
        CHECK(c3.adjacent(c3.vertex(e.first), c3.vertex(e.second)));

    CHECK_THROWS_AS(generate_necklace(NecklaceKind::Diamond, 1), GraphError);
    CHECK_THROWS_AS(generate_necklace(NecklaceKind::Claw, 1), GraphError);
}

TEST_CASE("truncation") {
    Graph t = truncate(complete_graph(4));
    CHECK(t.order() == 12);
    CHECK(t.size() == 18);
    auto f = find_factor(t, FactorKind::Triangle);
    REQUIRE(f.has_value());
    CHECK(f->parts.size() == 4);

    Graph t33 = truncate(complete_bipartite(3, 3));
    CHECK(t33.order() == 18);
    CHECK(is_cubic(t33));

    Graph t41 = truncate(generate_gp(4, 1));
    CHECK(t41.order() == 24);
    CHECK(is_cubic(t41));
    auto f41 = find_factor(t41, FactorKind::Triangle);
    REQUIRE(f41.has_value());
    CHECK(f41->parts.size() == 8);

    CHECK_THROWS_AS(truncate(cycle_graph(5)), GraphError);
}

TEST_CASE("bipartite circulants") {
    CHECK(isomorphic(generate_bipartite_circulant(3), complete_bipartite(3, 3)));
    Graph c5 = generate_bipartite_circulant(5);
    CHECK(c5.order() == 10);
    CHECK(c5.size() == 15);
    CHECK(two_colourable(c5));
    Graph c4 = generate_bipartite_circulant(4);
    CHECK(c4.order() == 8);
    CHECK(is_cubic(c4));
    CHECK(girth(c4) == 4);
    for (int m = 3; m <= 10; ++m) {
        auto flags = validate(generate_bipartite_circulant(m));
        CHECK(flags.cubic);
        CHECK(flags.connected);
        CHECK(flags.bipartite);
    }
    CHECK_THROWS_AS(generate_bipartite_circulant(2), GraphError);
}

TEST_CASE("eta and omega") {
    Graph eta = generate_eta();
    CHECK(eta.order() == 18);
    CHECK(eta.size() == 27);
    auto fe = validate(eta);
    CHECK(fe.cubic);
    CHECK(fe.connected);
    auto se = classify_structure(eta);
    CHECK(se.triangles.size() == 2);
    CHECK(se.diamonds.size() == 3);
    for (auto e : {std::pair{"z1", "a1"}, {"z3", "b1"}, {"a2", "k1"}, {"a3", "k3"}, {"b2", "m1"}, {"b3", "m3"}})
        CHECK(eta.adjacent(eta.vertex(e.first), eta.vertex(e.second)));

    for (int m = 1; m <= 4; ++m) {
        Graph om = generate_omega(m);
        CHECK(om.order() == 10 + 4 * m);
        CHECK(validate(om).cubic);
        CHECK(validate(om).connected);
    }
    Graph om1 = generate_omega(1);
    CHECK(om1.order() == 14);
    for (auto e : {std::pair{"a1", "b1"}, {"b2", "h1"}, {"b3", "h3"}, {"a2", "z1@D1"}, {"z3@D1", "a3"}})
        CHECK(om1.adjacent(om1.vertex(e.first), om1.vertex(e.second)));
    CHECK(generate_omega(3).order() == 22);
    CHECK_THROWS_AS(generate_omega(0), GraphError);
}

TEST_CASE("validate flags") {
    auto f = validate(generate_gp(7, 2));
    CHECK(f.cubic);
    CHECK(f.connected);
    CHECK_FALSE(f.bipartite);
    CHECK_FALSE(testsupport::two_colourable(generate_gp(7, 2)));
    CHECK_FALSE(validate(cycle_graph(4)).cubic);
    auto two = validate(disjoint_union(complete_graph(4), complete_graph(4)));
    CHECK(two.cubic);
    CHECK_FALSE(two.connected);
}

TEST_CASE("structure classification examples") {
    auto tk4 = classify_structure(truncate(complete_graph(4)));
    CHECK(tk4.t1 == 0);
    CHECK(tk4.t2 == 12);
    CHECK(tk4.t3 == 0);
    CHECK(tk4.k1 == 0);
    CHECK(tk4.k2 == 4);

    // Every diamond vertex lies in a triangle; only the two centers lie in two.
    auto d2 = classify_structure(generate_necklace(NecklaceKind::Diamond, 2));
    CHECK(d2.diamonds.size() == 2);
    CHECK(d2.triangles.empty());
    CHECK(d2.t1 == 4);
    CHECK(d2.t2 == 4);
    CHECK(d2.t3 == 0);
    CHECK(d2.k1 == 2);
    CHECK(d2.k2 == 0);

    auto p = classify_structure(generate_gp(5, 2));
    CHECK(p.t1 == 0);
    CHECK(p.t2 == 0);
    CHECK(p.t3 == 10);

    CHECK_THROWS_AS(classify_structure(cycle_graph(6)), GraphError);
    CHECK_THROWS_AS(classify_structure(complete_graph(4)), GraphError);
}

TEST_CASE("Kostochka relations and triangle counts on generated cubic graphs") {
    for (const auto& g : generated_cubic()) {
        if (g.order() < 6) continue;
        auto r = classify_structure(g);
        CHECK(r.t1 + r.t2 + r.t3 == g.order());
        CHECK(r.t1 == 2 * r.k1);
        CHECK(r.t2 == r.t1 + 3 * r.k2);
        CHECK(r.k1 >= 0);
        CHECK(r.k2 >= 0);
        CHECK(raw_triangles(g).size() == static_cast<std::size_t>(testsupport::triangle_count(g)));
        // Diamonds hold two triangles each; the remaining triangles are listed.
        CHECK(raw_triangles(g).size() == r.triangles.size() + 2 * r.diamonds.size());
        std::set<Vertex> in_diamonds;
        for (const auto& d : r.diamonds) {
            CHECK(g.adjacent(d.centers[0], d.centers[1]));
            CHECK_FALSE(g.adjacent(d.tips[0], d.tips[1]));
            for (Vertex v : d.sorted()) in_diamonds.insert(v);
        }
        for (const auto& t : r.triangles) {
            int inside = 0;
            for (Vertex v : t) inside += in_diamonds.count(v);
            CHECK(inside < 3);
        }
    }
}

TEST_CASE("factor detection") {
    auto d3 = find_factor(generate_necklace(NecklaceKind::Diamond, 3), FactorKind::Diamond);
    REQUIRE(d3.has_value());
    CHECK(d3->parts.size() == 3);
    CHECK(check_certificate(generate_necklace(NecklaceKind::Diamond, 3), *d3));

    CHECK_FALSE(find_factor(generate_gp(6, 2), FactorKind::Triangle).has_value());
    CHECK_FALSE(find_factor(generate_gp(5, 2), FactorKind::Triangle).has_value());  // 10 not divisible by 3

    Graph c4n = generate_necklace(NecklaceKind::Claw, 4);
    auto claws = find_factor(c4n, FactorKind::Claw);
    REQUIRE(claws.has_value());
    CHECK(claws->parts.size() == 4);
    CHECK(check_certificate(c4n, *claws));
    for (const auto& part : claws->parts) CHECK(c4n.label(part.front()).front() == 't');

    auto prism = find_factor(generate_gp(3, 1), FactorKind::Triangle);
    REQUIRE(prism.has_value());
    CHECK(check_certificate(generate_gp(3, 1), *prism));

    FactorCertificate bad{FactorKind::Triangle, {{0, 1, 2}, {0, 4, 5}}};
    CHECK_FALSE(check_certificate(generate_gp(3, 1), bad));
}

TEST_CASE("generator catalog") {
    std::set<std::string> names;
    for (const auto& g : generator_catalog()) names.insert(g.name);
    for (const char* n : {"gp", "prism", "diamond-necklace", "claw-necklace", "truncated-k4", "circulant", "eta", "omega"})
        CHECK(names.count(n) == 1);
    std::vector<int> p{5, 2};
    CHECK(generate_family("gp", p) == generate_gp(5, 2));
    CHECK_THROWS_AS(generate_family("nope", {}), GraphError);
    CHECK_THROWS_AS(generate_family("gp", std::vector<int>{5}), GraphError);
}
