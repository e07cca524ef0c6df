#include "crossing_forge/graph.hpp"

#include <doctest.h>

#include <random>

using namespace cf;

namespace {

// ids for ad-hoc test graphs: reuse the clause-end label space
VertexId tv(int i) { return VertexId::clause_end(i, Side::L); }

ReductionGraph simple_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    ReductionGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(tv(i));
    for (auto [a, b] : edges) g.add_edge(tv(a), tv(b), ColorClass::G, WeightPoly::constant(1));
    return g;
}

ReductionGraph path_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return simple_graph(n, edges);
}

ReductionGraph cycle_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return simple_graph(n, edges);
}

ReductionGraph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
    return simple_graph(n, edges);
}

} // namespace

TEST_CASE("vertex labels render and parse") {
    std::vector<VertexId> ids = {
        VertexId::frame(FrameCorner::BL),     VertexId::r(2, 3, Side::L),
        VertexId::r(0, 7, Side::R),           VertexId::b_(1, 4, Side::R),
        VertexId::v(3, 9, Side::L),           VertexId::corner(1, CornerKind::u0),
        VertexId::corner(4, CornerKind::w1),  VertexId::clause_end(1, Side::L),
        VertexId::subdivision(17, 1),
    };
    for (const VertexId& v : ids) CHECK(VertexId::parse(v.to_string()) == v);
    CHECK(VertexId::r(2, 3, Side::L).to_string() == "r[2,3,L]");
    CHECK(VertexId::corner(1, CornerKind::u0).to_string() == "corner[1,u0]");
    CHECK(VertexId::frame(FrameCorner::BL).to_string() == "frame[BL]");
    CHECK(VertexId::clause_end(1, Side::L).to_string() == "c[1,L]");
    CHECK(VertexId::b_(1, 4, Side::R).to_string() == "b[1,4,N]");
    CHECK(VertexId::v(3, 9, Side::L).to_string() == "v[3,9,P]");
    CHECK_THROWS_AS(VertexId::parse("nope[1]"), Error);
    CHECK_THROWS_AS(VertexId::parse("r[1,2]"), Error);
}

TEST_CASE("no self loops or duplicate vertices") {
    ReductionGraph g;
    g.add_vertex(tv(0));
    CHECK_THROWS_AS(g.add_vertex(tv(0)), Error);
    CHECK_THROWS_AS(g.add_edge(tv(0), tv(0), ColorClass::G, WeightPoly::constant(1)), Error);
}

TEST_CASE("decomposition validation basics") {
    ReductionGraph triangle = complete_graph(3);
    PathDecomposition one_bag{{{tv(0), tv(1), tv(2)}}};
    auto check = validate_decomposition(triangle, one_bag);
    CHECK(check.valid);
    CHECK(check.width == 2);

    ReductionGraph p3 = path_graph(3);
    PathDecomposition good{{{tv(0), tv(1)}, {tv(1), tv(2)}}};
    check = validate_decomposition(p3, good);
    CHECK(check.valid);
    CHECK(check.width == 1);

    PathDecomposition uncovered{{{tv(0), tv(1)}, {tv(2)}}};
    check = validate_decomposition(p3, uncovered);
    CHECK_FALSE(check.valid);
    CHECK(check.violation.find("edge") != std::string::npos);

    PathDecomposition gap{{{tv(0), tv(1)}, {tv(1), tv(2)}, {tv(2)}, {tv(1)}}};
    check = validate_decomposition(p3, gap);
    CHECK_FALSE(check.valid);
    CHECK(check.violation.find("contiguous") != std::string::npos);

    PathDecomposition missing_vertex{{{tv(0), tv(1)}}};
    CHECK_FALSE(validate_decomposition(path_graph(2), PathDecomposition{{{tv(0)}}}).valid);
    CHECK(validate_decomposition(path_graph(2), missing_vertex).valid);
}

TEST_CASE("tree decomposition validation") {
    ReductionGraph star = simple_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    TreeDecomposition td;
    td.bags = {{tv(0), tv(1)}, {tv(0), tv(2)}, {tv(0), tv(3)}};
    td.tree_edges = {{0, 1}, {1, 2}};
    CHECK(validate_decomposition(star, td).valid);

    // occurrence set of tv(0) must be connected in the tree
    TreeDecomposition bad;
    bad.bags = {{tv(0), tv(1)}, {tv(1), tv(2)}, {tv(0), tv(2), tv(3)}};
    bad.tree_edges = {{0, 1}, {1, 2}};
    auto check = validate_decomposition(star, bad);
    CHECK_FALSE(check.valid);
    CHECK(check.violation.find("connected") != std::string::npos);

    TreeDecomposition disconnected;
    disconnected.bags = {{tv(0), tv(1), tv(2), tv(3)}, {tv(0)}};
    disconnected.tree_edges = {};
    CHECK_FALSE(validate_decomposition(star, disconnected).valid);
}

TEST_CASE("exact pathwidth on canonical families") {
    CHECK(exact_pathwidth(path_graph(2)) == 1);
    CHECK(exact_pathwidth(path_graph(7)) == 1);
    CHECK(exact_pathwidth(cycle_graph(4)) == 2);
    CHECK(exact_pathwidth(cycle_graph(9)) == 2);
    CHECK(exact_pathwidth(complete_graph(5)) == 4);
    CHECK(exact_pathwidth(complete_graph(3)) == 2);
    CHECK(exact_pathwidth(simple_graph(1, {})) == 0);
    CHECK_THROWS_AS(exact_pathwidth(path_graph(21)), Error);
}

TEST_CASE("pathwidth lower-bounds any valid decomposition") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> nd(2, 10);
    std::uniform_real_distribution<double> p(0.0, 1.0);
    for (int it = 0; it < 30; ++it) {
        int n = nd(rng);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p(rng) < 0.4) edges.push_back({i, j});
        ReductionGraph g = simple_graph(n, edges);
        int pw = exact_pathwidth(g);
        // the trivial one-bag decomposition is always valid
        std::vector<VertexId> all;
        for (int i = 0; i < n; ++i) all.push_back(tv(i));
        auto check = validate_decomposition(g, PathDecomposition{{all}});
        REQUIRE(check.valid);
        CHECK(pw <= check.width);
    }
}

TEST_CASE("subdivide parallel") {
    ReductionGraph g;
    g.add_vertex(tv(0));
    g.add_vertex(tv(1));
    g.add_edge(tv(0), tv(1), ColorClass::HB, WeightPoly::omega_power(8));
    g.add_edge(tv(0), tv(1), ColorClass::HB, WeightPoly::omega_power(8));
    CHECK(has_parallel_edges(g));

    ReductionGraph s = subdivide_parallel(g);
    CHECK(s.num_vertices() == 3);
    CHECK(s.num_edges() == 3);
    CHECK_FALSE(has_parallel_edges(s));
    // the halves inherit the parent weight
    for (const Edge& e : s.edges()) CHECK(e.weight == WeightPoly::omega_power(8));

    ReductionGraph p = path_graph(4);
    ReductionGraph sp = subdivide_parallel(p);
    CHECK(sp.num_vertices() == p.num_vertices());
    CHECK(sp.num_edges() == p.num_edges());
}

TEST_CASE("subdivision adds exactly one vertex per extra parallel edge") {
    ReductionGraph g;
    for (int i = 0; i < 2; ++i) g.add_vertex(tv(i));
    for (int k = 0; k < 4; ++k) g.add_edge(tv(0), tv(1), ColorClass::C, WeightPoly::omega_power(2));
    ReductionGraph s = subdivide_parallel(g);
    CHECK(s.num_vertices() == 2 + 3);
    CHECK_FALSE(has_parallel_edges(s));
}

TEST_CASE("expand weights") {
    ReductionGraph g;
    g.add_vertex(tv(0));
    g.add_vertex(tv(1));
    g.add_edge(tv(0), tv(1), ColorClass::C, WeightPoly::omega_power(2));
    UnitMultigraph u = expand_weights(g, 3);
    CHECK(u.edges.size() == 9);

    ReductionGraph unit;
    unit.add_vertex(tv(0));
    unit.add_vertex(tv(1));
    unit.add_edge(tv(0), tv(1), ColorClass::G, WeightPoly::constant(1));
    CHECK(expand_weights(unit, 5).edges.size() == 1);

    ReductionGraph big;
    big.add_vertex(tv(0));
    big.add_vertex(tv(1));
    big.add_edge(tv(0), tv(1), ColorClass::HB, WeightPoly::omega_power(8));
    CHECK_THROWS_AS(expand_weights(big, 7000), Error);
}

TEST_CASE("graph file round trip") {
    ReductionGraph g = cycle_graph(4);
    GraphMetadata meta;
    meta.n = 1;
    meta.l = 1;
    meta.h = 3;
    meta.omega = 6724;
    meta.k_sym = WeightPoly::monomial(14, 7) + WeightPoly::monomial(2, 2);
    meta.k_offset = -1;
    meta.k_value = meta.k_sym.eval(meta.omega) - 1;
    g.metadata = meta;

    std::string text = graph_to_string(g);
    ReductionGraph back = graph_from_string(text);
    CHECK(back.num_vertices() == g.num_vertices());
    CHECK(back.num_edges() == g.num_edges());
    REQUIRE(back.metadata.has_value());
    CHECK(back.metadata->omega == 6724);
    CHECK(back.metadata->k_sym == meta.k_sym);
    CHECK(back.metadata->k_value == meta.k_value);
    // byte-stable round trip
    CHECK(graph_to_string(back) == text);
    CHECK_THROWS_AS(graph_from_string("not a graph"), Error);
}

TEST_CASE("decomposition file round trip") {
    PathDecomposition pd{{{tv(0), tv(1)}, {tv(1), tv(2)}}};
    std::string text = path_decomposition_to_string(pd);
    auto [p, t] = decomposition_from_string(text);
    REQUIRE(p.has_value());
    CHECK_FALSE(t.has_value());
    CHECK(p->bags == pd.bags);
    CHECK(path_decomposition_to_string(*p) == text);

    TreeDecomposition td{{{tv(0), tv(1)}, {tv(1), tv(2)}, {tv(1), tv(3)}}, {{0, 1}, {1, 2}}};
    std::string ttext = tree_decomposition_to_string(td);
    auto [p2, t2] = decomposition_from_string(ttext);
    REQUIRE(t2.has_value());
    CHECK(t2->bags == td.bags);
    CHECK(t2->tree_edges == td.tree_edges);
    CHECK(tree_decomposition_to_string(*t2) == ttext);
}

TEST_CASE("component counting") {
    ReductionGraph g = simple_graph(5, {{0, 1}, {1, 2}, {3, 4}});
    CHECK(g.count_components() == 2);
    CHECK(g.count_components({tv(1)}) == 3);
}
