#include "crossing_forge/reduction.hpp"

#include <doctest.h>

#include <set>

using namespace cf;

namespace {
const char* kFig3 = "p cnf 5 3\n1 -2 4 -5 0\n-1 -3 5 0\n2 3 -4 0\n";

// independent enumeration oracle for the construction sizes, written
// directly from the index ranges rather than through the builder
struct Counts {
    long vertices = 0;
    long edges = 0;
};

Counts expected_counts(int n, int l) {
    const long h = 4L * l + n - 2;
    Counts c;
    // gadgets (corners u0/w0 identified with frame subdivision vertices)
    c.vertices += n * (6 * h + 18) - 2 * n;
    c.vertices += 4 + 2 * n + 2 * (h + 1); // frame corners, x rows, two sides
    c.vertices += 2L * l;                  // clause ends
    c.edges += n * (8 * h + 24);           // gadget paths, attachments, stairs
    c.edges += 2 * (n + 1) + 2 + 2 * (h + 2) + 2L * l; // frame incl. clause subdivisions
    c.edges += (n + 1) * (h + 1);          // R' stairs
    c.edges += n * (2L * n + 3 * (l - 1)); // below/above/separator LB paths
    c.edges += 5L * n * l;                 // cells
    c.edges += l;                          // clause edges
    return c;
}
} // namespace

TEST_CASE("var gadget vertex and edge counts") {
    ReductionGraph g = build_var_gadget(1, 4);
    CHECK(g.num_vertices() == 42); // 2(h+2) + 2(h+2) + 2(h+3) + 4
    CHECK(g.num_edges() == 8 * 4 + 24);

    // B-path edge at row 1 weighs s_1 = w^4 + 3w
    bool found = false;
    for (const Edge& e : g.edges())
        if (e.color == ColorClass::B && e.connects(VertexId::b_(1, 1, Side::L), VertexId::b_(1, 2, Side::L))) {
            CHECK(e.weight == s_weight(1));
            found = true;
        }
    CHECK(found);

    // B' stair count is 2h
    int stairs = 0;
    for (const Edge& e : g.edges())
        if (e.color == ColorClass::BPrime) ++stairs;
    CHECK(stairs == 2 * 4);

    CHECK_THROWS_AS(build_var_gadget(1, 0), Error);
}

TEST_CASE("frame structure") {
    ReductionGraph f = build_frame(3, 4);
    // every frame edge is HB
    for (const Edge& e : f.edges()) {
        CHECK(e.color == ColorClass::HB);
        CHECK(e.weight == WeightPoly::omega_power(8));
    }
    // corners + x_0/x_1 rows + two subdivided sides of h+1 vertices each
    ReductionGraph f13 = build_frame(1, 3);
    CHECK(f13.num_vertices() == 4 + 2 + 4 + 4);
    CHECK(f13.num_edges() == 2 * 2 + 2 + 2 * 5);
}

TEST_CASE("assembled frame and gadgets") {
    const int n = 3;
    const long h = 4;
    ReductionGraph g = assemble_frame_with_gadgets(n, h);

    // R' stair count (n+1)(h+1)
    long stairs = 0;
    for (const Edge& e : g.edges())
        if (e.color == ColorClass::RPrime) ++stairs;
    CHECK(stairs == (n + 1) * (h + 1));

    // each 8-tuple corner set is a vertex cut already in G'; without the
    // cells the two halves of the middle gadget are still separate chains
    for (int i = 1; i <= n; ++i) {
        std::set<VertexId> cut = {
            VertexId::corner(i, CornerKind::u0),  VertexId::corner(i, CornerKind::u1),
            VertexId::corner(i, CornerKind::w0),  VertexId::corner(i, CornerKind::w1),
            VertexId::r(i, 1, Side::L),           VertexId::r(i, 1, Side::R),
            VertexId::r(i, static_cast<int>(h) + 3, Side::L),
            VertexId::r(i, static_cast<int>(h) + 3, Side::R),
        };
        CHECK(g.count_components(cut) == 4);
    }
    CHECK(g.count_components() == 1);
}

TEST_CASE("corner cut yields left, middle and right once cells are loaded") {
    CnfInstance inst = parse_dimacs(kFig3);
    const int n = inst.num_vars;
    const long h = inst.height();
    ReductionGraph loaded = load_cells(assemble_frame_with_gadgets(n, h), inst);
    ReductionGraph full = reduce(inst).graph;
    for (int i = 1; i <= n; ++i) {
        std::set<VertexId> cut = {
            VertexId::corner(i, CornerKind::u0),  VertexId::corner(i, CornerKind::u1),
            VertexId::corner(i, CornerKind::w0),  VertexId::corner(i, CornerKind::w1),
            VertexId::r(i, 1, Side::L),           VertexId::r(i, 1, Side::R),
            VertexId::r(i, static_cast<int>(h) + 3, Side::L),
            VertexId::r(i, static_cast<int>(h) + 3, Side::R),
        };
        // cell edges tie each middle gadget together: exactly left/middle/right
        CHECK(loaded.count_components(cut) == 3);
        // in the full graph the clause edges merge left and right
        CHECK(full.count_components(cut) == 2);
    }
}

TEST_CASE("cell loading follows the clause structure") {
    CnfInstance inst = parse_dimacs(kFig3);
    ReductionGraph g = load_cells(assemble_frame_with_gadgets(5, inst.height()), inst);

    CHECK(cell_type(inst, 1, 1) == CellType::Pos);  // x1 in C1
    CHECK(cell_type(inst, 2, 1) == CellType::Neg);  // ~x2 in C1
    CHECK(cell_type(inst, 3, 1) == CellType::Neut); // x3 not in C1
    CHECK(cell_type(inst, 3, 2) == CellType::Neg);
    CHECK(cell_type(inst, 2, 3) == CellType::Pos);

    // a C_neut cell has exactly 2 C-edges and 3 LB-ish edges: count cell (3,1)
    const long c = cell_center_row(3, 1);
    int c_edges = 0, lb_edges = 0;
    for (const Edge& e : g.edges()) {
        if (e.u.kind != VertexKind::LBVertex || e.v.kind != VertexKind::LBVertex) continue;
        if (e.u.a != 3 || e.v.a != 3) continue;
        long lo = std::min(e.u.b, e.v.b), hi = std::max(e.u.b, e.v.b);
        if (lo < c - 1 || hi > c + 1) continue;
        if (e.u.c == e.v.c) continue; // vertical path edges
        if (e.color == ColorClass::C) ++c_edges;
        if (e.color == ColorClass::LB) ++lb_edges;
    }
    CHECK(c_edges == 2);
    CHECK(lb_edges == 3);

    // a variable absent from every clause yields l neutral cells
    CnfInstance lonely = parse_dimacs("p cnf 2 2\n1 0\n-1 0");
    for (int j = 1; j <= 2; ++j) CHECK(cell_type(lonely, 2, j) == CellType::Neut);
}

TEST_CASE("clause edge placement") {
    CnfInstance inst = parse_dimacs("p cnf 1 1\n1 0");
    ReductionResult res = reduce(inst);
    const ReductionGraph& g = res.graph;

    // c_{1,L} between rows 2 and 3, c_{1,R} between rows 4 and 5
    bool left_lo = false, left_hi = false, right_lo = false, right_hi = false;
    for (const Edge& e : g.edges()) {
        if (e.connects(VertexId::r(0, 2, Side::R), VertexId::clause_end(1, Side::L))) left_lo = true;
        if (e.connects(VertexId::clause_end(1, Side::L), VertexId::r(0, 3, Side::R))) left_hi = true;
        if (e.connects(VertexId::r(2, 4, Side::L), VertexId::clause_end(1, Side::R))) right_lo = true;
        if (e.connects(VertexId::clause_end(1, Side::R), VertexId::r(2, 5, Side::L))) right_hi = true;
    }
    CHECK(left_lo);
    CHECK(left_hi);
    CHECK(right_lo);
    CHECK(right_hi);

    long g_edges = 0;
    for (const Edge& e : g.edges())
        if (e.color == ColorClass::G) ++g_edges;
    CHECK(g_edges == 1);
}

TEST_CASE("clause rows shift by n+1 from left to right") {
    CnfInstance inst = parse_dimacs(kFig3); // n=5, l=3
    ReductionGraph g = reduce(inst).graph;
    for (int j = 1; j <= 3; ++j) {
        bool left_ok = false, right_ok = false;
        for (const Edge& e : g.edges()) {
            if (e.connects(VertexId::r(0, 4 * j - 2, Side::R), VertexId::clause_end(j, Side::L)))
                left_ok = true;
            if (e.connects(VertexId::r(6, 4 * j + 4, Side::L), VertexId::clause_end(j, Side::R)))
                right_ok = true;
        }
        CHECK(left_ok);
        CHECK(right_ok);
    }
}

TEST_CASE("budget polynomial") {
    // independent term-by-term evaluation at (1,1):
    // sum_{j=2}^{4} j(j+1) = 38, sum_{j=1}^{4} j(j+2) = 50
    KParts k = compute_k(1, 1);
    CHECK(k.sym.coeff(7) == 14);
    CHECK(k.sym.coeff(6) == 2);
    CHECK(k.sym.coeff(4) == 4 + 2 * 38 + 2 * 50);
    CHECK(k.sym.coeff(2) == 2);
    CHECK(k.offset == -1);
    CHECK(k.sym.coeff(4) == 180);

    // w^7 coefficient is 2n(2h+1) across the matrix
    for (int n = 1; n <= 5; ++n)
        for (int l = 1; l <= 4; ++l) {
            long h = 4L * l + n - 2;
            CHECK(compute_k(n, l).sym.coeff(7) == BigInt(2) * n * (2 * h + 1));
        }
}

TEST_CASE("full reduction of the smallest instance") {
    CnfInstance inst = parse_dimacs("p cnf 1 1\n1 0");
    ReductionResult res = reduce(inst);
    const GraphMetadata& meta = *res.graph.metadata;

    Counts want = expected_counts(1, 1);
    CHECK(static_cast<long>(res.graph.num_vertices()) == want.vertices);
    CHECK(static_cast<long>(res.graph.num_edges()) == want.edges);
    CHECK(res.graph.num_vertices() == 50);
    CHECK(res.graph.num_edges() == 82);
    CHECK(meta.omega == 82 * 82);
    CHECK(meta.k_value == meta.k_sym.eval(meta.omega) - 1);

    // the construction makes no parallel weighted edges
    CHECK_FALSE(res.trace.parallel_edges_found);
    CHECK_FALSE(has_parallel_edges(res.graph));
}

TEST_CASE("reduction matches the enumeration oracle across the matrix") {
    for (int n = 1; n <= 4; ++n)
        for (int l = 1; l <= 3; ++l) {
            CnfInstance inst;
            inst.num_vars = n;
            for (int j = 0; j < l; ++j)
                inst.clauses.push_back(Clause{Literal{(j % n) + 1, j % 2 == 0}});
            ReductionResult res = reduce(inst);
            Counts want = expected_counts(n, l);
            CHECK(static_cast<long>(res.graph.num_vertices()) == want.vertices);
            CHECK(static_cast<long>(res.graph.num_edges()) == want.edges);
            CHECK(res.graph.metadata->omega ==
                  static_cast<long long>(res.graph.num_edges()) *
                      static_cast<long long>(res.graph.num_edges()));
            // coefficient bound validating symbolic comparison
            BigInt biggest = res.graph.metadata->k_sym.max_coeff();
            for (const Edge& e : res.graph.edges())
                biggest = std::max(biggest, e.weight.max_coeff());
            CHECK(biggest < res.graph.metadata->omega);
            CHECK_FALSE(has_parallel_edges(res.graph));
        }
}

TEST_CASE("trace partitions the edge set") {
    CnfInstance inst = parse_dimacs(kFig3);
    ReductionResult res = reduce(inst);
    std::set<std::uint32_t> seen;
    for (const auto& [tag, m] : res.trace.phases)
        for (std::uint32_t e : m.edges) CHECK(seen.insert(e).second);
    CHECK(seen.size() == res.graph.num_edges());

    // per-phase counts from the index ranges
    const int n = 5, l = 3;
    const long h = inst.height();
    for (int i = 1; i <= n; ++i) {
        CHECK(res.trace.phase("gadget[" + std::to_string(i) + "]").edges.size() ==
              static_cast<std::size_t>(8 * h + 24));
        CHECK(res.trace.phase("loading[" + std::to_string(i) + "]").edges.size() ==
              static_cast<std::size_t>(2 * n + 3 * (l - 1)));
        for (int j = 1; j <= l; ++j)
            CHECK(res.trace.phase("cell[" + std::to_string(i) + "," + std::to_string(j) + "]")
                      .edges.size() == 5);
    }
    CHECK(res.trace.phase("stairs").edges.size() == static_cast<std::size_t>((n + 1) * (h + 1)));
    CHECK(res.trace.phase("frame").edges.size() ==
          static_cast<std::size_t>(2 * (n + 1) + 2 + 2 * (h + 2) + 2 * l));
}

TEST_CASE("weight-color audit accepts generated graphs and rejects tampering") {
    ReductionGraph g = reduce(parse_dimacs("p cnf 1 1\n1 0")).graph;
    CHECK(audit_weight_colors(g).empty());

    ReductionGraph bad;
    bad.add_vertex(VertexId::clause_end(1, Side::L));
    bad.add_vertex(VertexId::clause_end(1, Side::R));
    bad.add_edge(VertexId::clause_end(1, Side::L), VertexId::clause_end(1, Side::R), ColorClass::C,
                 WeightPoly::omega_power(3));
    CHECK_FALSE(audit_weight_colors(bad).empty());
}

TEST_CASE("metadata round-trips through the graph file") {
    ReductionResult res = reduce(parse_dimacs("p cnf 1 1\n1 0"));
    std::string text = graph_to_string(res.graph);
    ReductionGraph back = graph_from_string(text);
    REQUIRE(back.metadata.has_value());
    CHECK(back.metadata->k_sym == res.graph.metadata->k_sym);
    CHECK(back.metadata->k_value == res.graph.metadata->k_value);
    CHECK(back.metadata->omega == res.graph.metadata->omega);
    CHECK(graph_to_string(back) == text);
}
