#include "crossing_forge/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cf {

CellType cell_type(const CnfInstance& inst, int i, int j) {
    const Clause& clause = inst.clauses.at(static_cast<std::size_t>(j) - 1);
    for (const Literal& lit : clause)
        if (lit.variable == i) return lit.positive ? CellType::Pos : CellType::Neg;
    return CellType::Neut;
}

const Manifest& ConstructionTrace::phase(const std::string& tag) const {
    for (const auto& [t, m] : phases)
        if (t == tag) return m;
    throw Error("trace: no phase '" + tag + "'");
}

std::string ConstructionTrace::to_string() const {
    std::ostringstream os;
    os << "crossing-forge-trace v1\n";
    os << "parallel_edges " << (parallel_edges_found ? "yes" : "no") << "\n";
    for (const auto& [tag, m] : phases) {
        os << "phase " << tag << " vertices " << m.vertices.size() << " edges " << m.edges.size()
           << "\n";
        for (const VertexId& v : m.vertices) os << "  vertex " << v.to_string() << "\n";
        for (std::uint32_t e : m.edges) os << "  edge " << e << "\n";
    }
    return os.str();
}

KParts compute_k(int n, int l) {
    if (n < 1 || l < 1) throw Error("compute_k: need n, l >= 1");
    const long h = 4L * l + n - 2;
    BigInt sum_g = 0; // sum_{j=2}^{h+1} j(j+1)
    for (long j = 2; j <= h + 1; ++j) sum_g += BigInt(j) * (j + 1);
    BigInt sum_s = 0; // sum_{j=1}^{h+1} j(j+2)
    for (long j = 1; j <= h + 1; ++j) sum_s += BigInt(j) * (j + 2);

    KParts k;
    k.sym += WeightPoly::monomial(BigInt(2) * n * (2 * h + 1), 7);
    k.sym += WeightPoly::monomial(BigInt(2) * n * l, 6);
    k.sym += WeightPoly::monomial(BigInt(4) * n * l + 2 * n * sum_g + 2 * n * sum_s, 4);
    k.sym += WeightPoly::monomial(BigInt(n) * l + 1, 2);
    k.offset = -1;
    return k;
}

// ---------------------------------------------------------------------
// Builder with phase-tagged proto edges. Clause-end subdivision replaces a
// side edge in place so the final edge numbering stays dense and ordered.
// ---------------------------------------------------------------------
namespace {

struct PhaseTag {
    enum Kind { Gadget, Frame, Stairs, Loading, Cell, Clause } kind = Frame;
    int i = 0, j = 0;

    std::string str() const {
        switch (kind) {
            case Gadget: return "gadget[" + std::to_string(i) + "]";
            case Frame: return "frame";
            case Stairs: return "stairs";
            case Loading: return "loading[" + std::to_string(i) + "]";
            case Cell: return "cell[" + std::to_string(i) + "," + std::to_string(j) + "]";
            case Clause: return "clause[" + std::to_string(j) + "]";
        }
        return "?";
    }
    auto key() const { return std::tuple(static_cast<int>(kind), i, j); }
};

struct ProtoEdge {
    VertexId u, v;
    ColorClass color;
    WeightPoly w;
    PhaseTag tag;
};

class Builder {
public:
    void vertex(const VertexId& v, PhaseTag tag) {
        if (seen_.insert(v).second) vertices_.emplace_back(v, tag);
    }
    void edge(const VertexId& u, const VertexId& v, ColorClass c, WeightPoly w, PhaseTag tag) {
        edges_.push_back(ProtoEdge{u, v, c, std::move(w), tag});
    }

    /// Replaces the unique edge (u, v) with (u, mid), (mid, v) in place.
    void subdivide(const VertexId& u, const VertexId& v, const VertexId& mid, PhaseTag vtag) {
        auto it = std::find_if(edges_.begin(), edges_.end(),
                               [&](const ProtoEdge& e) { return e.u == u && e.v == v; });
        if (it == edges_.end()) throw Error("builder: no edge (" + u.to_string() + ", " +
                                            v.to_string() + ") to subdivide");
        vertex(mid, vtag);
        ProtoEdge second{mid, it->v, it->color, it->w, it->tag};
        it->v = mid;
        edges_.insert(it + 1, std::move(second));
    }

    ReductionGraph finalize(ConstructionTrace* trace) const {
        ReductionGraph g;
        std::map<std::tuple<int, int, int>, Manifest> manifests;
        for (const auto& [v, tag] : vertices_) {
            g.add_vertex(v);
            if (trace) manifests[tag.key()].vertices.push_back(v);
        }
        for (const ProtoEdge& e : edges_) {
            std::uint32_t id = g.add_edge(e.u, e.v, e.color, e.w);
            if (trace) manifests[e.tag.key()].edges.push_back(id);
        }
        if (trace) {
            trace->phases.clear();
            for (const auto& [key, m] : manifests) {
                PhaseTag t;
                t.kind = static_cast<PhaseTag::Kind>(std::get<0>(key));
                t.i = std::get<1>(key);
                t.j = std::get<2>(key);
                trace->phases.emplace_back(t.str(), m);
            }
            trace->parallel_edges_found = has_parallel_edges(g);
        }
        return g;
    }

    void import(const ReductionGraph& g) {
        PhaseTag t{PhaseTag::Frame, 0, 0};
        for (const VertexId& v : g.vertices()) vertex(v, t);
        for (const Edge& e : g.edges()) edge(e.u, e.v, e.color, e.weight, t);
    }

private:
    std::vector<std::pair<VertexId, PhaseTag>> vertices_;
    std::set<VertexId> seen_;
    std::vector<ProtoEdge> edges_;
};

const WeightPoly kHB = WeightPoly::omega_power(8);
const WeightPoly kLB = WeightPoly::omega_power(6);
const WeightPoly kStair = WeightPoly::omega_power(3);
const WeightPoly kC = WeightPoly::omega_power(2);
const WeightPoly kG = WeightPoly::constant(1);

void append_var_gadget(Builder& bld, int i, long h) {
    if (h < 1) throw Error("build_var_gadget: h must be >= 1");
    PhaseTag tag{PhaseTag::Gadget, i, 0};
    auto U0 = VertexId::corner(i, CornerKind::u0);
    auto U1 = VertexId::corner(i, CornerKind::u1);
    auto W0 = VertexId::corner(i, CornerKind::w0);
    auto W1 = VertexId::corner(i, CornerKind::w1);
    for (const auto& v : {U0, U1, W0, W1}) bld.vertex(v, tag);
    for (long j = 1; j <= h + 2; ++j) {
        bld.vertex(VertexId::b_(i, static_cast<int>(j), Side::L), tag); // P
        bld.vertex(VertexId::b_(i, static_cast<int>(j), Side::R), tag); // N
        bld.vertex(VertexId::v(i, static_cast<int>(j), Side::L), tag);
        bld.vertex(VertexId::v(i, static_cast<int>(j), Side::R), tag);
    }
    for (long j = 1; j <= h + 3; ++j) {
        bld.vertex(VertexId::r(i, static_cast<int>(j), Side::L), tag);
        bld.vertex(VertexId::r(i, static_cast<int>(j), Side::R), tag);
    }

    auto b = [&](long j, Side s) { return VertexId::b_(i, static_cast<int>(j), s); };
    auto v = [&](long j, Side s) { return VertexId::v(i, static_cast<int>(j), s); };
    auto r = [&](long j, Side s) { return VertexId::r(i, static_cast<int>(j), s); };

    for (Side s : {Side::L, Side::R})
        for (long j = 1; j <= h + 1; ++j)
            bld.edge(b(j, s), b(j + 1, s), ColorClass::B, s_weight(j), tag);
    for (Side s : {Side::L, Side::R})
        for (long j = 1; j <= h + 1; ++j)
            bld.edge(v(j, s), v(j + 1, s), ColorClass::LB, kLB, tag);
    for (Side s : {Side::L, Side::R})
        for (long j = 1; j <= h + 2; ++j)
            bld.edge(r(j, s), r(j + 1, s), ColorClass::R, g_weight(j), tag);

    // HB attachments; R-path endpoints attach to both corners on their end
    bld.edge(U0, b(1, Side::L), ColorClass::HB, kHB, tag);
    bld.edge(U0, b(1, Side::R), ColorClass::HB, kHB, tag);
    bld.edge(W0, b(h + 2, Side::L), ColorClass::HB, kHB, tag);
    bld.edge(W0, b(h + 2, Side::R), ColorClass::HB, kHB, tag);
    bld.edge(U1, v(1, Side::L), ColorClass::HB, kHB, tag);
    bld.edge(U1, v(1, Side::R), ColorClass::HB, kHB, tag);
    bld.edge(W1, v(h + 2, Side::L), ColorClass::HB, kHB, tag);
    bld.edge(W1, v(h + 2, Side::R), ColorClass::HB, kHB, tag);
    for (Side s : {Side::L, Side::R}) {
        bld.edge(U0, r(1, s), ColorClass::HB, kHB, tag);
        bld.edge(U1, r(1, s), ColorClass::HB, kHB, tag);
        bld.edge(W0, r(h + 3, s), ColorClass::HB, kHB, tag);
        bld.edge(W1, r(h + 3, s), ColorClass::HB, kHB, tag);
    }

    for (long j = 2; j <= h + 1; ++j) {
        bld.edge(b(j, Side::L), v(j, Side::L), ColorClass::BPrime, kStair, tag);
        bld.edge(b(j, Side::R), v(j, Side::R), ColorClass::BPrime, kStair, tag);
    }
}

void append_frame(Builder& bld, int n, long h) {
    if (n < 1 || h < 1) throw Error("build_frame: need n >= 1, h >= 1");
    PhaseTag tag{PhaseTag::Frame, 0, 0};
    auto BL = VertexId::frame(FrameCorner::BL);
    auto TL = VertexId::frame(FrameCorner::TL);
    auto TR = VertexId::frame(FrameCorner::TR);
    auto BR = VertexId::frame(FrameCorner::BR);
    for (const auto& v : {BL, TL, TR, BR}) bld.vertex(v, tag);
    for (int i = 1; i <= n; ++i) {
        bld.vertex(VertexId::corner(i, CornerKind::u0), tag); // x_0^i, no-op when gadget exists
        bld.vertex(VertexId::corner(i, CornerKind::w0), tag); // x_1^i
    }
    for (long j = 2; j <= h + 2; ++j) {
        bld.vertex(VertexId::r(0, static_cast<int>(j), Side::R), tag);
        bld.vertex(VertexId::r(n + 1, static_cast<int>(j), Side::L), tag);
    }

    auto hb = [&](const VertexId& u, const VertexId& v) {
        bld.edge(u, v, ColorClass::HB, kHB, tag);
    };
    // bottom side, subdivided by x_0^i
    hb(BL, VertexId::corner(1, CornerKind::u0));
    for (int i = 1; i < n; ++i)
        hb(VertexId::corner(i, CornerKind::u0), VertexId::corner(i + 1, CornerKind::u0));
    hb(VertexId::corner(n, CornerKind::u0), BR);
    // top side, subdivided by x_1^i
    hb(TL, VertexId::corner(1, CornerKind::w0));
    for (int i = 1; i < n; ++i)
        hb(VertexId::corner(i, CornerKind::w0), VertexId::corner(i + 1, CornerKind::w0));
    hb(VertexId::corner(n, CornerKind::w0), TR);
    // original cycle's left and right edges stay as-is
    hb(BL, TL);
    hb(TR, BR);
    // second, subdivided sides
    hb(BL, VertexId::r(0, 2, Side::R));
    for (long j = 2; j <= h + 1; ++j)
        hb(VertexId::r(0, static_cast<int>(j), Side::R), VertexId::r(0, static_cast<int>(j) + 1, Side::R));
    hb(VertexId::r(0, static_cast<int>(h) + 2, Side::R), TL);
    hb(BR, VertexId::r(n + 1, 2, Side::L));
    for (long j = 2; j <= h + 1; ++j)
        hb(VertexId::r(n + 1, static_cast<int>(j), Side::L), VertexId::r(n + 1, static_cast<int>(j) + 1, Side::L));
    hb(VertexId::r(n + 1, static_cast<int>(h) + 2, Side::L), TR);
}

void append_stairs(Builder& bld, int n, long h) {
    PhaseTag tag{PhaseTag::Stairs, 0, 0};
    for (int i = 1; i <= n + 1; ++i)
        for (long j = 2; j <= h + 2; ++j)
            bld.edge(VertexId::r(i - 1, static_cast<int>(j), Side::R),
                     VertexId::r(i, static_cast<int>(j), Side::L), ColorClass::RPrime, kStair, tag);
}

void append_cells(Builder& bld, const CnfInstance& inst) {
    const int n = inst.num_vars;
    const int l = inst.num_clauses();
    const long h = inst.height();
    for (int i = 1; i <= n; ++i) {
        PhaseTag load{PhaseTag::Loading, i, 0};
        auto v = [&](long j, Side s) { return VertexId::v(i, static_cast<int>(j), s); };
        auto lb_path = [&](const std::vector<VertexId>& pts, PhaseTag t) {
            for (std::size_t k = 1; k < pts.size(); ++k)
                bld.edge(pts[k - 1], pts[k], ColorClass::LB, kLB, t);
        };

        // below all cells: v_{1,N}, v_{2,P}, v_{2,N}, ..., v_{i,N}, v_{i+1,P}
        std::vector<VertexId> below{v(1, Side::R)};
        for (long t = 2; t <= i; ++t) {
            below.push_back(v(t, Side::L));
            below.push_back(v(t, Side::R));
        }
        below.push_back(v(i + 1, Side::L));
        lb_path(below, load);

        // above all cells: v_{4l+i-1,N}, v_{4l+i,P}, ..., v_{h+1,N}, v_{h+2,P}
        std::vector<VertexId> above{v(4L * l + i - 1, Side::R)};
        for (long t = 4L * l + i; t <= h + 1; ++t) {
            above.push_back(v(t, Side::L));
            above.push_back(v(t, Side::R));
        }
        above.push_back(v(h + 2, Side::L));
        lb_path(above, load);

        // separators between consecutive cells
        for (int jj = 1; jj <= l - 1; ++jj) {
            long a = 4L * jj + i;
            lb_path({v(a - 1, Side::R), v(a, Side::L), v(a, Side::R), v(a + 1, Side::L)}, load);
        }

        for (int j = 1; j <= l; ++j) {
            PhaseTag cell{PhaseTag::Cell, i, j};
            const long c = cell_center_row(i, j);
            bld.edge(v(c - 1, Side::L), v(c - 1, Side::R), ColorClass::LB, kLB, cell);
            bld.edge(v(c + 1, Side::L), v(c + 1, Side::R), ColorClass::LB, kLB, cell);
            switch (cell_type(inst, i, j)) {
                case CellType::Pos:
                    bld.edge(v(c - 1, Side::L), v(c, Side::R), ColorClass::C, kC, cell);
                    bld.edge(v(c, Side::R), v(c, Side::L), ColorClass::C, kC, cell);
                    bld.edge(v(c, Side::L), v(c + 1, Side::R), ColorClass::C, kC, cell);
                    break;
                case CellType::Neg:
                    bld.edge(v(c - 1, Side::R), v(c, Side::L), ColorClass::C, kC, cell);
                    bld.edge(v(c, Side::L), v(c, Side::R), ColorClass::C, kC, cell);
                    bld.edge(v(c, Side::R), v(c + 1, Side::L), ColorClass::C, kC, cell);
                    break;
                case CellType::Neut:
                    bld.edge(v(c, Side::L), v(c, Side::R), ColorClass::LB, kLB, cell);
                    bld.edge(v(c - 1, Side::L), v(c, Side::R), ColorClass::C, kC, cell);
                    bld.edge(v(c, Side::R), v(c + 1, Side::L), ColorClass::C, kC, cell);
                    break;
            }
        }
    }
}

void append_clause_edges(Builder& bld, int l, int n) {
    for (int j = 1; j <= l; ++j) {
        PhaseTag tag{PhaseTag::Clause, 0, j};
        auto cl = VertexId::clause_end(j, Side::L);
        auto cr = VertexId::clause_end(j, Side::R);
        bld.subdivide(VertexId::r(0, 4 * j - 2, Side::R), VertexId::r(0, 4 * j - 1, Side::R), cl,
                      tag);
        bld.subdivide(VertexId::r(n + 1, 4 * j + n - 1, Side::L),
                      VertexId::r(n + 1, 4 * j + n, Side::L), cr, tag);
        bld.edge(cl, cr, ColorClass::G, kG, tag);
    }
}

} // namespace

ReductionGraph build_var_gadget(int i, long h) {
    Builder bld;
    append_var_gadget(bld, i, h);
    return bld.finalize(nullptr);
}

ReductionGraph build_frame(int n, long h) {
    Builder bld;
    append_frame(bld, n, h);
    return bld.finalize(nullptr);
}

ReductionGraph assemble_frame_with_gadgets(int n, long h) {
    Builder bld;
    for (int i = 1; i <= n; ++i) append_var_gadget(bld, i, h);
    append_frame(bld, n, h);
    append_stairs(bld, n, h);
    return bld.finalize(nullptr);
}

ReductionGraph load_cells(const ReductionGraph& g_prime, const CnfInstance& inst) {
    Builder bld;
    bld.import(g_prime);
    append_cells(bld, inst);
    return bld.finalize(nullptr);
}

ReductionGraph add_clause_edges(const ReductionGraph& g, int l, int n) {
    Builder bld;
    bld.import(g);
    append_clause_edges(bld, l, n);
    return bld.finalize(nullptr);
}

ReductionResult reduce(const CnfInstance& inst) {
    const int n = inst.num_vars;
    const int l = inst.num_clauses();
    if (n < 1 || l < 1) throw Error("reduce: need n, l >= 1");
    const long h = inst.height();

    Builder bld;
    for (int i = 1; i <= n; ++i) append_var_gadget(bld, i, h);
    append_frame(bld, n, h);
    append_stairs(bld, n, h);
    append_cells(bld, inst);
    append_clause_edges(bld, l, n);

    ReductionResult res;
    res.graph = bld.finalize(&res.trace);

    GraphMetadata meta;
    meta.n = n;
    meta.l = l;
    meta.h = h;
    const long long m = static_cast<long long>(res.graph.num_edges());
    meta.omega = m * m;
    KParts k = compute_k(n, l);
    meta.k_sym = k.sym;
    meta.k_offset = k.offset;
    meta.k_value = k.value(meta.omega);
    res.graph.metadata = meta;

    // construction invariants
    std::string bad = audit_weight_colors(res.graph);
    if (!bad.empty()) throw Error("reduce: weight-color audit failed: " + bad);
    BigInt bound = meta.k_sym.max_coeff();
    for (const Edge& e : res.graph.edges()) bound = std::max(bound, e.weight.max_coeff());
    if (bound >= meta.omega)
        throw Error("reduce: coefficient bound violated (max coefficient " + bound.str() +
                    " >= omega " + std::to_string(meta.omega) + ")");
    std::size_t traced = 0;
    for (const auto& [tag, man] : res.trace.phases) traced += man.edges.size();
    if (traced != res.graph.num_edges()) throw Error("reduce: trace does not partition E(G)");
    return res;
}

std::string audit_weight_colors(const ReductionGraph& g) {
    for (const Edge& e : g.edges()) {
        WeightPoly want;
        switch (e.color) {
            case ColorClass::R:
            case ColorClass::B: {
                // row j of the lower endpoint determines the adjustment
                const VertexId& lo = e.u.b < e.v.b ? e.u : e.v;
                const VertexId& hi = e.u.b < e.v.b ? e.v : e.u;
                if (lo.kind != hi.kind || lo.a != hi.a || lo.c != hi.c || hi.b != lo.b + 1)
                    return "edge " + std::to_string(e.id) + ": vertical " + color_name(e.color) +
                           " edge must join consecutive rows of one path";
                want = e.color == ColorClass::R ? g_weight(lo.b) : s_weight(lo.b);
                break;
            }
            default: want = color_class_weight(e.color); break;
        }
        if (e.weight != want)
            return "edge " + std::to_string(e.id) + " (" + e.u.to_string() + ", " +
                   e.v.to_string() + "): weight " + e.weight.to_string() + " does not match color " +
                   color_name(e.color);
    }
    return {};
}

} // namespace cf
