#include "crossing_forge/drawing.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cf {

// ---------------------------------------------------------------------
// Crossing enumeration
// ---------------------------------------------------------------------
namespace {

struct Seg {
    Point a, b;
    std::uint32_t edge;
    double minx, maxx, miny, maxy; // loose prefilter box
};

double approx(const Rational& r) {
    return boost::multiprecision::numerator(r).convert_to<double>() /
           boost::multiprecision::denominator(r).convert_to<double>();
}

std::vector<Seg> collect_segments(const ReductionGraph& g, const Drawing& d) {
    std::vector<Seg> segs;
    for (const Edge& e : g.edges()) {
        auto it = d.polylines.find(e.id);
        if (it == d.polylines.end())
            throw Error("drawing: no polyline for edge " + std::to_string(e.id));
        const auto& pts = it->second;
        if (pts.size() < 2) throw Error("drawing: polyline of edge " + std::to_string(e.id) +
                                        " has fewer than 2 points");
        for (std::size_t k = 1; k < pts.size(); ++k) {
            Seg s;
            s.a = pts[k - 1];
            s.b = pts[k];
            s.edge = e.id;
            double ax = approx(s.a.x), bx = approx(s.b.x);
            double ay = approx(s.a.y), by = approx(s.b.y);
            const double pad = 1e-6;
            s.minx = std::min(ax, bx) - pad - 1e-9 * std::abs(std::min(ax, bx));
            s.maxx = std::max(ax, bx) + pad + 1e-9 * std::abs(std::max(ax, bx));
            s.miny = std::min(ay, by) - pad - 1e-9 * std::abs(std::min(ay, by));
            s.maxy = std::max(ay, by) + pad + 1e-9 * std::abs(std::max(ay, by));
            segs.push_back(std::move(s));
        }
    }
    return segs;
}

struct IntersectionScan {
    // per unordered edge pair (e1 < e2): distinct intersection points
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::set<Point>> points;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> degenerate_pairs;
};

IntersectionScan scan_intersections(const ReductionGraph& g, const Drawing& d) {
    auto segs = collect_segments(g, d);
    IntersectionScan scan;
    for (std::size_t p = 0; p < segs.size(); ++p) {
        for (std::size_t q = p + 1; q < segs.size(); ++q) {
            const Seg& s = segs[p];
            const Seg& t = segs[q];
            if (s.edge == t.edge) continue;
            if (s.maxx < t.minx || t.maxx < s.minx || s.maxy < t.miny || t.maxy < s.miny) continue;
            auto res = intersect_segments(s.a, s.b, t.a, t.b);
            if (res.kind == SegmentIntersection::Kind::None) continue;
            std::pair<std::uint32_t, std::uint32_t> key{std::min(s.edge, t.edge),
                                                        std::max(s.edge, t.edge)};
            if (res.kind == SegmentIntersection::Kind::CollinearOverlap) {
                scan.degenerate_pairs.push_back(key);
                continue;
            }
            scan.points[key].insert(res.point);
        }
    }
    return scan;
}

bool edges_adjacent(const Edge& a, const Edge& b) {
    return a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
}

std::set<Point> shared_vertex_points(const ReductionGraph&, const Drawing& d, const Edge& a,
                                     const Edge& b) {
    std::set<Point> pts;
    for (const VertexId* v : {&a.u, &a.v})
        if (*v == b.u || *v == b.v) pts.insert(d.vertex_points.at(*v));
    return pts;
}

} // namespace

CrossingSet count_crossings(const ReductionGraph& g, const Drawing& d) {
    auto scan = scan_intersections(g, d);
    if (!scan.degenerate_pairs.empty()) {
        auto [e1, e2] = scan.degenerate_pairs.front();
        throw Error("count_crossings: edges " + std::to_string(e1) + " and " + std::to_string(e2) +
                    " share a collinear segment");
    }
    CrossingSet out;
    for (const auto& [key, pts] : scan.points) {
        const Edge& e1 = g.edge(key.first);
        const Edge& e2 = g.edge(key.second);
        if (edges_adjacent(e1, e2)) continue; // adjacency violations belong to the audit
        WeightPoly cost = e1.weight * e2.weight;
        for (const Point& p : pts) {
            out.crossings.push_back(Crossing{key.first, key.second, p, cost});
            out.total += cost;
        }
    }
    return out;
}

GoodDrawingReport audit_good_drawing(const ReductionGraph& g, const Drawing& d) {
    GoodDrawingReport rep;
    IntersectionScan scan;
    try {
        scan = scan_intersections(g, d);
    } catch (const Error& e) {
        rep.violations.push_back(e.what());
        return rep;
    }
    for (auto [e1, e2] : scan.degenerate_pairs)
        rep.violations.push_back("edges " + std::to_string(e1) + " and " + std::to_string(e2) +
                                 " share a collinear segment");

    std::map<Point, std::set<std::uint32_t>> concurrences;
    for (const auto& [key, pts] : scan.points) {
        const Edge& e1 = g.edge(key.first);
        const Edge& e2 = g.edge(key.second);
        if (edges_adjacent(e1, e2)) {
            auto allowed = shared_vertex_points(g, d, e1, e2);
            for (const Point& p : pts)
                if (!allowed.count(p))
                    rep.violations.push_back("adjacent edges " + std::to_string(key.first) +
                                             " and " + std::to_string(key.second) + " cross");
        } else {
            if (pts.size() > 1)
                rep.violations.push_back("edges " + std::to_string(key.first) + " and " +
                                         std::to_string(key.second) + " cross " +
                                         std::to_string(pts.size()) + " times");
            for (const Point& p : pts) {
                concurrences[p].insert(key.first);
                concurrences[p].insert(key.second);
            }
        }
    }
    for (const auto& [p, edges] : concurrences)
        if (edges.size() >= 3)
            rep.violations.push_back("point (" + p.to_string() + ") lies on " +
                                     std::to_string(edges.size()) + " edge interiors");
    rep.good = rep.violations.empty();
    return rep;
}

// ---------------------------------------------------------------------
// Cell types read back from the graph
// ---------------------------------------------------------------------
namespace {

struct EdgeLookup {
    std::map<std::pair<VertexId, VertexId>, std::vector<const Edge*>> by_pair;

    explicit EdgeLookup(const ReductionGraph& g) {
        for (const Edge& e : g.edges()) {
            auto key = e.u < e.v ? std::make_pair(e.u, e.v) : std::make_pair(e.v, e.u);
            by_pair[key].push_back(&e);
        }
    }
    const Edge* find(const VertexId& u, const VertexId& v, ColorClass color) const {
        auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
        auto it = by_pair.find(key);
        if (it == by_pair.end()) return nullptr;
        for (const Edge* e : it->second)
            if (e->color == color) return e;
        return nullptr;
    }
};

const GraphMetadata& require_meta(const ReductionGraph& g) {
    if (!g.metadata) throw Error("graph has no reduction metadata");
    return *g.metadata;
}

} // namespace

CellType read_cell_type(const ReductionGraph& g, int i, int j) {
    EdgeLookup look(g);
    const long c = cell_center_row(i, j);
    auto vp = [&](long row, Side s) { return VertexId::v(i, static_cast<int>(row), s); };
    if (look.find(vp(c, Side::L), vp(c, Side::R), ColorClass::LB)) return CellType::Neut;
    if (look.find(vp(c - 1, Side::L), vp(c, Side::R), ColorClass::C) &&
        look.find(vp(c, Side::L), vp(c, Side::R), ColorClass::C) &&
        look.find(vp(c, Side::L), vp(c + 1, Side::R), ColorClass::C))
        return CellType::Pos;
    if (look.find(vp(c - 1, Side::R), vp(c, Side::L), ColorClass::C) &&
        look.find(vp(c, Side::L), vp(c, Side::R), ColorClass::C) &&
        look.find(vp(c, Side::R), vp(c + 1, Side::L), ColorClass::C))
        return CellType::Neg;
    throw Error("read_cell_type: cell (" + std::to_string(i) + ", " + std::to_string(j) +
                ") matches no known pattern");
}

bool plan_entry_valid(const ReductionGraph& g, const Assignment& tau, int j, int m) {
    switch (read_cell_type(g, m, j)) {
        case CellType::Pos: return tau.value(m);
        case CellType::Neg: return !tau.value(m);
        case CellType::Neut: return false;
    }
    return false;
}

RoutingPlan derive_plan(const ReductionGraph& g, const Assignment& tau) {
    const GraphMetadata& meta = require_meta(g);
    RoutingPlan plan;
    for (int j = 1; j <= meta.l; ++j) {
        int found = 0;
        for (int m = 1; m <= meta.n && !found; ++m)
            if (plan_entry_valid(g, tau, j, m)) found = m;
        if (!found)
            throw PlanRefusal(j, "clause " + std::to_string(j) +
                                     " is not satisfied by the assignment; no jump gadget exists");
        plan.jump_gadget.push_back(found);
    }
    return plan;
}

// ---------------------------------------------------------------------
// Canonical drawing
// ---------------------------------------------------------------------
namespace {

// Grid constants. Rows scale by 4 in y; bands are 28 apart in x with
// columns at offsets -8 (B), -6 (R-left), -4 (LB), +4, +6, +8 mirrored,
// and the frame sides 20 outside the outer band centers.
struct Grid {
    int n;
    long h;
    std::vector<bool> flipped; // index i-1

    long band_x(int i) const { return 28L * (i - 1); }
    long left_x() const { return -20; }
    long right_x() const { return band_x(n) + 20; }
    long top_y() const { return 4 * h + 16; }

    // side sign: -1 drawn left of center, +1 right
    int sgn(int i, Side pn) const {
        int s = pn == Side::L ? -1 : +1; // P drawn left when unflipped
        return flipped[static_cast<std::size_t>(i) - 1] ? -s : s;
    }

    Point point(const VertexId& v) const {
        switch (v.kind) {
            case VertexKind::FrameCorner:
                switch (static_cast<FrameCorner>(v.c)) {
                    case FrameCorner::BL: return {Rational(left_x()), Rational(0)};
                    case FrameCorner::TL: return {Rational(left_x()), Rational(top_y())};
                    case FrameCorner::TR: return {Rational(right_x()), Rational(top_y())};
                    case FrameCorner::BR: return {Rational(right_x()), Rational(0)};
                }
                break;
            case VertexKind::Corner: {
                long X = band_x(v.a);
                switch (static_cast<CornerKind>(v.c)) {
                    case CornerKind::u0: return {Rational(X), Rational(0)};
                    case CornerKind::u1: return {Rational(X), Rational(2)};
                    case CornerKind::w0: return {Rational(X), Rational(top_y())};
                    case CornerKind::w1: return {Rational(X), Rational(top_y() - 2)};
                }
                break;
            }
            case VertexKind::RVertex: {
                // frame sides i = 0 / n+1 live on the frame columns
                if (v.a == 0) return {Rational(left_x()), Rational(4L * v.b)};
                if (v.a == n + 1) return {Rational(right_x()), Rational(4L * v.b)};
                long X = band_x(v.a);
                int sx = v.c == 0 ? -1 : +1; // L always left
                if (v.b == 1) return {Rational(X + 2 * sx), Rational(1)};
                if (v.b == h + 3) return {Rational(X + 2 * sx), Rational(4 * h + 15)};
                return {Rational(X + 6 * sx), Rational(4L * v.b)};
            }
            case VertexKind::BVertex: {
                long X = band_x(v.a) + 8 * sgn(v.a, static_cast<Side>(v.c));
                if (v.b == 1) return {Rational(X), Rational(1)};
                if (v.b == h + 2) return {Rational(X), Rational(4 * h + 15)};
                return {Rational(X), Rational(4L * v.b + 2)};
            }
            case VertexKind::LBVertex: {
                long X = band_x(v.a) + 4 * sgn(v.a, static_cast<Side>(v.c));
                return {Rational(X), Rational(4L * v.b + 2)};
            }
            case VertexKind::ClauseEnd: {
                long j = v.a;
                if (static_cast<Side>(v.c) == Side::L)
                    return {Rational(left_x()), Rational(16 * j - 5)};
                return {Rational(right_x()), Rational(16 * j + 4 * n - 1)};
            }
            case VertexKind::Subdivision:
                throw Error("canonical drawing: graph contains subdivision vertices");
        }
        throw Error("canonical drawing: unplaceable vertex " + v.to_string());
    }
};

Point ip(long x, long y) { return Point{Rational(x), Rational(y)}; }

} // namespace

Drawing build_canonical_drawing(const ReductionGraph& g, const Assignment& tau,
                                const RoutingPlan& plan, bool forced) {
    const GraphMetadata& meta = require_meta(g);
    const int n = meta.n;
    const int l = meta.l;
    const long h = meta.h;
    if (tau.num_vars() != n) throw Error("canonical drawing: assignment arity mismatch");
    if (static_cast<int>(plan.jump_gadget.size()) != l)
        throw Error("canonical drawing: plan arity mismatch");
    for (int j = 1; j <= l; ++j) {
        int m = plan.jump_gadget[static_cast<std::size_t>(j) - 1];
        if (m < 1 || m > n) throw Error("canonical drawing: jump gadget out of range");
        if (!forced && !plan_entry_valid(g, tau, j, m))
            throw PlanRefusal(j, "clause " + std::to_string(j) + ": jumping at gadget " +
                                     std::to_string(m) +
                                     " does not satisfy the clause under the assignment");
    }

    Grid grid;
    grid.n = n;
    grid.h = h;
    grid.flipped.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) grid.flipped[static_cast<std::size_t>(i) - 1] = !tau.value(i);

    Drawing d;
    for (const VertexId& v : g.vertices()) d.vertex_points[v] = grid.point(v);

    // stairs that dip under a clause edge's rise: (boundary, row) pairs
    std::set<std::pair<int, long>> dipped;
    for (int j = 1; j <= l; ++j) {
        int m = plan.jump_gadget[static_cast<std::size_t>(j) - 1];
        for (int b = 1; b <= n; ++b) {
            long c = cell_center_row(b, j);
            dipped.insert({b, b < m ? c : c + 1});
        }
    }

    for (const Edge& e : g.edges()) {
        std::vector<Point>& pl = d.polylines[e.id];
        // frame outer sides bulge outward; everything else but stairs and
        // clause edges is a straight segment
        if (e.color == ColorClass::HB && e.u.kind == VertexKind::FrameCorner &&
            e.v.kind == VertexKind::FrameCorner) {
            std::pair<int, int> key{std::min(e.u.c, e.v.c), std::max(e.u.c, e.v.c)};
            if (key == std::pair<int, int>{static_cast<int>(FrameCorner::BL),
                                           static_cast<int>(FrameCorner::TL)}) {
                pl = {ip(grid.left_x(), 0), ip(grid.left_x() - 4, 2),
                      ip(grid.left_x() - 4, grid.top_y() - 2), ip(grid.left_x(), grid.top_y())};
                continue;
            }
            if (key == std::pair<int, int>{static_cast<int>(FrameCorner::TR),
                                           static_cast<int>(FrameCorner::BR)}) {
                pl = {ip(grid.right_x(), 0), ip(grid.right_x() + 4, 2),
                      ip(grid.right_x() + 4, grid.top_y() - 2), ip(grid.right_x(), grid.top_y())};
                continue;
            }
        }
        if (e.color == ColorClass::RPrime) {
            // stair r^{b}_{j,R} -- r^{b+1}_{j,L} lives in the gap after band b
            int boundary = std::min(e.u.a, e.v.a);
            long row = e.u.b;
            Point a = d.vertex_points.at(e.u);
            Point b = d.vertex_points.at(e.v);
            if (b.x < a.x) std::swap(a, b);
            if (dipped.count({boundary, row})) {
                pl = {a, Point{a.x + 4, a.y - 3}, Point{b.x - 4, b.y - 3}, b};
            } else {
                pl = {a, b};
            }
            continue;
        }
        if (e.color == ColorClass::G) {
            const int j = e.u.kind == VertexKind::ClauseEnd ? e.u.a : e.v.a;
            const int m = plan.jump_gadget[static_cast<std::size_t>(j) - 1];
            pl.push_back(ip(grid.left_x(), 16L * j - 5));
            for (int i = 1; i <= n; ++i) {
                const long X = grid.band_x(i);
                const long c = cell_center_row(i, j);
                if (i == m) pl.insert(pl.end(), {ip(X - 3, 4 * c - 1), ip(X + 5, 4 * c + 3)});
                const long exit_y = i < m ? 4 * c - 1 : 4 * c + 3;
                const long next_y = i < m ? 4 * c + 3 : 4 * c + 7;
                pl.insert(pl.end(), {ip(X + 9, exit_y), ip(X + 11, next_y)});
            }
            pl.push_back(ip(grid.right_x(), 16L * j + 4 * n - 1));
            continue;
        }
        pl = {d.vertex_points.at(e.u), d.vertex_points.at(e.v)};
    }
    return d;
}

Assignment extract_assignment(const ReductionGraph& g, const Drawing& d) {
    const GraphMetadata& meta = require_meta(g);
    Assignment tau(meta.n);
    for (int i = 1; i <= meta.n; ++i) {
        int sign = 0; // -1: pos left, +1: pos right
        for (long j = 1; j <= meta.h + 2; ++j) {
            auto p = d.vertex_points.find(VertexId::v(i, static_cast<int>(j), Side::L));
            auto q = d.vertex_points.find(VertexId::v(i, static_cast<int>(j), Side::R));
            if (p == d.vertex_points.end() || q == d.vertex_points.end())
                throw Error("extract_assignment: missing LB vertex of gadget " + std::to_string(i));
            if (p->second.x == q->second.x)
                throw Error("extract_assignment: LB paths of gadget " + std::to_string(i) +
                            " are not horizontally separated at row " + std::to_string(j));
            int s = p->second.x < q->second.x ? -1 : +1;
            if (sign == 0) sign = s;
            if (sign != s)
                throw Error("extract_assignment: LB paths of gadget " + std::to_string(i) +
                            " cross each other");
        }
        tau.set(i, sign < 0);
    }
    return tau;
}

// ---------------------------------------------------------------------
// Necessary-condition audit
// ---------------------------------------------------------------------
const AuditLayer& NecessaryReport::layer(const std::string& name) const {
    for (const AuditLayer& l : layers)
        if (l.name == name) return l;
    throw Error("audit: no layer '" + name + "'");
}

NecessaryReport audit_necessary_conditions(const ReductionGraph& g, const Drawing& d) {
    const GraphMetadata& meta = require_meta(g);
    NecessaryReport rep;
    rep.crossings = count_crossings(g, d);

    auto is_stair = [](ColorClass c) { return c == ColorClass::RPrime || c == ColorClass::BPrime; };
    auto is_vertical = [](ColorClass c) { return c == ColorClass::R || c == ColorClass::B; };

    // HB: no crossing involves a heavy frame edge
    {
        AuditLayer layer{"HB", true, ""};
        for (const Crossing& x : rep.crossings.crossings) {
            if (g.edge(x.e1).color == ColorClass::HB || g.edge(x.e2).color == ColorClass::HB) {
                layer.pass = false;
                layer.detail = "edges " + std::to_string(x.e1) + "/" + std::to_string(x.e2) +
                               " cross an HB edge";
                break;
            }
        }
        rep.layers.push_back(layer);
    }

    // PAIRS: {R,B} x {R',B'}, {R',B'} x {R',B'}, or any crossing involving G
    {
        AuditLayer layer{"PAIRS", true, ""};
        for (const Crossing& x : rep.crossings.crossings) {
            ColorClass c1 = g.edge(x.e1).color, c2 = g.edge(x.e2).color;
            bool ok = (c1 == ColorClass::G || c2 == ColorClass::G) ||
                      (is_vertical(c1) && is_stair(c2)) || (is_stair(c1) && is_vertical(c2)) ||
                      (is_stair(c1) && is_stair(c2));
            if (ok && (c1 == ColorClass::G || c2 == ColorClass::G))
                ok = c1 != ColorClass::HB && c2 != ColorClass::HB;
            if (!ok) {
                layer.pass = false;
                layer.detail = "crossing of " + color_name(c1) + " edge " + std::to_string(x.e1) +
                               " with " + color_name(c2) + " edge " + std::to_string(x.e2);
                break;
            }
        }
        rep.layers.push_back(layer);
    }

    // ALT: staircase alternation
    {
        AuditLayer layer{"ALT", true, ""};
        std::map<std::uint32_t, std::vector<std::uint32_t>> stair_hits; // stair -> crossed verticals
        for (const Crossing& x : rep.crossings.crossings) {
            ColorClass c1 = g.edge(x.e1).color, c2 = g.edge(x.e2).color;
            if (c1 == ColorClass::BPrime && c2 == ColorClass::R) stair_hits[x.e1].push_back(x.e2);
            if (c2 == ColorClass::BPrime && c1 == ColorClass::R) stair_hits[x.e2].push_back(x.e1);
            if (c1 == ColorClass::RPrime && c2 == ColorClass::B) stair_hits[x.e1].push_back(x.e2);
            if (c2 == ColorClass::RPrime && c1 == ColorClass::B) stair_hits[x.e2].push_back(x.e1);
        }
        auto fail = [&](const std::string& msg) {
            if (layer.pass) {
                layer.pass = false;
                layer.detail = msg;
            }
        };
        for (const Edge& e : g.edges()) {
            if (e.color == ColorClass::BPrime) {
                auto hits = stair_hits[e.id];
                if (hits.size() != 1) {
                    fail("B' edge " + std::to_string(e.id) + " crosses " +
                         std::to_string(hits.size()) + " vertical R edges (want 1)");
                    continue;
                }
                const Edge& r = g.edge(hits[0]);
                long lo = std::min(r.u.b, r.v.b);
                if (lo == 1 || lo == meta.h + 2)
                    fail("B' edge " + std::to_string(e.id) +
                         " crosses the first or last edge of an R path");
            } else if (e.color == ColorClass::RPrime) {
                // boundary stairs pass one B path, interior stairs two
                int left_gadget = std::min(e.u.a, e.v.a);
                int expected = (left_gadget >= 1 ? 1 : 0) + (left_gadget + 1 <= meta.n ? 1 : 0);
                auto hits = stair_hits[e.id];
                std::set<int> gadgets;
                for (std::uint32_t id : hits) gadgets.insert(g.edge(id).u.a);
                if (static_cast<int>(hits.size()) != expected ||
                    static_cast<int>(gadgets.size()) != expected)
                    fail("R' edge " + std::to_string(e.id) + " crosses " +
                         std::to_string(hits.size()) + " vertical B edges (want one per adjacent "
                         "B path, " + std::to_string(expected) + " total)");
            }
        }
        rep.layers.push_back(layer);
    }

    // SIG: per clause edge and gadget, exactly 2 LB + 2 B + 2 R + 1 C
    {
        AuditLayer layer{"SIG", true, ""};
        std::map<std::pair<std::uint32_t, int>, std::map<ColorClass, int>> counts;
        std::set<std::uint32_t> g_edges;
        for (const Edge& e : g.edges())
            if (e.color == ColorClass::G) g_edges.insert(e.id);
        for (const Crossing& x : rep.crossings.crossings) {
            for (auto [ge, other] : {std::pair(x.e1, x.e2), std::pair(x.e2, x.e1)}) {
                if (!g_edges.count(ge)) continue;
                const Edge& o = g.edge(other);
                int gadget = o.u.a;
                if (gadget < 1 || gadget > meta.n) continue;
                counts[{ge, gadget}][o.color] += 1;
            }
        }
        for (std::uint32_t ge : g_edges) {
            for (int i = 1; i <= meta.n && layer.pass; ++i) {
                auto& c = counts[{ge, i}];
                if (c[ColorClass::LB] != 2 || c[ColorClass::B] != 2 || c[ColorClass::R] != 2 ||
                    c[ColorClass::C] != 1) {
                    layer.pass = false;
                    layer.detail = "G edge " + std::to_string(ge) + " crosses gadget " +
                                   std::to_string(i) + " in " + std::to_string(c[ColorClass::LB]) +
                                   " LB + " + std::to_string(c[ColorClass::B]) + " B + " +
                                   std::to_string(c[ColorClass::R]) + " R + " +
                                   std::to_string(c[ColorClass::C]) + " C (want 2+2+2+1)";
                }
            }
        }
        rep.layers.push_back(layer);
    }

    // BUDGET: eval(total) <= k_value
    {
        AuditLayer layer{"BUDGET", true, ""};
        BigInt total = rep.crossings.total.eval(meta.omega);
        if (total > meta.k_value) {
            layer.pass = false;
            layer.detail = "crossing total " + total.str() + " exceeds budget " +
                           meta.k_value.str();
        } else {
            layer.detail = "total " + total.str() + " <= k " + meta.k_value.str();
        }
        rep.layers.push_back(layer);
    }

    rep.all_pass = std::all_of(rep.layers.begin(), rep.layers.end(),
                               [](const AuditLayer& l) { return l.pass; });
    return rep;
}

// ---------------------------------------------------------------------
// SVG and the drawing file format
// ---------------------------------------------------------------------
namespace {
std::string svg_color(ColorClass c) {
    switch (c) {
        case ColorClass::HB: return "#7a4a12";
        case ColorClass::LB: return "#222222";
        case ColorClass::R: return "#c0392b";
        case ColorClass::RPrime: return "#e59866";
        case ColorClass::B: return "#1f4e9c";
        case ColorClass::BPrime: return "#7fa8e0";
        case ColorClass::C: return "#00a2a2";
        case ColorClass::G: return "#1e8f3e";
    }
    return "#000000";
}

// fixed-point decimal with 3 digits, integer arithmetic only
std::string svg_coord(const Rational& r, long scale, long offset) {
    BigInt num = (boost::multiprecision::numerator(r) * scale +
                  BigInt(offset) * boost::multiprecision::denominator(r)) *
                 1000;
    BigInt den = boost::multiprecision::denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt milli = num / den; // truncated
    std::string whole = BigInt(milli / 1000).str();
    std::string frac = BigInt(milli % 1000).str();
    return (neg ? "-" : "") + whole + "." + std::string(3 - frac.size(), '0') + frac;
}
} // namespace

std::string export_svg(const ReductionGraph& g, const Drawing& d, const SvgStyle& style) {
    // bounds
    bool any = false;
    Rational minx = 0, maxx = 0, miny = 0, maxy = 0;
    auto grow = [&](const Point& p) {
        if (!any) {
            minx = maxx = p.x;
            miny = maxy = p.y;
            any = true;
            return;
        }
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    };
    for (const auto& [v, p] : d.vertex_points) grow(p);
    for (const auto& [id, pl] : d.polylines)
        for (const Point& p : pl) grow(p);

    const long sc = style.scale;
    const long margin = 2 * sc;
    long offx = 0, offy = 0, w = 2 * margin, hh = 2 * margin;
    if (any) {
        offx = margin - static_cast<long>(approx(minx) * sc) + sc;
        offy = margin + static_cast<long>(approx(maxy) * sc) + sc;
        w = static_cast<long>((approx(maxx) - approx(minx)) * sc) + 2 * margin + 2 * sc;
        hh = static_cast<long>((approx(maxy) - approx(miny)) * sc) + 2 * margin + 2 * sc;
    }

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << hh
       << "\">\n";
    // y flips so the drawing appears with row 1 at the bottom
    for (const Edge& e : g.edges()) {
        auto it = d.polylines.find(e.id);
        if (it == d.polylines.end()) continue;
        os << "<polyline fill=\"none\" stroke=\"" << svg_color(e.color) << "\" stroke-width=\""
           << (e.color == ColorClass::HB ? 3 : e.color == ColorClass::LB ? 2 : 1)
           << "\" points=\"";
        bool first = true;
        for (const Point& p : it->second) {
            if (!first) os << " ";
            first = false;
            os << svg_coord(p.x, sc, offx) << "," << svg_coord(-p.y, sc, offy);
        }
        os << "\"/>\n";
    }
    for (const auto& [v, p] : d.vertex_points)
        os << "<circle cx=\"" << svg_coord(p.x, sc, offx) << "\" cy=\"" << svg_coord(-p.y, sc, offy)
           << "\" r=\"2\" fill=\"#000000\"><title>" << v.to_string() << "</title></circle>\n";
    if (style.mark_crossings) {
        for (const Crossing& x : count_crossings(g, d).crossings)
            os << "<circle cx=\"" << svg_coord(x.point.x, sc, offx) << "\" cy=\""
               << svg_coord(-x.point.y, sc, offy)
               << "\" r=\"3\" fill=\"none\" stroke=\"#ff00ff\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

namespace {
constexpr const char* kDrawingMagic = "crossing-forge-drawing v1";
}

std::string drawing_to_string(const Drawing& d) {
    std::ostringstream os;
    os << kDrawingMagic << "\n";
    for (const auto& [v, p] : d.vertex_points)
        os << "vertex " << v.to_string() << " " << rational_to_string(p.x) << " "
           << rational_to_string(p.y) << "\n";
    for (const auto& [id, pl] : d.polylines) {
        os << "polyline " << id;
        for (const Point& p : pl)
            os << " " << rational_to_string(p.x) << " " << rational_to_string(p.y);
        os << "\n";
    }
    return os.str();
}

Drawing drawing_from_string(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kDrawingMagic)
        throw Error("drawing file: missing magic header");
    Drawing d;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "vertex") {
            std::string label, xs, ys;
            if (!(ls >> label >> xs >> ys)) throw Error("drawing file: malformed vertex line");
            d.vertex_points[VertexId::parse(label)] =
                Point{rational_from_string(xs), rational_from_string(ys)};
        } else if (kw == "polyline") {
            std::uint32_t id;
            if (!(ls >> id)) throw Error("drawing file: malformed polyline line");
            std::vector<Point> pts;
            std::string xs, ys;
            while (ls >> xs >> ys)
                pts.push_back(Point{rational_from_string(xs), rational_from_string(ys)});
            if (pts.size() < 2) throw Error("drawing file: polyline needs at least 2 points");
            d.polylines[id] = std::move(pts);
        } else {
            throw Error("drawing file: unknown directive '" + kw + "'");
        }
    }
    return d;
}

} // namespace cf
