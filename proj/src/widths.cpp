#include "crossing_forge/widths.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cf {

int CopStrategy::max_simultaneous() const {
    int cur = 0, best = 0;
    for (const CopMove& m : moves) {
        cur += m.kind == CopMove::Kind::Place ? 1 : -1;
        best = std::max(best, cur);
    }
    return best;
}

MonotonicityReport check_monotone(const ReductionGraph& g, const CopStrategy& s) {
    MonotonicityReport rep;
    auto adj = g.adjacency();
    const int n = static_cast<int>(g.num_vertices());
    std::vector<bool> contaminated(static_cast<std::size_t>(n), true);
    std::vector<bool> cop(static_cast<std::size_t>(n), false);

    for (std::size_t step = 0; step < s.moves.size(); ++step) {
        const CopMove& m = s.moves[step];
        if (!g.has_vertex(m.v)) {
            rep.detail = "move " + std::to_string(step) + ": unknown vertex " + m.v.to_string();
            return rep;
        }
        const auto idx = static_cast<std::size_t>(g.vertex_index(m.v));
        if (m.kind == CopMove::Kind::Place) {
            if (cop[idx]) {
                rep.detail = "move " + std::to_string(step) + ": vertex " + m.v.to_string() +
                             " already occupied";
                return rep;
            }
            cop[idx] = true;
            contaminated[idx] = false;
        } else {
            if (!cop[idx]) {
                rep.detail = "move " + std::to_string(step) + ": lifting unoccupied vertex " +
                             m.v.to_string();
                return rep;
            }
            cop[idx] = false;
            // recontamination test: can the contaminated region reach the
            // freed vertex through cop-free vertices?
            std::vector<bool> seen(static_cast<std::size_t>(n), false);
            std::vector<int> stack{static_cast<int>(idx)};
            seen[idx] = true;
            bool reached = false;
            while (!stack.empty() && !reached) {
                int x = stack.back();
                stack.pop_back();
                for (int y : adj[static_cast<std::size_t>(x)]) {
                    auto uy = static_cast<std::size_t>(y);
                    if (cop[uy] || seen[uy]) continue;
                    if (contaminated[uy]) {
                        reached = true;
                        break;
                    }
                    seen[uy] = true;
                    stack.push_back(y);
                }
            }
            if (reached) {
                rep.detail = "move " + std::to_string(step) + ": lifting " + m.v.to_string() +
                             " recontaminates";
                return rep;
            }
        }
    }
    for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v)
        if (contaminated[v] && !cop[v]) {
            rep.detail = "vertex " + g.vertices()[v].to_string() + " never cleared";
            return rep;
        }
    rep.ok = true;
    return rep;
}

// ---------------------------------------------------------------------
// Sweep engine
// ---------------------------------------------------------------------
void validate_sweep_input(const ReductionGraph& g, const SweepInput& in) {
    std::set<std::pair<VertexId, VertexId>> gedges;
    for (const Edge& e : g.edges())
        gedges.insert(e.u < e.v ? std::make_pair(e.u, e.v) : std::make_pair(e.v, e.u));
    auto graph_has = [&](const VertexId& u, const VertexId& v) {
        return gedges.count(u < v ? std::make_pair(u, v) : std::make_pair(v, u)) != 0;
    };

    std::map<VertexId, std::pair<int, long>> where; // vertex -> (column, level)
    for (std::size_t c = 0; c < in.columns.size(); ++c) {
        const auto& cells = in.columns[c].cells;
        if (cells.empty()) throw Error("sweep: empty column " + std::to_string(c));
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k > 0 && cells[k].first <= cells[k - 1].first)
                throw Error("sweep: column levels not strictly increasing");
            if (!g.has_vertex(cells[k].second))
                throw Error("sweep: unknown vertex " + cells[k].second.to_string());
            if (k > 0 && !graph_has(cells[k - 1].second, cells[k].second))
                throw Error("sweep: column " + std::to_string(c) + " is not a path at " +
                            cells[k].second.to_string());
            if (!where.emplace(cells[k].second, std::make_pair(static_cast<int>(c), cells[k].first))
                     .second)
                throw Error("sweep: vertex in two columns");
        }
    }
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& [u, v] : in.cross_edges) {
        auto iu = where.find(u), iv = where.find(v);
        if (iu == where.end() || iv == where.end())
            throw Error("sweep: cross edge endpoint outside columns");
        if (!graph_has(u, v))
            throw Error("sweep: cross edge (" + u.to_string() + ", " + v.to_string() +
                        ") is not a graph edge");
        auto [cu, lu] = iu->second;
        auto [cv, lv] = iv->second;
        if (std::abs(cu - cv) != 1)
            throw Error("sweep: cross edge (" + u.to_string() + ", " + v.to_string() +
                        ") not between adjacent columns");
        if (std::labs(lu - lv) > 1)
            throw Error("sweep: cross edge (" + u.to_string() + ", " + v.to_string() +
                        ") spans more than one level");
        seen.insert(u < v ? std::make_pair(u, v) : std::make_pair(v, u));
    }
    // condition (c): no crossing pair between adjacent columns
    for (const auto& [u, v] : in.cross_edges) {
        auto [cu, lu] = where.at(u);
        auto [cv, lv] = where.at(v);
        if (lu == lv) continue;
        // candidate partner: same columns, levels swapped
        const VertexId* a = nullptr;
        const VertexId* b = nullptr;
        for (const auto& [lvl, vid] : in.columns[static_cast<std::size_t>(cu)].cells)
            if (lvl == lv) a = &vid;
        for (const auto& [lvl, vid] : in.columns[static_cast<std::size_t>(cv)].cells)
            if (lvl == lu) b = &vid;
        if (a && b) {
            auto key = *a < *b ? std::make_pair(*a, *b) : std::make_pair(*b, *a);
            if (seen.count(key))
                throw Error("sweep: crossing pair between (" + u.to_string() + ", " +
                            v.to_string() + ") and (" + a->to_string() + ", " + b->to_string() +
                            ")");
        }
    }
}

CopStrategy sweep_strategy(const ReductionGraph& g, const SweepInput& in) {
    validate_sweep_input(g, in);
    const int m = static_cast<int>(in.columns.size());

    std::map<VertexId, std::vector<VertexId>> cross; // within the swept subgraph
    for (const auto& [u, v] : in.cross_edges) {
        cross[u].push_back(v);
        cross[v].push_back(u);
    }

    CopStrategy strat;
    std::set<VertexId> occupied, cleared;
    auto place = [&](const VertexId& v) {
        strat.moves.push_back({CopMove::Kind::Place, v});
        occupied.insert(v);
        if (static_cast<int>(occupied.size()) > m + 1)
            throw Error("sweep: more than m+1 cops simultaneously");
    };
    auto lift = [&](const VertexId& v) {
        strat.moves.push_back({CopMove::Kind::Lift, v});
        occupied.erase(v);
        cleared.insert(v);
    };

    std::vector<std::size_t> cur(static_cast<std::size_t>(m), 0);
    for (int c = 0; c < m; ++c) place(in.columns[static_cast<std::size_t>(c)].cells[0].second);

    std::set<long> level_set;
    for (const auto& col : in.columns)
        for (const auto& [lvl, v] : col.cells) level_set.insert(lvl);
    std::vector<long> levels(level_set.begin(), level_set.end());

    for (long lvl : levels) {
        std::vector<int> pending;
        for (int c = 0; c < m; ++c) {
            const auto& cells = in.columns[static_cast<std::size_t>(c)].cells;
            std::size_t k = cur[static_cast<std::size_t>(c)];
            if (k + 1 < cells.size() && cells[k + 1].first == lvl)
                pending.push_back(c);
        }
        while (!pending.empty()) {
            bool advanced = false;
            for (std::size_t pi = 0; pi < pending.size(); ++pi) {
                int c = pending[pi];
                const auto& cells = in.columns[static_cast<std::size_t>(c)].cells;
                std::size_t k = cur[static_cast<std::size_t>(c)];
                const VertexId& from = cells[k].second;
                const VertexId& to = cells[k + 1].second;
                bool safe = true;
                auto it = cross.find(from);
                if (it != cross.end())
                    for (const VertexId& w : it->second)
                        if (w != to && !occupied.count(w) && !cleared.count(w)) {
                            safe = false;
                            break;
                        }
                if (!safe) continue;
                place(to);
                lift(from);
                cur[static_cast<std::size_t>(c)] = k + 1;
                pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pi));
                advanced = true;
                break;
            }
            if (!advanced)
                throw Error("sweep: no safe column to advance at level " + std::to_string(lvl) +
                            " (the column conditions would be violated)");
        }
    }
    // region swept; release the remaining cops
    for (int c = 0; c < m; ++c)
        lift(in.columns[static_cast<std::size_t>(c)].cells[cur[static_cast<std::size_t>(c)]].second);
    return strat;
}

PathDecomposition strategy_to_path_decomposition(const CopStrategy& s) {
    PathDecomposition d;
    std::set<VertexId> occupied;
    for (const CopMove& m : s.moves) {
        if (m.kind == CopMove::Kind::Place) {
            occupied.insert(m.v);
            d.bags.emplace_back(occupied.begin(), occupied.end());
        } else {
            occupied.erase(m.v);
        }
    }
    return d;
}

// ---------------------------------------------------------------------
// Instance strategies
// ---------------------------------------------------------------------
namespace {

struct InstanceShape {
    int n;
    int l;
    long h;

    VertexId r(int i, long j, Side s) const { return VertexId::r(i, static_cast<int>(j), s); }
    VertexId b(int i, long j, Side s) const { return VertexId::b_(i, static_cast<int>(j), s); }
    VertexId v(int i, long j, Side s) const { return VertexId::v(i, static_cast<int>(j), s); }
    VertexId corner(int i, CornerKind k) const { return VertexId::corner(i, k); }
    VertexId frame(FrameCorner f) const { return VertexId::frame(f); }

    std::vector<VertexId> left4() const {
        return {r(1, 1, Side::L), r(1, h + 3, Side::L), frame(FrameCorner::BL),
                frame(FrameCorner::TL)};
    }
    std::vector<VertexId> right4() const {
        return {r(n, 1, Side::R), r(n, h + 3, Side::R), frame(FrameCorner::BR),
                frame(FrameCorner::TR)};
    }
    VertexId u0_prev(int i) const {
        return i == 1 ? frame(FrameCorner::BL) : corner(i - 1, CornerKind::u0);
    }
    VertexId w0_prev(int i) const {
        return i == 1 ? frame(FrameCorner::TL) : corner(i - 1, CornerKind::w0);
    }

    // frame-side region: [R-left^1 | left side | right side | R-right^n];
    // the right columns' levels shift down by 6(n+1) so the clause edges
    // join equal levels. `with_endpoints` adds the 8 separator vertices as
    // column ends (used by the tree branches).
    SweepInput u0_sweep_input(const ReductionGraph& g, bool with_endpoints) const {
        SweepInput in;
        SweepColumn c1, c2, c3, c4;
        if (with_endpoints) c1.cells.push_back({6, r(1, 1, Side::L)});
        for (long j = 2; j <= h + 2; ++j) c1.cells.push_back({6 * j, r(1, j, Side::L)});
        if (with_endpoints) c1.cells.push_back({6 * (h + 3), r(1, h + 3, Side::L)});

        if (with_endpoints) c2.cells.push_back({6, frame(FrameCorner::BL)});
        {
            long next_clause = 1;
            for (long j = 2; j <= h + 2; ++j) {
                c2.cells.push_back({6 * j, r(0, j, Side::R)});
                if (next_clause <= l && j == 4 * next_clause - 2) {
                    c2.cells.push_back(
                        {24 * next_clause - 9,
                         VertexId::clause_end(static_cast<int>(next_clause), Side::L)});
                    ++next_clause;
                }
            }
        }
        if (with_endpoints) c2.cells.push_back({6 * (h + 3), frame(FrameCorner::TL)});

        const long shift = 6L * (n + 1);
        if (with_endpoints) c3.cells.push_back({6 - shift, frame(FrameCorner::BR)});
        {
            long next_clause = 1;
            for (long j = 2; j <= h + 2; ++j) {
                c3.cells.push_back({6 * j - shift, r(n + 1, j, Side::L)});
                if (next_clause <= l && j == 4 * next_clause + n - 1) {
                    c3.cells.push_back(
                        {24 * next_clause - 9,
                         VertexId::clause_end(static_cast<int>(next_clause), Side::R)});
                    ++next_clause;
                }
            }
        }
        if (with_endpoints) c3.cells.push_back({6 * (h + 3) - shift, frame(FrameCorner::TR)});

        if (with_endpoints) c4.cells.push_back({6 - shift, r(n, 1, Side::R)});
        for (long j = 2; j <= h + 2; ++j) c4.cells.push_back({6 * j - shift, r(n, j, Side::R)});
        if (with_endpoints) c4.cells.push_back({6 * (h + 3) - shift, r(n, h + 3, Side::R)});

        in.columns = {c1, c2, c3, c4};
        for (long j = 2; j <= h + 2; ++j) {
            in.cross_edges.push_back({r(0, j, Side::R), r(1, j, Side::L)});
            in.cross_edges.push_back({r(n, j, Side::R), r(n + 1, j, Side::L)});
        }
        for (int j = 1; j <= l; ++j)
            in.cross_edges.push_back(
                {VertexId::clause_end(j, Side::L), VertexId::clause_end(j, Side::R)});
        (void)g;
        return in;
    }

    // the B/LB block of gadget i: [B-pos | LB-pos | LB-neg | B-neg]
    SweepInput block_sweep_input(const ReductionGraph& g, int i) const {
        SweepInput in;
        SweepColumn bp, vp, vn, bn;
        for (long j = 1; j <= h + 2; ++j) {
            bp.cells.push_back({j, b(i, j, Side::L)});
            vp.cells.push_back({j, v(i, j, Side::L)});
            vn.cells.push_back({j, v(i, j, Side::R)});
            bn.cells.push_back({j, b(i, j, Side::R)});
        }
        in.columns = {bp, vp, vn, bn};
        // B' stairs plus every LB/C edge between the two LB columns
        for (long j = 2; j <= h + 1; ++j) {
            in.cross_edges.push_back({b(i, j, Side::L), v(i, j, Side::L)});
            in.cross_edges.push_back({b(i, j, Side::R), v(i, j, Side::R)});
        }
        for (const Edge& e : g.edges()) {
            if (e.u.kind == VertexKind::LBVertex && e.v.kind == VertexKind::LBVertex &&
                e.u.a == i && e.v.a == i && e.u.c != e.v.c)
                in.cross_edges.push_back({e.u, e.v});
        }
        return in;
    }

    // R-right^i and R-left^{i+1} corridor
    SweepInput pair_sweep_input(int i) const {
        SweepInput in;
        SweepColumn cr, cl;
        for (long j = 1; j <= h + 3; ++j) cr.cells.push_back({j, r(i, j, Side::R)});
        for (long j = 2; j <= h + 2; ++j) cl.cells.push_back({j, r(i + 1, j, Side::L)});
        in.columns = {cr, cl};
        for (long j = 2; j <= h + 2; ++j)
            in.cross_edges.push_back({r(i, j, Side::R), r(i + 1, j, Side::L)});
        return in;
    }
};

InstanceShape shape_of(const ReductionGraph& g) {
    if (!g.metadata) throw Error("widths: graph has no reduction metadata");
    return InstanceShape{g.metadata->n, g.metadata->l, g.metadata->h};
}

bool has_subdivisions(const ReductionGraph& g) {
    return std::any_of(g.vertices().begin(), g.vertices().end(), [](const VertexId& v) {
        return v.kind == VertexKind::Subdivision;
    });
}

} // namespace

CopStrategy instance_path_strategy(const ReductionGraph& g) {
    InstanceShape s = shape_of(g);
    CopStrategy strat;
    auto place = [&](const VertexId& v) { strat.moves.push_back({CopMove::Kind::Place, v}); };
    auto lift = [&](const VertexId& v) { strat.moves.push_back({CopMove::Kind::Lift, v}); };
    auto append = [&](const CopStrategy& sub) {
        strat.moves.insert(strat.moves.end(), sub.moves.begin(), sub.moves.end());
    };

    for (const VertexId& v : s.left4()) place(v);
    for (const VertexId& v : s.right4()) place(v);
    append(sweep_strategy(g, s.u0_sweep_input(g, false)));

    for (int i = 1; i <= s.n; ++i) {
        place(s.corner(i, CornerKind::u0));
        place(s.corner(i, CornerKind::u1));
        place(s.corner(i, CornerKind::w1));
        place(s.corner(i, CornerKind::w0));
        lift(s.r(i, 1, Side::L));
        lift(s.r(i, s.h + 3, Side::L));
        lift(s.u0_prev(i));
        lift(s.w0_prev(i));
        append(sweep_strategy(g, s.block_sweep_input(g, i)));
        if (i < s.n) {
            place(s.r(i + 1, 1, Side::L));
            place(s.r(i + 1, s.h + 3, Side::L));
            append(sweep_strategy(g, s.pair_sweep_input(i)));
        }
        lift(s.corner(i, CornerKind::u1));
        lift(s.corner(i, CornerKind::w1));
    }
    lift(s.corner(s.n, CornerKind::u0));
    lift(s.corner(s.n, CornerKind::w0));
    for (const VertexId& v : s.right4()) lift(v);
    return strat;
}

PathDecomposition instance_path_decomposition(const ReductionGraph& g) {
    if (has_subdivisions(g)) {
        // rebuild the unsubdivided base, decompose it, and lift
        ReductionGraph base;
        base.metadata = g.metadata;
        std::map<VertexId, std::vector<std::pair<VertexId, ColorClass>>> sub_nbrs;
        for (const VertexId& v : g.vertices())
            if (v.kind != VertexKind::Subdivision) base.add_vertex(v);
        for (const Edge& e : g.edges()) {
            if (e.u.kind == VertexKind::Subdivision)
                sub_nbrs[e.u].push_back({e.v, e.color});
            else if (e.v.kind == VertexKind::Subdivision)
                sub_nbrs[e.v].push_back({e.u, e.color});
            else
                base.add_edge(e.u, e.v, e.color, e.weight);
        }
        for (const auto& [sv, ends] : sub_nbrs) {
            if (ends.size() != 2)
                throw Error("widths: subdivision vertex " + sv.to_string() +
                            " does not have exactly two neighbors");
            base.add_edge(ends[0].first, ends[1].first, ends[0].second, WeightPoly::constant(1));
        }
        return lift_decomposition_over_subdivisions(g, instance_path_decomposition(base));
    }
    return strategy_to_path_decomposition(instance_path_strategy(g));
}

PathDecomposition lift_decomposition_over_subdivisions(const ReductionGraph& subdivided,
                                                       const PathDecomposition& base) {
    PathDecomposition out = base;
    for (const VertexId& sv : subdivided.vertices()) {
        if (sv.kind != VertexKind::Subdivision) continue;
        std::vector<VertexId> ends;
        for (const Edge& e : subdivided.edges()) {
            if (e.u == sv) ends.push_back(e.v);
            if (e.v == sv) ends.push_back(e.u);
        }
        if (ends.size() != 2)
            throw Error("lift: subdivision vertex " + sv.to_string() +
                        " does not have exactly two neighbors");
        bool placed = false;
        for (std::size_t t = 0; t < out.bags.size() && !placed; ++t) {
            const auto& bag = out.bags[t];
            if (std::find(bag.begin(), bag.end(), ends[0]) != bag.end() &&
                std::find(bag.begin(), bag.end(), ends[1]) != bag.end()) {
                std::vector<VertexId> nb = bag;
                nb.push_back(sv);
                out.bags.insert(out.bags.begin() + static_cast<std::ptrdiff_t>(t) + 1, nb);
                placed = true;
            }
        }
        if (!placed)
            throw Error("lift: no bag covers the parent edge of " + sv.to_string());
    }
    return out;
}

// ---------------------------------------------------------------------
// Tree decomposition
// ---------------------------------------------------------------------
namespace {

std::vector<VertexId> bag_union(std::vector<VertexId> a, const std::vector<VertexId>& b) {
    for (const VertexId& v : b)
        if (std::find(a.begin(), a.end(), v) == a.end()) a.push_back(v);
    std::sort(a.begin(), a.end());
    return a;
}

std::vector<VertexId> bag_minus(std::vector<VertexId> a, const std::vector<VertexId>& b) {
    a.erase(std::remove_if(a.begin(), a.end(),
                           [&](const VertexId& v) {
                               return std::find(b.begin(), b.end(), v) != b.end();
                           }),
            a.end());
    return a;
}

} // namespace

TreeBuild instance_tree_decomposition_full(const ReductionGraph& g) {
    InstanceShape s = shape_of(g);
    TreeBuild out;
    auto& bags = out.tree.bags;
    auto& tedges = out.tree.tree_edges;

    auto add_bag = [&](const std::vector<VertexId>& bag, int parent) {
        auto sorted = bag;
        std::sort(sorted.begin(), sorted.end());
        bags.push_back(sorted);
        int id = static_cast<int>(bags.size()) - 1;
        if (parent >= 0) tedges.push_back({parent, id});
        return id;
    };

    // a branch is a path of bags: boundary + cop set after each Place
    auto attach_branch = [&](int at, const std::string& name,
                             const std::vector<VertexId>& boundary, const CopStrategy& sweep) {
        int prev = at;
        std::set<VertexId> occupied;
        for (const CopMove& m : sweep.moves) {
            if (m.kind == CopMove::Kind::Place) {
                occupied.insert(m.v);
                std::vector<VertexId> bag(occupied.begin(), occupied.end());
                prev = add_bag(bag_union(bag, boundary), prev);
            } else {
                occupied.erase(m.v);
            }
        }
        out.branches.push_back(TreeBranch{name, boundary, sweep});
    };

    std::vector<VertexId> frontier = bag_union(s.left4(), s.right4());
    int cur = add_bag(frontier, -1);

    // frame-side region, trapped by the initial 8; the four top separator
    // vertices stand in every branch bag, the bottoms are the column starts
    std::vector<VertexId> tops = {s.r(1, s.h + 3, Side::L), s.frame(FrameCorner::TL),
                                  s.frame(FrameCorner::TR), s.r(s.n, s.h + 3, Side::R)};
    attach_branch(cur, "frame-region", tops, sweep_strategy(g, s.u0_sweep_input(g, true)));

    for (int i = 1; i <= s.n; ++i) {
        // pair moves toward the corners of gadget i
        std::vector<VertexId> t1 =
            bag_union(frontier, {s.corner(i, CornerKind::u0), s.corner(i, CornerKind::u1)});
        int id1 = add_bag(t1, cur);
        std::vector<VertexId> t2 = bag_union(
            bag_minus(t1, {s.r(i, 1, Side::L), s.u0_prev(i)}),
            {s.corner(i, CornerKind::w0), s.corner(i, CornerKind::w1)});
        int id2 = add_bag(t2, id1);
        frontier = bag_minus(t2, {s.r(i, s.h + 3, Side::L), s.w0_prev(i)});
        cur = add_bag(frontier, id2);

        std::vector<VertexId> corners = {s.corner(i, CornerKind::u0), s.corner(i, CornerKind::u1),
                                         s.corner(i, CornerKind::w0), s.corner(i, CornerKind::w1)};
        attach_branch(cur, "block[" + std::to_string(i) + "]", corners,
                      sweep_strategy(g, s.block_sweep_input(g, i)));

        if (i < s.n) {
            std::vector<VertexId> pi =
                bag_union(frontier, {s.r(i + 1, 1, Side::L), s.r(i + 1, s.h + 3, Side::L)});
            int idp = add_bag(pi, cur);
            std::vector<VertexId> corridor_boundary =
                bag_union(corners, {s.r(i + 1, 1, Side::L), s.r(i + 1, s.h + 3, Side::L)});
            attach_branch(idp, "corridor[" + std::to_string(i) + "]", corridor_boundary,
                          sweep_strategy(g, s.pair_sweep_input(i)));
            frontier = bag_minus(pi, {s.corner(i, CornerKind::u1), s.corner(i, CornerKind::w1)});
            cur = add_bag(frontier, idp);
        }
    }
    return out;
}

TreeDecomposition instance_tree_decomposition(const ReductionGraph& g) {
    return instance_tree_decomposition_full(g).tree;
}

} // namespace cf
