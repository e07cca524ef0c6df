#include "crossing_forge/graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace cf {

// ---------------------------------------------------------------------
// VertexId
// ---------------------------------------------------------------------
VertexId VertexId::frame(FrameCorner w) {
    return VertexId{VertexKind::FrameCorner, 0, 0, static_cast<std::int32_t>(w)};
}
VertexId VertexId::r(int i, int j, Side s) {
    return VertexId{VertexKind::RVertex, i, j, static_cast<std::int32_t>(s)};
}
VertexId VertexId::b_(int i, int j, Side pn) {
    return VertexId{VertexKind::BVertex, i, j, static_cast<std::int32_t>(pn)};
}
VertexId VertexId::v(int i, int j, Side pn) {
    return VertexId{VertexKind::LBVertex, i, j, static_cast<std::int32_t>(pn)};
}
VertexId VertexId::corner(int i, CornerKind which) {
    return VertexId{VertexKind::Corner, i, 0, static_cast<std::int32_t>(which)};
}
VertexId VertexId::clause_end(int j, Side s) {
    return VertexId{VertexKind::ClauseEnd, j, 0, static_cast<std::int32_t>(s)};
}
VertexId VertexId::subdivision(std::uint32_t parent_edge, int ordinal) {
    return VertexId{VertexKind::Subdivision, static_cast<std::int32_t>(parent_edge), ordinal, 0};
}

namespace {
const char* frame_names[] = {"BL", "TL", "TR", "BR"};
const char* corner_names[] = {"u0", "u1", "w0", "w1"};

std::string side_lr(std::int32_t c) { return c == 0 ? "L" : "R"; }
std::string side_pn(std::int32_t c) { return c == 0 ? "P" : "N"; }
} // namespace

std::string VertexId::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case VertexKind::FrameCorner: os << "frame[" << frame_names[c] << "]"; break;
        case VertexKind::RVertex: os << "r[" << a << "," << b << "," << side_lr(c) << "]"; break;
        case VertexKind::BVertex: os << "b[" << a << "," << b << "," << side_pn(c) << "]"; break;
        case VertexKind::LBVertex: os << "v[" << a << "," << b << "," << side_pn(c) << "]"; break;
        case VertexKind::Corner: os << "corner[" << a << "," << corner_names[c] << "]"; break;
        case VertexKind::ClauseEnd: os << "c[" << a << "," << side_lr(c) << "]"; break;
        case VertexKind::Subdivision: os << "sub[" << a << "," << b << "]"; break;
    }
    return os.str();
}

VertexId VertexId::parse(const std::string& label) {
    auto open = label.find('[');
    auto close = label.rfind(']');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw Error("VertexId: malformed label '" + label + "'");
    std::string head = label.substr(0, open);
    std::string body = label.substr(open + 1, close - open - 1);
    std::vector<std::string> parts;
    std::istringstream bs(body);
    std::string part;
    while (std::getline(bs, part, ',')) parts.push_back(part);

    auto want = [&](std::size_t k) {
        if (parts.size() != k) throw Error("VertexId: malformed label '" + label + "'");
    };
    auto num = [&](const std::string& s) {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw Error("VertexId: bad number in '" + label + "'");
        return v;
    };
    auto lr = [&](const std::string& s) {
        if (s == "L") return 0;
        if (s == "R") return 1;
        throw Error("VertexId: bad side in '" + label + "'");
    };
    auto pn = [&](const std::string& s) {
        if (s == "P") return 0;
        if (s == "N") return 1;
        throw Error("VertexId: bad side in '" + label + "'");
    };

    if (head == "frame") {
        want(1);
        for (int w = 0; w < 4; ++w)
            if (parts[0] == frame_names[w]) return frame(static_cast<FrameCorner>(w));
        throw Error("VertexId: bad frame corner '" + label + "'");
    }
    if (head == "r") {
        want(3);
        return r(num(parts[0]), num(parts[1]), static_cast<Side>(lr(parts[2])));
    }
    if (head == "b") {
        want(3);
        return b_(num(parts[0]), num(parts[1]), static_cast<Side>(pn(parts[2])));
    }
    if (head == "v") {
        want(3);
        return v(num(parts[0]), num(parts[1]), static_cast<Side>(pn(parts[2])));
    }
    if (head == "corner") {
        want(2);
        for (int w = 0; w < 4; ++w)
            if (parts[1] == corner_names[w])
                return corner(num(parts[0]), static_cast<CornerKind>(w));
        throw Error("VertexId: bad corner kind '" + label + "'");
    }
    if (head == "c") {
        want(2);
        return clause_end(num(parts[0]), static_cast<Side>(lr(parts[1])));
    }
    if (head == "sub") {
        want(2);
        return subdivision(static_cast<std::uint32_t>(num(parts[0])), num(parts[1]));
    }
    throw Error("VertexId: unknown label kind '" + label + "'");
}

// ---------------------------------------------------------------------
// ReductionGraph
// ---------------------------------------------------------------------
int ReductionGraph::vertex_index(const VertexId& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw Error("graph: unknown vertex " + v.to_string());
    return it->second;
}

void ReductionGraph::add_vertex(const VertexId& v) {
    if (has_vertex(v)) throw Error("graph: duplicate vertex " + v.to_string());
    index_[v] = static_cast<int>(vertices_.size());
    vertices_.push_back(v);
}

std::uint32_t ReductionGraph::add_edge(const VertexId& u, const VertexId& v, ColorClass color,
                                       WeightPoly weight) {
    if (u == v) throw Error("graph: self-loop at " + u.to_string());
    vertex_index(u);
    vertex_index(v);
    Edge e;
    e.id = static_cast<std::uint32_t>(edges_.size());
    e.u = u;
    e.v = v;
    e.color = color;
    e.weight = std::move(weight);
    edges_.push_back(std::move(e));
    return edges_.back().id;
}

const Edge& ReductionGraph::edge(std::uint32_t id) const {
    if (id >= edges_.size()) throw Error("graph: bad edge id " + std::to_string(id));
    return edges_[id];
}

std::vector<std::vector<int>> ReductionGraph::adjacency() const {
    std::vector<std::set<int>> adj(vertices_.size());
    for (const Edge& e : edges_) {
        int a = vertex_index(e.u), b = vertex_index(e.v);
        adj[a].insert(b);
        adj[b].insert(a);
    }
    std::vector<std::vector<int>> out(vertices_.size());
    for (std::size_t i = 0; i < adj.size(); ++i) out[i].assign(adj[i].begin(), adj[i].end());
    return out;
}

int ReductionGraph::count_components(const std::set<VertexId>& removed) const {
    auto adj = adjacency();
    std::vector<bool> gone(vertices_.size(), false);
    for (const VertexId& v : removed)
        if (has_vertex(v)) gone[static_cast<std::size_t>(vertex_index(v))] = true;
    std::vector<bool> seen(vertices_.size(), false);
    int comps = 0;
    for (std::size_t s = 0; s < vertices_.size(); ++s) {
        if (gone[s] || seen[s]) continue;
        ++comps;
        std::vector<int> stack{static_cast<int>(s)};
        seen[s] = true;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[static_cast<std::size_t>(x)]) {
                if (gone[static_cast<std::size_t>(y)] || seen[static_cast<std::size_t>(y)]) continue;
                seen[static_cast<std::size_t>(y)] = true;
                stack.push_back(y);
            }
        }
    }
    return comps;
}

// ---------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------
namespace {
int width_of(const std::vector<std::vector<VertexId>>& bags) {
    std::size_t m = 0;
    for (const auto& b : bags) m = std::max(m, b.size());
    return static_cast<int>(m) - 1;
}

DecompositionCheck check_decomposition(const ReductionGraph& g,
                                       const std::vector<std::vector<VertexId>>& bags,
                                       const std::vector<std::pair<int, int>>& tree_edges,
                                       bool is_path) {
    DecompositionCheck res;
    res.width = width_of(bags);
    const int nb = static_cast<int>(bags.size());

    // bag contents must be graph vertices
    for (int t = 0; t < nb; ++t)
        for (const VertexId& v : bags[static_cast<std::size_t>(t)])
            if (!g.has_vertex(v)) {
                res.violation = "bag " + std::to_string(t) + " contains unknown vertex " +
                                v.to_string();
                return res;
            }

    // occurrence lists
    std::map<VertexId, std::vector<int>> occ;
    for (int t = 0; t < nb; ++t)
        for (const VertexId& v : bags[static_cast<std::size_t>(t)]) occ[v].push_back(t);

    // (a) every vertex in some bag
    for (const VertexId& v : g.vertices())
        if (!occ.count(v)) {
            res.violation = "vertex " + v.to_string() + " occurs in no bag";
            return res;
        }

    // (b) every edge covered by some bag
    for (const Edge& e : g.edges()) {
        bool covered = false;
        const auto& where = occ[e.u];
        std::set<int> vu(where.begin(), where.end());
        for (int t : occ[e.v])
            if (vu.count(t)) {
                covered = true;
                break;
            }
        if (!covered) {
            res.violation = "edge (" + e.u.to_string() + ", " + e.v.to_string() + ") uncovered";
            return res;
        }
    }

    // (c) occurrences contiguous (path) / connected (tree)
    if (is_path) {
        for (auto& [v, ts] : occ) {
            for (std::size_t i = 1; i < ts.size(); ++i)
                if (ts[i] != ts[i - 1] + 1) {
                    res.violation = "vertex " + v.to_string() + " occurrence not contiguous (bags " +
                                    std::to_string(ts[i - 1]) + " and " + std::to_string(ts[i]) + ")";
                    return res;
                }
        }
    } else {
        // tree structure sanity
        std::vector<std::vector<int>> tadj(static_cast<std::size_t>(nb));
        for (auto [a, b] : tree_edges) {
            if (a < 0 || a >= nb || b < 0 || b >= nb) {
                res.violation = "tree edge references missing bag";
                return res;
            }
            tadj[static_cast<std::size_t>(a)].push_back(b);
            tadj[static_cast<std::size_t>(b)].push_back(a);
        }
        if (nb > 0 && static_cast<int>(tree_edges.size()) != nb - 1) {
            res.violation = "bag tree is not a tree (edge count)";
            return res;
        }
        // connectivity of the whole tree
        std::vector<bool> seen(static_cast<std::size_t>(nb), false);
        std::function<void(int)> dfs = [&](int x) {
            seen[static_cast<std::size_t>(x)] = true;
            for (int y : tadj[static_cast<std::size_t>(x)])
                if (!seen[static_cast<std::size_t>(y)]) dfs(y);
        };
        if (nb > 0) dfs(0);
        if (std::count(seen.begin(), seen.end(), true) != nb) {
            res.violation = "bag tree is not connected";
            return res;
        }
        for (auto& [v, ts] : occ) {
            std::set<int> in(ts.begin(), ts.end());
            std::vector<bool> vis(static_cast<std::size_t>(nb), false);
            std::vector<int> stack{ts[0]};
            vis[static_cast<std::size_t>(ts[0])] = true;
            int reached = 0;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                ++reached;
                for (int y : tadj[static_cast<std::size_t>(x)])
                    if (in.count(y) && !vis[static_cast<std::size_t>(y)]) {
                        vis[static_cast<std::size_t>(y)] = true;
                        stack.push_back(y);
                    }
            }
            if (reached != static_cast<int>(ts.size())) {
                res.violation = "vertex " + v.to_string() + " occurrence set not connected in tree";
                return res;
            }
        }
    }

    res.valid = true;
    return res;
}
} // namespace

int PathDecomposition::width() const { return width_of(bags); }
int TreeDecomposition::width() const { return width_of(bags); }

DecompositionCheck validate_decomposition(const ReductionGraph& g, const PathDecomposition& d) {
    return check_decomposition(g, d.bags, {}, true);
}

DecompositionCheck validate_decomposition(const ReductionGraph& g, const TreeDecomposition& d) {
    return check_decomposition(g, d.bags, d.tree_edges, false);
}

// ---------------------------------------------------------------------
// Exact path-width oracle (vertex separation number).
// ---------------------------------------------------------------------
int exact_pathwidth(const ReductionGraph& g) {
    const int n = static_cast<int>(g.num_vertices());
    if (n > 20) throw Error("exact_pathwidth: guard exceeded (|V| <= 20)");
    if (n == 0) return -1;
    auto adj = g.adjacency();
    std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int w : adj[static_cast<std::size_t>(v)]) nbr[static_cast<std::size_t>(v)] |= 1u << w;

    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::vector<std::uint8_t> best(static_cast<std::size_t>(full) + 1, 255);
    best[0] = 0;
    // boundary(S) = |{u in S : N(u) \ S nonempty}|
    auto boundary = [&](std::uint32_t S) {
        int b = 0;
        std::uint32_t rest = S;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            if (nbr[static_cast<std::size_t>(v)] & ~S) ++b;
        }
        return b;
    };
    for (std::uint32_t S = 1; S <= full; ++S) {
        int db = boundary(S);
        int m = 255;
        std::uint32_t rest = S;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            m = std::min(m, static_cast<int>(best[S & ~(1u << v)]));
        }
        best[S] = static_cast<std::uint8_t>(std::max(m, db));
    }
    return best[full];
}

// ---------------------------------------------------------------------
// Parallel edges
// ---------------------------------------------------------------------
namespace {
std::pair<VertexId, VertexId> norm_pair(const Edge& e) {
    return e.u < e.v ? std::make_pair(e.u, e.v) : std::make_pair(e.v, e.u);
}
} // namespace

bool has_parallel_edges(const ReductionGraph& g) {
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const Edge& e : g.edges())
        if (!seen.insert(norm_pair(e)).second) return true;
    return false;
}

ReductionGraph subdivide_parallel(const ReductionGraph& g) {
    std::map<std::pair<VertexId, VertexId>, int> count;
    ReductionGraph out;
    out.metadata = g.metadata;
    for (const VertexId& v : g.vertices()) out.add_vertex(v);
    for (const Edge& e : g.edges()) {
        int seen = count[norm_pair(e)]++;
        if (seen == 0) {
            out.add_edge(e.u, e.v, e.color, e.weight);
        } else {
            VertexId s = VertexId::subdivision(e.id, 1);
            out.add_vertex(s);
            out.add_edge(e.u, s, e.color, e.weight);
            out.add_edge(s, e.v, e.color, e.weight);
        }
    }
    return out;
}

UnitMultigraph expand_weights(const ReductionGraph& g, long long omega_override) {
    if (omega_override < 1) throw Error("expand_weights: omega must be >= 1");
    const BigInt limit = 1000000;
    BigInt total = 0;
    for (const Edge& e : g.edges()) {
        total += e.weight.eval(omega_override);
        if (total > limit)
            throw Error("expand_weights: guard exceeded (expanded edge count > 10^6)");
    }
    UnitMultigraph out;
    out.vertices = g.vertices();
    for (const Edge& e : g.edges()) {
        BigInt t = e.weight.eval(omega_override);
        for (BigInt k = 0; k < t; ++k) out.edges.emplace_back(e.u, e.v);
    }
    return out;
}

// ---------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------
namespace {
constexpr const char* kGraphMagic = "crossing-forge-graph v1";
constexpr const char* kDecompMagic = "crossing-forge-decomposition v1";

std::string coeffs_to_string(const std::vector<BigInt>& v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << "]";
    return os.str();
}

std::vector<BigInt> coeffs_from_string(const std::string& s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw Error("graph file: malformed coefficient array '" + s + "'");
    std::vector<BigInt> v;
    std::string body = s.substr(1, s.size() - 2);
    if (body.empty()) return v;
    std::istringstream bs(body);
    std::string part;
    while (std::getline(bs, part, ',')) v.emplace_back(part);
    return v;
}
} // namespace

std::string graph_to_string(const ReductionGraph& g) {
    std::ostringstream os;
    os << kGraphMagic << "\n";
    if (g.metadata) {
        const GraphMetadata& m = *g.metadata;
        os << "meta n " << m.n << "\n";
        os << "meta l " << m.l << "\n";
        os << "meta h " << m.h << "\n";
        os << "meta omega " << m.omega << "\n";
        os << "meta k_coeffs " << coeffs_to_string(m.k_sym.coeff_array()) << "\n";
        os << "meta k_offset " << m.k_offset << "\n";
        os << "meta k_value " << m.k_value << "\n";
    }
    for (const VertexId& v : g.vertices()) os << "vertex " << v.to_string() << "\n";
    for (const Edge& e : g.edges())
        os << "edge " << e.id << " " << e.u.to_string() << " " << e.v.to_string() << " "
           << color_name(e.color) << " " << coeffs_to_string(e.weight.coeff_array()) << "\n";
    return os.str();
}

ReductionGraph graph_from_string(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kGraphMagic)
        throw Error("graph file: missing magic header '" + std::string(kGraphMagic) + "'");
    ReductionGraph g;
    GraphMetadata meta;
    bool any_meta = false;
    std::uint32_t next_edge = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "meta") {
            std::string key, value;
            ls >> key >> value;
            any_meta = true;
            if (key == "n")
                meta.n = std::stoi(value);
            else if (key == "l")
                meta.l = std::stoi(value);
            else if (key == "h")
                meta.h = std::stol(value);
            else if (key == "omega")
                meta.omega = std::stoll(value);
            else if (key == "k_coeffs")
                meta.k_sym = WeightPoly::from_coeff_array(coeffs_from_string(value));
            else if (key == "k_offset")
                meta.k_offset = std::stol(value);
            else if (key == "k_value")
                meta.k_value = BigInt(value);
            else
                throw Error("graph file: unknown meta key '" + key + "'");
        } else if (kw == "vertex") {
            std::string label;
            ls >> label;
            g.add_vertex(VertexId::parse(label));
        } else if (kw == "edge") {
            std::uint32_t id;
            std::string su, sv, color, coeffs;
            if (!(ls >> id >> su >> sv >> color >> coeffs))
                throw Error("graph file: malformed edge line '" + line + "'");
            if (id != next_edge)
                throw Error("graph file: edge ids must be dense and ordered");
            ++next_edge;
            g.add_edge(VertexId::parse(su), VertexId::parse(sv), color_from_name(color),
                       WeightPoly::from_coeff_array(coeffs_from_string(coeffs)));
        } else {
            throw Error("graph file: unknown directive '" + kw + "'");
        }
    }
    if (any_meta) g.metadata = meta;
    return g;
}

namespace {
std::string bags_to_string(const std::vector<std::vector<VertexId>>& bags) {
    std::ostringstream os;
    for (std::size_t t = 0; t < bags.size(); ++t) {
        os << "bag " << t;
        for (const VertexId& v : bags[t]) os << " " << v.to_string();
        os << "\n";
    }
    return os.str();
}
} // namespace

std::string path_decomposition_to_string(const PathDecomposition& d) {
    std::ostringstream os;
    os << kDecompMagic << "\n" << "type path\n" << bags_to_string(d.bags);
    return os.str();
}

std::string tree_decomposition_to_string(const TreeDecomposition& d) {
    std::ostringstream os;
    os << kDecompMagic << "\n" << "type tree\n" << bags_to_string(d.bags);
    for (auto [a, b] : d.tree_edges) os << "treeedge " << a << " " << b << "\n";
    return os.str();
}

std::pair<std::optional<PathDecomposition>, std::optional<TreeDecomposition>>
decomposition_from_string(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kDecompMagic)
        throw Error("decomposition file: missing magic header");
    if (!std::getline(in, line)) throw Error("decomposition file: missing type line");
    bool is_path;
    if (line == "type path")
        is_path = true;
    else if (line == "type tree")
        is_path = false;
    else
        throw Error("decomposition file: bad type line '" + line + "'");

    std::vector<std::vector<VertexId>> bags;
    std::vector<std::pair<int, int>> tedges;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "bag") {
            std::size_t idx;
            ls >> idx;
            if (idx != bags.size()) throw Error("decomposition file: bags must be ordered");
            std::vector<VertexId> bag;
            std::string label;
            while (ls >> label) bag.push_back(VertexId::parse(label));
            bags.push_back(std::move(bag));
        } else if (kw == "treeedge") {
            int a, b;
            if (!(ls >> a >> b)) throw Error("decomposition file: malformed treeedge");
            tedges.emplace_back(a, b);
        } else {
            throw Error("decomposition file: unknown directive '" + kw + "'");
        }
    }
    if (is_path) {
        if (!tedges.empty()) throw Error("decomposition file: path type cannot carry tree edges");
        return {PathDecomposition{std::move(bags)}, std::nullopt};
    }
    return {std::nullopt, TreeDecomposition{std::move(bags), std::move(tedges)}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file '" + path + "'");
    out << content;
}

} // namespace cf
