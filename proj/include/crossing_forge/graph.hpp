#pragma once

#include "crossing_forge/weights.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cf {

// ---------------------------------------------------------------------
// Structured vertex identities. Every auditor and decomposition addresses
// vertices by these labels, never by positional index.
// ---------------------------------------------------------------------
enum class VertexKind : std::uint8_t {
    FrameCorner, // u^{BL}, u^{TL}, u^{TR}, u^{BR}
    RVertex,     // r^i_{j,L/R}; i = 0 and i = n+1 are the frame sides
    BVertex,     // b^i_{j,P/N}
    LBVertex,    // v^i_{j,P/N}
    Corner,      // u_0^i, u_1^i, w_0^i, w_1^i (u_0 = x_0, w_0 = x_1)
    ClauseEnd,   // c_{j,L/R}
    Subdivision, // sub[parent edge id, ordinal]
};

enum class FrameCorner : std::uint8_t { BL, TL, TR, BR };
enum class Side : std::uint8_t { L, R };         // also P = L, N = R for b/v vertices
enum class CornerKind : std::uint8_t { u0, u1, w0, w1 };

struct VertexId {
    VertexKind kind = VertexKind::FrameCorner;
    std::int32_t a = 0; // gadget i / clause j / parent edge id
    std::int32_t b = 0; // row j / ordinal
    std::int32_t c = 0; // side / corner selector

    auto operator<=>(const VertexId&) const = default;

    static VertexId frame(FrameCorner w);
    static VertexId r(int i, int j, Side s);
    static VertexId b_(int i, int j, Side pn);
    static VertexId v(int i, int j, Side pn);
    static VertexId corner(int i, CornerKind which);
    static VertexId clause_end(int j, Side s);
    static VertexId subdivision(std::uint32_t parent_edge, int ordinal);

    std::string to_string() const; // e.g. "r[2,3,L]", "corner[1,u0]", "frame[BL]"
    static VertexId parse(const std::string& label);
};

struct Edge {
    std::uint32_t id = 0;
    VertexId u, v;
    ColorClass color = ColorClass::HB;
    WeightPoly weight;

    bool connects(const VertexId& x, const VertexId& y) const {
        return (u == x && v == y) || (u == y && v == x);
    }
};

// ---------------------------------------------------------------------
// Labeled weighted multigraph with the reduction's metadata.
// ---------------------------------------------------------------------
struct GraphMetadata {
    int n = 0;
    int l = 0;
    long h = 0;
    long long omega = 0;
    WeightPoly k_sym;   // nonnegative symbolic part of k
    long k_offset = 0;  // k = k_sym + k_offset; -1 for generated instances
    BigInt k_value;     // eval(k_sym, omega) + k_offset
};

class ReductionGraph {
public:
    // vertices in insertion order; lookup by label
    const std::vector<VertexId>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    bool has_vertex(const VertexId& v) const { return index_.count(v) != 0; }
    int vertex_index(const VertexId& v) const;
    void add_vertex(const VertexId& v); // throws on duplicate
    std::uint32_t add_edge(const VertexId& u, const VertexId& v, ColorClass color,
                           WeightPoly weight);
    const Edge& edge(std::uint32_t id) const;

    /// Adjacency lists over vertex indices (parallel edges collapse).
    std::vector<std::vector<int>> adjacency() const;
    /// Components of the graph with `removed` vertices deleted.
    int count_components(const std::set<VertexId>& removed = {}) const;

    std::optional<GraphMetadata> metadata;

private:
    std::vector<VertexId> vertices_;
    std::vector<Edge> edges_;
    std::map<VertexId, int> index_;
};

// ---------------------------------------------------------------------
// Decompositions.
// ---------------------------------------------------------------------
struct PathDecomposition {
    std::vector<std::vector<VertexId>> bags; // in path order
    int width() const;
};

struct TreeDecomposition {
    std::vector<std::vector<VertexId>> bags;
    std::vector<std::pair<int, int>> tree_edges; // indices into bags
    int width() const;
};

/// Outcome of validate_decomposition: valid(width) or a report naming the
/// first failing vertex/edge. Violations are values, not errors.
struct DecompositionCheck {
    bool valid = false;
    int width = -1;
    std::string violation;
};

DecompositionCheck validate_decomposition(const ReductionGraph& g, const PathDecomposition& d);
DecompositionCheck validate_decomposition(const ReductionGraph& g, const TreeDecomposition& d);

/// Exact path-width via the vertex-separation subset DP. Guard |V| <= 20.
int exact_pathwidth(const ReductionGraph& g);

/// For each maximal family of parallel edges, subdivides all but one once.
/// Half-edges inherit the parent's color and weight; metadata carries over.
ReductionGraph subdivide_parallel(const ReductionGraph& g);

/// True if some two edges share an endpoint pair.
bool has_parallel_edges(const ReductionGraph& g);

struct UnitMultigraph {
    std::vector<VertexId> vertices;
    std::vector<std::pair<VertexId, VertexId>> edges; // unit weight each
};

/// Expands every weight-t edge into t = eval(weight, omega) parallel unit
/// edges. Guard: total expanded edge count <= 10^6 (always exceeded at the
/// true omega of generated instances).
UnitMultigraph expand_weights(const ReductionGraph& g, long long omega_override);

// ---------------------------------------------------------------------
// File formats (versioned, line oriented).
// ---------------------------------------------------------------------
std::string graph_to_string(const ReductionGraph& g);
ReductionGraph graph_from_string(const std::string& text);

std::string path_decomposition_to_string(const PathDecomposition& d);
std::string tree_decomposition_to_string(const TreeDecomposition& d);
/// Reads either kind; exactly one of the results is set.
std::pair<std::optional<PathDecomposition>, std::optional<TreeDecomposition>>
decomposition_from_string(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace cf
