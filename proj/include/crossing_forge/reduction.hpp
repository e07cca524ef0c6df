#pragma once

#include "crossing_forge/cnf.hpp"
#include "crossing_forge/graph.hpp"

#include <string>
#include <vector>

namespace cf {

enum class CellType { Pos, Neg, Neut };

/// Cell type of clause j in gadget i: Pos if x_i in C_j, Neg if ~x_i in C_j,
/// Neut otherwise.
CellType cell_type(const CnfInstance& inst, int i, int j);

/// Center row of the cell of clause j in gadget i: 4j + i - 2. The cell
/// spans rows [c-1, c+1].
inline long cell_center_row(int i, int j) { return 4L * j + i - 2; }

// ---------------------------------------------------------------------
// Construction trace: per-phase vertex/edge manifests partitioning E(G).
// ---------------------------------------------------------------------
struct Manifest {
    std::vector<VertexId> vertices;
    std::vector<std::uint32_t> edges;
};

struct ConstructionTrace {
    // tags: "gadget[i]", "frame", "stairs", "loading[i]", "cell[i,j]", "clause[j]"
    std::vector<std::pair<std::string, Manifest>> phases;
    bool parallel_edges_found = false;

    const Manifest& phase(const std::string& tag) const;
    std::string to_string() const;
};

/// k split into the nonnegative symbolic part and the integer offset
/// (Eq. giving k ends in +(w^2 - 1); the w^2 joins the symbolic part and
/// the -1 is kept as an explicit offset so WeightPoly stays nonnegative).
struct KParts {
    WeightPoly sym;
    long offset = -1;

    BigInt value(long long omega) const { return sym.eval(omega) + offset; }
};

/// Budget for the instance of size (n, l):
///   k = 2n(2h+1) w^7 + 2nl w^6 + 4nl w^4 + 2n sum_{j=2}^{h+1} j(j+1) w^4
///       + 2n sum_{j=1}^{h+1} j(j+2) w^4 + nl w^2 + (w^2 - 1),  h = 4l+n-2.
KParts compute_k(int n, int l);

// ---------------------------------------------------------------------
// Construction phases. Standalone builders return fragments with the
// spec'd vertex/edge sets; reduce() runs the full pipeline.
// ---------------------------------------------------------------------
ReductionGraph build_var_gadget(int i, long h);
ReductionGraph build_frame(int n, long h);
ReductionGraph assemble_frame_with_gadgets(int n, long h);
ReductionGraph load_cells(const ReductionGraph& g_prime, const CnfInstance& inst);
ReductionGraph add_clause_edges(const ReductionGraph& g, int l, int n);

struct ReductionResult {
    ReductionGraph graph;
    ConstructionTrace trace;
};

/// Full pipeline: gadgets, frame, stairs, cells, clause edges; then
/// omega = |E|^2, weights already symbolic, k from compute_k. Verifies the
/// construction invariants before returning.
ReductionResult reduce(const CnfInstance& inst);

/// Checks every edge's weight against its color class (with g_j/s_j
/// adjustments for R/B verticals read off the vertex labels). Returns an
/// empty string when consistent, else a description of the first mismatch.
std::string audit_weight_colors(const ReductionGraph& g);

} // namespace cf
