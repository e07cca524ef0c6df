#pragma once

#include "crossing_forge/graph.hpp"

#include <string>
#include <vector>

namespace cf {

// ---------------------------------------------------------------------
// Cop strategies (invisible-robber game).
// ---------------------------------------------------------------------
struct CopMove {
    enum class Kind { Place, Lift };
    Kind kind = Kind::Place;
    VertexId v;
};

struct CopStrategy {
    std::vector<CopMove> moves;
    int max_simultaneous() const;
};

struct MonotonicityReport {
    bool ok = false;
    std::string detail;
};

/// Replays the strategy against the contamination semantics: every vertex
/// starts contaminated, a landing cop clears its vertex, and a lift fails
/// if the freed vertex is reachable from the contaminated region through
/// cop-free vertices. The strategy must leave nothing contaminated.
MonotonicityReport check_monotone(const ReductionGraph& g, const CopStrategy& s);

// ---------------------------------------------------------------------
// Generic sweep engine for column graphs.
// ---------------------------------------------------------------------
struct SweepColumn {
    std::vector<std::pair<long, VertexId>> cells; // (level, vertex), strictly increasing levels
};

/// Column decomposition of the subgraph to sweep: consecutive cells of one
/// column are adjacent (the column induces a path); cross edges join
/// adjacent columns at level distance at most one; no two cross edges
/// between the same column pair interleave out of order.
struct SweepInput {
    std::vector<SweepColumn> columns;
    std::vector<std::pair<VertexId, VertexId>> cross_edges;
};

/// Throws on any violated SweepInput condition.
void validate_sweep_input(const ReductionGraph& g, const SweepInput& in);

/// Monotone bottom-up sweep with m+1 cops (m columns plus one pigeonhole
/// cop), starting from the columns' first cells and ending empty. A failure
/// to find an advanceable column is fatal.
CopStrategy sweep_strategy(const ReductionGraph& g, const SweepInput& in);

/// Bags are the cop sets sampled after every Place move.
PathDecomposition strategy_to_path_decomposition(const CopStrategy& s);

// ---------------------------------------------------------------------
// Instance decompositions (strategies of the width bound proof).
// ---------------------------------------------------------------------
/// 13-cop monotone invisible-robber strategy: 8 boundary cops, a 5-cop
/// sweep of the frame-side region, and per gadget a B/LB block sweep and
/// an R-pair corridor sweep.
CopStrategy instance_path_strategy(const ReductionGraph& g);

/// Path decomposition of width <= 12 (<= 13 after subdivide_parallel,
/// via a subdivision-aware lift of the same strategy).
PathDecomposition instance_path_decomposition(const ReductionGraph& g);

struct TreeBranch {
    std::string name;
    std::vector<VertexId> boundary;  // standing cops in every branch bag
    CopStrategy sweep;               // the region sweep
};

struct TreeBuild {
    TreeDecomposition tree;
    std::vector<TreeBranch> branches; // for the monotonicity recheck
};

/// Tree decomposition of width <= 9: a backbone of pair-moved 8-cop
/// frontiers with one branch per trapped region.
TreeBuild instance_tree_decomposition_full(const ReductionGraph& g);
TreeDecomposition instance_tree_decomposition(const ReductionGraph& g);

/// Inserts each subdivision vertex into a copy of a bag covering its
/// parent edge's endpoints; width grows by at most one.
PathDecomposition lift_decomposition_over_subdivisions(const ReductionGraph& subdivided,
                                                       const PathDecomposition& base);

} // namespace cf
