#pragma once

#include "crossing_forge/cnf.hpp"
#include "crossing_forge/geometry.hpp"
#include "crossing_forge/graph.hpp"
#include "crossing_forge/reduction.hpp"

#include <map>
#include <string>
#include <vector>

namespace cf {

// ---------------------------------------------------------------------
// Drawings: exact rational vertex points and per-edge polylines.
// ---------------------------------------------------------------------
struct Drawing {
    std::map<VertexId, Point> vertex_points;
    std::map<std::uint32_t, std::vector<Point>> polylines; // edge id -> bend points
};

struct Crossing {
    std::uint32_t e1 = 0, e2 = 0; // e1 < e2
    Point point;
    WeightPoly cost; // product of the two edge weights
};

struct CrossingSet {
    std::vector<Crossing> crossings;
    WeightPoly total;
};

/// Exact crossing enumeration over all non-adjacent edge pairs. Throws on
/// collinear shared segments (degenerate drawing); triple points are left
/// to audit_good_drawing.
CrossingSet count_crossings(const ReductionGraph& g, const Drawing& d);

struct GoodDrawingReport {
    bool good = false;
    std::vector<std::string> violations;
};

/// Checks (i) non-adjacent pairs cross at most once, (ii) adjacent edges
/// never cross, (iii) no point lies on three or more edge interiors.
GoodDrawingReport audit_good_drawing(const ReductionGraph& g, const Drawing& d);

// ---------------------------------------------------------------------
// Canonical drawings.
// ---------------------------------------------------------------------
/// For each clause j, the gadget m(j) where its edge jumps from the lower
/// to the upper half of the cell row.
struct RoutingPlan {
    std::vector<int> jump_gadget; // index j-1 -> m(j) in [1, n]
};

/// Thrown when a plan's jump gadget cannot satisfy its clause under the
/// assignment; this refusal is the unsat signal.
struct PlanRefusal : Error {
    int clause;
    PlanRefusal(int clause_, const std::string& what) : Error(what), clause(clause_) {}
};

/// Reads the cell type of clause j in gadget i off the graph's edges.
CellType read_cell_type(const ReductionGraph& g, int i, int j);

/// True when jumping at gadget m satisfies clause j under tau, i.e. the
/// cell is Pos with tau(m) true or Neg with tau(m) false.
bool plan_entry_valid(const ReductionGraph& g, const Assignment& tau, int j, int m);

/// Smallest valid jump gadget per clause; throws PlanRefusal if a clause
/// has none under tau.
RoutingPlan derive_plan(const ReductionGraph& g, const Assignment& tau);

/// Grid drawing following the construction figures: frame on an integer
/// bounding box, gadget i in column band i, flipped when tau(x_i) is
/// false, stairs in the unique optimal alternating pattern, clause edges
/// routed through their cells with one jump at plan.jump_gadget[j-1].
/// Refuses invalid plans unless `forced` (the forced variant routes the
/// cheapest traversal anyway and is the over-budget negative case).
Drawing build_canonical_drawing(const ReductionGraph& g, const Assignment& tau,
                                const RoutingPlan& plan, bool forced = false);

/// tau(x_i) = true iff the LB-pos path of gadget i is left of LB-neg,
/// compared by x-coordinate at matching rows. Errors if the two LB paths
/// cross each other.
Assignment extract_assignment(const ReductionGraph& g, const Drawing& d);

// ---------------------------------------------------------------------
// Necessary-condition auditor (layers HB, PAIRS, ALT, SIG, BUDGET).
// ---------------------------------------------------------------------
struct AuditLayer {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct NecessaryReport {
    std::vector<AuditLayer> layers;
    bool all_pass = false;
    CrossingSet crossings;

    const AuditLayer& layer(const std::string& name) const;
};

NecessaryReport audit_necessary_conditions(const ReductionGraph& g, const Drawing& d);

// ---------------------------------------------------------------------
// Formats.
// ---------------------------------------------------------------------
struct SvgStyle {
    int scale = 8;
    bool mark_crossings = false;
};

std::string export_svg(const ReductionGraph& g, const Drawing& d, const SvgStyle& style = {});

std::string drawing_to_string(const Drawing& d);
Drawing drawing_from_string(const std::string& text);

} // namespace cf
