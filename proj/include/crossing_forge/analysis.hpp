#pragma once

#include "crossing_forge/weights.hpp"

#include <string>
#include <vector>

namespace cf {

/// Minimum staircase cost for one R/B path pair of height h:
///   A(h) = (2h+1) w^7 + sum_{j=2}^{h+1} j(j+1) w^4 + sum_{j=1}^{h+1} j(j+2) w^4.
WeightPoly a_of_h(long h);

struct IdentityReport {
    bool pass = false;
    long h_max = 0;
    long cases_checked = 0;
    std::string first_failure;
};

/// Symbolically replays the height induction for all h in [1, h_max]:
/// case (i)  w^3 s_{h+2} + w^3 g_j + (h+2-j) w^3 (s_{h+2}-s_{h+1}) >= A(h+1)-A(h),
///           equality iff j = h+2;
/// case (ii) w^3 g_{h+3} + w^3 s_j + (h+1-j) w^3 (g_{h+3}-g_{h+2}) >= A(h+1)-A(h)+w^4,
///           equality iff j = h+1;
/// plus the factored margin identity
///   LHS = 2 w^7 + (2h^2+11h+18 + (h+4-j)(h-j)) w^4  (above A(h))
/// as an exact polynomial identity in both cases.
IdentityReport check_induction_identities(long h_max);

/// One R/B pair of height h: for each horizontal stair, the index of the
/// vertical edge of the opposite path it crosses. B' stairs exist for rows
/// [2, h+1] and cross R edges (indices [1, h+2]); R' stairs for rows
/// [2, h+2] cross B edges (indices [1, h+1]).
struct StairPlacement {
    long h = 0;
    std::vector<int> bprime_cross; // index (row-2) -> R edge index
    std::vector<int> rprime_cross; // index (row-2) -> B edge index

    bool is_alternating() const; // B' row j crosses g_j; R' row j crosses s_{j-1}
};

/// Cost of a placement: sum over stairs of w^3 times the crossed edge weight.
WeightPoly placement_cost(const StairPlacement& p);

/// Planarity consistency: crossing indices weakly monotone per family and
/// no two stairs interleave out of order.
bool placement_consistent(const StairPlacement& p);

StairPlacement alternating_placement(long h);

struct PlacementSearch {
    WeightPoly min_cost;
    std::vector<StairPlacement> minimizers; // deterministic order
    std::size_t placements_searched = 0;
};

/// Exhausts all planarity-consistent placements; guard h <= 8. The
/// first/last-edge condition is not assumed, it must emerge.
PlacementSearch brute_force_min_placement(long h);

} // namespace cf
