#include "crossing_forge/analysis.hpp"

#include <sstream>

namespace cf {

WeightPoly a_of_h(long h) {
    if (h < 0) throw Error("a_of_h: h must be >= 0");
    BigInt c4 = 0;
    for (long j = 2; j <= h + 1; ++j) c4 += BigInt(j) * (j + 1);
    for (long j = 1; j <= h + 1; ++j) c4 += BigInt(j) * (j + 2);
    WeightPoly p = WeightPoly::monomial(2 * h + 1, 7);
    p += WeightPoly::monomial(c4, 4);
    return p;
}

IdentityReport check_induction_identities(long h_max) {
    if (h_max < 1) throw Error("check_induction_identities: h_max must be >= 1");
    IdentityReport rep;
    rep.h_max = h_max;
    const WeightPoly w3 = WeightPoly::omega_power(3);
    const WeightPoly w4 = WeightPoly::omega_power(4);

    auto fail = [&](long h, long j, const std::string& what) {
        if (rep.first_failure.empty())
            rep.first_failure =
                "h=" + std::to_string(h) + " j=" + std::to_string(j) + ": " + what;
    };

    for (long h = 1; h <= h_max; ++h) {
        WeightPoly rhs = a_of_h(h + 1).checked_sub(a_of_h(h));
        // case (i): the new R'-edge crosses the B path above b_{h+2,P}
        for (long j = 1; j <= h + 2; ++j) {
            WeightPoly lhs = w3 * s_weight(h + 2) + w3 * g_weight(j) +
                             (w3 * s_weight(h + 2).checked_sub(s_weight(h + 1))).scaled(h + 2 - j);
            Ordering ord = lhs.lex_compare(rhs);
            if (ord == Ordering::Less) fail(h, j, "case (i) falls below A(h+1)-A(h)");
            if ((ord == Ordering::Equal) != (j == h + 2))
                fail(h, j, "case (i) equality exactly at j=h+2 violated");
            // factored margin identity
            BigInt margin = BigInt(2) * h * h + 11 * h + 18 + BigInt(h + 4 - j) * (h - j);
            WeightPoly factored = WeightPoly::monomial(2, 7) + WeightPoly::monomial(margin, 4);
            if (lhs != factored) fail(h, j, "case (i) factored form mismatch");
            ++rep.cases_checked;
        }
        // case (ii): the new B'-edge crosses the R path above r_{h+3,L}
        WeightPoly rhs2 = rhs + w4;
        for (long j = 1; j <= h + 1; ++j) {
            WeightPoly lhs = w3 * g_weight(h + 3) + w3 * s_weight(j) +
                             (w3 * g_weight(h + 3).checked_sub(g_weight(h + 2))).scaled(h + 1 - j);
            Ordering ord = lhs.lex_compare(rhs2);
            if (ord == Ordering::Less) fail(h, j, "case (ii) falls below A(h+1)-A(h)+w^4");
            if ((ord == Ordering::Equal) != (j == h + 1))
                fail(h, j, "case (ii) equality exactly at j=h+1 violated");
            BigInt margin = BigInt(2) * h * h + 11 * h + 18 + BigInt(h + 4 - j) * (h - j);
            WeightPoly factored = WeightPoly::monomial(2, 7) + WeightPoly::monomial(margin, 4);
            if (lhs != factored) fail(h, j, "case (ii) factored form mismatch");
            ++rep.cases_checked;
        }
    }
    rep.pass = rep.first_failure.empty();
    return rep;
}

bool StairPlacement::is_alternating() const {
    for (std::size_t k = 0; k < bprime_cross.size(); ++k)
        if (bprime_cross[k] != static_cast<int>(k) + 2) return false; // row j crosses g_j
    for (std::size_t k = 0; k < rprime_cross.size(); ++k)
        if (rprime_cross[k] != static_cast<int>(k) + 1) return false; // row j crosses s_{j-1}
    return true;
}

WeightPoly placement_cost(const StairPlacement& p) {
    const WeightPoly w3 = WeightPoly::omega_power(3);
    WeightPoly total;
    for (int beta : p.bprime_cross) total += w3 * g_weight(beta);
    for (int rho : p.rprime_cross) total += w3 * s_weight(rho);
    return total;
}

bool placement_consistent(const StairPlacement& p) {
    const long h = p.h;
    if (static_cast<long>(p.bprime_cross.size()) != std::max(h, 0L)) return false;
    if (static_cast<long>(p.rprime_cross.size()) != h + 1) return false;
    for (std::size_t k = 0; k < p.bprime_cross.size(); ++k) {
        int beta = p.bprime_cross[k];
        if (beta < 1 || beta > h + 2) return false;
        if (k > 0 && beta < p.bprime_cross[k - 1]) return false;
    }
    for (std::size_t k = 0; k < p.rprime_cross.size(); ++k) {
        int rho = p.rprime_cross[k];
        if (rho < 1 || rho > h + 1) return false;
        if (k > 0 && rho < p.rprime_cross[k - 1]) return false;
    }
    // non-interleaving: B' at row j is below R' at row j' on the B side
    // (j <= rho_{j'}) iff it is below on the R side (beta_j < j')
    for (long j = 2; j <= h + 1; ++j)
        for (long jp = 2; jp <= h + 2; ++jp) {
            int beta = p.bprime_cross[static_cast<std::size_t>(j) - 2];
            int rho = p.rprime_cross[static_cast<std::size_t>(jp) - 2];
            if ((j <= rho) != (beta < jp)) return false;
        }
    return true;
}

StairPlacement alternating_placement(long h) {
    StairPlacement p;
    p.h = h;
    for (long j = 2; j <= h + 1; ++j) p.bprime_cross.push_back(static_cast<int>(j));
    for (long j = 2; j <= h + 2; ++j) p.rprime_cross.push_back(static_cast<int>(j) - 1);
    return p;
}

PlacementSearch brute_force_min_placement(long h) {
    if (h < 0) throw Error("brute_force_min_placement: h must be >= 0");
    if (h > 8) throw Error("brute_force_min_placement: guard exceeded (h <= 8)");
    // A consistent placement is exactly an interleaving of the two stair
    // families in their fixed row orders (the vertical order in which the
    // curves cross the strip); the crossing indices follow from how many
    // stairs of the other family lie below.
    const long nb = h;      // B' stairs, rows 2..h+1
    const long nr = h + 1;  // R' stairs, rows 2..h+2
    const long total = nb + nr;

    PlacementSearch out;
    std::vector<int> slot(static_cast<std::size_t>(total), 0); // 1 where a B' sits
    // enumerate bitmasks of size total with nb ones, ascending
    std::vector<long> positions(static_cast<std::size_t>(nb));
    for (long k = 0; k < nb; ++k) positions[static_cast<std::size_t>(k)] = k;

    auto emit = [&](const std::vector<long>& pos) {
        std::fill(slot.begin(), slot.end(), 0);
        for (long p : pos) slot[static_cast<std::size_t>(p)] = 1;
        StairPlacement pl;
        pl.h = h;
        int b_cnt = 0, r_cnt = 0;
        for (long s = 0; s < total; ++s) {
            if (slot[static_cast<std::size_t>(s)]) {
                pl.bprime_cross.push_back(r_cnt + 1);
                ++b_cnt;
            } else {
                pl.rprime_cross.push_back(b_cnt + 1);
                ++r_cnt;
            }
        }
        ++out.placements_searched;
        WeightPoly cost = placement_cost(pl);
        if (out.minimizers.empty()) {
            out.min_cost = cost;
            out.minimizers.push_back(std::move(pl));
            return;
        }
        Ordering ord = cost.lex_compare(out.min_cost);
        if (ord == Ordering::Less) {
            out.min_cost = cost;
            out.minimizers.clear();
            out.minimizers.push_back(std::move(pl));
        } else if (ord == Ordering::Equal) {
            out.minimizers.push_back(std::move(pl));
        }
    };

    if (nb == 0) {
        emit({});
        return out;
    }
    // next-combination enumeration
    while (true) {
        emit(positions);
        long k = nb - 1;
        while (k >= 0 && positions[static_cast<std::size_t>(k)] == total - nb + k) --k;
        if (k < 0) break;
        ++positions[static_cast<std::size_t>(k)];
        for (long t = k + 1; t < nb; ++t)
            positions[static_cast<std::size_t>(t)] = positions[static_cast<std::size_t>(t) - 1] + 1;
    }
    return out;
}

} // namespace cf
