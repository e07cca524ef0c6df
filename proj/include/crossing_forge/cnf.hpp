#pragma once

#include "crossing_forge/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cf {

struct Literal {
    int variable = 0; // in [1, num_vars]
    bool positive = true;

    int signed_value() const { return positive ? variable : -variable; }
    auto operator<=>(const Literal&) const = default;
};

/// One clause: a duplicate-free set of literals, stored sorted by variable.
/// A clause never contains both polarities of the same variable (the cell
/// encoding has no representation for x v ~x, so such input is rejected).
using Clause = std::vector<Literal>;

struct CnfInstance {
    int num_vars = 0;            // n >= 1
    std::vector<Clause> clauses; // l >= 1, order preserved

    int num_clauses() const { return static_cast<int>(clauses.size()); }
    /// Gadget height h = 4l + n - 2.
    long height() const { return 4L * num_clauses() + num_vars - 2; }

    bool operator==(const CnfInstance&) const = default;
};

/// Total assignment on variables [1, n].
struct Assignment {
    std::vector<bool> values; // index 0 unused

    explicit Assignment(int n = 0) : values(static_cast<std::size_t>(n) + 1, false) {}
    int num_vars() const { return static_cast<int>(values.size()) - 1; }
    bool value(int var) const { return values.at(static_cast<std::size_t>(var)); }
    void set(int var, bool v) { values.at(static_cast<std::size_t>(var)) = v; }

    bool satisfies(const Literal& lit) const { return value(lit.variable) == lit.positive; }
    bool satisfies(const Clause& clause) const;
    bool satisfies(const CnfInstance& inst) const;

    std::string to_string() const; // e.g. "TFFTT"
    static Assignment from_string(const std::string& s);

    bool operator==(const Assignment&) const = default;
};

/// Parses DIMACS CNF. Duplicate literals within a clause collapse silently;
/// clause order is preserved; literals are stored sorted by variable.
/// Rejects: malformed headers, out-of-range variables, empty clauses,
/// contradictory clauses (x and ~x), and instances with zero clauses.
CnfInstance parse_dimacs(const std::string& text);

std::string serialize_dimacs(const CnfInstance& inst);

/// Exhaustive SAT check, guard n <= 24. Returns the lexicographically first
/// satisfying assignment under (tau(x1), ..., tau(xn)) with False < True.
std::optional<Assignment> brute_force_sat(const CnfInstance& inst);

} // namespace cf
