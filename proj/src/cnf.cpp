#include "crossing_forge/cnf.hpp"

#include <algorithm>
#include <sstream>

namespace cf {

bool Assignment::satisfies(const Clause& clause) const {
    return std::any_of(clause.begin(), clause.end(),
                       [&](const Literal& lit) { return satisfies(lit); });
}

bool Assignment::satisfies(const CnfInstance& inst) const {
    return std::all_of(inst.clauses.begin(), inst.clauses.end(),
                       [&](const Clause& c) { return satisfies(c); });
}

std::string Assignment::to_string() const {
    std::string s;
    for (int v = 1; v <= num_vars(); ++v) s += value(v) ? 'T' : 'F';
    return s;
}

Assignment Assignment::from_string(const std::string& s) {
    Assignment a(static_cast<int>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == 'T' || c == 't' || c == '1')
            a.set(static_cast<int>(i) + 1, true);
        else if (c == 'F' || c == 'f' || c == '0')
            a.set(static_cast<int>(i) + 1, false);
        else
            throw Error("Assignment: bad character '" + std::string(1, c) + "' (want [TF10])");
    }
    return a;
}

CnfInstance parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long n = -1, m = -1;
    bool have_header = false;
    std::vector<Clause> clauses;
    Clause current;
    bool in_clause = false;

    auto finish_clause = [&]() {
        if (current.empty()) throw Error("parse_dimacs: empty clause");
        std::sort(current.begin(), current.end(),
                  [](const Literal& a, const Literal& b) { return a.variable < b.variable; });
        current.erase(std::unique(current.begin(), current.end()), current.end());
        for (std::size_t i = 1; i < current.size(); ++i)
            if (current[i].variable == current[i - 1].variable)
                throw Error("parse_dimacs: clause " + std::to_string(clauses.size() + 1) +
                            " contains both x" + std::to_string(current[i].variable) + " and ~x" +
                            std::to_string(current[i].variable));
        clauses.push_back(std::move(current));
        current.clear();
        in_clause = false;
    };

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue;
        if (tok[0] == 'c' && !have_header) continue;
        if (tok == "p") {
            if (have_header) throw Error("parse_dimacs: duplicate header");
            std::string fmt;
            if (!(ls >> fmt >> n >> m) || fmt != "cnf")
                throw Error("parse_dimacs: malformed header (want 'p cnf n m')");
            if (n < 1) throw Error("parse_dimacs: need at least one variable");
            if (m < 1) throw Error("parse_dimacs: need at least one clause");
            have_header = true;
            continue;
        }
        if (!have_header) throw Error("parse_dimacs: literals before header");
        // literal tokens, possibly several clauses per line
        ls.clear();
        ls.str(line);
        long lit;
        while (ls >> lit) {
            if (lit == 0) {
                finish_clause();
                continue;
            }
            long var = lit > 0 ? lit : -lit;
            if (var > n)
                throw Error("parse_dimacs: variable " + std::to_string(var) + " out of range [1, " +
                            std::to_string(n) + "]");
            current.push_back(Literal{static_cast<int>(var), lit > 0});
            in_clause = true;
        }
        if (ls.fail() && !ls.eof()) throw Error("parse_dimacs: bad token in clause line");
    }
    if (!have_header) throw Error("parse_dimacs: missing header");
    if (in_clause) throw Error("parse_dimacs: unterminated clause (missing 0)");
    if (static_cast<long>(clauses.size()) != m)
        throw Error("parse_dimacs: header promises " + std::to_string(m) + " clauses, found " +
                    std::to_string(clauses.size()));

    CnfInstance inst;
    inst.num_vars = static_cast<int>(n);
    inst.clauses = std::move(clauses);
    return inst;
}

std::string serialize_dimacs(const CnfInstance& inst) {
    std::ostringstream os;
    os << "p cnf " << inst.num_vars << " " << inst.clauses.size() << "\n";
    for (const Clause& c : inst.clauses) {
        for (const Literal& lit : c) os << lit.signed_value() << " ";
        os << "0\n";
    }
    return os.str();
}

std::optional<Assignment> brute_force_sat(const CnfInstance& inst) {
    const int n = inst.num_vars;
    if (n > 24) throw Error("brute_force_sat: guard exceeded (n <= 24)");
    // x1 is the most significant bit, so ascending masks enumerate
    // assignments lexicographically with False < True.
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        Assignment a(n);
        for (int v = 1; v <= n; ++v) a.set(v, (mask >> (n - v)) & 1ULL);
        if (a.satisfies(inst)) return a;
    }
    return std::nullopt;
}

} // namespace cf
