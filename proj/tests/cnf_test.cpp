#include "crossing_forge/cnf.hpp"

#include <doctest.h>

#include <random>

using namespace cf;

namespace {
const char* kFig3 = "p cnf 5 3\n1 -2 4 -5 0\n-1 -3 5 0\n2 3 -4 0\n";
}

TEST_CASE("smallest well-formed instance") {
    CnfInstance inst = parse_dimacs("p cnf 1 1\n1 0");
    CHECK(inst.num_vars == 1);
    REQUIRE(inst.clauses.size() == 1);
    CHECK(inst.clauses[0] == Clause{Literal{1, true}});
    CHECK(inst.height() == 3);
}

TEST_CASE("running example instance") {
    CnfInstance inst = parse_dimacs(kFig3);
    CHECK(inst.num_vars == 5);
    REQUIRE(inst.num_clauses() == 3);
    CHECK(inst.clauses[0] ==
          Clause{{1, true}, {2, false}, {4, true}, {5, false}});
    CHECK(inst.clauses[1] == Clause{{1, false}, {3, false}, {5, true}});
    CHECK(inst.clauses[2] == Clause{{2, true}, {3, true}, {4, false}});
    CHECK(inst.height() == 15);
}

TEST_CASE("parser rejections") {
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1 -1 0"), Error);  // contradictory clause
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n0"), Error);       // empty clause
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0"), Error);     // variable out of range
    CHECK_THROWS_AS(parse_dimacs("p wrong 1 1\n1 0"), Error);   // malformed header
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 0\n"), Error);        // zero clauses
    CHECK_THROWS_AS(parse_dimacs("p cnf 0 1\n"), Error);        // zero variables
    CHECK_THROWS_AS(parse_dimacs("1 0\n"), Error);              // literals before header
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2"), Error);     // missing terminator
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0"), Error);     // clause count mismatch
}

TEST_CASE("duplicate literals collapse silently") {
    CnfInstance inst = parse_dimacs("p cnf 3 1\n2 2 -3 2 0");
    CHECK(inst.clauses[0] == Clause{{2, true}, {3, false}});
}

TEST_CASE("serialization") {
    CnfInstance one = parse_dimacs("p cnf 1 1\n1 0");
    CHECK(serialize_dimacs(one) == "p cnf 1 1\n1 0\n");
    CnfInstance two;
    two.num_vars = 2;
    two.clauses = {Clause{{1, true}, {2, false}}};
    CHECK(serialize_dimacs(two) == "p cnf 2 1\n1 -2 0\n");
}

TEST_CASE("round trips") {
    for (const char* text : {"p cnf 1 1\n1 0", kFig3, "p cnf 4 2\nc comment\n-1 2 0 3 -4 0\n"}) {
        CnfInstance inst = parse_dimacs(text);
        CHECK(parse_dimacs(serialize_dimacs(inst)) == inst);
        // serialize of a parse is a fixed point
        CHECK(serialize_dimacs(parse_dimacs(serialize_dimacs(inst))) == serialize_dimacs(inst));
    }
}

TEST_CASE("brute force sat basics") {
    auto sat1 = brute_force_sat(parse_dimacs("p cnf 1 1\n1 0"));
    REQUIRE(sat1.has_value());
    CHECK(sat1->value(1) == true);

    CHECK_FALSE(brute_force_sat(parse_dimacs("p cnf 1 2\n1 0\n-1 0")).has_value());
}

TEST_CASE("running example is satisfiable") {
    CnfInstance inst = parse_dimacs(kFig3);
    auto tau = brute_force_sat(inst);
    REQUIRE(tau.has_value());
    CHECK(tau->satisfies(inst));
    // the assignment of the drawn example also satisfies it
    Assignment fig4 = Assignment::from_string("TTFFF");
    CHECK(fig4.satisfies(inst));
}

TEST_CASE("brute force returns the lexicographically first model") {
    // models of (x1 | x2): FF fails, FT is first
    auto tau = brute_force_sat(parse_dimacs("p cnf 2 1\n1 2 0"));
    REQUIRE(tau.has_value());
    CHECK(tau->to_string() == "FT");
}

TEST_CASE("returned assignments satisfy every clause") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> nvars(1, 5), nclauses(1, 5), width(1, 3), coin(0, 1);
    for (int it = 0; it < 100; ++it) {
        CnfInstance inst;
        inst.num_vars = nvars(rng);
        int l = nclauses(rng);
        for (int j = 0; j < l; ++j) {
            std::vector<int> vars(static_cast<std::size_t>(inst.num_vars));
            std::iota(vars.begin(), vars.end(), 1);
            std::shuffle(vars.begin(), vars.end(), rng);
            Clause c;
            int k = std::min<int>(width(rng), inst.num_vars);
            for (int t = 0; t < k; ++t)
                c.push_back(Literal{vars[static_cast<std::size_t>(t)], coin(rng) == 1});
            std::sort(c.begin(), c.end(),
                      [](const Literal& a, const Literal& b) { return a.variable < b.variable; });
            inst.clauses.push_back(c);
        }
        auto tau = brute_force_sat(inst);
        if (tau) CHECK(tau->satisfies(inst));
    }
}

TEST_CASE("enumeration guard") {
    CnfInstance big;
    big.num_vars = 25;
    big.clauses = {Clause{{1, true}}};
    CHECK_THROWS_AS(brute_force_sat(big), Error);
}
