#pragma once

#include "crossing_forge/cnf.hpp"
#include "crossing_forge/drawing.hpp"
#include "crossing_forge/graph.hpp"
#include "crossing_forge/widths.hpp"

#include <string>
#include <vector>

namespace cf {

struct StageReport {
    std::string name;
    std::string status; // "pass", "fail", "skip"
    std::string detail;
};

struct PipelineReport {
    std::vector<StageReport> stages;
    std::vector<std::pair<std::string, std::string>> headline;
    std::vector<std::string> artifacts;
    bool unsat_demonstrated = false;

    bool ok() const;
    std::string to_text() const;
    std::string to_json() const;

    void stage(const std::string& name, bool pass, const std::string& detail = "");
    void skip(const std::string& name, const std::string& detail);
    void head(const std::string& key, const std::string& value);
};

/// reduce -> (draw, audit, extract round-trip | forced negative case)
/// -> decompose path and tree -> validate -> simplify check.
/// Writes all artifacts under outdir.
PipelineReport run_end_to_end(const std::string& cnf_text, const std::string& outdir);

struct SelfcheckOptions {
    long identities_h_max = 50;
    long brute_h_max = 6;
    unsigned seed = 20240901;
    std::string golden_path; // optional: graph file to diff against the (1,1) instance
};

/// Deterministic internal verification: weight ring properties, symbolic
/// versus numeric comparison, geometry predicates against a slow solver,
/// the staircase algebra, and the (n=1, l=1) construction record.
PipelineReport run_selfcheck(const SelfcheckOptions& opt);

} // namespace cf
