// crossing-forge: SAT -> Crossing Number instance toolkit.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.

#include "crossing_forge/analysis.hpp"
#include "crossing_forge/cnf.hpp"
#include "crossing_forge/drawing.hpp"
#include "crossing_forge/graph.hpp"
#include "crossing_forge/pipeline.hpp"
#include "crossing_forge/reduction.hpp"
#include "crossing_forge/widths.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

using namespace cf;

namespace {

std::string default_outdir() {
    const char* env = std::getenv("CROSSING_FORGE_OUTDIR");
    return env ? env : ".";
}

ReductionGraph load_graph(const std::string& path) { return graph_from_string(read_file(path)); }

int run(int argc, char** argv) {
    CLI::App app{"crossing-forge: builds, draws, audits and decomposes "
                 "crossing-number instances derived from CNF formulas"};
    app.require_subcommand(1);

    // reduce
    std::string cnf_path, out_path, graph_path, drawing_path, dec_path, assignment = "auto";
    std::string plan_spec = "auto", outdir = default_outdir(), svg_path, golden_path;
    bool want_trace = false, want_json = false, forced = false, want_path = false,
         want_tree = false;
    long arg_h = 1, arg_max_h = 50;

    auto* c_reduce = app.add_subcommand("reduce", "build the weighted instance (G, k) from a CNF");
    c_reduce->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
    c_reduce->add_option("--out", out_path, "output graph file (default graph.cfg)");
    c_reduce->add_flag("--trace", want_trace, "also write the construction trace");

    auto* c_draw = app.add_subcommand("draw", "build the canonical drawing");
    c_draw->add_option("graph", graph_path, "graph file")->required();
    c_draw->add_option("--assignment", assignment, "bits like TFT / 101, or 'auto'");
    c_draw->add_option("--plan", plan_spec, "jump gadgets per clause, e.g. 2,1,3, or 'auto'");
    c_draw->add_flag("--force", forced, "route even when the plan cannot satisfy a clause");
    c_draw->add_option("--out", out_path, "output drawing file (default drawing.cfd)");
    c_draw->add_option("--svg", svg_path, "also export an SVG rendering");

    auto* c_audit = app.add_subcommand("audit", "audit a drawing against the construction");
    c_audit->add_option("graph", graph_path)->required();
    c_audit->add_option("drawing", drawing_path)->required();
    c_audit->add_flag("--json", want_json, "machine-readable report");

    auto* c_extract = app.add_subcommand("extract", "read the assignment off a drawing");
    c_extract->add_option("graph", graph_path)->required();
    c_extract->add_option("drawing", drawing_path)->required();

    auto* c_dec = app.add_subcommand("decompose", "emit a certified decomposition");
    c_dec->add_option("graph", graph_path)->required();
    c_dec->add_flag("--path", want_path, "path decomposition (width <= 12)");
    c_dec->add_flag("--tree", want_tree, "tree decomposition (width <= 9)");
    c_dec->add_option("--out", out_path, "output decomposition file");

    auto* c_val = app.add_subcommand("validate-decomposition", "check a decomposition file");
    c_val->add_option("graph", graph_path)->required();
    c_val->add_option("decomposition", dec_path)->required();

    auto* c_analyze = app.add_subcommand("analyze", "staircase counting algebra");
    auto* a_aofh = c_analyze->add_subcommand("a-of-h", "print A(h)");
    a_aofh->add_option("--h", arg_h, "height")->required();
    auto* a_ident = c_analyze->add_subcommand("identities", "replay the height induction");
    a_ident->add_option("--max-h", arg_max_h, "check all h up to this bound");
    auto* a_brute = c_analyze->add_subcommand("brute-min", "exhaustive placement minimum");
    a_brute->add_option("--h", arg_h, "height (<= 8)")->required();
    a_brute->add_flag("--json", want_json);
    c_analyze->require_subcommand(1);

    auto* c_simplify = app.add_subcommand("simplify", "subdivide parallel edges once");
    c_simplify->add_option("graph", graph_path)->required();
    c_simplify->add_option("--out", out_path, "output graph file (default simplified.cfg)");

    auto* c_pw = app.add_subcommand("pw-exact", "exact path-width of a tiny graph (<= 20 vertices)");
    c_pw->add_option("graph", graph_path)->required();

    auto* c_self = app.add_subcommand("selfcheck", "run the internal verification suite");
    c_self->add_option("--max-h", arg_max_h, "identity check bound (default 50)");
    long brute_h = 6;
    c_self->add_option("--brute-h", brute_h, "placement search bound (default 6)");
    c_self->add_option("--golden", golden_path, "diff the (1,1) instance against a golden file");

    auto* c_e2e = app.add_subcommand("end-to-end", "full pipeline on a CNF file");
    c_e2e->add_option("cnf", cnf_path)->required();
    c_e2e->add_option("--outdir", outdir, "artifact directory (default $CROSSING_FORGE_OUTDIR)");

    CLI11_PARSE(app, argc, argv);

    if (c_reduce->parsed()) {
        ReductionResult res = reduce(parse_dimacs(read_file(cnf_path)));
        std::string out = out_path.empty() ? "graph.cfg" : out_path;
        write_file(out, graph_to_string(res.graph));
        if (want_trace) write_file(out + ".trace", res.trace.to_string());
        std::cout << "wrote " << out << " (V=" << res.graph.num_vertices()
                  << ", E=" << res.graph.num_edges() << ", omega=" << res.graph.metadata->omega
                  << ", k=" << res.graph.metadata->k_value << ")\n";
        if (res.trace.parallel_edges_found) std::cout << "note: parallel weighted edges present\n";
        return 0;
    }

    if (c_draw->parsed()) {
        ReductionGraph g = load_graph(graph_path);
        if (!g.metadata) throw Error("draw: graph has no reduction metadata");
        Assignment tau(g.metadata->n);
        if (assignment == "auto") {
            // the drawing exists iff some assignment satisfies every clause;
            // search cell types for one by brute force over assignments
            bool found = false;
            for (std::uint64_t mask = 0; mask < (1ULL << g.metadata->n) && !found; ++mask) {
                Assignment cand(g.metadata->n);
                for (int v = 1; v <= g.metadata->n; ++v)
                    cand.set(v, (mask >> (g.metadata->n - v)) & 1ULL);
                try {
                    derive_plan(g, cand);
                    tau = cand;
                    found = true;
                } catch (const PlanRefusal&) {
                }
            }
            if (!found) {
                std::cerr << "draw: no satisfying assignment exists; nothing to draw\n";
                return 1;
            }
        } else {
            tau = Assignment::from_string(assignment);
        }
        RoutingPlan plan;
        if (plan_spec == "auto") {
            plan = derive_plan(g, tau);
        } else {
            std::istringstream ps(plan_spec);
            std::string tok;
            while (std::getline(ps, tok, ',')) plan.jump_gadget.push_back(std::stoi(tok));
        }
        Drawing d = build_canonical_drawing(g, tau, plan, forced);
        std::string out = out_path.empty() ? "drawing.cfd" : out_path;
        write_file(out, drawing_to_string(d));
        if (!svg_path.empty()) write_file(svg_path, export_svg(g, d));
        std::cout << "wrote " << out << " (assignment " << tau.to_string() << ")\n";
        return 0;
    }

    if (c_audit->parsed()) {
        ReductionGraph g = load_graph(graph_path);
        Drawing d = drawing_from_string(read_file(drawing_path));
        GoodDrawingReport good = audit_good_drawing(g, d);
        NecessaryReport nec = audit_necessary_conditions(g, d);
        if (want_json) {
            nlohmann::ordered_json j;
            j["good_drawing"] = good.good;
            j["good_violations"] = good.violations;
            for (const AuditLayer& l : nec.layers)
                j["layers"][l.name] = {{"pass", l.pass}, {"detail", l.detail}};
            j["crossing_total"] = nec.crossings.total.to_string();
            j["crossings"] = nec.crossings.crossings.size();
            j["all_pass"] = good.good && nec.all_pass;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "good-drawing: " << (good.good ? "pass" : "FAIL") << "\n";
            for (const std::string& v : good.violations) std::cout << "  " << v << "\n";
            for (const AuditLayer& l : nec.layers) {
                std::cout << l.name << ": " << (l.pass ? "pass" : "FAIL");
                if (!l.detail.empty()) std::cout << " (" << l.detail << ")";
                std::cout << "\n";
            }
            std::cout << "crossing total: " << nec.crossings.total.to_string() << "\n";
        }
        return good.good && nec.all_pass ? 0 : 1;
    }

    if (c_extract->parsed()) {
        ReductionGraph g = load_graph(graph_path);
        Drawing d = drawing_from_string(read_file(drawing_path));
        std::cout << extract_assignment(g, d).to_string() << "\n";
        return 0;
    }

    if (c_dec->parsed()) {
        if (want_path == want_tree) throw Error("decompose: pass exactly one of --path/--tree");
        ReductionGraph g = load_graph(graph_path);
        std::string out;
        int width;
        if (want_path) {
            PathDecomposition d = instance_path_decomposition(g);
            auto check = validate_decomposition(g, d);
            if (!check.valid) throw Error("decompose: emitted decomposition invalid: " + check.violation);
            width = check.width;
            out = out_path.empty() ? "path.dec" : out_path;
            write_file(out, path_decomposition_to_string(d));
        } else {
            TreeDecomposition d = instance_tree_decomposition(g);
            auto check = validate_decomposition(g, d);
            if (!check.valid) throw Error("decompose: emitted decomposition invalid: " + check.violation);
            width = check.width;
            out = out_path.empty() ? "tree.dec" : out_path;
            write_file(out, tree_decomposition_to_string(d));
        }
        std::cout << "wrote " << out << " (width " << width << ")\n";
        return 0;
    }

    if (c_val->parsed()) {
        ReductionGraph g = load_graph(graph_path);
        auto [pd, td] = decomposition_from_string(read_file(dec_path));
        DecompositionCheck check = pd ? validate_decomposition(g, *pd) : validate_decomposition(g, *td);
        if (check.valid) {
            std::cout << "valid, width " << check.width << "\n";
            return 0;
        }
        std::cout << "INVALID: " << check.violation << "\n";
        return 1;
    }

    if (a_aofh->parsed()) {
        std::cout << a_of_h(arg_h).to_string() << "\n";
        return 0;
    }
    if (a_ident->parsed()) {
        IdentityReport repi = check_induction_identities(arg_max_h);
        std::cout << (repi.pass ? "pass" : "FAIL") << " (" << repi.cases_checked << " cases)";
        if (!repi.pass) std::cout << " " << repi.first_failure;
        std::cout << "\n";
        return repi.pass ? 0 : 1;
    }
    if (a_brute->parsed()) {
        PlacementSearch search = brute_force_min_placement(arg_h);
        if (want_json) {
            nlohmann::ordered_json j;
            j["h"] = arg_h;
            j["searched"] = search.placements_searched;
            j["min_cost"] = search.min_cost.to_string();
            j["minimizers"] = search.minimizers.size();
            j["alternating_minimizer"] =
                search.minimizers.size() == 1 && search.minimizers[0].is_alternating();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "searched " << search.placements_searched << " placements, minimum "
                      << search.min_cost.to_string() << ", " << search.minimizers.size()
                      << " minimizer(s)"
                      << (search.minimizers.size() == 1 && search.minimizers[0].is_alternating()
                              ? " (alternating)"
                              : "")
                      << "\n";
        }
        return 0;
    }

    if (c_simplify->parsed()) {
        ReductionGraph g = load_graph(graph_path);
        ReductionGraph simple = subdivide_parallel(g);
        std::string out = out_path.empty() ? "simplified.cfg" : out_path;
        write_file(out, graph_to_string(simple));
        std::cout << "wrote " << out << " (V=" << simple.num_vertices()
                  << ", E=" << simple.num_edges() << ", "
                  << (has_parallel_edges(g) ? "parallel edges subdivided" : "no parallel edges")
                  << ")\n";
        return 0;
    }

    if (c_pw->parsed()) {
        std::cout << exact_pathwidth(load_graph(graph_path)) << "\n";
        return 0;
    }

    if (c_self->parsed()) {
        SelfcheckOptions opt;
        opt.identities_h_max = arg_max_h;
        opt.brute_h_max = brute_h;
        opt.golden_path = golden_path;
        PipelineReport repc = run_selfcheck(opt);
        std::cout << repc.to_text();
        return repc.ok() ? 0 : 1;
    }

    if (c_e2e->parsed()) {
        PipelineReport repp = run_end_to_end(read_file(cnf_path), outdir);
        std::cout << repp.to_text();
        return repp.ok() ? 0 : 1;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
