#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "systo/json_io.hpp"
#include "systo/systolize.hpp"
#include "systo/verify.hpp"

namespace {

using namespace systo;

CoxeterSystem system_from_exponents(const std::vector<std::string>& tokens) {
    std::vector<int> values;
    for (const auto& tok : tokens) {
        if (tok == "inf" || tok == "oo") {
            values.push_back(kInfiniteExponent);
        } else {
            try {
                values.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw InputError("bad exponent: " + tok);
            }
        }
    }
    if (values.size() == 3) return CoxeterSystem::triangle(values[0], values[1], values[2]);
    if (values.size() == 6) {
        std::array<int, 6> labels;
        std::copy(values.begin(), values.end(), labels.begin());
        return CoxeterSystem::tetrahedral(labels);
    }
    throw InputError("expected 3 exponents (l,k,m) or 6 labels (ab,ac,ad,bc,bd,cd)");
}

long long budget_from_env(long long fallback) {
    if (const char* env = std::getenv("SYSTO_NODE_BUDGET")) {
        try {
            return std::stoll(env);
        } catch (const std::exception&) {
            throw InputError("bad SYSTO_NODE_BUDGET value");
        }
    }
    return fallback;
}

void write_output(const std::string& path, const std::string& contents) {
    if (path == "-")
        std::cout << contents;
    else
        write_text_file(path, contents);
}

void print_report(const VerificationReport& report) {
    std::cout << (report.passed() ? "[pass] " : "[FAIL] ") << report.check_name << ": scanned "
              << report.scanned << ", skipped " << report.skipped_boundary << " boundary, "
              << report.violations.size() << " violation(s), margin " << report.margin_used
              << ", " << report.elapsed_seconds << "s\n";
    for (const auto& v : report.violations) std::cout << "    " << v.kind << ": " << v.detail << "\n";
}

int default_margin(const TypedComplex& complex) { return complex.metadata.rank == 4 ? 6 : 3; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite balls of Coxeter realizations, their systolizations, and exhaustive "
                 "local 6-largeness checks"};
    app.require_subcommand(1);

    // build
    auto* cmd_build = app.add_subcommand("build", "Build a ball of a Coxeter realization");
    std::vector<std::string> exponents;
    std::string system_path;
    int radius = 0;
    long long budget = 0;
    std::string out_path = "-";
    auto* exp_opt =
        cmd_build->add_option("--exponents", exponents, "rank 3: l,k,m; rank 4: ab,ac,ad,bc,bd,cd")
            ->delimiter(',');
    cmd_build->add_option("--system", system_path, "Coxeter system JSON description")
        ->excludes(exp_opt);
    cmd_build->add_option("--radius", radius, "chamber BFS radius")->required();
    cmd_build->add_option("--budget", budget, "node budget (default env SYSTO_NODE_BUDGET or 2e6)");
    cmd_build->add_option("-o,--out", out_path, "output file ('-' = stdout)");

    // systolize
    auto* cmd_sys = app.add_subcommand("systolize", "Apply the systolization construction");
    std::string in_path;
    bool force = false, davis = false;
    cmd_sys->add_option("-i,--in", in_path, "input complex JSON")->required();
    cmd_sys->add_option("-o,--out", out_path, "output file ('-' = stdout)");
    cmd_sys->add_flag("--force", force, "run the construction on excluded types (negative testing)");
    cmd_sys->add_flag("--davis", davis, "systolize the Davis realization (face complex route)");

    // check
    auto* cmd_check = app.add_subcommand("check", "Run verification suites");
    std::string suite = "all", report_path, original_path;
    int k = 6, margin = -1, trials = 200, face_trials = 100, max_vertices = 10;
    std::uint64_t seed = 7;
    cmd_check->add_option("-i,--in", in_path, "input complex JSON")->required();
    cmd_check->add_option("--suite", suite, "structural|links|edges|triangles|sixcycles|oracles|all");
    cmd_check->add_option("--k", k, "largeness bound (default 6)");
    cmd_check->add_option("--margin", margin, "interior margin (default: rank 3 -> 3, rank 4 -> 6)");
    cmd_check->add_option("--original", original_path, "unsystolized ball for the triangles suite");
    cmd_check->add_option("--trials", trials, "oracle trials");
    cmd_check->add_option("--seed", seed, "oracle seed");
    cmd_check->add_option("--max-vertices", max_vertices, "oracle instance size bound");
    cmd_check->add_option("--report", report_path, "write the reports as JSON");

    // export
    auto* cmd_export = app.add_subcommand("export", "Export a complex");
    std::string format = "dot";
    cmd_export->add_option("-i,--in", in_path, "input complex JSON")->required();
    cmd_export->add_option("--format", format, "dot|json");
    cmd_export->add_option("-o,--out", out_path, "output file ('-' = stdout)");

    // oracle
    auto* cmd_oracle = app.add_subcommand("oracle", "Run the randomized lemma oracles");
    cmd_oracle->add_option("--trials", trials, "lemma oracle trials (default 200)");
    cmd_oracle->add_option("--face-trials", face_trials, "face complex trials (default 100)");
    cmd_oracle->add_option("--seed", seed, "seed");
    cmd_oracle->add_option("--max-vertices", max_vertices, "instance size bound");
    cmd_oracle->add_option("--report", report_path, "write the reports as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_build->parsed()) {
            if (exponents.empty() && system_path.empty())
                throw InputError("build needs --exponents or --system");
            CoxeterSystem sys = system_path.empty() ? system_from_exponents(exponents)
                                                    : read_system_file(system_path);
            BallOptions options;
            options.node_budget = budget > 0 ? budget : budget_from_env(options.node_budget);
            TypedComplex ball = build_coxeter_ball(sys, radius, options);
            write_output(out_path, complex_to_canonical_string(ball));
            return 0;
        }

        if (cmd_sys->parsed()) {
            TypedComplex ball = read_complex_file(in_path);
            CoxeterSystem sys = system_from_metadata(ball.metadata);
            TypedComplex result;
            if (davis) {
                result = davis_systolization(ball, sys, force);
            } else if (sys.rank == 3) {
                result = systolize_rank3(ball, sys, force);
            } else {
                result = systolize_rank4(ball, sys);
            }
            write_output(out_path, complex_to_canonical_string(result));
            return 0;
        }

        if (cmd_export->parsed()) {
            TypedComplex complex = read_complex_file(in_path);
            if (format == "dot")
                write_output(out_path, export_dot(complex));
            else if (format == "json")
                write_output(out_path, complex_to_canonical_string(complex));
            else
                throw InputError("unknown export format: " + format);
            return 0;
        }

        std::vector<VerificationReport> reports;
        if (cmd_check->parsed()) {
            TypedComplex complex = read_complex_file(in_path);
            if (margin < 0) margin = default_margin(complex);
            bool rank4 = complex.metadata.rank == 4;
            bool systolized = complex.metadata.systolized;
            auto want = [&](const char* name) { return suite == name || suite == "all"; };

            if (want("links")) reports.push_back(check_vertex_links(complex, k, margin));
            if (want("edges") && (suite == "edges" || (rank4 && systolized)))
                reports.push_back(check_edge_links(complex, k, margin));
            if (want("structural") && (suite == "structural" || !systolized)) {
                if (rank4) {
                    CaseAssignment assignment =
                        classify_case(system_from_metadata(complex.metadata));
                    reports.push_back(check_structural_rank4(complex, assignment, margin));
                } else {
                    reports.push_back(check_structural_rank3(complex, margin));
                }
            }
            if (want("sixcycles") && (suite == "sixcycles" || systolized))
                reports.push_back(check_full_six_cycles(complex, margin));
            if (want("triangles") && !original_path.empty()) {
                TypedComplex original = read_complex_file(original_path);
                reports.push_back(check_new_edge_triangles(original, complex));
            }
            if (want("oracles") && suite == "oracles") {
                reports.push_back(run_lemma_oracles(trials, max_vertices, seed));
                reports.push_back(run_face_complex_oracle(face_trials, max_vertices, seed));
            }
            if (reports.empty()) throw InputError("suite selects no applicable check: " + suite);
        } else if (cmd_oracle->parsed()) {
            reports.push_back(run_lemma_oracles(trials, max_vertices, seed));
            reports.push_back(run_face_complex_oracle(face_trials, max_vertices, seed));
        }

        bool ok = true;
        nlohmann::json jreports = nlohmann::json::array();
        for (const auto& report : reports) {
            print_report(report);
            jreports.push_back(report_to_json(report));
            ok = ok && report.passed();
        }
        if (!report_path.empty()) write_text_file(report_path, jreports.dump(2) + "\n");
        return ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
