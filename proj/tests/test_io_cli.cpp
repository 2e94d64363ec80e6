#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "systo/json_io.hpp"
#include "systo/systolize.hpp"
#include "systo/verify.hpp"

using namespace systo;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    std::string cmd = std::string(SYSTO_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "systo_cli_test";
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("complex JSON round-trip is the identity") {
    CoxeterSystem sys = CoxeterSystem::triangle(2, 3, 6);
    TypedComplex ball = build_coxeter_ball(sys, 5);
    TypedComplex hat = systolize_rank3(ball, sys);
    for (const TypedComplex* c : {&ball, &hat}) {
        std::string once = complex_to_canonical_string(*c);
        TypedComplex back = complex_from_json(nlohmann::json::parse(once));
        CHECK(complex_to_canonical_string(back) == once);
        CHECK(back.edges == c->edges);
        CHECK(back.maximal_simplices == c->maximal_simplices);
        CHECK(back.metadata == c->metadata);
    }
}

TEST_CASE("system descriptions parse from JSON") {
    nlohmann::json j;
    j["rank"] = 3;
    j["exponents"] = {2, 3, 6};
    CoxeterSystem sys = system_from_json(j);
    CHECK(sys.input_exponents() == std::vector<int>{2, 3, 6});

    nlohmann::json named;
    named["exponents"] = {2, 6, 3, 3, 6, 3};
    named["generator_names"] = {"p", "q", "r", "s"};
    CoxeterSystem tet = system_from_json(named);
    CHECK(tet.rank == 4);
    CHECK(tet.generator_names[0] == "p");

    nlohmann::json matrix;
    matrix["exponent_matrix"] = {{1, 6, 3}, {6, 1, 2}, {3, 2, 1}};
    CoxeterSystem from_matrix = system_from_json(matrix);
    CHECK(from_matrix.input_exponents() == std::vector<int>{2, 3, 6});

    CHECK_THROWS_AS(system_from_json(nlohmann::json::object()), InputError);
    nlohmann::json bad;
    bad["rank"] = 3;
    bad["exponents"] = {2, 3};
    CHECK_THROWS_AS(system_from_json(bad), InputError);
}

TEST_CASE("externally written complexes ingest and check") {
    // a hexagon wheel written by hand, as another tool would emit it
    auto j = nlohmann::json::parse(R"({
      "vertices": [
        {"id": 0, "type": "hub", "origin": "original"},
        {"id": 1, "type": "rim", "origin": "original"},
        {"id": 2, "type": "rim", "origin": "original"},
        {"id": 3, "type": "rim", "origin": "original"},
        {"id": 4, "type": "rim", "origin": "original"},
        {"id": 5, "type": "rim", "origin": "original"},
        {"id": 6, "type": "rim", "origin": "original"}
      ],
      "edges": [[0,1,"original"],[0,2,"original"],[0,3,"original"],[0,4,"original"],
                [0,5,"original"],[0,6,"original"],[1,2,"original"],[2,3,"original"],
                [3,4,"original"],[4,5,"original"],[5,6,"original"],[1,6,"original"]],
      "maximal_simplices": [[0,1,2],[0,2,3],[0,3,4],[0,4,5],[0,5,6],[0,1,6]],
      "metadata": {}
    })");
    TypedComplex wheel = complex_from_json(j);
    CHECK(wheel.metadata.provenance == "ingested");
    // no chamber data: every vertex counts as interior
    VerificationReport links = check_vertex_links(wheel, 6, 3);
    CHECK(links.scanned == wheel.vertex_count());
    CHECK(links.passed());
    VerificationReport cones = check_full_six_cycles(wheel, 3);
    CHECK(cones.passed());
    CHECK(cones.scanned == 1);
}

TEST_CASE("malformed JSON is rejected") {
    CHECK_THROWS_AS(complex_from_json(nlohmann::json::object()), InputError);
    nlohmann::json j;
    j["vertices"] = {{{"id", 0}, {"type", "2"}, {"origin", "original"}}};
    j["edges"] = {{0, 5, "original"}};
    j["maximal_simplices"] = {{0}};
    CHECK_THROWS_AS(complex_from_json(j), InputError);
}

TEST_CASE("report serialization carries no timing") {
    CoxeterSystem sys = CoxeterSystem::triangle(2, 3, 6);
    TypedComplex ball = build_coxeter_ball(sys, 6);
    VerificationReport report = check_vertex_links(ball, 6, 3);
    nlohmann::json j = report_to_json(report);
    CHECK_FALSE(j.contains("elapsed_seconds"));
    CHECK(j["check_name"] == "vertex_links");
    CHECK(j["violations"].size() == report.violations.size());
}

TEST_CASE("dot export") {
    CoxeterSystem sys = CoxeterSystem::triangle(2, 3, 6);
    TypedComplex ball = build_coxeter_ball(sys, 2);
    std::string dot = export_dot(ball);
    CHECK(dot.find("fillcolor=red") != std::string::npos);
    CHECK(dot.find("fillcolor=green") != std::string::npos);
    CHECK(dot.find("fillcolor=blue") != std::string::npos);

    TypedComplex hat = systolize_rank3(build_coxeter_ball(sys, 5), sys);
    CHECK(export_dot(hat).find("color=green") != std::string::npos); // new edges in green

    TypedComplex empty;
    CHECK(export_dot(empty) == "graph complex {\n  node [style=filled];\n}\n");
}

TEST_CASE("cli end to end") {
    TempDir tmp;
    std::string ball = tmp.file("ball.json");
    std::string hat = tmp.file("hat.json");

    CHECK(run_cli("build --exponents 2,3,6 --radius 6 -o " + ball) == 0);
    CHECK(fs::exists(ball));
    CHECK(run_cli("systolize -i " + ball + " -o " + hat) == 0);

    // unsystolized links fail with exit 1, systolized pass with exit 0
    CHECK(run_cli("check -i " + ball + " --suite links") == 1);
    CHECK(run_cli("check -i " + hat + " --suite links") == 0);
    CHECK(run_cli("check -i " + ball + " --suite structural") == 0);
    CHECK(run_cli("check -i " + hat + " --suite triangles --original " + ball) == 0);

    // input and eligibility errors exit 2
    CHECK(run_cli("build --exponents 2,3,6 --radius -1 -o " + tmp.file("x.json")) == 2);
    CHECK(run_cli("build --exponents 2,3 --radius 2 -o " + tmp.file("x.json")) == 2);
    CHECK(run_cli("check -i " + tmp.file("missing.json") + " --suite links") == 2);

    // (2,4,4) builds fine; only the systolization is excluded, unless forced
    std::string b244 = tmp.file("b244.json");
    CHECK(run_cli("build --exponents 2,4,4 --radius 6 -o " + b244) == 0);
    CHECK(run_cli("systolize -i " + b244 + " -o " + tmp.file("h244.json")) == 2);
    CHECK(run_cli("systolize -i " + b244 + " --force -o " + tmp.file("h244.json")) == 0);
    CHECK(run_cli("check -i " + tmp.file("h244.json") + " --suite links") == 1);

    // export
    CHECK(run_cli("export -i " + ball + " --format dot -o " + tmp.file("ball.dot")) == 0);
    CHECK(slurp(tmp.file("ball.dot")).find("graph complex") == 0);

    // identical configs give byte-identical outputs
    std::string again = tmp.file("ball2.json");
    CHECK(run_cli("build --exponents 2,3,6 --radius 6 -o " + again) == 0);
    CHECK(slurp(ball) == slurp(again));
    std::string hat2 = tmp.file("hat2.json");
    CHECK(run_cli("systolize -i " + again + " -o " + hat2) == 0);
    CHECK(slurp(hat) == slurp(hat2));

    // oracle subcommand (small sizes here; the acceptance suite runs the
    // full criterion counts)
    CHECK(run_cli("oracle --trials 10 --face-trials 10 --seed 7 --max-vertices 7") == 0);

    // building from a JSON system description
    std::string sys_path = tmp.file("system.json");
    std::ofstream(sys_path) << R"({"rank":3,"exponents":[2,3,6]})";
    std::string from_sys = tmp.file("ball_from_system.json");
    CHECK(run_cli("build --system " + sys_path + " --radius 6 -o " + from_sys) == 0);
    CHECK(slurp(from_sys) == slurp(ball));

    // node budget via the environment
    CHECK(std::system((std::string("SYSTO_NODE_BUDGET=2 ") + SYSTO_CLI_PATH +
                       " build --exponents 2,3,6 --radius 3 -o /dev/null > /dev/null 2>&1")
                          .c_str()) != 0);
}

TEST_CASE("rank-4 cli pipeline") {
    TempDir tmp;
    std::string ball = tmp.file("r4.json");
    std::string hat = tmp.file("r4hat.json");
    CHECK(run_cli("build --exponents 2,6,3,3,6,3 --radius 6 -o " + ball) == 0);
    CHECK(run_cli("systolize -i " + ball + " -o " + hat) == 0);
    CHECK(run_cli("check -i " + ball + " --suite structural") == 0);
    CHECK(run_cli("check -i " + hat + " --suite edges") == 0);
    // davis systolization on a small ball
    std::string small = tmp.file("r4small.json");
    CHECK(run_cli("build --exponents 2,6,3,3,6,3 --radius 3 -o " + small) == 0);
    CHECK(run_cli("systolize -i " + small + " --davis -o " + tmp.file("davis.json")) == 0);
}
