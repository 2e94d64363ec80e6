#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracle_helpers.hpp"
#include "systo/verify.hpp"

using namespace systo;
using oracle::make_graph;

namespace {

struct Fixture236 {
    CoxeterSystem sys = CoxeterSystem::triangle(2, 3, 6);
    TypedComplex ball;
    TypedComplex hat;
    Fixture236(int radius = 7) {
        ball = build_coxeter_ball(sys, radius);
        hat = systolize_rank3(ball, sys);
    }
};

} // namespace

TEST_CASE("vertex links before and after rank-3 systolization") {
    Fixture236 fx;
    VerificationReport before = check_vertex_links(fx.ball, 6, 3);
    CHECK_FALSE(before.passed());
    CHECK(before.scanned > 0);

    // the violations sit exactly at the eligible type-2 vertices
    DepthOracle oracle(fx.ball);
    std::set<int> violated;
    for (const auto& v : before.violations) {
        REQUIRE(v.vertices.size() == 1);
        CHECK(fx.ball.vertices[v.vertices[0]].type == "2");
        REQUIRE(v.cycle.has_value());
        CHECK(v.cycle->length == 4);
        CHECK(revalidate_cycle_violation(fx.ball, v));
        violated.insert(v.vertices[0]);
    }
    for (int v = 0; v < fx.ball.vertex_count(); ++v) {
        bool eligible = oracle.depth(v) >= 3 || oracle.locally_complete(v);
        if (eligible && fx.ball.vertices[v].type == "2") CHECK(violated.count(v) == 1);
    }

    VerificationReport after = check_vertex_links(fx.hat, 6, 3);
    CHECK(after.passed());
    CHECK(after.scanned > 0);
}

TEST_CASE("margin monotonicity: larger margins only shrink the scan") {
    Fixture236 fx;
    long prev_scanned = -1;
    size_t prev_violations = 0;
    for (int margin = 1; margin <= 5; ++margin) {
        VerificationReport report = check_vertex_links(fx.ball, 6, margin);
        if (prev_scanned >= 0) {
            CHECK(report.scanned <= prev_scanned);
            CHECK(report.violations.size() <= prev_violations);
        }
        prev_scanned = report.scanned;
        prev_violations = report.violations.size();
    }
}

TEST_CASE("reports are deterministic") {
    Fixture236 fx;
    VerificationReport a = check_vertex_links(fx.ball, 6, 3);
    VerificationReport b = check_vertex_links(fx.ball, 6, 3);
    REQUIRE(a.violations.size() == b.violations.size());
    for (size_t i = 0; i < a.violations.size(); ++i) {
        CHECK(a.violations[i].vertices == b.violations[i].vertices);
        CHECK(a.violations[i].cycle->vertices == b.violations[i].cycle->vertices);
    }
}

TEST_CASE("vertex links pass vacuously on the empty complex") {
    TypedComplex empty;
    VerificationReport report = check_vertex_links(empty, 6, 3);
    CHECK(report.passed());
    CHECK(report.scanned == 0);
}

TEST_CASE("systolization only ever adds edges") {
    Fixture236 fx;
    std::set<std::array<int, 2>> hat_edges(fx.hat.edges.begin(), fx.hat.edges.end());
    for (const auto& e : fx.ball.edges) CHECK(hat_edges.count(e) == 1);
    CHECK(fx.hat.vertex_count() == fx.ball.vertex_count());
}

TEST_CASE("the full systolized sweep has no interior violations") {
    // includes the identity-systolization types (3,3,4) and (3,3,3)
    for (auto exps : {std::array<int, 3>{2, 3, 6}, std::array<int, 3>{2, 3, 7},
                      std::array<int, 3>{2, 4, 6}, std::array<int, 3>{2, 5, 6},
                      std::array<int, 3>{2, 6, 6}, std::array<int, 3>{3, 3, 4},
                      std::array<int, 3>{3, 3, 3}}) {
        CAPTURE(exps[0]);
        CAPTURE(exps[1]);
        CAPTURE(exps[2]);
        CoxeterSystem sys = CoxeterSystem::triangle(exps[0], exps[1], exps[2]);
        TypedComplex ball = build_coxeter_ball(sys, 7);
        TypedComplex hat = systolize_rank3(ball, sys);
        CHECK(check_vertex_links(hat, 6, 3).passed());
        CHECK(check_structural_rank3(ball, 3).passed());
    }
}

TEST_CASE("structural rank-3 facts hold on the ball") {
    Fixture236 fx;
    VerificationReport report = check_structural_rank3(fx.ball, 3);
    CHECK(report.passed());
    CHECK(report.scanned > 0);

    // radius 0: vacuously fine
    TypedComplex tiny = build_coxeter_ball(fx.sys, 0);
    CHECK(check_structural_rank3(tiny, 3).passed());

    CHECK_THROWS_AS(check_structural_rank3(fx.hat, 3), InputError);
}

TEST_CASE("a corrupted ball is caught by the structural check") {
    Fixture236 fx;
    DepthOracle oracle(fx.ball);
    // find an eligible type-2 vertex and duplicate its role: a fresh type-2
    // vertex adjacent to the same pair of type-k neighbours
    int w = -1;
    for (int v = 0; v < fx.ball.vertex_count(); ++v)
        if (fx.ball.vertices[v].type == "2" && oracle.locally_complete(v)) {
            w = v;
            break;
        }
    REQUIRE(w >= 0);
    AdjacencyView adj(fx.ball);
    std::vector<int> kn;
    for (int u : adj.neighbors(w))
        if (fx.ball.vertices[u].type == "3") kn.push_back(u);
    REQUIRE(kn.size() == 2);

    TypedComplex corrupted = fx.ball;
    int clone = corrupted.vertex_count();
    corrupted.vertices.push_back({"2", "original"});
    std::vector<std::array<int, 2>> edges = corrupted.edges;
    edges.push_back({kn[0], clone});
    edges.push_back({kn[1], clone});
    std::vector<EdgeOrigin> origins(edges.size(), EdgeOrigin::Original);
    TypedComplex rebuilt =
        flag_span(corrupted.vertices, std::move(edges), std::move(origins), corrupted.metadata);

    VerificationReport report = check_structural_rank3(rebuilt, 3);
    CHECK_FALSE(report.passed());
    bool found = false;
    for (const auto& v : report.violations)
        if (v.kind == "nonunique_type2_witness") found = true;
    CHECK(found);
}

TEST_CASE("new-edge triangles") {
    Fixture236 fx;
    VerificationReport report = check_new_edge_triangles(fx.ball, fx.hat);
    CHECK(report.passed());
    CHECK(report.scanned > 0);

    // no new edges: vacuous pass
    CoxeterSystem flat = CoxeterSystem::triangle(3, 3, 3);
    TypedComplex fball = build_coxeter_ball(flat, 4);
    TypedComplex fhat = systolize_rank3(fball, flat);
    VerificationReport vac = check_new_edge_triangles(fball, fhat);
    CHECK(vac.passed());
    CHECK(vac.scanned == 0);
}

TEST_CASE("full six-cycle check on hand-built patches") {
    // hexagon wheel: the ring is a full 6-cycle coned by the hub
    std::vector<std::array<int, 2>> edges;
    for (int i = 1; i <= 6; ++i) {
        edges.push_back({0, i});
        edges.push_back({std::min(i, i % 6 + 1), std::max(i, i % 6 + 1)});
    }
    TypedComplex wheel = flag_span(make_graph(7, edges));
    VerificationReport coned = check_full_six_cycles(wheel, 1);
    CHECK(coned.passed());
    CHECK(coned.scanned >= 1);

    // a bare 6-cycle has no coning vertex
    std::vector<std::array<int, 2>> hex;
    for (int i = 0; i < 6; ++i) hex.push_back({std::min(i, (i + 1) % 6), std::max(i, (i + 1) % 6)});
    TypedComplex ring = flag_span(make_graph(6, hex));
    VerificationReport open = check_full_six_cycles(ring, 1);
    CHECK_FALSE(open.passed());
    CHECK(open.violations[0].kind == "uncapped_six_cycle");

    // no full 6-cycles at all: vacuous pass
    TypedComplex tri = flag_span(make_graph(3, {{0, 1}, {0, 2}, {1, 2}}));
    VerificationReport vac = check_full_six_cycles(tri, 1);
    CHECK(vac.passed());
    CHECK(vac.scanned == 0);
}

TEST_CASE("interior full six-cycles of the systolized (2,3,6) ball are coned") {
    Fixture236 fx(9);
    VerificationReport report = check_full_six_cycles(fx.hat, 3);
    CHECK(report.passed());
    CHECK(report.scanned >= 1);
}

TEST_CASE("the systolized link retraction satisfies the collapse hypothesis") {
    // lk_hat(v) -> lk(v) for a deep type-k vertex v: each new type-k link
    // vertex maps to its unique type-2 neighbour in the link
    Fixture236 fx(8);
    DepthOracle oracle(fx.ball);
    int center = -1;
    for (int v = 0; v < fx.ball.vertex_count(); ++v)
        if (fx.ball.vertices[v].type == "3" && oracle.depth(v) >= 4) {
            center = v;
            break;
        }
    REQUIRE(center >= 0);

    int sigma[1] = {center};
    std::vector<int> amb_hat, amb_ball;
    TypedComplex lk_hat = link(fx.hat, sigma, &amb_hat);
    TypedComplex lk_ball = link(fx.ball, sigma, &amb_ball);
    std::map<int, int> ball_index;
    for (size_t i = 0; i < amb_ball.size(); ++i) ball_index[amb_ball[i]] = static_cast<int>(i);

    AdjacencyView hat_adj(lk_hat);
    std::vector<int> f(lk_hat.vertex_count(), -1);
    for (int x = 0; x < lk_hat.vertex_count(); ++x) {
        if (lk_hat.vertices[x].type != "3") {
            f[x] = ball_index.at(amb_hat[x]);
            continue;
        }
        // w(x): the unique type-2 neighbour of x inside the link
        int w = -1;
        for (int y : hat_adj.neighbors(x))
            if (lk_hat.vertices[y].type == "2") {
                CHECK(w == -1);
                w = y;
            }
        REQUIRE(w >= 0);
        f[x] = ball_index.at(amb_hat[w]);
    }
    CHECK(check_collapse_hypothesis(f, lk_hat, lk_ball));
}

TEST_CASE("forced (2,4,4) systolization fails exactly at type-m vertices") {
    // the inner 4-cycle of type-k vertices around a type-m vertex has no
    // diagonal: no pair of opposite corners shares a type-2 vertex
    CoxeterSystem sys = CoxeterSystem::triangle(2, 4, 4);
    TypedComplex ball = build_coxeter_ball(sys, 7);
    TypedComplex forced = systolize_rank3(ball, sys, true);
    VerificationReport report = check_vertex_links(forced, 6, 3);
    CHECK_FALSE(report.passed());
    for (const auto& v : report.violations) {
        CHECK(forced.vertices[v.vertices[0]].type == "4'"); // the m-slot label
        REQUIRE(v.cycle.has_value());
        CHECK(v.cycle->length == 4);
        for (int u : v.cycle->vertices) CHECK(forced.vertices[u].type == "4"); // k-slot corners
    }
}

TEST_CASE("unsystolized rank-4 edge links have the expected shapes") {
    CoxeterSystem sys = CoxeterSystem::tetrahedral({2, 6, 3, 3, 6, 3});
    TypedComplex ball = build_coxeter_ball(sys, 8);
    DepthOracle oracle(ball);
    AdjacencyView adj(ball);
    auto letter = [&](int v) { return ball.vertices[v].type; };
    int checked_ab = 0, checked_ad = 0;
    for (const auto& e : ball.edges) {
        if (oracle.depth(e[0]) < 6 || oracle.depth(e[1]) < 6) continue;
        std::string t0 = letter(e[0]), t1 = letter(e[1]);
        if (t0 > t1) std::swap(t0, t1);
        std::vector<int> ambient;
        if (t0 == "a" && t1 == "b") {
            // complete bipartite on two c's and two d's
            TypedComplex lk = link(ball, e, &ambient);
            CHECK(lk.vertex_count() == 4);
            CHECK(lk.edge_count() == 4);
            CHECK(girth(one_skeleton(lk)) == 4);
            ++checked_ab;
        } else if (t0 == "a" && t1 == "d") {
            // bipartite of girth 2k on b's and c's (k = 3 here)
            TypedComplex lk = link(ball, e, &ambient);
            CHECK(girth(one_skeleton(lk)) == 6);
            ++checked_ad;
        }
    }
    CHECK(checked_ab > 0);
    CHECK(checked_ad > 0);
}

TEST_CASE("an injected alternating 2-k cycle is caught") {
    // a hand-built hexagon alternating types 2 and 3, dressed up as a
    // (2,3,6) ball fragment: the structural check must flag it
    Graph g;
    g.n = 6;
    for (int i = 0; i < 6; ++i) {
        g.labels.push_back(i % 2 == 0 ? "2" : "3");
        g.edges.push_back({std::min(i, (i + 1) % 6), std::max(i, (i + 1) % 6)});
    }
    TypedComplex fake = flag_span(g);
    fake.metadata.rank = 3;
    fake.metadata.exponents = {2, 3, 6};
    fake.metadata.slot_labels = {"2", "3", "6"};
    fake.metadata.slot_exponents = {2, 3, 6};
    VerificationReport report = check_structural_rank3(fake, 1);
    CHECK_FALSE(report.passed());
    bool found = false;
    for (const auto& v : report.violations)
        if (v.kind == "alternating_2k_cycle") found = true;
    CHECK(found);
}

TEST_CASE("rank-4 structural checks and edge links on small balls") {
    for (auto labels : {std::array<int, 6>{2, 6, 3, 3, 6, 3}, std::array<int, 6>{2, 6, 3, 6, 3, 3}}) {
        CAPTURE(labels[3]);
        CoxeterSystem sys = CoxeterSystem::tetrahedral(labels);
        CaseAssignment assignment = classify_case(sys);
        TypedComplex ball = build_coxeter_ball(sys, 7);
        VerificationReport structural = check_structural_rank4(ball, assignment, 6);
        CHECK(structural.passed());
        CHECK(structural.scanned > 0);

        TypedComplex hat = systolize_rank4(ball, sys);
        VerificationReport edges = check_edge_links(hat, 6, 6);
        CHECK(edges.passed());
        CHECK(edges.scanned > 0);

        VerificationReport triangles = check_new_edge_triangles(ball, hat);
        CHECK(triangles.passed());
        CHECK(triangles.scanned > 0);
    }
}

TEST_CASE("lemma oracles run clean on seeded instances") {
    VerificationReport report = run_lemma_oracles(40, 8, 20240607);
    CHECK(report.passed());
    CHECK(report.scanned == 160);
    CHECK_THROWS_AS(run_lemma_oracles(0, 8, 1), InputError);
}

TEST_CASE("face complex oracle runs clean on seeded instances") {
    VerificationReport report = run_face_complex_oracle(30, 7, 99);
    CHECK(report.passed());
    CHECK(report.scanned == 30);
}

TEST_CASE("three triangles in a row: the clique expansion stays equivalent") {
    Graph gamma = make_graph(7, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}, {4, 5}, {4, 6}, {5, 6}});
    Graph star = gamma_star(gamma);
    CHECK(is_k_large(flag_span(gamma), 6).large == is_k_large(flag_span(star), 6).large);
    CHECK(is_k_large(flag_span(star), 6).large); // chains of triangles carry no full cycle
}
