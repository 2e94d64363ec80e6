#include "systo/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

namespace systo {

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string vertex_desc(const TypedComplex& complex, int v) {
    return "v" + std::to_string(v) + "(type " + complex.vertices[v].type + ")";
}

CycleWitness remap_witness(const CycleWitness& local, const std::vector<int>& ambient,
                           std::string context) {
    CycleWitness out;
    out.length = local.length;
    out.context = std::move(context);
    out.vertices.reserve(local.vertices.size());
    for (int v : local.vertices) out.vertices.push_back(ambient[v]);
    return out;
}

// every emitted violation must survive its own independent recheck
void emit(VerificationReport& report, const TypedComplex& complex, Violation violation) {
    if (!revalidate_cycle_violation(complex, violation))
        throw std::logic_error("internal error: violation failed independent revalidation");
    report.violations.push_back(std::move(violation));
}

} // namespace

bool revalidate_cycle_violation(const TypedComplex& complex, const Violation& violation) {
    if (!violation.cycle) return true;
    AdjacencyView adj(complex);
    const auto& cycle = violation.cycle->vertices;
    if (!is_full_cycle(adj, cycle)) return false;
    for (int anchor : violation.vertices)
        for (int v : cycle)
            if (!adj.adjacent(anchor, v)) return false;
    return true;
}

// ---- vertex links ----

VerificationReport check_vertex_links(const TypedComplex& complex, int k, int margin) {
    if (margin < 1) throw InputError("check_vertex_links: margin must be >= 1");
    Stopwatch timer;
    VerificationReport report;
    report.check_name = "vertex_links";
    report.margin_used = margin;
    DepthOracle oracle(complex);
    for (int v = 0; v < complex.vertex_count(); ++v) {
        if (oracle.depth(v) < margin && !oracle.locally_complete(v)) {
            ++report.skipped_boundary;
            continue;
        }
        ++report.scanned;
        std::vector<int> ambient;
        int sigma[1] = {v};
        TypedComplex lk = link(complex, sigma, &ambient);
        LargenessResult res = is_k_large(lk, k);
        if (!res.large) {
            Violation viol;
            viol.kind = "short_full_cycle";
            viol.vertices = {v};
            viol.cycle = remap_witness(*res.witness, ambient, "lk(" + vertex_desc(complex, v) + ")");
            viol.detail = "link of " + vertex_desc(complex, v) + " has a full cycle of length " +
                          std::to_string(res.witness->length);
            emit(report, complex, std::move(viol));
        }
    }
    report.elapsed_seconds = timer.seconds();
    return report;
}

// ---- edge links ----

namespace {

enum class LinkShape { KLarge, InfLarge, Simplex };

struct EdgeClass {
    LinkShape shape = LinkShape::KLarge;
    std::string name; // "ab", "friend", ...
};

EdgeClass classify_edge(const TypedComplex& complex, size_t ei) {
    const auto& e = complex.edges[ei];
    EdgeOrigin origin =
        complex.edge_origins.empty() ? EdgeOrigin::Original : complex.edge_origins[ei];
    if (origin == EdgeOrigin::Friend) return {LinkShape::InfLarge, "friend"};
    if (origin == EdgeOrigin::Acquaintance) return {LinkShape::Simplex, "acquaintance"};
    int x = letter_of_type(complex.vertices[e[0]].type);
    int y = letter_of_type(complex.vertices[e[1]].type);
    if (x < 0 || y < 0 || x == y) return {LinkShape::KLarge, "untyped"};
    if (x > y) std::swap(x, y);
    std::string name{static_cast<char>('a' + x), static_cast<char>('a' + y)};
    if (x == 0 && y == 1) return {LinkShape::Simplex, name};                    // ab
    if (x == 0 && y == 3) return {LinkShape::InfLarge, name};                   // ad
    const std::string& case_label = complex.metadata.case_label;
    if (case_label == "I" && x == 1 && y == 2) return {LinkShape::InfLarge, name};  // bc ~ ad
    if (case_label == "II" && x == 1 && y == 3) return {LinkShape::InfLarge, name}; // bd ~ ad
    return {LinkShape::KLarge, name};
}

} // namespace

VerificationReport check_edge_links(const TypedComplex& complex, int k, int margin) {
    if (margin < 1) throw InputError("check_edge_links: margin must be >= 1");
    Stopwatch timer;
    VerificationReport report;
    report.check_name = "edge_links";
    report.margin_used = margin;
    DepthOracle oracle(complex);
    AdjacencyView adj(complex);
    for (size_t ei = 0; ei < complex.edges.size(); ++ei) {
        const auto& e = complex.edges[ei];
        bool eligible0 = oracle.depth(e[0]) >= margin || oracle.locally_complete(e[0]);
        bool eligible1 = oracle.depth(e[1]) >= margin || oracle.locally_complete(e[1]);
        if (!eligible0 || !eligible1) {
            ++report.skipped_boundary;
            continue;
        }
        ++report.scanned;
        EdgeClass cls = classify_edge(complex, ei);
        std::vector<int> ambient;
        TypedComplex lk = link(complex, e, &ambient);
        std::string desc = "lk(" + vertex_desc(complex, e[0]) + "," + vertex_desc(complex, e[1]) +
                           ") [" + cls.name + "]";

        if (cls.shape == LinkShape::Simplex) {
            AdjacencyView ladj(lk);
            bool complete = true;
            for (int u = 0; u < lk.vertex_count() && complete; ++u)
                for (int v = u + 1; v < lk.vertex_count(); ++v)
                    if (!ladj.adjacent(u, v)) {
                        Violation viol;
                        viol.kind = "not_simplex";
                        viol.vertices = {e[0], e[1]};
                        viol.detail = desc + " should be a simplex but " +
                                      std::to_string(ambient[u]) + " and " +
                                      std::to_string(ambient[v]) + " are not adjacent";
                        emit(report, complex, std::move(viol));
                        complete = false;
                        break;
                    }
            continue;
        }
        int effective_k = cls.shape == LinkShape::InfLarge ? kInfinity : k;
        LargenessResult res = is_k_large(lk, effective_k);
        if (!res.large) {
            Violation viol;
            viol.kind = "short_full_cycle";
            viol.vertices = {e[0], e[1]};
            viol.cycle = remap_witness(*res.witness, ambient, desc);
            viol.detail = desc + " has a full cycle of length " +
                          std::to_string(res.witness->length) +
                          (cls.shape == LinkShape::InfLarge ? " (expected infinity-large)" : "");
            emit(report, complex, std::move(viol));
        }
    }
    report.elapsed_seconds = timer.seconds();
    return report;
}

// ---- rank-3 structural facts ----

VerificationReport check_structural_rank3(const TypedComplex& ball, int margin) {
    Stopwatch timer;
    VerificationReport report;
    report.check_name = "structural_rank3";
    report.margin_used = margin;
    if (ball.metadata.systolized)
        throw InputError("check_structural_rank3: expects the unsystolized ball");
    CoxeterSystem sys = system_from_metadata(ball.metadata);
    Rank3Designation d = designate_rank3(sys, /*force=*/true);
    if (d.all_geq3) {
        report.elapsed_seconds = timer.seconds();
        return report;
    }
    const std::string label2 = ball.metadata.slot_labels[d.slot2];
    const std::string labelk = ball.metadata.slot_labels[d.slotk];
    const std::string labelm = ball.metadata.slot_labels[d.slotm];
    DepthOracle oracle(ball);
    AdjacencyView adj(ball);

    auto k_neighbors = [&](int w) {
        std::vector<int> out;
        for (int u : adj.neighbors(w))
            if (ball.vertices[u].type == labelk) out.push_back(u);
        return out;
    };
    auto two_neighbors = [&](int v) {
        std::vector<int> out;
        for (int u : adj.neighbors(v))
            if (ball.vertices[u].type == label2) out.push_back(u);
        return out;
    };

    for (int w = 0; w < ball.vertex_count(); ++w) {
        if (ball.vertices[w].type != label2) continue;
        if (oracle.depth(w) < margin && !oracle.locally_complete(w)) {
            ++report.skipped_boundary;
            continue;
        }
        ++report.scanned;
        std::vector<int> kn = k_neighbors(w);
        for (size_t i = 0; i < kn.size(); ++i) {
            for (size_t j = i + 1; j < kn.size(); ++j) {
                int v = kn[i], vp = kn[j];
                for (int u : adj.common_neighbors(v, vp)) {
                    if (ball.vertices[u].type == label2 && u != w) {
                        Violation viol;
                        viol.kind = "nonunique_type2_witness";
                        viol.vertices = {w, v, vp, u};
                        viol.detail = "type-k pair " + vertex_desc(ball, v) + "," +
                                      vertex_desc(ball, vp) + " has two type-2 witnesses " +
                                      std::to_string(w) + " and " + std::to_string(u);
                        emit(report, ball, std::move(viol));
                    }
                    if (ball.vertices[u].type == labelm && !adj.adjacent(u, w)) {
                        Violation viol;
                        viol.kind = "type_m_witness_not_adjacent";
                        viol.vertices = {w, v, vp, u};
                        viol.detail = "shared type-m neighbour " + vertex_desc(ball, u) +
                                      " is not adjacent to the type-2 witness " +
                                      std::to_string(w);
                        emit(report, ball, std::move(viol));
                    }
                }
            }
        }
    }

    // no 6-cycle alternating types 2 and k anywhere in the ball: every edge
    // of the ball is an edge of the realization, so any hit is a real bug
    std::set<std::vector<int>> seen_cycles;
    for (int w0 = 0; w0 < ball.vertex_count(); ++w0) {
        if (ball.vertices[w0].type != label2) continue;
        std::vector<int> kn0 = k_neighbors(w0);
        for (int v0 : kn0)
            for (int w1 : two_neighbors(v0)) {
                if (w1 == w0) continue;
                for (int v1 : k_neighbors(w1)) {
                    if (v1 == v0) continue;
                    for (int w2 : two_neighbors(v1)) {
                        if (w2 == w0 || w2 == w1) continue;
                        for (int v2 : k_neighbors(w2)) {
                            if (v2 == v0 || v2 == v1 || !adj.adjacent(v2, w0)) continue;
                            std::vector<int> cycle{w0, v0, w1, v1, w2, v2};
                            std::vector<int> key = cycle;
                            std::sort(key.begin(), key.end());
                            if (!seen_cycles.insert(key).second) continue;
                            Violation viol;
                            viol.kind = "alternating_2k_cycle";
                            viol.vertices = cycle;
                            viol.detail = "6-cycle alternating types 2 and k";
                            emit(report, ball, std::move(viol));
                        }
                    }
                }
            }
    }
    report.elapsed_seconds = timer.seconds();
    return report;
}

// ---- rank-4 structural facts ----

namespace {

struct EdgeListsByLetterPair {
    // edge indices per letter pair index, and per-vertex incidence lists
    std::array<std::vector<int>, 6> edges_of_pair;
    // adjacent_edges[pair][v] = sorted edge-index list of pair-type edges
    // spanning a simplex with v
    std::array<std::vector<std::vector<int>>, 6> adjacent_edges;

    EdgeListsByLetterPair(const TypedComplex& ball, const AdjacencyView& adj) {
        int n = ball.vertex_count();
        for (auto& per : adjacent_edges) per.assign(n, {});
        std::vector<int> letter(n);
        for (int v = 0; v < n; ++v) letter[v] = letter_of_type(ball.vertices[v].type);
        for (size_t ei = 0; ei < ball.edges.size(); ++ei) {
            if (!ball.edge_origins.empty() && ball.edge_origins[ei] != EdgeOrigin::Original)
                continue;
            const auto& e = ball.edges[ei];
            int x = letter[e[0]], y = letter[e[1]];
            if (x < 0 || y < 0 || x == y) continue;
            int pair = letter_pair_index(x, y);
            edges_of_pair[pair].push_back(static_cast<int>(ei));
            for (int v : adj.common_neighbors(e[0], e[1]))
                adjacent_edges[pair][v].push_back(static_cast<int>(ei));
        }
    }

    std::vector<int> common_edges(int pair, std::span<const int> tuple) const {
        std::vector<int> acc = adjacent_edges[pair][tuple[0]];
        for (size_t i = 1; i < tuple.size(); ++i) {
            std::vector<int> next;
            const auto& lst = adjacent_edges[pair][tuple[i]];
            std::set_intersection(acc.begin(), acc.end(), lst.begin(), lst.end(),
                                  std::back_inserter(next));
            acc = std::move(next);
        }
        return acc;
    }
};

} // namespace

VerificationReport check_structural_rank4(const TypedComplex& ball,
                                          const CaseAssignment& assignment, int margin) {
    Stopwatch timer;
    VerificationReport report;
    report.check_name = "structural_rank4";
    report.margin_used = margin;
    if (ball.metadata.systolized)
        throw InputError("check_structural_rank4: expects the unsystolized ball");
    if (assignment.label == CaseLabel::AllGeq3) {
        report.elapsed_seconds = timer.seconds();
        return report;
    }
    const bool case1 = assignment.label == CaseLabel::I;
    DepthOracle oracle(ball);
    AdjacencyView adj(ball);
    EdgeListsByLetterPair by_pair(ball, adj);
    RelationMap relations = build_relations(ball, assignment);

    int n = ball.vertex_count();
    std::vector<int> letter(n);
    for (int v = 0; v < n; ++v) letter[v] = letter_of_type(ball.vertices[v].type);
    std::vector<char> eligible(n, 0);
    for (int v = 0; v < n; ++v) eligible[v] = oracle.depth(v) >= margin;

    auto commons_by_letter = [&](int u, int v) {
        std::array<std::vector<int>, 4> out;
        for (int x : adj.common_neighbors(u, v))
            if (letter[x] >= 0) out[letter[x]].push_back(x);
        return out;
    };

    const int pair_ab = letter_pair_index(0, 1);
    const int pair_ad = letter_pair_index(0, 3);
    const int pair_bc = letter_pair_index(1, 2);
    const int pair_bd = letter_pair_index(1, 3);

    // pair clauses
    for (const auto& [key, rel] : relations) {
        int u = key.first, v = key.second;
        if (!eligible[u] || !eligible[v]) {
            ++report.skipped_boundary;
            continue;
        }
        ++report.scanned;
        auto commons = commons_by_letter(u, v);
        std::string pair_desc = vertex_desc(ball, u) + "," + vertex_desc(ball, v);

        auto expect_unique = [&](int lt, const char* what) {
            if (commons[lt].size() != 1) {
                Violation viol;
                viol.kind = "common_neighbor_count";
                viol.vertices = {u, v};
                viol.detail = std::string(what) + " expects exactly one common type-" +
                              std::string(1, static_cast<char>('a' + lt)) + " neighbour of " +
                              pair_desc + ", found " + std::to_string(commons[lt].size());
                emit(report, ball, std::move(viol));
                return false;
            }
            return true;
        };
        auto expect_none = [&](int lt, const char* what) {
            if (!commons[lt].empty()) {
                Violation viol;
                viol.kind = "forbidden_common_neighbor";
                viol.vertices = {u, v, commons[lt][0]};
                viol.detail = std::string(what) + " forbids a common type-" +
                              std::string(1, static_cast<char>('a' + lt)) + " neighbour of " +
                              pair_desc;
                emit(report, ball, std::move(viol));
            }
        };

        if (rel.kind == RelationKind::Friend) {
            bool ua = expect_unique(0, "friend pair");
            bool ub = expect_unique(1, "friend pair");
            if (ua && ub) {
                int a = commons[0][0], b = commons[1][0];
                int opposite = letter[u] == 2 ? 3 : 2;
                for (int x : commons[opposite]) {
                    if (!adj.adjacent(x, a) || !adj.adjacent(x, b)) {
                        Violation viol;
                        viol.kind = "friend_common_not_adjacent";
                        viol.vertices = {u, v, x};
                        viol.detail = "common neighbour " + vertex_desc(ball, x) + " of friends " +
                                      pair_desc + " misses the witness edge";
                        emit(report, ball, std::move(viol));
                    }
                }
            }
        } else {
            bool has_ad = false, has_bc = false, has_bd = false;
            for (const auto& w : rel.k_witnesses) {
                int pair = letter_pair_index(letter[w[0]], letter[w[1]]);
                has_ad |= pair == pair_ad;
                has_bc |= pair == pair_bc;
                has_bd |= pair == pair_bd;
            }
            if (letter[u] == 2) {
                if (has_ad && has_bd) {
                    Violation viol;
                    viol.kind = "acquaintance_mixed_witness";
                    viol.vertices = {u, v};
                    viol.detail = "type-c acquaintances " + pair_desc +
                                  " have both ad- and bd-type witnesses";
                    emit(report, ball, std::move(viol));
                } else if (has_ad) {
                    expect_unique(0, "ad-acquaintance pair");
                    expect_unique(3, "ad-acquaintance pair");
                    expect_none(1, "ad-acquaintance pair");
                } else if (has_bd) {
                    expect_unique(1, "bd-acquaintance pair");
                    expect_unique(3, "bd-acquaintance pair");
                    expect_none(0, "bd-acquaintance pair");
                }
            } else {
                if (!case1) {
                    Violation viol;
                    viol.kind = "case2_d_acquaintance";
                    viol.vertices = {u, v};
                    viol.detail = "case II admits no acquaintances of type d: " + pair_desc;
                    emit(report, ball, std::move(viol));
                } else if (has_bc) {
                    expect_unique(1, "bc-acquaintance pair");
                    expect_unique(2, "bc-acquaintance pair");
                    expect_none(0, "bc-acquaintance pair");
                }
            }
        }
    }

    // triple and quadruple clauses over the relation graph per type
    for (int type_letter : {2, 3}) {
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if (letter[v] == type_letter && eligible[v]) members.push_back(v);
        std::map<int, std::vector<int>> rel_nbrs;
        for (const auto& [key, rel] : relations) {
            if (letter[key.first] != type_letter) continue;
            if (!eligible[key.first] || !eligible[key.second]) continue;
            rel_nbrs[key.first].push_back(key.second);
            rel_nbrs[key.second].push_back(key.first);
        }
        for (auto& [v, lst] : rel_nbrs) std::sort(lst.begin(), lst.end());
        auto related = [&](int a, int b) {
            auto it = rel_nbrs.find(a);
            return it != rel_nbrs.end() &&
                   std::binary_search(it->second.begin(), it->second.end(), b);
        };
        auto all_friends = [&](std::span<const int> tuple) {
            for (size_t i = 0; i < tuple.size(); ++i)
                for (size_t j = i + 1; j < tuple.size(); ++j) {
                    auto it = relations.find({std::min(tuple[i], tuple[j]),
                                              std::max(tuple[i], tuple[j])});
                    if (it == relations.end() || it->second.kind != RelationKind::Friend)
                        return false;
                }
            return true;
        };

        std::vector<int> target_pairs;
        if (type_letter == 2)
            target_pairs = case1 ? std::vector<int>{pair_ad} : std::vector<int>{pair_ad, pair_bd};
        else
            target_pairs = case1 ? std::vector<int>{pair_bc} : std::vector<int>{};

        auto check_tuple = [&](std::span<const int> tuple) {
            ++report.scanned;
            std::string tuple_desc;
            for (size_t i = 0; i < tuple.size(); ++i)
                tuple_desc += (i ? "," : "") + std::to_string(tuple[i]);

            if (!case1 && type_letter == 3) {
                // case II: sets of type-d friends share a common ab-edge
                auto ab = by_pair.common_edges(pair_ab, tuple);
                if (ab.empty()) {
                    Violation viol;
                    viol.kind = "no_common_ab_edge";
                    viol.vertices.assign(tuple.begin(), tuple.end());
                    viol.detail = "type-d friends {" + tuple_desc + "} share no ab-edge";
                    emit(report, ball, std::move(viol));
                }
                return;
            }

            std::vector<int> candidates;
            for (int pair : target_pairs) {
                auto found = by_pair.common_edges(pair, tuple);
                candidates.insert(candidates.end(), found.begin(), found.end());
            }
            if (candidates.empty()) {
                Violation viol;
                viol.kind = "no_common_witness_edge";
                viol.vertices.assign(tuple.begin(), tuple.end());
                viol.detail = "pairwise-related tuple {" + tuple_desc +
                              "} has no common k-labelled edge";
                emit(report, ball, std::move(viol));
                return;
            }
            if (candidates.size() > 1) {
                bool exempt = all_friends(tuple) && !by_pair.common_edges(pair_ab, tuple).empty();
                if (!exempt) {
                    Violation viol;
                    viol.kind = "common_witness_edge_not_unique";
                    viol.vertices.assign(tuple.begin(), tuple.end());
                    viol.detail = "tuple {" + tuple_desc + "} has " +
                                  std::to_string(candidates.size()) +
                                  " common k-labelled edges without the friends/ab exemption";
                    emit(report, ball, std::move(viol));
                }
            }
        };

        for (size_t i = 0; i < members.size(); ++i) {
            int a = members[i];
            auto it = rel_nbrs.find(a);
            if (it == rel_nbrs.end()) continue;
            const auto& na = it->second;
            for (size_t j = 0; j < na.size(); ++j) {
                int b = na[j];
                if (b <= a) continue;
                for (size_t l = j + 1; l < na.size(); ++l) {
                    int c = na[l];
                    if (c <= b || !related(b, c)) continue;
                    std::array<int, 3> triple{a, b, c};
                    check_tuple(triple);
                    for (int d : na) {
                        if (d <= c || !related(b, d) || !related(c, d)) continue;
                        std::array<int, 4> quad{a, b, c, d};
                        check_tuple(quad);
                    }
                }
            }
        }
    }

    report.elapsed_seconds = timer.seconds();
    return report;
}

// ---- new-edge triangles ----

VerificationReport check_new_edge_triangles(const TypedComplex& original,
                                            const TypedComplex& systolized) {
    Stopwatch timer;
    VerificationReport report;
    report.check_name = "new_edge_triangles";
    if (original.vertex_count() != systolized.vertex_count())
        throw InputError("check_new_edge_triangles: vertex sets differ");
    AdjacencyView adj_orig(original);
    AdjacencyView adj_sys(systolized);
    for (size_t ei = 0; ei < systolized.edges.size(); ++ei) {
        EdgeOrigin origin = systolized.edge_origins[ei];
        if (origin != EdgeOrigin::Friend && origin != EdgeOrigin::Acquaintance) continue;
        ++report.scanned;
        const auto& e = systolized.edges[ei];
        bool found = false;
        for (int w : adj_orig.common_neighbors(e[0], e[1])) {
            if (adj_sys.adjacent(e[0], w) && adj_sys.adjacent(e[1], w)) {
                found = true;
                break;
            }
        }
        if (!found) {
            Violation viol;
            viol.kind = "no_original_triangle";
            viol.vertices = {e[0], e[1]};
            viol.detail = "new edge " + std::to_string(e[0]) + "-" + std::to_string(e[1]) +
                          " closes no triangle over a length-2 path of original edges";
            emit(report, systolized, std::move(viol));
        }
    }
    report.elapsed_seconds = timer.seconds();
    return report;
}

// ---- full 6-cycles ----

namespace {

void six_cycle_dfs(const AdjacencyView& adj, const std::vector<char>& eligible,
                   std::vector<int>& path, std::vector<char>& used,
                   std::vector<std::vector<int>>& out) {
    constexpr int target = 6;
    int p = static_cast<int>(path.size());
    int v0 = path[0];
    for (int w : adj.neighbors(path[p - 1])) {
        if (w <= v0 || used[w] || !eligible[w]) continue;
        bool ok = true;
        if (p == target - 1) {
            if (!adj.adjacent(w, v0)) continue;
            for (int j = 1; j + 2 <= p; ++j)
                if (adj.adjacent(w, path[j])) {
                    ok = false;
                    break;
                }
        } else {
            for (int j = 0; j + 2 <= p; ++j)
                if (adj.adjacent(w, path[j])) {
                    ok = false;
                    break;
                }
        }
        if (!ok) continue;
        path.push_back(w);
        if (p == target - 1) {
            if (path[1] < path[5]) out.push_back(path); // one orientation per cycle
        } else {
            used[w] = 1;
            six_cycle_dfs(adj, eligible, path, used, out);
            used[w] = 0;
        }
        path.pop_back();
    }
}

} // namespace

VerificationReport check_full_six_cycles(const TypedComplex& complex, int margin) {
    Stopwatch timer;
    VerificationReport report;
    report.check_name = "full_six_cycles";
    report.margin_used = margin;
    DepthOracle oracle(complex);
    AdjacencyView adj(complex);
    int n = complex.vertex_count();
    std::vector<char> eligible(n, 0);
    for (int v = 0; v < n; ++v)
        eligible[v] = oracle.depth(v) >= margin || oracle.locally_complete(v);

    std::vector<std::vector<int>> cycles;
    std::vector<char> used(n, 0);
    for (int v0 = 0; v0 < n; ++v0) {
        if (!eligible[v0]) continue;
        std::vector<int> path{v0};
        used[v0] = 1;
        six_cycle_dfs(adj, eligible, path, used, cycles);
        used[v0] = 0;
    }
    report.scanned = static_cast<long>(cycles.size());
    for (const auto& cycle : cycles) {
        std::vector<int> common = adj.neighbors(cycle[0]);
        for (size_t i = 1; i < cycle.size() && !common.empty(); ++i) {
            std::vector<int> next;
            const auto& lst = adj.neighbors(cycle[i]);
            std::set_intersection(common.begin(), common.end(), lst.begin(), lst.end(),
                                  std::back_inserter(next));
            common = std::move(next);
        }
        if (common.empty()) {
            Violation viol;
            viol.kind = "uncapped_six_cycle";
            viol.cycle = CycleWitness{cycle, 6, "full 6-cycle"};
            viol.detail = "full 6-cycle with no common neighbour";
            emit(report, complex, std::move(viol));
        }
    }
    report.elapsed_seconds = timer.seconds();
    return report;
}

// ---- randomized lemma oracles ----

namespace {

using Rng = std::mt19937_64;

int rand_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Graph random_graph(Rng& rng, int n, double p) {
    Graph g;
    g.n = n;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng) < p) g.edges.push_back({i, j});
    return g;
}

Graph random_bipartite(Rng& rng, int n, double p) {
    Graph g;
    g.n = n;
    int split = std::max(1, n / 2);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < split; ++i)
        for (int j = split; j < n; ++j)
            if (coin(rng) < p) g.edges.push_back({i, j});
    return g;
}

int shortest_full_cycle_length(const TypedComplex& complex) {
    if (complex.vertex_count() < 4) return kInfinity;
    auto witness = shortest_full_cycle(complex, complex.vertex_count());
    return witness ? witness->length : kInfinity;
}

std::optional<Violation> amalgam_trial(Rng& rng, int max_vertices, int trial) {
    int na = rand_int(rng, 2, max_vertices);
    int nb = rand_int(rng, 2, max_vertices);
    double pa = 0.2 + 0.05 * rand_int(rng, 0, 10);
    double pb = 0.2 + 0.05 * rand_int(rng, 0, 10);
    TypedComplex A = flag_span(random_graph(rng, na, pa));
    TypedComplex B = flag_span(random_graph(rng, nb, pb));

    // pick equal-size cliques in A and B to glue along
    auto cliques_of_size = [](const TypedComplex& X, int s) {
        std::vector<std::vector<int>> out;
        for (const auto& m : X.maximal_simplices) {
            if (static_cast<int>(m.size()) < s) continue;
            std::vector<char> pick(m.size(), 0);
            std::fill(pick.end() - s, pick.end(), 1);
            do {
                std::vector<int> c;
                for (size_t i = 0; i < m.size(); ++i)
                    if (pick[i]) c.push_back(m[i]);
                out.push_back(std::move(c));
            } while (std::next_permutation(pick.begin(), pick.end()));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    int glue = rand_int(rng, 1, 3);
    std::vector<std::vector<int>> ca, cb;
    while (glue >= 1) {
        ca = cliques_of_size(A, glue);
        cb = cliques_of_size(B, glue);
        if (!ca.empty() && !cb.empty()) break;
        --glue;
    }
    const auto& sigma_a = ca[rand_int(rng, 0, static_cast<int>(ca.size()) - 1)];
    const auto& sigma_b = cb[rand_int(rng, 0, static_cast<int>(cb.size()) - 1)];

    // union graph: B glued onto A along sigma
    Graph u;
    u.n = na;
    u.edges = A.edges;
    std::vector<int> bmap(nb, -1);
    for (int i = 0; i < glue; ++i) bmap[sigma_b[i]] = sigma_a[i];
    for (int v = 0; v < nb; ++v)
        if (bmap[v] < 0) bmap[v] = u.n++;
    for (const auto& e : B.edges) {
        int x = bmap[e[0]], y = bmap[e[1]];
        u.edges.push_back({std::min(x, y), std::max(x, y)});
    }
    std::sort(u.edges.begin(), u.edges.end());
    u.edges.erase(std::unique(u.edges.begin(), u.edges.end()), u.edges.end());
    TypedComplex X = flag_span(u);

    for (int k = 4; k <= 7; ++k) {
        bool whole = is_k_large(X, k).large;
        bool parts = is_k_large(A, k).large && is_k_large(B, k).large;
        if (whole != parts) {
            Violation viol;
            viol.kind = "amalgam_lemma_counterexample";
            viol.detail = "trial " + std::to_string(trial) + ", k=" + std::to_string(k) +
                          ": glued complex " + (whole ? "is" : "is not") +
                          " k-large but the pieces " + (parts ? "are" : "are not");
            return viol;
        }
    }
    return std::nullopt;
}

std::optional<Violation> collapse_trial(Rng& rng, int max_vertices, int trial) {
    int nb = rand_int(rng, 2, std::max(2, max_vertices / 2));
    double p = 0.25 + 0.05 * rand_int(rng, 0, 8);
    TypedComplex B = flag_span(random_graph(rng, nb, p));

    // blow each vertex up to a clique; edges join full fibers of adjacent
    // vertices, so the projection satisfies the collapse hypothesis
    std::vector<std::vector<int>> fiber(nb);
    Graph ga;
    ga.n = 0;
    std::vector<int> f;
    for (int v = 0; v < nb; ++v) {
        int size = rand_int(rng, 1, 3);
        for (int i = 0; i < size; ++i) {
            fiber[v].push_back(ga.n++);
            f.push_back(v);
        }
    }
    AdjacencyView adjB(B);
    for (int v = 0; v < nb; ++v)
        for (size_t i = 0; i < fiber[v].size(); ++i)
            for (size_t j = i + 1; j < fiber[v].size(); ++j)
                ga.edges.push_back({fiber[v][i], fiber[v][j]});
    for (const auto& e : B.edges)
        for (int x : fiber[e[0]])
            for (int y : fiber[e[1]]) ga.edges.push_back({std::min(x, y), std::max(x, y)});
    TypedComplex A = flag_span(ga);

    if (!check_collapse_hypothesis(f, A, B)) {
        Violation viol;
        viol.kind = "collapse_hypothesis_failed";
        viol.detail = "trial " + std::to_string(trial) + ": clique expansion map rejected";
        return viol;
    }
    int la = shortest_full_cycle_length(A);
    int lb = shortest_full_cycle_length(B);
    if (la != lb) {
        Violation viol;
        viol.kind = "collapse_lemma_counterexample";
        viol.detail = "trial " + std::to_string(trial) + ": shortest full cycle " +
                      std::to_string(la) + " upstairs vs " + std::to_string(lb) + " downstairs";
        return viol;
    }
    return std::nullopt;
}

std::optional<Violation> gamma_star_trial(Rng& rng, int max_vertices, int trial) {
    Graph g;
    bool found = false;
    for (int attempt = 0; attempt < 30 && !found; ++attempt) {
        int n = rand_int(rng, 3, max_vertices);
        g = random_graph(rng, n, 0.15 + 0.05 * rand_int(rng, 0, 6));
        try {
            gamma_star(g);
            found = true;
        } catch (const InputError&) {
        }
    }
    if (!found) g = random_bipartite(rng, rand_int(rng, 4, max_vertices), 0.5);

    Graph gs = gamma_star(g);
    TypedComplex spanned = flag_span(g);
    TypedComplex starred = flag_span(gs);
    for (int k = 4; k <= 7; ++k) {
        if (is_k_large(spanned, k).large != is_k_large(starred, k).large) {
            Violation viol;
            viol.kind = "gamma_star_lemma_counterexample";
            viol.detail = "trial " + std::to_string(trial) + ", k=" + std::to_string(k) +
                          ": largeness of the span differs from the Γ* span";
            return viol;
        }
    }
    return std::nullopt;
}

std::optional<Violation> gamma_tilde_trial(Rng& rng, int max_vertices, int trial) {
    Graph g = random_bipartite(rng, rand_int(rng, 2, max_vertices),
                               0.25 + 0.05 * rand_int(rng, 0, 10));
    int gg = girth(g);
    Graph gt = gamma_tilde(g);
    TypedComplex spanned = flag_span(gt);
    for (int k = 4; k <= 7; ++k) {
        bool large = is_k_large(spanned, k).large;
        bool expected = gg >= k;
        if (large != expected) {
            Violation viol;
            viol.kind = "gamma_tilde_lemma_counterexample";
            viol.detail = "trial " + std::to_string(trial) + ", k=" + std::to_string(k) +
                          ": Γ̃ span largeness disagrees with girth " +
                          (gg == kInfinity ? std::string("inf") : std::to_string(gg));
            return viol;
        }
    }
    return std::nullopt;
}

} // namespace

VerificationReport run_lemma_oracles(int trials, int max_vertices, std::uint64_t seed) {
    if (trials < 1) throw InputError("run_lemma_oracles: trials must be >= 1");
    if (max_vertices < 4) throw InputError("run_lemma_oracles: max_vertices must be >= 4");
    Stopwatch timer;
    VerificationReport report;
    report.check_name = "lemma_oracles";
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        for (auto* trial_fn : {amalgam_trial, collapse_trial, gamma_star_trial, gamma_tilde_trial}) {
            ++report.scanned;
            if (auto viol = trial_fn(rng, max_vertices, t)) report.violations.push_back(*viol);
        }
    }
    report.elapsed_seconds = timer.seconds();
    return report;
}

VerificationReport run_face_complex_oracle(int trials, int max_vertices, std::uint64_t seed) {
    if (trials < 1) throw InputError("run_face_complex_oracle: trials must be >= 1");
    Stopwatch timer;
    VerificationReport report;
    report.check_name = "face_complex_oracle";
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        int n = rand_int(rng, 2, max_vertices);
        double p = 0.15 + 0.05 * rand_int(rng, 0, 10);
        TypedComplex X = flag_span(random_graph(rng, n, p));
        ++report.scanned;
        if (!is_k_large(X, 6).large) continue;
        TypedComplex F = face_complex(X);
        LargenessResult res = is_k_large(F, 6);
        if (!res.large) {
            Violation viol;
            viol.kind = "face_complex_counterexample";
            viol.cycle = res.witness;
            viol.detail = "trial " + std::to_string(t) +
                          ": 6-large input with a non-6-large face complex";
            report.violations.push_back(std::move(viol));
        }
    }
    report.elapsed_seconds = timer.seconds();
    return report;
}

} // namespace systo
