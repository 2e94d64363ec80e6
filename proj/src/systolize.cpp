#include "systo/systolize.hpp"

#include <algorithm>
#include <set>

namespace systo {

const char* case_label_name(CaseLabel label) {
    switch (label) {
        case CaseLabel::I: return "I";
        case CaseLabel::II: return "II";
        case CaseLabel::AllGeq3: return "all_geq_3";
    }
    return "";
}

int CaseAssignment::letter_of_slot(int slot) const {
    for (int letter = 0; letter < 4; ++letter)
        if (slot_of_letter[letter] == slot) return letter;
    throw InputError("letter_of_slot: bad slot");
}

std::vector<std::array<int, 2>> CaseAssignment::k_labeled_letter_pairs() const {
    switch (label) {
        case CaseLabel::I: return {{0, 3}, {1, 2}};  // ad (k), bc (k')
        case CaseLabel::II: return {{0, 3}, {1, 3}}; // ad (k), bd (k')
        case CaseLabel::AllGeq3: return {};
    }
    return {};
}

CaseAssignment classify_case(const CoxeterSystem& sys) {
    if (sys.rank != 4) throw InputError("classify_case: rank-4 system required");
    sys.validate();
    if (!sys.all_finite()) throw EligibilityError("infinite exponents are not supported");

    auto L = [&](int x, int y) { return sys.label(x, y); };

    int twos = 0;
    std::array<int, 2> two_pair{-1, -1};
    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y)
            if (L(x, y) == 2) {
                ++twos;
                two_pair = {x, y};
            }
    if (twos > 1) throw EligibilityError("more than one exponent 2");

    // rank-3 special subgroups are the vertex stabilizers; the triangle type
    // at a letter is given by the labels of the three edges at it
    for (int x = 0; x < 4; ++x) {
        std::vector<int> at;
        for (int y = 0; y < 4; ++y)
            if (y != x) at.push_back(L(x, y));
        if (!triangle_group_infinite(at[0], at[1], at[2]))
            throw EligibilityError("finite rank-3 special subgroup at letter " +
                                   std::string(1, static_cast<char>('a' + x)));
        if (excluded_triangle_type(at[0], at[1], at[2]))
            throw EligibilityError("excluded rank-3 type (2,4,4)/(2,4,5)/(2,5,5) at letter " +
                                   std::string(1, static_cast<char>('a' + x)));
    }

    CaseAssignment out;
    if (twos == 0) {
        out.label = CaseLabel::AllGeq3;
        out.slot_of_letter = {0, 1, 2, 3};
        for (int p = 0; p < 6; ++p) {
            static constexpr std::array<std::array<int, 2>, 6> pairs{
                {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
            out.assigned_labels[p] = L(pairs[p][0], pairs[p][1]);
        }
        return out;
    }

    int p = two_pair[0], q = two_pair[1];
    std::array<int, 2> others{-1, -1};
    for (int x = 0, idx = 0; x < 4; ++x)
        if (x != p && x != q) others[idx++] = x;
    int r = others[0], s = others[1];

    auto finish = [&](CaseLabel label, int a, int b, int c, int d) {
        CaseAssignment res;
        res.label = label;
        res.slot_of_letter = {a, b, c, d};
        auto pl = [&](int x, int y) { return L(res.slot_of_letter[x], res.slot_of_letter[y]); };
        res.assigned_labels = {pl(0, 1), pl(0, 2), pl(0, 3), pl(1, 2), pl(1, 3), pl(2, 3)};
        return res;
    };

    // prefer case I; candidate assignments in a fixed order
    for (CaseLabel target : {CaseLabel::I, CaseLabel::II}) {
        for (auto [a, b] : {std::array<int, 2>{p, q}, std::array<int, 2>{q, p}}) {
            for (auto [c, d] : {std::array<int, 2>{r, s}, std::array<int, 2>{s, r}}) {
                if (L(a, c) < 6) continue; // ac carries m >= 6
                if (target == CaseLabel::I ? L(b, d) >= 6 : L(b, c) >= 6)
                    return finish(target, a, b, c, d);
            }
        }
    }
    throw EligibilityError("no admissible tetrahedral labeling"); // unreachable for eligible input
}

// ---- rank 3 ----

Rank3Designation designate_rank3(const CoxeterSystem& sys, bool force) {
    if (sys.rank != 3) throw InputError("designate_rank3: rank-3 system required");
    sys.validate();
    if (!sys.all_finite()) throw EligibilityError("infinite exponents are not supported");
    std::vector<int> e = sys.input_exponents(); // (l,k,m) by slot

    Rank3Designation d;
    if (excluded_triangle_type(e[0], e[1], e[2])) {
        if (!force)
            throw EligibilityError("excluded triangle type (2,4,4)/(2,4,5)/(2,5,5)");
        d.valid = false;
    }
    if (sys.all_geq3()) {
        d.all_geq3 = true;
        return d;
    }
    std::vector<int> twos, rest;
    for (int i = 0; i < 3; ++i) (e[i] == 2 ? twos : rest).push_back(i);
    if (twos.size() != 1) {
        if (!force) throw EligibilityError("systolization needs exactly one exponent 2");
        d.valid = false;
        d.slot2 = twos.empty() ? 0 : twos[0];
        std::vector<int> other;
        for (int i = 0; i < 3; ++i)
            if (i != d.slot2) other.push_back(i);
        d.slotk = other[0];
        d.slotm = other[1];
        return d;
    }
    d.slot2 = twos[0];
    int a = rest[0], b = rest[1];
    if (e[b] >= 6 && e[a] >= 3) {
        d.slotk = a;
        d.slotm = b;
    } else if (e[a] >= 6 && e[b] >= 3) {
        d.slotk = b;
        d.slotm = a;
    } else {
        if (!force)
            throw EligibilityError("type (2,k,m) needs k >= 3 and m >= 6");
        d.valid = false;
        d.slotk = a;
        d.slotm = b;
    }
    return d;
}

TypedComplex systolize_rank3(const TypedComplex& ball, const CoxeterSystem& sys, bool force) {
    if (sys.rank != 3) throw InputError("systolize_rank3: rank-3 system required");
    Rank3Designation d = designate_rank3(sys, force);
    if (d.all_geq3) return ball; // already systolic

    if (ball.metadata.slot_labels.size() != 3)
        throw InputError("systolize_rank3: complex lacks rank-3 slot labels");
    const std::string label2 = ball.metadata.slot_labels[d.slot2];
    const std::string labelk = ball.metadata.slot_labels[d.slotk];

    AdjacencyView adj(ball);
    DepthOracle oracle(ball);

    std::vector<std::array<int, 2>> edges = ball.edges;
    std::vector<EdgeOrigin> origins = ball.edge_origins;
    for (int w = 0; w < ball.vertex_count(); ++w) {
        if (ball.vertices[w].type != label2) continue;
        // a truncated witness star could be hiding chambers; skip it
        if (oracle.has_chamber_data() && !oracle.star_complete(w)) continue;
        std::vector<int> k_nbrs;
        for (int u : adj.neighbors(w))
            if (ball.vertices[u].type == labelk) k_nbrs.push_back(u);
        for (size_t i = 0; i < k_nbrs.size(); ++i)
            for (size_t j = i + 1; j < k_nbrs.size(); ++j) {
                edges.push_back({k_nbrs[i], k_nbrs[j]});
                origins.push_back(EdgeOrigin::Friend);
            }
    }

    Metadata md = ball.metadata;
    md.systolized = true;
    md.notes["systolization"] = d.valid ? "rank3" : "rank3_forced";
    return flag_span(ball.vertices, std::move(edges), std::move(origins), std::move(md));
}

// ---- rank 4 relations ----

int letter_of_type(const std::string& type) {
    if (type.size() == 1 && type[0] >= 'a' && type[0] <= 'd') return type[0] - 'a';
    return -1;
}

namespace {

struct RelationScanner {
    const TypedComplex& ball;
    const CaseAssignment& assignment;
    AdjacencyView adj;
    DepthOracle oracle;
    std::vector<int> letter; // per vertex, -1 if not a..d

    RelationScanner(const TypedComplex& b, const CaseAssignment& a)
        : ball(b), assignment(a), adj(b), oracle(b) {
        letter.reserve(ball.vertices.size());
        for (const auto& v : ball.vertices) letter.push_back(letter_of_type(v.type));
    }

    bool adjacent_to_edge(int v, const std::array<int, 2>& e) const {
        return v != e[0] && v != e[1] && adj.adjacent(v, e[0]) && adj.adjacent(v, e[1]);
    }

    // -1 when the edge is not between letter types
    int edge_pair_index(const std::array<int, 2>& e) const {
        int x = letter[e[0]], y = letter[e[1]];
        if (x < 0 || y < 0 || x == y) return -1;
        return letter_pair_index(x, y);
    }

    bool witness_usable(const std::array<int, 2>& e, int pair_index) const {
        return oracle.edge_star_complete(e[0], e[1], assignment.assigned_labels[pair_index]);
    }

    std::vector<int> adjacent_members(const std::array<int, 2>& e, int member_letter) const {
        std::vector<int> out;
        for (int v : adj.common_neighbors(e[0], e[1]))
            if (letter[v] == member_letter) out.push_back(v);
        return out;
    }
};

} // namespace

RelationMap build_relations(const TypedComplex& ball, const CaseAssignment& assignment) {
    RelationMap relations;
    if (assignment.label == CaseLabel::AllGeq3) return relations;
    RelationScanner scan(ball, assignment);

    const int ab_index = letter_pair_index(0, 1);
    std::set<int> k_indices;
    for (const auto& p : assignment.k_labeled_letter_pairs())
        k_indices.insert(letter_pair_index(p[0], p[1]));

    for (size_t ei = 0; ei < ball.edges.size(); ++ei) {
        if (!ball.edge_origins.empty() && ball.edge_origins[ei] != EdgeOrigin::Original) continue;
        const auto& e = ball.edges[ei];
        int pair_index = scan.edge_pair_index(e);
        if (pair_index < 0) continue;
        bool is_ab = pair_index == ab_index;
        bool is_k = k_indices.count(pair_index) > 0;
        if (!is_ab && !is_k) continue;
        if (!scan.witness_usable(e, pair_index)) continue;
        for (int member_letter : {2, 3}) { // types c and d
            std::vector<int> members = scan.adjacent_members(e, member_letter);
            for (size_t i = 0; i < members.size(); ++i)
                for (size_t j = i + 1; j < members.size(); ++j) {
                    auto key = std::make_pair(members[i], members[j]);
                    Relation& rel = relations[key];
                    if (is_ab)
                        rel.ab_witnesses.push_back(e);
                    else
                        rel.k_witnesses.push_back(e);
                }
        }
    }
    for (auto& [key, rel] : relations)
        rel.kind = rel.ab_witnesses.empty() ? RelationKind::Acquaintance : RelationKind::Friend;
    return relations;
}

std::optional<Relation> classify_relation(const TypedComplex& ball,
                                          const CaseAssignment& assignment, int u, int v) {
    if (u == v) throw InputError("classify_relation: vertices must be distinct");
    if (u < 0 || v < 0 || u >= ball.vertex_count() || v >= ball.vertex_count())
        throw InputError("classify_relation: vertex out of range");
    int lu = letter_of_type(ball.vertices[u].type);
    int lv = letter_of_type(ball.vertices[v].type);
    if (lu != lv || (lu != 2 && lu != 3))
        throw InputError("classify_relation: vertices must share type c or d");
    if (assignment.label == CaseLabel::AllGeq3) return std::nullopt;

    RelationScanner scan(ball, assignment);
    const int ab_index = letter_pair_index(0, 1);
    std::set<int> k_indices;
    for (const auto& p : assignment.k_labeled_letter_pairs())
        k_indices.insert(letter_pair_index(p[0], p[1]));

    Relation rel;
    for (size_t ei = 0; ei < ball.edges.size(); ++ei) {
        if (!ball.edge_origins.empty() && ball.edge_origins[ei] != EdgeOrigin::Original) continue;
        const auto& e = ball.edges[ei];
        int pair_index = scan.edge_pair_index(e);
        if (pair_index < 0) continue;
        bool is_ab = pair_index == ab_index;
        bool is_k = k_indices.count(pair_index) > 0;
        if (!is_ab && !is_k) continue;
        if (!scan.adjacent_to_edge(u, e) || !scan.adjacent_to_edge(v, e)) continue;
        if (!scan.witness_usable(e, pair_index)) continue;
        (is_ab ? rel.ab_witnesses : rel.k_witnesses).push_back(e);
    }
    if (rel.ab_witnesses.empty() && rel.k_witnesses.empty()) return std::nullopt;
    rel.kind = rel.ab_witnesses.empty() ? RelationKind::Acquaintance : RelationKind::Friend;
    return rel;
}

TypedComplex systolize_rank4(const TypedComplex& ball, const CoxeterSystem& sys) {
    if (sys.rank != 4) throw InputError("systolize_rank4: rank-4 system required");
    CaseAssignment assignment = classify_case(sys);
    if (assignment.label == CaseLabel::AllGeq3) return ball; // already systolic

    RelationMap relations = build_relations(ball, assignment);
    std::vector<std::array<int, 2>> edges = ball.edges;
    std::vector<EdgeOrigin> origins = ball.edge_origins;
    for (const auto& [pair, rel] : relations) {
        edges.push_back({pair.first, pair.second});
        origins.push_back(rel.kind == RelationKind::Friend ? EdgeOrigin::Friend
                                                           : EdgeOrigin::Acquaintance);
    }

    Metadata md = ball.metadata;
    md.systolized = true;
    md.case_label = case_label_name(assignment.label);
    md.notes["systolization"] = "rank4";
    return flag_span(ball.vertices, std::move(edges), std::move(origins), std::move(md));
}

std::vector<std::array<int, 2>> rank4_new_edges_explicit(const TypedComplex& ball,
                                                         const CaseAssignment& assignment) {
    std::vector<std::array<int, 2>> out;
    if (assignment.label == CaseLabel::AllGeq3) return out;
    RelationScanner scan(ball, assignment);

    // (witness edge letter pair, member letter)
    std::vector<std::pair<std::array<int, 2>, int>> rules;
    if (assignment.label == CaseLabel::I) {
        rules = {{{0, 3}, 2}, {{1, 2}, 3}}; // c on ad; d on bc
    } else {
        rules = {{{0, 3}, 2}, {{1, 3}, 2}, {{0, 1}, 3}}; // c on ad or bd; d on ab
    }
    for (size_t ei = 0; ei < ball.edges.size(); ++ei) {
        if (!ball.edge_origins.empty() && ball.edge_origins[ei] != EdgeOrigin::Original) continue;
        const auto& e = ball.edges[ei];
        int pair_index = scan.edge_pair_index(e);
        if (pair_index < 0) continue;
        for (const auto& [pair, member_letter] : rules) {
            if (pair_index != letter_pair_index(pair[0], pair[1])) continue;
            if (!scan.witness_usable(e, pair_index)) continue;
            std::vector<int> members = scan.adjacent_members(e, member_letter);
            for (size_t i = 0; i < members.size(); ++i)
                for (size_t j = i + 1; j < members.size(); ++j)
                    out.push_back({members[i], members[j]});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- graph transforms ----

Graph gamma_star(const Graph& graph) {
    AdjacencyView adj(graph); // validates simplicity
    auto cliques = maximal_cliques(graph.n, graph.edges);
    for (size_t i = 0; i < cliques.size(); ++i)
        for (size_t j = i + 1; j < cliques.size(); ++j) {
            std::vector<int> common;
            std::set_intersection(cliques[i].begin(), cliques[i].end(), cliques[j].begin(),
                                  cliques[j].end(), std::back_inserter(common));
            if (common.size() >= 2)
                throw InputError("gamma_star: two maximal cliques share an edge");
        }

    Graph out;
    out.n = graph.n + static_cast<int>(cliques.size());
    out.edges = graph.edges;
    for (auto& e : out.edges)
        if (e[0] > e[1]) std::swap(e[0], e[1]);
    for (size_t i = 0; i < cliques.size(); ++i) {
        int mi = graph.n + static_cast<int>(i);
        for (int v : cliques[i]) out.edges.push_back({v, mi});
        for (size_t j = i + 1; j < cliques.size(); ++j) {
            std::vector<int> common;
            std::set_intersection(cliques[i].begin(), cliques[i].end(), cliques[j].begin(),
                                  cliques[j].end(), std::back_inserter(common));
            if (!common.empty()) out.edges.push_back({mi, graph.n + static_cast<int>(j)});
        }
    }
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    out.labels.reserve(out.n);
    for (int v = 0; v < graph.n; ++v)
        out.labels.push_back(graph.labels.empty() ? "v" + std::to_string(v) : graph.labels[v]);
    for (size_t i = 0; i < cliques.size(); ++i) out.labels.push_back("m" + std::to_string(i));
    return out;
}

Graph gamma_tilde(const Graph& graph) {
    if (girth(graph) < 4) throw InputError("gamma_tilde: graph must have girth >= 4");
    AdjacencyView adj(graph);

    std::vector<std::array<int, 2>> es = graph.edges;
    for (auto& e : es)
        if (e[0] > e[1]) std::swap(e[0], e[1]);
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());

    // vertex ids: (v,v) = v; (e0,e) = n+2j, (e1,e) = n+2j+1
    Graph out;
    int m = static_cast<int>(es.size());
    out.n = graph.n + 2 * m;
    std::vector<std::vector<int>> pairs_at(graph.n); // Γ̃ vertices per Γ vertex
    for (int v = 0; v < graph.n; ++v) pairs_at[v].push_back(v);
    for (int j = 0; j < m; ++j) {
        pairs_at[es[j][0]].push_back(graph.n + 2 * j);
        pairs_at[es[j][1]].push_back(graph.n + 2 * j + 1);
    }
    // equal first coordinate: a clique
    for (int v = 0; v < graph.n; ++v)
        for (size_t i = 0; i < pairs_at[v].size(); ++i)
            for (size_t j = i + 1; j < pairs_at[v].size(); ++j)
                out.edges.push_back({pairs_at[v][i], pairs_at[v][j]});
    // adjacent v,v' with sigma in {v, vv'}, sigma' in {v', vv'}
    for (int j = 0; j < m; ++j) {
        int u = es[j][0], v = es[j][1];
        int pu = graph.n + 2 * j, pv = graph.n + 2 * j + 1;
        out.edges.push_back({u, v});
        out.edges.push_back({u, pv});
        out.edges.push_back({pu, v});
        out.edges.push_back({pu, pv});
    }
    for (auto& e : out.edges)
        if (e[0] > e[1]) std::swap(e[0], e[1]);
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());

    out.labels.reserve(out.n);
    for (int v = 0; v < graph.n; ++v)
        out.labels.push_back("(" + std::to_string(v) + ")");
    for (int j = 0; j < m; ++j) {
        std::string e = std::to_string(es[j][0]) + "-" + std::to_string(es[j][1]);
        out.labels.push_back("(" + std::to_string(es[j][0]) + "," + e + ")");
        out.labels.push_back("(" + std::to_string(es[j][1]) + "," + e + ")");
    }
    return out;
}

bool check_collapse_hypothesis(const std::vector<int>& f, const TypedComplex& A,
                               const TypedComplex& B) {
    if (static_cast<int>(f.size()) != A.vertex_count())
        throw InputError("collapse: map size must equal the vertex count of A");
    std::vector<char> hit(B.vertex_count(), 0);
    for (int img : f) {
        if (img < 0 || img >= B.vertex_count()) throw InputError("collapse: image out of range");
        hit[img] = 1;
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end())
        throw InputError("collapse: map must be surjective onto the vertices of B");
    AdjacencyView adjA(A), adjB(B);
    for (const auto& e : A.edges)
        if (f[e[0]] != f[e[1]] && !adjB.adjacent(f[e[0]], f[e[1]]))
            throw InputError("collapse: map is not simplicial");
    for (int u = 0; u < A.vertex_count(); ++u)
        for (int v = u + 1; v < A.vertex_count(); ++v) {
            bool image_close = f[u] == f[v] || adjB.adjacent(f[u], f[v]);
            if (adjA.adjacent(u, v) != image_close) return false;
        }
    return true;
}

TypedComplex davis_systolization(const TypedComplex& ball, const CoxeterSystem& sys, bool force) {
    if (sys.rank == 3) {
        TypedComplex out = face_complex(systolize_rank3(ball, sys, force));
        out.metadata.provenance = "davis_systolization";
        return out;
    }
    TypedComplex systolized = systolize_rank4(ball, sys);
    TypedComplex faces = face_complex(systolized);
    // faces are ordered by (size, lex): the singleton faces (the original
    // vertices) are exactly the first |V| ids
    std::vector<int> keep;
    for (int i = systolized.vertex_count(); i < faces.vertex_count(); ++i) keep.push_back(i);
    TypedComplex out = full_subcomplex(faces, keep);
    out.metadata.provenance = "davis_systolization";
    out.metadata.case_label = systolized.metadata.case_label;
    return out;
}

std::vector<std::vector<std::string>> infinite_vertex_types(const TypedComplex& ball) {
    const Metadata& md = ball.metadata;
    CoxeterSystem sys = system_from_metadata(md);
    std::vector<std::vector<std::string>> out;
    if (sys.rank == 3) return out; // finite dihedral vertex stabilizers
    if (md.slot_labels.size() != 4) throw InputError("complex lacks rank-4 slot labels");
    for (int slot = 0; slot < 4; ++slot) {
        // stabilizer triangle of a slot vertex: the input labels of the
        // tetrahedron edges at that slot
        std::vector<int> at;
        for (int other = 0; other < 4; ++other)
            if (other != slot) at.push_back(sys.label(slot, other));
        if (triangle_group_infinite(at[0], at[1], at[2]))
            out.push_back({md.slot_labels[slot]});
    }
    return out;
}

CoxeterSystem system_from_metadata(const Metadata& metadata) {
    if (metadata.rank == 3) {
        if (metadata.exponents.size() != 3) throw InputError("metadata: expected 3 exponents");
        return CoxeterSystem::triangle(metadata.exponents[0], metadata.exponents[1],
                                       metadata.exponents[2]);
    }
    if (metadata.rank == 4) {
        if (metadata.exponents.size() != 6) throw InputError("metadata: expected 6 labels");
        std::array<int, 6> labels;
        std::copy(metadata.exponents.begin(), metadata.exponents.end(), labels.begin());
        return CoxeterSystem::tetrahedral(labels);
    }
    throw InputError("metadata carries no Coxeter system");
}

} // namespace systo
