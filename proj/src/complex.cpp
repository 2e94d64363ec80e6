#include "systo/complex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace systo {

const char* edge_origin_name(EdgeOrigin origin) {
    switch (origin) {
        case EdgeOrigin::Original: return "original";
        case EdgeOrigin::Friend: return "friend";
        case EdgeOrigin::Acquaintance: return "acquaintance";
        case EdgeOrigin::Derived: return "derived";
    }
    return "original";
}

EdgeOrigin edge_origin_from_name(const std::string& name) {
    if (name == "original") return EdgeOrigin::Original;
    if (name == "friend") return EdgeOrigin::Friend;
    if (name == "acquaintance") return EdgeOrigin::Acquaintance;
    if (name == "derived") return EdgeOrigin::Derived;
    throw InputError("unknown edge origin: " + name);
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (const auto& e : edges)
        if (e[0] == u && e[1] == v) return true;
    return false;
}

AdjacencyView::AdjacencyView(int n, std::span<const std::array<int, 2>> edges) : nbrs_(n) {
    for (const auto& e : edges) {
        if (e[0] < 0 || e[1] < 0 || e[0] >= n || e[1] >= n)
            throw InputError("edge endpoint out of range");
        if (e[0] == e[1]) throw InputError("self-loop");
        nbrs_[e[0]].push_back(e[1]);
        nbrs_[e[1]].push_back(e[0]);
    }
    for (auto& lst : nbrs_) {
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    }
}

bool AdjacencyView::adjacent(int u, int v) const {
    const auto& lst = nbrs_[u];
    return std::binary_search(lst.begin(), lst.end(), v);
}

std::vector<int> AdjacencyView::common_neighbors(int u, int v) const {
    std::vector<int> out;
    std::set_intersection(nbrs_[u].begin(), nbrs_[u].end(), nbrs_[v].begin(), nbrs_[v].end(),
                          std::back_inserter(out));
    return out;
}

// ---- maximal cliques (Bron-Kerbosch, pivoting, degeneracy order) ----

namespace {

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void bron_kerbosch(const AdjacencyView& adj, std::vector<int>& R, std::vector<int> P,
                   std::vector<int> X, std::vector<std::vector<int>>& out) {
    if (P.empty() && X.empty()) {
        std::vector<int> clique = R;
        std::sort(clique.begin(), clique.end());
        out.push_back(std::move(clique));
        return;
    }
    int pivot = -1, best = -1;
    for (const auto* side : {&P, &X}) {
        for (int u : *side) {
            int c = static_cast<int>(sorted_intersection(P, adj.neighbors(u)).size());
            if (c > best) {
                best = c;
                pivot = u;
            }
        }
    }
    std::vector<int> candidates;
    std::set_difference(P.begin(), P.end(), adj.neighbors(pivot).begin(),
                        adj.neighbors(pivot).end(), std::back_inserter(candidates));
    for (int v : candidates) {
        R.push_back(v);
        bron_kerbosch(adj, R, sorted_intersection(P, adj.neighbors(v)),
                      sorted_intersection(X, adj.neighbors(v)), out);
        R.pop_back();
        P.erase(std::find(P.begin(), P.end(), v));
        X.insert(std::upper_bound(X.begin(), X.end(), v), v);
    }
}

} // namespace

std::vector<std::vector<int>> maximal_cliques(int n, std::span<const std::array<int, 2>> edges) {
    AdjacencyView adj(n, edges);
    // degeneracy order
    std::vector<int> deg(n), order;
    order.reserve(n);
    std::vector<char> removed(n, 0);
    for (int v = 0; v < n; ++v) deg[v] = static_cast<int>(adj.neighbors(v).size());
    int maxdeg = 0;
    for (int v = 0; v < n; ++v) maxdeg = std::max(maxdeg, deg[v]);
    std::vector<std::vector<int>> buckets(maxdeg + 1);
    for (int v = 0; v < n; ++v) buckets[deg[v]].push_back(v);
    std::vector<int> cur(n);
    for (int v = 0; v < n; ++v) cur[v] = deg[v];
    int filled = 0, scan = 0;
    while (filled < n) {
        while (scan <= maxdeg && buckets[scan].empty()) ++scan;
        if (scan > maxdeg) break;
        int v = buckets[scan].back();
        buckets[scan].pop_back();
        if (removed[v] || cur[v] != scan) continue; // stale bucket entry
        removed[v] = 1;
        order.push_back(v);
        ++filled;
        for (int u : adj.neighbors(v)) {
            if (!removed[u]) {
                --cur[u];
                buckets[cur[u]].push_back(u);
                scan = std::min(scan, cur[u]);
            }
        }
    }
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;

    std::vector<std::vector<int>> out;
    for (int v : order) {
        std::vector<int> P, X, R{v};
        for (int u : adj.neighbors(v)) (pos[u] > pos[v] ? P : X).push_back(u);
        std::sort(P.begin(), P.end());
        std::sort(X.begin(), X.end());
        bron_kerbosch(adj, R, std::move(P), std::move(X), out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- flag span ----

namespace {

std::vector<std::array<int, 2>> normalize_edges(std::vector<std::array<int, 2>> edges,
                                                std::vector<EdgeOrigin>* origins) {
    std::vector<size_t> idx(edges.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    for (auto& e : edges)
        if (e[0] > e[1]) std::swap(e[0], e[1]);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return edges[a] < edges[b]; });
    std::vector<std::array<int, 2>> out;
    std::vector<EdgeOrigin> oout;
    out.reserve(edges.size());
    for (size_t i : idx) {
        if (!out.empty() && out.back() == edges[i]) continue;
        out.push_back(edges[i]);
        if (origins) oout.push_back((*origins)[i]);
    }
    if (origins) *origins = std::move(oout);
    return out;
}

} // namespace

TypedComplex flag_span(std::vector<VertexRec> vertices, std::vector<std::array<int, 2>> edges,
                       std::vector<EdgeOrigin> origins, Metadata metadata) {
    TypedComplex out;
    out.vertices = std::move(vertices);
    if (origins.size() != edges.size()) origins.assign(edges.size(), EdgeOrigin::Original);
    out.edges = normalize_edges(std::move(edges), &origins);
    out.edge_origins = std::move(origins);
    out.maximal_simplices = maximal_cliques(out.vertex_count(), out.edges);
    out.metadata = std::move(metadata);
    return out;
}

TypedComplex flag_span(const Graph& graph) {
    std::vector<VertexRec> vertices(graph.n);
    for (int v = 0; v < graph.n; ++v) {
        vertices[v].type = graph.labels.empty() ? std::string{} : graph.labels[v];
        vertices[v].origin = "original";
    }
    std::vector<EdgeOrigin> origins(graph.edges.size(), EdgeOrigin::Original);
    return flag_span(std::move(vertices), graph.edges, std::move(origins), Metadata{});
}

Graph one_skeleton(const TypedComplex& complex) {
    Graph g;
    g.n = complex.vertex_count();
    g.edges = complex.edges;
    g.labels.reserve(g.n);
    for (const auto& v : complex.vertices) g.labels.push_back(v.type);
    return g;
}

// ---- link and full subcomplex ----

TypedComplex full_subcomplex(const TypedComplex& complex, const std::vector<int>& keep,
                             std::vector<int>* ambient_ids) {
    std::vector<int> ids = keep;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<int> to_local(complex.vertex_count(), -1);
    for (size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] < 0 || ids[i] >= complex.vertex_count())
            throw InputError("full_subcomplex: vertex out of range");
        to_local[ids[i]] = static_cast<int>(i);
    }

    std::vector<VertexRec> vertices;
    vertices.reserve(ids.size());
    for (int id : ids) vertices.push_back(complex.vertices[id]);

    std::vector<std::array<int, 2>> edges;
    std::vector<EdgeOrigin> origins;
    for (size_t i = 0; i < complex.edges.size(); ++i) {
        int a = to_local[complex.edges[i][0]], b = to_local[complex.edges[i][1]];
        if (a >= 0 && b >= 0) {
            edges.push_back({std::min(a, b), std::max(a, b)});
            origins.push_back(complex.edge_origins.empty() ? EdgeOrigin::Original
                                                           : complex.edge_origins[i]);
        }
    }

    Metadata md;
    md.provenance = complex.metadata.provenance.empty()
                        ? std::string("subcomplex")
                        : complex.metadata.provenance + "/subcomplex";
    md.rank = complex.metadata.rank;
    md.radius = complex.metadata.radius;
    md.systolized = complex.metadata.systolized;
    md.case_label = complex.metadata.case_label;
    md.exponents = complex.metadata.exponents;
    md.slot_labels = complex.metadata.slot_labels;
    md.slot_exponents = complex.metadata.slot_exponents;
    // chamber data refers to ambient ids and does not survive restriction

    if (ambient_ids) *ambient_ids = ids;
    return flag_span(std::move(vertices), std::move(edges), std::move(origins), std::move(md));
}

TypedComplex link(const TypedComplex& complex, std::span<const int> sigma,
                  std::vector<int>* ambient_ids) {
    if (sigma.empty()) throw InputError("link: empty simplex");
    AdjacencyView adj(complex);
    std::vector<int> s(sigma.begin(), sigma.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw InputError("link: repeated vertex in simplex");
    for (int v : s)
        if (v < 0 || v >= complex.vertex_count()) throw InputError("link: vertex out of range");
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (!adj.adjacent(s[i], s[j])) throw InputError("link: input does not span a simplex");

    std::vector<int> keep = adj.neighbors(s[0]);
    for (size_t i = 1; i < s.size(); ++i) keep = sorted_intersection(keep, adj.neighbors(s[i]));
    std::vector<int> filtered;
    std::set_difference(keep.begin(), keep.end(), s.begin(), s.end(),
                        std::back_inserter(filtered));
    return full_subcomplex(complex, filtered, ambient_ids);
}

// ---- induced cycle search ----

namespace {

// DFS for an induced cycle of exact length target, v0 minimal, neighbors
// ascending: the first hit is the lexicographically least witness.
bool full_cycle_dfs(const AdjacencyView& adj, std::vector<int>& path, std::vector<char>& used,
                    int target) {
    int p = static_cast<int>(path.size());
    int v0 = path[0];
    int tail = path[p - 1];
    for (int w : adj.neighbors(tail)) {
        if (w <= v0 || used[w]) continue;
        bool ok = true;
        if (p == target - 1) {
            if (!adj.adjacent(w, v0)) continue;
            for (int j = 1; j + 2 <= p; ++j) // non-consecutive: 1..p-2
                if (adj.adjacent(w, path[j])) {
                    ok = false;
                    break;
                }
        } else {
            for (int j = 0; j + 2 <= p; ++j) // non-consecutive: 0..p-2
                if (adj.adjacent(w, path[j])) {
                    ok = false;
                    break;
                }
        }
        if (!ok) continue;
        path.push_back(w);
        if (p == target - 1) return true;
        used[w] = 1;
        if (full_cycle_dfs(adj, path, used, target)) return true;
        used[w] = 0;
        path.pop_back();
    }
    return false;
}

} // namespace

std::optional<CycleWitness> shortest_full_cycle(const TypedComplex& complex, int max_len) {
    if (max_len < 4) throw InputError("shortest_full_cycle: max_len must be >= 4");
    int n = complex.vertex_count();
    AdjacencyView adj(complex);
    int cap = std::min(max_len, n);
    std::vector<char> used(n, 0);
    for (int len = 4; len <= cap; ++len) {
        for (int v0 = 0; v0 < n; ++v0) {
            std::vector<int> path{v0};
            used[v0] = 1;
            bool found = full_cycle_dfs(adj, path, used, len);
            used[v0] = 0;
            if (found) {
                CycleWitness w;
                w.vertices = std::move(path);
                w.length = len;
                return w;
            }
        }
    }
    return std::nullopt;
}

LargenessResult is_k_large(const TypedComplex& complex, int k) {
    if (k != kInfinity && k < 4) throw InputError("is_k_large: k must be >= 4 or infinity");
    int n = complex.vertex_count();
    // no induced cycle can exceed the vertex count
    int max_len = (k == kInfinity) ? n : k - 1;
    if (max_len < 4) return {true, std::nullopt};
    auto witness = shortest_full_cycle(complex, max_len);
    if (!witness) return {true, std::nullopt};
    return {false, std::move(witness)};
}

bool is_full_cycle(const AdjacencyView& adj, const std::vector<int>& cycle) {
    int n = static_cast<int>(cycle.size());
    if (n < 3) return false;
    std::set<int> distinct(cycle.begin(), cycle.end());
    if (static_cast<int>(distinct.size()) != n) return false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool consecutive = (j == i + 1) || (i == 0 && j == n - 1);
            if (adj.adjacent(cycle[i], cycle[j]) != consecutive) return false;
        }
    return true;
}

// ---- girth ----

int girth(const Graph& graph) {
    AdjacencyView adj(graph);
    int best = kInfinity;
    std::vector<int> dist(graph.n), parent(graph.n);
    for (int root = 0; root < graph.n; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::vector<int> queue{root};
        dist[root] = 0;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            if (2 * dist[u] >= best) break;
            for (int w : adj.neighbors(u)) {
                if (dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if (parent[u] != w) {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    return best;
}

// ---- faces, subdivision, face complex, Davis realization ----

FaceIndex enumerate_faces(const TypedComplex& complex) {
    std::set<std::vector<int>> seen;
    for (const auto& simplex : complex.maximal_simplices) {
        int q = static_cast<int>(simplex.size());
        if (q > 20) throw ResourceError("enumerate_faces: maximal simplex too large");
        for (unsigned mask = 1; mask < (1u << q); ++mask) {
            std::vector<int> face;
            for (int i = 0; i < q; ++i)
                if (mask & (1u << i)) face.push_back(simplex[i]);
            seen.insert(std::move(face));
        }
    }
    FaceIndex out;
    out.faces.assign(seen.begin(), seen.end());
    std::sort(out.faces.begin(), out.faces.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (size_t i = 0; i < out.faces.size(); ++i) out.id_of[out.faces[i]] = static_cast<int>(i);
    return out;
}

namespace {

std::string face_type_label(const TypedComplex& complex, const std::vector<int>& face) {
    std::vector<std::string> types;
    for (int v : face) types.push_back(complex.vertices[v].type);
    std::sort(types.begin(), types.end());
    types.erase(std::unique(types.begin(), types.end()), types.end());
    std::string out;
    for (size_t i = 0; i < types.size(); ++i) {
        if (i) out += '|';
        out += types[i];
    }
    return out;
}

std::string face_origin_label(const std::vector<int>& face) {
    std::string out = "s:";
    for (size_t i = 0; i < face.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(face[i]);
    }
    return out;
}

std::vector<VertexRec> face_vertex_records(const TypedComplex& complex, const FaceIndex& fi) {
    std::vector<VertexRec> out;
    out.reserve(fi.faces.size());
    for (const auto& face : fi.faces)
        out.push_back({face_type_label(complex, face), face_origin_label(face)});
    return out;
}

TypedComplex build_subdivision(const TypedComplex& complex, const FaceIndex& fi) {
    std::vector<std::array<int, 2>> edges;
    for (const auto& face : fi.faces) {
        int q = static_cast<int>(face.size());
        int fid = fi.id_of.at(face);
        for (unsigned mask = 1; mask + 1 < (1u << q); ++mask) {
            std::vector<int> sub;
            for (int i = 0; i < q; ++i)
                if (mask & (1u << i)) sub.push_back(face[i]);
            int sid = fi.id_of.at(sub);
            edges.push_back({std::min(sid, fid), std::max(sid, fid)});
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    // maximal chains: one per permutation of each maximal simplex
    std::vector<std::vector<int>> maximal;
    for (const auto& simplex : complex.maximal_simplices) {
        if (simplex.size() > 8) throw ResourceError("barycentric_subdivision: simplex too large");
        std::vector<int> perm = simplex;
        std::sort(perm.begin(), perm.end());
        do {
            std::vector<int> chain;
            std::vector<int> prefix;
            for (int v : perm) {
                prefix.push_back(v);
                std::vector<int> key = prefix;
                std::sort(key.begin(), key.end());
                chain.push_back(fi.id_of.at(key));
            }
            std::sort(chain.begin(), chain.end());
            maximal.push_back(std::move(chain));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    std::sort(maximal.begin(), maximal.end());
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());

    TypedComplex out;
    out.vertices = face_vertex_records(complex, fi);
    out.edges = std::move(edges);
    out.edge_origins.assign(out.edges.size(), EdgeOrigin::Derived);
    out.maximal_simplices = std::move(maximal);
    out.metadata.provenance = "barycentric_subdivision";
    return out;
}

} // namespace

TypedComplex barycentric_subdivision(const TypedComplex& complex) {
    FaceIndex fi = enumerate_faces(complex);
    return build_subdivision(complex, fi);
}

TypedComplex face_complex(const TypedComplex& complex) {
    FaceIndex fi = enumerate_faces(complex);

    long long work = 0;
    for (const auto& face : fi.faces) {
        long long t = 1;
        for (size_t i = 0; i < face.size(); ++i) t *= 3;
        work += t;
        if (work > 50'000'000) throw ResourceError("face_complex: input too large");
    }

    // each unordered pair of faces is counted at its (unique) union
    std::vector<std::array<int, 2>> edges;
    for (const auto& face : fi.faces) {
        int q = static_cast<int>(face.size());
        if (q < 2) continue;
        unsigned full = (1u << q) - 1;
        auto face_id_of_mask = [&](unsigned mask) {
            std::vector<int> verts;
            for (int i = 0; i < q; ++i)
                if (mask & (1u << i)) verts.push_back(face[i]);
            return fi.id_of.at(verts);
        };
        for (unsigned sigma = 1; sigma <= full; ++sigma) {
            unsigned rest = full ^ sigma;
            int sid = face_id_of_mask(sigma);
            for (unsigned sub = sigma;; sub = (sub - 1) & sigma) {
                unsigned tau = rest | sub;
                if (tau != 0 && tau != sigma) {
                    int tid = face_id_of_mask(tau);
                    if (sid < tid) edges.push_back({sid, tid});
                }
                if (sub == 0) break;
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<std::vector<int>> maximal;
    for (const auto& simplex : complex.maximal_simplices) {
        int q = static_cast<int>(simplex.size());
        std::vector<int> clique;
        for (unsigned mask = 1; mask < (1u << q); ++mask) {
            std::vector<int> verts;
            for (int i = 0; i < q; ++i)
                if (mask & (1u << i)) verts.push_back(simplex[i]);
            clique.push_back(fi.id_of.at(verts));
        }
        std::sort(clique.begin(), clique.end());
        maximal.push_back(std::move(clique));
    }
    std::sort(maximal.begin(), maximal.end());
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());

    TypedComplex out;
    out.vertices = face_vertex_records(complex, fi);
    out.edges = std::move(edges);
    out.edge_origins.assign(out.edges.size(), EdgeOrigin::Derived);
    out.maximal_simplices = std::move(maximal);
    out.metadata.provenance = "face_complex";
    return out;
}

TypedComplex davis_realization(const TypedComplex& complex,
                               const std::vector<std::vector<std::string>>& infinite_types) {
    FaceIndex fi = enumerate_faces(complex);
    TypedComplex subdivision = build_subdivision(complex, fi);

    std::set<std::vector<std::string>> flagged;
    for (auto types : infinite_types) {
        std::sort(types.begin(), types.end());
        types.erase(std::unique(types.begin(), types.end()), types.end());
        flagged.insert(std::move(types));
    }

    std::vector<int> keep;
    for (size_t i = 0; i < fi.faces.size(); ++i) {
        std::vector<std::string> types;
        for (int v : fi.faces[i]) types.push_back(complex.vertices[v].type);
        std::sort(types.begin(), types.end());
        types.erase(std::unique(types.begin(), types.end()), types.end());
        if (!flagged.count(types)) keep.push_back(static_cast<int>(i));
    }
    TypedComplex out = full_subcomplex(subdivision, keep);
    out.metadata.provenance = "davis_realization";
    return out;
}

// ---- validation ----

void validate_complex(const TypedComplex& complex, bool check_flag) {
    int n = complex.vertex_count();
    if (complex.edge_origins.size() != complex.edges.size())
        throw InputError("validate: edge origin list size mismatch");
    for (size_t i = 0; i < complex.edges.size(); ++i) {
        const auto& e = complex.edges[i];
        if (e[0] < 0 || e[1] >= n || e[0] >= e[1])
            throw InputError("validate: malformed edge");
        if (i > 0 && !(complex.edges[i - 1] < e))
            throw InputError("validate: edges not sorted/unique");
    }
    AdjacencyView adj(complex);
    std::vector<char> covered(n, 0);
    for (const auto& simplex : complex.maximal_simplices) {
        if (simplex.empty()) throw InputError("validate: empty maximal simplex");
        for (size_t i = 0; i < simplex.size(); ++i) {
            int v = simplex[i];
            if (v < 0 || v >= n) throw InputError("validate: simplex vertex out of range");
            if (i > 0 && simplex[i - 1] >= v)
                throw InputError("validate: simplex not sorted/unique");
            covered[v] = 1;
        }
        for (size_t i = 0; i < simplex.size(); ++i)
            for (size_t j = i + 1; j < simplex.size(); ++j)
                if (!adj.adjacent(simplex[i], simplex[j]))
                    throw InputError("validate: simplex pair not an edge");
    }
    for (int v = 0; v < n; ++v)
        if (!covered[v]) throw InputError("validate: vertex in no maximal simplex");
    if (check_flag) {
        auto cliques = maximal_cliques(n, complex.edges);
        if (cliques != complex.maximal_simplices)
            throw InputError("validate: maximal simplices differ from maximal cliques");
    }
}

} // namespace systo
