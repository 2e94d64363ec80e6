#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "systo/errors.hpp"

namespace systo {

// k value meaning "no full cycle of any length", and the girth of a forest.
inline constexpr int kInfinity = std::numeric_limits<int>::max();

struct VertexRec {
    std::string type;   // type label ("2", "3'", "a", "2|6", ...)
    std::string origin; // "original" or a provenance tag like "s:3,17"
};

enum class EdgeOrigin : std::uint8_t { Original, Friend, Acquaintance, Derived };

const char* edge_origin_name(EdgeOrigin origin);
EdgeOrigin edge_origin_from_name(const std::string& name);

/// Construction provenance carried alongside a complex. `chambers` and
/// `chamber_distances` are frozen at ball-build time and survive
/// systolization; depth computations always refer to them.
struct Metadata {
    std::string provenance;                  // "coxeter_ball", "ingested", ...
    int rank = 0;                            // 3 or 4 for balls, 0 otherwise
    int radius = -1;
    bool systolized = false;
    std::string case_label;                  // "I", "II", "all_geq_3" or empty
    std::vector<int> exponents;              // as given: rank 3 (l,k,m); rank 4 labels (ab..cd)
    std::vector<std::string> generator_names;
    std::vector<std::string> slot_labels;    // vertex type label per slot
    std::vector<int> slot_exponents;         // rank 3: stabilizer order / 2 per slot
    std::vector<std::vector<int>> chambers;  // original chambers as vertex id lists
    std::vector<int> chamber_distances;      // gallery distance from the identity chamber
    std::map<std::string, std::string> notes;

    bool operator==(const Metadata&) const = default;
};

/// Flag simplicial complex with typed vertices and tagged edges.
/// Invariants: edges are id-sorted pairs, listed in lexicographic order,
/// no duplicates; maximal simplices are exactly the maximal cliques of the
/// edge graph; every vertex lies in some maximal simplex.
struct TypedComplex {
    std::vector<VertexRec> vertices; // index == vertex id
    std::vector<std::array<int, 2>> edges;
    std::vector<EdgeOrigin> edge_origins;
    std::vector<std::vector<int>> maximal_simplices;
    Metadata metadata;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
};

/// Plain labelled graph, the currency of the Γ* / Γ̃ transforms.
struct Graph {
    int n = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::string> labels; // empty or size n

    bool has_edge(int u, int v) const;
};

/// Sorted neighbour lists over a fixed edge set.
class AdjacencyView {
public:
    AdjacencyView(int n, std::span<const std::array<int, 2>> edges);
    explicit AdjacencyView(const TypedComplex& complex)
        : AdjacencyView(complex.vertex_count(), complex.edges) {}
    explicit AdjacencyView(const Graph& graph) : AdjacencyView(graph.n, graph.edges) {}

    bool adjacent(int u, int v) const;
    const std::vector<int>& neighbors(int v) const { return nbrs_[v]; }
    int size() const { return static_cast<int>(nbrs_.size()); }
    std::vector<int> common_neighbors(int u, int v) const;

private:
    std::vector<std::vector<int>> nbrs_;
};

/// An induced (full) cycle: consecutive vertices adjacent, non-consecutive
/// vertices non-adjacent. Vertex ids refer to the complex named in `context`.
struct CycleWitness {
    std::vector<int> vertices;
    int length = 0;
    std::string context;
};

struct LargenessResult {
    bool large = true;
    std::optional<CycleWitness> witness;
};

// ---- constructions ----

/// Flag simplicial complex spanned on a 1-skeleton: maximal simplices are
/// the maximal cliques of the graph.
TypedComplex flag_span(const Graph& graph);
TypedComplex flag_span(std::vector<VertexRec> vertices,
                       std::vector<std::array<int, 2>> edges,
                       std::vector<EdgeOrigin> origins,
                       Metadata metadata);

/// Full subcomplex on the vertices adjacent to every vertex of `sigma`
/// (excluding `sigma` itself). `sigma` must span a simplex. When
/// `ambient_ids` is given it receives the ambient vertex id per link vertex.
TypedComplex link(const TypedComplex& complex, std::span<const int> sigma,
                  std::vector<int>* ambient_ids = nullptr);

/// Full subcomplex on `keep` (ascending ids); maximal simplices recomputed.
TypedComplex full_subcomplex(const TypedComplex& complex, const std::vector<int>& keep,
                             std::vector<int>* ambient_ids = nullptr);

/// Shortest induced cycle of length in [4, max_len], deterministic
/// (lexicographically least among the shortest), or absent.
std::optional<CycleWitness> shortest_full_cycle(const TypedComplex& complex, int max_len);

/// k-largeness per the no-full-cycle-shorter-than-k definition. k >= 4 or
/// kInfinity; infinity is decided at k = vertex count + 1.
LargenessResult is_k_large(const TypedComplex& complex, int k);

/// Length of a shortest (not necessarily induced) cycle; kInfinity for forests.
int girth(const Graph& graph);

TypedComplex barycentric_subdivision(const TypedComplex& complex);

/// Vertices are the simplices of the input; a set spans a simplex iff the
/// corresponding simplices lie in a common simplex of the input.
TypedComplex face_complex(const TypedComplex& complex);

/// Barycentric subdivision minus the open stars of barycenters whose
/// originating simplex has its set of vertex types listed in
/// `infinite_types`.
TypedComplex davis_realization(const TypedComplex& complex,
                               const std::vector<std::vector<std::string>>& infinite_types);

// ---- support ----

/// Maximal cliques of a graph, each sorted, list sorted; deterministic.
std::vector<std::vector<int>> maximal_cliques(int n, std::span<const std::array<int, 2>> edges);

Graph one_skeleton(const TypedComplex& complex);

/// All faces (nonempty subsets of maximal simplices), ordered by (size, lex).
struct FaceIndex {
    std::vector<std::vector<int>> faces;
    std::map<std::vector<int>, int> id_of;
};
FaceIndex enumerate_faces(const TypedComplex& complex);

/// Checks structural invariants; with `check_flag` also recomputes maximal
/// cliques and compares. Throws InputError on violation.
void validate_complex(const TypedComplex& complex, bool check_flag = false);

/// True iff `cycle` is a full cycle of the given adjacency.
bool is_full_cycle(const AdjacencyView& adj, const std::vector<int>& cycle);

} // namespace systo
