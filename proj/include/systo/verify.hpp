#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "systo/complex.hpp"
#include "systo/systolize.hpp"

namespace systo {

struct Violation {
    std::string kind;              // "short_full_cycle", "not_simplex", ...
    std::vector<int> vertices;     // the objects the violation is anchored at
    std::optional<CycleWitness> cycle;
    std::string detail;
};

/// Structured outcome of a check run. A report passes iff `violations` is
/// empty; every violation is reproducible from its witness data alone.
struct VerificationReport {
    std::string check_name;
    long scanned = 0;
    long skipped_boundary = 0;
    std::vector<Violation> violations;
    int margin_used = 0;
    double elapsed_seconds = 0; // not serialized; reports stay byte-deterministic

    bool passed() const { return violations.empty(); }
};

/// Runs is_k_large on the link of every vertex of depth >= margin (or, on
/// rank-3 balls, locally complete stars, which override the margin).
VerificationReport check_vertex_links(const TypedComplex& complex, int k, int margin);

/// Edge links of a systolized rank-4 ball: every eligible edge link must be
/// k-large; additionally the link shape is classified: ab-type and
/// acquaintance edges must have simplex links, ad-type (and its per-case
/// mirror) and friend edges must have infinity-large links.
VerificationReport check_edge_links(const TypedComplex& complex, int k, int margin);

/// Rank-3 facts on the unsystolized ball: the type-2 witness of a type-k
/// pair is unique; a shared type-m neighbour is adjacent to the witness; no
/// interior 6-cycle alternates types 2 and k.
VerificationReport check_structural_rank3(const TypedComplex& ball, int margin = 3);

/// Rank-4 facts on the unsystolized ball: friend-pair witness uniqueness,
/// acquaintance-pair uniqueness and exclusions, common-edge existence and
/// conditional uniqueness for pairwise-related triples and quadruples,
/// per case. Any violation indicates a construction bug.
VerificationReport check_structural_rank4(const TypedComplex& ball,
                                          const CaseAssignment& assignment,
                                          int margin = 6);

/// Every friend/acquaintance-tagged edge closes a triangle with a length-2
/// path of original edges, recomputed independently of the relation records.
VerificationReport check_new_edge_triangles(const TypedComplex& original,
                                            const TypedComplex& systolized);

/// Every full 6-cycle whose vertices all have depth >= margin has a vertex
/// adjacent to all six.
VerificationReport check_full_six_cycles(const TypedComplex& complex, int margin);

/// Randomized verification of the amalgam, collapse, Γ* and Γ̃ lemmas on
/// seeded small instances, with exhaustive induced-cycle enumeration as the
/// ground truth. A counterexample signals an implementation bug.
VerificationReport run_lemma_oracles(int trials, int max_vertices, std::uint64_t seed);

/// Seeded random flag complexes: whenever the input is 6-large, the face
/// complex is 6-large.
VerificationReport run_face_complex_oracle(int trials, int max_vertices, std::uint64_t seed);

/// Independent recheck of a violation witness: cycle adjacency + fullness,
/// and adjacency to every anchor vertex.
bool revalidate_cycle_violation(const TypedComplex& complex, const Violation& violation);

} // namespace systo
