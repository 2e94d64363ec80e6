#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "systo/complex.hpp"
#include "systo/coxeter.hpp"

namespace systo {

enum class CaseLabel { I, II, AllGeq3 };

const char* case_label_name(CaseLabel label);

/// Resolution of a rank-4 system against the admissible tetrahedral types:
/// letters a,b,c,d are assigned to input slots so that label(ab)=2,
/// label(ac)=m>=6, label(ad)=k>=3, and case I has label(bd)=m'>=6 while
/// case II has label(bc)=m'>=6.
struct CaseAssignment {
    CaseLabel label = CaseLabel::AllGeq3;
    std::array<int, 4> slot_of_letter{0, 1, 2, 3}; // assigned letter -> input slot
    std::array<int, 6> assigned_labels{};             // (ab,ac,ad,bc,bd,cd) after assignment

    int letter_of_slot(int slot) const;
    /// Letter pairs carrying the k and k' labels: case I {ad, bc},
    /// case II {ad, bd}.
    std::vector<std::array<int, 2>> k_labeled_letter_pairs() const;
};

/// Deterministic case classification of an eligible rank-4 system; prefers
/// case I, enumerates candidate assignments in a fixed order. Throws
/// EligibilityError (more than one exponent 2, finite or excluded rank-3
/// special subgroup, infinite exponents).
CaseAssignment classify_case(const CoxeterSystem& sys);

/// Designation of the rank-3 slots: which slot carries the 2, which plays k
/// (receives the new edges) and which plays m (>= 6).
struct Rank3Designation {
    bool all_geq3 = false;
    bool valid = true; // false only under force on an ineligible type
    int slot2 = -1, slotk = -1, slotm = -1;
};

/// Throws EligibilityError unless `force`; with `force` an ineligible system
/// gets a best-effort designation for negative testing.
Rank3Designation designate_rank3(const CoxeterSystem& sys, bool force = false);

/// New edges between pairs of type-k vertices adjacent to the same type-2
/// vertex, flag-spanned; vertex set unchanged. An all->=3 system returns the
/// input unchanged. A type-2 witness counts only if its star is
/// chamber-complete (truncation under-approximates, never fabricates).
TypedComplex systolize_rank3(const TypedComplex& ball, const CoxeterSystem& sys,
                             bool force = false);

enum class RelationKind { Friend, Acquaintance };

/// Relation between two same-type vertices (type c or d), with the witness
/// edges certifying it. Friends share an ab-edge; acquaintances are
/// non-friends sharing an edge whose tetrahedron label is k or k'.
struct Relation {
    RelationKind kind = RelationKind::Friend;
    std::vector<std::array<int, 2>> ab_witnesses;
    std::vector<std::array<int, 2>> k_witnesses;
};

using RelationMap = std::map<std::pair<int, int>, Relation>;

/// All friend/acquaintance pairs of the ball, witness edges restricted to
/// chamber-complete edge stars.
RelationMap build_relations(const TypedComplex& ball, const CaseAssignment& assignment);

/// Relation of a single pair; u, v must be distinct vertices of equal type
/// c or d. Absent when the pair is neither friends nor acquaintances.
std::optional<Relation> classify_relation(const TypedComplex& ball,
                                          const CaseAssignment& assignment, int u, int v);

/// New edges exactly between friend and acquaintance pairs, flag-spanned;
/// vertex set unchanged; all->=3 systems return the input unchanged.
TypedComplex systolize_rank4(const TypedComplex& ball, const CoxeterSystem& sys);

/// The explicit per-case edge lists (type-c pairs on a common ad-edge etc.),
/// for cross-checking against the friends/acquaintances expansion.
std::vector<std::array<int, 2>> rank4_new_edges_explicit(const TypedComplex& ball,
                                                         const CaseAssignment& assignment);

/// Γ*: vertex set V ∪ M (M = maximal cliques); v—v' as in Γ, m—m' iff the
/// cliques intersect, v—m iff v ∈ m. Requires maximal cliques pairwise
/// intersecting in at most one vertex. Clique vertices are ordered by their
/// sorted vertex lists.
Graph gamma_star(const Graph& graph);

/// Γ̃: vertices are pairs (v,σ) with σ ∈ {v} ∪ incident edges; (v,σ)—(v',σ')
/// iff v = v', or v ~ v' with σ ∈ {v, vv'} and σ' ∈ {v', vv'}. Requires
/// girth >= 4.
Graph gamma_tilde(const Graph& graph);

/// Hypothesis of the collapse criterion: vertices a,a' of A are adjacent iff
/// f(a), f(a') are adjacent or equal. `f` maps A-vertex ids to B-vertex ids
/// and must be surjective and simplicial (InputError otherwise).
bool check_collapse_hypothesis(const std::vector<int>& f, const TypedComplex& A,
                               const TypedComplex& B);

/// Rank 3: face complex of the systolized ball. Rank 4: face complex of the
/// systolized ball minus the open stars of the vertices corresponding to the
/// original vertices.
TypedComplex davis_systolization(const TypedComplex& ball, const CoxeterSystem& sys,
                                 bool force = false);

/// Reconstructs the system a ball was built from (metadata exponents).
CoxeterSystem system_from_metadata(const Metadata& metadata);

/// Letter index 0..3 of a rank-4 vertex type "a".."d", or -1.
int letter_of_type(const std::string& type);

/// Vertex type sets with infinite stabilizers, for davis_realization: empty
/// for finite-exponent rank-3 systems (dihedral stabilizers), the letters
/// with infinite rank-3 stabilizer triangles for rank 4.
std::vector<std::vector<std::string>> infinite_vertex_types(const TypedComplex& ball);

} // namespace systo
