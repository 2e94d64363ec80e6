#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "systo/complex.hpp"
#include "systo/errors.hpp"

namespace systo {

// Exponent value standing for m(s,t) = infinity.
inline constexpr int kInfiniteExponent = 0;

/// A word in the generators; one byte per letter, values 0..rank-1.
using Word = std::string;

/// Shortlex-minimal word representing a group element. Two NormalForms are
/// equal as group elements iff they are equal as words.
using NormalForm = Word;

/// Coxeter presentation: involutive generators s_i with (s_i s_j)^{m(i,j)} = 1.
struct CoxeterSystem {
    int rank = 0;
    std::array<std::array<int, 4>, 4> exp{}; // symmetric, exp[i][i] = 1
    std::vector<std::string> generator_names;

    /// Rank-3 system of triangle type (l,k,m): vertex slot i has stabilizer
    /// order 2*input[i], i.e. m(1,2)=l, m(0,2)=k, m(0,1)=m.
    static CoxeterSystem triangle(int l, int k, int m);

    /// Rank-4 system from the six tetrahedron edge labels in pair order
    /// (ab,ac,ad,bc,bd,cd) over input letters a,b,c,d = slots 0..3. The edge
    /// label of a letter pair is the exponent of the complementary generator
    /// pair: m(g_u,g_v) = label(xy) for {u,v} = {0..3} \ {x,y}.
    static CoxeterSystem tetrahedral(const std::array<int, 6>& labels);

    int exponent(int s, int t) const { return exp[s][t]; }
    /// Tetrahedron edge label of the letter pair {x,y} (rank 4).
    int label(int x, int y) const;
    bool all_finite() const;
    bool all_geq3() const;
    /// Input-order exponent list: rank 3 -> (l,k,m); rank 4 -> six labels.
    std::vector<int> input_exponents() const;
    void validate() const; // throws InputError
};

/// Index of a letter pair (x<y over letters 0..3) in (ab,ac,ad,bc,bd,cd).
int letter_pair_index(int x, int y);

/// (p,q,r) with integer entries >= 2 presents an infinite triangle group
/// iff 1/p + 1/q + 1/r <= 1. kInfiniteExponent entries count as infinite.
bool triangle_group_infinite(int p, int q, int r);

/// Sorted type in {(2,4,4),(2,4,5),(2,5,5)}.
bool excluded_triangle_type(int p, int q, int r);

/// The word problem machinery: Tits' elementary M-operations (delete ss,
/// replace the length-m(s,t) alternating word by its reversal), driven to
/// the shortlex-minimal form by exhaustive orbit search, memoized.
class WordEngine {
public:
    explicit WordEngine(const CoxeterSystem& sys);

    const CoxeterSystem& system() const { return sys_; }

    /// Shortlex normal form. Throws InputError on invalid generator indices.
    NormalForm reduce(const Word& word) const;

    /// reduce(nf + s).
    NormalForm mult(const NormalForm& nf, int s) const;

    int length(const Word& word) const { return static_cast<int>(reduce(word).size()); }

    /// Unique minimal-length element of w·W_J, by greedy right-multiplication
    /// while the length decreases. J must be a proper generator subset.
    NormalForm min_coset_rep(const Word& word, std::span<const int> subgroup) const;

    /// Right descent set of the element (as a bitmask over generators).
    unsigned descent_set(const NormalForm& nf) const;

    /// All reduced expressions of the element.
    std::vector<Word> reduced_words(const NormalForm& nf) const;

    /// Optional normal-form cache persistence. Implementation-defined text
    /// format, not part of the stable interface; loading validates that the
    /// cache was produced for the same system.
    void save_cache(const std::string& path) const;
    void load_cache(const std::string& path);

private:
    struct OrbitResult {
        NormalForm canonical;
        std::vector<Word> orbit;   // filled only when the input is reduced
        int deletion_pos = -1;     // >= 0: orbit word with u[i]==u[i+1] found
        Word deletion_word;
    };
    OrbitResult explore(const Word& word) const;

    CoxeterSystem sys_;
    mutable std::unordered_map<Word, NormalForm> cache_;
};

/// Free-function forms of the word operations (transient engine).
NormalForm tits_reduce(const Word& word, const CoxeterSystem& sys);
NormalForm min_coset_rep(const Word& word, std::span<const int> subgroup,
                         const CoxeterSystem& sys);

/// Brute-force enumeration of the dihedral special subgroup W_{s,t}; returns
/// the normal forms of all 2*m(s,t) elements. Requires m(s,t) finite.
std::vector<NormalForm> enumerate_dihedral(const CoxeterSystem& sys, int s, int t);

std::string word_display(const Word& word, const CoxeterSystem& sys);

/// Identity of a simplex of the Coxeter realization: the coset w·W_J given
/// by its subgroup generators and minimal-length representative.
struct CosetId {
    std::vector<int> subgroup_type; // generator indices, ascending
    NormalForm min_rep;

    bool operator==(const CosetId&) const = default;
    bool operator<(const CosetId& other) const;
};

struct BallOptions {
    long long node_budget = 2'000'000;
};

/// Finite ball of the Coxeter realization: chambers are the group elements
/// of length <= radius (BFS over right multiplication); the simplex of slot
/// set I in chamber w is the coset w·W_{S \ I}. Vertex slot i carries the
/// label of the opposite structure (rank 3: stabilizer order / 2; rank 4:
/// the tetrahedron letter after case assignment). Requires all exponents
/// finite; radius >= 0.
TypedComplex build_coxeter_ball(const CoxeterSystem& sys, int radius,
                                const BallOptions& options = {});

// Sentinel depth for complexes without chamber metadata (treated as fully
// interior, e.g. externally ingested complexes).
inline constexpr int kDepthUnbounded = std::numeric_limits<int>::max() / 4;

/// Interior-margin bookkeeping over the frozen chamber structure of a ball.
/// Rank 3: depth = radius − max chamber distance over the star (positive iff
/// the star is complete). Rank 4: vertex stabilizers are infinite, so depth =
/// radius − min chamber distance (guaranteed in-ball gallery horizon).
class DepthOracle {
public:
    explicit DepthOracle(const TypedComplex& complex);

    int depth(int v) const;
    bool has_chamber_data() const { return has_data_; }
    /// Number of in-ball chambers containing v.
    int star_size(int v) const;
    /// Rank 3: star is chamber-complete (star size == 2 * slot exponent).
    bool star_complete(int v) const;
    /// Rank 3: star of v complete and stars of all type-2 neighbours
    /// complete; the systolized link of such a vertex computed from the ball
    /// equals the true link. Overrides the margin.
    bool locally_complete(int v) const;
    /// Both endpoints' common chambers count equals 2 * pair label (rank 4).
    bool edge_star_complete(int u, int v, int pair_label) const;

private:
    const TypedComplex* complex_;
    bool has_data_ = false;
    int rank_ = 0;
    int radius_ = -1;
    std::vector<int> min_dist_, max_dist_, star_size_;
    std::vector<int> slot_exponent_; // per vertex, rank 3 only (0 otherwise)
    std::vector<std::vector<int>> chambers_of_; // chamber indices per vertex
    AdjacencyView adj_;
};

/// radius − (rank 3: max / rank 4: min) chamber distance over the chambers
/// containing v; kDepthUnbounded when the complex carries no chamber data.
int vertex_depth(const TypedComplex& complex, int v);

} // namespace systo
