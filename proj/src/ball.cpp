#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "systo/coxeter.hpp"
#include "systo/systolize.hpp"

namespace systo {

namespace {

constexpr int kUnknown = -1;
constexpr int kOutside = -2;

// Chamber-level Cayley BFS with per-element transition tables. Each new
// element costs one braid-orbit enumeration (canonical form, descent set,
// and the orbit cache identifying rediscoveries from other parents).
class BallBuilder {
public:
    BallBuilder(const CoxeterSystem& sys, int radius, const BallOptions& options)
        : sys_(sys), radius_(radius), budget_(options.node_budget) {}

    struct Element {
        Word nf;
        int length = 0;
        std::array<int, 4> delta{kUnknown, kUnknown, kUnknown, kUnknown};
        unsigned descents = 0;
    };

    void run() {
        create(Word{});
        for (size_t id = 0; id < elements_.size(); ++id) {
            if (elements_[id].length >= radius_) continue;
            for (int s = 0; s < sys_.rank; ++s) {
                if (elements_[id].delta[s] != kUnknown) continue;
                Word candidate = elements_[id].nf;
                candidate.push_back(static_cast<char>(s));
                auto it = reduced_to_id_.find(candidate);
                int child;
                if (it != reduced_to_id_.end()) {
                    child = it->second;
                    elements_[id].delta[s] = child;
                    elements_[child].delta[s] = static_cast<int>(id);
                } else {
                    child = create(candidate);
                }
            }
        }
        // transitions never computed point out of the ball
        for (auto& e : elements_)
            for (int s = 0; s < sys_.rank; ++s)
                if (e.delta[s] == kUnknown) e.delta[s] = kOutside;
    }

    int min_rep_id(int id, unsigned subgroup_mask) const {
        for (;;) {
            unsigned hits = elements_[id].descents & subgroup_mask;
            if (!hits) return id;
            int s = std::countr_zero(hits);
            id = elements_[id].delta[s];
        }
    }

    const std::vector<Element>& elements() const { return elements_; }

private:
    // `reduced` must be a reduced word (a parent normal form extended by a
    // non-descent generator, or empty).
    int create(const Word& reduced) {
        if (static_cast<long long>(elements_.size()) >= budget_)
            throw ResourceError("ball construction exceeded the node budget");
        int id = static_cast<int>(elements_.size());
        Element elem;
        elem.length = static_cast<int>(reduced.size());

        // braid orbit = all reduced expressions of the element
        std::unordered_set<Word> visited{reduced};
        std::vector<Word> queue{reduced};
        Word canonical = reduced;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            Word u = queue[qi];
            int len = static_cast<int>(u.size());
            if (u < canonical) canonical = u;
            for (int i = 0; i + 1 < len; ++i) {
                int s = u[i], t = u[i + 1];
                int m = sys_.exp[s][t];
                if (m == kInfiniteExponent || i + m > len) continue;
                bool alternating = true;
                for (int j = 0; j < m; ++j)
                    if (u[i + j] != (j % 2 == 0 ? s : t)) {
                        alternating = false;
                        break;
                    }
                if (!alternating) continue;
                Word v = u;
                for (int j = 0; j < m; ++j) v[i + j] = static_cast<char>(j % 2 == 0 ? t : s);
                if (visited.insert(v).second) queue.push_back(v);
            }
        }
        elem.nf = canonical;
        elements_.push_back(std::move(elem));
        Element& rec = elements_.back();
        for (const Word& u : queue) {
            reduced_to_id_.emplace(u, id);
            if (u.empty()) continue;
            int s = static_cast<unsigned char>(u.back());
            rec.descents |= 1u << s;
            if (rec.delta[s] == kUnknown) {
                Word parent = u.substr(0, u.size() - 1);
                int pid = reduced_to_id_.at(parent); // shorter, created earlier
                rec.delta[s] = pid;
                elements_[pid].delta[s] = id;
            }
        }
        return id;
    }

    const CoxeterSystem& sys_;
    int radius_;
    long long budget_;
    std::vector<Element> elements_;
    std::unordered_map<Word, int> reduced_to_id_;
};

std::vector<std::string> rank3_slot_labels(const CoxeterSystem& sys) {
    std::vector<int> values = sys.input_exponents(); // (l,k,m)
    std::vector<std::string> labels;
    for (int i = 0; i < 3; ++i) {
        std::string label = std::to_string(values[i]);
        while (std::find(labels.begin(), labels.end(), label) != labels.end()) label += '\'';
        labels.push_back(label);
    }
    return labels;
}

} // namespace

TypedComplex build_coxeter_ball(const CoxeterSystem& sys, int radius, const BallOptions& options) {
    sys.validate();
    if (radius < 0) throw InputError("radius must be >= 0");
    if (!sys.all_finite())
        throw EligibilityError("unsupported type: infinite exponents have no finite chambers");
    if (options.node_budget <= 0) throw InputError("node budget must be positive");

    std::vector<std::string> slot_labels;
    std::vector<int> slot_exponents;
    std::string case_label;
    if (sys.rank == 3) {
        slot_labels = rank3_slot_labels(sys);
        slot_exponents = sys.input_exponents();
    } else {
        std::array<int, 4> letter_of_slot{0, 1, 2, 3};
        try {
            CaseAssignment assignment = classify_case(sys);
            for (int letter = 0; letter < 4; ++letter)
                letter_of_slot[assignment.slot_of_letter[letter]] = letter;
            case_label = case_label_name(assignment.label);
        } catch (const EligibilityError&) {
            // building is fine for ineligible rank-4 systems; identity letters
        }
        for (int slot = 0; slot < 4; ++slot)
            slot_labels.push_back(std::string(1, static_cast<char>('a' + letter_of_slot[slot])));
    }

    BallBuilder builder(sys, radius, options);
    builder.run();
    const auto& elements = builder.elements();

    unsigned full_mask = (1u << sys.rank) - 1;
    std::map<std::pair<int, int>, int> vertex_of; // (slot, min-rep element id) -> vertex id
    std::vector<VertexRec> vertices;
    std::vector<std::vector<int>> chambers(elements.size());
    for (size_t id = 0; id < elements.size(); ++id) {
        for (int slot = 0; slot < sys.rank; ++slot) {
            int rep = builder.min_rep_id(static_cast<int>(id), full_mask ^ (1u << slot));
            auto [it, inserted] =
                vertex_of.emplace(std::make_pair(slot, rep), static_cast<int>(vertices.size()));
            if (inserted) vertices.push_back({slot_labels[slot], "original"});
            chambers[id].push_back(it->second);
        }
        std::sort(chambers[id].begin(), chambers[id].end());
    }

    std::vector<std::array<int, 2>> edges;
    for (const auto& chamber : chambers)
        for (size_t i = 0; i < chamber.size(); ++i)
            for (size_t j = i + 1; j < chamber.size(); ++j)
                edges.push_back({chamber[i], chamber[j]});
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    TypedComplex out;
    out.vertices = std::move(vertices);
    out.edges = std::move(edges);
    out.edge_origins.assign(out.edges.size(), EdgeOrigin::Original);
    out.maximal_simplices = chambers;
    std::sort(out.maximal_simplices.begin(), out.maximal_simplices.end());

    Metadata& md = out.metadata;
    md.provenance = "coxeter_ball";
    md.rank = sys.rank;
    md.radius = radius;
    md.case_label = case_label;
    md.exponents = sys.input_exponents();
    md.generator_names = sys.generator_names;
    md.slot_labels = slot_labels;
    md.slot_exponents = slot_exponents;
    md.chambers = std::move(chambers);
    md.chamber_distances.reserve(elements.size());
    for (const auto& e : elements) md.chamber_distances.push_back(e.length);
    return out;
}

// ---- depth oracle ----

DepthOracle::DepthOracle(const TypedComplex& complex) : complex_(&complex), adj_(complex) {
    const Metadata& md = complex.metadata;
    rank_ = md.rank;
    radius_ = md.radius;
    int n = complex.vertex_count();
    if (md.chambers.empty() || md.radius < 0 ||
        md.chamber_distances.size() != md.chambers.size()) {
        has_data_ = false;
        return;
    }
    has_data_ = true;
    min_dist_.assign(n, kDepthUnbounded);
    max_dist_.assign(n, -1);
    star_size_.assign(n, 0);
    chambers_of_.assign(n, {});
    for (size_t ci = 0; ci < md.chambers.size(); ++ci) {
        for (int v : md.chambers[ci]) {
            if (v < 0 || v >= n) throw InputError("chamber metadata references unknown vertex");
            min_dist_[v] = std::min(min_dist_[v], md.chamber_distances[ci]);
            max_dist_[v] = std::max(max_dist_[v], md.chamber_distances[ci]);
            ++star_size_[v];
            chambers_of_[v].push_back(static_cast<int>(ci));
        }
    }
    slot_exponent_.assign(n, 0);
    if (rank_ == 3 && md.slot_labels.size() == 3 && md.slot_exponents.size() == 3) {
        for (int v = 0; v < n; ++v)
            for (int slot = 0; slot < 3; ++slot)
                if (complex.vertices[v].type == md.slot_labels[slot])
                    slot_exponent_[v] = md.slot_exponents[slot];
    }
}

int DepthOracle::depth(int v) const {
    if (!has_data_) return kDepthUnbounded;
    if (star_size_[v] == 0) return 0;
    if (rank_ == 4) return radius_ - min_dist_[v];
    return radius_ - max_dist_[v];
}

int DepthOracle::star_size(int v) const { return has_data_ ? star_size_[v] : 0; }

bool DepthOracle::star_complete(int v) const {
    return has_data_ && slot_exponent_[v] > 0 && star_size_[v] == 2 * slot_exponent_[v];
}

bool DepthOracle::locally_complete(int v) const {
    if (!has_data_ || rank_ != 3 || !star_complete(v)) return false;
    for (int u : adj_.neighbors(v))
        if (slot_exponent_[u] == 2 && !star_complete(u)) return false;
    return true;
}

bool DepthOracle::edge_star_complete(int u, int v, int pair_label) const {
    if (!has_data_) return true; // ingested complexes are presumed complete
    std::vector<int> common;
    std::set_intersection(chambers_of_[u].begin(), chambers_of_[u].end(),
                          chambers_of_[v].begin(), chambers_of_[v].end(),
                          std::back_inserter(common));
    return static_cast<int>(common.size()) == 2 * pair_label;
}

int vertex_depth(const TypedComplex& complex, int v) {
    if (v < 0 || v >= complex.vertex_count()) throw InputError("vertex_depth: vertex out of range");
    return DepthOracle(complex).depth(v);
}

} // namespace systo
