#include "systo/coxeter.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace systo {

namespace {

constexpr std::array<std::array<int, 2>, 6> kLetterPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

} // namespace

int letter_pair_index(int x, int y) {
    if (x > y) std::swap(x, y);
    for (int i = 0; i < 6; ++i)
        if (kLetterPairs[i][0] == x && kLetterPairs[i][1] == y) return i;
    throw InputError("letter_pair_index: bad letter pair");
}

CoxeterSystem CoxeterSystem::triangle(int l, int k, int m) {
    CoxeterSystem sys;
    sys.rank = 3;
    for (int i = 0; i < 3; ++i) sys.exp[i][i] = 1;
    sys.exp[1][2] = sys.exp[2][1] = l;
    sys.exp[0][2] = sys.exp[2][0] = k;
    sys.exp[0][1] = sys.exp[1][0] = m;
    sys.generator_names = {"s", "t", "u"};
    sys.validate();
    return sys;
}

CoxeterSystem CoxeterSystem::tetrahedral(const std::array<int, 6>& labels) {
    CoxeterSystem sys;
    sys.rank = 4;
    for (int i = 0; i < 4; ++i) sys.exp[i][i] = 1;
    for (int p = 0; p < 6; ++p) {
        // the label of a letter pair is the exponent of the complementary pair
        std::array<bool, 4> in{};
        in[kLetterPairs[p][0]] = in[kLetterPairs[p][1]] = true;
        int u = -1, v = -1;
        for (int i = 0; i < 4; ++i)
            if (!in[i]) (u < 0 ? u : v) = i;
        sys.exp[u][v] = sys.exp[v][u] = labels[p];
    }
    sys.generator_names = {"ra", "rb", "rc", "rd"};
    sys.validate();
    return sys;
}

int CoxeterSystem::label(int x, int y) const {
    if (rank != 4) throw InputError("label: rank-4 only");
    std::array<bool, 4> in{};
    if (x == y || x < 0 || y < 0 || x > 3 || y > 3) throw InputError("label: bad letters");
    in[x] = in[y] = true;
    int u = -1, v = -1;
    for (int i = 0; i < 4; ++i)
        if (!in[i]) (u < 0 ? u : v) = i;
    return exp[u][v];
}

bool CoxeterSystem::all_finite() const {
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j)
            if (exp[i][j] == kInfiniteExponent) return false;
    return true;
}

bool CoxeterSystem::all_geq3() const {
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j)
            if (exp[i][j] != kInfiniteExponent && exp[i][j] < 3) return false;
    return true;
}

std::vector<int> CoxeterSystem::input_exponents() const {
    if (rank == 3) return {exp[1][2], exp[0][2], exp[0][1]};
    std::vector<int> out;
    for (const auto& p : kLetterPairs) out.push_back(label(p[0], p[1]));
    return out;
}

void CoxeterSystem::validate() const {
    if (rank != 3 && rank != 4) throw InputError("rank must be 3 or 4");
    if (generator_names.size() != static_cast<size_t>(rank))
        throw InputError("generator name count must equal the rank");
    for (int i = 0; i < rank; ++i) {
        if (exp[i][i] != 1) throw InputError("diagonal exponents must be 1");
        for (int j = 0; j < rank; ++j) {
            if (exp[i][j] != exp[j][i]) throw InputError("exponent matrix must be symmetric");
            if (i != j && exp[i][j] != kInfiniteExponent && exp[i][j] < 2)
                throw InputError("off-diagonal exponents must be >= 2 or infinite");
        }
    }
}

bool triangle_group_infinite(int p, int q, int r) {
    if (p == kInfiniteExponent || q == kInfiniteExponent || r == kInfiniteExponent) return true;
    // 1/p + 1/q + 1/r <= 1, exactly
    long long pq = static_cast<long long>(p) * q;
    return pq + static_cast<long long>(p) * r + static_cast<long long>(q) * r <= pq * r;
}

bool excluded_triangle_type(int p, int q, int r) {
    std::array<int, 3> t{p, q, r};
    std::sort(t.begin(), t.end());
    return t == std::array<int, 3>{2, 4, 4} || t == std::array<int, 3>{2, 4, 5} ||
           t == std::array<int, 3>{2, 5, 5};
}

// ---- word engine ----

WordEngine::WordEngine(const CoxeterSystem& sys) : sys_(sys) { sys_.validate(); }

namespace {

void validate_word(const Word& word, const CoxeterSystem& sys) {
    for (unsigned char c : word)
        if (c >= static_cast<unsigned>(sys.rank))
            throw InputError("invalid generator index in word");
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

} // namespace

WordEngine::OrbitResult WordEngine::explore(const Word& word) const {
    OrbitResult result;
    result.canonical = word;
    std::unordered_set<Word> visited{word};
    std::vector<Word> queue{word};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        Word u = queue[qi];
        int len = static_cast<int>(u.size());
        for (int i = 0; i + 1 < len; ++i) {
            if (u[i] == u[i + 1]) {
                result.deletion_pos = i;
                result.deletion_word = u;
                return result;
            }
        }
        if (shortlex_less(u, result.canonical)) result.canonical = u;
        for (int i = 0; i + 1 < len; ++i) {
            int s = u[i], t = u[i + 1];
            int m = sys_.exp[s][t];
            if (m == kInfiniteExponent || i + m > len) continue;
            bool alternating = true;
            for (int j = 0; j < m; ++j) {
                if (u[i + j] != (j % 2 == 0 ? s : t)) {
                    alternating = false;
                    break;
                }
            }
            if (!alternating) continue;
            Word v = u;
            for (int j = 0; j < m; ++j) v[i + j] = static_cast<char>(j % 2 == 0 ? t : s);
            if (visited.insert(v).second) queue.push_back(v);
        }
    }
    result.orbit = std::move(queue);
    return result;
}

NormalForm WordEngine::reduce(const Word& word) const {
    validate_word(word, sys_);
    if (auto it = cache_.find(word); it != cache_.end()) return it->second;
    std::vector<Word> aliases;
    Word current = word;
    for (;;) {
        if (auto it = cache_.find(current); it != cache_.end()) {
            for (const auto& a : aliases) cache_.emplace(a, it->second);
            return it->second;
        }
        OrbitResult orbit = explore(current);
        if (orbit.deletion_pos >= 0) {
            aliases.push_back(current);
            Word shorter = orbit.deletion_word;
            shorter.erase(orbit.deletion_pos, 2);
            current = std::move(shorter);
            continue;
        }
        for (const auto& u : orbit.orbit) cache_.emplace(u, orbit.canonical);
        for (const auto& a : aliases) cache_.emplace(a, orbit.canonical);
        return orbit.canonical;
    }
}

NormalForm WordEngine::mult(const NormalForm& nf, int s) const {
    if (s < 0 || s >= sys_.rank) throw InputError("invalid generator index");
    Word w = nf;
    w.push_back(static_cast<char>(s));
    return reduce(w);
}

NormalForm WordEngine::min_coset_rep(const Word& word, std::span<const int> subgroup) const {
    if (static_cast<int>(subgroup.size()) >= sys_.rank)
        throw InputError("min_coset_rep: subgroup must be a proper generator subset");
    std::vector<int> J(subgroup.begin(), subgroup.end());
    std::sort(J.begin(), J.end());
    for (int j : J)
        if (j < 0 || j >= sys_.rank) throw InputError("invalid generator index in subgroup");
    NormalForm nf = reduce(word);
    bool improved = true;
    while (improved) {
        improved = false;
        for (int j : J) {
            NormalForm t = mult(nf, j);
            if (t.size() < nf.size()) {
                nf = std::move(t);
                improved = true;
                break;
            }
        }
    }
    return nf;
}

unsigned WordEngine::descent_set(const NormalForm& nf) const {
    unsigned mask = 0;
    for (int s = 0; s < sys_.rank; ++s)
        if (mult(nf, s).size() < nf.size()) mask |= 1u << s;
    return mask;
}

std::vector<Word> WordEngine::reduced_words(const NormalForm& nf) const {
    NormalForm canonical = reduce(nf);
    OrbitResult orbit = explore(canonical);
    std::sort(orbit.orbit.begin(), orbit.orbit.end());
    return orbit.orbit;
}

namespace {

std::string encode_word(const Word& word) {
    if (word.empty()) return "-";
    std::string out;
    for (char c : word) out += static_cast<char>('0' + c);
    return out;
}

Word decode_word(const std::string& text, int rank) {
    if (text == "-") return Word{};
    Word out;
    for (char c : text) {
        if (c < '0' || c >= '0' + rank) throw InputError("cache: bad word encoding");
        out.push_back(static_cast<char>(c - '0'));
    }
    return out;
}

} // namespace

void WordEngine::save_cache(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << "systo-nf-cache 1\nrank " << sys_.rank << "\nexp";
    for (int i = 0; i < sys_.rank; ++i)
        for (int j = 0; j < sys_.rank; ++j) out << ' ' << sys_.exp[i][j];
    out << '\n';
    std::vector<std::pair<Word, Word>> entries(cache_.begin(), cache_.end());
    std::sort(entries.begin(), entries.end());
    for (const auto& [word, nf] : entries)
        out << encode_word(word) << ' ' << encode_word(nf) << '\n';
}

void WordEngine::load_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::string header, version;
    in >> header >> version;
    if (header != "systo-nf-cache" || version != "1") throw InputError("cache: bad header");
    std::string tag;
    int rank = 0;
    in >> tag >> rank;
    if (tag != "rank" || rank != sys_.rank) throw InputError("cache: system rank differs");
    in >> tag;
    if (tag != "exp") throw InputError("cache: bad header");
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) {
            int value = -1;
            in >> value;
            if (value != sys_.exp[i][j]) throw InputError("cache: exponent matrix differs");
        }
    std::string word_text, nf_text;
    while (in >> word_text >> nf_text)
        cache_.emplace(decode_word(word_text, rank), decode_word(nf_text, rank));
}

NormalForm tits_reduce(const Word& word, const CoxeterSystem& sys) {
    return WordEngine(sys).reduce(word);
}

NormalForm min_coset_rep(const Word& word, std::span<const int> subgroup,
                         const CoxeterSystem& sys) {
    return WordEngine(sys).min_coset_rep(word, subgroup);
}

std::vector<NormalForm> enumerate_dihedral(const CoxeterSystem& sys, int s, int t) {
    if (s == t || s < 0 || t < 0 || s >= sys.rank || t >= sys.rank)
        throw InputError("enumerate_dihedral: bad generator pair");
    if (sys.exp[s][t] == kInfiniteExponent)
        throw InputError("enumerate_dihedral: infinite exponent");
    WordEngine engine(sys);
    std::unordered_set<Word> seen{Word{}};
    std::vector<Word> queue{Word{}};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        for (int g : {s, t}) {
            NormalForm next = engine.mult(queue[qi], g);
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    std::sort(queue.begin(), queue.end(), shortlex_less);
    return queue;
}

std::string word_display(const Word& word, const CoxeterSystem& sys) {
    if (word.empty()) return "e";
    bool compact = true;
    for (const auto& name : sys.generator_names)
        if (name.size() != 1) compact = false;
    std::string out;
    for (size_t i = 0; i < word.size(); ++i) {
        if (i && !compact) out += '.';
        out += sys.generator_names[static_cast<unsigned char>(word[i])];
    }
    return out;
}

bool CosetId::operator<(const CosetId& other) const {
    if (subgroup_type != other.subgroup_type) return subgroup_type < other.subgroup_type;
    return shortlex_less(min_rep, other.min_rep);
}

} // namespace systo
