#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle_helpers.hpp"
#include "systo/coxeter.hpp"

using namespace systo;

namespace {

Word w(std::initializer_list<int> letters) {
    Word out;
    for (int x : letters) out.push_back(static_cast<char>(x));
    return out;
}

// all words over `rank` generators of length <= max_len, shortest first
std::vector<Word> all_words(int rank, int max_len) {
    std::vector<Word> words{Word{}};
    size_t level_start = 0;
    for (int len = 0; len < max_len; ++len) {
        size_t level_end = words.size();
        for (size_t i = level_start; i < level_end; ++i)
            for (int s = 0; s < rank; ++s) {
                Word ext = words[i];
                ext.push_back(static_cast<char>(s));
                words.push_back(std::move(ext));
            }
        level_start = level_end;
    }
    return words;
}

// random element-preserving rewrites: braid moves and ss-insertions
Word random_rewrite(const CoxeterSystem& sys, Word word, std::mt19937_64& rng, int steps) {
    std::uniform_int_distribution<int> gen(0, sys.rank - 1);
    for (int step = 0; step < steps; ++step) {
        if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
            int s = gen(rng);
            size_t pos = std::uniform_int_distribution<size_t>(0, word.size())(rng);
            Word pair;
            pair.assign(2, static_cast<char>(s));
            word.insert(pos, pair);
        } else {
            if (word.size() < 2) continue;
            size_t pos = std::uniform_int_distribution<size_t>(0, word.size() - 2)(rng);
            int s = word[pos], t = word[pos + 1];
            if (s == t) continue;
            int m = sys.exponent(s, t);
            if (m == kInfiniteExponent || pos + m > word.size()) continue;
            bool alternating = true;
            for (int j = 0; j < m; ++j)
                if (word[pos + j] != (j % 2 == 0 ? s : t)) alternating = false;
            if (!alternating) continue;
            for (int j = 0; j < m; ++j) word[pos + j] = static_cast<char>(j % 2 == 0 ? t : s);
        }
    }
    return word;
}

} // namespace

TEST_CASE("system construction and validation") {
    CoxeterSystem sys = CoxeterSystem::triangle(2, 3, 6);
    CHECK(sys.rank == 3);
    CHECK(sys.exponent(1, 2) == 2);
    CHECK(sys.exponent(0, 2) == 3);
    CHECK(sys.exponent(0, 1) == 6);
    CHECK(sys.input_exponents() == std::vector<int>{2, 3, 6});
    CHECK(sys.all_finite());
    CHECK_FALSE(sys.all_geq3());

    CHECK_THROWS_AS(CoxeterSystem::triangle(1, 3, 6), InputError);

    CoxeterSystem tet = CoxeterSystem::tetrahedral({2, 6, 3, 3, 6, 3});
    CHECK(tet.label(0, 1) == 2);
    CHECK(tet.label(0, 2) == 6);
    CHECK(tet.label(0, 3) == 3);
    CHECK(tet.label(1, 2) == 3);
    CHECK(tet.label(1, 3) == 6);
    CHECK(tet.label(2, 3) == 3);
    CHECK(tet.input_exponents() == std::vector<int>{2, 6, 3, 3, 6, 3});
}

TEST_CASE("triangle group classification helpers") {
    CHECK(triangle_group_infinite(2, 3, 6));
    CHECK(triangle_group_infinite(3, 3, 3));
    CHECK(triangle_group_infinite(2, 4, 4));
    CHECK_FALSE(triangle_group_infinite(2, 3, 5));
    CHECK_FALSE(triangle_group_infinite(2, 3, 3));
    CHECK(triangle_group_infinite(2, 3, kInfiniteExponent));
    CHECK(excluded_triangle_type(4, 2, 4));
    CHECK(excluded_triangle_type(2, 4, 5));
    CHECK(excluded_triangle_type(5, 5, 2));
    CHECK_FALSE(excluded_triangle_type(2, 3, 6));
}

TEST_CASE("tits_reduce on the stated words") {
    CoxeterSystem sys = CoxeterSystem::triangle(2, 3, 6);
    // s^2 = 1
    CHECK(tits_reduce(w({0, 0}), sys) == w({}));
    // generators 1,2 commute in (2,3,6): sts = t for the commuting pair
    CHECK(tits_reduce(w({1, 2, 1}), sys) == w({2}));
    // (st)^3 = 1 in the order-6 dihedral pair m(0,2) = 3
    CHECK(tits_reduce(w({0, 2, 0, 2, 0, 2}), sys) == w({}));
    CHECK_THROWS_AS(tits_reduce(w({3}), sys), InputError);
}

TEST_CASE("reduction is idempotent and constant on rewrite orbits") {
    CoxeterSystem sys = CoxeterSystem::triangle(2, 3, 6);
    WordEngine engine(sys);
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> gen(0, 2);
    for (int trial = 0; trial < 200; ++trial) {
        int len = std::uniform_int_distribution<int>(0, 9)(rng);
        Word word;
        for (int i = 0; i < len; ++i) word.push_back(static_cast<char>(gen(rng)));
        NormalForm nf = engine.reduce(word);
        CHECK(engine.reduce(nf) == nf);
        Word rewritten = random_rewrite(sys, word, rng, 6);
        CHECK(engine.reduce(rewritten) == nf);
        // |l(ws) - l(w)| = 1
        for (int s = 0; s < 3; ++s) {
            int diff = static_cast<int>(engine.mult(nf, s).size()) - static_cast<int>(nf.size());
            CHECK((diff == 1 || diff == -1));
        }
    }
}

TEST_CASE("exact matrix oracle certifies normal forms") {
    // group all words of length <= 6 by their exact geometric-representation
    // matrix; the shortlex-least member of each class must be the normal form
    for (auto exps : {std::array<int, 3>{2, 3, 6}, std::array<int, 3>{3, 3, 3},
                      std::array<int, 3>{2, 6, 6}}) {
        CAPTURE(exps[0]);
        CoxeterSystem sys = CoxeterSystem::triangle(exps[0], exps[1], exps[2]);
        WordEngine engine(sys);
        auto gens = oracle::reflection_matrices(sys);
        std::vector<Word> words = all_words(3, 6);
        std::map<oracle::MatKey, Word> least;
        for (const auto& word : words) {
            auto key = oracle::mat_key(oracle::word_matrix(word, gens));
            auto it = least.find(key);
            if (it == least.end())
                least.emplace(key, word);
            else if (word.size() < it->second.size() ||
                     (word.size() == it->second.size() && word < it->second))
                it->second = word;
        }
        for (const auto& word : words) {
            auto key = oracle::mat_key(oracle::word_matrix(word, gens));
            CHECK(engine.reduce(word) == least.at(key));
        }
    }
}

TEST_CASE("min_coset_rep on the stated cosets") {
    CoxeterSystem sys = CoxeterSystem::triangle(2, 3, 6);
    std::vector<int> J0{0};
    CHECK(min_coset_rep(w({0}), J0, sys) == w({}));
    std::vector<int> J12{1, 2};
    CHECK(min_coset_rep(w({}), J12, sys) == w({}));
    // coset (ts) W_{s} = {ts, t} for the commuting pair (1,2): minimum is t
    std::vector<int> J1{1};
    CHECK(min_coset_rep(w({2, 1}), J1, sys) == w({2}));
    WordEngine engine(sys);
    CHECK(engine.min_coset_rep(w({2}), J1) == w({2}));

    std::vector<int> full{0, 1, 2};
    CHECK_THROWS_AS(min_coset_rep(w({0}), full, sys), InputError);
}

TEST_CASE("coset identification is consistent") {
    CoxeterSystem sys = CoxeterSystem::triangle(2, 3, 6);
    WordEngine engine(sys);
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> gen(0, 2);
    std::vector<std::vector<int>> subsets{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
    for (int trial = 0; trial < 100; ++trial) {
        Word a, b;
        int la = std::uniform_int_distribution<int>(0, 6)(rng);
        int lb = std::uniform_int_distribution<int>(0, 6)(rng);
        for (int i = 0; i < la; ++i) a.push_back(static_cast<char>(gen(rng)));
        for (int i = 0; i < lb; ++i) b.push_back(static_cast<char>(gen(rng)));
        for (const auto& J : subsets) {
            // same coset iff a^{-1} b reduces into W_J (generators are involutions)
            Word inv_a(a.rbegin(), a.rend());
            NormalForm rel = engine.reduce(inv_a + b);
            bool supported = true;
            for (char c : rel)
                if (std::find(J.begin(), J.end(), static_cast<int>(c)) == J.end())
                    supported = false;
            bool same_rep = engine.min_coset_rep(a, J) == engine.min_coset_rep(b, J);
            CHECK(supported == same_rep);
        }
    }
}

TEST_CASE("dihedral subgroups enumerate to order 2m") {
    CoxeterSystem sys = CoxeterSystem::triangle(2, 3, 6);
    CHECK(enumerate_dihedral(sys, 1, 2).size() == 4);
    CHECK(enumerate_dihedral(sys, 0, 2).size() == 6);
    CHECK(enumerate_dihedral(sys, 0, 1).size() == 12);
}

TEST_CASE("normal-form cache round-trips") {
    CoxeterSystem sys = CoxeterSystem::triangle(2, 3, 6);
    WordEngine engine(sys);
    std::vector<Word> probes;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                probes.push_back(w({a, b, c, a, b}));
    std::vector<NormalForm> expected;
    for (const auto& word : probes) expected.push_back(engine.reduce(word));

    std::string path = "/tmp/systo_nf_cache_test.txt";
    engine.save_cache(path);
    WordEngine fresh(sys);
    fresh.load_cache(path);
    for (size_t i = 0; i < probes.size(); ++i) CHECK(fresh.reduce(probes[i]) == expected[i]);

    // a cache for a different system is rejected
    WordEngine other(CoxeterSystem::triangle(2, 4, 6));
    CHECK_THROWS_AS(other.load_cache(path), InputError);
    std::remove(path.c_str());
}

TEST_CASE("descent sets and reduced expressions") {
    CoxeterSystem sys = CoxeterSystem::triangle(2, 3, 6);
    WordEngine engine(sys);
    CHECK(engine.descent_set(w({})) == 0u);
    CHECK(engine.descent_set(w({0})) == 1u);
    auto words = engine.reduced_words(w({1, 2}));
    CHECK(words.size() == 2); // the commuting pair: two reduced expressions
    CHECK(std::find(words.begin(), words.end(), w({2, 1})) != words.end());
}
