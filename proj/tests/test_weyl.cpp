#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <unordered_set>

#include "gkm/weyl.hpp"

using namespace gkm;

namespace {

// Oracle: the set {x : x has a reduced word occurring as a subword of `word`},
// collected by a left-to-right scan keeping only length-increasing extensions.
std::unordered_set<WeylElement, WeylElementHash> reduced_subword_ideal(
    const std::shared_ptr<const RootSystem>& rs, const Word& word) {
    std::unordered_set<WeylElement, WeylElementHash> states;
    states.insert(WeylElement::identity(rs));
    for (int b : word) {
        auto next = states;
        for (const WeylElement& x : states)
            if (!x.right_descent(b)) next.insert(x.times_simple(b));
        states = std::move(next);
    }
    return states;
}

} // namespace

TEST_CASE("word serialization round trips") {
    CHECK(word_to_string({}) == "e");
    CHECK(word_to_string({1, 2, 1}) == "1,2,1");
    CHECK(word_from_string("e") == Word{});
    CHECK(word_from_string("") == Word{});
    CHECK(word_from_string("1,2,1") == Word({1, 2, 1}));
    CHECK(word_from_string(" 2 , 10 ") == Word({2, 10}));
    CHECK_THROWS_AS(word_from_string("1,,2"), spec_error);
    CHECK_THROWS_AS(word_from_string("1,2,"), spec_error);
    CHECK_THROWS_AS(word_from_string("x"), spec_error);
}

TEST_CASE("simple reflections are involutions and satisfy braid relations") {
    auto rs = RootSystem::build("A2");
    auto s1 = WeylElement::simple(rs, 1);
    auto s2 = WeylElement::simple(rs, 2);
    CHECK(s1 * s1 == WeylElement::identity(rs));
    CHECK(s1 * s2 * s1 == s2 * s1 * s2);
    CHECK((s1 * s2).length() == 2);
    CHECK((s1 * s2 * s1).length() == 3);
    CHECK(WeylElement::from_word(rs, {1, 2, 1}) == WeylElement::from_word(rs, {2, 1, 2}));

    auto b2 = RootSystem::build("B2");
    CHECK(WeylElement::from_word(b2, {1, 2, 1, 2}) == WeylElement::from_word(b2, {2, 1, 2, 1}));
    CHECK(WeylElement::from_word(b2, {1, 2, 1}) != WeylElement::from_word(b2, {2, 1, 2}));

    auto g2 = RootSystem::build("G2");
    CHECK(WeylElement::from_word(g2, {1, 2, 1, 2, 1, 2}) ==
          WeylElement::from_word(g2, {2, 1, 2, 1, 2, 1}));
}

TEST_CASE("element arithmetic in E8 works without group enumeration") {
    auto e8 = RootSystem::build("E8");
    // Nodes 1 and 2 are not adjacent, so s1 and s2 commute.
    CHECK(WeylElement::from_word(e8, {1, 2, 1, 2}) == WeylElement::identity(e8));
    // Nodes 3 and 4 are adjacent.
    CHECK(WeylElement::from_word(e8, {3, 4, 3}) == WeylElement::from_word(e8, {4, 3, 4}));
    auto w = WeylElement::from_word(e8, {1, 3, 4, 2, 5});
    CHECK(w.length() == 5);
    CHECK((w * w.inverse()).is_identity());
    CHECK(w.inverse().length() == 5);
}

TEST_CASE("length equals inversion count and inverse preserves it") {
    for (const char* name : {"A2", "B2", "G2", "A3"}) {
        auto rs = RootSystem::build(name);
        WeylGroup W(rs);
        for (int i = 0; i < W.size(); ++i) {
            const auto& w = W.element(i);
            int inv = 0;
            for (const auto& beta : rs->positive_roots())
                if (is_negative(w.act(beta))) ++inv;
            CHECK(w.length() == inv);
            CHECK(w.inverse().length() == w.length());
        }
    }
}

TEST_CASE("descents match length changes") {
    auto rs = RootSystem::build("B2");
    WeylGroup W(rs);
    for (int i = 0; i < W.size(); ++i) {
        const auto& w = W.element(i);
        for (int b = 1; b <= rs->rank(); ++b) {
            CHECK(w.right_descent(b) == (w.times_simple(b).length() < w.length()));
            CHECK(w.left_descent(b) == (w.simple_times(b).length() < w.length()));
            CHECK(w.times_simple(b).length() == (w * WeylElement::simple(rs, b)).length());
        }
    }
}

TEST_CASE("canonical reduced words in rank two") {
    auto rs = RootSystem::build("A2");
    CHECK(canonical_reduced_word(WeylElement::identity(rs)) == Word{});
    CHECK(canonical_reduced_word(WeylElement::from_word(rs, {1})) == Word({1}));
    CHECK(canonical_reduced_word(WeylElement::from_word(rs, {2, 1})) == Word({2, 1}));
    CHECK(canonical_reduced_word(WeylElement::from_word(rs, {2, 1, 2})) == Word({1, 2, 1}));

    auto b2 = RootSystem::build("B2");
    CHECK(canonical_reduced_word(WeylElement::from_word(b2, {2, 1, 2, 1})) == Word({1, 2, 1, 2}));
}

TEST_CASE("canonical word is reduced and canonical order is total") {
    for (const char* name : {"A2", "B2", "G2", "A3", "A1x A1"}) {
        auto rs = RootSystem::build(name);
        WeylGroup W(rs);
        std::set<Word> seen;
        for (int i = 0; i < W.size(); ++i) {
            const Word& w = W.word(i);
            CHECK(static_cast<int>(w.size()) == W.length(i));
            CHECK(WeylElement::from_word(rs, w) == W.element(i));
            CHECK(seen.insert(w).second);
            if (i > 0) CHECK(canonical_less(W.element(i - 1), W.element(i)));
        }
    }
}

TEST_CASE("all reduced words: rank-two counts and A3 longest element") {
    auto rs = RootSystem::build("A2");
    auto w0 = WeylElement::from_word(rs, {1, 2, 1});
    auto words = all_reduced_words(w0);
    REQUIRE(words.size() == 2);
    CHECK(words[0] == Word({1, 2, 1}));
    CHECK(words[1] == Word({2, 1, 2}));

    auto a3 = RootSystem::build("A3");
    WeylGroup W(a3);
    auto longest = W.element(W.longest_element_index());
    CHECK(longest.length() == 6);
    CHECK(all_reduced_words(longest).size() == 16);

    for (const Word& word : all_reduced_words(longest)) {
        CHECK(word.size() == 6);
        CHECK(WeylElement::from_word(a3, word) == longest);
    }
}

TEST_CASE("all reduced words refuses lengths above the enumeration cap") {
    auto rs = RootSystem::build("A3");
    WeylGroup W(rs);
    auto longest = W.element(W.longest_element_index());
    CHECK_THROWS_AS(all_reduced_words(longest, 5), cap_error);
}

TEST_CASE("bruhat order agrees with the reduced-subword oracle") {
    for (const char* name : {"A2", "B2", "G2", "A3", "A2xA1"}) {
        auto rs = RootSystem::build(name);
        WeylGroup W(rs);
        for (int u = 0; u < W.size(); ++u) {
            // The ideal must not depend on the chosen reduced word.
            auto words = all_reduced_words(W.element(u));
            auto ideal = reduced_subword_ideal(rs, words[0]);
            for (std::size_t k = 1; k < words.size(); ++k)
                CHECK(reduced_subword_ideal(rs, words[k]) == ideal);
            for (int v = 0; v < W.size(); ++v) {
                bool expect = ideal.count(W.element(v)) > 0;
                CHECK(bruhat_leq(W.element(v), W.element(u)) == expect);
                CHECK(W.leq(v, u) == expect);
            }
        }
    }
}

TEST_CASE("bruhat order basics") {
    auto rs = RootSystem::build("A2");
    WeylGroup W(rs);
    int e = W.identity_index();
    int w0 = W.longest_element_index();
    for (int i = 0; i < W.size(); ++i) {
        CHECK(W.leq(e, i));
        CHECK(W.leq(i, w0));
        CHECK(W.leq(i, i));
        for (int j = 0; j < W.size(); ++j)
            if (W.leq(i, j) && W.leq(j, i)) CHECK(i == j);
    }
    int s1 = W.from_word_index({1});
    int s1s2 = W.from_word_index({1, 2});
    int s2s1 = W.from_word_index({2, 1});
    CHECK(W.leq(s1, s1s2));
    CHECK(W.leq(s1, s2s1));
    CHECK_FALSE(W.leq(s1s2, s2s1));
}

TEST_CASE("group enumeration sizes and cap") {
    CHECK(WeylGroup(RootSystem::build("A1")).size() == 2);
    CHECK(WeylGroup(RootSystem::build("A3")).size() == 24);
    CHECK(WeylGroup(RootSystem::build("B3")).size() == 48);
    CHECK(WeylGroup(RootSystem::build("C3")).size() == 48);
    CHECK(WeylGroup(RootSystem::build("D4")).size() == 192);
    CHECK(WeylGroup(RootSystem::build("G2")).size() == 12);
    CHECK(WeylGroup(RootSystem::build("A2xA1")).size() == 12);
    CHECK(WeylGroup(RootSystem::build("F4")).size() == 1152);
    CHECK(WeylGroup(RootSystem::build("A3xB3")).size() == 1152); // exactly at cap
    CHECK_THROWS_AS(WeylGroup(RootSystem::build("E6")), cap_error);
    CHECK_THROWS_AS(WeylGroup(RootSystem::build("B3xC3")), cap_error);
}

TEST_CASE("multiplication tables are consistent with element arithmetic") {
    auto rs = RootSystem::build("B2");
    WeylGroup W(rs);
    for (int i = 0; i < W.size(); ++i) {
        for (int b = 1; b <= rs->rank(); ++b) {
            CHECK(W.element(W.right_mult(i, b)) == W.element(i) * WeylElement::simple(rs, b));
            CHECK(W.element(W.left_mult(i, b)) == WeylElement::simple(rs, b) * W.element(i));
        }
        CHECK(W.element(W.inverse_index(i)) == W.element(i).inverse());
        for (int j = 0; j < W.size(); ++j)
            CHECK(W.element(W.mult(i, j)) == W.element(i) * W.element(j));
    }
}

TEST_CASE("minimal coset representatives and parabolic subgroups") {
    auto rs = RootSystem::build("A2");
    WeylGroup W(rs);
    auto reps = W.minimal_coset_reps({2});
    REQUIRE(reps.size() == 3);
    CHECK(W.word(reps[0]) == Word{});
    CHECK(W.word(reps[1]) == Word({1}));
    CHECK(W.word(reps[2]) == Word({2, 1}));
    auto sub = W.parabolic_subgroup({2});
    REQUIRE(sub.size() == 2);
    CHECK(W.word(sub[0]) == Word{});
    CHECK(W.word(sub[1]) == Word({2}));

    // Empty subset: W_P = {e}, W^P = W.
    CHECK(W.minimal_coset_reps({}).size() == 6);
    CHECK(W.parabolic_subgroup({}).size() == 1);
    // Full subset: W_P = W, W^P = {e}.
    CHECK(W.minimal_coset_reps({1, 2}).size() == 1);
    CHECK(W.parabolic_subgroup({1, 2}).size() == 6);
}

TEST_CASE("parabolic decomposition: unique length-additive factorization") {
    for (const char* name : {"A2", "B2", "A3", "A2xA1"}) {
        auto rs = RootSystem::build(name);
        WeylGroup W(rs);
        std::vector<ParabolicSubset> subsets;
        int n = rs->rank();
        for (int mask = 0; mask < (1 << n); ++mask) {
            ParabolicSubset p;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) p.push_back(i + 1);
            subsets.push_back(p);
        }
        for (const auto& p : subsets) {
            auto reps = W.minimal_coset_reps(p);
            auto sub = W.parabolic_subgroup(p);
            CHECK(reps.size() * sub.size() == static_cast<std::size_t>(W.size()));
            std::set<int> hit;
            for (int w = 0; w < W.size(); ++w) {
                auto [v, u] = W.parabolic_decompose(w, p);
                CHECK(std::binary_search(reps.begin(), reps.end(), v));
                CHECK(std::binary_search(sub.begin(), sub.end(), u));
                CHECK(W.mult(v, u) == w);
                CHECK(W.length(v) + W.length(u) == W.length(w));
                hit.insert(w);
            }
            CHECK(hit.size() == static_cast<std::size_t>(W.size()));
        }
    }
}

TEST_CASE("suffix sets match the word-based definition") {
    auto rs = RootSystem::build("A2");
    WeylGroup W(rs);
    int s2s1 = W.from_word_index({2, 1});
    auto suf = W.suffixes(s2s1);
    std::vector<int> expect = {W.identity_index(), W.from_word_index({1}), s2s1};
    std::sort(expect.begin(), expect.end());
    CHECK(suf == expect);
    CHECK(W.suffixes(W.longest_element_index()).size() == 6);

    for (const char* name : {"A2", "B2"}) {
        auto sys = RootSystem::build(name);
        WeylGroup G(sys);
        for (int w = 0; w < G.size(); ++w) {
            auto fast = G.suffixes(w);
            // Oracle: u is a suffix of w iff some reduced word of w ends with
            // some reduced word of u.
            std::vector<int> slow;
            auto wwords = all_reduced_words(G.element(w));
            for (int u = 0; u < G.size(); ++u) {
                bool found = false;
                for (const Word& uw : all_reduced_words(G.element(u))) {
                    for (const Word& ww : wwords) {
                        if (uw.size() > ww.size()) continue;
                        if (std::equal(uw.rbegin(), uw.rend(), ww.rbegin())) {
                            found = true;
                            break;
                        }
                    }
                    if (found) break;
                }
                if (found) slow.push_back(u);
            }
            CHECK(fast == slow);
        }
    }
}

TEST_CASE("longest element of A2 sends each positive root negative") {
    auto rs = RootSystem::build("A2");
    WeylGroup W(rs);
    auto w0 = W.element(W.longest_element_index());
    CHECK(w0.length() == 3);
    CHECK(W.word(W.longest_element_index()) == Word({1, 2, 1}));
    for (const auto& beta : rs->positive_roots()) CHECK(is_negative(w0.act(beta)));
}

TEST_CASE("parabolic subset normalization") {
    CHECK(normalize_parabolic({3, 1, 3}, 3) == ParabolicSubset({1, 3}));
    CHECK(normalize_parabolic({}, 2) == ParabolicSubset{});
    CHECK_THROWS_AS(normalize_parabolic({0}, 2), spec_error);
    CHECK_THROWS_AS(normalize_parabolic({4}, 3), spec_error);
}
