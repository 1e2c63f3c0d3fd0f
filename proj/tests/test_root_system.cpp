#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "gkm/root_system.hpp"

using namespace gkm;

static RootVector rv(std::initializer_list<long long> xs) { return RootVector(xs); }

TEST_CASE("spec parsing accepts admissible factors and normalizes case") {
    CHECK(RootSystemSpec::parse("A2").str() == "A2");
    CHECK(RootSystemSpec::parse("a2xb3").str() == "A2xB3");
    CHECK(RootSystemSpec::parse(" G2 x A1 ").str() == "G2xA1");
    CHECK(RootSystemSpec::parse("E8").str() == "E8");
    CHECK(RootSystemSpec::parse("D4").rank() == 4);
    CHECK(RootSystemSpec::parse("A2xA1xA1").rank() == 4);
    CHECK(RootSystemSpec::parse("A2").irreducible());
    CHECK_FALSE(RootSystemSpec::parse("A2xA1").irreducible());
}

TEST_CASE("spec parsing rejects inadmissible or malformed input") {
    for (const char* bad : {"", "A0", "B1", "C1", "D2", "E5", "E9", "F3", "F5",
                            "G1", "G3", "H4", "A2x", "xA2", "A2yB1", "A", "2", "A-1", "A2 B3"}) {
        CHECK_THROWS_AS(RootSystemSpec::parse(bad), spec_error);
    }
}

TEST_CASE("weyl group orders by family") {
    CHECK(RootSystemSpec::parse("A1").weyl_order() == 2);
    CHECK(RootSystemSpec::parse("A3").weyl_order() == 24);
    CHECK(RootSystemSpec::parse("B2").weyl_order() == 8);
    CHECK(RootSystemSpec::parse("B3").weyl_order() == 48);
    CHECK(RootSystemSpec::parse("C4").weyl_order() == 384);
    CHECK(RootSystemSpec::parse("D4").weyl_order() == 192);
    CHECK(RootSystemSpec::parse("G2").weyl_order() == 12);
    CHECK(RootSystemSpec::parse("F4").weyl_order() == 1152);
    CHECK(RootSystemSpec::parse("E6").weyl_order() == 51840);
    CHECK(RootSystemSpec::parse("E7").weyl_order() == 2903040);
    CHECK(RootSystemSpec::parse("E8").weyl_order() == 696729600);
    CHECK(RootSystemSpec::parse("A2xB2").weyl_order() == 48);
}

TEST_CASE("cartan matrices match the fixed conventions") {
    auto a2 = RootSystem::build("A2");
    CHECK(a2->cartan_entry(1, 1) == 2);
    CHECK(a2->cartan_entry(1, 2) == -1);
    CHECK(a2->cartan_entry(2, 1) == -1);

    // B: double edge points from node n-1 to node n (a_{n,n-1} = -2).
    auto b3 = RootSystem::build("B3");
    CHECK(b3->cartan_entry(2, 3) == -1);
    CHECK(b3->cartan_entry(3, 2) == -2);
    // C is the transpose on that edge.
    auto c3 = RootSystem::build("C3");
    CHECK(c3->cartan_entry(2, 3) == -2);
    CHECK(c3->cartan_entry(3, 2) == -1);

    auto g2 = RootSystem::build("G2");
    CHECK(g2->cartan_entry(1, 2) == -3);
    CHECK(g2->cartan_entry(2, 1) == -1);

    auto f4 = RootSystem::build("F4");
    // Double bond points from node 3 to node 2: a_{32} = -2.
    CHECK(f4->cartan_entry(2, 3) == -1);
    CHECK(f4->cartan_entry(3, 2) == -2);
    CHECK(f4->cartan_entry(1, 2) == -1);
    CHECK(f4->cartan_entry(3, 4) == -1);

    // D4: nodes 1-2 chained, nodes 3 and 4 both attached to node 2.
    auto d4 = RootSystem::build("D4");
    CHECK(d4->cartan_entry(1, 2) == -1);
    CHECK(d4->cartan_entry(2, 3) == -1);
    CHECK(d4->cartan_entry(2, 4) == -1);
    CHECK(d4->cartan_entry(3, 4) == 0);
    CHECK(d4->cartan_entry(1, 3) == 0);

    // E6: chain 1-3-4-5-6 with node 2 attached to node 4.
    auto e6 = RootSystem::build("E6");
    CHECK(e6->cartan_entry(1, 3) == -1);
    CHECK(e6->cartan_entry(3, 4) == -1);
    CHECK(e6->cartan_entry(4, 5) == -1);
    CHECK(e6->cartan_entry(5, 6) == -1);
    CHECK(e6->cartan_entry(2, 4) == -1);
    CHECK(e6->cartan_entry(1, 2) == 0);
    CHECK(e6->cartan_entry(2, 3) == 0);

    // Product spec: block diagonal.
    auto prod = RootSystem::build("A2xA1");
    CHECK(prod->cartan_entry(1, 2) == -1);
    CHECK(prod->cartan_entry(1, 3) == 0);
    CHECK(prod->cartan_entry(2, 3) == 0);
    CHECK(prod->cartan_entry(3, 3) == 2);
}

TEST_CASE("simple reflections act by the cartan rule") {
    auto a2 = RootSystem::build("A2");
    CHECK(a2->simple_reflect(1, a2->simple_root(1)) == rv({-1, 0}));
    CHECK(a2->simple_reflect(1, a2->simple_root(2)) == rv({1, 1}));
    CHECK(a2->simple_reflect(2, a2->simple_root(1)) == rv({1, 1}));

    auto b2 = RootSystem::build("B2");
    // s2(a1) = a1 + 2 a2 because a_{21} = -2.
    CHECK(b2->simple_reflect(2, b2->simple_root(1)) == rv({1, 2}));
    CHECK(b2->simple_reflect(1, b2->simple_root(2)) == rv({1, 1}));

    auto g2 = RootSystem::build("G2");
    // a_{12} = -3: a1 is the short root.
    CHECK(g2->simple_reflect(2, g2->simple_root(1)) == rv({1, 1}));
    CHECK(g2->simple_reflect(1, g2->simple_root(2)) == rv({3, 1}));
}

TEST_CASE("positive root enumeration for small systems") {
    auto a2 = RootSystem::build("A2");
    std::vector<RootVector> expect_a2 = {rv({0, 1}), rv({1, 0}), rv({1, 1})};
    CHECK(a2->positive_roots() == expect_a2);

    auto b2 = RootSystem::build("B2");
    std::vector<RootVector> expect_b2 = {rv({0, 1}), rv({1, 0}), rv({1, 1}), rv({1, 2})};
    CHECK(b2->positive_roots() == expect_b2);

    auto g2 = RootSystem::build("G2");
    std::vector<RootVector> expect_g2 = {rv({0, 1}), rv({1, 0}), rv({1, 1}),
                                         rv({2, 1}), rv({3, 1}), rv({3, 2})};
    CHECK(g2->positive_roots() == expect_g2);
}

TEST_CASE("positive root counts") {
    CHECK(RootSystem::build("A3")->positive_roots().size() == 6);
    CHECK(RootSystem::build("B3")->positive_roots().size() == 9);
    CHECK(RootSystem::build("C3")->positive_roots().size() == 9);
    CHECK(RootSystem::build("D4")->positive_roots().size() == 12);
    CHECK(RootSystem::build("F4")->positive_roots().size() == 24);
    CHECK(RootSystem::build("E6")->positive_roots().size() == 36);
    CHECK(RootSystem::build("E7")->positive_roots().size() == 63);
    CHECK(RootSystem::build("E8")->positive_roots().size() == 120);
    CHECK(RootSystem::build("A2xB2")->positive_roots().size() == 7);
}

TEST_CASE("each simple reflection permutes the other positive roots") {
    for (const char* name : {"A2", "B2", "G2", "A3", "B3", "C3", "D4", "A2xA1"}) {
        auto rs = RootSystem::build(name);
        const auto& pos = rs->positive_roots();
        for (int i = 1; i <= rs->rank(); ++i) {
            CHECK(rs->simple_reflect(i, rs->simple_root(i)) == negate(rs->simple_root(i)));
            std::set<RootVector> others, images;
            for (const auto& b : pos) {
                if (b == rs->simple_root(i)) continue;
                others.insert(b);
                auto im = rs->simple_reflect(i, b);
                CHECK(is_positive(im));
                images.insert(im);
            }
            CHECK(others == images);
            for (const auto& b : pos) {
                CHECK(rs->simple_reflect(i, rs->simple_reflect(i, b)) == b);
            }
        }
    }
}
