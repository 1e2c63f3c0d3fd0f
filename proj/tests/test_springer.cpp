#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <random>

#include "gkm/springer.hpp"

using namespace gkm;

namespace {

struct Fixture {
    std::shared_ptr<const WeylGroup> W;
    BilleyTable table;
    explicit Fixture(const char* name)
        : W(std::make_shared<const WeylGroup>(RootSystem::build(name))), table(W) {}
};

Poly parse(int nvars, const std::string& s) { return poly_from_string(nvars, s); }

EquivariantClass random_class(std::shared_ptr<const Space> sp, BilleyTable& table,
                              std::mt19937& rng) {
    const int nv = sp->W->root_system_ptr()->rank();
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> var(1, nv);
    EquivariantClass acc = EquivariantClass::zero(sp);
    for (int k = 0; k < sp->size(); ++k) {
        const int c = coeff(rng);
        if (c == 0) continue;
        Poly coefficient = Poly::constant(nv, c);
        if (coeff(rng) > 0) coefficient = coefficient * Poly::variable(nv, var(rng));
        acc += schubert_class(sp, sp->points[k], table).scaled(coefficient);
    }
    return acc;
}

} // namespace

TEST_CASE("relabeling by the identity or on trivial input") {
    Fixture f("A2");
    auto full = Space::full_flag(f.W);
    std::mt19937 rng(20240818);
    const EquivariantClass c = random_class(full, f.table, rng);
    CHECK(kk_act(f.W->identity_index(), c) == c);
    CHECK(kk_act(f.W->from_word_index({1, 2}), EquivariantClass::zero(full)) ==
          EquivariantClass::zero(full));
    // Constant classes are fixed by every element.
    const EquivariantClass scalar =
        EquivariantClass::unit(full).scaled(parse(2, "a1 + 2*a2"));
    for (int w = 0; w < f.W->size(); ++w) CHECK(kk_act(w, scalar) == scalar);
}

TEST_CASE("pinned relabeling values on the fiber and the full flag space") {
    Fixture f("A2");
    const int s1 = f.W->from_word_index({1});
    const int s2 = f.W->from_word_index({2});

    // Fiber for P = {2}: s2 . sigma_{s2} has value a2 at e and 0 at s2,
    // i.e. it equals a2*sigma_e - sigma_{s2}.
    auto fiber = Space::fiber(f.W, {2});
    const EquivariantClass acted = kk_act(s2, schubert_class(fiber, s2, f.table));
    CHECK(acted.value_at(f.W->identity_index()) == parse(2, "a2"));
    CHECK(acted.value_at(s2).is_zero());
    const SchubertExpansion e = expand_in_schubert(acted, f.table);
    REQUIRE(e.size() == 2);
    CHECK(e.at(f.W->identity_index()) == parse(2, "a2"));
    CHECK(e.at(s2) == parse(2, "-1"));

    // Full flag space: no reduced word of s1 ends in s2, so s2 fixes sigma_{s1}.
    auto full = Space::full_flag(f.W);
    const EquivariantClass cls = schubert_class(full, s1, f.table);
    CHECK(kk_act(s2, cls) == cls);
}

TEST_CASE("relabeling rejects unsupported spaces and elements") {
    Fixture f("A2");
    auto partial = Space::partial_flag(f.W, {2});
    CHECK_THROWS_AS(kk_act(f.W->from_word_index({1}), EquivariantClass::unit(partial)),
                    spec_error);
    auto fiber = Space::fiber(f.W, {2});
    CHECK_THROWS_AS(kk_act(f.W->from_word_index({1}), EquivariantClass::unit(fiber)),
                    spec_error);
}

TEST_CASE("relabeling is linear over scalars and respects products") {
    for (const char* name : {"A2", "B2"}) {
        Fixture f(name);
        const int nv = f.W->rank();
        std::mt19937 rng(20240818);
        auto full = Space::full_flag(f.W);
        std::uniform_int_distribution<int> pick(0, f.W->size() - 1);
        for (int trial = 0; trial < 4; ++trial) {
            const int w = pick(rng);
            const EquivariantClass p = random_class(full, f.table, rng);
            const EquivariantClass q = random_class(full, f.table, rng);
            const Poly scalar = parse(nv, "a1 - 3") * Poly::variable(nv, 1 + trial % nv);
            CHECK(kk_act(w, p.scaled(scalar)) == kk_act(w, p).scaled(scalar));
            CHECK(kk_act(w, p + q) == kk_act(w, p) + kk_act(w, q));
            CHECK(kk_act(w, p * q) == kk_act(w, p) * kk_act(w, q));
        }
    }
}

TEST_CASE("relabeling composes contravariantly") {
    // Right translation reverses order: acting by w1*w2 equals acting by w1
    // first, then by w2.
    for (const char* name : {"A2", "B2"}) {
        Fixture f(name);
        auto full = Space::full_flag(f.W);
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> pick(0, f.W->size() - 1);
        for (int trial = 0; trial < 6; ++trial) {
            const int w1 = pick(rng);
            const int w2 = pick(rng);
            const EquivariantClass p = random_class(full, f.table, rng);
            CHECK(kk_act(f.W->mult(w1, w2), p) == kk_act(w2, kk_act(w1, p)));
        }
    }
    // Pinned counterexample to the naive order: relabeling sigma_{s1} by s1*s2
    // reads the value at s2*s1, not at s1*s2.
    Fixture f("A2");
    auto full = Space::full_flag(f.W);
    const int s1 = f.W->from_word_index({1});
    const int s2 = f.W->from_word_index({2});
    const int s1s2 = f.W->from_word_index({1, 2});
    const EquivariantClass p = schubert_class(full, s1, f.table);
    const EquivariantClass via_product = kk_act(s1s2, p);
    CHECK(via_product.value_at(f.W->identity_index()) == parse(2, "a1 + a2"));
    CHECK(kk_act(s2, kk_act(s1, p)) == via_product);
    CHECK(kk_act(s1, kk_act(s2, p)).value_at(f.W->identity_index()) == parse(2, "a1"));
}

TEST_CASE("pinned action matrices for the smallest fiber") {
    Fixture f("A2");
    const int s2 = f.W->from_word_index({2});
    auto fiber = Space::fiber(f.W, {2});

    const PolyMatrix idm = action_matrix(f.W->identity_index(), fiber, f.table);
    CHECK(idm.at(0, 0) == Poly::one(2));
    CHECK(idm.at(1, 1) == Poly::one(2));
    CHECK(idm.at(0, 1).is_zero());
    CHECK(idm.at(1, 0).is_zero());

    // Basis order (sigma_e, sigma_{s2}); s2 fixes sigma_e and sends
    // sigma_{s2} to a2*sigma_e - sigma_{s2}.
    const PolyMatrix F = action_matrix(s2, fiber, f.table);
    CHECK(F.at(0, 0) == Poly::one(2));
    CHECK(F.at(1, 0).is_zero());
    CHECK(F.at(0, 1) == parse(2, "a2"));
    CHECK(F.at(1, 1) == parse(2, "-1"));
    CHECK(trace(F).is_zero());
}

TEST_CASE("pinned pair-basis action matrix") {
    // The full matrix of s2 over the pair basis for P = {2}.  Pairs are
    // enumerated v-major: (e,e),(e,s2),(s1,e),(s1,s2),(s2s1,e),(s2s1,s2).
    // Representative classes are fixed, and the relabeled subgroup classes
    // spread across blocks: s2 . sigma_{s2} = a2*sigma_e + sigma_{s1} -
    // sigma_{s2}, so the matrix is NOT block diagonal — only its diagonal
    // entries repeat the fiber matrix.
    Fixture f("A2");
    ParabolicBasis basis(f.W, {2}, f.table);
    const int s2 = f.W->from_word_index({2});
    auto fiber = Space::fiber(f.W, {2});
    const PolyMatrix F = action_matrix(s2, fiber, f.table);
    const PolyMatrix D = action_matrix(s2, basis, f.table);
    REQUIRE(D.rows == 6);
    REQUIRE(D.cols == 6);
    PolyMatrix expected(6, 6, 2);
    const Poly one = Poly::one(2);
    expected.at(0, 0) = one;
    expected.at(0, 1) = parse(2, "a2");
    expected.at(1, 1) = parse(2, "-1");
    expected.at(2, 1) = one;  // the sigma_{s1} leak out of the v = e block
    expected.at(2, 2) = one;
    expected.at(2, 3) = parse(2, "a1 + a2");
    expected.at(3, 3) = parse(2, "-1");
    expected.at(4, 3) = one;  // leak out of the v = s1 block
    expected.at(4, 4) = one;
    expected.at(4, 5) = parse(2, "a1 + 2*a2");
    expected.at(5, 5) = parse(2, "-1");
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) CHECK(D.at(a, b) == expected.at(a, b));
    // Diagonal entries repeat the fiber diagonal pairwise.
    for (int k = 0; k < 6; ++k) CHECK(D.at(k, k) == F.at(k % 2, k % 2));
    CHECK(trace(D).is_zero());
    CHECK_THROWS_AS(action_matrix(f.W->from_word_index({1}), basis, f.table), spec_error);
}

TEST_CASE("mixing identity: representative factors pass through the action") {
    Fixture f("A2");
    auto full = Space::full_flag(f.W);
    const int s1 = f.W->from_word_index({1});
    const int s2 = f.W->from_word_index({2});
    const EquivariantClass lhs =
        kk_act(s2, schubert_class(full, s1, f.table) * schubert_class(full, s2, f.table));
    const EquivariantClass rhs =
        schubert_class(full, s1, f.table) * kk_act(s2, schubert_class(full, s2, f.table));
    CHECK(lhs == rhs);
}

TEST_CASE("pinned characters for A2 with parabolic {2}") {
    Fixture f("A2");
    const int s2 = f.W->from_word_index({2});

    const CharacterTable chi = character(f.W, {2}, Flavor::fiber, f.table);
    CHECK(chi.module_rank == 2);
    CHECK(chi.subgroup.size() == 2);
    CHECK(chi.value(f.W->identity_index()) == parse(2, "2"));
    CHECK(chi.value(s2).is_zero());

    const CharacterTable chi_full = character(f.W, {2}, Flavor::full_flag, f.table);
    CHECK(chi_full.module_rank == 6);
    CHECK(chi_full.value(f.W->identity_index()) == parse(2, "6"));
    CHECK(chi_full.value(s2).is_zero());

    CHECK_THROWS_AS(character(f.W, {2}, Flavor::partial_flag, f.table), spec_error);
    CHECK_THROWS_AS(chi.value(f.W->from_word_index({1})), spec_error);
}

TEST_CASE("character invariants reject corrupted tables") {
    Fixture f("A2");
    CharacterTable t = character(f.W, {2}, Flavor::fiber, f.table);
    check_character_invariants(t, *f.W);

    CharacterTable wrong_rank = t;
    wrong_rank.module_rank = 3;
    CHECK_THROWS_AS(check_character_invariants(wrong_rank, *f.W), check_error);

    // Breaking a class function needs a subgroup with two conjugate
    // non-identity elements: the full group of A2 conjugates s1 to s2.
    CharacterTable full = character(f.W, {1, 2}, Flavor::fiber, f.table);
    CHECK(full.value(f.W->from_word_index({1})) == full.value(f.W->from_word_index({2})));
    CharacterTable broken = full;
    broken.values[f.W->from_word_index({1})] += Poly::one(2);
    CHECK_THROWS_AS(check_character_invariants(broken, *f.W), check_error);
}

TEST_CASE("full verification on the pinned example") {
    Fixture f("A2");
    const SpringerReport r = verify_springer_multiple(f.W, {2}, f.table);
    CHECK(r.ok);
    CHECK(r.root_system == "A2");
    CHECK(r.rep_count == 3);
    CHECK(r.subgroup_order == 2);
    CHECK(r.hard_multiple_holds);
    CHECK(r.mixing_identity_holds);
    CHECK(r.diagonal_matches_fiber);
    CHECK(r.fiber_submatrix_agrees);
    CHECK(r.length_filtered);
    CHECK(r.schubert_trace_agrees);
    CHECK(r.rep_classes_fixed);
    CHECK(r.invariants_hold);
    CHECK_FALSE(r.literal_multiple_holds);
    // The observed matrices spread across blocks here.
    CHECK_FALSE(r.pair_matrix_block_diagonal);
    CHECK(r.failures.empty());
    // The identity separates the two candidate multiples: 6 = 3*2 but not 2*2.
    CHECK(r.full_character.value(f.W->identity_index()) == parse(2, "6"));
    CHECK(r.fiber_character.value(f.W->identity_index()) == parse(2, "2"));
}

TEST_CASE("the literal multiple holds exactly when the orders coincide") {
    {
        Fixture f("A1xA1");
        const SpringerReport r = verify_springer_multiple(f.W, {1}, f.table);
        CHECK(r.ok);
        CHECK(r.rep_count == 2);
        CHECK(r.subgroup_order == 2);
        CHECK(r.literal_multiple_holds);
        // Commuting factors keep the relabeled classes inside the subgroup
        // span, so here the matrices do split into blocks.
        CHECK(r.pair_matrix_block_diagonal);
    }
    {
        Fixture f("A2");
        const SpringerReport empty = verify_springer_multiple(f.W, {}, f.table);
        CHECK(empty.ok);
        CHECK(empty.rep_count == 6);
        CHECK_FALSE(empty.literal_multiple_holds);
        CHECK(empty.pair_matrix_block_diagonal);  // trivial subgroup
        const SpringerReport whole = verify_springer_multiple(f.W, {1, 2}, f.table);
        CHECK(whole.ok);
        CHECK(whole.rep_count == 1);
        CHECK_FALSE(whole.literal_multiple_holds);
        CHECK(whole.pair_matrix_block_diagonal);  // a single block
    }
}

TEST_CASE("verification sweep over small systems") {
    {
        Fixture f("B2");
        const SpringerReport r = verify_springer_multiple(f.W, {1}, f.table);
        CHECK(r.ok);
        CHECK(r.rep_count == 4);
        CHECK_FALSE(r.literal_multiple_holds);
        for (int w : r.fiber_character.subgroup)
            CHECK(r.full_character.value(w) == r.fiber_character.value(w) * Rational(4));
    }
    for (const char* name : {"A2", "B2"}) {
        Fixture f(name);
        for (ParabolicSubset p : {ParabolicSubset{}, {1}, {2}, {1, 2}}) {
            const SpringerReport r = verify_springer_multiple(f.W, p, f.table);
            CHECK(r.ok);
            CHECK(r.literal_multiple_holds == (r.rep_count == r.subgroup_order));
        }
    }
    {
        Fixture f("G2");
        const SpringerReport r = verify_springer_multiple(f.W, {1}, f.table);
        CHECK(r.ok);
        CHECK(r.rep_count == 6);
        CHECK(r.subgroup_order == 2);
    }
    {
        Fixture f("A2xA1");
        const SpringerReport r = verify_springer_multiple(f.W, {1, 3}, f.table);
        CHECK(r.ok);
        CHECK(r.rep_count == 3);
        CHECK(r.subgroup_order == 4);
        CHECK_FALSE(r.literal_multiple_holds);
    }
}

TEST_CASE("subgroup generators fix every representative class") {
    Fixture f("B2");
    ParabolicBasis basis(f.W, {2}, f.table);
    auto full = basis.full_space();
    const int s2 = f.W->from_word_index({2});
    for (int v : basis.coset_reps()) {
        const EquivariantClass cls = schubert_class(full, v, f.table);
        CHECK(kk_act(s2, cls) == cls);
    }
    // A generator outside the subgroup moves at least one representative class.
    const int s1 = f.W->from_word_index({1});
    bool moved = false;
    for (int v : basis.coset_reps())
        if (kk_act(s1, schubert_class(full, v, f.table)) !=
            schubert_class(full, v, f.table))
            moved = true;
    CHECK(moved);
}

TEST_CASE("full-space traces agree between the pair basis and the Schubert basis") {
    Fixture f("A2");
    ParabolicBasis basis(f.W, {1}, f.table);
    auto full = basis.full_space();
    for (int w : basis.subgroup())
        CHECK(trace(action_matrix(w, basis, f.table)) ==
              trace(action_matrix(w, full, f.table)));
}
