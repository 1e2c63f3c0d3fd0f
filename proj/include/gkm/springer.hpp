#pragma once

// Weyl-group action on equivariant classes by relabeling fixed points, its
// restriction to a parabolic subgroup, action matrices over explicit bases,
// and polynomial-valued characters.
//
// The element w acts on a localization table p by (w . p)(v) = p(v w^{-1}),
// a pure permutation of the fixed points.  Scalars — classes multiplied by a
// single global polynomial — keep that polynomial untouched, so the action is
// linear over the coefficient ring and respects pointwise products; traces of
// its matrices therefore do not depend on the chosen basis.  Because right
// translation reverses under composition, the maps compose contravariantly:
// acting by w1*w2 equals acting by w1 first and w2 second.
//
// For a parabolic subgroup acting on the full flag space, every pair class
// sigma_v * sigma_w is sent to sigma_v * (w'' . sigma_w): classes indexed by
// minimal coset representatives are fixed, since no reduced word of such an
// element ends in a subgroup generator.  The action matrix over the pair
// basis is length-filtered and its diagonal entries agree with those of the
// fiber action matrix, which forces the full-space character to equal the
// representative count times the fiber character.  The matrix need not be
// block diagonal: already in rank two the relabeled class w'' . sigma_w meets
// Schubert classes outside the subgroup and spreads across blocks, so block
// structure is observed and reported, never assumed.

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <gkm/parabolic.hpp>

namespace gkm {

// ---------------------------------------------------------------------------
// The relabeling action.
// ---------------------------------------------------------------------------

// (w . p)(v) = p(v w^{-1}).  Defined on the full flag space for every w and
// on a fiber space for w inside the fiber subgroup; right translation does
// not preserve a set of minimal coset representatives, so partial flag
// spaces are rejected.
inline EquivariantClass kk_act(int w_idx, const EquivariantClass& c) {
    const std::shared_ptr<const Space> sp = c.space_ptr();
    const WeylGroup& W = *sp->W;
    if (sp->flavor == Flavor::partial_flag)
        throw spec_error("the relabeling action does not preserve a partial flag space");
    if (sp->flavor == Flavor::fiber && !sp->has_point(w_idx))
        throw spec_error("fiber classes can only be relabeled by elements of the fiber subgroup");
    const int winv = W.inverse_index(w_idx);
    EquivariantClass out = EquivariantClass::zero(sp);
    for (int k = 0; k < sp->size(); ++k)
        out.set_value_at_position(k, c.value_at(W.mult(sp->points[k], winv)));
    return out;
}

// ---------------------------------------------------------------------------
// Action matrices.
// ---------------------------------------------------------------------------

// Action matrix of w over the Schubert basis of a full-flag or fiber space:
// column k holds the coefficients of w . sigma_{points[k]} expanded in the
// same Schubert basis.
inline PolyMatrix action_matrix(int w_idx, std::shared_ptr<const Space> sp, BilleyTable& table) {
    const int n = sp->size();
    PolyMatrix D(n, n, sp->W->rank());
    for (int col = 0; col < n; ++col) {
        const EquivariantClass acted = kk_act(w_idx, schubert_class(sp, sp->points[col], table));
        for (const auto& [u, coeff] : expand_in_schubert(acted, table))
            D.at(sp->position_of(u), col) = coeff;
    }
    return D;
}

// Action matrix of a subgroup element over a parabolic pair basis of the
// full flag space: column k holds the coefficients of w . basis_class(k)
// expanded in the same pair basis.
inline PolyMatrix action_matrix(int w_idx, const ParabolicBasis& basis, BilleyTable& table) {
    const WeylGroup& W = basis.group();
    const std::vector<int>& sub = basis.subgroup();
    if (std::find(sub.begin(), sub.end(), w_idx) == sub.end())
        throw spec_error("the pair-basis action matrix is defined for subgroup elements only");
    const int n = static_cast<int>(basis.pairs().size());
    PolyMatrix D(n, n, W.rank());
    for (int col = 0; col < n; ++col) {
        const EquivariantClass acted = kk_act(w_idx, basis.basis_class(col));
        for (const auto& [vw, coeff] : expand_in_parabolic_basis(acted, basis, table))
            D.at(basis.pair_index_of_product(W.mult(vw.first, vw.second)), col) = coeff;
    }
    return D;
}

// ---------------------------------------------------------------------------
// Characters.
// ---------------------------------------------------------------------------

// The character of a subgroup action on a free module of finite rank: the
// trace of each element's action matrix.
struct CharacterTable {
    std::vector<int> subgroup;   // acting subgroup, canonical group indices
    std::map<int, Poly> values;  // element -> trace of its action matrix
    int module_rank = 0;

    const Poly& value(int w_idx) const {
        const auto it = values.find(w_idx);
        if (it == values.end())
            throw spec_error("character value requested for an element outside the subgroup");
        return it->second;
    }
};

// The identity acts as the identity matrix, so its trace is the module rank;
// conjugate subgroup elements have similar matrices, so their traces agree.
inline void check_character_invariants(const CharacterTable& t, const WeylGroup& W) {
    const Poly rank = Poly::constant(W.rank(), Rational(t.module_rank));
    if (t.value(W.identity_index()) != rank)
        throw check_error("character of the identity does not equal the module rank");
    for (int w : t.subgroup)
        for (int x : t.subgroup) {
            const int conj = W.mult(W.mult(x, w), W.inverse_index(x));
            if (t.value(conj) != t.value(w))
                throw check_error("character is not constant on a conjugacy class");
        }
}

// Character of the parabolic subgroup for p acting on the fiber (traces over
// its Schubert basis) or on the full flag space (traces over the pair basis,
// cross-checked against traces over the full Schubert basis).  Partial flag
// spaces carry no such action.
inline CharacterTable character(std::shared_ptr<const WeylGroup> W, const ParabolicSubset& p,
                                Flavor space, BilleyTable& table) {
    CharacterTable t;
    if (space == Flavor::fiber) {
        const std::shared_ptr<const Space> fiber = Space::fiber(W, p);
        t.subgroup = fiber->points;
        t.module_rank = fiber->size();
        for (int w : t.subgroup) t.values.emplace(w, trace(action_matrix(w, fiber, table)));
    } else if (space == Flavor::full_flag) {
        const ParabolicBasis basis(W, p, table);
        t.subgroup = basis.subgroup();
        t.module_rank = W->size();
        for (int w : t.subgroup) {
            Poly tr = trace(action_matrix(w, basis, table));
            if (tr != trace(action_matrix(w, basis.full_space(), table)))
                throw check_error("pair-basis trace disagrees with the Schubert-basis trace");
            t.values.emplace(w, std::move(tr));
        }
    } else {
        throw spec_error("characters are defined on the full flag space or the fiber");
    }
    check_character_invariants(t, *W);
    return t;
}

// ---------------------------------------------------------------------------
// The multiple between the full-space and fiber characters.
// ---------------------------------------------------------------------------

// Everything this verification establishes about one (system, parabolic)
// pair.  The asserted facts are the ones the structure actually forces:
//   * subgroup generators fix every representative class;
//   * mixing: w . (sigma_v sigma_w') = sigma_v . (w . sigma_w');
//   * the fiber action matrix is the subgroup submatrix of the full
//     Schubert-basis action matrix (classes outside the subgroup restrict
//     to zero on subgroup points);
//   * the pair-basis matrix is length-filtered and its diagonal entries
//     equal the fiber diagonal entries;
//   * traces agree between the pair basis and the Schubert basis;
//   * the full-space character is rep_count times the fiber character.
// Two further observations are reported but never asserted:
// literal_multiple_holds records whether subgroup_order works as the
// multiple too (at the identity that needs the two orders to coincide), and
// pair_matrix_block_diagonal records whether the pair-basis matrices happen
// to split into blocks (they need not).
struct SpringerReport {
    std::string root_system;
    ParabolicSubset parabolic;
    int rep_count = 0;       // number of minimal coset representatives
    int subgroup_order = 0;
    bool hard_multiple_holds = false;    // full == rep_count * fiber (asserted)
    bool mixing_identity_holds = false;  // w.(sigma_v sigma_w') == sigma_v.(w.sigma_w')
    bool diagonal_matches_fiber = false; // pair-matrix diagonal == fiber diagonal
    bool fiber_submatrix_agrees = false; // fiber matrix == subgroup block of Schubert matrix
    bool length_filtered = false;        // no pair coefficient raises total length
    bool schubert_trace_agrees = false;  // pair-basis trace == Schubert-basis trace
    bool rep_classes_fixed = false;      // subgroup generators fix representative classes
    bool invariants_hold = false;        // rank at identity + class function, both tables
    bool literal_multiple_holds = false;     // full == subgroup_order * fiber (reported)
    bool pair_matrix_block_diagonal = false; // observed block structure (reported)
    CharacterTable fiber_character;
    CharacterTable full_character;
    std::vector<std::string> failures;
    bool ok = false;
};

namespace detail {

inline std::string word_label(const WeylGroup& W, int w_idx) {
    return word_to_string(W.word(w_idx));
}

} // namespace detail

inline SpringerReport verify_springer_multiple(std::shared_ptr<const WeylGroup> W,
                                               const ParabolicSubset& p, BilleyTable& table) {
    SpringerReport r;
    const ParabolicBasis basis(W, p, table);
    const std::shared_ptr<const Space> full = basis.full_space();
    const std::shared_ptr<const Space> fiber = Space::fiber(W, basis.parabolic());
    r.root_system = W->root_system_ptr()->spec_string();
    r.parabolic = basis.parabolic();
    r.rep_count = static_cast<int>(basis.coset_reps().size());
    r.subgroup_order = static_cast<int>(basis.subgroup().size());
    const int m = r.subgroup_order;
    const int n = static_cast<int>(basis.pairs().size());
    const std::vector<BasisPair>& pairs = basis.pairs();

    r.fiber_character.subgroup = basis.subgroup();
    r.fiber_character.module_rank = m;
    r.full_character.subgroup = basis.subgroup();
    r.full_character.module_rank = W->size();

    std::vector<int> product_length(n);
    for (int k = 0; k < n; ++k) product_length[k] = W->length(pairs[k].product);

    bool mixing_ok = true;
    bool diagonal_ok = true;
    bool submatrix_ok = true;
    bool filtered_ok = true;
    bool schubert_ok = true;
    bool hard_ok = true;
    bool literal_ok = true;
    bool block_observed = true;

    for (int w : basis.subgroup()) {
        const std::string label = detail::word_label(*W, w);
        const PolyMatrix F = action_matrix(w, fiber, table);
        const PolyMatrix D = action_matrix(w, basis, table);
        const PolyMatrix S = action_matrix(w, full, table);

        // Classes outside the subgroup restrict to zero on subgroup points,
        // so the fiber matrix must be the subgroup submatrix of S.
        bool sub_equal = true;
        for (int a = 0; a < m && sub_equal; ++a)
            for (int b = 0; b < m && sub_equal; ++b)
                if (F.at(fiber->position_of(basis.subgroup()[a]),
                         fiber->position_of(basis.subgroup()[b])) !=
                    S.at(full->position_of(basis.subgroup()[a]),
                         full->position_of(basis.subgroup()[b])))
                    sub_equal = false;
        if (!sub_equal) {
            submatrix_ok = false;
            r.failures.push_back("fiber action matrix of " + label +
                                 " is not the subgroup submatrix of the Schubert-basis matrix");
        }

        bool diag_equal = true;
        for (int k = 0; k < n && diag_equal; ++k)
            if (D.at(k, k) != F.at(fiber->position_of(pairs[k].w),
                                   fiber->position_of(pairs[k].w)))
                diag_equal = false;
        if (!diag_equal) {
            diagonal_ok = false;
            r.failures.push_back("a diagonal entry of the pair-basis matrix of " + label +
                                 " differs from the fiber diagonal");
        }

        bool filtered = true;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (D.at(a, b).is_zero()) continue;
                if (product_length[a] > product_length[b]) filtered = false;
                if (pairs[a].v != pairs[b].v) block_observed = false;
            }
        if (!filtered) {
            filtered_ok = false;
            r.failures.push_back("pair-basis matrix of " + label +
                                 " has a coefficient that raises total length");
        }

        // Mixing identity: representative factors pass through the action.
        bool mixing = true;
        std::vector<EquivariantClass> acted_sub;
        acted_sub.reserve(m);
        for (int wp : basis.subgroup())
            acted_sub.push_back(kk_act(w, schubert_class(full, wp, table)));
        for (int k = 0; k < n && mixing; ++k) {
            const int sub_pos = static_cast<int>(
                std::find(basis.subgroup().begin(), basis.subgroup().end(), pairs[k].w) -
                basis.subgroup().begin());
            if (kk_act(w, basis.basis_class(k)) !=
                schubert_class(full, pairs[k].v, table) * acted_sub[sub_pos])
                mixing = false;
        }
        if (!mixing) {
            mixing_ok = false;
            r.failures.push_back("the action of " + label +
                                 " does not pass through a representative factor");
        }

        const Poly fiber_trace = trace(F);
        const Poly full_trace = trace(D);
        if (full_trace != trace(S)) {
            schubert_ok = false;
            r.failures.push_back("pair-basis trace of " + label +
                                 " disagrees with the Schubert-basis trace");
        }
        if (full_trace != fiber_trace * Rational(r.rep_count)) {
            hard_ok = false;
            r.failures.push_back("full-space character of " + label +
                                 " is not the representative count times the fiber character");
        }
        if (full_trace != fiber_trace * Rational(r.subgroup_order)) literal_ok = false;

        r.fiber_character.values.emplace(w, fiber_trace);
        r.full_character.values.emplace(w, full_trace);
    }

    bool fixed_ok = true;
    for (int i : r.parabolic) {
        const int si = W->from_word_index({i});
        for (int v : basis.coset_reps()) {
            const EquivariantClass cls = schubert_class(full, v, table);
            if (kk_act(si, cls) != cls) {
                fixed_ok = false;
                r.failures.push_back("generator " + std::to_string(i) +
                                     " moves the class of representative " +
                                     detail::word_label(*W, v));
            }
        }
    }

    bool invariants_ok = true;
    try {
        check_character_invariants(r.fiber_character, *W);
        check_character_invariants(r.full_character, *W);
    } catch (const check_error& e) {
        invariants_ok = false;
        r.failures.push_back(e.what());
    }

    r.hard_multiple_holds = hard_ok;
    r.mixing_identity_holds = mixing_ok;
    r.diagonal_matches_fiber = diagonal_ok;
    r.fiber_submatrix_agrees = submatrix_ok;
    r.length_filtered = filtered_ok;
    r.schubert_trace_agrees = schubert_ok;
    r.rep_classes_fixed = fixed_ok;
    r.invariants_hold = invariants_ok;
    r.literal_multiple_holds = literal_ok;
    r.pair_matrix_block_diagonal = block_observed;
    r.ok = hard_ok && mixing_ok && diagonal_ok && submatrix_ok && filtered_ok && schubert_ok &&
           fixed_ok && invariants_ok;
    return r;
}

} // namespace gkm
