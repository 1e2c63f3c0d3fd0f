#ifndef GKM_BILLEY_HPP
#define GKM_BILLEY_HPP

#include <memory>
#include <unordered_map>
#include <vector>

#include "gkm/errors.hpp"
#include "gkm/polynomial.hpp"
#include "gkm/root_system.hpp"
#include "gkm/weyl.hpp"

// Restriction of an equivariant Schubert class to a fixed point, as a
// subword sum: with u = s_{b_1}...s_{b_m} reduced and
// r_i = s_{b_1}...s_{b_{i-1}}(a_{b_i}), the restriction sigma_v(u) is the sum
// over reduced subwords multiplying to v of the product of their r values.
// The value depends only on v and u, not on the chosen word; it is
// homogeneous of degree l(v), has nonnegative integer coefficients, and is
// nonzero exactly when v <= u in Bruhat order.

namespace gkm {

inline constexpr int default_bruteforce_length_cap = 10;

// r_i for each position of `word`; entries are all positive iff the word is
// reduced.
inline std::vector<RootVector> reflection_roots(const std::shared_ptr<const RootSystem>& rs,
                                                const Word& word) {
    std::vector<RootVector> out;
    out.reserve(word.size());
    WeylElement prefix = WeylElement::identity(rs);
    for (int b : word) {
        out.push_back(prefix.act_simple(b));
        prefix = prefix.times_simple(b);
    }
    return out;
}

// sigma_v(u) along u's canonical word, pruning partial products outside the
// Bruhat interval [e, v].
inline Poly billey_restrict(const WeylElement& v, const WeylElement& u) {
    v.require_same_system(u);
    auto rs = v.root_system_ptr();
    const int n = rs->rank();
    if (v.is_identity()) return Poly::one(n);
    if (v.length() > u.length()) return Poly::zero(n);

    const Word word = canonical_reduced_word(u);
    const auto roots = reflection_roots(rs, word);

    std::unordered_map<WeylElement, Poly, WeylElementHash> cur;
    cur.emplace(WeylElement::identity(rs), Poly::one(n));
    for (std::size_t i = 0; i < word.size(); ++i) {
        const int b = word[i];
        const Poly r = Poly::from_root(n, roots[i]);
        std::unordered_map<WeylElement, Poly, WeylElementHash> taken;
        for (const auto& [x, val] : cur) {
            if (x.right_descent(b)) continue; // extension would not be reduced
            WeylElement x2 = x.times_simple(b);
            if (!bruhat_leq(x2, v)) continue;
            auto [it, fresh] = taken.try_emplace(x2, Poly(n));
            it->second += val * r;
        }
        for (auto& [x2, add] : taken) {
            auto [it, fresh] = cur.try_emplace(x2, Poly(n));
            it->second += add;
        }
    }
    auto it = cur.find(v);
    return it == cur.end() ? Poly::zero(n) : it->second;
}

// The subword sum evaluated over an explicitly supplied reduced word, by
// enumeration of all subsets.  Exponential; refuses words above cap.
inline Poly billey_subword_sum(const WeylElement& v, const Word& word,
                               int length_cap = default_bruteforce_length_cap) {
    auto rs = v.root_system_ptr();
    const int n = rs->rank();
    if (static_cast<int>(word.size()) > length_cap)
        throw cap_error("billey_subword_sum: word length " + std::to_string(word.size()) +
                        " exceeds cap " + std::to_string(length_cap));
    const auto roots = reflection_roots(rs, word);
    for (const RootVector& r : roots)
        if (!is_positive(r)) throw spec_error("billey_subword_sum: word is not reduced");
    const int m = static_cast<int>(word.size());
    Poly total(n);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (static_cast<int>(__builtin_popcount(mask)) != v.length()) continue;
        WeylElement x = WeylElement::identity(rs);
        Poly prod = Poly::one(n);
        bool reduced = true;
        for (int i = 0; i < m; ++i) {
            if (!(mask & (1u << i))) continue;
            if (x.right_descent(word[i])) {
                reduced = false;
                break;
            }
            x = x.times_simple(word[i]);
            prod *= Poly::from_root(n, roots[i]);
        }
        if (reduced && x == v) total += prod;
    }
    return total;
}

// Same value as billey_restrict, by enumeration.  Cross-check oracle.
inline Poly billey_restrict_bruteforce(const WeylElement& v, const WeylElement& u,
                                       int length_cap = default_bruteforce_length_cap) {
    v.require_same_system(u);
    if (u.length() > length_cap)
        throw cap_error("billey_restrict_bruteforce: length " + std::to_string(u.length()) +
                        " exceeds cap " + std::to_string(length_cap));
    return billey_subword_sum(v, canonical_reduced_word(u), length_cap);
}

// sigma_w(w): the full product of r values, equal to the product of the
// positive roots sent negative by w^-1 ... i.e. of Phi+ intersected with
// w(Phi-).
inline Poly schubert_point(const WeylElement& w) {
    auto rs = w.root_system_ptr();
    const int n = rs->rank();
    Poly out = Poly::one(n);
    for (const RootVector& r : reflection_roots(rs, canonical_reduced_word(w)))
        out *= Poly::from_root(n, r);
    return out;
}

// One unpruned subword-DP pass over a reduced word: the returned column holds
// sigma_x(u) for every group element x, where u is the word's product.  The
// word must be reduced; indices run longest-first so in-place take-updates
// (which land on strictly longer elements) never feed back within one step.
inline std::vector<Poly> billey_column_for_word(const WeylGroup& W, const Word& word) {
    const int n = W.rank();
    const int m = W.size();
    const auto roots = reflection_roots(W.root_system_ptr(), word);
    std::vector<Poly> col(m, Poly(n));
    col[W.identity_index()] = Poly::one(n);
    for (std::size_t i = 0; i < word.size(); ++i) {
        const int b = word[i];
        const Poly r = Poly::from_root(n, roots[i]);
        for (int x = m - 1; x >= 0; --x) {
            if (col[x].is_zero()) continue;
            if (W.right_descent(x, b)) continue;
            col[W.right_mult(x, b)] += col[x] * r;
        }
    }
    return col;
}

// Whole-group restriction table over an enumerated Weyl group.  Columns are
// computed lazily: one unpruned subword-DP pass per u yields sigma_x(u) for
// every x simultaneously.
class BilleyTable {
public:
    explicit BilleyTable(std::shared_ptr<const WeylGroup> W)
        : W_(std::move(W)), cols_(W_->size()) {}

    const WeylGroup& group() const { return *W_; }
    std::shared_ptr<const WeylGroup> group_ptr() const { return W_; }

    const Poly& sigma(int v_idx, int u_idx) { return column(u_idx)[v_idx]; }

    const std::vector<Poly>& column(int u_idx) {
        auto& slot = cols_[u_idx];
        if (!slot) slot = std::make_unique<std::vector<Poly>>(compute_column(u_idx));
        return *slot;
    }

    bool column_ready(int u_idx) const { return cols_[u_idx] != nullptr; }

    // Install a column computed elsewhere (typically loaded from a disk
    // cache).  Entries must be in canonical element order; a column that is
    // already computed is kept and the offered values are dropped.
    void prime_column(int u_idx, std::vector<Poly> values) {
        auto& slot = cols_.at(static_cast<std::size_t>(u_idx));
        if (slot) return;
        if (static_cast<int>(values.size()) != W_->size())
            throw spec_error("primed column size does not match the group order");
        slot = std::make_unique<std::vector<Poly>>(std::move(values));
    }

private:
    std::vector<Poly> compute_column(int u_idx) const {
        return billey_column_for_word(*W_, W_->word(u_idx));
    }

    std::shared_ptr<const WeylGroup> W_;
    std::vector<std::unique_ptr<std::vector<Poly>>> cols_;
};

struct BilleyPropertyReport {
    int columns_checked = 0;
    int support_pairs_checked = 0;
    int reduced_words_checked = 0;
    int bruteforce_pairs_checked = 0;
    bool identity_restrictions_trivial = false; // sigma_e(u) == 1 for every u
    bool homogeneous = false;                   // sigma_v(u) homogeneous of degree l(v)
    bool nonnegative_integer_coefficients = false;
    bool support_matches_bruhat = false; // sigma_v(u) != 0 iff v <= u
    bool word_independent = false;       // every reduced word gives the same column
    bool matches_bruteforce = false;     // DP column == subword enumeration
    std::vector<std::string> failures;
    bool ok = false;
};

// Property sweep over the whole restriction table: structural facts checked
// on every entry, plus two independently-computed cross-checks (per-word DP
// columns and the brute-force subword enumeration) on length-capped slices.
inline BilleyPropertyReport verify_billey_properties(std::shared_ptr<const WeylGroup> Wp,
                                                     BilleyTable& table,
                                                     int word_independence_length_cap = 6,
                                                     int bruteforce_length_cap = 8) {
    const WeylGroup& W = *Wp;
    BilleyPropertyReport r;

    bool identity_ok = true, homogeneous_ok = true, coeff_ok = true, support_ok = true;
    bool words_ok = true, brute_ok = true;
    auto fail = [&r](bool& flag, const std::string& msg) {
        if (flag) {
            flag = false;
            r.failures.push_back(msg);
        }
    };

    for (int u = 0; u < W.size(); ++u) {
        const std::vector<Poly>& col = table.column(u);
        ++r.columns_checked;
        const std::string u_label = word_to_string(W.word(u));
        if (!(col[static_cast<std::size_t>(W.identity_index())] == Poly::one(W.rank())))
            fail(identity_ok, "the identity restriction at " + u_label + " is not 1");
        for (int v = 0; v < W.size(); ++v) {
            ++r.support_pairs_checked;
            const Poly& value = col[static_cast<std::size_t>(v)];
            if (value.is_zero() == bruhat_leq(W.element(v), W.element(u)))
                fail(support_ok, "support mismatch: restriction of " + word_to_string(W.word(v)) +
                                     " at " + u_label);
            for (const Poly::Term& t : value.terms()) {
                if (t.m.deg() != W.length(v))
                    fail(homogeneous_ok, "restriction of " + word_to_string(W.word(v)) + " at " +
                                             u_label + " is not homogeneous of the right degree");
                if (t.c < 0 || t.c.get_den() != 1)
                    fail(coeff_ok, "restriction of " + word_to_string(W.word(v)) + " at " +
                                       u_label + " has a coefficient outside the nonnegative integers");
            }
        }
    }

    for (int u = 0; u < W.size(); ++u) {
        if (W.length(u) > word_independence_length_cap) continue;
        const std::vector<Poly>& expected = table.column(u);
        for (const Word& word : all_reduced_words(W.element(u))) {
            ++r.reduced_words_checked;
            if (!(billey_column_for_word(W, word) == expected))
                fail(words_ok, "two reduced words of " + word_to_string(W.word(u)) +
                                   " give different columns");
        }
    }

    for (int u = 0; u < W.size(); ++u) {
        if (W.length(u) > bruteforce_length_cap) continue;
        const std::vector<Poly>& col = table.column(u);
        const WeylElement ue = W.element(u);
        for (int v = 0; v < W.size(); ++v) {
            if (W.length(v) > W.length(u)) continue;
            ++r.bruteforce_pairs_checked;
            if (!(billey_restrict_bruteforce(W.element(v), ue) == col[static_cast<std::size_t>(v)]))
                fail(brute_ok, "brute-force restriction of " + word_to_string(W.word(v)) + " at " +
                                   word_to_string(W.word(u)) + " disagrees with the column");
        }
    }

    r.identity_restrictions_trivial = identity_ok;
    r.homogeneous = homogeneous_ok;
    r.nonnegative_integer_coefficients = coeff_ok;
    r.support_matches_bruhat = support_ok;
    r.word_independent = words_ok;
    r.matches_bruteforce = brute_ok;
    r.ok = identity_ok && homogeneous_ok && coeff_ok && support_ok && words_ok && brute_ok;
    return r;
}

} // namespace gkm

#endif
