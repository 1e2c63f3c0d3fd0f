#pragma once
// Parabolic product bases of the equivariant cohomology of the full flag
// space.  For a parabolic subset P the products sigma_v * sigma_w, with v a
// minimal coset representative and w in the parabolic subgroup, form a module
// basis.  This header builds those bases, certifies them (block structure of
// the localization matrix, triangular factorization of its diagonal blocks,
// determinant against two independently factored closed forms), expands
// arbitrary classes in them, decides when the bases of two parabolic subsets
// coincide as sets, and constructs a one-point evaluation witness certifying
// distinctness.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gkm/billey.hpp>
#include <gkm/cohomology.hpp>

namespace gkm {

// One basis element: the product sigma_v * sigma_w where v is a minimal coset
// representative, w lies in the parabolic subgroup, and the product element
// v*w has additive length.  v, w, product are group indices.
struct BasisPair {
    int v = 0;
    int w = 0;
    int product = 0;
};

class ParabolicBasis {
public:
    ParabolicBasis(std::shared_ptr<const WeylGroup> W, const ParabolicSubset& p,
                   BilleyTable& table)
        : W_(std::move(W)),
          P_(normalize_parabolic(p, W_->rank())),
          full_(Space::full_flag(W_)),
          reps_(W_->minimal_coset_reps(P_)),
          sub_(W_->parabolic_subgroup(P_)) {
        const int n = W_->size();
        pairs_.reserve(static_cast<std::size_t>(n));
        for (int v : reps_) {
            for (int w : sub_) {
                BasisPair pr;
                pr.v = v;
                pr.w = w;
                pr.product = W_->mult(v, w);
                if (W_->length(pr.product) != W_->length(v) + W_->length(w))
                    throw check_error("coset representative times subgroup element is not length-additive");
                pairs_.push_back(pr);
            }
        }
        if (static_cast<int>(pairs_.size()) != n)
            throw check_error("pair count does not match group order");
        pair_of_product_.assign(n, -1);
        for (std::size_t k = 0; k < pairs_.size(); ++k) {
            if (pair_of_product_[pairs_[k].product] != -1)
                throw check_error("pair-to-element map is not injective");
            pair_of_product_[pairs_[k].product] = static_cast<int>(k);
        }
        classes_.reserve(pairs_.size());
        for (const BasisPair& pr : pairs_)
            classes_.push_back(schubert_class(full_, pr.v, table) *
                               schubert_class(full_, pr.w, table));
    }

    const WeylGroup& group() const { return *W_; }
    std::shared_ptr<const WeylGroup> group_ptr() const { return W_; }
    const ParabolicSubset& parabolic() const { return P_; }
    std::shared_ptr<const Space> full_space() const { return full_; }
    const std::vector<int>& coset_reps() const { return reps_; }
    const std::vector<int>& subgroup() const { return sub_; }
    const std::vector<BasisPair>& pairs() const { return pairs_; }
    const EquivariantClass& basis_class(int k) const { return classes_.at(k); }
    int pair_index_of_product(int u_idx) const { return pair_of_product_.at(u_idx); }

    // Schubert expansions of the basis classes, computed once on demand.
    const std::vector<SchubertExpansion>& schubert_expansions(BilleyTable& table) const {
        if (expansions_.empty()) {
            expansions_.reserve(classes_.size());
            for (const EquivariantClass& c : classes_)
                expansions_.push_back(expand_in_schubert(c, table));
        }
        return expansions_;
    }

private:
    std::shared_ptr<const WeylGroup> W_;
    ParabolicSubset P_;
    std::shared_ptr<const Space> full_;
    std::vector<int> reps_;
    std::vector<int> sub_;
    std::vector<BasisPair> pairs_;
    std::vector<EquivariantClass> classes_;
    std::vector<int> pair_of_product_;
    mutable std::vector<SchubertExpansion> expansions_;
};

// ---------------------------------------------------------------------------
// Localization matrices.
// ---------------------------------------------------------------------------

// The full localization matrix: rows are basis pairs (v, w), columns are the
// fixed points enumerated as products v'*w' in the same pair order, and the
// entry is the restriction sigma_v(v'w') * sigma_w(v'w').
inline PolyMatrix matrix_A(const ParabolicBasis& basis) {
    const int n = static_cast<int>(basis.pairs().size());
    const int nv = basis.group().root_system_ptr()->rank();
    PolyMatrix A(n, n, nv);
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col)
            A.at(row, col) = basis.basis_class(row).value_at(basis.pairs()[col].product);
    return A;
}

// Restrictions within the parabolic subgroup: N[a][b] = sigma_{sub[a]}(sub[b]).
// Triangular: the entry vanishes unless sub[a] <= sub[b] in Bruhat order.
inline PolyMatrix matrix_N(const ParabolicBasis& basis, BilleyTable& table) {
    const auto& sub = basis.subgroup();
    const int m = static_cast<int>(sub.size());
    const int nv = basis.group().root_system_ptr()->rank();
    PolyMatrix N(m, m, nv);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) N.at(a, b) = table.sigma(sub[a], sub[b]);
    return N;
}

// matrix_N with the coset representative v acting on every entry.
inline PolyMatrix matrix_vN(const ParabolicBasis& basis, int v_idx, BilleyTable& table) {
    PolyMatrix N = matrix_N(basis, table);
    const WeylElement& v = basis.group().element(v_idx);
    for (Poly& p : N.a) p = weyl_act(v, p);
    return N;
}

// The suffix-decomposition matrix at the coset representative v:
// M[a][b] = sigma_{sub[a] * sub[b]^{-1}}(v) when sub[b] is a suffix of
// sub[a], and zero otherwise.  Unit diagonal; entries vanish whenever
// length(sub[b]) > length(sub[a]).
inline PolyMatrix matrix_M(const ParabolicBasis& basis, int v_idx, BilleyTable& table) {
    const WeylGroup& W = basis.group();
    const auto& sub = basis.subgroup();
    const int m = static_cast<int>(sub.size());
    const int nv = W.root_system_ptr()->rank();
    PolyMatrix M(m, m, nv);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            const int quotient = W.mult(sub[a], W.inverse_index(sub[b]));
            const bool is_suffix =
                W.length(quotient) + W.length(sub[b]) == W.length(sub[a]);
            if (is_suffix) M.at(a, b) = table.sigma(quotient, v_idx);
        }
    }
    return M;
}

// ---------------------------------------------------------------------------
// Structural verification.
// ---------------------------------------------------------------------------

struct BlockStructureReport {
    bool ok = true;
    // status[i][j] for row block reps[i], column block reps[j]:
    // "zero-block" (v not <= v'), "diagonal" (v == v'), or "upper" (v < v').
    std::vector<std::vector<std::string>> status;
    std::vector<std::string> failures;
};

// Verifies that the localization matrix is block upper-triangular: classes
// indexed by coset representatives are constant on cosets
// (sigma_v(v'w') = sigma_v(v')), blocks vanish exactly when v is not below
// v' in Bruhat order, and every block left of the diagonal is zero.
inline BlockStructureReport verify_block_structure(const ParabolicBasis& basis,
                                                   BilleyTable& table) {
    const WeylGroup& W = basis.group();
    const auto& reps = basis.coset_reps();
    const auto& sub = basis.subgroup();
    const int r = static_cast<int>(reps.size());
    BlockStructureReport rep;
    rep.status.assign(r, std::vector<std::string>(r));
    auto fail = [&rep](std::string msg) {
        rep.ok = false;
        rep.failures.push_back(std::move(msg));
    };
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            const int vi = reps[i];
            const int vj = reps[j];
            const Poly& at_rep = table.sigma(vi, vj);
            for (int w : sub) {
                const int point = W.mult(vj, w);
                if (table.sigma(vi, point) != at_rep)
                    fail("class of " + word_to_string(W.word(vi)) +
                         " is not constant on the coset of " + word_to_string(W.word(vj)));
            }
            const bool below = W.leq(vi, vj);
            if (!below && !at_rep.is_zero())
                fail("nonzero restriction despite Bruhat incomparability at (" +
                     word_to_string(W.word(vi)) + ", " + word_to_string(W.word(vj)) + ")");
            if (below && at_rep.is_zero())
                fail("zero restriction despite Bruhat comparability at (" +
                     word_to_string(W.word(vi)) + ", " + word_to_string(W.word(vj)) + ")");
            if (vi == vj)
                rep.status[i][j] = "diagonal";
            else if (below)
                rep.status[i][j] = "upper";
            else
                rep.status[i][j] = "zero-block";
            if (j < i && rep.status[i][j] != "zero-block")
                fail("block below the diagonal is not zero at (" + std::to_string(i) +
                     ", " + std::to_string(j) + ")");
        }
    }
    return rep;
}

struct DiagonalFactorizationReport {
    bool ok = true;
    std::vector<std::string> failures;
};

// Verifies, for every coset representative v, the suffix decomposition
// (sigma_w(v w'))_{w,w'} = M * vN, and that the corresponding diagonal block
// of the localization matrix equals sigma_v(v) times that matrix.
inline DiagonalFactorizationReport verify_diagonal_factorization(const ParabolicBasis& basis,
                                                                 BilleyTable& table) {
    const WeylGroup& W = basis.group();
    const auto& sub = basis.subgroup();
    const int m = static_cast<int>(sub.size());
    const int nv = W.root_system_ptr()->rank();
    DiagonalFactorizationReport rep;
    auto fail = [&rep](std::string msg) {
        rep.ok = false;
        rep.failures.push_back(std::move(msg));
    };
    for (int v_idx : basis.coset_reps()) {
        PolyMatrix S(m, m, nv);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                S.at(a, b) = table.sigma(sub[a], W.mult(v_idx, sub[b]));
        const PolyMatrix M = matrix_M(basis, v_idx, table);
        for (int a = 0; a < m; ++a)
            if (M.at(a, a) != Poly::one(nv)) {
                fail("suffix matrix does not have unit diagonal at v = " +
                     word_to_string(W.word(v_idx)));
                break;
            }
        if (!(S == M * matrix_vN(basis, v_idx, table)))
            fail("suffix decomposition fails at v = " + word_to_string(W.word(v_idx)));
        const Poly& sv = table.sigma(v_idx, v_idx);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                const int row = basis.pair_index_of_product(W.mult(v_idx, sub[a]));
                const int point = W.mult(v_idx, sub[b]);
                if (basis.basis_class(row).value_at(point) != sv * S.at(a, b)) {
                    fail("diagonal block of the localization matrix is not sigma_v(v) "
                         "times the restriction matrix at v = " +
                         word_to_string(W.word(v_idx)));
                    a = m;
                    break;
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Factored closed forms.
// ---------------------------------------------------------------------------

// A product of linear forms kept in factored shape: each factor is
// sign-normalized (leading coefficient positive) and counted with
// multiplicity.  Linear forms are primes in the polynomial ring and no two
// distinct positive roots of a reduced system are proportional, so multiset
// equality of normalized factors decides equality of the products exactly.
struct FactoredForm {
    int sign = 1;
    std::map<std::string, std::pair<long, Poly>> factors; // printed form -> (multiplicity, factor)

    void add(const Poly& linear, long multiplicity = 1) {
        if (linear.is_zero()) throw check_error("zero factor in a factored form");
        Poly p = linear;
        if (p.terms().front().c < 0) {
            p = Poly(p.nvars()) - p;
            if (multiplicity % 2 != 0) sign = -sign;
        }
        auto [it, inserted] = factors.emplace(poly_to_string(p), std::make_pair(multiplicity, p));
        if (!inserted) it->second.first += multiplicity;
    }

    bool operator==(const FactoredForm& o) const {
        if (sign != o.sign || factors.size() != o.factors.size()) return false;
        auto a = factors.begin();
        auto b = o.factors.begin();
        for (; a != factors.end(); ++a, ++b)
            if (a->first != b->first || a->second.first != b->second.first) return false;
        return true;
    }
    bool operator!=(const FactoredForm& o) const { return !(*this == o); }

    Poly expand(int nvars) const {
        Poly out = Poly::constant(nvars, sign);
        for (const auto& [text, fac] : factors) {
            (void)text;
            out = out * fac.second.pow(static_cast<int>(fac.first));
        }
        return out;
    }

    std::string str() const {
        if (factors.empty()) return sign == 1 ? "1" : "-1";
        std::string out = sign == 1 ? "" : "-";
        bool first = true;
        for (const auto& [text, fac] : factors) {
            if (!first) out += "*";
            first = false;
            out += "(" + text + ")";
            if (fac.first != 1) out += "^" + std::to_string(fac.first);
        }
        return out;
    }
};

// First closed form for det A: over coset representatives v, the factor
// sigma_v(v) appears |W_P| times and each w in the subgroup contributes
// v(sigma_w(w)), all kept as products of the underlying root factors.
inline FactoredForm determinant_closed_form(const ParabolicBasis& basis) {
    const WeylGroup& W = basis.group();
    const auto rs = W.root_system_ptr();
    const int nv = rs->rank();
    const long sub_order = static_cast<long>(basis.subgroup().size());
    FactoredForm form;
    for (int v_idx : basis.coset_reps()) {
        for (const RootVector& r : reflection_roots(rs, W.word(v_idx)))
            form.add(Poly::from_root(nv, r), sub_order);
        const WeylElement& v = W.element(v_idx);
        for (int w_idx : basis.subgroup())
            for (const RootVector& r : reflection_roots(rs, W.word(w_idx)))
                form.add(weyl_act(v, Poly::from_root(nv, r)));
    }
    return form;
}

// Second closed form: the product over the whole group of sigma_u(u), again
// as a multiset of root factors.
inline FactoredForm determinant_global_form(const WeylGroup& W) {
    const auto rs = W.root_system_ptr();
    const int nv = rs->rank();
    FactoredForm form;
    for (int u = 0; u < W.size(); ++u)
        for (const RootVector& r : reflection_roots(rs, W.word(u)))
            form.add(Poly::from_root(nv, r));
    return form;
}

// ---------------------------------------------------------------------------
// Certification.
// ---------------------------------------------------------------------------

struct BasisCertificate {
    std::string root_system;
    ParabolicSubset parabolic;
    int group_order = 0;
    bool ok = false;
    std::vector<std::vector<std::string>> block_status;
    std::vector<std::string> failures;
    FactoredForm closed_form;        // common factored value of det A
    bool closed_forms_agree = false; // basis-product form == whole-group form
    std::optional<Poly> det_direct;  // present when the direct determinant ran
    bool det_matches_closed_form = false; // meaningful when det_direct is present
};

// Certify that the pair products form a module basis: block structure,
// diagonal factorization, and a nonzero determinant.  The determinant is
// computed directly for groups of order at most direct_det_cap and compared
// against the factored closed form; for larger groups the two independently
// factored closed forms are compared instead (together with the entrywise
// factorization checks this certifies the determinant).
inline BasisCertificate certify_basis(const ParabolicBasis& basis, BilleyTable& table,
                                      int direct_det_cap = default_det_cap) {
    const WeylGroup& W = basis.group();
    BasisCertificate cert;
    cert.root_system = W.root_system_ptr()->spec_string();
    cert.parabolic = basis.parabolic();
    cert.group_order = W.size();

    BlockStructureReport blocks = verify_block_structure(basis, table);
    cert.block_status = std::move(blocks.status);
    cert.failures = std::move(blocks.failures);

    DiagonalFactorizationReport diag = verify_diagonal_factorization(basis, table);
    for (std::string& f : diag.failures) cert.failures.push_back(std::move(f));

    cert.closed_form = determinant_closed_form(basis);
    const FactoredForm global_form = determinant_global_form(W);
    cert.closed_forms_agree = cert.closed_form == global_form;
    if (!cert.closed_forms_agree)
        cert.failures.push_back("factored closed forms disagree");
    if (cert.closed_form.sign != 1)
        cert.failures.push_back("closed form is not a product of positive factors");

    if (W.size() <= direct_det_cap) {
        const Poly direct = det(matrix_A(basis), direct_det_cap);
        cert.det_direct = direct;
        if (direct.is_zero()) cert.failures.push_back("direct determinant is zero");
        cert.det_matches_closed_form =
            direct == cert.closed_form.expand(W.root_system_ptr()->rank());
        if (!cert.det_matches_closed_form)
            cert.failures.push_back("direct determinant does not match the closed form");
    }

    cert.ok = cert.failures.empty();
    return cert;
}

// ---------------------------------------------------------------------------
// Expansion in a parabolic basis.
// ---------------------------------------------------------------------------

// Keyed by (v, w) group indices in (coset representative, subgroup element)
// canonical order.
using ParabolicExpansion = std::map<std::pair<int, int>, Poly>;

// Expand a full-flag class in the pair-product basis.  The Schubert
// expansions of the class and of every basis element are related by a
// block-triangular change of basis graded by total length; each length block
// is a unimodular integer matrix and is solved exactly.  The residual must
// return to zero, which re-verifies the expansion against the input.
inline ParabolicExpansion expand_in_parabolic_basis(const EquivariantClass& c,
                                                    const ParabolicBasis& basis,
                                                    BilleyTable& table) {
    if (!c.space_ptr()->same(*basis.full_space()))
        throw spec_error("expand_in_parabolic_basis expects a class on the full flag space");
    const WeylGroup& W = basis.group();
    const int n = W.size();
    const int nv = W.root_system_ptr()->rank();

    std::vector<Poly> residual(static_cast<std::size_t>(n), Poly(nv));
    for (const auto& [u, coeff] : expand_in_schubert(c, table)) residual[u] = coeff;

    const std::vector<SchubertExpansion>& expansions = basis.schubert_expansions(table);

    int max_len = 0;
    for (const BasisPair& pr : basis.pairs())
        max_len = std::max(max_len, W.length(pr.product));
    std::vector<std::vector<int>> by_length(static_cast<std::size_t>(max_len) + 1);
    for (std::size_t k = 0; k < basis.pairs().size(); ++k)
        by_length[W.length(basis.pairs()[k].product)].push_back(static_cast<int>(k));

    ParabolicExpansion out;
    for (int L = max_len; L >= 0; --L) {
        const std::vector<int>& block = by_length[L];
        if (block.empty()) continue;
        const int m = static_cast<int>(block.size());

        std::map<int, int> col_of_element;
        for (int b = 0; b < m; ++b)
            col_of_element[basis.pairs()[block[b]].product] = b;

        // system[b][a] * d[a] = rhs[b]: row per length-L element, column per
        // length-L pair; entries are the constant leading coefficients.
        std::vector<std::vector<Rational>> system(m, std::vector<Rational>(m, Rational(0)));
        std::vector<Poly> rhs;
        rhs.reserve(m);
        for (int b = 0; b < m; ++b) rhs.push_back(residual[basis.pairs()[block[b]].product]);
        for (int a = 0; a < m; ++a) {
            for (const auto& [u, coeff] : expansions[block[a]]) {
                if (W.length(u) != L) continue;
                if (coeff.total_degree() > 0)
                    throw check_error("leading block of the change of basis is not constant");
                system[col_of_element.at(u)][a] = coeff.constant_term();
            }
        }

        // Exact Gauss-Jordan elimination; the determinant must be a unit.
        Rational det_acc(1);
        for (int col = 0; col < m; ++col) {
            int pivot = -1;
            for (int row = col; row < m; ++row)
                if (system[row][col] != 0) {
                    pivot = row;
                    break;
                }
            if (pivot == -1) throw check_error("length block of the change of basis is singular");
            if (pivot != col) {
                std::swap(system[pivot], system[col]);
                std::swap(rhs[pivot], rhs[col]);
                det_acc = -det_acc;
            }
            const Rational p = system[col][col];
            det_acc *= p;
            if (p != 1) {
                const Rational inv = Rational(1) / p;
                for (int cc = 0; cc < m; ++cc) system[col][cc] *= inv;
                rhs[col] = rhs[col] * Poly::constant(nv, inv);
            }
            for (int row = 0; row < m; ++row) {
                if (row == col) continue;
                const Rational f = system[row][col];
                if (f == 0) continue;
                for (int cc = 0; cc < m; ++cc) system[row][cc] -= f * system[col][cc];
                rhs[row] = Poly::mul_sub(rhs[row], Poly::one(nv), rhs[col], Poly::constant(nv, f));
            }
        }
        if (det_acc != 1 && det_acc != -1)
            throw check_error("length block of the change of basis is not unimodular");

        for (int a = 0; a < m; ++a) {
            const Poly& d = rhs[a];
            if (d.is_zero()) continue;
            const BasisPair& pr = basis.pairs()[block[a]];
            out[{pr.v, pr.w}] = d;
            for (const auto& [u, coeff] : expansions[block[a]])
                residual[u] = Poly::mul_sub(residual[u], Poly::one(nv), d, coeff);
        }
    }

    for (int u = 0; u < n; ++u)
        if (!residual[u].is_zero())
            throw check_error("expansion in the parabolic basis left a nonzero residual");
    return out;
}

// Rebuild the class from its expansion; the independent localization-level
// round trip used by the verification suites.
inline EquivariantClass reassemble_parabolic(const ParabolicBasis& basis,
                                             const ParabolicExpansion& expansion) {
    EquivariantClass acc = EquivariantClass::zero(basis.full_space());
    const WeylGroup& W = basis.group();
    for (const auto& [key, coeff] : expansion) {
        const int k = basis.pair_index_of_product(W.mult(key.first, key.second));
        if (k < 0 || basis.pairs()[k].v != key.first || basis.pairs()[k].w != key.second)
            throw spec_error("expansion references a pair outside the basis");
        acc += basis.basis_class(k).scaled(coeff);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Single-term products.
// ---------------------------------------------------------------------------

struct SingleTermProductReport {
    int pairs_checked = 0;
    int single_term_pairs = 0;
    bool ok = true;
    std::vector<std::string> violations;
};

// When the product sigma_v * sigma_w collapses to a single Schubert class
// with coefficient one, that class must be sigma_{vw}.  Sweeps every basis
// pair and records violations.
inline SingleTermProductReport verify_single_term_products(const ParabolicBasis& basis,
                                                           BilleyTable& table) {
    const WeylGroup& W = basis.group();
    const int nv = W.root_system_ptr()->rank();
    SingleTermProductReport rep;
    const auto& expansions = basis.schubert_expansions(table);
    for (std::size_t k = 0; k < basis.pairs().size(); ++k) {
        ++rep.pairs_checked;
        const SchubertExpansion& e = expansions[k];
        if (e.size() != 1) continue;
        ++rep.single_term_pairs;
        const auto& [u, coeff] = *e.begin();
        if (coeff != Poly::one(nv) || u != basis.pairs()[k].product) {
            rep.ok = false;
            rep.violations.push_back(
                "product of " + word_to_string(W.word(basis.pairs()[k].v)) + " and " +
                word_to_string(W.word(basis.pairs()[k].w)) + " is a single term at " +
                word_to_string(W.word(u)) + " with coefficient " + poly_to_string(coeff));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Distinctness of two parabolic bases.
// ---------------------------------------------------------------------------

enum class BasisComparisonMode { equivariant, ordinary };

struct BasisWitnessClass {
    std::string side; // "first" or "second"
    Word v_word;
    Word w_word;
    std::string serialization;
};

struct BasisComparisonReport {
    BasisComparisonMode mode = BasisComparisonMode::equivariant;
    bool predicted_distinct = false;
    bool observed_distinct = false;
    bool agrees_with_prediction = false;
    std::optional<BasisWitnessClass> witness; // present when observed distinct
};

// Predicted verdict: the bases coincide exactly when, within every
// irreducible factor, the two parabolic subsets either agree or are both
// degenerate (empty or the whole factor).
inline bool predicted_bases_equal(const RootSystem& rs, const ParabolicSubset& p,
                                  const ParabolicSubset& q) {
    const ParabolicSubset P = normalize_parabolic(p, rs.rank());
    const ParabolicSubset Q = normalize_parabolic(q, rs.rank());
    for (std::size_t f = 0; f < rs.spec().factors.size(); ++f) {
        const auto [first, last] = rs.factor_range(f);
        ParabolicSubset pf, qf;
        for (int i : P)
            if (i >= first && i <= last) pf.push_back(i);
        for (int i : Q)
            if (i >= first && i <= last) qf.push_back(i);
        if (pf == qf) continue;
        const int full = last - first + 1;
        const bool p_degenerate = pf.empty() || static_cast<int>(pf.size()) == full;
        const bool q_degenerate = qf.empty() || static_cast<int>(qf.size()) == full;
        if (!(p_degenerate && q_degenerate)) return false;
    }
    return true;
}

namespace detail {

inline std::string serialize_equivariant(const EquivariantClass& c) {
    std::string out;
    for (int k = 0; k < c.space_ptr()->size(); ++k) {
        if (k) out += "|";
        out += poly_to_string(c.value_at_position(k));
    }
    return out;
}

inline std::string serialize_ordinary(const EquivariantClass& c, BilleyTable& table) {
    std::string out;
    for (const auto& [u, value] : ordinary_schubert_coefficients(c, table)) {
        if (!out.empty()) out += ";";
        out += std::to_string(u) + ":" + value.get_str();
    }
    return out;
}

} // namespace detail

// Compare the bases of two parabolic subsets as sets.  Equivariant mode
// compares canonical serializations of the localization tables; ordinary mode
// compares the constant-term Schubert coefficient vectors.  In both modes a
// class present on exactly one side is returned as the witness.
inline BasisComparisonReport bases_distinct(std::shared_ptr<const WeylGroup> W,
                                            const ParabolicSubset& p, const ParabolicSubset& q,
                                            BasisComparisonMode mode, BilleyTable& table) {
    BasisComparisonReport report;
    report.mode = mode;
    report.predicted_distinct = !predicted_bases_equal(*W->root_system_ptr(), p, q);

    const ParabolicBasis first(W, p, table);
    const ParabolicBasis second(W, q, table);
    auto serialize = [&](const ParabolicBasis& basis, int k) {
        return mode == BasisComparisonMode::equivariant
                   ? detail::serialize_equivariant(basis.basis_class(k))
                   : detail::serialize_ordinary(basis.basis_class(k), table);
    };
    std::map<std::string, std::pair<int, int>> first_set, second_set;
    for (std::size_t k = 0; k < first.pairs().size(); ++k)
        if (!first_set.emplace(serialize(first, static_cast<int>(k)),
                               std::make_pair(first.pairs()[k].v, first.pairs()[k].w))
                 .second)
            throw check_error("basis classes serialize to duplicate values");
    for (std::size_t k = 0; k < second.pairs().size(); ++k)
        if (!second_set.emplace(serialize(second, static_cast<int>(k)),
                                std::make_pair(second.pairs()[k].v, second.pairs()[k].w))
                 .second)
            throw check_error("basis classes serialize to duplicate values");

    std::optional<BasisWitnessClass> witness;
    auto consider = [&](const std::map<std::string, std::pair<int, int>>& own,
                        const std::map<std::string, std::pair<int, int>>& other,
                        const char* side) {
        for (const auto& [text, pair] : own) {
            if (other.count(text)) continue;
            if (!witness || text < witness->serialization) {
                BasisWitnessClass w;
                w.side = side;
                w.v_word = W->word(pair.first);
                w.w_word = W->word(pair.second);
                w.serialization = text;
                witness = std::move(w);
            }
        }
    };
    consider(first_set, second_set, "first");
    consider(second_set, first_set, "second");

    report.observed_distinct = witness.has_value();
    report.witness = std::move(witness);
    report.agrees_with_prediction = report.observed_distinct == report.predicted_distinct;
    return report;
}

// ---------------------------------------------------------------------------
// Dynkin path witness.
// ---------------------------------------------------------------------------

struct DynkinPathWitness {
    std::string case_label; // "1", "2a", or "2b"
    bool swapped = false;   // roles of the two subsets were exchanged
    int i = 0;              // endpoint in the first subset minus the second
    int j = 0;              // endpoint in the second subset
    Word interior;          // path interior (possibly empty)
    Word witness_word;      // the single class: the path word, or (i, j) in case 2b
    Word eval_word;         // evaluation point as a reduced word
    Poly single_value;      // the single class evaluated at the point
    Poly product_value;     // the competing product evaluated at the point
    bool distinct = false;  // the two values differ (always true on return)
};

// Constructs the minimal Dynkin-diagram path between the two parabolic
// subsets, classifies it, and evaluates the two candidate classes -- one
// belonging to each basis -- at a single designated point.  The resulting
// values differ, certifying that the bases are distinct without enumerating
// them.
inline DynkinPathWitness dynkin_path_witness(std::shared_ptr<const WeylGroup> Wp,
                                             const ParabolicSubset& p, const ParabolicSubset& q,
                                             BilleyTable& table) {
    const WeylGroup& W = *Wp;
    const auto rs = W.root_system_ptr();
    if (!rs->spec().irreducible())
        throw spec_error("the path witness requires an irreducible root system");
    const int n = rs->rank();
    ParabolicSubset P = normalize_parabolic(p, n);
    ParabolicSubset Q = normalize_parabolic(q, n);
    ParabolicSubset full;
    for (int i = 1; i <= n; ++i) full.push_back(i);
    if (P.empty()) P = full;
    if (Q.empty()) Q = full;
    if (P == Q)
        throw spec_error("the two subsets induce the same basis; no witness exists");

    DynkinPathWitness out;
    std::vector<char> in_p(static_cast<std::size_t>(n) + 1, 0);
    std::vector<char> in_q(static_cast<std::size_t>(n) + 1, 0);
    for (int i : P) in_p[i] = 1;
    for (int i : Q) in_q[i] = 1;
    bool p_minus_q = false;
    for (int i : P)
        if (!in_q[i]) p_minus_q = true;
    if (!p_minus_q) {
        std::swap(P, Q);
        std::swap(in_p, in_q);
        out.swapped = true;
    }

    // Shortest path in the Dynkin diagram from a node of the second subset to
    // a node of the first subset not in the second; smallest (length, j, i).
    auto adjacent = [&](int a, int b) { return a != b && rs->cartan_entry(a, b) != 0; };
    int best_len = -1;
    std::vector<int> best_path;
    for (int j : Q) {
        std::vector<int> dist(static_cast<std::size_t>(n) + 1, -1);
        std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
        std::queue<int> bfs;
        dist[j] = 0;
        bfs.push(j);
        while (!bfs.empty()) {
            const int cur = bfs.front();
            bfs.pop();
            for (int nxt = 1; nxt <= n; ++nxt) {
                if (!adjacent(cur, nxt) || dist[nxt] != -1) continue;
                dist[nxt] = dist[cur] + 1;
                parent[nxt] = cur;
                bfs.push(nxt);
            }
        }
        for (int i = 1; i <= n; ++i) {
            if (!in_p[i] || in_q[i] || dist[i] == -1) continue;
            if (best_len != -1 && dist[i] >= best_len) continue;
            best_len = dist[i];
            best_path.clear();
            for (int cur = i; cur != j; cur = parent[cur]) best_path.push_back(cur);
            best_path.push_back(j);
            std::reverse(best_path.begin(), best_path.end()); // j ... i
        }
    }
    if (best_len < 1)
        throw check_error("no Dynkin path between the two subsets");

    out.j = best_path.front();
    out.i = best_path.back();
    for (std::size_t k = 1; k + 1 < best_path.size(); ++k) {
        const int node = best_path[k];
        if (in_p[node] || in_q[node])
            throw check_error("minimal Dynkin path passes through one of the subsets");
        out.interior.push_back(node);
    }

    Word single_word, left_word, right_word;
    if (out.interior.empty()) {
        out.case_label = "2b";
        single_word = {out.i, out.j};
        left_word = {out.i};
        right_word = {out.j};
        out.eval_word = {out.j, out.i, out.j};
    } else {
        out.case_label = in_p[out.j] ? "2a" : "1";
        single_word.push_back(out.j);
        for (int b : out.interior) single_word.push_back(b);
        single_word.push_back(out.i);
        left_word.assign(single_word.begin(), single_word.end() - 1); // s_j v
        right_word = {out.i};
        if (out.case_label == "1") {
            out.eval_word = single_word; // s_j v s_i
            out.eval_word.push_back(out.j);
            for (int b : out.interior) out.eval_word.push_back(b);
        } else {
            out.eval_word = {out.i};
            out.eval_word.insert(out.eval_word.end(), single_word.begin(), single_word.end());
        }
    }
    out.witness_word = single_word;

    auto reduced_index = [&](const Word& word, const char* what) {
        const int idx = W.from_word_index(word);
        if (W.length(idx) != static_cast<int>(word.size()))
            throw check_error(std::string(what) + " word is not reduced");
        return idx;
    };
    const int point = reduced_index(out.eval_word, "evaluation");
    const int single = reduced_index(single_word, "witness");
    const int left = reduced_index(left_word, "product prefix");
    const int right = reduced_index(right_word, "product suffix");

    out.single_value = table.sigma(single, point);
    out.product_value = table.sigma(left, point) * table.sigma(right, point);
    if (out.single_value == out.product_value)
        throw check_error("path witness failed: the two evaluations coincide");
    out.distinct = true;
    return out;
}

} // namespace gkm
