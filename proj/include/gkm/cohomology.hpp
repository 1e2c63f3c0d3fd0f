#ifndef GKM_COHOMOLOGY_HPP
#define GKM_COHOMOLOGY_HPP

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "gkm/billey.hpp"
#include "gkm/errors.hpp"
#include "gkm/polynomial.hpp"
#include "gkm/weyl.hpp"

// Equivariant cohomology classes as localization tables: a class is the tuple
// of its polynomial restrictions at the torus fixed points, and all algebra
// is pointwise.  Three kinds of space share one representation:
//
//   full_flag     points = W        basis classes indexed by W
//   partial_flag  points = W^P      basis classes indexed by W^P
//   fiber         points = W_P      basis classes indexed by W_P
//
// In every flavor the restriction of the basis class sigma_w at the point u
// is the same subword sum sigma_w(u); only the index sets change.

namespace gkm {

enum class Flavor { full_flag, partial_flag, fiber };

inline const char* flavor_name(Flavor f) {
    switch (f) {
        case Flavor::full_flag: return "full_flag";
        case Flavor::partial_flag: return "partial_flag";
        case Flavor::fiber: return "fiber";
    }
    return "?";
}

struct Space {
    std::shared_ptr<const WeylGroup> W;
    Flavor flavor = Flavor::full_flag;
    ParabolicSubset parabolic; // normalized; empty for full_flag
    std::vector<int> points;   // group indices in canonical order
    std::vector<int> pos;      // group index -> position in points, else -1

    static std::shared_ptr<const Space> full_flag(std::shared_ptr<const WeylGroup> W) {
        auto sp = std::make_shared<Space>();
        sp->W = std::move(W);
        sp->flavor = Flavor::full_flag;
        sp->points.resize(sp->W->size());
        for (int i = 0; i < sp->W->size(); ++i) sp->points[i] = i;
        sp->index_points();
        return sp;
    }

    static std::shared_ptr<const Space> partial_flag(std::shared_ptr<const WeylGroup> W,
                                                     const ParabolicSubset& p) {
        auto sp = std::make_shared<Space>();
        sp->W = std::move(W);
        sp->flavor = Flavor::partial_flag;
        sp->parabolic = normalize_parabolic(p, sp->W->rank());
        sp->points = sp->W->minimal_coset_reps(sp->parabolic);
        sp->index_points();
        return sp;
    }

    static std::shared_ptr<const Space> fiber(std::shared_ptr<const WeylGroup> W,
                                              const ParabolicSubset& p) {
        auto sp = std::make_shared<Space>();
        sp->W = std::move(W);
        sp->flavor = Flavor::fiber;
        sp->parabolic = normalize_parabolic(p, sp->W->rank());
        sp->points = sp->W->parabolic_subgroup(sp->parabolic);
        sp->index_points();
        return sp;
    }

    int size() const { return static_cast<int>(points.size()); }

    int position_of(int w_idx) const {
        int p = pos[w_idx];
        if (p < 0) throw spec_error("element is not a fixed point of this space");
        return p;
    }

    bool has_point(int w_idx) const { return pos[w_idx] >= 0; }

    bool same(const Space& o) const {
        return W.get() == o.W.get() && flavor == o.flavor && parabolic == o.parabolic;
    }

private:
    void index_points() {
        pos.assign(W->size(), -1);
        for (std::size_t k = 0; k < points.size(); ++k) pos[points[k]] = static_cast<int>(k);
    }
};

class EquivariantClass {
public:
    explicit EquivariantClass(std::shared_ptr<const Space> sp)
        : sp_(std::move(sp)), vals_(sp_->points.size(), Poly(sp_->W->rank())) {}

    static EquivariantClass zero(std::shared_ptr<const Space> sp) {
        return EquivariantClass(std::move(sp));
    }

    static EquivariantClass unit(std::shared_ptr<const Space> sp) {
        EquivariantClass c(std::move(sp));
        for (Poly& v : c.vals_) v = Poly::one(c.sp_->W->rank());
        return c;
    }

    const Space& space() const { return *sp_; }
    std::shared_ptr<const Space> space_ptr() const { return sp_; }
    const std::vector<Poly>& values() const { return vals_; }

    const Poly& value_at_position(int k) const { return vals_.at(k); }
    const Poly& value_at(int w_idx) const { return vals_[sp_->position_of(w_idx)]; }
    void set_value_at_position(int k, Poly p) { vals_.at(k) = std::move(p); }
    void set_value_at(int w_idx, Poly p) { vals_[sp_->position_of(w_idx)] = std::move(p); }

    bool is_zero() const {
        for (const Poly& v : vals_)
            if (!v.is_zero()) return false;
        return true;
    }

    bool operator==(const EquivariantClass& o) const {
        return sp_->same(*o.sp_) && vals_ == o.vals_;
    }
    bool operator!=(const EquivariantClass& o) const { return !(*this == o); }

    EquivariantClass operator+(const EquivariantClass& o) const {
        require_same_space(o);
        EquivariantClass r = *this;
        for (std::size_t k = 0; k < vals_.size(); ++k) r.vals_[k] += o.vals_[k];
        return r;
    }

    EquivariantClass operator-(const EquivariantClass& o) const {
        require_same_space(o);
        EquivariantClass r = *this;
        for (std::size_t k = 0; k < vals_.size(); ++k) r.vals_[k] -= o.vals_[k];
        return r;
    }

    EquivariantClass operator*(const EquivariantClass& o) const {
        require_same_space(o);
        EquivariantClass r(sp_);
        for (std::size_t k = 0; k < vals_.size(); ++k) r.vals_[k] = vals_[k] * o.vals_[k];
        return r;
    }

    EquivariantClass& operator+=(const EquivariantClass& o) { return *this = *this + o; }
    EquivariantClass& operator-=(const EquivariantClass& o) { return *this = *this - o; }
    EquivariantClass& operator*=(const EquivariantClass& o) { return *this = *this * o; }

    // H*_T(point)-module structure: multiply every restriction by a polynomial.
    EquivariantClass scaled(const Poly& p) const {
        EquivariantClass r = *this;
        for (Poly& v : r.vals_) v *= p;
        return r;
    }

    EquivariantClass scaled(const Rational& c) const {
        EquivariantClass r = *this;
        for (Poly& v : r.vals_) v = v * c;
        return r;
    }

    void require_same_space(const EquivariantClass& o) const {
        if (!sp_->same(*o.sp_)) throw spec_error("classes live on different spaces");
    }

private:
    std::shared_ptr<const Space> sp_;
    std::vector<Poly> vals_;
};

// The basis class sigma_w on a space: its restriction at the point u is
// sigma_w(u).  w must index a basis class of the flavor (any element for the
// full flag space, a minimal coset representative for a partial one, a
// parabolic subgroup element for a fiber).
inline EquivariantClass schubert_class(std::shared_ptr<const Space> sp, int w_idx,
                                       BilleyTable& table) {
    if (!sp->has_point(w_idx))
        throw spec_error("schubert_class: element does not index a basis class here");
    EquivariantClass c(sp);
    for (int k = 0; k < sp->size(); ++k)
        c.set_value_at_position(k, table.sigma(w_idx, sp->points[k]));
    return c;
}

// Sparse expansion in the space's Schubert basis, keyed by group index in
// canonical order.
using SchubertExpansion = std::map<int, Poly>;

// Triangular solve: walk points in canonical order; whenever the residual is
// nonzero at the current point w, the coefficient of sigma_w is
// residual(w) / sigma_w(w) (exact for genuine classes), and subtracting
// c_w * sigma_w clears point w without touching earlier points.
inline SchubertExpansion expand_in_schubert(const EquivariantClass& c, BilleyTable& table) {
    const Space& sp = c.space();
    SchubertExpansion out;
    EquivariantClass residual = c;
    for (int k = 0; k < sp.size(); ++k) {
        const int w = sp.points[k];
        const Poly& r = residual.value_at_position(k);
        if (r.is_zero()) continue;
        Poly coeff = exact_div(r, table.sigma(w, w));
        EquivariantClass basis = schubert_class(c.space_ptr(), w, table);
        residual -= basis.scaled(coeff);
        out.emplace(w, std::move(coeff));
    }
    if (!residual.is_zero())
        throw error("schubert expansion failed to terminate with zero residual");
    return out;
}

inline EquivariantClass reassemble(std::shared_ptr<const Space> sp,
                                   const SchubertExpansion& expansion, BilleyTable& table) {
    EquivariantClass acc(sp);
    for (const auto& [w, coeff] : expansion)
        acc += schubert_class(sp, w, table).scaled(coeff);
    return acc;
}

// Carry a partial-flag or fiber class into the full flag space: expand it in
// the source Schubert basis and reassemble the same coefficients on the
// full-flag classes with the same indices (sigma_w -> sigma_w is a module
// isomorphism onto its image).
inline EquivariantClass include_class(const EquivariantClass& c,
                                      std::shared_ptr<const Space> full, BilleyTable& table) {
    if (c.space().flavor == Flavor::full_flag)
        throw spec_error("include_class expects a partial-flag or fiber class");
    if (full->flavor != Flavor::full_flag || full->W.get() != c.space().W.get())
        throw spec_error("include_class target must be the full flag space of the same group");
    return reassemble(std::move(full), expand_in_schubert(c, table), table);
}

// Pullback along the projection (full flag) -> (partial flag): the value at w
// is the value at the minimal representative of w's coset.  Agrees with
// include_class on partial-flag classes; kept as an independent route.
inline EquivariantClass pullback_class(const EquivariantClass& c,
                                       std::shared_ptr<const Space> full) {
    if (c.space().flavor != Flavor::partial_flag)
        throw spec_error("pullback_class expects a partial-flag class");
    if (full->flavor != Flavor::full_flag || full->W.get() != c.space().W.get())
        throw spec_error("pullback_class target must be the full flag space of the same group");
    const WeylGroup& W = *full->W;
    EquivariantClass out(full);
    for (int w = 0; w < W.size(); ++w) {
        auto [v, u] = W.parabolic_decompose(w, c.space().parabolic);
        (void)u;
        out.set_value_at_position(w, c.value_at(v));
    }
    return out;
}

// Restriction of a full-flag class to the fiber over the base point: keep the
// values at the W_P fixed points only.
inline EquivariantClass restrict_to_fiber(const EquivariantClass& c,
                                          std::shared_ptr<const Space> fiber_sp) {
    if (c.space().flavor != Flavor::full_flag)
        throw spec_error("restrict_to_fiber expects a full-flag class");
    if (fiber_sp->flavor != Flavor::fiber || fiber_sp->W.get() != c.space().W.get())
        throw spec_error("restrict_to_fiber target must be a fiber space of the same group");
    EquivariantClass out(fiber_sp);
    for (int k = 0; k < fiber_sp->size(); ++k)
        out.set_value_at_position(k, c.value_at(fiber_sp->points[k]));
    return out;
}

// Image in ordinary cohomology: evaluate each coefficient at
// a_1 = ... = a_n = 0.  Zero constant terms are dropped.
inline std::map<int, Rational> project_ordinary(const SchubertExpansion& expansion) {
    std::map<int, Rational> out;
    for (const auto& [w, coeff] : expansion) {
        Rational c0 = coeff.constant_term();
        if (c0 != 0) out.emplace(w, std::move(c0));
    }
    return out;
}

inline std::map<int, Rational> ordinary_schubert_coefficients(const EquivariantClass& c,
                                                              BilleyTable& table) {
    return project_ordinary(expand_in_schubert(c, table));
}

} // namespace gkm

#endif
