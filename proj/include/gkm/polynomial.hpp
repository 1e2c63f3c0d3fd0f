#ifndef GKM_POLYNOMIAL_HPP
#define GKM_POLYNOMIAL_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <gmpxx.h>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gkm/errors.hpp"
#include "gkm/root_system.hpp"
#include "gkm/weyl.hpp"

// Exact multivariate polynomials over Q in the simple roots a1..an.
//
//   * Term order: graded lex with a1 > a2 > ... > an, descending in storage
//     and in the printed form ("a1^2*a2 + 2*a1*a2^2 - 1/2*a2").
//   * Monomials pack (degree, e1..e12) into 16-bit fields of four words, so
//     comparison is four integer compares and multiplication is four adds.
//     Supports rank <= 12 and total degree <= 65535 (every enumerable system
//     fits: group order is capped at 1152, which bounds rank by 10).
//   * Coefficients are GMP rationals; all arithmetic is exact.

namespace gkm {

using Rational = mpq_class;

inline constexpr int max_poly_vars = 12;
inline constexpr int default_det_cap = 24;

inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_from_string(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw spec_error("empty rational");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw spec_error("bad rational: " + s);
    if (q.get_den() == 0) throw spec_error("zero denominator: " + s);
    q.canonicalize();
    return q;
}

struct Monomial {
    // Halfword layout: [deg e1 e2 e3][e4 e5 e6 e7][e8 e9 e10 e11][e12 0 0 0].
    std::array<std::uint64_t, 4> k{};

    int deg() const { return static_cast<int>(k[0] >> 48); }

    int get(int var) const { // 0-based variable
        int slot = var + 1;
        return static_cast<int>((k[slot >> 2] >> (48 - 16 * (slot & 3))) & 0xffff);
    }

    void set(int var, int value) { // does not maintain deg; use fix_degree after
        int slot = var + 1;
        int sh = 48 - 16 * (slot & 3);
        k[slot >> 2] = (k[slot >> 2] & ~(0xffffull << sh)) | (static_cast<std::uint64_t>(value) << sh);
    }

    void fix_degree(int nvars) {
        long long d = 0;
        for (int i = 0; i < nvars; ++i) d += get(i);
        if (d > 0xffff) throw cap_error("monomial degree overflow");
        k[0] = (k[0] & 0x0000ffffffffffffull) | (static_cast<std::uint64_t>(d) << 48);
    }

    bool operator==(const Monomial& o) const { return k == o.k; }

    // Integer compare over the packed words == graded lex compare.
    bool operator<(const Monomial& o) const { return k < o.k; }
    bool operator>(const Monomial& o) const { return o.k < k; }

    Monomial operator*(const Monomial& o) const {
        if (deg() + o.deg() > 0xffff) throw cap_error("monomial degree overflow");
        Monomial r;
        for (int t = 0; t < 4; ++t) r.k[t] = k[t] + o.k[t]; // field sums bounded by deg sum: no carries
        return r;
    }

    bool divisible_by(const Monomial& o, int nvars) const {
        for (int i = 0; i < nvars; ++i)
            if (get(i) < o.get(i)) return false;
        return true;
    }

    Monomial divide(const Monomial& o) const { // caller checked divisibility
        Monomial r;
        for (int t = 0; t < 4; ++t) r.k[t] = k[t] - o.k[t];
        return r;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::uint64_t w : m.k) {
            h ^= w;
            h *= 0xff51afd7ed558ccdull;
            h ^= h >> 33;
        }
        return static_cast<std::size_t>(h);
    }
};

class Poly {
public:
    struct Term {
        Monomial m;
        Rational c;
    };

    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) { check_vars(nvars); }

    static Poly zero(int nvars) { return Poly(nvars); }

    static Poly constant(int nvars, Rational c) {
        Poly p(nvars);
        c.canonicalize(); // GMP rationals built as (num, den) arrive unreduced
        if (c != 0) p.t_.push_back({Monomial{}, std::move(c)});
        return p;
    }

    static Poly one(int nvars) { return constant(nvars, 1); }

    static Poly variable(int nvars, int var1based) {
        if (var1based < 1 || var1based > nvars) throw spec_error("variable index out of range");
        Poly p(nvars);
        Monomial m;
        m.set(var1based - 1, 1);
        m.fix_degree(nvars);
        p.t_.push_back({m, Rational(1)});
        return p;
    }

    // Linear form sum_i v[i] * a_{i+1}.
    static Poly from_root(int nvars, const RootVector& v) {
        if (static_cast<int>(v.size()) != nvars) throw spec_error("root vector has wrong rank");
        Poly p(nvars);
        for (int i = 0; i < nvars; ++i) {
            if (v[i] == 0) continue;
            Monomial m;
            m.set(i, 1);
            m.fix_degree(nvars);
            p.t_.push_back({m, Rational(static_cast<long>(v[i]))});
        }
        // increasing variable index == descending graded-lex, so already sorted
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t term_count() const { return t_.size(); }
    const std::vector<Term>& terms() const { return t_; }

    const Term& leading_term() const {
        if (t_.empty()) throw error("leading term of zero polynomial");
        return t_.front();
    }

    int total_degree() const { return t_.empty() ? -1 : t_.front().m.deg(); }

    bool is_homogeneous() const {
        if (t_.empty()) return true;
        int d = t_.front().m.deg();
        for (const Term& t : t_)
            if (t.m.deg() != d) return false;
        return true;
    }

    Rational constant_term() const {
        if (!t_.empty() && t_.back().m.deg() == 0) return t_.back().c;
        return Rational(0);
    }

    bool operator==(const Poly& o) const {
        if (nvars_ != o.nvars_ || t_.size() != o.t_.size()) return false;
        for (std::size_t i = 0; i < t_.size(); ++i)
            if (!(t_[i].m == o.t_[i].m) || t_[i].c != o.t_[i].c) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r = *this;
        for (Term& t : r.t_) t.c = -t.c;
        return r;
    }

    Poly operator+(const Poly& o) const { return merge(o, 1); }
    Poly operator-(const Poly& o) const { return merge(o, -1); }

    Poly& operator+=(const Poly& o) { return *this = merge(o, 1); }
    Poly& operator-=(const Poly& o) { return *this = merge(o, -1); }

    Poly operator*(const Poly& o) const {
        require_same_vars(o);
        if (is_zero() || o.is_zero()) return Poly(nvars_);
        Accumulator acc;
        acc.reserve(t_.size() * o.t_.size() / 2 + 8);
        accumulate_product(acc, *this, o, false);
        return from_accumulator(nvars_, std::move(acc));
    }

    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly operator*(const Rational& c) const {
        if (c == 0) return Poly(nvars_);
        Poly r = *this;
        for (Term& t : r.t_) t.c *= c;
        return r;
    }

    // a*b - c*d in one accumulation pass; the Bareiss kernel.
    static Poly mul_sub(const Poly& a, const Poly& b, const Poly& c, const Poly& d) {
        a.require_same_vars(b);
        c.require_same_vars(d);
        a.require_same_vars(c);
        Accumulator acc;
        acc.reserve((a.t_.size() * b.t_.size() + c.t_.size() * d.t_.size()) / 2 + 8);
        accumulate_product(acc, a, b, false);
        accumulate_product(acc, c, d, true);
        return from_accumulator(a.nvars_, std::move(acc));
    }

    Poly pow(int e) const {
        if (e < 0) throw spec_error("negative power");
        Poly r = one(nvars_);
        Poly base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

    void sort_and_combine() { // repair helper for bulk construction
        std::sort(t_.begin(), t_.end(), [](const Term& x, const Term& y) { return y.m < x.m; });
        std::vector<Term> out;
        out.reserve(t_.size());
        for (Term& t : t_) {
            if (!out.empty() && out.back().m == t.m)
                out.back().c += t.c;
            else
                out.push_back(std::move(t));
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.c == 0; }),
                  out.end());
        t_ = std::move(out);
    }

    void push_term_unchecked(Monomial m, Rational c) { t_.push_back({m, std::move(c)}); }

    void require_same_vars(const Poly& o) const {
        if (nvars_ != o.nvars_) throw spec_error("polynomials over different variable counts");
    }

private:
    using Accumulator = std::unordered_map<Monomial, Rational, MonomialHash>;

    static void check_vars(int nvars) {
        if (nvars < 0 || nvars > max_poly_vars)
            throw cap_error("variable count " + std::to_string(nvars) + " out of range (max " +
                            std::to_string(max_poly_vars) + ")");
    }

    static void accumulate_product(Accumulator& acc, const Poly& a, const Poly& b, bool negate) {
        for (const Term& x : a.t_)
            for (const Term& y : b.t_) {
                Rational& slot = acc[x.m * y.m];
                if (negate)
                    slot -= x.c * y.c;
                else
                    slot += x.c * y.c;
            }
    }

    static Poly from_accumulator(int nvars, Accumulator acc) {
        Poly r(nvars);
        r.t_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (c != 0) r.t_.push_back({m, std::move(c)});
        std::sort(r.t_.begin(), r.t_.end(), [](const Term& x, const Term& y) { return y.m < x.m; });
        return r;
    }

    Poly merge(const Poly& o, int sign) const {
        require_same_vars(o);
        Poly r(nvars_);
        r.t_.reserve(t_.size() + o.t_.size());
        std::size_t i = 0, j = 0;
        while (i < t_.size() || j < o.t_.size()) {
            if (j == o.t_.size() || (i < t_.size() && o.t_[j].m < t_[i].m)) {
                r.t_.push_back(t_[i++]);
            } else if (i == t_.size() || t_[i].m < o.t_[j].m) {
                Rational c = sign > 0 ? o.t_[j].c : Rational(-o.t_[j].c);
                r.t_.push_back({o.t_[j].m, std::move(c)});
                ++j;
            } else {
                Rational c = sign > 0 ? Rational(t_[i].c + o.t_[j].c) : Rational(t_[i].c - o.t_[j].c);
                if (c != 0) r.t_.push_back({t_[i].m, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    int nvars_;
    std::vector<Term> t_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

// Substitute a_i -> w(a_i) and expand.
inline Poly weyl_act(const WeylElement& w, const Poly& p) {
    const int n = p.nvars();
    if (w.rank() != n) throw spec_error("weyl_act: rank mismatch");
    std::vector<std::vector<Poly>> powers(n); // powers[i] = [1, L_i, L_i^2, ...]
    for (int i = 0; i < n; ++i) {
        powers[i].push_back(Poly::one(n));
        powers[i].push_back(Poly::from_root(n, w.act_simple(i + 1)));
    }
    Poly out(n);
    for (const Poly::Term& t : p.terms()) {
        Poly prod = Poly::constant(n, t.c);
        for (int i = 0; i < n; ++i) {
            int e = t.m.get(i);
            if (e == 0) continue;
            auto& pw = powers[i];
            while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * pw[1]);
            prod *= pw[e];
        }
        out += prod;
    }
    return out;
}

// Single-divisor graded-lex reduction; throws inexact_division unless d | p.
// The remainder lives in an ordered map so each reduction step is in place;
// successive quotient monomials strictly decrease, so the quotient is built
// already sorted.
inline Poly exact_div(const Poly& p, const Poly& d) {
    p.require_same_vars(d);
    if (d.is_zero()) throw inexact_division("division by zero polynomial");
    const int n = p.nvars();
    if (p.is_zero()) return Poly(n);
    std::map<Monomial, Rational, std::greater<Monomial>> rem;
    for (const Poly::Term& t : p.terms()) rem.emplace(t.m, t.c);
    const Monomial& dm = d.leading_term().m;
    const Rational& dc = d.leading_term().c;
    Poly quot(n);
    while (!rem.empty()) {
        auto lead = rem.begin();
        if (!lead->first.divisible_by(dm, n)) throw inexact_division("inexact polynomial division");
        Monomial qm = lead->first.divide(dm);
        Rational qc = lead->second / dc;
        for (const Poly::Term& t : d.terms()) {
            auto [it, fresh] = rem.try_emplace(qm * t.m, 0);
            it->second -= qc * t.c;
            if (it->second == 0) rem.erase(it);
        }
        quot.push_term_unchecked(qm, std::move(qc));
    }
    return quot;
}

struct PolyMatrix {
    int rows = 0, cols = 0, nvars = 0;
    std::vector<Poly> a;

    PolyMatrix() = default;
    PolyMatrix(int r, int c, int nv) : rows(r), cols(c), nvars(nv), a(static_cast<std::size_t>(r) * c, Poly(nv)) {}

    Poly& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Poly& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    PolyMatrix operator*(const PolyMatrix& o) const {
        if (cols != o.rows || nvars != o.nvars) throw spec_error("matrix shape mismatch");
        PolyMatrix r(rows, o.cols, nvars);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const Poly& x = at(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < o.cols; ++j) {
                    const Poly& y = o.at(k, j);
                    if (y.is_zero()) continue;
                    r.at(i, j) += x * y;
                }
            }
        return r;
    }

    bool operator==(const PolyMatrix& o) const {
        return rows == o.rows && cols == o.cols && nvars == o.nvars && a == o.a;
    }
};

namespace detail {

inline Poly det_cofactor(const PolyMatrix& m, std::vector<int> rows, std::vector<int> cols) {
    const std::size_t n = rows.size();
    if (n == 1) return m.at(rows[0], cols[0]);
    Poly acc(m.nvars);
    std::vector<int> subrows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < n; ++j) {
        const Poly& pivot = m.at(rows[0], cols[j]);
        if (pivot.is_zero()) continue;
        std::vector<int> subcols;
        subcols.reserve(n - 1);
        for (std::size_t t = 0; t < n; ++t)
            if (t != j) subcols.push_back(cols[t]);
        Poly minor = det_cofactor(m, subrows, subcols);
        if ((j & 1) == 0)
            acc += pivot * minor;
        else
            acc -= pivot * minor;
    }
    return acc;
}

} // namespace detail

// Exact determinant: cofactor expansion below dimension 5, fraction-free
// Bareiss elimination (with row pivoting) above.  Refuses dimensions > cap.
inline Poly det(const PolyMatrix& m, int dimension_cap = default_det_cap) {
    if (m.rows != m.cols) throw spec_error("determinant of non-square matrix");
    const int n = m.rows;
    if (n > dimension_cap)
        throw cap_error("determinant dimension " + std::to_string(n) + " exceeds cap " +
                        std::to_string(dimension_cap));
    if (n == 0) return Poly::one(m.nvars);
    if (n < 5) {
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        return detail::det_cofactor(m, idx, idx);
    }
    PolyMatrix w = m;
    Poly prev = Poly::one(m.nvars);
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (w.at(k, k).is_zero()) {
            int r = -1;
            for (int i = k + 1; i < n; ++i)
                if (!w.at(i, k).is_zero()) {
                    r = i;
                    break;
                }
            if (r < 0) return Poly(m.nvars); // zero column: det 0
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(r, j));
            sign = -sign;
        }
        const Poly pivot = w.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Poly num = Poly::mul_sub(pivot, w.at(i, j), w.at(i, k), w.at(k, j));
                w.at(i, j) = num.is_zero() ? Poly(m.nvars) : exact_div(num, prev);
            }
            w.at(i, k) = Poly(m.nvars);
        }
        prev = pivot;
    }
    Poly result = w.at(n - 1, n - 1);
    if (sign < 0) result = -result;
    return result;
}

// Sum of the diagonal entries of a square matrix.
inline Poly trace(const PolyMatrix& m) {
    if (m.rows != m.cols) throw spec_error("trace of non-square matrix");
    Poly acc(m.nvars);
    for (int i = 0; i < m.rows; ++i) acc += m.at(i, i);
    return acc;
}

// ---- string form ----------------------------------------------------------

inline std::string poly_to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const Poly::Term& t : p.terms()) {
        const bool neg = t.c < 0;
        if (first) {
            if (neg) out += '-';
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        Rational mag = neg ? Rational(-t.c) : t.c;
        std::string vars;
        for (int i = 0; i < p.nvars(); ++i) {
            int e = t.m.get(i);
            if (e == 0) continue;
            if (!vars.empty()) vars += '*';
            vars += 'a' + std::to_string(i + 1);
            if (e > 1) vars += '^' + std::to_string(e);
        }
        if (vars.empty()) {
            out += rational_to_string(mag);
        } else if (mag == 1) {
            out += vars;
        } else {
            out += rational_to_string(mag) + '*' + vars;
        }
    }
    return out;
}

inline Poly poly_from_string(int nvars, std::string_view text) {
    Poly acc(nvars);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    auto parse_uint = [&]() -> long {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw spec_error("bad polynomial: expected digits in " + std::string(text));
        return std::stol(std::string(text.substr(start, pos - start)));
    };
    skip_ws();
    if (pos == text.size()) throw spec_error("empty polynomial string");
    bool first = true;
    while (pos < text.size()) {
        int sign = 1;
        skip_ws();
        if (!first) {
            if (text[pos] == '+') {
                ++pos;
            } else if (text[pos] == '-') {
                sign = -1;
                ++pos;
            } else {
                throw spec_error("bad polynomial: expected +/- in " + std::string(text));
            }
            skip_ws();
        } else {
            if (text[pos] == '-') {
                sign = -1;
                ++pos;
                skip_ws();
            }
            first = false;
        }
        // term: '*'-separated factors, each a rational or a variable power
        Rational coeff(sign);
        Monomial mon;
        bool any = false, anyvar = false;
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == 'a' && pos + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
                ++pos;
                long idx = parse_uint();
                if (idx < 1 || idx > nvars)
                    throw spec_error("variable a" + std::to_string(idx) + " out of range");
                long e = 1;
                skip_ws();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    skip_ws();
                    e = parse_uint();
                }
                mon.set(static_cast<int>(idx - 1), mon.get(static_cast<int>(idx - 1)) + static_cast<int>(e));
                anyvar = true;
            } else if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                long num = parse_uint();
                skip_ws();
                if (pos < text.size() && text[pos] == '/') {
                    ++pos;
                    skip_ws();
                    long den = parse_uint();
                    if (den == 0) throw spec_error("zero denominator in polynomial");
                    coeff *= Rational(num, den);
                    coeff.canonicalize();
                } else {
                    coeff *= num;
                }
            } else {
                throw spec_error("bad polynomial factor in " + std::string(text));
            }
            any = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!any) throw spec_error("empty term in polynomial " + std::string(text));
        (void)anyvar;
        mon.fix_degree(nvars);
        Poly term(nvars);
        if (coeff != 0) term.push_term_unchecked(mon, coeff);
        acc += term;
        skip_ws();
    }
    return acc;
}

} // namespace gkm

#endif
