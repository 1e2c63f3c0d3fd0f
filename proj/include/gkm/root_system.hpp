#ifndef GKM_ROOT_SYSTEM_HPP
#define GKM_ROOT_SYSTEM_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "gkm/errors.hpp"

// Finite crystallographic root systems in simple-root coordinates.
//
// Conventions (Bourbaki numbering throughout):
//   * Roots are integer vectors in the basis of simple roots a1..an.
//   * cartan[i][j] = a_ij = 2(ai,aj)/(ai,ai), so the short-root row carries
//     the -2 / -3 entry of a multiple bond.
//   * s_i(a_j) = a_j - a_ij * a_i; on a coordinate vector only coordinate i
//     moves: c_i -> c_i - sum_j a_ij c_j.
//   * Generator indices are 1-based in every public interface ("1,2,1");
//     coordinate storage is 0-based.
//
// Product types ("A2xA1") concatenate blocks: block-diagonal Cartan matrix,
// generator indices numbered straight through the factors.

namespace gkm {

using RootVector = std::vector<long long>;

// v != 0 and every coordinate >= 0.
inline bool is_positive(const RootVector& v) {
    bool nonzero = false;
    for (long long c : v) {
        if (c < 0) return false;
        if (c != 0) nonzero = true;
    }
    return nonzero;
}

inline bool is_negative(const RootVector& v) {
    bool nonzero = false;
    for (long long c : v) {
        if (c > 0) return false;
        if (c != 0) nonzero = true;
    }
    return nonzero;
}

inline RootVector negate(RootVector v) {
    for (long long& c : v) c = -c;
    return v;
}

struct Factor {
    char family = 0; // 'A'..'G'
    int rank = 0;

    bool admissible() const {
        switch (family) {
            case 'A': return rank >= 1;
            case 'B': return rank >= 2;
            case 'C': return rank >= 2;
            case 'D': return rank >= 3;
            case 'E': return rank >= 6 && rank <= 8;
            case 'F': return rank == 4;
            case 'G': return rank == 2;
            default: return false;
        }
    }

    std::uint64_t weyl_order() const {
        auto fact = [](int n) {
            std::uint64_t r = 1;
            for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
            return r;
        };
        switch (family) {
            case 'A': return fact(rank + 1);
            case 'B':
            case 'C': return (std::uint64_t{1} << rank) * fact(rank);
            case 'D': return (std::uint64_t{1} << (rank - 1)) * fact(rank);
            case 'E': return rank == 6 ? 51840ull : rank == 7 ? 2903040ull : 696729600ull;
            case 'F': return 1152ull;
            case 'G': return 12ull;
            default: throw spec_error("unknown family");
        }
    }
};

struct RootSystemSpec {
    std::vector<Factor> factors;

    // "A2", "a2xb3", "E8" -> parsed factors.  Case-insensitive, 'x' joins,
    // whitespace ignored.
    static RootSystemSpec parse(std::string_view raw) {
        std::string text;
        for (char ch : raw)
            if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
        RootSystemSpec spec;
        if (text.empty()) throw spec_error("empty root-system spec");
        std::size_t pos = 0;
        while (pos < text.size()) {
            char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
            if (fam < 'A' || fam > 'G') throw spec_error("bad family letter in spec: " + text);
            ++pos;
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos) throw spec_error("missing rank in spec: " + text);
            int rank = 0;
            for (std::size_t i = start; i < pos; ++i) rank = rank * 10 + (text[i] - '0');
            Factor f{fam, rank};
            if (!f.admissible())
                throw spec_error("inadmissible factor " + std::string(1, fam) + std::to_string(rank));
            spec.factors.push_back(f);
            if (pos < text.size()) {
                char sep = static_cast<char>(std::tolower(static_cast<unsigned char>(text[pos])));
                if (sep != 'x') throw spec_error("expected 'x' between factors in spec: " + text);
                ++pos;
                if (pos == text.size()) throw spec_error("trailing 'x' in spec: " + text);
            }
        }
        return spec;
    }

    std::string str() const {
        std::string s;
        for (std::size_t k = 0; k < factors.size(); ++k) {
            if (k) s += 'x';
            s += factors[k].family;
            s += std::to_string(factors[k].rank);
        }
        return s;
    }

    int rank() const {
        int r = 0;
        for (const Factor& f : factors) r += f.rank;
        return r;
    }

    bool irreducible() const { return factors.size() == 1; }

    std::uint64_t weyl_order() const {
        std::uint64_t r = 1;
        for (const Factor& f : factors) r *= f.weyl_order();
        return r;
    }

    bool operator==(const RootSystemSpec& o) const {
        if (factors.size() != o.factors.size()) return false;
        for (std::size_t k = 0; k < factors.size(); ++k)
            if (factors[k].family != o.factors[k].family || factors[k].rank != o.factors[k].rank)
                return false;
        return true;
    }
};

namespace detail {

// Irreducible Cartan matrices, Bourbaki numbering.
inline std::vector<std::vector<int>> cartan_matrix(const Factor& f) {
    int n = f.rank;
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    auto bond = [&](int i, int j) { a[i][j] = -1; a[j][i] = -1; }; // 0-based single bond
    switch (f.family) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
            break;
        case 'B': // a_n short: a[n-1][n-2] = -2
            for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
            a[n - 1][n - 2] = -2;
            break;
        case 'C': // a_n long: a[n-2][n-1] = -2
            for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
            a[n - 2][n - 1] = -2;
            break;
        case 'D': // fork: a_{n-1} and a_n both meet a_{n-2}
            for (int i = 0; i + 2 < n; ++i) bond(i, i + 1);
            bond(n - 3, n - 1);
            break;
        case 'E': { // chain 1-3-4-5-6[-7-8], node 2 hangs off node 4
            bond(0, 2);
            for (int i = 2; i + 1 < n; ++i) bond(i, i + 1);
            bond(1, 3);
            break;
        }
        case 'F': // 1-2=>3-4, a3/a4 short: a[2][1] = -2
            bond(0, 1);
            bond(1, 2);
            bond(2, 3);
            a[2][1] = -2;
            break;
        case 'G': // a1 short: a[0][1] = -3
            a[0][1] = -3;
            a[1][0] = -1;
            break;
        default:
            throw spec_error("unknown family");
    }
    return a;
}

} // namespace detail

class RootSystem {
public:
    explicit RootSystem(RootSystemSpec spec) : spec_(std::move(spec)) {
        rank_ = spec_.rank();
        cartan_.assign(rank_, std::vector<int>(rank_, 0));
        int off = 0;
        for (const Factor& f : spec_.factors) {
            auto block = detail::cartan_matrix(f);
            factor_offset_.push_back(off);
            for (int i = 0; i < f.rank; ++i)
                for (int j = 0; j < f.rank; ++j) cartan_[off + i][off + j] = block[i][j];
            off += f.rank;
        }
        weyl_order_ = spec_.weyl_order();
        compute_positive_roots();
    }

    static std::shared_ptr<const RootSystem> build(std::string_view text) {
        return std::make_shared<const RootSystem>(RootSystemSpec::parse(text));
    }

    const RootSystemSpec& spec() const { return spec_; }
    std::string spec_string() const { return spec_.str(); }
    int rank() const { return rank_; }
    const std::vector<std::vector<int>>& cartan() const { return cartan_; }
    int cartan_entry(int i, int j) const { return cartan_[i - 1][j - 1]; } // 1-based
    std::uint64_t weyl_order() const { return weyl_order_; }
    const std::vector<RootVector>& positive_roots() const { return positive_roots_; }

    RootVector simple_root(int i) const { // 1-based
        check_index(i);
        RootVector v(rank_, 0);
        v[i - 1] = 1;
        return v;
    }

    // s_i moves only coordinate i: c_i -> c_i - <row i of cartan, c>.
    RootVector simple_reflect(int i, const RootVector& v) const { // 1-based
        check_index(i);
        if (static_cast<int>(v.size()) != rank_) throw spec_error("root vector has wrong rank");
        long long pairing = 0;
        for (int j = 0; j < rank_; ++j) pairing += cartan_[i - 1][j] * v[j];
        RootVector w = v;
        w[i - 1] -= pairing;
        return w;
    }

    // 1-based global generator indices [first, last] of the factor containing i.
    std::pair<int, int> factor_range(std::size_t factor_index) const {
        int first = factor_offset_[factor_index] + 1;
        int last = first + spec_.factors[factor_index].rank - 1;
        return {first, last};
    }

    void check_index(int i) const {
        if (i < 1 || i > rank_) throw spec_error("generator index out of range: " + std::to_string(i));
    }

private:
    void compute_positive_roots() {
        std::vector<RootVector> roots;
        for (int i = 1; i <= rank_; ++i) roots.push_back(simple_root(i));
        // Orbit closure inside the positive cone: every positive root is
        // reachable from a simple root through positive intermediate roots.
        for (std::size_t head = 0; head < roots.size(); ++head) {
            RootVector cur = roots[head];
            for (int i = 1; i <= rank_; ++i) {
                RootVector img = simple_reflect(i, cur);
                if (!is_positive(img)) continue;
                if (std::find(roots.begin(), roots.end(), img) == roots.end()) roots.push_back(img);
            }
        }
        auto height = [](const RootVector& v) {
            return std::accumulate(v.begin(), v.end(), 0ll);
        };
        std::sort(roots.begin(), roots.end(), [&](const RootVector& x, const RootVector& y) {
            long long hx = height(x), hy = height(y);
            if (hx != hy) return hx < hy;
            return x < y;
        });
        positive_roots_ = std::move(roots);
    }

    RootSystemSpec spec_;
    int rank_ = 0;
    std::vector<std::vector<int>> cartan_;
    std::vector<int> factor_offset_;
    std::vector<RootVector> positive_roots_;
    std::uint64_t weyl_order_ = 0;
};

} // namespace gkm

#endif
