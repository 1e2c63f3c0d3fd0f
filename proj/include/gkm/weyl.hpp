#ifndef GKM_WEYL_HPP
#define GKM_WEYL_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gkm/errors.hpp"
#include "gkm/root_system.hpp"

// Weyl group elements as integer matrices acting on simple-root coordinates.
//
//   * from_word([b1..bk]) = s_b1 * s_b2 * ... * s_bk, so
//     act(word, v) = s_b1(s_b2(...s_bk(v)...)).
//   * length = number of positive roots sent negative (= reduced word length).
//   * canonical_reduced_word: repeatedly emit the smallest i with
//     w^-1(a_i) < 0 on the left; unique, and (length, lex word) is the
//     canonical total order used everywhere.
//   * Words serialize as "1,2,1"; the identity serializes as "e".

namespace gkm {

inline constexpr std::uint64_t default_group_order_cap = 1152;
inline constexpr int default_word_enumeration_cap = 16;

using Word = std::vector<int>; // 1-based generator letters; empty = identity

inline std::string word_to_string(const Word& w) {
    if (w.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s;
}

inline Word word_from_string(std::string_view text) {
    if (text == "e" || text == "E" || text.empty()) return {};
    Word w;
    int cur = 0;
    bool have = false;
    for (char ch : text) {
        if (ch >= '0' && ch <= '9') {
            cur = cur * 10 + (ch - '0');
            have = true;
        } else if (ch == ',') {
            if (!have) throw spec_error("bad word: " + std::string(text));
            w.push_back(cur);
            cur = 0;
            have = false;
        } else if (ch == ' ') {
            continue;
        } else {
            throw spec_error("bad word: " + std::string(text));
        }
    }
    if (!have) throw spec_error("bad word: " + std::string(text));
    w.push_back(cur);
    return w;
}

class WeylElement {
public:
    explicit WeylElement(std::shared_ptr<const RootSystem> rs)
        : rs_(std::move(rs)), n_(rs_->rank()), fwd_(n_ * n_, 0), inv_(n_ * n_, 0) {
        for (int i = 0; i < n_; ++i) fwd_[i * n_ + i] = inv_[i * n_ + i] = 1;
        len_ = 0;
    }

    static WeylElement identity(std::shared_ptr<const RootSystem> rs) { return WeylElement(std::move(rs)); }

    static WeylElement simple(std::shared_ptr<const RootSystem> rs, int i) {
        WeylElement w(std::move(rs));
        w.right_mult_simple(i);
        w.len_ = w.count_inversions();
        return w;
    }

    static WeylElement from_word(std::shared_ptr<const RootSystem> rs, const Word& word) {
        WeylElement w(std::move(rs));
        for (int b : word) w.right_mult_simple(b);
        w.len_ = w.count_inversions();
        return w;
    }

    const RootSystem& root_system() const { return *rs_; }
    std::shared_ptr<const RootSystem> root_system_ptr() const { return rs_; }
    int rank() const { return n_; }
    int length() const { return len_; }
    bool is_identity() const { return len_ == 0; }

    WeylElement operator*(const WeylElement& o) const {
        require_same_system(o);
        WeylElement r(rs_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                long long f = 0, g = 0;
                for (int k = 0; k < n_; ++k) {
                    f += fwd_[i * n_ + k] * o.fwd_[k * n_ + j];
                    g += o.inv_[i * n_ + k] * inv_[k * n_ + j];
                }
                r.fwd_[i * n_ + j] = f;
                r.inv_[i * n_ + j] = g;
            }
        r.len_ = r.count_inversions();
        return r;
    }

    WeylElement inverse() const {
        WeylElement r(rs_);
        r.fwd_ = inv_;
        r.inv_ = fwd_;
        r.len_ = len_; // w and w^-1 have equal length
        return r;
    }

    RootVector act(const RootVector& v) const {
        if (static_cast<int>(v.size()) != n_) throw spec_error("root vector has wrong rank");
        RootVector r(n_, 0);
        for (int i = 0; i < n_; ++i) {
            long long acc = 0;
            for (int j = 0; j < n_; ++j) acc += fwd_[i * n_ + j] * v[j];
            r[i] = acc;
        }
        return r;
    }

    // Column i of the matrix = w(a_i).
    RootVector act_simple(int i) const { // 1-based
        rs_->check_index(i);
        RootVector r(n_);
        for (int row = 0; row < n_; ++row) r[row] = fwd_[row * n_ + (i - 1)];
        return r;
    }

    RootVector inverse_act_simple(int i) const { // w^-1(a_i)
        rs_->check_index(i);
        RootVector r(n_);
        for (int row = 0; row < n_; ++row) r[row] = inv_[row * n_ + (i - 1)];
        return r;
    }

    // l(w s_i) < l(w)  <=>  w(a_i) < 0.
    bool right_descent(int i) const {
        rs_->check_index(i);
        for (int row = 0; row < n_; ++row) {
            long long c = fwd_[row * n_ + (i - 1)];
            if (c < 0) return true;
            if (c > 0) return false;
        }
        return false;
    }

    // l(s_i w) < l(w)  <=>  w^-1(a_i) < 0.
    bool left_descent(int i) const {
        rs_->check_index(i);
        for (int row = 0; row < n_; ++row) {
            long long c = inv_[row * n_ + (i - 1)];
            if (c < 0) return true;
            if (c > 0) return false;
        }
        return false;
    }

    WeylElement times_simple(int i) const { // w * s_i
        WeylElement r = *this;
        r.right_mult_simple(i);
        r.len_ = len_ + (right_descent(i) ? -1 : +1);
        return r;
    }

    WeylElement simple_times(int i) const { // s_i * w
        WeylElement r = *this;
        r.left_mult_simple(i);
        r.len_ = len_ + (left_descent(i) ? -1 : +1);
        return r;
    }

    bool operator==(const WeylElement& o) const {
        return rs_->spec() == o.rs_->spec() && fwd_ == o.fwd_;
    }
    bool operator!=(const WeylElement& o) const { return !(*this == o); }

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (long long v : fwd_) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }

    const std::vector<long long>& matrix() const { return fwd_; }
    const std::vector<long long>& inverse_matrix() const { return inv_; }

    void require_same_system(const WeylElement& o) const {
        if (!(rs_->spec() == o.rs_->spec()))
            throw spec_error("elements belong to different root systems");
    }

private:
    int count_inversions() const {
        int c = 0;
        for (const RootVector& beta : rs_->positive_roots())
            if (is_negative(act(beta))) ++c;
        return c;
    }

    // M := M * S_i  (column i update: col_j -= a_ij * col_i), and inv := S_i * inv.
    void right_mult_simple(int i) {
        rs_->check_index(i);
        const auto& a = rs_->cartan()[i - 1];
        std::vector<long long> coli(n_);
        for (int r = 0; r < n_; ++r) coli[r] = fwd_[r * n_ + (i - 1)];
        for (int j = 0; j < n_; ++j) {
            if (a[j] == 0) continue;
            for (int r = 0; r < n_; ++r) fwd_[r * n_ + j] -= a[j] * coli[r];
        }
        // inv := S_i * inv  (row i update: row_i -= sum_k a_ik row_k)
        std::vector<long long> acc(n_, 0);
        for (int k = 0; k < n_; ++k) {
            if (a[k] == 0) continue;
            for (int c = 0; c < n_; ++c) acc[c] += a[k] * inv_[k * n_ + c];
        }
        for (int c = 0; c < n_; ++c) inv_[(i - 1) * n_ + c] -= acc[c];
    }

    // M := S_i * M, and inv := inv * S_i.
    void left_mult_simple(int i) {
        rs_->check_index(i);
        const auto& a = rs_->cartan()[i - 1];
        std::vector<long long> acc(n_, 0);
        for (int k = 0; k < n_; ++k) {
            if (a[k] == 0) continue;
            for (int c = 0; c < n_; ++c) acc[c] += a[k] * fwd_[k * n_ + c];
        }
        for (int c = 0; c < n_; ++c) fwd_[(i - 1) * n_ + c] -= acc[c];
        std::vector<long long> coli(n_);
        for (int r = 0; r < n_; ++r) coli[r] = inv_[r * n_ + (i - 1)];
        for (int j = 0; j < n_; ++j) {
            if (a[j] == 0) continue;
            for (int r = 0; r < n_; ++r) inv_[r * n_ + j] -= a[j] * coli[r];
        }
    }

    std::shared_ptr<const RootSystem> rs_;
    int n_;
    std::vector<long long> fwd_, inv_;
    int len_;
};

struct WeylElementHash {
    std::size_t operator()(const WeylElement& w) const { return w.hash(); }
};

// Smallest-left-descent normal form; unique per element.
inline Word canonical_reduced_word(const WeylElement& w) {
    Word word;
    WeylElement cur = w;
    while (!cur.is_identity()) {
        int pick = 0;
        for (int i = 1; i <= cur.rank(); ++i)
            if (cur.left_descent(i)) {
                pick = i;
                break;
            }
        word.push_back(pick);
        cur = cur.simple_times(pick);
    }
    return word;
}

// Every reduced word, lexicographically sorted.  Exponential; capped.
inline std::vector<Word> all_reduced_words(const WeylElement& w,
                                           int length_cap = default_word_enumeration_cap) {
    if (w.length() > length_cap)
        throw cap_error("all_reduced_words: length " + std::to_string(w.length()) +
                        " exceeds cap " + std::to_string(length_cap));
    if (w.is_identity()) return {Word{}};
    std::vector<Word> out;
    for (int i = 1; i <= w.rank(); ++i) {
        if (!w.left_descent(i)) continue;
        for (Word tail : all_reduced_words(w.simple_times(i), length_cap)) {
            Word word;
            word.reserve(tail.size() + 1);
            word.push_back(i);
            word.insert(word.end(), tail.begin(), tail.end());
            out.push_back(std::move(word));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Lifting-property scan along u's canonical word: greedily apply each letter
// to v when it is a left descent; v <= u iff v is consumed to the identity.
inline bool bruhat_leq(const WeylElement& v, const WeylElement& u) {
    v.require_same_system(u);
    if (v.length() > u.length()) return false;
    WeylElement x = v;
    for (int b : canonical_reduced_word(u)) {
        if (x.is_identity()) return true;
        if (x.left_descent(b)) x = x.simple_times(b);
    }
    return x.is_identity();
}

inline bool canonical_less(const WeylElement& a, const WeylElement& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return canonical_reduced_word(a) < canonical_reduced_word(b);
}

// Parabolic subsets are sorted 1-based generator index lists; {} = B.
using ParabolicSubset = std::vector<int>;

inline ParabolicSubset normalize_parabolic(ParabolicSubset p, int rank) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    for (int i : p)
        if (i < 1 || i > rank) throw spec_error("parabolic generator out of range: " + std::to_string(i));
    return p;
}

inline std::uint32_t parabolic_mask(const ParabolicSubset& p) {
    std::uint32_t m = 0;
    for (int i : p) m |= (1u << (i - 1));
    return m;
}

// A fully enumerated Weyl group in canonical order, with the lookup tables
// the rest of the library leans on.  Construction refuses orders above cap.
class WeylGroup {
public:
    explicit WeylGroup(std::shared_ptr<const RootSystem> rs,
                       std::uint64_t order_cap = default_group_order_cap)
        : rs_(std::move(rs)) {
        if (rs_->weyl_order() > order_cap)
            throw cap_error("group order " + std::to_string(rs_->weyl_order()) +
                            " exceeds cap " + std::to_string(order_cap));
        enumerate();
        build_tables();
    }

    const RootSystem& root_system() const { return *rs_; }
    std::shared_ptr<const RootSystem> root_system_ptr() const { return rs_; }
    int rank() const { return rs_->rank(); }
    int size() const { return static_cast<int>(elems_.size()); }

    const WeylElement& element(int idx) const { return elems_[idx]; }
    const Word& word(int idx) const { return words_[idx]; }
    int length(int idx) const { return lengths_[idx]; }
    int identity_index() const { return 0; }

    int index_of(const WeylElement& w) const {
        auto it = index_.find(w);
        if (it == index_.end()) throw spec_error("element not in this group");
        return it->second;
    }

    std::optional<int> try_index(const WeylElement& w) const {
        auto it = index_.find(w);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int from_word_index(const Word& w) const {
        int idx = 0;
        for (int b : w) {
            rs_->check_index(b);
            idx = right_mult(idx, b);
        }
        return idx;
    }

    int right_mult(int idx, int b) const { return rmult_[idx * rank() + (b - 1)]; }
    int left_mult(int idx, int b) const { return lmult_[idx * rank() + (b - 1)]; }
    int inverse_index(int idx) const { return inv_index_[idx]; }

    int mult(int i, int j) const { // element(i) * element(j)
        for (int b : words_[j]) i = right_mult(i, b);
        return i;
    }

    bool right_descent(int idx, int b) const { return lengths_[right_mult(idx, b)] < lengths_[idx]; }
    bool left_descent(int idx, int b) const { return lengths_[left_mult(idx, b)] < lengths_[idx]; }

    bool leq(int v, int u) const { return leq_[v * size() + u]; }

    // All w with w(a_i) > 0 for every i in P: the minimal coset representatives W^P.
    std::vector<int> minimal_coset_reps(const ParabolicSubset& p) const {
        std::vector<int> out;
        for (int idx = 0; idx < size(); ++idx) {
            bool ok = true;
            for (int i : p)
                if (right_descent(idx, i)) {
                    ok = false;
                    break;
                }
            if (ok) out.push_back(idx);
        }
        return out; // canonical order inherited from element order
    }

    std::vector<int> parabolic_subgroup(const ParabolicSubset& p) const {
        std::vector<char> seen(size(), 0);
        std::vector<int> queue{identity_index()};
        seen[identity_index()] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int cur = queue[head];
            for (int i : p) {
                int nxt = right_mult(cur, i);
                if (!seen[nxt]) {
                    seen[nxt] = 1;
                    queue.push_back(nxt);
                }
            }
        }
        std::sort(queue.begin(), queue.end()); // element order is canonical
        return queue;
    }

    // w = v * u with v in W^P, u in W_P, lengths adding.
    std::pair<int, int> parabolic_decompose(int w, const ParabolicSubset& p) const {
        int u = identity_index();
        int cur = w;
        bool moved = true;
        while (moved) {
            moved = false;
            for (int i : p) {
                if (right_descent(cur, i)) {
                    cur = right_mult(cur, i);
                    u = left_mult(u, i);
                    moved = true;
                    break;
                }
            }
        }
        return {cur, u};
    }

    // All u with l(w u^-1) + l(u) = l(w): some reduced word of w ends in one of u.
    std::vector<int> suffixes(int w) const {
        std::vector<int> out;
        for (int u = 0; u < size(); ++u) {
            int wu = w;
            const Word& uw = words_[u];
            for (auto it = uw.rbegin(); it != uw.rend(); ++it) wu = right_mult(wu, *it);
            if (lengths_[wu] + lengths_[u] == lengths_[w]) out.push_back(u);
        }
        return out;
    }

    int longest_element_index() const {
        int best = 0;
        for (int i = 0; i < size(); ++i)
            if (lengths_[i] > lengths_[best]) best = i;
        return best;
    }

private:
    void enumerate() {
        std::unordered_map<WeylElement, int, WeylElementHash> seen;
        std::vector<WeylElement> queue;
        queue.push_back(WeylElement::identity(rs_));
        seen.emplace(queue.back(), 0);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            WeylElement cur = queue[head];
            for (int i = 1; i <= rs_->rank(); ++i) {
                WeylElement nxt = cur.times_simple(i);
                if (seen.emplace(nxt, 0).second) queue.push_back(std::move(nxt));
            }
        }
        if (queue.size() != rs_->weyl_order())
            throw error("enumeration mismatch: got " + std::to_string(queue.size()) +
                        ", order formula says " + std::to_string(rs_->weyl_order()));
        std::vector<std::pair<Word, std::size_t>> keyed(queue.size());
        for (std::size_t k = 0; k < queue.size(); ++k) keyed[k] = {canonical_reduced_word(queue[k]), k};
        std::sort(keyed.begin(), keyed.end(), [&](const auto& x, const auto& y) {
            std::size_t lx = x.first.size(), ly = y.first.size();
            if (lx != ly) return lx < ly;
            return x.first < y.first;
        });
        elems_.reserve(queue.size());
        words_.reserve(queue.size());
        for (auto& [word, k] : keyed) {
            elems_.push_back(std::move(queue[k]));
            words_.push_back(std::move(word));
        }
    }

    void build_tables() {
        const int n = rank(), m = size();
        index_.reserve(elems_.size() * 2);
        lengths_.resize(m);
        for (int i = 0; i < m; ++i) {
            index_.emplace(elems_[i], i);
            lengths_[i] = elems_[i].length();
        }
        rmult_.resize(static_cast<std::size_t>(m) * n);
        lmult_.resize(static_cast<std::size_t>(m) * n);
        inv_index_.resize(m);
        for (int i = 0; i < m; ++i) {
            for (int b = 1; b <= n; ++b) {
                rmult_[i * n + (b - 1)] = index_.at(elems_[i].times_simple(b));
                lmult_[i * n + (b - 1)] = index_.at(elems_[i].simple_times(b));
            }
            inv_index_[i] = index_.at(elems_[i].inverse());
        }
        // Bruhat order via the lifting scan, for all pairs.
        leq_.assign(static_cast<std::size_t>(m) * m, false);
        for (int u = 0; u < m; ++u) {
            const Word& uw = words_[u];
            for (int v = 0; v < m; ++v) {
                if (lengths_[v] > lengths_[u]) continue;
                int x = v;
                for (int b : uw) {
                    if (x == identity_index()) break;
                    if (left_descent(x, b)) x = left_mult(x, b);
                }
                leq_[v * m + u] = (x == identity_index());
            }
        }
    }

    std::shared_ptr<const RootSystem> rs_;
    std::vector<WeylElement> elems_;
    std::vector<Word> words_;
    std::vector<int> lengths_;
    std::unordered_map<WeylElement, int, WeylElementHash> index_;
    std::vector<int> rmult_, lmult_, inv_index_;
    std::vector<bool> leq_;
};

} // namespace gkm

#endif
