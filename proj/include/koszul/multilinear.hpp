#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "koszul/linalg.hpp"

namespace koszul {

namespace detail {
// Exponent vectors are packed 4 bits per coordinate for index lookup.
constexpr std::size_t kMaxVars = 16;
constexpr unsigned kMaxExponent = 15;

inline std::uint64_t pack_exponents(const std::vector<std::uint8_t>& e) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < e.size(); ++i) key |= static_cast<std::uint64_t>(e[i] & 0xF) << (4 * i);
    return key;
}
} // namespace detail

/// Ordered basis of wedge^p V: strictly increasing index tuples in
/// lexicographic order. Orderings are part of the serialization contract
/// (docs/format.md).
class WedgeBasis {
public:
    WedgeBasis(std::size_t n, std::size_t p) : n_(n), p_(p) {
        if (n > 64) throw BudgetExceeded("WedgeBasis: dimension too large");
        std::vector<std::uint8_t> tuple(p);
        if (p <= n) gen(tuple, 0, 0);
        for (std::size_t k = 0; k < elements_.size(); ++k) index_.emplace(key(elements_[k]), k);
    }

    std::size_t n() const { return n_; }
    std::size_t p() const { return p_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<std::uint8_t>& element_at(std::size_t k) const { return elements_[k]; }

    std::size_t index_of(const std::vector<std::uint8_t>& tuple) const {
        auto it = index_.find(key(tuple));
        if (it == index_.end()) throw DimensionMismatch("WedgeBasis: tuple not in basis");
        return it->second;
    }

    /// Index of an unsorted tuple together with the sorting sign; nullopt sign
    /// (sign 0) when indices repeat.
    std::pair<std::size_t, int> index_signed(std::vector<std::uint8_t> tuple) const {
        int sign = 1;
        for (std::size_t i = 1; i < tuple.size(); ++i)
            for (std::size_t j = i; j > 0 && tuple[j - 1] >= tuple[j]; --j) {
                if (tuple[j - 1] == tuple[j]) return {0, 0};
                std::swap(tuple[j - 1], tuple[j]);
                sign = -sign;
            }
        return {index_of(tuple), sign};
    }

private:
    static std::uint64_t key(const std::vector<std::uint8_t>& t) {
        std::uint64_t k = 0;
        for (std::size_t i = 0; i < t.size(); ++i) k = (k << 8) | (t[i] + 1);
        return k;
    }
    void gen(std::vector<std::uint8_t>& tuple, std::size_t pos, std::size_t start) {
        if (pos == p_) {
            elements_.push_back(tuple);
            return;
        }
        for (std::size_t v = start; v + (p_ - pos) <= n_; ++v) {
            tuple[pos] = static_cast<std::uint8_t>(v);
            gen(tuple, pos + 1, v + 1);
        }
    }

    std::size_t n_, p_;
    std::vector<std::vector<std::uint8_t>> elements_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Ordered monomial basis of Sym^q V: exponent vectors summing to q in
/// lexicographically descending order, so x_1^q comes first.
class SymBasis {
public:
    SymBasis(std::size_t n, std::size_t q) : n_(n), q_(q) {
        if (n > detail::kMaxVars || q > detail::kMaxExponent)
            throw BudgetExceeded("SymBasis: size beyond packed-index range");
        std::vector<std::uint8_t> e(n, 0);
        if (n > 0) gen(e, 0, q);
        else if (q == 0) elements_.push_back({});
        for (std::size_t k = 0; k < elements_.size(); ++k)
            index_.emplace(detail::pack_exponents(elements_[k]), k);
    }

    std::size_t n() const { return n_; }
    std::size_t q() const { return q_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<std::uint8_t>& element_at(std::size_t k) const { return elements_[k]; }

    std::size_t index_of(const std::vector<std::uint8_t>& exps) const {
        auto it = index_.find(detail::pack_exponents(exps));
        if (it == index_.end()) throw DimensionMismatch("SymBasis: exponent vector not in basis");
        return it->second;
    }

    /// Index of the monomial obtained by multiplying element k by variable v.
    std::size_t index_times_var(std::size_t k, std::size_t v, const SymBasis& target) const {
        std::vector<std::uint8_t> e = elements_[k];
        ++e[v];
        return target.index_of(e);
    }

private:
    void gen(std::vector<std::uint8_t>& e, std::size_t pos, std::size_t rem) {
        if (pos == n_ - 1) {
            e[pos] = static_cast<std::uint8_t>(rem);
            elements_.push_back(e);
            return;
        }
        for (std::size_t a = rem + 1; a-- > 0;) {
            e[pos] = static_cast<std::uint8_t>(a);
            gen(e, pos + 1, rem - a);
        }
    }

    std::size_t n_, q_;
    std::vector<std::vector<std::uint8_t>> elements_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Matrix of the Koszul differential
/// delta_{p,q}: wedge^p V (x) Sym^q V -> wedge^{p-1} V (x) Sym^{q+1} V,
/// the j-th omission carrying sign (-1)^(j-1). Tensor index layout is
/// wedge_index * |Sym basis| + monomial_index on both sides.
inline ExactMatrix koszul_delta(std::size_t n, std::size_t p, std::size_t q) {
    if (p < 1 || p > n) throw PreconditionFailed("koszul_delta: need 1 <= p <= n");
    WedgeBasis src_w(n, p), dst_w(n, p - 1);
    SymBasis src_s(n, q), dst_s(n, q + 1);
    ExactMatrix m(dst_w.size() * dst_s.size(), src_w.size() * src_s.size());
    std::vector<std::uint8_t> rest(p - 1);
    for (std::size_t wi = 0; wi < src_w.size(); ++wi) {
        const auto& tuple = src_w.element_at(wi);
        for (std::size_t j = 0; j < p; ++j) {
            for (std::size_t t = 0, o = 0; t < p; ++t)
                if (t != j) rest[o++] = tuple[t];
            std::size_t wrow = dst_w.index_of(rest);
            int sign = (j % 2 == 0) ? 1 : -1;
            for (std::size_t si = 0; si < src_s.size(); ++si) {
                std::size_t srow = src_s.index_times_var(si, tuple[j], dst_s);
                m.add(wrow * dst_s.size() + srow, wi * src_s.size() + si, sign);
            }
        }
    }
    return m;
}

/// Canonical pairing between wedge^2 V and wedge^2 V*: the identity matrix in
/// matched lexicographic bases.
inline ExactMatrix wedge_pairing(std::size_t n) {
    if (n < 2) throw PreconditionFailed("wedge_pairing: need n >= 2");
    return ExactMatrix::identity(WedgeBasis(n, 2).size());
}

/// Monomial multiplication Sym^{q1} (x) Sym^{q2} -> Sym^{q1+q2}; all entries 1.
inline ExactMatrix sym_multiply(std::size_t n, std::size_t q1, std::size_t q2) {
    SymBasis a(n, q1), b(n, q2), c(n, q1 + q2);
    ExactMatrix m(c.size(), a.size() * b.size());
    std::vector<std::uint8_t> e(n);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            for (std::size_t v = 0; v < n; ++v)
                e[v] = static_cast<std::uint8_t>(a.element_at(i)[v] + b.element_at(j)[v]);
            m.add(c.index_of(e), i * b.size() + j, 1);
        }
    return m;
}

/// Coordinates of a wedge b1 ^ b2 of two vectors of V* (or V) in the
/// lexicographic wedge basis.
inline std::vector<Rational> wedge_of_vectors(const std::vector<Rational>& b1,
                                              const std::vector<Rational>& b2) {
    if (b1.size() != b2.size()) throw DimensionMismatch("wedge_of_vectors: length mismatch");
    std::size_t n = b1.size();
    WedgeBasis w(n, 2);
    std::vector<Rational> out(w.size(), Rational(0));
    for (std::size_t k = 0; k < w.size(); ++k) {
        std::size_t i = w.element_at(k)[0], j = w.element_at(k)[1];
        out[k] = b1[i] * b2[j] - b1[j] * b2[i];
    }
    return out;
}

/// Induced map wedge^2(g) on wedge coordinates for an n x n matrix g
/// (columns are images of basis vectors).
inline ExactMatrix wedge_square_matrix(const std::vector<std::vector<Rational>>& g) {
    std::size_t n = g.size();
    for (const auto& row : g)
        if (row.size() != n) throw DimensionMismatch("wedge_square_matrix: not square");
    WedgeBasis w(n, 2);
    ExactMatrix m(w.size(), w.size());
    for (std::size_t col = 0; col < w.size(); ++col) {
        std::size_t i = w.element_at(col)[0], j = w.element_at(col)[1];
        for (std::size_t row = 0; row < w.size(); ++row) {
            std::size_t k = w.element_at(row)[0], l = w.element_at(row)[1];
            Rational v = g[k][i] * g[l][j] - g[k][j] * g[l][i];
            if (v != 0) m.set(row, col, v);
        }
    }
    return m;
}

/// omega ^ omega in wedge^4 coordinates; zero iff the bivector has rank <= 2.
inline std::vector<Rational> bivector_self_wedge(std::size_t n, const std::vector<Rational>& omega) {
    WedgeBasis w2(n, 2), w4(n, 4);
    if (omega.size() != w2.size()) throw DimensionMismatch("bivector_self_wedge: bad length");
    std::vector<Rational> out(w4.size(), Rational(0));
    for (std::size_t a = 0; a < w2.size(); ++a) {
        if (omega[a] == 0) continue;
        for (std::size_t b = 0; b < w2.size(); ++b) {
            if (omega[b] == 0) continue;
            const auto& ta = w2.element_at(a);
            const auto& tb = w2.element_at(b);
            auto [idx, sign] = w4.index_signed({ta[0], ta[1], tb[0], tb[1]});
            if (sign != 0) out[idx] += sign * omega[a] * omega[b];
        }
    }
    return out;
}

} // namespace koszul
