#pragma once

#include <cstdint>
#include <vector>

#include "koszul/base.hpp"

namespace koszul {

/// Arithmetic in F_{p^k} as polynomials mod a fixed monic irreducible.
/// Elements are coefficient vectors of length k, little-endian.
class GFExt {
public:
    using Elem = std::vector<std::uint64_t>;

    GFExt(std::uint64_t p, unsigned k) : p_(p), k_(k), modulus_(find_irreducible(p, k)) {
        if (!is_prime_u64(p)) throw PreconditionFailed("GFExt: p must be prime");
        if (k == 0) throw PreconditionFailed("GFExt: k must be >= 1");
    }

    std::uint64_t p() const { return p_; }
    unsigned k() const { return k_; }
    /// Monic irreducible modulus, degree k, little-endian with leading 1.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    Elem zero() const { return Elem(k_, 0); }
    Elem one() const { Elem e(k_, 0); e[0] = 1; return e; }
    Elem from_uint(std::uint64_t v) const { Elem e(k_, 0); e[0] = v % p_; return e; }

    /// Element with enumeration index c in [0, p^k): base-p digits.
    Elem from_index(std::uint64_t c) const {
        Elem e(k_, 0);
        for (unsigned i = 0; i < k_; ++i) { e[i] = c % p_; c /= p_; }
        return e;
    }
    std::uint64_t order() const {
        std::uint64_t o = 1;
        for (unsigned i = 0; i < k_; ++i) o *= p_;
        return o;
    }

    bool is_zero(const Elem& a) const {
        for (auto x : a) if (x) return false;
        return true;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem c(k_);
        for (unsigned i = 0; i < k_; ++i) c[i] = (a[i] + b[i]) % p_;
        return c;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem c(k_);
        for (unsigned i = 0; i < k_; ++i) c[i] = (a[i] + p_ - b[i]) % p_;
        return c;
    }
    Elem neg(const Elem& a) const {
        Elem c(k_);
        for (unsigned i = 0; i < k_; ++i) c[i] = a[i] ? p_ - a[i] : 0;
        return c;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
        for (unsigned i = 0; i < k_; ++i) {
            if (!a[i]) continue;
            for (unsigned j = 0; j < k_; ++j)
                if (b[j]) prod[i + j] = (prod[i + j] + mulmod_u64(a[i], b[j], p_)) % p_;
        }
        // reduce modulo the monic modulus
        for (unsigned d = 2 * k_ - 2; d + 1 > k_; --d) {
            std::uint64_t c = prod[d];
            if (!c) continue;
            prod[d] = 0;
            for (unsigned i = 0; i < k_; ++i)
                prod[d - k_ + i] = (prod[d - k_ + i] + p_ - mulmod_u64(c, modulus_[i], p_)) % p_;
        }
        prod.resize(k_);
        return prod;
    }

    Elem inv(const Elem& a) const {
        if (is_zero(a)) throw Error("GFExt: inverse of zero");
        // extended Euclid on polynomials over F_p; invariant r_i = t_i * a (mod modulus)
        std::vector<std::uint64_t> r0 = modulus_, r1 = a;
        trim(r1);
        std::vector<std::uint64_t> t0{}, t1{1};
        while (r1.size() > 1) {
            auto [q, rem] = poly_divmod(r0, r1);
            auto t2 = poly_sub(t0, poly_mul(q, t1));
            r0 = r1; r1 = rem;
            t0 = t1; t1 = t2;
            if (r1.empty()) throw Error("GFExt: element not invertible (modulus not irreducible?)");
        }
        std::uint64_t lead_inv = invmod_u64(r1[0], p_);
        Elem out(k_, 0);
        for (std::size_t i = 0; i < t1.size() && i < k_; ++i) out[i] = mulmod_u64(t1[i], lead_inv, p_);
        return out;
    }

    /// First monic irreducible of degree k over F_p, coefficients in
    /// lexicographic order; deterministic repository-wide.
    static std::vector<std::uint64_t> find_irreducible(std::uint64_t p, unsigned k) {
        if (k == 1) return {0, 1}; // x
        // all monic irreducibles of degree <= k/2 for trial division
        std::vector<std::vector<std::uint64_t>> divisors;
        for (unsigned d = 1; 2 * d <= k; ++d) {
            std::uint64_t count = 1;
            for (unsigned i = 0; i < d; ++i) count *= p;
            for (std::uint64_t code = 0; code < count; ++code) {
                std::vector<std::uint64_t> f(d + 1, 0);
                std::uint64_t c = code;
                for (unsigned i = 0; i < d; ++i) { f[i] = c % p; c /= p; }
                f[d] = 1;
                bool irred = true;
                for (const auto& g : divisors)
                    if (2 * (g.size() - 1) <= d && poly_divmod_static(f, g, p).second.empty()) {
                        irred = false;
                        break;
                    }
                if (irred) divisors.push_back(f);
            }
        }
        std::uint64_t count = 1;
        for (unsigned i = 0; i < k; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<std::uint64_t> f(k + 1, 0);
            std::uint64_t c = code;
            for (unsigned i = 0; i < k; ++i) { f[i] = c % p; c /= p; }
            f[k] = 1;
            bool irred = true;
            for (const auto& g : divisors)
                if (poly_divmod_static(f, g, p).second.empty()) {
                    irred = false;
                    break;
                }
            if (irred) return f;
        }
        throw Error("GFExt: no irreducible polynomial found");
    }

private:
    static void trim_static(std::vector<std::uint64_t>& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    void trim(std::vector<std::uint64_t>& a) const { trim_static(a); }

    static int poly_deg(const std::vector<std::uint64_t>& a) {
        return static_cast<int>(a.size()) - 1;
    }

    static std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> poly_divmod_static(
        std::vector<std::uint64_t> num, const std::vector<std::uint64_t>& den, std::uint64_t p) {
        trim_static(num);
        std::vector<std::uint64_t> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
        std::uint64_t lead_inv = invmod_u64(den.back(), p);
        while (num.size() >= den.size() && !num.empty()) {
            std::uint64_t f = mulmod_u64(num.back(), lead_inv, p);
            std::size_t shift = num.size() - den.size();
            q[shift] = f;
            for (std::size_t i = 0; i < den.size(); ++i)
                num[shift + i] = (num[shift + i] + p - mulmod_u64(f, den[i], p)) % p;
            trim_static(num);
        }
        return {q, num};
    }

    std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> poly_divmod(
        const std::vector<std::uint64_t>& num, const std::vector<std::uint64_t>& den) const {
        return poly_divmod_static(num, den, p_);
    }

    std::vector<std::uint64_t> poly_mul(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<std::uint64_t> c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                c[i + j] = (c[i + j] + mulmod_u64(a[i], b[j], p_)) % p_;
        trim_static(c);
        return c;
    }

    std::vector<std::uint64_t> poly_sub(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b) const {
        std::vector<std::uint64_t> c(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            std::uint64_t x = i < a.size() ? a[i] : 0;
            std::uint64_t y = i < b.size() ? b[i] : 0;
            c[i] = (x + p_ - y) % p_;
        }
        trim_static(c);
        return c;
    }

    std::uint64_t p_;
    unsigned k_;
    std::vector<std::uint64_t> modulus_;
};

/// Dense row echelon over GFExt; returns rank (small matrices only).
inline std::size_t gfext_rank(const GFExt& f, std::vector<std::vector<GFExt::Elem>> rows) {
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && f.is_zero(rows[piv][c])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        GFExt::Elem inv = f.inv(rows[rank][c]);
        for (auto& x : rows[rank]) x = f.mul(x, inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || f.is_zero(rows[r][c])) continue;
            GFExt::Elem fac = rows[r][c];
            for (std::size_t j = 0; j < cols; ++j)
                rows[r][j] = f.sub(rows[r][j], f.mul(fac, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

} // namespace koszul
