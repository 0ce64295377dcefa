#pragma once

#include <random>

#include "koszul/resonance.hpp"

namespace koszul {

/// Parameters of the Clebsch-Gordan module W(Sym^{i+2}U, Sym^{2i+2}U):
/// V = Sym^{i+2}U has dimension n = i+3 and the distinguished subspace has
/// dimension 2i+3 = 2n-3 in characteristic 0.
struct CGParams {
    std::size_t i = 1;
    FieldSpec field;
    std::size_t n() const { return i + 3; }
    std::size_t m() const { return i + 2; }
    std::size_t target_dim() const { return 2 * i + 3; }
    std::size_t odd_genus() const { return 2 * i + 3; }
};

struct CGSubspace {
    SubspaceSpec K;                            // over the requested field
    std::size_t target_dim = 0;                // 2i+3
    std::size_t achieved_dim = 0;              // dim after reduction
    std::vector<std::vector<Integer>> orbit;   // integral spanning vectors
};

/// Integral orbit vectors w_k = F^(k)(x^m ^ x^{m-1}y), k = 0..2m-2, for the
/// divided lowering operator F^(k)(x^a y^b) = C(a,k) x^{a-k} y^{b+k} acting
/// as a derivation on wedges. Basis of V is x^m, x^{m-1}y, ..., y^m (the
/// monomial y-degree indexes coordinates), wedge pairs lexicographic.
inline std::vector<std::vector<Integer>> cg_orbit_vectors(std::size_t i) {
    std::size_t m = i + 2, n = i + 3;
    WedgeBasis w2(n, 2);
    std::vector<std::vector<Integer>> vecs;
    for (std::size_t k = 0; k <= 2 * m - 2; ++k) {
        std::vector<Integer> v(w2.size(), Integer(0));
        // collect on ordered pairs (alpha < beta) with alpha + beta = k + 1
        for (std::size_t alpha = 0; 2 * alpha < k + 1 && alpha <= m; ++alpha) {
            std::size_t beta = k + 1 - alpha;
            if (beta == alpha || beta > m) continue;
            Integer c = binomial_z(m, static_cast<std::int64_t>(alpha)) *
                            binomial_z(m - 1, static_cast<std::int64_t>(beta) - 1) -
                        binomial_z(m, static_cast<std::int64_t>(beta)) *
                            binomial_z(m - 1, static_cast<std::int64_t>(alpha) - 1);
            if (c != 0)
                v[w2.index_of({static_cast<std::uint8_t>(alpha), static_cast<std::uint8_t>(beta)})] = c;
        }
        vecs.push_back(std::move(v));
    }
    return vecs;
}

inline CGSubspace cg_subspace_detailed(const CGParams& params) {
    if (params.i < 1) throw PreconditionFailed("cg_subspace: need i >= 1");
    CGSubspace out;
    out.target_dim = params.target_dim();
    out.orbit = cg_orbit_vectors(params.i);
    std::vector<std::vector<Rational>> rows;
    for (const auto& v : out.orbit) {
        std::vector<Rational> r(v.size());
        for (std::size_t c = 0; c < v.size(); ++c) r[c] = Rational(v[c]);
        rows.push_back(std::move(r));
    }
    out.K = SubspaceSpec::span(binomial_ull(params.n(), 2), rows, params.field);
    out.achieved_dim = out.K.dim();
    return out;
}

/// The span of the reduced orbit; throws RankDeficient when reduction mod p
/// drops below 2i+3.
inline SubspaceSpec cg_subspace(const CGParams& params) {
    CGSubspace s = cg_subspace_detailed(params);
    if (s.achieved_dim < s.target_dim)
        throw RankDeficient("cg_subspace: reduced span has dim " + std::to_string(s.achieved_dim) +
                            " < " + std::to_string(s.target_dim) + " in characteristic " +
                            std::to_string(params.field.characteristic()));
    return s.K;
}

inline KoszulInput cg_koszul_input(const CGParams& params) {
    return KoszulInput{params.field, params.n(), cg_subspace(params)};
}

/// Matrix of the homogenized Gaussian map on P^1,
/// f ^ g -> f_x g_y - f_y g_x : wedge^2 Sym^d U -> Sym^{2d-2} U.
/// In monomial coordinates the pair (y-degrees a < b) maps to
/// d (b - a) times the monomial of y-degree a+b-1.
inline ExactMatrix wronskian_matrix(std::size_t d) {
    if (d < 2) throw PreconditionFailed("wronskian: need d >= 2");
    WedgeBasis w2(d + 1, 2);
    ExactMatrix m(2 * d - 1, w2.size());
    for (std::size_t c = 0; c < w2.size(); ++c) {
        std::size_t a = w2.element_at(c)[0], b = w2.element_at(c)[1];
        m.set(a + b - 1, c, Rational(static_cast<long>(d) * static_cast<long>(b - a)));
    }
    return m;
}

/// Kernel of the Gaussian map over F; its annihilator under the equivariant
/// pairing recovers the Clebsch-Gordan subspace (the module's central oracle).
inline SubspaceSpec wronskian_kperp(std::size_t d, const FieldSpec& f) {
    return kernel_basis(wronskian_matrix(d), f);
}

/// Invariant pairing on wedge^2 Sym^d U induced by
/// <x^{d-a} y^a, x^{d-b} y^b> = (-1)^a C(d,a)^{-1} delta_{a+b,d}.
inline ExactMatrix cg_equivariant_pairing(std::size_t d) {
    WedgeBasis w2(d + 1, 2);
    auto pair1 = [&](std::size_t a, std::size_t b) -> Rational {
        if (a + b != d) return 0;
        Rational r(1);
        r /= Rational(binomial_z(d, static_cast<std::int64_t>(a)));
        return (a % 2 == 0) ? r : -r;
    };
    ExactMatrix m(w2.size(), w2.size());
    for (std::size_t r = 0; r < w2.size(); ++r) {
        std::size_t a = w2.element_at(r)[0], b = w2.element_at(r)[1];
        for (std::size_t c = 0; c < w2.size(); ++c) {
            std::size_t ap = w2.element_at(c)[0], bp = w2.element_at(c)[1];
            Rational v = pair1(a, ap) * pair1(b, bp) - pair1(a, bp) * pair1(b, ap);
            if (v != 0) m.set(r, c, v);
        }
    }
    return m;
}

/// Graded dimensions of the Clebsch-Gordan module; entry q is read as
/// dim K_{i,2} of the tangent developable section of genus g = q + i + 3.
inline GradedDimTable green_dims(const CGParams& params, std::size_t q_max, unsigned threads = 1) {
    return hilbert_table(cg_koszul_input(params), q_max, threads);
}

/// koszul_dim over F_p of the reduced Clebsch-Gordan module at degree q.
inline std::size_t charp_green(const CGParams& params, std::size_t q) {
    if (params.field.is_rational())
        throw PreconditionFailed("charp_green: field must have positive characteristic");
    return koszul_dim(cg_koszul_input(params), q);
}

/// True when the divided-power reduction is outside the regime the
/// characteristic-free model is known to track (0 < p < i+2); CLI output
/// labels such results experimental.
inline bool charp_experimental_regime(const CGParams& params) {
    std::uint64_t p = params.field.characteristic();
    return p != 0 && p < params.m();
}

/// Seeded construction of a subspace K of dimension 2n-3 over F_p with
/// certified trivial resonance (W_{2n-7} = 0), for n = 3 + p^a; reports
/// dim W_{2n-8}, the optimal-bound non-vanishing instance.
struct CharpNonvanishing {
    std::uint64_t p = 0;
    unsigned a = 1;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t tries = 0;          // subspaces drawn until certification
    std::size_t w_certificate = 0;  // W_{2n-7}, zero on success
    std::size_t w_value = 0;        // W_{2n-8}
    SubspaceSpec K;
};

inline CharpNonvanishing charp_nonvanishing_instance(std::uint64_t p, unsigned a, std::uint64_t seed,
                                                     std::size_t max_tries = 64) {
    if (!is_prime_u64(p)) throw PreconditionFailed("charp_nonvanishing_instance: p must be prime");
    CharpNonvanishing rep;
    rep.p = p;
    rep.a = a;
    rep.seed = seed;
    std::size_t pa = 1;
    for (unsigned t = 0; t < a; ++t) pa *= p;
    rep.n = 3 + pa;
    std::size_t n = rep.n;
    std::size_t amb = binomial_ull(n, 2);
    FieldSpec f = FieldSpec::prime(p);
    std::mt19937_64 rng(seed);
    for (rep.tries = 1; rep.tries <= max_tries; ++rep.tries) {
        std::vector<std::vector<Rational>> rows(2 * n - 3, std::vector<Rational>(amb));
        for (auto& r : rows)
            for (auto& x : r) x = static_cast<long>(rng() % p);
        SubspaceSpec k = SubspaceSpec::span(amb, rows, f);
        if (k.dim() != 2 * n - 3) continue;
        KoszulInput in{f, n, k};
        rep.w_certificate = koszul_dim(in, 2 * n - 7);
        if (rep.w_certificate != 0) continue;
        rep.w_value = koszul_dim(in, 2 * n - 8);
        rep.K = k;
        return rep;
    }
    throw BudgetExceeded("charp_nonvanishing_instance: no trivial-resonance subspace within " +
                         std::to_string(max_tries) + " seeded draws");
}

/// Betti table of a generic canonical curve: b_{p,1} from the difference
/// formula where the previous-row entry vanishes generically, zero beyond,
/// and the second row filled in by duality b_{p,2} = b_{g-p-2,1}.
struct BettiTable {
    std::size_t g = 0;
    std::vector<unsigned long long> b1; // b_{p,1}, p = 1..g-2
    std::vector<unsigned long long> b2; // b_{p,2}, p = 1..g-2
    unsigned long long b1_at(std::size_t p) const { return p >= 1 && p <= g - 2 ? b1[p - 1] : 0; }
    unsigned long long b2_at(std::size_t p) const { return p >= 1 && p <= g - 2 ? b2[p - 1] : 0; }
};

/// (g-2p-1)(g-p-1)/(p+1) * C(g-1, p-1).
inline unsigned long long betti_difference_formula(std::size_t g, std::size_t p) {
    Integer num = Integer(static_cast<long>(g) - 2 * static_cast<long>(p) - 1) *
                  Integer(static_cast<long>(g) - static_cast<long>(p) - 1) *
                  binomial_z(g - 1, static_cast<std::int64_t>(p) - 1);
    Integer den(static_cast<long>(p) + 1);
    if (num % den != 0) throw InternalInconsistency("difference formula is not integral");
    Integer v = num / den;
    if (!v.fits_ulong_p()) throw BudgetExceeded("Betti number overflows");
    return v.get_ui();
}

inline BettiTable betti_generic_canonical(std::size_t g) {
    if (g < 3) throw PreconditionFailed("betti_generic_canonical: need g >= 3");
    BettiTable t;
    t.g = g;
    t.b1.assign(g - 2, 0);
    t.b2.assign(g - 2, 0);
    std::size_t p_hi = (g - 3 + 1) / 2; // ceil((g-3)/2)
    for (std::size_t p = 1; p <= p_hi && p <= g - 2; ++p)
        t.b1[p - 1] = betti_difference_formula(g, p);
    for (std::size_t p = 1; p <= g - 2; ++p) {
        std::size_t dual = g - p - 2;
        t.b2[p - 1] = (dual >= 1 && dual <= g - 2) ? t.b1[dual - 1] : 0;
    }
    // generic shape: no column carries both rows
    for (std::size_t p = 2; p <= g - 2; ++p)
        if (t.b1[p - 1] != 0 && t.b2[p - 2] != 0)
            throw InternalInconsistency("generic Betti table has overlapping rows");
    return t;
}

/// Eagon-Northcott bound for the (k-1)-dimensional scroll: p * C(g-k+1, p+1).
inline unsigned long long scroll_betti(std::size_t g, std::size_t k, std::size_t p) {
    if (k < 2 || p < 1) throw PreconditionFailed("scroll_betti: need k >= 2, p >= 1");
    return p * binomial_ull(g - k + 1, static_cast<std::int64_t>(p) + 1);
}

/// Dimension identity behind Hermite reciprocity
/// Sym^d(Sym^i U) = wedge^i(Sym^{d+i-1} U): both sides counted by
/// independent recurrences (stars-and-bars vs Pascal, no shared code).
inline bool hermite_dim_check(std::size_t d, std::size_t i) {
    // monomials of degree d in i+1 variables
    std::vector<unsigned long long> cnt(d + 1, 0);
    cnt[0] = 1;
    for (std::size_t var = 0; var < i + 1; ++var) {
        std::vector<unsigned long long> next(d + 1, 0);
        for (std::size_t q = 0; q <= d; ++q)
            for (std::size_t a = 0; a <= q; ++a) next[q] += cnt[q - a];
        cnt = std::move(next);
    }
    unsigned long long lhs = cnt[d];
    // i-subsets of a (d+i)-set via Pascal's additive recurrence
    std::vector<unsigned long long> pascal(i + 1, 0);
    pascal[0] = 1;
    for (std::size_t row = 1; row <= d + i; ++row)
        for (std::size_t c = std::min(i, row); c >= 1; --c) pascal[c] += pascal[c - 1];
    return lhs == pascal[i];
}

} // namespace koszul
