#pragma once

#include <vector>

#include "koszul/koszul_core.hpp"

namespace koszul {

/// The quadratic algebra A(K) = E / ideal(K-perp) over the exterior algebra
/// E on V*, graded positively with generators in degree 1.
struct ExteriorModulePresentation {
    FieldSpec field;
    std::size_t n = 0;
    SubspaceSpec kperp; // inside wedge^2 V*
};

inline ExteriorModulePresentation make_exterior_presentation(const KoszulInput& in) {
    return ExteriorModulePresentation{in.field, in.n, kperp_of(in)};
}

/// Graded Tor table: dims[i][j] = dim Tor_i^E(A(K), k)_j.
struct TorTable {
    std::size_t i_max = 0, j_max = 0;
    std::vector<std::vector<std::size_t>> dims;
    std::size_t at(std::size_t i, std::size_t j) const {
        return (i < dims.size() && j < dims[i].size()) ? dims[i][j] : 0;
    }
};

namespace detail {

struct QFieldOps {
    using Elem = Rational;
    Elem zero() const { return Rational(0); }
    bool is_zero(const Elem& x) const { return x == 0; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const { return 1 / a; }
    Elem scalar(long s) const { return Rational(s); }
    Elem from_rational(const Rational& x) const { return x; }
};

struct PFieldOps {
    std::uint64_t p;
    using Elem = std::uint64_t;
    Elem zero() const { return 0; }
    bool is_zero(const Elem& x) const { return x == 0; }
    Elem add(const Elem& a, const Elem& b) const { return (a + b) % p; }
    Elem sub(const Elem& a, const Elem& b) const { return (a + p - b) % p; }
    Elem mul(const Elem& a, const Elem& b) const { return mulmod_u64(a, b, p); }
    Elem inv(const Elem& a) const { return invmod_u64(a, p); }
    Elem scalar(long s) const {
        long r = s % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        return static_cast<Elem>(r);
    }
    Elem from_rational(const Rational& x) const { return FieldSpec(p).reduce(x); }
};

/// Incremental row-echelon store for membership tests and minimal-generator
/// extraction during the resolution walk.
template <class Ops>
class EchelonStore {
public:
    EchelonStore(const Ops& ops, std::size_t width) : ops_(ops), width_(width) {}

    /// Reduce v against the store; returns true (and absorbs v) when v was
    /// independent of the stored rows.
    bool absorb(std::vector<typename Ops::Elem> v) {
        reduce(v);
        std::size_t lead = width_;
        for (std::size_t c = 0; c < width_; ++c)
            if (!ops_.is_zero(v[c])) { lead = c; break; }
        if (lead == width_) return false;
        auto inv = ops_.inv(v[lead]);
        for (auto& x : v) x = ops_.mul(x, inv);
        rows_.push_back(std::move(v));
        leads_.push_back(lead);
        return true;
    }

    bool contains(std::vector<typename Ops::Elem> v) const {
        reduce(v);
        for (const auto& x : v)
            if (!ops_.is_zero(x)) return false;
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    void reduce(std::vector<typename Ops::Elem>& v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const auto& c = v[leads_[r]];
            if (ops_.is_zero(c)) continue;
            auto f = c;
            for (std::size_t j = 0; j < width_; ++j)
                if (!ops_.is_zero(rows_[r][j])) v[j] = ops_.sub(v[j], ops_.mul(f, rows_[r][j]));
        }
    }

    Ops ops_;
    std::size_t width_;
    std::vector<std::vector<typename Ops::Elem>> rows_;
    std::vector<std::size_t> leads_;
};

template <class Ops>
struct BggWorker {
    using Elem = typename Ops::Elem;
    using Vec = std::vector<Elem>;

    const Ops ops;
    std::size_t n;
    std::size_t j_cap;
    std::size_t budget;
    std::vector<WedgeBasis> ext; // ext[d] = basis of E_d, d = 0..n

    BggWorker(const Ops& o, std::size_t n_, std::size_t j_cap_, std::size_t budget_)
        : ops(o), n(n_), j_cap(j_cap_), budget(budget_) {
        for (std::size_t d = 0; d <= n; ++d) ext.emplace_back(n, d);
    }

    std::size_t ext_dim(std::size_t d) const { return d <= n ? ext[d].size() : 0; }

    /// A free module given by generator degrees; its degree-j piece is the
    /// concatenation of E_{j - d_g} blocks.
    struct Free {
        std::vector<std::size_t> gen_degs;
        std::vector<Vec> gen_reps; // representatives in the previous module's degree-d piece
    };

    std::size_t piece_dim(const Free& f, std::size_t j) const {
        std::size_t t = 0;
        for (auto d : f.gen_degs)
            if (j >= d) t += ext_dim(j - d);
        return t;
    }

    /// Multiply a degree-j element of the free module by the basis vector
    /// e_letter of E_1.
    Vec e1_mul(const Free& f, std::size_t j, const Vec& v, std::size_t letter) const {
        Vec out(piece_dim(f, j + 1), ops.zero());
        std::size_t off_in = 0, off_out = 0;
        for (auto d : f.gen_degs) {
            std::size_t din = j >= d ? j - d : n + 1;
            std::size_t dout = j + 1 >= d ? j + 1 - d : n + 1;
            std::size_t bi = ext_dim(din), bo = ext_dim(dout);
            if (bi && bo) {
                for (std::size_t k = 0; k < bi; ++k) {
                    const Elem& c = v[off_in + k];
                    if (ops.is_zero(c)) continue;
                    const auto& tuple = ext[din].element_at(k);
                    std::vector<std::uint8_t> merged(tuple.size() + 1);
                    merged[0] = static_cast<std::uint8_t>(letter);
                    std::copy(tuple.begin(), tuple.end(), merged.begin() + 1);
                    auto [idx, sign] = ext[dout].index_signed(std::move(merged));
                    if (sign == 0) continue;
                    std::size_t pos = off_out + idx;
                    out[pos] = sign > 0 ? ops.add(out[pos], c) : ops.sub(out[pos], c);
                }
            }
            off_in += bi;
            off_out += bo;
        }
        return out;
    }

    /// Graded pieces of ideal(K-perp) inside E.
    std::vector<Vec> ideal_piece(const SubspaceSpec& kperp, std::size_t j) const {
        std::vector<Vec> out;
        if (j < 2 || j > n) return out;
        const WedgeBasis& w2 = ext[2];
        for (const auto& gen : kperp.basis()) {
            for (std::size_t ei = 0; ei < ext_dim(j - 2); ++ei) {
                Vec v(ext_dim(j), ops.zero());
                const auto& eta = ext[j - 2].element_at(ei);
                bool nonzero = false;
                for (std::size_t wc = 0; wc < w2.size(); ++wc) {
                    if (gen[wc] == 0) continue;
                    std::vector<std::uint8_t> merged;
                    merged.reserve(j);
                    merged.push_back(w2.element_at(wc)[0]);
                    merged.push_back(w2.element_at(wc)[1]);
                    merged.insert(merged.end(), eta.begin(), eta.end());
                    auto [idx, sign] = ext[j].index_signed(std::move(merged));
                    if (sign == 0) continue;
                    Elem c = ops.from_rational(gen[wc]);
                    v[idx] = sign > 0 ? ops.add(v[idx], c) : ops.sub(v[idx], c);
                    nonzero = true;
                }
                if (nonzero) out.push_back(std::move(v));
            }
        }
        return out;
    }

    TorTable run(const SubspaceSpec& kperp, std::size_t i_max) {
        TorTable table;
        table.i_max = i_max;
        table.j_max = j_cap;
        table.dims.assign(i_max + 1, std::vector<std::size_t>(j_cap + 1, 0));
        table.dims[0][0] = 1; // Tor_0(A, k) = k

        Free prev; // F_0 = E
        prev.gen_degs = {0};
        prev.gen_reps = {{}};
        // syzygy pieces N_j as vectors in prev's degree-j piece
        std::vector<std::vector<Vec>> syz(j_cap + 1);
        for (std::size_t j = 0; j <= j_cap; ++j) syz[j] = ideal_piece(kperp, j);

        for (std::size_t lvl = 1; lvl <= i_max; ++lvl) {
            Free cur;
            for (std::size_t j = 0; j <= j_cap; ++j) {
                if (syz[j].empty()) continue;
                EchelonStore<Ops> store(ops, piece_dim(prev, j));
                if (j >= 1)
                    for (const auto& v : syz[j - 1])
                        for (std::size_t letter = 0; letter < n; ++letter)
                            store.absorb(e1_mul(prev, j - 1, v, letter));
                for (const auto& v : syz[j]) {
                    if (store.absorb(v)) {
                        // minimality: no unit entries, i.e. no component in a
                        // same-degree generator block
                        std::size_t off = 0;
                        for (auto d : prev.gen_degs) {
                            std::size_t b = j >= d ? ext_dim(j - d) : 0;
                            if (d == j && b == 1 && !ops.is_zero(v[off]))
                                throw InternalInconsistency(
                                    "non-minimal generator in exterior resolution");
                            off += b;
                        }
                        table.dims[lvl][j] += 1;
                        cur.gen_degs.push_back(j);
                        cur.gen_reps.push_back(v);
                    }
                }
            }
            if (lvl == i_max || cur.gen_degs.empty()) break;
            // next syzygies: kernel of F_cur -> F_prev degreewise
            std::vector<std::vector<Vec>> next(j_cap + 1);
            for (std::size_t j = 0; j <= j_cap; ++j) {
                std::size_t cols = piece_dim(cur, j);
                if (cols == 0) continue;
                std::size_t rows = piece_dim(prev, j);
                if (rows * cols > budget)
                    throw BudgetExceeded("exterior_tor: resolution piece exceeds budget");
                // build the map column by column: eta * rep(g)
                ExactMatrix dense(rows, cols); // rational snapshot for kernel_basis
                std::vector<Vec> cols_vec(cols, Vec(rows, ops.zero()));
                std::size_t off = 0;
                for (std::size_t g = 0; g < cur.gen_degs.size(); ++g) {
                    std::size_t d = cur.gen_degs[g];
                    if (j < d) continue;
                    std::size_t b = ext_dim(j - d);
                    for (std::size_t k = 0; k < b; ++k) {
                        Vec img = cur.gen_reps[g];
                        std::size_t dg = d;
                        const auto& eta = ext[j - d].element_at(k);
                        for (std::size_t t = eta.size(); t-- > 0;) {
                            img = e1_mul(prev, dg, img, eta[t]);
                            ++dg;
                        }
                        cols_vec[off + k] = std::move(img);
                    }
                    off += b;
                }
                // kernel over the field via the shared elimination engine
                std::vector<std::vector<Rational>> rat_rows(rows, std::vector<Rational>(cols, Rational(0)));
                for (std::size_t c = 0; c < cols; ++c)
                    for (std::size_t r = 0; r < rows; ++r)
                        if (!ops.is_zero(cols_vec[c][r])) rat_rows[r][c] = elem_to_rational(cols_vec[c][r]);
                SubspaceSpec ker = kernel_basis(ExactMatrix::from_dense_rows(rat_rows), field_spec());
                for (const auto& kv : ker.basis()) {
                    Vec v(cols, ops.zero());
                    for (std::size_t c = 0; c < cols; ++c)
                        if (kv[c] != 0) v[c] = ops.from_rational(kv[c]);
                    next[j].push_back(std::move(v));
                }
            }
            syz = std::move(next);
            prev = std::move(cur);
        }
        return table;
    }

    Rational elem_to_rational(const Elem& e) const {
        if constexpr (std::is_same_v<Elem, Rational>) return e;
        else return Rational(static_cast<unsigned long>(e));
    }
    FieldSpec field_spec() const {
        if constexpr (std::is_same_v<Elem, Rational>) return FieldSpec::rationals();
        else return FieldSpec::prime(ops.p);
    }
};

} // namespace detail

/// Graded Tor over E by stepwise minimal free resolution of A(K); the
/// identification dim W_q(V,K) = dim Tor_{q+1}^E(A(K), k)_{q+2} makes this
/// the third, independent route to Koszul dimensions.
inline TorTable exterior_tor(const ExteriorModulePresentation& pres, std::size_t i_max,
                             std::size_t budget = 4'000'000) {
    if (i_max < 1) throw PreconditionFailed("exterior_tor: need i_max >= 1");
    std::size_t j_cap = i_max + 2;
    if (pres.field.is_rational()) {
        detail::BggWorker<detail::QFieldOps> w({}, pres.n, j_cap, budget);
        return w.run(pres.kperp, i_max);
    }
    detail::BggWorker<detail::PFieldOps> w({pres.field.characteristic()}, pres.n, j_cap, budget);
    return w.run(pres.kperp, i_max);
}

/// dim W_q via the BGG route.
inline std::size_t koszul_dim_bgg(const KoszulInput& in, std::size_t q) {
    TorTable t = exterior_tor(make_exterior_presentation(in), q + 1);
    return t.at(q + 1, q + 2);
}

} // namespace koszul
