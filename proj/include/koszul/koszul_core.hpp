#pragma once

#include <atomic>
#include <future>
#include <optional>
#include <thread>
#include <vector>

#include "koszul/multilinear.hpp"

namespace koszul {

/// The pair (V, K): V = k^n with K a subspace of wedge^2 V in canonical form.
struct KoszulInput {
    FieldSpec field;
    std::size_t n = 0;
    SubspaceSpec K;
};

inline KoszulInput make_koszul_input(const FieldSpec& field, std::size_t n,
                                     const std::vector<std::vector<Rational>>& k_spanning) {
    std::size_t amb = binomial_ull(n, 2);
    for (const auto& v : k_spanning)
        if (v.size() != amb)
            throw DimensionMismatch("K spanning vector length must be C(n,2)");
    return KoszulInput{field, n, SubspaceSpec::span(amb, k_spanning, field)};
}

inline KoszulInput make_koszul_input(const FieldSpec& field, std::size_t n, const SubspaceSpec& k) {
    if (k.ambient_dim() != binomial_ull(n, 2))
        throw DimensionMismatch("K ambient dim must be C(n,2)");
    // re-canonicalize over the requested field
    return KoszulInput{field, n, SubspaceSpec::span(k.ambient_dim(), k.basis(), field)};
}

/// dim W_q(V, 0) = (q+1) C(n+q, q+2).
inline unsigned long long free_module_dim(std::size_t n, std::size_t q) {
    if (n < 1) return 0;
    return (q + 1) * binomial_ull(n + q, static_cast<std::int64_t>(q) + 2);
}

namespace detail {

inline std::size_t rank_rows_over(std::vector<SparseRowZ> rows, std::size_t cols, const FieldSpec& f) {
    if (f.is_rational()) return eliminate_z(std::move(rows), cols).rank;
    std::uint64_t p = f.characteristic();
    std::vector<SparseRowP> prow(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, z] : rows[r]) {
            std::uint64_t v = mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p));
            if (v) prow[r].emplace_back(c, v);
        }
    return eliminate_p(std::move(prow), cols, p).rank;
}

struct RestrictedDelta2 {
    std::vector<SparseRowZ> rows; // indexed by i * |Sym^{q+1}| + mono
    std::size_t cols = 0;
};

/// Columns are delta_2(k_b (x) m) for K basis vectors k_b and monomials m of
/// degree q, expressed in the V (x) Sym^{q+1} basis.
inline RestrictedDelta2 assemble_delta2_restricted(const KoszulInput& in, std::size_t q) {
    std::size_t n = in.n;
    WedgeBasis w2(n, 2);
    SymBasis sq(n, q), sq1(n, q + 1);
    RestrictedDelta2 out;
    out.cols = in.K.dim() * sq.size();
    check_budget_cols(out.cols, "koszul_dim");
    out.rows.assign(n * sq1.size(), {});
    std::vector<std::vector<std::pair<std::uint32_t, Integer>>> cells(n * sq1.size());
    for (std::size_t kb = 0; kb < in.K.dim(); ++kb) {
        SparseRowZ kvec = primitive_integer_row([&] {
            std::map<std::size_t, Rational> m;
            for (std::size_t c = 0; c < w2.size(); ++c)
                if (in.K.basis()[kb][c] != 0) m.emplace(c, in.K.basis()[kb][c]);
            return m;
        }());
        for (std::size_t mi = 0; mi < sq.size(); ++mi) {
            std::uint32_t col = static_cast<std::uint32_t>(kb * sq.size() + mi);
            for (const auto& [wc, cz] : kvec) {
                std::size_t i = w2.element_at(wc)[0], j = w2.element_at(wc)[1];
                std::size_t ri = i * sq1.size() + sq.index_times_var(mi, j, sq1);
                std::size_t rj = j * sq1.size() + sq.index_times_var(mi, i, sq1);
                cells[ri].emplace_back(col, cz);
                cells[rj].emplace_back(col, -cz);
            }
        }
    }
    for (std::size_t r = 0; r < cells.size(); ++r) {
        auto& row = cells[r];
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        out.rows[r] = std::move(row);
    }
    return out;
}

/// Verify im(delta_2|_K) lies in ker(delta_1): compose each assembled column
/// with v_i (x) m' -> v_i m' and require zero.
inline void verify_image_in_kernel(const KoszulInput& in, std::size_t q, const RestrictedDelta2& b) {
    std::size_t n = in.n;
    SymBasis sq1(n, q + 1), sq2(n, q + 2);
    std::vector<std::map<std::size_t, Integer>> col_sums(b.cols);
    for (std::size_t r = 0; r < b.rows.size(); ++r) {
        std::size_t i = r / sq1.size();
        std::size_t mi = r % sq1.size();
        std::size_t target = sq1.index_times_var(mi, i, sq2);
        for (const auto& [c, v] : b.rows[r]) {
            auto& cell = col_sums[c][target];
            cell += v;
            if (cell == 0) col_sums[c].erase(target);
        }
    }
    for (std::size_t c = 0; c < b.cols; ++c) {
        for (const auto& [t, v] : col_sums[c]) {
            bool zero = in.field.is_rational()
                            ? (v == 0)
                            : mpz_divisible_ui_p(v.get_mpz_t(),
                                                 static_cast<unsigned long>(in.field.characteristic()));
            if (!zero)
                throw InternalInconsistency("delta_1 . delta_2 restricted to K is nonzero");
        }
    }
}

} // namespace detail

/// dim W_q(V,K) via the middle homology
///   K (x) Sym^q V -> V (x) Sym^{q+1} V -> Sym^{q+2} V,
/// computed as dim ker(delta_1) - rank(delta_2 restricted to K (x) Sym^q).
inline std::size_t koszul_dim(const KoszulInput& in, std::size_t q) {
    std::size_t n = in.n;
    if (n == 0) return 0;
    SymBasis sq1(n, q + 1);
    ExactMatrix d1 = koszul_delta(n, 1, q + 1);
    std::size_t rank_d1 = rank(d1, in.field);
    std::size_t dim_ker = n * sq1.size() - rank_d1;
    if (in.K.dim() == 0) return dim_ker;
    auto b = detail::assemble_delta2_restricted(in, q);
    detail::verify_image_in_kernel(in, q, b);
    std::size_t rank_b = detail::rank_rows_over(std::move(b.rows), b.cols, in.field);
    return dim_ker - rank_b;
}

/// dim W_q(V,K) via the presentation
///   wedge^3 V (x) S(-1) --pi--> (wedge^2 V / K) (x) S -> W(V,K) -> 0,
/// the independent oracle for koszul_dim.
inline std::size_t koszul_dim_presentation(const KoszulInput& in, std::size_t q) {
    std::size_t n = in.n;
    if (n == 0) return 0;
    WedgeBasis w2(n, 2), w3(n, 3);
    SymBasis sq(n, q);
    std::size_t quot_dim = w2.size() - in.K.dim();
    std::size_t target = quot_dim * sq.size();
    if (q == 0 || w3.size() == 0 || quot_dim == 0) return target; // pi has no degree-0 part
    SymBasis sqm(n, q - 1);

    // quotient coordinates: non-pivot wedge coordinates after reduction mod K
    auto piv = in.K.pivot_cols();
    std::vector<char> is_pivot(w2.size(), 0);
    for (auto c : piv) is_pivot[c] = 1;
    std::vector<std::size_t> free_pos(w2.size(), 0);
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < w2.size(); ++c)
        if (!is_pivot[c]) {
            free_pos[c] = free_cols.size();
            free_cols.push_back(c);
        }
    // reduction of each wedge basis vector modulo K, in free coordinates
    std::vector<std::vector<Rational>> red(w2.size(), std::vector<Rational>(free_cols.size(), Rational(0)));
    for (std::size_t c = 0; c < w2.size(); ++c) {
        std::vector<Rational> e(w2.size(), Rational(0));
        e[c] = 1;
        auto r = in.K.reduce(std::move(e), in.field);
        for (std::size_t t = 0; t < free_cols.size(); ++t) red[c][t] = r[free_cols[t]];
    }

    check_budget_cols(w3.size() * sqm.size(), "koszul_dim_presentation");
    std::vector<std::map<std::size_t, Rational>> rowent(target);
    for (std::size_t wi = 0; wi < w3.size(); ++wi) {
        const auto& t = w3.element_at(wi);
        const std::size_t omit[3][2] = {{t[1], t[2]}, {t[0], t[2]}, {t[0], t[1]}};
        for (std::size_t mi = 0; mi < sqm.size(); ++mi) {
            std::uint32_t col = static_cast<std::uint32_t>(wi * sqm.size() + mi);
            for (int j = 0; j < 3; ++j) {
                int sign = (j % 2 == 0) ? 1 : -1;
                std::size_t wc = w2.index_of({static_cast<std::uint8_t>(omit[j][0]),
                                              static_cast<std::uint8_t>(omit[j][1])});
                std::size_t mono = sqm.index_times_var(mi, t[j], sq);
                for (std::size_t fp = 0; fp < free_cols.size(); ++fp) {
                    const Rational& c = red[wc][fp];
                    if (c == 0) continue;
                    std::size_t row = fp * sq.size() + mono;
                    auto& cell = rowent[row][col];
                    cell += sign * c;
                    if (cell == 0) rowent[row].erase(col);
                }
            }
        }
    }
    std::vector<detail::SparseRowZ> rows(target);
    for (std::size_t r = 0; r < target; ++r) rows[r] = detail::primitive_integer_row(rowent[r]);
    std::size_t rank_pi = detail::rank_rows_over(std::move(rows), w3.size() * sqm.size(), in.field);
    return target - rank_pi;
}

/// Graded dimension table on a contiguous degree range. Once an entry is
/// zero every later entry must be zero; violation is an internal error.
class GradedDimTable {
public:
    GradedDimTable() : q_start_(0) {}
    GradedDimTable(std::size_t q_start, std::vector<std::size_t> dims)
        : q_start_(q_start), dims_(std::move(dims)) {
        bool seen_zero = false;
        for (std::size_t d : dims_) {
            if (seen_zero && d != 0)
                throw InternalInconsistency("monotone vanishing violated in graded dimension table");
            if (d == 0) seen_zero = true;
        }
    }

    std::size_t q_start() const { return q_start_; }
    std::size_t q_end() const { return q_start_ + dims_.size(); } // exclusive
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t at(std::size_t q) const {
        if (q < q_start_ || q >= q_end()) throw DimensionMismatch("table degree out of range");
        return dims_[q - q_start_];
    }
    bool operator==(const GradedDimTable& o) const {
        return q_start_ == o.q_start_ && dims_ == o.dims_;
    }

private:
    std::size_t q_start_;
    std::vector<std::size_t> dims_;
};

/// Per-degree computations are independent; `threads > 1` farms them out.
inline GradedDimTable hilbert_table(const KoszulInput& in, std::size_t q_max, unsigned threads = 1) {
    std::vector<std::size_t> dims(q_max + 1, 0);
    if (threads <= 1) {
        for (std::size_t q = 0; q <= q_max; ++q) dims[q] = koszul_dim(in, q);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t q = next.fetch_add(1);
                if (q > q_max) return;
                dims[q] = koszul_dim(in, q);
            }
        };
        std::vector<std::future<void>> futs;
        for (unsigned t = 0; t < threads; ++t)
            futs.push_back(std::async(std::launch::async, worker));
        for (auto& fu : futs) fu.get();
    }
    return GradedDimTable(0, std::move(dims));
}

/// Minimal q <= q_cap with W_q = 0, or nullopt if W does not vanish up to the cap.
inline std::optional<std::size_t> vanishing_threshold(const KoszulInput& in, std::size_t q_cap) {
    for (std::size_t q = 0; q <= q_cap; ++q)
        if (koszul_dim(in, q) == 0) return q;
    return std::nullopt;
}

} // namespace koszul
