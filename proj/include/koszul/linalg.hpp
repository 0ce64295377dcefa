#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "koszul/base.hpp"

namespace koszul {

/// Sparse matrix with exact rational entries. Row-major storage; all stored
/// entries are nonzero and indices are in range.
class ExactMatrix {
public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

    static ExactMatrix identity(std::size_t n) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static ExactMatrix from_dense_rows(const std::vector<std::vector<Rational>>& rows) {
        std::size_t nc = rows.empty() ? 0 : rows.front().size();
        ExactMatrix m(rows.size(), nc);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != nc) throw DimensionMismatch("ragged dense rows");
            for (std::size_t j = 0; j < nc; ++j)
                if (rows[i][j] != 0) m.set(i, j, rows[i][j]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void add(std::size_t r, std::size_t c, const Rational& v) {
        check_index(r, c);
        auto& row = data_[r];
        auto it = row.find(c);
        if (it == row.end()) {
            if (v != 0) row.emplace(c, v);
        } else {
            it->second += v;
            if (it->second == 0) row.erase(it);
        }
    }

    void set(std::size_t r, std::size_t c, const Rational& v) {
        check_index(r, c);
        if (v == 0) data_[r].erase(c); else data_[r][c] = v;
    }

    Rational get(std::size_t r, std::size_t c) const {
        check_index(r, c);
        auto it = data_[r].find(c);
        return it == data_[r].end() ? Rational(0) : it->second;
    }

    const std::map<std::size_t, Rational>& row(std::size_t r) const { return data_[r]; }

    std::size_t nnz() const {
        std::size_t t = 0;
        for (const auto& r : data_) t += r.size();
        return t;
    }

    bool is_zero() const { return nnz() == 0; }

    /// y = M x for a dense vector x.
    std::vector<Rational> apply(const std::vector<Rational>& x) const {
        if (x.size() != cols_) throw DimensionMismatch("apply: size mismatch");
        std::vector<Rational> y(rows_, Rational(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
        return y;
    }

    ExactMatrix transposed() const {
        ExactMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) t.set(c, r, v);
        return t;
    }

    bool operator==(const ExactMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    void check_index(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw DimensionMismatch("matrix index out of range");
    }

    std::size_t rows_, cols_;
    std::vector<std::map<std::size_t, Rational>> data_;
};

namespace detail {

using SparseRowZ = std::vector<std::pair<std::uint32_t, Integer>>; // sorted by column
using SparseRowP = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

/// Clear denominators and divide out the integer content. Rank and null space
/// are invariant under scaling a row by a nonzero rational.
inline SparseRowZ primitive_integer_row(const std::map<std::size_t, Rational>& row) {
    Integer lcm = 1;
    for (const auto& [c, v] : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    SparseRowZ out;
    out.reserve(row.size());
    Integer g = 0;
    for (const auto& [c, v] : row) {
        Integer z = v.get_num() * (lcm / v.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
        out.emplace_back(static_cast<std::uint32_t>(c), std::move(z));
    }
    if (g > 1)
        for (auto& [c, z] : out) z /= g;
    return out;
}

inline void remove_content(SparseRowZ& row) {
    Integer g = 0;
    for (const auto& [c, z] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
        if (g == 1) return;
    }
    if (g > 1)
        for (auto& [c, z] : row) z /= g;
}

/// new_row = pv * a - va * b  (fraction-free cross-multiplication), content removed.
inline SparseRowZ combine_rows_z(const SparseRowZ& a, const Integer& pv,
                                 const SparseRowZ& b, const Integer& va) {
    SparseRowZ out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.emplace_back(a[i].first, pv * a[i].second);
            ++i;
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, -va * b[j].second);
            ++j;
        } else {
            Integer v = pv * a[i].second - va * b[j].second;
            if (v != 0) out.emplace_back(a[i].first, std::move(v));
            ++i; ++j;
        }
    }
    remove_content(out);
    return out;
}

inline SparseRowP combine_rows_p(const SparseRowP& a, const SparseRowP& unit_pivot,
                                 std::uint64_t va, std::uint64_t p) {
    // a - va * unit_pivot, pivot row already scaled to leading 1
    SparseRowP out;
    out.reserve(a.size() + unit_pivot.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < unit_pivot.size()) {
        if (j == unit_pivot.size() || (i < a.size() && a[i].first < unit_pivot[j].first)) {
            out.push_back(a[i]);
            ++i;
        } else if (i == a.size() || unit_pivot[j].first < a[i].first) {
            out.emplace_back(unit_pivot[j].first, p - mulmod_u64(va, unit_pivot[j].second, p));
            ++j;
        } else {
            std::uint64_t v = (a[i].second + p - mulmod_u64(va, unit_pivot[j].second, p)) % p;
            if (v) out.emplace_back(a[i].first, v);
            ++i; ++j;
        }
    }
    return out;
}

template <class Row>
std::optional<typename Row::value_type::second_type> row_entry(const Row& row, std::uint32_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, std::uint32_t c) { return e.first < c; });
    if (it == row.end() || it->first != col) return std::nullopt;
    return it->second;
}

template <class Row>
struct Echelon {
    std::size_t rank = 0;
    std::vector<std::uint32_t> pivot_cols;  // in elimination order
    std::vector<Row> pivot_rows;            // parallel to pivot_cols
};

/// Sparse forward elimination with a Markowitz-style pivot heuristic:
/// lightest column first, then shortest row (small-magnitude tie break).
/// ZRow path is fraction-free (Bareiss-style cross multiply + content removal).
template <class Row, class Combine, class EntryLess>
Echelon<Row> eliminate(std::vector<Row> rows, std::size_t cols, Combine combine, EntryLess entry_less) {
    check_budget_cols(cols, "eliminate");
    Echelon<Row> ech;
    std::vector<std::uint32_t> colcount(cols, 0);
    std::vector<char> active(rows.size(), 1);
    std::size_t active_nonempty = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].empty()) { active[r] = 0; continue; }
        ++active_nonempty;
        for (const auto& [c, v] : rows[r]) ++colcount[c];
    }
    while (active_nonempty > 0) {
        // lightest nonzero column
        std::uint32_t best_c = 0;
        std::uint32_t best_cc = std::numeric_limits<std::uint32_t>::max();
        for (std::uint32_t c = 0; c < cols; ++c)
            if (colcount[c] > 0 && colcount[c] < best_cc) { best_cc = colcount[c]; best_c = c; }
        // shortest active row having best_c
        std::size_t best_r = rows.size();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!active[r]) continue;
            auto e = row_entry(rows[r], best_c);
            if (!e) continue;
            if (best_r == rows.size() || rows[r].size() < rows[best_r].size() ||
                (rows[r].size() == rows[best_r].size() &&
                 entry_less(*e, *row_entry(rows[best_r], best_c))))
                best_r = r;
        }
        Row pivot = std::move(rows[best_r]);
        active[best_r] = 0;
        --active_nonempty;
        for (const auto& [c, v] : pivot) --colcount[c];
        auto pv = *row_entry(pivot, best_c);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!active[r]) continue;
            auto e = row_entry(rows[r], best_c);
            if (!e) continue;
            for (const auto& [c, v] : rows[r]) --colcount[c];
            rows[r] = combine(rows[r], pivot, pv, *e);
            if (rows[r].empty()) {
                active[r] = 0;
                --active_nonempty;
            } else {
                for (const auto& [c, v] : rows[r]) ++colcount[c];
            }
        }
        ech.pivot_cols.push_back(best_c);
        ech.pivot_rows.push_back(std::move(pivot));
        ++ech.rank;
    }
    return ech;
}

inline Echelon<SparseRowZ> eliminate_z(std::vector<SparseRowZ> rows, std::size_t cols) {
    return eliminate<SparseRowZ>(
        std::move(rows), cols,
        [](const SparseRowZ& a, const SparseRowZ& piv, const Integer& pv, const Integer& va) {
            return combine_rows_z(a, pv, piv, va);
        },
        [](const Integer& a, const Integer& b) {
            return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
        });
}

inline Echelon<SparseRowP> eliminate_p(std::vector<SparseRowP> rows, std::size_t cols, std::uint64_t p) {
    return eliminate<SparseRowP>(
        std::move(rows), cols,
        [p](const SparseRowP& a, const SparseRowP& piv, std::uint64_t pv, std::uint64_t va) {
            // scale factor va/pv
            return combine_rows_p(a, piv, mulmod_u64(va, invmod_u64(pv, p), p), p);
        },
        [](std::uint64_t, std::uint64_t) { return false; });
}

/// Canonical reduced row echelon form: leftmost pivots in order, leading
/// entries 1, pivot columns cleared elsewhere. The fraction-free forward
/// pass does the bulk of the elimination with Markowitz pivoting; a dense
/// leftmost-pivot Gauss-Jordan pass on the surviving rank rows restores the
/// canonical pivot set (RREF of a row space is unique).
inline std::vector<std::vector<Rational>> canonical_rref_dense(
    std::vector<std::vector<Rational>> rows, std::size_t cols) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Rational pv = rows[rank][c];
        for (std::size_t j = c; j < cols; ++j)
            if (rows[rank][j] != 0) rows[rank][j] /= pv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            Rational f = rows[r][c];
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j)
                if (rows[rank][j] != 0) rows[r][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

inline std::vector<std::vector<Rational>> rref_rows_q(const Echelon<SparseRowZ>& ech, std::size_t cols) {
    std::vector<std::vector<Rational>> rows(ech.rank, std::vector<Rational>(cols, Rational(0)));
    for (std::size_t i = 0; i < ech.rank; ++i)
        for (const auto& [c, v] : ech.pivot_rows[i]) rows[i][c] = Rational(v);
    return canonical_rref_dense(std::move(rows), cols);
}

inline std::vector<std::vector<Rational>> canonical_rref_dense_p(
    std::vector<std::vector<std::uint64_t>> rows, std::size_t cols, std::uint64_t p) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        std::uint64_t inv = invmod_u64(rows[rank][c], p);
        for (std::size_t j = c; j < cols; ++j) rows[rank][j] = mulmod_u64(rows[rank][j], inv, p);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            std::uint64_t f = rows[r][c];
            if (!f) continue;
            for (std::size_t j = c; j < cols; ++j)
                if (rows[rank][j])
                    rows[r][j] = (rows[r][j] + p - mulmod_u64(f, rows[rank][j], p)) % p;
        }
        ++rank;
    }
    std::vector<std::vector<Rational>> out(rank, std::vector<Rational>(cols, Rational(0)));
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t c = 0; c < cols; ++c)
            if (rows[i][c]) out[i][c] = Rational(static_cast<unsigned long>(rows[i][c]));
    return out;
}

inline std::vector<std::vector<Rational>> rref_rows_p(const Echelon<SparseRowP>& ech, std::size_t cols,
                                                      std::uint64_t p) {
    std::vector<std::vector<std::uint64_t>> rows(ech.rank, std::vector<std::uint64_t>(cols, 0));
    for (std::size_t i = 0; i < ech.rank; ++i)
        for (const auto& [c, v] : ech.pivot_rows[i]) rows[i][c] = v;
    return canonical_rref_dense_p(std::move(rows), cols, p);
}

inline std::vector<SparseRowZ> matrix_rows_z(const ExactMatrix& m) {
    std::vector<SparseRowZ> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(primitive_integer_row(m.row(r)));
    return rows;
}

inline std::vector<SparseRowP> matrix_rows_p(const ExactMatrix& m, const FieldSpec& f) {
    std::vector<SparseRowP> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseRowP row;
        for (const auto& [c, v] : m.row(r)) {
            std::uint64_t x = f.reduce(v);
            if (x) row.emplace_back(static_cast<std::uint32_t>(c), x);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// RREF of the row space of M over F (dense rational rows; entries of a
/// char-p result are the canonical lifts in [0, p)).
inline std::vector<std::vector<Rational>> rref_over(const ExactMatrix& m, const FieldSpec& f) {
    if (f.is_rational()) {
        auto ech = eliminate_z(matrix_rows_z(m), m.cols());
        return rref_rows_q(ech, m.cols());
    }
    auto ech = eliminate_p(matrix_rows_p(m, f), m.cols(), f.characteristic());
    return rref_rows_p(ech, m.cols(), f.characteristic());
}

} // namespace detail

/// Exact rank over the field. Char p requires every entry to reduce mod p.
inline std::size_t rank(const ExactMatrix& m, const FieldSpec& f) {
    if (f.is_rational()) return detail::eliminate_z(detail::matrix_rows_z(m), m.cols()).rank;
    return detail::eliminate_p(detail::matrix_rows_p(m, f), m.cols(), f.characteristic()).rank;
}

/// A linear subspace of a based space, stored as canonical RREF basis rows
/// with strictly increasing pivot columns. Equality of subspaces over the
/// same field is equality of representations.
class SubspaceSpec {
public:
    SubspaceSpec() : ambient_(0) {}
    explicit SubspaceSpec(std::size_t ambient) : ambient_(ambient) {}

    /// Canonicalize a spanning set over F.
    static SubspaceSpec span(std::size_t ambient, const std::vector<std::vector<Rational>>& vectors,
                             const FieldSpec& f) {
        for (const auto& v : vectors)
            if (v.size() != ambient) throw DimensionMismatch("span: vector length != ambient dim");
        SubspaceSpec s(ambient);
        if (!vectors.empty())
            s.basis_ = detail::rref_over(ExactMatrix::from_dense_rows(vectors), f);
        return s;
    }

    static SubspaceSpec zero(std::size_t ambient) { return SubspaceSpec(ambient); }

    static SubspaceSpec full(std::size_t ambient, const FieldSpec& f) {
        std::vector<std::vector<Rational>> rows(ambient, std::vector<Rational>(ambient, Rational(0)));
        for (std::size_t i = 0; i < ambient; ++i) rows[i][i] = 1;
        return span(ambient, rows, f);
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<std::vector<Rational>>& basis() const { return basis_; }

    std::vector<std::size_t> pivot_cols() const {
        std::vector<std::size_t> p;
        for (const auto& row : basis_) {
            std::size_t c = 0;
            while (c < ambient_ && row[c] == 0) ++c;
            p.push_back(c);
        }
        return p;
    }

    /// Reduce a vector against the basis (over F); zero result means membership.
    std::vector<Rational> reduce(std::vector<Rational> v, const FieldSpec& f) const {
        if (v.size() != ambient_) throw DimensionMismatch("reduce: vector length mismatch");
        auto piv = pivot_cols();
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            Rational c = f.is_rational() ? v[piv[i]]
                                         : Rational(static_cast<unsigned long>(f.reduce(v[piv[i]])));
            if (c == 0) continue;
            for (std::size_t j = 0; j < ambient_; ++j)
                if (basis_[i][j] != 0) v[j] -= c * basis_[i][j];
        }
        if (!f.is_rational())
            for (auto& x : v) x = Rational(static_cast<unsigned long>(f.reduce(x)));
        return v;
    }

    bool contains_vector(const std::vector<Rational>& v, const FieldSpec& f) const {
        auto r = reduce(v, f);
        for (const auto& x : r)
            if (x != 0) return false;
        return true;
    }

    bool operator==(const SubspaceSpec& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const SubspaceSpec& o) const { return !(*this == o); }

private:
    std::size_t ambient_;
    std::vector<std::vector<Rational>> basis_;
};

/// Canonical echelon basis of the right null space of M over F.
inline SubspaceSpec kernel_basis(const ExactMatrix& m, const FieldSpec& f) {
    std::vector<std::vector<Rational>> rref = detail::rref_over(m, f);
    std::vector<char> is_pivot(m.cols(), 0);
    std::vector<std::size_t> pcols;
    for (const auto& row : rref) {
        std::size_t c = 0;
        while (c < m.cols() && row[c] == 0) ++c;
        is_pivot[c] = 1;
        pcols.push_back(c);
    }
    std::vector<std::vector<Rational>> kernel;
    for (std::size_t fcol = 0; fcol < m.cols(); ++fcol) {
        if (is_pivot[fcol]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[fcol] = 1;
        for (std::size_t i = 0; i < rref.size(); ++i)
            if (rref[i][fcol] != 0) v[pcols[i]] = -rref[i][fcol];
        kernel.push_back(std::move(v));
    }
    return SubspaceSpec::span(m.cols(), kernel, f);
}

inline SubspaceSpec subspace_sum(const SubspaceSpec& a, const SubspaceSpec& b, const FieldSpec& f) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspace_sum: ambient mismatch");
    std::vector<std::vector<Rational>> rows = a.basis();
    rows.insert(rows.end(), b.basis().begin(), b.basis().end());
    return SubspaceSpec::span(a.ambient_dim(), rows, f);
}

inline SubspaceSpec subspace_intersection(const SubspaceSpec& a, const SubspaceSpec& b, const FieldSpec& f) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionMismatch("subspace_intersection: ambient mismatch");
    std::size_t da = a.dim(), db = b.dim(), n = a.ambient_dim();
    if (da == 0 || db == 0) return SubspaceSpec::zero(n);
    // coefficient vectors (u, v) with u*A + v*B = 0; intersection = { u*A }
    ExactMatrix m(n, da + db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a.basis()[i][j] != 0) m.set(j, i, a.basis()[i][j]);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (b.basis()[i][j] != 0) m.set(j, da + i, b.basis()[i][j]);
    SubspaceSpec coeffs = kernel_basis(m, f);
    std::vector<std::vector<Rational>> vecs;
    for (const auto& uv : coeffs.basis()) {
        std::vector<Rational> w(n, Rational(0));
        for (std::size_t i = 0; i < da; ++i)
            if (uv[i] != 0)
                for (std::size_t j = 0; j < n; ++j) w[j] += uv[i] * a.basis()[i][j];
        vecs.push_back(std::move(w));
    }
    return SubspaceSpec::span(n, vecs, f);
}

/// outer >= inner as subspaces.
inline bool subspace_contains(const SubspaceSpec& outer, const SubspaceSpec& inner, const FieldSpec& f) {
    if (outer.ambient_dim() != inner.ambient_dim())
        throw DimensionMismatch("subspace_contains: ambient mismatch");
    for (const auto& v : inner.basis())
        if (!outer.contains_vector(v, f)) return false;
    return true;
}

/// Annihilator of S under a nondegenerate pairing: { y : <s, y> = 0 for all s }.
/// The pairing matrix rows index S's ambient space, columns the dual side.
inline SubspaceSpec annihilator(const SubspaceSpec& s, const ExactMatrix& pairing, const FieldSpec& f) {
    if (pairing.rows() != s.ambient_dim())
        throw DimensionMismatch("annihilator: pairing rows != ambient dim");
    ExactMatrix m(s.dim(), pairing.cols());
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t r = 0; r < pairing.rows(); ++r) {
            const Rational& coef = s.basis()[i][r];
            if (coef == 0) continue;
            for (const auto& [c, v] : pairing.row(r)) m.add(i, c, coef * v);
        }
    SubspaceSpec ann = kernel_basis(m, f);
    if (ann.dim() != pairing.cols() - s.dim())
        throw PreconditionFailed("annihilator: pairing appears degenerate on the given subspace");
    return ann;
}

} // namespace koszul
