#pragma once

#include <random>
#include <vector>

#include "koszul/koszul.hpp"

namespace koszul_test {

using namespace koszul;

inline std::vector<std::vector<Rational>> random_dense(std::mt19937_64& rng, std::size_t rows,
                                                       std::size_t cols, int lo = -4, int hi = 4) {
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
    for (auto& r : m)
        for (auto& x : r) x = static_cast<long>(rng() % static_cast<unsigned>(hi - lo + 1)) + lo;
    return m;
}

/// Naive dense Gaussian elimination over the field: the independent rank
/// oracle used to cross-check the sparse fraction-free engine.
inline std::size_t naive_rank(std::vector<std::vector<Rational>> m, const FieldSpec& f) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size(), rank = 0;
    auto norm = [&](Rational x) {
        if (f.is_rational()) return x;
        return Rational(static_cast<unsigned long>(f.reduce(x)));
    };
    for (auto& row : m)
        for (auto& x : row) x = norm(x);
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && norm(m[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            Rational factor = m[r][c] / m[rank][c];
            for (std::size_t j = 0; j < cols; ++j) m[r][j] = norm(m[r][j] - factor * m[rank][j]);
        }
        ++rank;
    }
    return rank;
}

inline ExactMatrix to_matrix(const std::vector<std::vector<Rational>>& rows) {
    return ExactMatrix::from_dense_rows(rows);
}

inline SubspaceSpec random_subspace(std::mt19937_64& rng, std::size_t ambient, std::size_t dim,
                                    const FieldSpec& f) {
    for (;;) {
        auto rows = random_dense(rng, dim, ambient);
        if (!f.is_rational())
            for (auto& r : rows)
                for (auto& x : r)
                    x = Rational(static_cast<unsigned long>(
                        rng() % f.characteristic()));
        SubspaceSpec s = SubspaceSpec::span(ambient, rows, f);
        if (s.dim() == dim) return s;
    }
}

inline std::vector<Rational> unit_vector(std::size_t len, std::size_t pos) {
    std::vector<Rational> v(len, Rational(0));
    v[pos] = 1;
    return v;
}

} // namespace koszul_test
