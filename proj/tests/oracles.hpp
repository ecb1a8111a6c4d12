#ifndef UNIVEXT_TESTS_ORACLES_HPP
#define UNIVEXT_TESTS_ORACLES_HPP

// Brute-force reference computations for the test suites. Nothing here calls
// the elimination routines in exactla; ranks and determinants are recomputed
// with a separate, deliberately naive implementation.

#include "univext/liealg.hpp"

#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

using univext::Rat;
using Row = std::vector<Rat>;

/// Rank by plain forward elimination.
inline std::size_t rank(std::vector<Row> rows)
{
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t q = r + 1; q < rows.size(); ++q) {
            if (rows[q][c] == 0) continue;
            Rat f = rows[q][c] / rows[r][c];
            for (std::size_t k = c; k < cols; ++k) rows[q][k] -= f * rows[r][k];
        }
        ++r;
    }
    return r;
}

/// Cofactor expansion; only for small matrices.
inline Rat det(const std::vector<Row>& m)
{
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    Rat total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        std::vector<Row> minor;
        for (std::size_t r = 1; r < n; ++r) {
            Row row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        Rat term = m[0][c] * det(minor);
        total += (c % 2 == 0) ? term : -term;
    }
    return total;
}

inline Row basis_bracket(const univext::LieAlgebra& L, std::size_t i, std::size_t j)
{
    Row v(L.dim(), Rat(0));
    for (std::size_t k = 0; k < L.dim(); ++k) v[k] = L.constant(i, j, k);
    return v;
}

/// K(e_i,e_j) = sum_k <e_k^*, [e_i,[e_j,e_k]]>.
inline std::vector<Row> killing(const univext::LieAlgebra& L)
{
    const std::size_t n = L.dim();
    std::vector<Row> K(n, Row(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Row inner = basis_bracket(L, j, k);
                for (std::size_t l = 0; l < n; ++l)
                    if (inner[l] != 0) K[i][j] += inner[l] * L.constant(i, l, k);
            }
    return K;
}

/// dim V_g computed in the full tensor square g (x) g: V = Sym / symmetrized
/// relations, with Sym identified with symmetric n x n tensors.
inline std::size_t dim_universal_quotient(const univext::LieAlgebra& L)
{
    const std::size_t n = L.dim();
    auto tensor = [n](const Row& x, const Row& y) {
        Row t(n * n, Rat(0));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) t[a * n + b] = x[a] * y[b];
        return t;
    };
    auto symmetrize = [n](const Row& t) {
        Row s(n * n, Rat(0));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) s[a * n + b] = t[a * n + b] + t[b * n + a];
        return s;
    };
    auto unit = [n](std::size_t i) {
        Row e(n, Rat(0));
        e[i] = 1;
        return e;
    };
    std::vector<Row> sym_basis;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) sym_basis.push_back(symmetrize(tensor(unit(a), unit(b))));
    std::vector<Row> rel;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Row t1 = tensor(basis_bracket(L, i, j), unit(k));
                Row t2 = tensor(unit(i), basis_bracket(L, j, k));
                Row d(n * n);
                for (std::size_t q = 0; q < n * n; ++q) d[q] = t1[q] - t2[q];
                rel.push_back(symmetrize(d));
            }
    return rank(sym_basis) - rank(rel);
}

/// Dimensions (Z^2, B^2) of trivial-coefficient 2-cochains, by enumerating
/// the alternating pairs and triples directly.
inline std::pair<std::size_t, std::size_t> z2_b2(const univext::LieAlgebra& L)
{
    const std::size_t n = L.dim();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    auto pair_index = [&](std::size_t a, std::size_t b) -> std::pair<std::size_t, int> {
        if (a == b) return {0, 0};
        int sign = a < b ? 1 : -1;
        if (a > b) std::swap(a, b);
        for (std::size_t p = 0; p < pairs.size(); ++p)
            if (pairs[p] == std::make_pair(a, b)) return {p, sign};
        return {0, 0};
    };
    // d omega(x,y,z) = omega([x,y],z) + omega([y,z],x) + omega([z,x],y)
    std::vector<Row> d;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Row row(pairs.size(), Rat(0));
                auto add = [&](std::size_t a, std::size_t b, std::size_t c) {
                    Row br = basis_bracket(L, a, b);
                    for (std::size_t l = 0; l < n; ++l) {
                        if (br[l] == 0) continue;
                        auto [p, s] = pair_index(l, c);
                        if (s != 0) row[p] += br[l] * s;
                    }
                };
                add(i, j, k);
                add(j, k, i);
                add(k, i, j);
                d.push_back(row);
            }
    std::size_t z2 = pairs.size() - rank(d);
    std::vector<Row> b;
    for (std::size_t l = 0; l < n; ++l) {
        Row row(pairs.size(), Rat(0));
        for (std::size_t p = 0; p < pairs.size(); ++p) row[p] = L.constant(pairs[p].first, pairs[p].second, l);
        b.push_back(row);
    }
    return {z2, rank(b)};
}

/// Small random rationals in [-range, range] with denominators 1..den.
class RatGen {
public:
    explicit RatGen(unsigned seed, long range = 5, long den = 3) : rng_(seed), num_(-range, range), den_(1, den) {}
    Rat operator()() { return Rat(num_(rng_), den_(rng_)); }
    univext::Vec vec(std::size_t n)
    {
        univext::Vec v(n);
        for (auto& x : v) x = (*this)();
        return v;
    }
    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
    std::uniform_int_distribution<long> num_;
    std::uniform_int_distribution<long> den_;
};

} // namespace oracle

#endif
