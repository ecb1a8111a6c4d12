#ifndef UNIVEXT_EXACTLA_HPP
#define UNIVEXT_EXACTLA_HPP

#include "univext/rational.hpp"

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace univext {

using Vec = std::vector<Rat>;

/// Sorted (column, value) pairs without explicit zeros.
using SparseVec = std::vector<std::pair<std::size_t, Rat>>;

inline Vec zero_vec(std::size_t n) { return Vec(n, Rat(0)); }

inline Vec unit_vec(std::size_t n, std::size_t i)
{
    Vec v(n, Rat(0));
    v.at(i) = 1;
    return v;
}

inline bool is_zero(std::span<const Rat> v)
{
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.is_zero(); });
}

inline void axpy(Vec& y, const Rat& a, std::span<const Rat> x)
{
    assert(y.size() == x.size());
    if (a.is_zero()) return;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) y[i] += a * x[i];
}

inline Vec operator+(Vec a, const Vec& b)
{
    axpy(a, Rat(1), b);
    return a;
}

inline Vec operator-(Vec a, const Vec& b)
{
    axpy(a, Rat(-1), b);
    return a;
}

inline Vec operator*(const Rat& s, Vec v)
{
    for (auto& x : v) x *= s;
    return v;
}

inline Rat dot(std::span<const Rat> a, std::span<const Rat> b)
{
    assert(a.size() == b.size());
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

inline SparseVec to_sparse(std::span<const Rat> v)
{
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.emplace_back(i, v[i]);
    return s;
}

inline Vec to_dense(const SparseVec& s, std::size_t n)
{
    Vec v = zero_vec(n);
    for (const auto& [i, x] : s) v.at(i) = x;
    return v;
}

/// y + a*x for sorted sparse vectors.
inline SparseVec sparse_axpy(const SparseVec& y, const Rat& a, const SparseVec& x)
{
    SparseVec out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
            out.push_back(y[i++]);
        } else if (i == y.size() || x[j].first < y[i].first) {
            out.emplace_back(x[j].first, a * x[j].second);
            ++j;
        } else {
            Rat v = y[i].second + a * x[j].second;
            if (!v.is_zero()) out.emplace_back(y[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

/// Dense row-major rational matrix.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    Mat(std::initializer_list<std::initializer_list<Rat>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("Mat: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Mat identity(std::size_t n)
    {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Mat from_rows(std::size_t cols, const std::vector<Vec>& rows)
    {
        Mat m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw std::invalid_argument("Mat::from_rows: length mismatch");
            std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
        }
        return m;
    }

    static Mat from_columns(std::size_t rows, const std::vector<Vec>& cols)
    {
        Mat m(rows, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c].size() != rows) throw std::invalid_argument("Mat::from_columns: length mismatch");
            for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Rat> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Rat> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    Vec row_vec(std::size_t r) const
    {
        auto s = row(r);
        return Vec(s.begin(), s.end());
    }

    Vec col_vec(std::size_t c) const
    {
        Vec v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    Mat transpose() const
    {
        Mat t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Vec apply(std::span<const Rat> x) const
    {
        if (x.size() != cols_) throw std::invalid_argument("Mat::apply: dimension mismatch");
        Vec y = zero_vec(rows_);
        for (std::size_t r = 0; r < rows_; ++r) y[r] = dot(row(r), x);
        return y;
    }

    bool is_zero() const { return univext::is_zero(std::span<const Rat>(data_)); }

    friend Mat operator*(const Mat& a, const Mat& b)
    {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Mat*: dimension mismatch");
        Mat c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rat& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Mat operator+(Mat a, const Mat& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Mat+: dimension mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend Mat operator-(Mat a, const Mat& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Mat-: dimension mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend Mat operator*(const Rat& s, Mat m)
    {
        for (auto& x : m.data_) x *= s;
        return m;
    }

    friend bool operator==(const Mat&, const Mat&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

struct RrefResult {
    Mat reduced;
    std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination. Zero rows are kept at the bottom so the shape
/// of the input is preserved.
inline RrefResult rref(Mat m)
{
    std::vector<std::size_t> pivots;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
        std::size_t p = lead_row;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != lead_row)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead_row, k));
        Rat inv = 1 / m(lead_row, c);
        for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead_row || m(r, c).is_zero()) continue;
            Rat f = m(r, c);
            for (std::size_t k = c; k < m.cols(); ++k)
                if (!m(lead_row, k).is_zero()) m(r, k) -= f * m(lead_row, k);
        }
        pivots.push_back(c);
        ++lead_row;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

inline Rat determinant(Mat m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c).is_zero()) continue;
            Rat f = m(r, c) / m(c, c);
            for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
        }
    }
    return det;
}

class SpanBuilder;

/// A linear subspace of Q^n stored by its canonical reduced row-echelon
/// basis, so equal subspaces compare equal.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

    static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim); }
    static Subspace full(std::size_t ambient_dim);
    static Subspace span(std::size_t ambient_dim, const std::vector<Vec>& vectors);
    static Subspace row_space(const Mat& m);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return pivots_.size(); }
    const Mat& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    Vec basis_vector(std::size_t r) const { return basis_.row_vec(r); }

    /// Coordinates of v in the RREF basis; nullopt when v lies outside.
    std::optional<Vec> coords(std::span<const Rat> v) const
    {
        if (v.size() != ambient_) throw std::invalid_argument("Subspace::coords: dimension mismatch");
        Vec c(dim());
        Vec rest(v.begin(), v.end());
        for (std::size_t r = 0; r < dim(); ++r) {
            c[r] = v[pivots_[r]];
            axpy(rest, -c[r], basis_.row(r));
        }
        if (!univext::is_zero(rest)) return std::nullopt;
        return c;
    }

    bool contains(std::span<const Rat> v) const { return coords(v).has_value(); }

    bool contains(const Subspace& other) const
    {
        if (other.ambient_ != ambient_) return false;
        for (std::size_t r = 0; r < other.dim(); ++r)
            if (!contains(other.basis_.row(r))) return false;
        return true;
    }

    Vec from_coords(std::span<const Rat> c) const
    {
        if (c.size() != dim()) throw std::invalid_argument("Subspace::from_coords: dimension mismatch");
        Vec v = zero_vec(ambient_);
        for (std::size_t r = 0; r < dim(); ++r) axpy(v, c[r], basis_.row(r));
        return v;
    }

    friend Subspace operator+(const Subspace& a, const Subspace& b);

    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
    }

private:
    friend class SpanBuilder;
    std::size_t ambient_ = 0;
    Mat basis_;
    std::vector<std::size_t> pivots_;
};

/// Incremental sparse echelon basis. Suited to spanning sets with many
/// redundant or block-local generators (relation subspaces).
class SpanBuilder {
public:
    explicit SpanBuilder(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t rank() const { return rows_.size(); }

    /// Returns true when v was independent of the vectors added so far.
    bool add(SparseVec v)
    {
        while (!v.empty()) {
            auto it = rows_.find(v.front().first);
            if (it == rows_.end()) {
                if (v.back().first >= ambient_) throw std::invalid_argument("SpanBuilder::add: index out of range");
                Rat inv = 1 / v.front().second;
                for (auto& [c, x] : v) x *= inv;
                std::size_t lead = v.front().first;
                rows_.emplace(lead, std::move(v));
                return true;
            }
            Rat f = -v.front().second;
            v = sparse_axpy(v, f, it->second);
        }
        return false;
    }

    bool add(std::span<const Rat> v)
    {
        if (v.size() != ambient_) throw std::invalid_argument("SpanBuilder::add: dimension mismatch");
        return add(to_sparse(v));
    }

    bool in_span(SparseVec v) const
    {
        while (!v.empty()) {
            auto it = rows_.find(v.front().first);
            if (it == rows_.end()) return false;
            Rat f = -v.front().second;
            v = sparse_axpy(v, f, it->second);
        }
        return true;
    }

    Subspace finish() const
    {
        // Back-substitute from the largest leading column down; reduced rows
        // vanish on every other pivot column, so one pass per row suffices.
        std::map<std::size_t, SparseVec> reduced;
        for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
            SparseVec row = it->second;
            for (const auto& [c, x] : it->second) {
                if (c == it->first) continue;
                auto p = reduced.find(c);
                if (p != reduced.end()) row = sparse_axpy(row, -x, p->second);
            }
            reduced.emplace(it->first, std::move(row));
        }
        Subspace s(ambient_);
        s.basis_ = Mat(reduced.size(), ambient_);
        std::size_t r = 0;
        for (const auto& [lead, row] : reduced) {
            s.pivots_.push_back(lead);
            for (const auto& [c, x] : row) s.basis_(r, c) = x;
            ++r;
        }
        return s;
    }

private:
    std::size_t ambient_;
    std::map<std::size_t, SparseVec> rows_;
};

inline Subspace Subspace::full(std::size_t ambient_dim)
{
    Subspace s(ambient_dim);
    s.basis_ = Mat::identity(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) s.pivots_.push_back(i);
    return s;
}

inline Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vec>& vectors)
{
    SpanBuilder b(ambient_dim);
    for (const auto& v : vectors) b.add(v);
    return b.finish();
}

inline Subspace Subspace::row_space(const Mat& m)
{
    SpanBuilder b(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) b.add(m.row(r));
    return b.finish();
}

inline Subspace operator+(const Subspace& a, const Subspace& b)
{
    if (a.ambient_ != b.ambient_) throw std::invalid_argument("Subspace+: ambient mismatch");
    SpanBuilder sb(a.ambient_);
    for (std::size_t r = 0; r < a.dim(); ++r) sb.add(a.basis_.row(r));
    for (std::size_t r = 0; r < b.dim(); ++r) sb.add(b.basis_.row(r));
    return sb.finish();
}

/// Null space of m, as a subspace of Q^cols.
inline Subspace kernel(const Mat& m)
{
    auto [red, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v = zero_vec(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red(r, free);
        basis.push_back(std::move(v));
    }
    return Subspace::span(m.cols(), basis);
}

/// Column space of m, as a subspace of Q^rows.
inline Subspace image(const Mat& m) { return Subspace::row_space(m.transpose()); }

/// One solution of m x = b with every free variable set to zero, or
/// nullopt when the system is inconsistent.
inline std::optional<Vec> solve(const Mat& m, std::span<const Rat> b)
{
    if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    Mat aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    auto [red, pivots] = rref(std::move(aug));
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    Vec x = zero_vec(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = red(r, m.cols());
    return x;
}

/// Inverse of a square matrix, or nullopt when it is singular.
inline std::optional<Mat> inverse(const Mat& m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
    const std::size_t n = m.rows();
    Mat aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    auto [red, pivots] = rref(std::move(aug));
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
    Mat inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = red(r, n + c);
    return inv;
}

/// A vector y with y^T m = 0 and y.b != 0 when m x = b has no solution:
/// a checkable proof of inconsistency.
inline std::optional<Vec> inconsistency_witness(const Mat& m, std::span<const Rat> b)
{
    Subspace left = kernel(m.transpose());
    for (std::size_t r = 0; r < left.dim(); ++r) {
        auto y = left.basis().row(r);
        if (!dot(y, b).is_zero()) return Vec(y.begin(), y.end());
    }
    return std::nullopt;
}

/// Q^n / W with coset representatives given by the unit vectors on the
/// non-pivot columns of W's RREF basis.
class QuotientSpace {
public:
    QuotientSpace() = default;

    QuotientSpace(std::size_t ambient_dim, Subspace denominator)
        : ambient_(ambient_dim), denominator_(std::move(denominator))
    {
        if (denominator_.ambient_dim() != ambient_)
            throw std::invalid_argument("QuotientSpace: subspace lives in a different ambient space");
        std::vector<bool> is_pivot(ambient_, false);
        for (auto p : denominator_.pivots()) is_pivot[p] = true;
        for (std::size_t c = 0; c < ambient_; ++c)
            if (!is_pivot[c]) section_cols_.push_back(c);
        projection_ = Mat(section_cols_.size(), ambient_);
        for (std::size_t s = 0; s < section_cols_.size(); ++s) {
            projection_(s, section_cols_[s]) = 1;
            for (std::size_t r = 0; r < denominator_.dim(); ++r)
                projection_(s, denominator_.pivots()[r]) = -denominator_.basis()(r, section_cols_[s]);
        }
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return section_cols_.size(); }
    const Subspace& denominator() const { return denominator_; }
    const std::vector<std::size_t>& section_cols() const { return section_cols_; }
    const Mat& projection() const { return projection_; }

    Vec project(std::span<const Rat> v) const { return projection_.apply(v); }

    /// Coset representative of quotient coordinates q.
    Vec embed(std::span<const Rat> q) const
    {
        if (q.size() != dim()) throw std::invalid_argument("QuotientSpace::embed: dimension mismatch");
        Vec v = zero_vec(ambient_);
        for (std::size_t s = 0; s < q.size(); ++s) v[section_cols_[s]] = q[s];
        return v;
    }

    Mat section_basis() const
    {
        Mat m(dim(), ambient_);
        for (std::size_t s = 0; s < dim(); ++s) m(s, section_cols_[s]) = 1;
        return m;
    }

private:
    std::size_t ambient_ = 0;
    Subspace denominator_;
    std::vector<std::size_t> section_cols_;
    Mat projection_;
};

inline QuotientSpace quotient(std::size_t ambient_dim, Subspace w) { return QuotientSpace(ambient_dim, std::move(w)); }

} // namespace univext

#endif
