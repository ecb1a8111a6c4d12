#ifndef UNIVEXT_LIEALG_HPP
#define UNIVEXT_LIEALG_HPP

#include "univext/exactla.hpp"

#include <cstddef>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

namespace univext {

/// Finite-dimensional Lie algebra over Q given by structure constants
/// [e_i, e_j] = sum_k c[i][j][k] e_k.
///
/// Construction does not enforce the axioms; call validate() for that.
/// set_bracket() writes [e_i,e_j] and the antisymmetric partner [e_j,e_i].
class LieAlgebra {
public:
    LieAlgebra() = default;
    explicit LieAlgebra(std::size_t dim, std::string name = {})
        : dim_(dim), name_(std::move(name)), table_(dim * dim)
    {
    }

    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    void set_bracket(std::size_t i, std::size_t j, std::span<const Rat> value)
    {
        check_index(i);
        check_index(j);
        if (value.size() != dim_) throw std::invalid_argument("set_bracket: value has wrong length");
        table_[i * dim_ + j] = to_sparse(value);
        Vec neg(value.begin(), value.end());
        for (auto& x : neg) x = -x;
        table_[j * dim_ + i] = to_sparse(neg);
    }

    /// Writes a single constant without touching [e_j,e_i]. Used to build
    /// deliberately malformed tables.
    void set_constant_raw(std::size_t i, std::size_t j, std::size_t k, const Rat& value)
    {
        check_index(i);
        check_index(j);
        check_index(k);
        Vec v = to_dense(table_[i * dim_ + j], dim_);
        v[k] = value;
        table_[i * dim_ + j] = to_sparse(v);
    }

    const SparseVec& bracket_basis(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

    Rat constant(std::size_t i, std::size_t j, std::size_t k) const
    {
        for (const auto& [c, x] : table_[i * dim_ + j])
            if (c == k) return x;
        return 0;
    }

    Vec bracket(std::span<const Rat> x, std::span<const Rat> y) const
    {
        if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("bracket: dimension mismatch");
        Vec out = zero_vec(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (y[j].is_zero()) continue;
                Rat s = x[i] * y[j];
                for (const auto& [k, c] : table_[i * dim_ + j]) out[k] += s * c;
            }
        }
        return out;
    }

    Vec bracket_basis_dense(std::size_t i, std::size_t j) const { return to_dense(bracket_basis(i, j), dim_); }

    /// Matrix of ad(x) = [x, _].
    Mat ad(std::span<const Rat> x) const
    {
        Mat m(dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            Vec col = bracket(x, unit_vec(dim_, j));
            for (std::size_t k = 0; k < dim_; ++k) m(k, j) = col[k];
        }
        return m;
    }

    Mat ad_basis(std::size_t i) const { return ad(unit_vec(dim_, i)); }

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b)
    {
        return a.dim_ == b.dim_ && a.table_ == b.table_;
    }

private:
    void check_index(std::size_t i) const
    {
        if (i >= dim_) throw std::out_of_range("Lie algebra basis index out of range");
    }

    std::size_t dim_ = 0;
    std::string name_;
    std::vector<SparseVec> table_;
};

struct Violation {
    enum class Kind { antisymmetry, jacobi };
    Kind kind;
    std::size_t i, j, k;

    std::string describe() const
    {
        std::string idx = "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
        return kind == Kind::antisymmetry ? "antisymmetry fails at " + idx : "Jacobi identity fails on triple " + idx;
    }
};

/// First failing axiom instance on basis triples, or nullopt.
inline std::optional<Violation> validate(const LieAlgebra& L)
{
    const std::size_t n = L.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (L.constant(i, j, k) != -L.constant(j, i, k))
                    return Violation{Violation::Kind::antisymmetry, i, j, k};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vec ei = unit_vec(n, i), ej = unit_vec(n, j), ek = unit_vec(n, k);
                Vec s = L.bracket(L.bracket(ei, ej), ek) + L.bracket(L.bracket(ej, ek), ei) + L.bracket(L.bracket(ek, ei), ej);
                if (!is_zero(s)) return Violation{Violation::Kind::jacobi, i, j, k};
            }
    return std::nullopt;
}

class InvalidLieAlgebra : public std::runtime_error {
public:
    explicit InvalidLieAlgebra(const Violation& v) : std::runtime_error(v.describe()), violation(v) {}
    Violation violation;
};

inline void require_valid(const LieAlgebra& L)
{
    if (auto v = validate(L)) throw InvalidLieAlgebra(*v);
}

/// K(x,y) = tr(ad x . ad y).
inline Mat killing_form(const LieAlgebra& L)
{
    const std::size_t n = L.dim();
    std::vector<Mat> ads;
    for (std::size_t i = 0; i < n; ++i) ads.push_back(L.ad_basis(i));
    Mat K(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Rat t = 0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) t += ads[i](a, b) * ads[j](b, a);
            K(i, j) = t;
            K(j, i) = t;
        }
    return K;
}

inline Subspace derived_subalgebra(const LieAlgebra& L)
{
    SpanBuilder b(L.dim());
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = i + 1; j < L.dim(); ++j)
            if (!L.bracket_basis(i, j).empty()) b.add(L.bracket_basis(i, j));
    return b.finish();
}

inline bool is_perfect(const LieAlgebra& L) { return derived_subalgebra(L).dim() == L.dim(); }

/// Cartan's criterion.
inline bool is_semisimple(const LieAlgebra& L) { return L.dim() > 0 && rank(killing_form(L)) == L.dim(); }

/// Linear maps f with f([x,y]) = [f(x),y], as a subspace of the n*n
/// matrix space (row-major: coordinate r*n+c holds f(r,c)).
inline Subspace centroid(const LieAlgebra& L)
{
    const std::size_t n = L.dim();
    std::vector<Vec> eqs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec row = zero_vec(n * n);
                for (const auto& [l, c] : L.bracket_basis(i, j)) row[k * n + l] += c;
                for (std::size_t a = 0; a < n; ++a) {
                    Rat c = L.constant(a, j, k);
                    if (!c.is_zero()) row[a * n + i] -= c;
                }
                if (!is_zero(row)) eqs.push_back(std::move(row));
            }
    if (eqs.empty()) return Subspace::full(n * n);
    return kernel(Mat::from_rows(n * n, eqs));
}

inline Mat centroid_element(const Subspace& c, std::size_t r, std::size_t n)
{
    Mat f(n, n);
    auto row = c.basis().row(r);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) f(a, b) = row[a * n + b];
    return f;
}

inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b)
{
    const std::size_t n = a.dim() + b.dim();
    std::string name = a.name().empty() || b.name().empty() ? std::string{} : a.name() + "+" + b.name();
    LieAlgebra s(n, name);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j) {
            Vec v = zero_vec(n);
            for (const auto& [k, c] : a.bracket_basis(i, j)) v[k] = c;
            s.set_bracket(i, j, v);
        }
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = i + 1; j < b.dim(); ++j) {
            Vec v = zero_vec(n);
            for (const auto& [k, c] : b.bracket_basis(i, j)) v[a.dim() + k] = c;
            s.set_bracket(a.dim() + i, a.dim() + j, v);
        }
    return s;
}

/// Linear map between Lie algebras (matrix is codomain.dim x domain.dim),
/// checked to preserve brackets on basis pairs at construction.
class LieHom {
public:
    static std::optional<std::pair<std::size_t, std::size_t>> first_failure(const LieAlgebra& domain,
                                                                           const LieAlgebra& codomain, const Mat& m)
    {
        if (m.rows() != codomain.dim() || m.cols() != domain.dim())
            throw std::invalid_argument("LieHom: matrix shape does not match the algebras");
        for (std::size_t i = 0; i < domain.dim(); ++i)
            for (std::size_t j = i + 1; j < domain.dim(); ++j) {
                Vec lhs = m.apply(domain.bracket_basis_dense(i, j));
                Vec rhs = codomain.bracket(m.col_vec(i), m.col_vec(j));
                if (lhs != rhs) return std::make_pair(i, j);
            }
        return std::nullopt;
    }

    LieHom(LieAlgebra domain, LieAlgebra codomain, Mat matrix)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix))
    {
        if (auto f = first_failure(domain_, codomain_, matrix_))
            throw std::invalid_argument("not a Lie algebra homomorphism: fails on basis pair (" +
                                        std::to_string(f->first) + "," + std::to_string(f->second) + ")");
    }

    static LieHom identity(const LieAlgebra& L) { return LieHom(L, L, Mat::identity(L.dim())); }
    static LieHom zero(const LieAlgebra& from, const LieAlgebra& to) { return LieHom(from, to, Mat(to.dim(), from.dim())); }

    const LieAlgebra& domain() const { return domain_; }
    const LieAlgebra& codomain() const { return codomain_; }
    const Mat& matrix() const { return matrix_; }

    Vec operator()(std::span<const Rat> x) const { return matrix_.apply(x); }

    bool is_bijective() const { return matrix_.rows() == matrix_.cols() && rank(matrix_) == matrix_.rows(); }

    /// this after other.
    LieHom compose(const LieHom& other) const { return LieHom(other.domain_, codomain_, matrix_ * other.matrix_); }

private:
    LieAlgebra domain_;
    LieAlgebra codomain_;
    Mat matrix_;
};

/// exp(ad x) for ad-nilpotent x; a rational inner automorphism.
inline Mat exp_ad(const LieAlgebra& L, std::span<const Rat> x)
{
    const std::size_t n = L.dim();
    Mat adx = L.ad(x);
    Mat term = Mat::identity(n);
    Mat sum = term;
    for (std::size_t k = 1; k <= n; ++k) {
        term = Rat(1, static_cast<long>(k)) * (adx * term);
        if (term.is_zero()) return sum;
        sum = sum + term;
    }
    if (!(adx * term).is_zero()) throw std::invalid_argument("exp_ad: ad(x) is not nilpotent");
    return sum;
}

/// Lie algebra spanned by the given square matrices under the commutator.
/// Brackets are expressed in the basis by solving; throws if the span is
/// not closed.
inline LieAlgebra from_matrix_basis(const std::vector<Mat>& basis, std::string name)
{
    const std::size_t n = basis.size();
    const std::size_t m = basis.at(0).rows();
    std::vector<Vec> cols;
    for (const auto& b : basis) {
        Vec v;
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) v.push_back(b(r, c));
        cols.push_back(std::move(v));
    }
    Mat coords = Mat::from_columns(m * m, cols);
    LieAlgebra L(n, std::move(name));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Mat comm = basis[i] * basis[j] - basis[j] * basis[i];
            Vec flat;
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < m; ++c) flat.push_back(comm(r, c));
            auto x = solve(coords, flat);
            if (!x) throw std::invalid_argument("from_matrix_basis: span not closed under the commutator");
            L.set_bracket(i, j, *x);
        }
    return L;
}

inline Mat matrix_unit(std::size_t n, std::size_t r, std::size_t c)
{
    Mat m(n, n);
    m(r, c) = 1;
    return m;
}

/// Basis (e, f, h) with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
inline LieAlgebra sl2()
{
    LieAlgebra L(3, "sl2");
    L.set_bracket(2, 0, Vec{2, 0, 0});
    L.set_bracket(2, 1, Vec{0, -2, 0});
    L.set_bracket(0, 1, Vec{0, 0, 1});
    return L;
}

/// Basis E12, E13, E21, E23, E31, E32, E11-E22, E22-E33.
inline std::vector<Mat> sl3_matrices()
{
    return {matrix_unit(3, 0, 1), matrix_unit(3, 0, 2), matrix_unit(3, 1, 0), matrix_unit(3, 1, 2),
            matrix_unit(3, 2, 0), matrix_unit(3, 2, 1), matrix_unit(3, 0, 0) - matrix_unit(3, 1, 1),
            matrix_unit(3, 1, 1) - matrix_unit(3, 2, 2)};
}

inline LieAlgebra sl3() { return from_matrix_basis(sl3_matrices(), "sl3"); }

/// [x,y] = z, [y,z] = x, [z,x] = y.
inline LieAlgebra so3()
{
    LieAlgebra L(3, "so3");
    L.set_bracket(0, 1, Vec{0, 0, 1});
    L.set_bracket(1, 2, Vec{1, 0, 0});
    L.set_bracket(2, 0, Vec{0, 1, 0});
    return L;
}

/// Basis (x, y, z) with [x,y] = z central.
inline LieAlgebra heisenberg3()
{
    LieAlgebra L(3, "heisenberg3");
    L.set_bracket(0, 1, Vec{0, 0, 1});
    return L;
}

inline LieAlgebra abelian(std::size_t n) { return LieAlgebra(n, "abelian(" + std::to_string(n) + ")"); }

inline LieAlgebra sl2_plus_sl2()
{
    LieAlgebra L = direct_sum(sl2(), sl2());
    L.set_name("sl2_plus_sl2");
    return L;
}

class UnknownAlgebra : public std::invalid_argument {
public:
    explicit UnknownAlgebra(const std::string& name) : std::invalid_argument("unknown catalog algebra '" + name + "'") {}
};

/// Names: sl2, sl3, so3, heisenberg3, abelian(n), sl2_plus_sl2.
inline LieAlgebra catalog(const std::string& name)
{
    if (name == "sl2") return sl2();
    if (name == "sl3") return sl3();
    if (name == "so3") return so3();
    if (name == "heisenberg3") return heisenberg3();
    if (name == "sl2_plus_sl2") return sl2_plus_sl2();
    static const std::regex abelian_re(R"(abelian\((\d{1,4})\))");
    std::smatch m;
    if (std::regex_match(name, m, abelian_re)) return abelian(std::stoul(m[1].str()));
    throw UnknownAlgebra(name);
}

inline std::vector<std::string> catalog_names()
{
    return {"sl2", "sl3", "so3", "heisenberg3", "abelian(1)", "abelian(2)", "abelian(3)", "abelian(4)", "sl2_plus_sl2"};
}

} // namespace univext

#endif
