#ifndef UNIVEXT_INVFORMS_HPP
#define UNIVEXT_INVFORMS_HPP

#include "univext/exactla.hpp"
#include "univext/liealg.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace univext {

/// Coordinates on S^2(g): slot(i,j) = slot(j,i) indexes e_i v e_j.
class SymSquare {
public:
    SymSquare() = default;
    explicit SymSquare(std::size_t n) : n_(n) {}

    std::size_t base_dim() const { return n_; }
    std::size_t dim() const { return n_ * (n_ + 1) / 2; }

    std::size_t slot(std::size_t i, std::size_t j) const
    {
        if (i > j) std::swap(i, j);
        if (j >= n_) throw std::out_of_range("SymSquare::slot: index out of range");
        // rows 0..i-1 contribute n, n-1, ..., n-i+1 slots each
        return i * n_ - i * (i - 1) / 2 + (j - i);
    }

    std::pair<std::size_t, std::size_t> pair_of(std::size_t s) const
    {
        for (std::size_t i = 0; i < n_; ++i) {
            std::size_t row = n_ - i;
            if (s < row) return {i, i + s};
            s -= row;
        }
        throw std::out_of_range("SymSquare::pair_of: slot out of range");
    }

    Vec sym(std::span<const Rat> x, std::span<const Rat> y) const
    {
        Vec v = zero_vec(dim());
        for (std::size_t i = 0; i < n_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (!y[j].is_zero()) v[slot(i, j)] += x[i] * y[j];
        }
        return v;
    }

private:
    std::size_t n_ = 0;
};

/// Symmetric bilinear map g x g -> Q^target, stored on basis pairs.
class BilinearForm {
public:
    BilinearForm() = default;
    BilinearForm(std::size_t n, std::size_t target_dim) : n_(n), target_(target_dim), values_(n * n, zero_vec(target_dim)) {}

    /// Scalar form from its Gram matrix.
    static BilinearForm from_matrix(const Mat& m)
    {
        if (m.rows() != m.cols()) throw std::invalid_argument("BilinearForm::from_matrix: not square");
        BilinearForm b(m.rows(), 1);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) b.values_[i * b.n_ + j][0] = m(i, j);
        return b;
    }

    std::size_t dim() const { return n_; }
    std::size_t target_dim() const { return target_; }

    const Vec& at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

    /// Writes both (i,j) and (j,i).
    void set(std::size_t i, std::size_t j, Vec v)
    {
        if (v.size() != target_) throw std::invalid_argument("BilinearForm::set: wrong target length");
        values_[j * n_ + i] = v;
        values_[i * n_ + j] = std::move(v);
    }

    bool is_symmetric() const
    {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    Vec operator()(std::span<const Rat> x, std::span<const Rat> y) const
    {
        Vec out = zero_vec(target_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (!y[j].is_zero()) axpy(out, x[i] * y[j], at(i, j));
        }
        return out;
    }

    /// theta . beta for a linear map theta: Q^target -> Q^k.
    BilinearForm compose(const Mat& theta) const
    {
        BilinearForm b(n_, theta.rows());
        for (std::size_t i = 0; i < n_ * n_; ++i) b.values_[i] = theta.apply(values_[i]);
        return b;
    }

    friend bool operator==(const BilinearForm&, const BilinearForm&) = default;

private:
    std::size_t n_ = 0;
    std::size_t target_ = 0;
    std::vector<Vec> values_;
};

class NotInvariant : public std::runtime_error {
public:
    NotInvariant() : std::runtime_error("bilinear form is not invariant (or not symmetric)") {}
};

/// beta([e_i,e_j], e_k) == beta(e_i, [e_j,e_k]) on every basis triple.
inline bool is_invariant(const LieAlgebra& L, const BilinearForm& beta)
{
    if (beta.dim() != L.dim()) throw std::invalid_argument("is_invariant: form and algebra dimensions differ");
    if (!beta.is_symmetric()) throw std::invalid_argument("is_invariant: form is not symmetric");
    const std::size_t n = L.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec lhs = zero_vec(beta.target_dim());
                for (const auto& [l, c] : L.bracket_basis(i, j)) axpy(lhs, c, beta.at(l, k));
                for (const auto& [l, c] : L.bracket_basis(j, k)) axpy(lhs, -c, beta.at(i, l));
                if (!is_zero(lhs)) return false;
            }
    return true;
}

/// Sparse generator [e_i,e_j] v e_k - e_i v [e_j,e_k] of the relation space.
inline SparseVec invariance_relation(const LieAlgebra& L, const SymSquare& S, std::size_t i, std::size_t j, std::size_t k)
{
    std::map<std::size_t, Rat> acc;
    for (const auto& [l, c] : L.bracket_basis(i, j)) acc[S.slot(l, k)] += c;
    for (const auto& [l, c] : L.bracket_basis(j, k)) acc[S.slot(i, l)] -= c;
    SparseVec v;
    for (auto& [s, x] : acc)
        if (!x.is_zero()) v.emplace_back(s, std::move(x));
    return v;
}

/// The universal invariant symmetric bilinear form (V_g, kappa_g):
/// V_g = S^2(g) / span{[x,y] v z - x v [y,z]}, kappa(x,y) = [x v y].
class UniversalForm {
public:
    explicit UniversalForm(LieAlgebra L) : algebra_(std::move(L)), sym_(algebra_.dim())
    {
        const std::size_t n = algebra_.dim();
        SpanBuilder rel(sym_.dim());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (algebra_.bracket_basis(i, j).empty()) {
                    // only the second term can survive
                    bool any = false;
                    for (std::size_t k = 0; k < n && !any; ++k) any = !algebra_.bracket_basis(j, k).empty();
                    if (!any) continue;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    SparseVec r = invariance_relation(algebra_, sym_, i, j, k);
                    if (!r.empty()) rel.add(std::move(r));
                }
            }
        relations_ = rel.finish();
        V_ = QuotientSpace(sym_.dim(), relations_);
    }

    const LieAlgebra& algebra() const { return algebra_; }
    const SymSquare& sym() const { return sym_; }
    const Subspace& relations() const { return relations_; }
    const QuotientSpace& V() const { return V_; }
    std::size_t dim() const { return V_.dim(); }

    Vec kappa_basis(std::size_t i, std::size_t j) const { return V_.projection().col_vec(sym_.slot(i, j)); }

    Vec kappa(std::span<const Rat> x, std::span<const Rat> y) const { return V_.project(sym_.sym(x, y)); }

    /// kappa as a BilinearForm with target V_g.
    BilinearForm as_form() const
    {
        const std::size_t n = algebra_.dim();
        BilinearForm b(n, dim());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) b.set(i, j, kappa_basis(i, j));
        return b;
    }

    /// Basis pair (i,j) whose kappa value is the s-th unit vector of V_g.
    std::pair<std::size_t, std::size_t> section_pair(std::size_t s) const { return sym_.pair_of(V_.section_cols().at(s)); }

private:
    LieAlgebra algebra_;
    SymSquare sym_;
    Subspace relations_;
    QuotientSpace V_;
};

inline UniversalForm universal_form(const LieAlgebra& L)
{
    require_valid(L);
    return UniversalForm(L);
}

/// The unique psi: V_g -> Q^target with psi . kappa = beta.
/// Throws NotInvariant when beta does not factor.
inline Mat factor_form(const UniversalForm& U, const BilinearForm& beta)
{
    if (beta.dim() != U.algebra().dim()) throw std::invalid_argument("factor_form: dimension mismatch");
    if (!beta.is_symmetric() || !is_invariant(U.algebra(), beta)) throw NotInvariant();
    Mat psi(beta.target_dim(), U.dim());
    for (std::size_t s = 0; s < U.dim(); ++s) {
        auto [i, j] = U.section_pair(s);
        const Vec& v = beta.at(i, j);
        for (std::size_t t = 0; t < v.size(); ++t) psi(t, s) = v[t];
    }
    const std::size_t n = U.algebra().dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (psi.apply(U.kappa_basis(i, j)) != beta.at(i, j)) throw NotInvariant();
    return psi;
}

/// Basis of the scalar invariant symmetric bilinear forms on L, obtained by
/// solving the invariance equations directly on the Gram entries.
inline std::vector<BilinearForm> invariant_forms(const LieAlgebra& L)
{
    const std::size_t n = L.dim();
    SymSquare S(n);
    std::vector<Vec> eqs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec row = zero_vec(S.dim());
                for (const auto& [l, c] : L.bracket_basis(i, j)) row[S.slot(l, k)] += c;
                for (const auto& [l, c] : L.bracket_basis(j, k)) row[S.slot(i, l)] -= c;
                if (!is_zero(row)) eqs.push_back(std::move(row));
            }
    Subspace sol = eqs.empty() ? Subspace::full(S.dim()) : kernel(Mat::from_rows(S.dim(), eqs));
    std::vector<BilinearForm> forms;
    for (std::size_t r = 0; r < sol.dim(); ++r) {
        BilinearForm b(n, 1);
        for (std::size_t s = 0; s < S.dim(); ++s) {
            auto [i, j] = S.pair_of(s);
            b.set(i, j, Vec{sol.basis()(r, s)});
        }
        forms.push_back(std::move(b));
    }
    return forms;
}

/// f_kappa: V_h -> V_g with f_kappa(kappa_h(x,y)) = kappa_g(f x, f y).
inline Mat induced_map(const LieHom& f, const UniversalForm& Uh, const UniversalForm& Ug)
{
    if (!(f.domain() == Uh.algebra()) || !(f.codomain() == Ug.algebra()))
        throw std::invalid_argument("induced_map: universal forms do not match the homomorphism");
    Mat fk(Ug.dim(), Uh.dim());
    for (std::size_t s = 0; s < Uh.dim(); ++s) {
        auto [i, j] = Uh.section_pair(s);
        Vec v = Ug.kappa(f.matrix().col_vec(i), f.matrix().col_vec(j));
        for (std::size_t t = 0; t < v.size(); ++t) fk(t, s) = v[t];
    }
    const std::size_t n = Uh.algebra().dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (fk.apply(Uh.kappa_basis(i, j)) != Ug.kappa(f.matrix().col_vec(i), f.matrix().col_vec(j)))
                throw std::logic_error("induced_map: defining system inconsistent; the homomorphism is invalid");
    return fk;
}

/// True when {kappa(e_i,e_j)} spans V_g, which makes factorizations unique.
inline bool kappa_image_spans(const UniversalForm& U)
{
    SpanBuilder b(U.dim());
    const std::size_t n = U.algebra().dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) b.add(U.kappa_basis(i, j));
    return b.rank() == U.dim();
}

} // namespace univext

#endif
