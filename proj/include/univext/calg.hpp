#ifndef UNIVEXT_CALG_HPP
#define UNIVEXT_CALG_HPP

#include "univext/exactla.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace univext {

// ---------------------------------------------------------------------------
// Finite-dimensional commutative associative algebras
// ---------------------------------------------------------------------------

/// Commutative associative algebra over Q with products e_i e_j given by
/// structure constants. The unit, when declared, is a coefficient vector.
class CommAlgebra {
public:
    CommAlgebra() = default;
    explicit CommAlgebra(std::size_t dim, std::string name = {}) : dim_(dim), name_(std::move(name)), table_(dim * dim) {}

    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    const std::optional<Vec>& unit() const { return unit_; }

    void set_unit(Vec u)
    {
        if (u.size() != dim_) throw std::invalid_argument("set_unit: wrong length");
        unit_ = std::move(u);
    }

    /// Writes e_i e_j and e_j e_i.
    void set_product(std::size_t i, std::size_t j, std::span<const Rat> value)
    {
        if (i >= dim_ || j >= dim_ || value.size() != dim_) throw std::invalid_argument("set_product: bad index or length");
        table_[i * dim_ + j] = to_sparse(value);
        table_[j * dim_ + i] = to_sparse(value);
    }

    /// Writes e_i e_j only; for constructing counterexamples.
    void set_product_raw(std::size_t i, std::size_t j, std::span<const Rat> value)
    {
        if (i >= dim_ || j >= dim_ || value.size() != dim_) throw std::invalid_argument("set_product_raw: bad index or length");
        table_[i * dim_ + j] = to_sparse(value);
    }

    const SparseVec& product_basis(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

    Vec mul(std::span<const Rat> x, std::span<const Rat> y) const
    {
        if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("CommAlgebra::mul: dimension mismatch");
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

    /// Matrix of multiplication by x.
    Mat mul_matrix(std::span<const Rat> x) const
    {
        Mat m(dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            Vec col = mul(x, unit_vec(dim_, j));
            for (std::size_t k = 0; k < dim_; ++k) m(k, j) = col[k];
        }
        return m;
    }

private:
    std::size_t dim_ = 0;
    std::string name_;
    std::vector<SparseVec> table_;
    std::optional<Vec> unit_;
};

struct AlgViolation {
    enum class Kind { commutativity, associativity, unit };
    Kind kind;
    std::size_t i, j, k;

    std::string describe() const
    {
        static const char* names[] = {"commutativity", "associativity", "unit law"};
        return std::string(names[static_cast<int>(kind)]) + " fails at (" + std::to_string(i) + "," + std::to_string(j) +
               "," + std::to_string(k) + ")";
    }
};

inline std::optional<AlgViolation> validate_alg(const CommAlgebra& A)
{
    const std::size_t n = A.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (A.product_basis(i, j) != A.product_basis(j, i)) return AlgViolation{AlgViolation::Kind::commutativity, i, j, 0};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec ei = unit_vec(n, i), ej = unit_vec(n, j), ek = unit_vec(n, k);
                if (A.mul(A.mul(ei, ej), ek) != A.mul(ei, A.mul(ej, ek)))
                    return AlgViolation{AlgViolation::Kind::associativity, i, j, k};
            }
    if (A.unit())
        for (std::size_t i = 0; i < n; ++i)
            if (A.mul(*A.unit(), unit_vec(n, i)) != unit_vec(n, i)) return AlgViolation{AlgViolation::Kind::unit, i, 0, 0};
    return std::nullopt;
}

class InvalidAlgebra : public std::runtime_error {
public:
    explicit InvalidAlgebra(const AlgViolation& v) : std::runtime_error(v.describe()), violation(v) {}
    AlgViolation violation;
};

inline void require_valid(const CommAlgebra& A)
{
    if (auto v = validate_alg(A)) throw InvalidAlgebra(*v);
}

/// Q^n with pointwise product; unit (1,...,1).
inline CommAlgebra functions_on_points(std::size_t n)
{
    CommAlgebra A(n, "points(" + std::to_string(n) + ")");
    for (std::size_t i = 0; i < n; ++i) A.set_product(i, i, unit_vec(n, i));
    A.set_unit(Vec(n, Rat(1)));
    return A;
}

/// Q[t]/t^n with basis 1, t, ..., t^(n-1).
inline CommAlgebra truncated_poly(std::size_t n)
{
    CommAlgebra A(n, "trunc(" + std::to_string(n) + ")");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (i + j < n) A.set_product(i, j, unit_vec(n, i + j));
    if (n > 0) A.set_unit(unit_vec(n, 0));
    return A;
}

/// Q^n with identically zero product.
inline CommAlgebra zero_product(std::size_t n) { return CommAlgebra(n, "zero(" + std::to_string(n) + ")"); }

/// Q{1, x, y, xy} with x^2 = y^2 = 0.
inline CommAlgebra exterior_pair()
{
    CommAlgebra A(4, "xy");
    auto e = [](std::size_t i) { return unit_vec(4, i); };
    for (std::size_t i = 0; i < 4; ++i) A.set_product(0, i, e(i));
    A.set_product(1, 2, e(3));
    A.set_unit(e(0));
    return A;
}

/// Q + A with (l,a)(m,b) = (lm, lb + ma + ab); basis 0 is the new unit.
inline CommAlgebra unitalisation(const CommAlgebra& A)
{
    const std::size_t n = A.dim() + 1;
    CommAlgebra U(n, A.name().empty() ? std::string{} : A.name() + "_1");
    for (std::size_t i = 0; i < n; ++i) U.set_product(0, i, unit_vec(n, i));
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = i; j < A.dim(); ++j) {
            Vec v = zero_vec(n);
            for (const auto& [k, c] : A.product_basis(i, j)) v[k + 1] = c;
            U.set_product(i + 1, j + 1, v);
        }
    U.set_unit(unit_vec(n, 0));
    return U;
}

class NotPseudoUnital : public std::runtime_error {
public:
    NotPseudoUnital() : std::runtime_error("no neutral element exists for the given element(s)") {}
};

/// Common neutral element nu with nu*f = f for every listed f: the declared
/// unit when there is one, otherwise the canonical particular solution.
inline Vec common_neutral(const CommAlgebra& A, const std::vector<Vec>& elements)
{
    if (A.unit()) return *A.unit();
    const std::size_t n = A.dim();
    Mat sys(n * elements.size(), n);
    Vec rhs;
    for (std::size_t e = 0; e < elements.size(); ++e) {
        Mat col = A.mul_matrix(elements[e]); // nu -> f*nu
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) sys(e * n + r, c) = col(r, c);
        rhs.insert(rhs.end(), elements[e].begin(), elements[e].end());
    }
    auto nu = solve(sys, rhs);
    if (!nu) throw NotPseudoUnital();
    return *nu;
}

/// Same as common_neutral but ignores a declared unit.
inline Vec solved_neutral(const CommAlgebra& A, const std::vector<Vec>& elements)
{
    CommAlgebra plain = A;
    if (A.unit()) {
        plain = CommAlgebra(A.dim(), A.name());
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < A.dim(); ++j) plain.set_product_raw(i, j, to_dense(A.product_basis(i, j), A.dim()));
    }
    return common_neutral(plain, elements);
}

inline Vec neutral_for(const CommAlgebra& A, const Vec& f) { return common_neutral(A, {f}); }

template <typename Element>
struct NeutralTriple {
    Element lambda, nu, mu;
};

inline NeutralTriple<Vec> neutral_triple(const CommAlgebra& A, const std::vector<Vec>& elements)
{
    Vec mu = common_neutral(A, elements);
    Vec nu = neutral_for(A, mu);
    Vec lambda = neutral_for(A, nu);
    return {lambda, nu, mu};
}

// ---------------------------------------------------------------------------
// Finite-support sequences: A = (+)_{k>=1} Q with pointwise product
// ---------------------------------------------------------------------------

/// Element of the sequence algebra; indices start at 1 and zeros are never
/// stored. The subalgebras A_m are the sequences supported in {1..m}.
class FinSuppSeq {
public:
    FinSuppSeq() = default;

    static FinSuppSeq indicator(const std::set<long>& points)
    {
        FinSuppSeq s;
        for (long p : points) s.set(p, 1);
        return s;
    }

    /// 1_m: the indicator of {1, ..., m}.
    static FinSuppSeq chain_unit(long m)
    {
        FinSuppSeq s;
        for (long p = 1; p <= m; ++p) s.set(p, 1);
        return s;
    }

    void set(long index, const Rat& value)
    {
        if (index < 1) throw std::out_of_range("FinSuppSeq: indices start at 1");
        if (value.is_zero())
            coeffs_.erase(index);
        else
            coeffs_[index] = value;
    }

    Rat get(long index) const
    {
        auto it = coeffs_.find(index);
        return it == coeffs_.end() ? Rat(0) : it->second;
    }

    const std::map<long, Rat>& coeffs() const { return coeffs_; }
    std::set<long> support() const
    {
        std::set<long> s;
        for (const auto& [k, v] : coeffs_) s.insert(k);
        return s;
    }
    long max_index() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    friend FinSuppSeq operator*(const FinSuppSeq& a, const FinSuppSeq& b)
    {
        FinSuppSeq out;
        for (const auto& [k, v] : a.coeffs_) {
            auto it = b.coeffs_.find(k);
            if (it != b.coeffs_.end()) out.set(k, v * it->second);
        }
        return out;
    }

    friend FinSuppSeq operator+(FinSuppSeq a, const FinSuppSeq& b)
    {
        for (const auto& [k, v] : b.coeffs_) a.set(k, a.get(k) + v);
        return a;
    }

    friend bool operator==(const FinSuppSeq&, const FinSuppSeq&) = default;

private:
    std::map<long, Rat> coeffs_;
};

/// The smallest-support neutral element: the indicator of supp(f).
inline FinSuppSeq neutral_for(const FinSuppSeq& f) { return FinSuppSeq::indicator(f.support()); }

inline NeutralTriple<FinSuppSeq> neutral_triple(const std::vector<FinSuppSeq>& elements)
{
    std::set<long> pts;
    for (const auto& e : elements)
        for (long p : e.support()) pts.insert(p);
    FinSuppSeq mu = FinSuppSeq::indicator(pts);
    return {mu, mu, mu};
}

/// (1_{m+2}, 1_{m+1}, 1_m) with m the largest index in any support: the
/// triple used for the inductive-limit subalgebras A_m.
inline NeutralTriple<FinSuppSeq> chain_neutral_triple(const std::vector<FinSuppSeq>& elements)
{
    long m = 0;
    for (const auto& e : elements) m = std::max(m, e.max_index());
    return {FinSuppSeq::chain_unit(m + 2), FinSuppSeq::chain_unit(m + 1), FinSuppSeq::chain_unit(m)};
}

template <typename Element>
bool is_neutral_triple(const NeutralTriple<Element>& t, const Element& f)
{
    return t.mu * f == f && t.nu * t.mu == t.mu && t.lambda * t.nu == t.nu;
}

// ---------------------------------------------------------------------------
// Laurent polynomials Q[t, t^-1] and their 1-forms
// ---------------------------------------------------------------------------

class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly monomial(long degree, const Rat& coeff = 1)
    {
        LaurentPoly p;
        p.set(degree, coeff);
        return p;
    }

    void set(long degree, const Rat& value)
    {
        if (value.is_zero())
            coeffs_.erase(degree);
        else
            coeffs_[degree] = value;
    }

    Rat get(long degree) const
    {
        auto it = coeffs_.find(degree);
        return it == coeffs_.end() ? Rat(0) : it->second;
    }

    const std::map<long, Rat>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly out;
        for (const auto& [i, x] : a.coeffs_)
            for (const auto& [j, y] : b.coeffs_) out.set(i + j, out.get(i + j) + x * y);
        return out;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b)
    {
        for (const auto& [k, v] : b.coeffs_) a.set(k, a.get(k) + v);
        return a;
    }

    friend LaurentPoly operator*(const Rat& s, LaurentPoly a)
    {
        LaurentPoly out;
        for (const auto& [k, v] : a.coeffs_) out.set(k, s * v);
        return out;
    }

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    std::map<long, Rat> coeffs_;
};

/// sum_k c_k t^k dt.
struct LaurentOneForm {
    LaurentPoly coeff;

    friend LaurentOneForm operator*(const LaurentPoly& a, const LaurentOneForm& w) { return {a * w.coeff}; }
    friend LaurentOneForm operator+(const LaurentOneForm& a, const LaurentOneForm& b) { return {a.coeff + b.coeff}; }
    friend bool operator==(const LaurentOneForm&, const LaurentOneForm&) = default;
};

/// Formal derivative: d(t^k) = k t^(k-1) dt.
inline LaurentOneForm laurent_d(const LaurentPoly& p)
{
    LaurentOneForm w;
    for (const auto& [k, v] : p.coeffs()) w.coeff.set(k - 1, Rat(k) * v);
    return w;
}

/// res(sum a_k t^k dt) = a_{-1}. Vanishes exactly on exact forms, so it
/// identifies the quotient of 1-forms by d(Q[t,t^-1]) with Q.
inline Rat laurent_residue(const LaurentOneForm& w) { return w.coeff.get(-1); }

// ---------------------------------------------------------------------------
// Kaehler differentials Omega(A) = I / I^2, I = ker(A (x) A -> A)
// ---------------------------------------------------------------------------

class KaehlerModule {
public:
    explicit KaehlerModule(CommAlgebra A) : algebra_(std::move(A))
    {
        require_valid(algebra_);
        if (!algebra_.unit()) throw std::invalid_argument("kaehler: algebra must be unital");
        const std::size_t n = algebra_.dim();
        const std::size_t nn = n * n;

        Mat mult(n, nn);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (const auto& [k, c] : algebra_.product_basis(a, b)) mult(k, a * n + b) += c;
        ideal_ = kernel(mult);

        SpanBuilder sq(ideal_.dim());
        for (std::size_t u = 0; u < ideal_.dim(); ++u)
            for (std::size_t v = u; v < ideal_.dim(); ++v) {
                Vec w = tensor_mul(ideal_.basis_vector(u), ideal_.basis_vector(v));
                sq.add(*ideal_.coords(w));
            }
        omega_ = QuotientSpace(ideal_.dim(), sq.finish());

        d_ = Mat(omega_.dim(), n);
        for (std::size_t a = 0; a < n; ++a) {
            Vec w = to_omega(differential_tensor(unit_vec(n, a)));
            for (std::size_t s = 0; s < w.size(); ++s) d_(s, a) = w[s];
        }
        for (std::size_t a = 0; a < n; ++a) {
            Mat act(omega_.dim(), omega_.dim());
            for (std::size_t s = 0; s < omega_.dim(); ++s) {
                Vec lifted = ideal_.from_coords(omega_.embed(unit_vec(omega_.dim(), s)));
                Vec w = to_omega(left_mul(unit_vec(n, a), lifted));
                for (std::size_t t = 0; t < w.size(); ++t) act(t, s) = w[t];
            }
            action_.push_back(std::move(act));
        }
    }

    const CommAlgebra& algebra() const { return algebra_; }
    /// I as a subspace of A (x) A, coordinate a*n+b for e_a (x) e_b.
    const Subspace& ideal() const { return ideal_; }
    /// Omega(A) as a quotient of I-coordinates.
    const QuotientSpace& omega() const { return omega_; }
    std::size_t dim() const { return omega_.dim(); }

    /// Matrix of d: A -> Omega(A).
    const Mat& d_matrix() const { return d_; }
    Vec d(std::span<const Rat> a) const { return d_.apply(a); }

    /// Matrix of e_a acting on Omega(A).
    const Mat& action(std::size_t a) const { return action_.at(a); }
    Mat action_of(std::span<const Rat> a) const
    {
        Mat m(dim(), dim());
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_zero()) m = m + a[i] * action_[i];
        return m;
    }

    /// Class of a (x) 1 - 1 (x) a in A (x) A coordinates.
    Vec differential_tensor(std::span<const Rat> a) const
    {
        const std::size_t n = algebra_.dim();
        const Vec& one = *algebra_.unit();
        Vec t = zero_vec(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (a[i].is_zero() || one[k].is_zero()) continue;
                t[i * n + k] += a[i] * one[k];
                t[k * n + i] -= a[i] * one[k];
            }
        return t;
    }

    /// Omega coordinates of an element of I given in A (x) A coordinates.
    Vec to_omega(std::span<const Rat> tensor) const
    {
        auto c = ideal_.coords(tensor);
        if (!c) throw std::invalid_argument("KaehlerModule::to_omega: tensor not in the multiplication kernel");
        return omega_.project(*c);
    }

    Vec tensor_mul(std::span<const Rat> u, std::span<const Rat> v) const
    {
        const std::size_t n = algebra_.dim();
        Vec w = zero_vec(n * n);
        for (std::size_t p = 0; p < n * n; ++p) {
            if (u[p].is_zero()) continue;
            for (std::size_t q = 0; q < n * n; ++q) {
                if (v[q].is_zero()) continue;
                Rat s = u[p] * v[q];
                const auto& left = algebra_.product_basis(p / n, q / n);
                const auto& right = algebra_.product_basis(p % n, q % n);
                for (const auto& [k1, c1] : left)
                    for (const auto& [k2, c2] : right) w[k1 * n + k2] += s * c1 * c2;
            }
        }
        return w;
    }

private:
    Vec left_mul(std::span<const Rat> a, std::span<const Rat> u) const
    {
        const std::size_t n = algebra_.dim();
        Vec w = zero_vec(n * n);
        for (std::size_t p = 0; p < n * n; ++p) {
            if (u[p].is_zero()) continue;
            for (std::size_t i = 0; i < n; ++i) {
                if (a[i].is_zero()) continue;
                for (const auto& [k, c] : algebra_.product_basis(i, p / n)) w[k * n + p % n] += a[i] * u[p] * c;
            }
        }
        return w;
    }

    CommAlgebra algebra_;
    Subspace ideal_;
    QuotientSpace omega_;
    Mat d_;
    std::vector<Mat> action_;
};

inline KaehlerModule kaehler(const CommAlgebra& A) { return KaehlerModule(A); }

/// Omega(A) / span{d(e_i)}.
inline QuotientSpace omega_mod_dA(const KaehlerModule& K)
{
    std::vector<Vec> images;
    for (std::size_t a = 0; a < K.algebra().dim(); ++a) images.push_back(K.d_matrix().col_vec(a));
    return quotient(K.dim(), Subspace::span(K.dim(), images));
}

class LeibnizViolation : public std::runtime_error {
public:
    LeibnizViolation(std::size_t i, std::size_t j)
        : std::runtime_error("map is not a derivation: Leibniz rule fails on basis pair (" + std::to_string(i) + "," +
                             std::to_string(j) + ")"),
          i(i), j(j)
    {
    }
    std::size_t i, j;
};

/// An A-module structure on Q^k: rho[a] is the action of e_a.
struct AModule {
    std::size_t dim;
    std::vector<Mat> rho;

    Mat act(const CommAlgebra& A, std::span<const Rat> a) const
    {
        Mat m(dim, dim);
        for (std::size_t i = 0; i < A.dim(); ++i)
            if (!a[i].is_zero()) m = m + a[i] * rho[i];
        return m;
    }
};

inline void require_module(const CommAlgebra& A, const AModule& F)
{
    if (F.rho.size() != A.dim()) throw std::invalid_argument("module action has the wrong number of matrices");
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j)
            if (F.rho[i] * F.rho[j] != F.act(A, to_dense(A.product_basis(i, j), A.dim())))
                throw std::invalid_argument("module action is not multiplicative");
    if (A.unit() && F.act(A, *A.unit()) != Mat::identity(F.dim)) throw std::invalid_argument("unit does not act as identity");
}

/// The module Omega(A) itself.
inline AModule as_module(const KaehlerModule& K)
{
    AModule F{K.dim(), {}};
    for (std::size_t a = 0; a < K.algebra().dim(); ++a) F.rho.push_back(K.action(a));
    return F;
}

struct UniversalFactor {
    Mat phi;     // F.dim x Omega.dim
    bool unique; // d(A) generates Omega(A) as an A-module
};

/// Given a derivation T: A -> F (columns T e_a), the module map phi with
/// phi . d = T. Throws LeibnizViolation when T is not a derivation.
inline UniversalFactor kaehler_universal_check(const KaehlerModule& K, const Mat& T, const AModule& F)
{
    const CommAlgebra& A = K.algebra();
    const std::size_t n = A.dim();
    if (T.rows() != F.dim || T.cols() != n) throw std::invalid_argument("kaehler_universal_check: T has the wrong shape");
    require_module(A, F);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Vec lhs = T.apply(to_dense(A.product_basis(i, j), n));
            Vec rhs = F.rho[i].apply(T.col_vec(j)) + F.rho[j].apply(T.col_vec(i));
            if (lhs != rhs) throw LeibnizViolation(i, j);
        }
    // phi(a . d b) = a . T(b) for all basis a, b
    std::vector<Vec> generators;
    std::vector<Vec> targets;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            generators.push_back(K.action(a).apply(K.d_matrix().col_vec(b)));
            targets.push_back(F.rho[a].apply(T.col_vec(b)));
        }
    Mat W = Mat::from_rows(K.dim(), generators);
    Mat phi(F.dim, K.dim());
    for (std::size_t r = 0; r < F.dim; ++r) {
        Vec rhs;
        for (const auto& t : targets) rhs.push_back(t[r]);
        auto x = solve(W, rhs);
        if (!x) throw std::logic_error("kaehler_universal_check: no module map exists for a valid derivation");
        for (std::size_t c = 0; c < K.dim(); ++c) phi(r, c) = (*x)[c];
    }
    return {std::move(phi), rank(W) == K.dim()};
}

} // namespace univext

#endif
