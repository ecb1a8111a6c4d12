#ifndef UNIVEXT_COHOM_HPP
#define UNIVEXT_COHOM_HPP

#include "univext/calg.hpp"
#include "univext/current.hpp"
#include "univext/invforms.hpp"
#include "univext/parallel.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace univext {

inline std::size_t num_pairs(std::size_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

/// Index of the alternating pair (i,j), i < j, in lexicographic order.
inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j)
{
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Alternating bilinear map L x L -> Q^target stored on basis pairs.
class Cochain2 {
public:
    Cochain2() = default;
    Cochain2(std::size_t n, std::size_t target_dim) : n_(n), target_(target_dim), values_(n * n, zero_vec(target_dim)) {}

    std::size_t dim() const { return n_; }
    std::size_t target_dim() const { return target_; }

    const Vec& at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

    /// Sets omega(e_i,e_j) = v and omega(e_j,e_i) = -v.
    void set(std::size_t i, std::size_t j, Vec v)
    {
        if (v.size() != target_) throw std::invalid_argument("Cochain2::set: wrong target length");
        if (i == j) {
            if (!univext::is_zero(v)) throw std::invalid_argument("Cochain2::set: diagonal must vanish");
            return;
        }
        Vec neg = Rat(-1) * v;
        values_[i * n_ + j] = std::move(v);
        values_[j * n_ + i] = std::move(neg);
    }

    Vec operator()(std::span<const Rat> x, std::span<const Rat> y) const
    {
        Vec out = zero_vec(target_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (!y[j].is_zero() && i != j) axpy(out, x[i] * y[j], at(i, j));
        }
        return out;
    }

    bool is_alternating() const
    {
        for (std::size_t i = 0; i < n_; ++i) {
            if (!univext::is_zero(at(i, i))) return false;
            for (std::size_t j = i + 1; j < n_; ++j)
                if (at(i, j) != Rat(-1) * at(j, i)) return false;
        }
        return true;
    }

    bool is_zero() const
    {
        for (const auto& v : values_)
            if (!univext::is_zero(v)) return false;
        return true;
    }

    /// Coordinates (pair p, target t) -> p*target + t.
    Vec coords() const
    {
        Vec c = zero_vec(num_pairs(n_) * target_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                for (std::size_t t = 0; t < target_; ++t) c[pair_index(n_, i, j) * target_ + t] = at(i, j)[t];
        return c;
    }

    static Cochain2 from_coords(std::size_t n, std::size_t target_dim, std::span<const Rat> c)
    {
        if (c.size() != num_pairs(n) * target_dim) throw std::invalid_argument("Cochain2::from_coords: wrong length");
        Cochain2 w(n, target_dim);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                Vec v(c.begin() + static_cast<std::ptrdiff_t>(pair_index(n, i, j) * target_dim),
                      c.begin() + static_cast<std::ptrdiff_t>((pair_index(n, i, j) + 1) * target_dim));
                w.set(i, j, std::move(v));
            }
        return w;
    }

    /// theta . omega.
    Cochain2 compose(const Mat& theta) const
    {
        if (theta.cols() != target_) throw std::invalid_argument("Cochain2::compose: shape mismatch");
        Cochain2 w(n_, theta.rows());
        for (std::size_t k = 0; k < values_.size(); ++k) w.values_[k] = theta.apply(values_[k]);
        return w;
    }

    /// omega . (f, f) for a linear map f (columns are images of the domain basis).
    Cochain2 pullback(const Mat& f) const
    {
        if (f.rows() != n_) throw std::invalid_argument("Cochain2::pullback: shape mismatch");
        Cochain2 w(f.cols(), target_);
        for (std::size_t i = 0; i < f.cols(); ++i)
            for (std::size_t j = i + 1; j < f.cols(); ++j) w.set(i, j, (*this)(f.col_vec(i), f.col_vec(j)));
        return w;
    }

    friend Cochain2 operator+(Cochain2 a, const Cochain2& b)
    {
        for (std::size_t k = 0; k < a.values_.size(); ++k) axpy(a.values_[k], Rat(1), b.values_[k]);
        return a;
    }

    friend Cochain2 operator-(Cochain2 a, const Cochain2& b)
    {
        for (std::size_t k = 0; k < a.values_.size(); ++k) axpy(a.values_[k], Rat(-1), b.values_[k]);
        return a;
    }

    friend bool operator==(const Cochain2&, const Cochain2&) = default;

private:
    std::size_t n_ = 0;
    std::size_t target_ = 0;
    std::vector<Vec> values_;
};

/// eta . [_, _] for eta: L -> Q^w given as a w x n matrix.
inline Cochain2 coboundary(const LieAlgebra& L, const Mat& eta)
{
    if (eta.cols() != L.dim()) throw std::invalid_argument("coboundary: eta has the wrong number of columns");
    Cochain2 w(L.dim(), eta.rows());
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = i + 1; j < L.dim(); ++j) w.set(i, j, eta.apply(L.bracket_basis_dense(i, j)));
    return w;
}

/// omega([e_i,e_j],e_k) + omega([e_j,e_k],e_i) + omega([e_k,e_i],e_j).
inline Vec d2_at(const LieAlgebra& L, const Cochain2& w, std::size_t i, std::size_t j, std::size_t k)
{
    Vec out = zero_vec(w.target_dim());
    auto add = [&](std::size_t a, std::size_t b, std::size_t c) {
        for (const auto& [l, coeff] : L.bracket_basis(a, b)) axpy(out, coeff, w.at(l, c));
    };
    add(i, j, k);
    add(j, k, i);
    add(k, i, j);
    return out;
}

/// Full trilinear tensor d omega, entry (i*n + j)*n + k.
inline std::vector<Vec> d2(const LieAlgebra& L, const Cochain2& w)
{
    if (w.dim() != L.dim()) throw std::invalid_argument("d2: cochain and algebra dimensions differ");
    const std::size_t n = L.dim();
    std::vector<Vec> out(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) out[(i * n + j) * n + k] = d2_at(L, w, i, j, k);
    return out;
}

/// d omega = 0 on every basis triple; the sweep runs on worker threads.
inline bool is_cocycle(const LieAlgebra& L, const Cochain2& w)
{
    if (w.dim() != L.dim()) throw std::invalid_argument("is_cocycle: cochain and algebra dimensions differ");
    const std::size_t n = L.dim();
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) triples.push_back({i, j, k});
    return parallel_all_of(triples.size(), [&](std::size_t t) {
        return is_zero(d2_at(L, w, triples[t][0], triples[t][1], triples[t][2]));
    });
}

/// Matrix of the Chevalley-Eilenberg differential C^2(L,Q^w) -> C^3(L,Q^w).
inline Mat d2_matrix(const LieAlgebra& L, std::size_t w)
{
    const std::size_t n = L.dim();
    std::vector<Vec> rows;
    auto pair_coord = [n](std::size_t a, std::size_t b) -> std::pair<std::size_t, int> {
        if (a < b) return {pair_index(n, a, b), 1};
        return {pair_index(n, b, a), -1};
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vec row = zero_vec(num_pairs(n));
                auto add = [&](std::size_t a, std::size_t b, std::size_t c) {
                    for (const auto& [l, coeff] : L.bracket_basis(a, b)) {
                        if (l == c) continue;
                        auto [p, s] = pair_coord(l, c);
                        row[p] += s * coeff;
                    }
                };
                add(i, j, k);
                add(j, k, i);
                add(k, i, j);
                if (is_zero(row)) continue;
                for (std::size_t t = 0; t < w; ++t) {
                    Vec wide = zero_vec(num_pairs(n) * w);
                    for (std::size_t p = 0; p < row.size(); ++p) wide[p * w + t] = row[p];
                    rows.push_back(std::move(wide));
                }
            }
    return Mat::from_rows(num_pairs(n) * w, rows);
}

/// Matrix of eta -> eta . [_,_], with eta coordinate t*n + l for eta(e_l)_t.
inline Mat coboundary_matrix(const LieAlgebra& L, std::size_t w)
{
    const std::size_t n = L.dim();
    Mat m(num_pairs(n) * w, n * w);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (const auto& [l, c] : L.bracket_basis(i, j))
                for (std::size_t t = 0; t < w; ++t) m(pair_index(n, i, j) * w + t, t * n + l) = c;
    return m;
}

/// Z^2, B^2 and H^2 = Z^2 / B^2 of L with trivial coefficients Q^w.
/// H^2 is a quotient of Z^2-coordinates (coordinates in Z^2's RREF basis).
class CohomologySpace {
public:
    CohomologySpace(LieAlgebra L, std::size_t w) : algebra_(std::move(L)), target_(w)
    {
        const std::size_t N = num_pairs(algebra_.dim()) * w;
        Mat d = d2_matrix(algebra_, w);
        Z2_ = d.rows() == 0 ? Subspace::full(N) : kernel(d);
        B2_ = image(coboundary_matrix(algebra_, w));
        std::vector<Vec> b_in_z;
        for (std::size_t r = 0; r < B2_.dim(); ++r) {
            auto c = Z2_.coords(B2_.basis().row(r));
            if (!c) throw std::logic_error("CohomologySpace: coboundary outside the cocycle space");
            b_in_z.push_back(std::move(*c));
        }
        H2_ = quotient(Z2_.dim(), Subspace::span(Z2_.dim(), b_in_z));
    }

    const LieAlgebra& algebra() const { return algebra_; }
    std::size_t target_dim() const { return target_; }
    const Subspace& Z2() const { return Z2_; }
    const Subspace& B2() const { return B2_; }
    const QuotientSpace& H2() const { return H2_; }
    std::size_t dim() const { return H2_.dim(); }

    bool is_cocycle(const Cochain2& w) const { return Z2_.contains(check(w).coords()); }
    bool is_coboundary(const Cochain2& w) const { return B2_.contains(check(w).coords()); }

    /// H^2 coordinates of the class of a cocycle.
    Vec class_of(const Cochain2& w) const
    {
        auto c = Z2_.coords(check(w).coords());
        if (!c) throw std::invalid_argument("class_of: cochain is not a cocycle");
        return H2_.project(*c);
    }

    /// A cocycle representing the given H^2 coordinates.
    Cochain2 representative(std::span<const Rat> h) const
    {
        return Cochain2::from_coords(algebra_.dim(), target_, Z2_.from_coords(H2_.embed(h)));
    }

    /// Some eta with omega = eta . [_,_], when omega is a coboundary.
    std::optional<Mat> primitive(const Cochain2& w) const
    {
        auto x = solve(coboundary_matrix(algebra_, target_), check(w).coords());
        if (!x) return std::nullopt;
        Mat eta(target_, algebra_.dim());
        for (std::size_t t = 0; t < target_; ++t)
            for (std::size_t l = 0; l < algebra_.dim(); ++l) eta(t, l) = (*x)[t * algebra_.dim() + l];
        return eta;
    }

private:
    const Cochain2& check(const Cochain2& w) const
    {
        if (w.dim() != algebra_.dim() || w.target_dim() != target_)
            throw std::invalid_argument("cochain does not match the cohomology space");
        return w;
    }

    LieAlgebra algebra_;
    std::size_t target_;
    Subspace Z2_;
    Subspace B2_;
    QuotientSpace H2_;
};

inline CohomologySpace h2(const LieAlgebra& L, std::size_t target_dim = 1)
{
    require_valid(L);
    return CohomologySpace(L, target_dim);
}

// ---------------------------------------------------------------------------
// The universal cocycle on A (x) g: (a (x) x, b (x) y) -> kappa(x,y) (x) [a db]
// ---------------------------------------------------------------------------

class NotSemisimple : public std::runtime_error {
public:
    explicit NotSemisimple(const std::string& name) : std::runtime_error("Lie algebra '" + name + "' is not semisimple") {}
};

/// Values in V_g (x) Omega(A)/dA, coordinate v * q_dim + q.
struct MaierCocycle {
    LieAlgebra current;
    std::size_t v_dim;
    std::size_t q_dim;
    Cochain2 omega;
};

inline MaierCocycle maier_cocycle(const LieAlgebra& g, const CommAlgebra& A)
{
    if (!is_semisimple(g)) throw NotSemisimple(g.name());
    UniversalForm U = universal_form(g);
    KaehlerModule K = kaehler(A);
    QuotientSpace Q = omega_mod_dA(K);
    LieAlgebra C = current_algebra(A, g);
    const std::size_t ng = g.dim(), vd = U.dim(), qd = Q.dim();
    Cochain2 w(C.dim(), vd * qd);
    for (std::size_t a = 0; a < A.dim(); ++a)
        for (std::size_t b = 0; b < A.dim(); ++b) {
            Vec adb = Q.project(K.action(a).apply(K.d_matrix().col_vec(b)));
            for (std::size_t x = 0; x < ng; ++x)
                for (std::size_t y = 0; y < ng; ++y) {
                    std::size_t p = a * ng + x, q = b * ng + y;
                    if (q <= p) continue;
                    Vec k = U.kappa_basis(x, y);
                    Vec v = zero_vec(vd * qd);
                    for (std::size_t i = 0; i < vd; ++i)
                        for (std::size_t j = 0; j < qd; ++j) v[i * qd + j] = k[i] * adb[j];
                    w.set(p, q, std::move(v));
                }
        }
    if (!w.is_alternating()) throw std::logic_error("maier_cocycle: values are not alternating");
    if (!is_cocycle(C, w)) throw std::logic_error("maier_cocycle: cocycle identity fails");
    return {std::move(C), vd, qd, std::move(w)};
}

/// The same cocycle on Q[t,t^-1] (x) g with Omega/dA identified with Q by
/// the residue: value kappa(x,y) * res(t^m d t^n) = kappa(x,y) * n * [m+n=0].
inline Vec maier_laurent(const UniversalForm& U, const CurrentElement& a, const CurrentElement& b)
{
    Vec out = zero_vec(U.dim());
    for (const auto& [m, x] : a.terms())
        for (const auto& [n, y] : b.terms()) {
            Rat r = laurent_residue(LaurentPoly::monomial(m) * laurent_d(LaurentPoly::monomial(n)));
            if (!r.is_zero()) axpy(out, r, U.kappa(x, y));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Extension along i: A (x) g -> (A (x) g) x| g via neutral triples
// ---------------------------------------------------------------------------

/// Chooses the lambda of a neutral triple for all listed carrier elements.
using NeutralChooser = std::function<Vec(const std::vector<Vec>&)>;

/// lambda = mu = nu = declared unit (or the solved common neutral).
inline NeutralChooser unit_chooser(const CommAlgebra& A)
{
    return [A](const std::vector<Vec>& elems) { return neutral_triple(A, elems).lambda; };
}

/// Triple built by canonical solves, ignoring any declared unit.
inline NeutralChooser solving_chooser(const CommAlgebra& A)
{
    return [A](const std::vector<Vec>& elems) {
        Vec mu = solved_neutral(A, elems);
        Vec nu = solved_neutral(A, {mu});
        return solved_neutral(A, {nu});
    };
}

/// Carrier components phi_i of f = sum_i phi_i (x) v_i in A (x) g coordinates.
inline std::vector<Vec> carrier_components(const CommAlgebra& A, const LieAlgebra& g, std::span<const Rat> f)
{
    std::vector<Vec> comps;
    for (std::size_t x = 0; x < g.dim(); ++x) {
        Vec phi = zero_vec(A.dim());
        for (std::size_t a = 0; a < A.dim(); ++a) phi[a] = f[a * g.dim() + x];
        if (!is_zero(phi)) comps.push_back(std::move(phi));
    }
    return comps;
}

/// lambda (x) y in A (x) g coordinates.
inline Vec tensor_coords(const CommAlgebra& A, const LieAlgebra& g, std::span<const Rat> lambda, std::span<const Rat> y)
{
    Vec v = zero_vec(A.dim() * g.dim());
    for (std::size_t a = 0; a < A.dim(); ++a)
        for (std::size_t x = 0; x < g.dim(); ++x) v[a * g.dim() + x] = lambda[a] * y[x];
    return v;
}

/// omega((f1,y1),(f2,y2)) = omega0(f1,f2) + omega0(f1, l_f1 (x) y2) - omega0(f2, l_f2 (x) y1)
/// evaluated directly on elements, with lambda chosen for each whole f.
inline Vec extended_value(const CommAlgebra& A, const LieAlgebra& g, const Cochain2& omega0, const NeutralChooser& choose,
                          std::span<const Rat> f1, std::span<const Rat> y1, std::span<const Rat> f2, std::span<const Rat> y2)
{
    Vec out = omega0(f1, f2);
    auto mixed = [&](std::span<const Rat> f, std::span<const Rat> y) {
        auto comps = carrier_components(A, g, f);
        if (comps.empty()) return zero_vec(omega0.target_dim());
        return omega0(f, tensor_coords(A, g, choose(comps), y));
    };
    axpy(out, Rat(1), mixed(f1, y2));
    axpy(out, Rat(-1), mixed(f2, y1));
    return out;
}

/// Extends a cocycle on A (x) g to (A (x) g) x| g. Throws NotPseudoUnital
/// when the chooser cannot form a triple, std::invalid_argument when
/// omega0 is not a cocycle.
inline Cochain2 extend_cocycle(const CommAlgebra& A, const LieAlgebra& g, const Cochain2& omega0, const NeutralChooser& choose)
{
    LieAlgebra C = current_algebra(A, g);
    if (omega0.dim() != C.dim()) throw std::invalid_argument("extend_cocycle: cochain does not live on A (x) g");
    if (!is_cocycle(C, omega0)) throw std::invalid_argument("extend_cocycle: omega0 is not a cocycle");
    const std::size_t ng = g.dim(), nc = C.dim();
    Cochain2 w(nc + ng, omega0.target_dim());
    for (std::size_t p = 0; p < nc; ++p)
        for (std::size_t q = p + 1; q < nc; ++q) w.set(p, q, omega0.at(p, q));
    for (std::size_t p = 0; p < nc; ++p) {
        Vec lambda = choose({unit_vec(A.dim(), p / ng)});
        Vec f = unit_vec(nc, p);
        for (std::size_t y = 0; y < ng; ++y) w.set(p, nc + y, omega0(f, tensor_coords(A, g, lambda, unit_vec(ng, y))));
    }
    return w;
}

/// Same extension on a bracket-oracle carrier; choose returns lambda for the
/// listed carrier components of f.
template <typename Carrier>
Vec extended_value(const CurrentOracle<Carrier>& oracle,
                   const std::function<Vec(const CurrentElement&, const CurrentElement&)>& omega0,
                   const std::function<std::map<long, Rat>(const std::vector<std::map<long, Rat>>&)>& choose,
                   const SemidirectElement& a, const SemidirectElement& b)
{
    Vec out = omega0(a.f, b.f);
    auto mixed = [&](const CurrentElement& f, std::span<const Rat> y) -> Vec {
        std::vector<std::map<long, Rat>> comps;
        for (auto& c : carrier_components(f))
            if (!c.empty()) comps.push_back(std::move(c));
        return omega0(f, comps.empty() ? oracle.zero() : oracle.tensor(choose(comps), y));
    };
    Vec m1 = mixed(a.f, b.y), m2 = mixed(b.f, a.y);
    axpy(out, Rat(1), m1);
    axpy(out, Rat(-1), m2);
    return out;
}

/// omega . (i, i).
inline Cochain2 restriction_map(const Cochain2& w, const CommAlgebra& A, const LieAlgebra& g)
{
    return w.pullback(current_embedding(A, g));
}

/// The injectivity argument for H^2(i), one flag per step: if omega on
/// (A (x) g) x| g restricts to eta . [_,_], then omega' = omega - eta' . [_,_]
/// (eta' = eta on A (x) g, 0 on g) vanishes on (A (x) g)^2 and on
/// (A (x) g) x g, and omega' on g x g is a coboundary.
struct InjectivitySteps {
    bool restriction_is_coboundary = false;
    bool vanishes_on_current = false;
    bool vanishes_on_mixed = false;
    bool lie_part_is_coboundary = false;
    bool is_coboundary = false;

    bool all() const
    {
        return restriction_is_coboundary && vanishes_on_current && vanishes_on_mixed && lie_part_is_coboundary && is_coboundary;
    }
};

inline InjectivitySteps injectivity_steps(const CommAlgebra& A, const LieAlgebra& g, const Cochain2& w)
{
    InjectivitySteps st;
    LieAlgebra C = current_algebra(A, g), S = semidirect(A, g);
    const std::size_t nc = C.dim(), ng = g.dim(), t = w.target_dim();
    auto eta = CohomologySpace(C, t).primitive(restriction_map(w, A, g));
    if (!eta) return st;
    st.restriction_is_coboundary = true;
    Mat eta_s(t, nc + ng);
    for (std::size_t r = 0; r < t; ++r)
        for (std::size_t c = 0; c < nc; ++c) eta_s(r, c) = (*eta)(r, c);
    Cochain2 wp = w - coboundary(S, eta_s);
    st.vanishes_on_current = true;
    for (std::size_t p = 0; p < nc; ++p)
        for (std::size_t q = p + 1; q < nc; ++q)
            if (!is_zero(wp.at(p, q))) st.vanishes_on_current = false;
    st.vanishes_on_mixed = true;
    for (std::size_t p = 0; p < nc; ++p)
        for (std::size_t y = 0; y < ng; ++y)
            if (!is_zero(wp.at(p, nc + y))) st.vanishes_on_mixed = false;
    st.lie_part_is_coboundary = CohomologySpace(g, t).is_coboundary(wp.pullback(lie_embedding(A, g)));
    st.is_coboundary = CohomologySpace(S, t).is_coboundary(w);
    return st;
}

/// Matrix of H^2(phi): H^2(target of phi) -> H^2(source of phi), [w] -> [w . (phi, phi)].
inline Mat induced_h2_map(const CohomologySpace& from, const CohomologySpace& to, const Mat& phi)
{
    Mat m(to.dim(), from.dim());
    for (std::size_t s = 0; s < from.dim(); ++s) {
        Cochain2 rep = from.representative(unit_vec(from.dim(), s));
        Vec c = to.class_of(rep.pullback(phi));
        for (std::size_t t = 0; t < c.size(); ++t) m(t, s) = c[t];
    }
    return m;
}

inline bool is_bijective(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

/// Matrix of theta -> [theta . omega] from Lin(V, Q^w) (theta coordinate
/// t * dim V + v) to H^2(L, Q^w).
inline Mat delta_W(const CohomologySpace& HW, const Cochain2& omega)
{
    const std::size_t v = omega.target_dim(), w = HW.target_dim();
    Mat m(HW.dim(), v * w);
    for (std::size_t t = 0; t < w; ++t)
        for (std::size_t s = 0; s < v; ++s) {
            Mat theta(w, v);
            theta(t, s) = 1;
            Vec c = HW.class_of(omega.compose(theta));
            for (std::size_t r = 0; r < c.size(); ++r) m(r, t * v + s) = c[r];
        }
    return m;
}

struct UniversalityReport {
    bool perfect = false;
    std::vector<std::size_t> tested_w;
    std::vector<bool> bijective;
    std::vector<std::pair<std::size_t, std::size_t>> shapes; // (dim H^2(L,W), dim Lin(V,W))

    bool universal() const
    {
        if (!perfect) return false;
        for (bool b : bijective)
            if (!b) return false;
        return true;
    }
};

/// Perfectness plus bijectivity of delta_W for W = Q and Q^2.
inline UniversalityReport verify_universal(const LieAlgebra& L, const Cochain2& omega)
{
    if (!is_cocycle(L, omega)) throw std::invalid_argument("verify_universal: omega is not a cocycle");
    UniversalityReport r;
    r.perfect = is_perfect(L);
    for (std::size_t w : {1u, 2u}) {
        CohomologySpace HW(L, w);
        Mat m = delta_W(HW, omega);
        r.tested_w.push_back(w);
        r.bijective.push_back(is_bijective(m));
        r.shapes.emplace_back(m.rows(), m.cols());
    }
    return r;
}

// ---------------------------------------------------------------------------
// Certificates on bracket-oracle algebras
// ---------------------------------------------------------------------------

/// Proof that omega is not eta . [_,_]: the linear system for eta restricted
/// to a window is inconsistent in target coordinate `target`, and `witness`
/// y satisfies y^T M = 0 with y . rhs != 0.
struct Certificate {
    std::size_t target;
    std::vector<std::pair<std::size_t, std::size_t>> pairs; // window positions
    Mat system;
    Vec rhs;
    Vec witness;

    bool verify() const
    {
        return is_zero(system.transpose().apply(witness)) && !dot(witness, rhs).is_zero();
    }
};

template <typename Carrier>
std::optional<Certificate> non_coboundary_certificate(
    const CurrentOracle<Carrier>& oracle,
    const std::function<Vec(const CurrentElement&, const CurrentElement&)>& omega,
    const std::vector<CurrentElement>& window, std::size_t target_dim)
{
    std::map<std::pair<long, std::size_t>, std::size_t> unknown;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<CurrentElement> brackets;
    for (std::size_t a = 0; a < window.size(); ++a)
        for (std::size_t b = a + 1; b < window.size(); ++b) {
            CurrentElement br = oracle.bracket(window[a], window[b]);
            for (const auto& [k, v] : br.terms())
                for (std::size_t x = 0; x < v.size(); ++x)
                    if (!v[x].is_zero()) unknown.try_emplace({k, x}, unknown.size());
            pairs.emplace_back(a, b);
            brackets.push_back(std::move(br));
        }
    Mat M(pairs.size(), unknown.size());
    for (std::size_t r = 0; r < pairs.size(); ++r)
        for (const auto& [k, v] : brackets[r].terms())
            for (std::size_t x = 0; x < v.size(); ++x)
                if (!v[x].is_zero()) M(r, unknown.at({k, x})) = v[x];
    std::vector<Vec> values;
    for (const auto& [a, b] : pairs) values.push_back(omega(window[a], window[b]));
    for (std::size_t t = 0; t < target_dim; ++t) {
        Vec rhs;
        for (const auto& v : values) rhs.push_back(v.at(t));
        if (solve(M, rhs)) continue;
        auto y = inconsistency_witness(M, rhs);
        if (!y) throw std::logic_error("non_coboundary_certificate: inconsistent system without witness");
        return Certificate{t, pairs, M, rhs, *y};
    }
    return std::nullopt;
}

} // namespace univext

#endif
