#ifndef UNIVEXT_CURRENT_HPP
#define UNIVEXT_CURRENT_HPP

#include "univext/calg.hpp"
#include "univext/liealg.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace univext {

// ---------------------------------------------------------------------------
// Finite-dimensional carriers: explicit structure constants.
// Basis of A (x) g is a_i (x) x_j at index i*dim(g) + j. The semidirect
// product (A (x) g) x| g appends the basis of g after that block.
// ---------------------------------------------------------------------------

/// A (x) g with [a (x) x, b (x) y] = ab (x) [x,y].
inline LieAlgebra current_algebra(const CommAlgebra& A, const LieAlgebra& g)
{
    const std::size_t na = A.dim(), ng = g.dim(), n = na * ng;
    LieAlgebra L(n, A.name() + "(x)" + g.name());
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < ng; ++j)
            for (std::size_t k = 0; k < na; ++k)
                for (std::size_t l = 0; l < ng; ++l) {
                    std::size_t p = i * ng + j, q = k * ng + l;
                    if (q <= p) continue;
                    Vec v = zero_vec(n);
                    for (const auto& [a, ca] : A.product_basis(i, k))
                        for (const auto& [x, cx] : g.bracket_basis(j, l)) v[a * ng + x] += ca * cx;
                    if (!is_zero(v)) L.set_bracket(p, q, v);
                }
    return L;
}

/// delta_y(c (x) x) = c (x) [y, x], as a matrix on A (x) g.
inline Mat delta_matrix(const CommAlgebra& A, const LieAlgebra& g, std::span<const Rat> y)
{
    const std::size_t ng = g.dim();
    Mat ady = g.ad(y);
    Mat m(A.dim() * ng, A.dim() * ng);
    for (std::size_t c = 0; c < A.dim(); ++c)
        for (std::size_t x = 0; x < ng; ++x)
            for (std::size_t z = 0; z < ng; ++z) m(c * ng + z, c * ng + x) = ady(z, x);
    return m;
}

/// (A (x) g) x| g with [(z1,y1),(z2,y2)] = ([z1,z2] + delta_y1 z2 - delta_y2 z1, [y1,y2]).
inline LieAlgebra semidirect(const CommAlgebra& A, const LieAlgebra& g)
{
    LieAlgebra C = current_algebra(A, g);
    const std::size_t nc = C.dim(), ng = g.dim(), n = nc + ng;
    LieAlgebra L(n, "(" + C.name() + ")x|" + g.name());
    for (std::size_t p = 0; p < nc; ++p)
        for (std::size_t q = p + 1; q < nc; ++q) {
            Vec v = zero_vec(n);
            for (const auto& [k, c] : C.bracket_basis(p, q)) v[k] = c;
            if (!is_zero(v)) L.set_bracket(p, q, v);
        }
    for (std::size_t p = 0; p < nc; ++p)
        for (std::size_t y = 0; y < ng; ++y) {
            // [z, y] = -delta_y(z)
            std::size_t c = p / ng, x = p % ng;
            Vec v = zero_vec(n);
            for (const auto& [k, coeff] : g.bracket_basis(y, x)) v[c * ng + k] = -coeff;
            if (!is_zero(v)) L.set_bracket(p, nc + y, v);
        }
    for (std::size_t y1 = 0; y1 < ng; ++y1)
        for (std::size_t y2 = y1 + 1; y2 < ng; ++y2) {
            Vec v = zero_vec(n);
            for (const auto& [k, c] : g.bracket_basis(y1, y2)) v[nc + k] = c;
            if (!is_zero(v)) L.set_bracket(nc + y1, nc + y2, v);
        }
    return L;
}

/// i: z -> (z, 0).
inline Mat current_embedding(const CommAlgebra& A, const LieAlgebra& g)
{
    const std::size_t nc = A.dim() * g.dim();
    Mat m(nc + g.dim(), nc);
    for (std::size_t p = 0; p < nc; ++p) m(p, p) = 1;
    return m;
}

/// i_g: x -> (0, x).
inline Mat lie_embedding(const CommAlgebra& A, const LieAlgebra& g)
{
    const std::size_t nc = A.dim() * g.dim();
    Mat m(nc + g.dim(), g.dim());
    for (std::size_t y = 0; y < g.dim(); ++y) m(nc + y, y) = 1;
    return m;
}

/// A_1 (x) g -> (A (x) g) x| g, (l, a) (x) w -> (a (x) w, l w).
inline LieHom unitalisation_iso(const CommAlgebra& A, const LieAlgebra& g)
{
    require_valid(A);
    const std::size_t ng = g.dim(), nc = A.dim() * ng;
    LieAlgebra domain = current_algebra(unitalisation(A), g);
    LieAlgebra codomain = semidirect(A, g);
    Mat m(nc + ng, nc + ng);
    for (std::size_t w = 0; w < ng; ++w) m(nc + w, w) = 1;
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t w = 0; w < ng; ++w) m(i * ng + w, (i + 1) * ng + w) = 1;
    return LieHom(std::move(domain), std::move(codomain), std::move(m));
}

inline bool is_perfect_current(const CommAlgebra& A, const LieAlgebra& g) { return is_perfect(current_algebra(A, g)); }

// ---------------------------------------------------------------------------
// Infinite carriers with a monomial basis: finite-support sequences and
// Laurent polynomials. Elements are finitely supported maps
// carrier index -> g-coefficient vector.
// ---------------------------------------------------------------------------

/// e_i e_j = delta_ij e_i on indices >= 1.
struct SequenceCarrier {
    static std::optional<std::pair<long, Rat>> mul(long i, long j)
    {
        if (i != j) return std::nullopt;
        return std::make_pair(i, Rat(1));
    }
    static bool valid_index(long i) { return i >= 1; }
};

/// t^i t^j = t^(i+j).
struct LaurentCarrier {
    static std::optional<std::pair<long, Rat>> mul(long i, long j) { return std::make_pair(i + j, Rat(1)); }
    static bool valid_index(long) { return true; }
};

/// Finite sum of monomials c_k (x) x_k with c_k a carrier basis element.
class CurrentElement {
public:
    CurrentElement() = default;
    explicit CurrentElement(std::size_t lie_dim) : lie_dim_(lie_dim) {}

    static CurrentElement monomial(std::size_t lie_dim, long index, Vec x)
    {
        CurrentElement e(lie_dim);
        e.add(index, x);
        return e;
    }

    std::size_t lie_dim() const { return lie_dim_; }
    const std::map<long, Vec>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Vec at(long index) const
    {
        auto it = terms_.find(index);
        return it == terms_.end() ? zero_vec(lie_dim_) : it->second;
    }

    void add(long index, std::span<const Rat> x, const Rat& scale = 1)
    {
        if (x.size() != lie_dim_) throw std::invalid_argument("CurrentElement::add: wrong Lie dimension");
        auto& slot = terms_.try_emplace(index, zero_vec(lie_dim_)).first->second;
        axpy(slot, scale, x);
        if (univext::is_zero(slot)) terms_.erase(index);
    }

    friend CurrentElement operator+(CurrentElement a, const CurrentElement& b)
    {
        for (const auto& [k, v] : b.terms_) a.add(k, v);
        return a;
    }

    friend CurrentElement operator-(CurrentElement a, const CurrentElement& b)
    {
        for (const auto& [k, v] : b.terms_) a.add(k, v, Rat(-1));
        return a;
    }

    friend CurrentElement operator*(const Rat& s, const CurrentElement& a)
    {
        CurrentElement out(a.lie_dim_);
        for (const auto& [k, v] : a.terms_) out.add(k, v, s);
        return out;
    }

    friend bool operator==(const CurrentElement&, const CurrentElement&) = default;

private:
    std::size_t lie_dim_ = 0;
    std::map<long, Vec> terms_;
};

/// Element of (A (x) g) x| g over an infinite carrier.
struct SemidirectElement {
    CurrentElement f;
    Vec y;

    friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;
};

/// Bracket oracle for A (x) g and (A (x) g) x| g over a monomial carrier.
template <typename Carrier>
class CurrentOracle {
public:
    explicit CurrentOracle(LieAlgebra g) : g_(std::move(g)) {}

    const LieAlgebra& lie() const { return g_; }

    CurrentElement zero() const { return CurrentElement(g_.dim()); }

    CurrentElement monomial(long index, std::size_t lie_basis, const Rat& c = 1) const
    {
        if (!Carrier::valid_index(index)) throw std::out_of_range("carrier index out of range");
        return CurrentElement::monomial(g_.dim(), index, c * unit_vec(g_.dim(), lie_basis));
    }

    CurrentElement bracket(const CurrentElement& u, const CurrentElement& v) const
    {
        check(u);
        check(v);
        CurrentElement out(g_.dim());
        for (const auto& [i, x] : u.terms())
            for (const auto& [j, y] : v.terms()) {
                auto prod = Carrier::mul(i, j);
                if (!prod) continue;
                out.add(prod->first, g_.bracket(x, y), prod->second);
            }
        return out;
    }

    /// delta_y(c (x) x) = c (x) [y, x].
    CurrentElement delta(std::span<const Rat> y, const CurrentElement& u) const
    {
        check(u);
        CurrentElement out(g_.dim());
        for (const auto& [i, x] : u.terms()) out.add(i, g_.bracket(y, x));
        return out;
    }

    /// Module action a . (b (x) y) = ab (x) y, for a given by carrier coefficients.
    CurrentElement scale(const std::map<long, Rat>& a, const CurrentElement& u) const
    {
        check(u);
        CurrentElement out(g_.dim());
        for (const auto& [i, c] : a)
            for (const auto& [j, x] : u.terms()) {
                auto prod = Carrier::mul(i, j);
                if (prod) out.add(prod->first, x, c * prod->second);
            }
        return out;
    }

    /// lambda (x) y for a carrier element lambda.
    CurrentElement tensor(const std::map<long, Rat>& lambda, std::span<const Rat> y) const
    {
        CurrentElement out(g_.dim());
        for (const auto& [i, c] : lambda) out.add(i, y, c);
        return out;
    }

    SemidirectElement bracket(const SemidirectElement& a, const SemidirectElement& b) const
    {
        CurrentElement f = bracket(a.f, b.f) + delta(a.y, b.f) - delta(b.y, a.f);
        return {std::move(f), g_.bracket(a.y, b.y)};
    }

    SemidirectElement embed(const CurrentElement& f) const { return {f, zero_vec(g_.dim())}; }
    SemidirectElement embed_lie(std::span<const Rat> y) const { return {zero(), Vec(y.begin(), y.end())}; }

private:
    void check(const CurrentElement& u) const
    {
        if (u.lie_dim() != g_.dim()) throw std::invalid_argument("current element over a different Lie algebra");
    }

    LieAlgebra g_;
};

using SequenceCurrent = CurrentOracle<SequenceCarrier>;
using LoopCurrent = CurrentOracle<LaurentCarrier>;

/// Carrier components phi_i of f = sum_i phi_i (x) v_i.
inline std::vector<std::map<long, Rat>> carrier_components(const CurrentElement& f)
{
    std::vector<std::map<long, Rat>> comps(f.lie_dim());
    for (const auto& [k, v] : f.terms())
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) comps[i][k] = v[i];
    return comps;
}

inline FinSuppSeq to_seq(const std::map<long, Rat>& m)
{
    FinSuppSeq s;
    for (const auto& [k, v] : m) s.set(k, v);
    return s;
}

} // namespace univext

#endif
