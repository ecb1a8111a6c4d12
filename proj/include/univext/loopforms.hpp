#ifndef UNIVEXT_LOOPFORMS_HPP
#define UNIVEXT_LOOPFORMS_HPP

#include "univext/cohom.hpp"
#include "univext/current.hpp"
#include "univext/invforms.hpp"
#include "univext/parallel.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace univext {

/// An element of Q[t,t^-1] (x) g; also used for V-valued functions.
using LoopElement = CurrentElement;

/// sum_k coeffs[k] t^k dt with coefficients in a fixed fiber (g or V).
class LoopOneForm {
public:
    LoopOneForm() = default;
    explicit LoopOneForm(std::size_t fiber_dim) : fiber_dim_(fiber_dim) {}

    static LoopOneForm monomial(std::size_t fiber_dim, long k, Vec v)
    {
        LoopOneForm w(fiber_dim);
        w.add(k, v);
        return w;
    }

    std::size_t fiber_dim() const { return fiber_dim_; }
    const std::map<long, Vec>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Vec at(long k) const
    {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? zero_vec(fiber_dim_) : it->second;
    }

    void add(long k, std::span<const Rat> v, const Rat& scale = 1)
    {
        if (v.size() != fiber_dim_) throw std::invalid_argument("LoopOneForm::add: wrong fiber dimension");
        auto& slot = coeffs_.try_emplace(k, zero_vec(fiber_dim_)).first->second;
        axpy(slot, scale, v);
        if (univext::is_zero(slot)) coeffs_.erase(k);
    }

    /// The t^-1 dt coefficient.
    Vec residue() const { return at(-1); }

    friend LoopOneForm operator+(LoopOneForm a, const LoopOneForm& b)
    {
        for (const auto& [k, v] : b.coeffs_) a.add(k, v);
        return a;
    }

    friend LoopOneForm operator-(LoopOneForm a, const LoopOneForm& b)
    {
        for (const auto& [k, v] : b.coeffs_) a.add(k, v, Rat(-1));
        return a;
    }

    friend LoopOneForm operator*(const Rat& s, const LoopOneForm& a)
    {
        LoopOneForm out(a.fiber_dim_);
        for (const auto& [k, v] : a.coeffs_) out.add(k, v, s);
        return out;
    }

    friend bool operator==(const LoopOneForm&, const LoopOneForm&) = default;

private:
    std::size_t fiber_dim_ = 0;
    std::map<long, Vec> coeffs_;
};

/// f . phi for a Laurent polynomial f and a vector-valued function phi.
inline LoopElement scale(const LaurentPoly& f, const LoopElement& phi)
{
    LoopElement out(phi.lie_dim());
    for (const auto& [a, c] : f.coeffs())
        for (const auto& [b, v] : phi.terms()) out.add(a + b, v, c);
    return out;
}

inline LoopOneForm scale(const LaurentPoly& f, const LoopOneForm& w)
{
    LoopOneForm out(w.fiber_dim());
    for (const auto& [a, c] : f.coeffs())
        for (const auto& [b, v] : w.coeffs()) out.add(a + b, v, c);
    return out;
}

/// (df) . phi as a form.
inline LoopOneForm scale(const LaurentOneForm& df, const LoopElement& phi)
{
    LoopOneForm out(phi.lie_dim());
    for (const auto& [a, c] : df.coeff.coeffs())
        for (const auto& [b, v] : phi.terms()) out.add(a + b, v, c);
    return out;
}

/// Formal derivative of a vector-valued Laurent function.
inline LoopOneForm formal_derivative(const LoopElement& phi)
{
    LoopOneForm out(phi.lie_dim());
    for (const auto& [k, v] : phi.terms())
        if (k != 0) out.add(k - 1, v, Rat(k));
    return out;
}

/// A function phi with d(phi) = w, when w has no residue.
inline std::optional<LoopElement> exact_primitive(const LoopOneForm& w)
{
    if (!is_zero(w.residue())) return std::nullopt;
    LoopElement phi(w.fiber_dim());
    for (const auto& [k, v] : w.coeffs()) phi.add(k + 1, v, Rat(1) / Rat(k + 1));
    return phi;
}

class MaierMismatch : public std::runtime_error {
public:
    MaierMismatch(long m, long n, std::size_t x, std::size_t y)
        : std::runtime_error("loop cocycle and residue cocycle disagree at (t^" + std::to_string(m) + " e_" +
                             std::to_string(x) + ", t^" + std::to_string(n) + " e_" + std::to_string(y) + ")"),
          m(m), n(n), x(x), y(y)
    {
    }
    long m, n;
    std::size_t x, y;
};

struct MaierComparison {
    int sign = 0; // 0 when every compared value vanished
    std::size_t pairs_checked = 0;
    std::size_t nonzero_pairs = 0;
};

/// The connection-and-forms pipeline for the trivial g-bundle over the
/// algebraic circle.
class LoopForms {
public:
    explicit LoopForms(LieAlgebra g) : loop_(g), U_(universal_form(g))
    {
        if (!is_perfect(g)) throw std::invalid_argument("LoopForms: Lie algebra must be perfect");
    }

    const LieAlgebra& lie() const { return loop_.lie(); }
    const UniversalForm& universal() const { return U_; }
    const LoopCurrent& oracle() const { return loop_; }
    std::size_t v_dim() const { return U_.dim(); }

    LoopElement monomial(long k, std::size_t basis, const Rat& c = 1) const { return loop_.monomial(k, basis, c); }
    LoopElement bracket(const LoopElement& a, const LoopElement& b) const { return loop_.bracket(a, b); }

    /// D(sum t^k x_k) = sum k t^(k-1) dt x_k.
    LoopOneForm connection_D(const LoopElement& eta) const { return formal_derivative(eta); }

    /// [w, eta] for a g-valued form w and function eta.
    LoopOneForm bracket(const LoopOneForm& w, const LoopElement& eta) const
    {
        LoopOneForm out(lie().dim());
        for (const auto& [a, x] : w.coeffs())
            for (const auto& [b, y] : eta.terms()) out.add(a + b, lie().bracket(x, y));
        return out;
    }

    LoopOneForm bracket(const LoopElement& eta, const LoopOneForm& w) const { return Rat(-1) * bracket(w, eta); }

    /// Pointwise kappa of two g-valued functions: a V-valued function.
    LoopElement kappa_function(const LoopElement& a, const LoopElement& b) const
    {
        LoopElement out(v_dim());
        for (const auto& [i, x] : a.terms())
            for (const auto& [j, y] : b.terms()) out.add(i + j, U_.kappa(x, y));
        return out;
    }

    /// kappa~(w, eta)_k = sum_{a+b=k} kappa(w_a, eta_b).
    LoopOneForm kappa_tilde(const LoopOneForm& w, const LoopElement& eta) const
    {
        LoopOneForm out(v_dim());
        for (const auto& [a, x] : w.coeffs())
            for (const auto& [b, y] : eta.terms()) out.add(a + b, U_.kappa(x, y));
        return out;
    }

    /// beta(zeta, eta) = kappa~(D zeta, eta) + kappa~(D eta, zeta).
    LoopOneForm beta_form(const LoopElement& zeta, const LoopElement& eta) const
    {
        return kappa_tilde(connection_D(zeta), eta) + kappa_tilde(connection_D(eta), zeta);
    }

    /// Koszul connection on V-valued functions: the formal derivative.
    LoopOneForm koszul_d(const LoopElement& phi) const
    {
        if (phi.lie_dim() != v_dim()) throw std::invalid_argument("koszul_d: expected a V-valued function");
        return formal_derivative(phi);
    }

    /// omega(eta, zeta) = res kappa~(D eta, zeta), identifying Omega/dOmega^0 with V.
    Vec omega_cocycle(const LoopElement& eta, const LoopElement& zeta) const
    {
        return kappa_tilde(connection_D(eta), zeta).residue();
    }

    /// Every intermediate expression of
    /// d(f kappa(xi,zeta)) = d kappa(f xi, zeta) = beta(f xi, zeta)
    ///   = kappa~(D(f xi), zeta) + kappa~(D zeta, f xi)
    ///   = kappa~(df xi + f D xi, zeta) + f kappa~(D zeta, xi)
    ///   = df kappa(xi,zeta) + f beta(xi,zeta) = df kappa(xi,zeta) + f d kappa(xi,zeta).
    std::vector<LoopOneForm> leibniz_chain(const LaurentPoly& f, const LoopElement& xi, const LoopElement& zeta) const
    {
        LoopElement fxi = scale(f, xi);
        LaurentOneForm df = laurent_d(f);
        LoopOneForm dfxi(lie().dim());
        for (const auto& [a, c] : df.coeff.coeffs())
            for (const auto& [b, v] : xi.terms()) dfxi.add(a + b, v, c);
        std::vector<LoopOneForm> chain;
        chain.push_back(koszul_d(scale(f, kappa_function(xi, zeta))));
        chain.push_back(koszul_d(kappa_function(fxi, zeta)));
        chain.push_back(beta_form(fxi, zeta));
        chain.push_back(kappa_tilde(connection_D(fxi), zeta) + kappa_tilde(connection_D(zeta), fxi));
        chain.push_back(kappa_tilde(dfxi + scale(f, connection_D(xi)), zeta) + scale(f, kappa_tilde(connection_D(zeta), xi)));
        chain.push_back(scale(df, kappa_function(xi, zeta)) + scale(f, beta_form(xi, zeta)));
        chain.push_back(scale(df, kappa_function(xi, zeta)) + scale(f, koszul_d(kappa_function(xi, zeta))));
        return chain;
    }

    /// Monomials t^k (x) e_b for |k| <= window.
    std::vector<LoopElement> monomial_window(long window) const
    {
        std::vector<LoopElement> out;
        for (long k = -window; k <= window; ++k)
            for (std::size_t b = 0; b < lie().dim(); ++b) out.push_back(monomial(k, b));
        return out;
    }

    /// D[a,b] = [Da,b] + [a,Db] on all window pairs.
    bool lie_connection_law(long window) const
    {
        auto mons = monomial_window(window);
        return parallel_all_of(mons.size() * mons.size(), [&](std::size_t t) {
            const auto& a = mons[t / mons.size()];
            const auto& b = mons[t % mons.size()];
            return connection_D(bracket(a, b)) == bracket(connection_D(a), b) + bracket(a, connection_D(b));
        });
    }

    bool beta_symmetric(long window) const
    {
        auto mons = monomial_window(window);
        return parallel_all_of(mons.size() * mons.size(), [&](std::size_t t) {
            const auto& a = mons[t / mons.size()];
            const auto& b = mons[t % mons.size()];
            return beta_form(a, b) == beta_form(b, a);
        });
    }

    /// beta([a,b],c) = beta(a,[b,c]) on all window triples.
    bool beta_invariant(long window) const
    {
        auto mons = monomial_window(window);
        const std::size_t n = mons.size();
        return parallel_all_of(n * n * n, [&](std::size_t t) {
            const auto& a = mons[t / (n * n)];
            const auto& b = mons[(t / n) % n];
            const auto& c = mons[t % n];
            return beta_form(bracket(a, b), c) == beta_form(a, bracket(b, c));
        });
    }

    /// d kappa(a,b) = beta(a,b) on all window pairs.
    bool d_kappa_is_beta(long window) const
    {
        auto mons = monomial_window(window);
        return parallel_all_of(mons.size() * mons.size(), [&](std::size_t t) {
            const auto& a = mons[t / mons.size()];
            const auto& b = mons[t % mons.size()];
            return koszul_d(kappa_function(a, b)) == beta_form(a, b);
        });
    }

    /// omega(a,a) = 0 and omega(a,b) = -omega(b,a): kappa~(Da,b) + kappa~(Db,a) is exact.
    bool omega_alternating(long window) const
    {
        auto mons = monomial_window(window);
        return parallel_all_of(mons.size() * mons.size(), [&](std::size_t t) {
            const auto& a = mons[t / mons.size()];
            const auto& b = mons[t % mons.size()];
            return is_zero(omega_cocycle(a, b) + omega_cocycle(b, a));
        });
    }

    /// Cyclic sum of omega([a,b],c) vanishes on all window triples.
    bool omega_closed(long window) const
    {
        auto mons = monomial_window(window);
        const std::size_t n = mons.size();
        return parallel_all_of(n * n * n, [&](std::size_t t) {
            const auto& a = mons[t / (n * n)];
            const auto& b = mons[(t / n) % n];
            const auto& c = mons[t % n];
            Vec s = omega_cocycle(bracket(a, b), c);
            axpy(s, Rat(1), omega_cocycle(bracket(b, c), a));
            axpy(s, Rat(1), omega_cocycle(bracket(c, a), b));
            return is_zero(s);
        });
    }

    /// kappa(t^a x, t^b y) over the window spans every V-valued monomial t^k v, |k| <= window.
    bool span_property(long window) const
    {
        auto mons = monomial_window(window);
        const std::size_t vd = v_dim(), width = static_cast<std::size_t>(2 * window + 1) * vd;
        SpanBuilder sb(width);
        for (const auto& a : mons)
            for (const auto& b : mons) {
                LoopElement k = kappa_function(a, b);
                Vec flat = zero_vec(width);
                bool inside = true;
                for (const auto& [deg, v] : k.terms()) {
                    if (deg < -window || deg > window) {
                        inside = false;
                        break;
                    }
                    for (std::size_t i = 0; i < vd; ++i) flat[static_cast<std::size_t>(deg + window) * vd + i] = v[i];
                }
                if (inside) sb.add(flat);
            }
        return sb.rank() == width;
    }

    /// Compares omega with the residue cocycle kappa(x,y) res(a db) on all
    /// window monomial pairs; throws MaierMismatch unless one global sign fits.
    MaierComparison identify_with_maier(long window) const
    {
        MaierComparison r;
        auto mons = monomial_window(window);
        const std::size_t ng = lie().dim();
        for (std::size_t i = 0; i < mons.size(); ++i)
            for (std::size_t j = 0; j < mons.size(); ++j) {
                Vec ours = omega_cocycle(mons[i], mons[j]);
                Vec theirs = maier_laurent(U_, mons[i], mons[j]);
                ++r.pairs_checked;
                long m = static_cast<long>(i / ng) - window, n = static_cast<long>(j / ng) - window;
                if (is_zero(ours) && is_zero(theirs)) continue;
                ++r.nonzero_pairs;
                if (r.sign == 0) r.sign = (ours == theirs) ? 1 : (ours == Rat(-1) * theirs ? -1 : 0);
                if (r.sign == 0 || ours != Rat(r.sign) * theirs) throw MaierMismatch(m, n, i % ng, j % ng);
            }
        return r;
    }

private:
    LoopCurrent loop_;
    UniversalForm U_;
};

} // namespace univext

#endif
