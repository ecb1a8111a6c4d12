#ifndef UNIVEXT_BUNDLES_HPP
#define UNIVEXT_BUNDLES_HPP

#include "univext/invforms.hpp"
#include "univext/liealg.hpp"
#include "univext/parallel.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace univext {

class InvalidAutomorphism : public std::invalid_argument {
public:
    explicit InvalidAutomorphism(const std::string& why) : std::invalid_argument("invalid automorphism: " + why) {}
};

class InvalidBundle : public std::invalid_argument {
public:
    explicit InvalidBundle(const std::string& why) : std::invalid_argument("invalid bundle: " + why) {}
};

class SpanFailure : public std::runtime_error {
public:
    SpanFailure() : std::runtime_error("kappa_K does not span the V-sections; the factorization is not unique") {}
};

/// gamma is nonzero on a pair kappa_K annihilates (two different points).
class DoesNotFactor : public std::runtime_error {
public:
    DoesNotFactor(std::size_t p, std::size_t q)
        : std::runtime_error("form pairs sections at points " + std::to_string(p) + " and " + std::to_string(q) +
                             ", where kappa_K vanishes")
    {
    }
};

/// Throws InvalidAutomorphism unless m is a bijective bracket-preserving map g -> g.
inline void require_automorphism(const LieAlgebra& g, const Mat& m)
{
    if (m.rows() != g.dim() || m.cols() != g.dim()) throw InvalidAutomorphism("wrong shape");
    if (auto f = LieHom::first_failure(g, g, m))
        throw InvalidAutomorphism("bracket fails on basis pair (" + std::to_string(f->first) + "," +
                                  std::to_string(f->second) + ")");
    if (rank(m) != g.dim()) throw InvalidAutomorphism("not invertible");
}

/// Lie algebra bundle over the discrete base {0..n-1}. A transition
/// tau(i,j,p) maps chart-j coordinates at p to chart-i coordinates. Sections
/// are stored in the default chart of each point: the lowest cover index
/// containing it.
class DiscreteBundle {
public:
    /// `transitions` holds tau(i,j,p) for i < j and p in U_i cap U_j; missing
    /// entries are the identity.
    DiscreteBundle(LieAlgebra g, std::size_t base_size, std::vector<std::set<std::size_t>> cover,
                   std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Mat> transitions)
        : fiber_(std::move(g)), base_(base_size), cover_(std::move(cover))
    {
        require_valid(fiber_);
        std::vector<bool> covered(base_, false);
        for (const auto& U : cover_)
            for (std::size_t p : U) {
                if (p >= base_) throw InvalidBundle("cover contains a point outside the base");
                covered[p] = true;
            }
        for (std::size_t p = 0; p < base_; ++p)
            if (!covered[p]) throw InvalidBundle("point " + std::to_string(p) + " is not covered");
        for (auto& [key, m] : transitions) {
            auto [i, j, p] = key;
            if (i >= cover_.size() || j >= cover_.size() || i >= j)
                throw InvalidBundle("transition indices must satisfy i < j < number of charts");
            if (!cover_[i].count(p) || !cover_[j].count(p)) throw InvalidBundle("transition at a point outside the overlap");
            require_automorphism(fiber_, m);
        }
        for (std::size_t i = 0; i < cover_.size(); ++i)
            for (std::size_t j = i + 1; j < cover_.size(); ++j)
                for (std::size_t p : cover_[i]) {
                    if (!cover_[j].count(p)) continue;
                    auto it = transitions.find({i, j, p});
                    Mat t = it == transitions.end() ? Mat::identity(fiber_.dim()) : it->second;
                    tau_[{j, i, p}] = *inverse(t);
                    tau_[{i, j, p}] = std::move(t);
                }
        for (std::size_t p = 0; p < base_; ++p) {
            auto ch = charts_at(p);
            for (std::size_t a : ch)
                for (std::size_t b : ch)
                    for (std::size_t c : ch)
                        if (transition(a, c, p) != transition(a, b, p) * transition(b, c, p))
                            throw InvalidBundle("cocycle condition fails at point " + std::to_string(p));
        }
    }

    const LieAlgebra& fiber() const { return fiber_; }
    std::size_t base_size() const { return base_; }
    const std::vector<std::set<std::size_t>>& cover() const { return cover_; }

    std::vector<std::size_t> charts_at(std::size_t p) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < cover_.size(); ++i)
            if (cover_[i].count(p)) out.push_back(i);
        return out;
    }

    std::size_t default_chart(std::size_t p) const { return charts_at(p).at(0); }

    Mat transition(std::size_t i, std::size_t j, std::size_t p) const
    {
        if (!cover_.at(i).count(p) || !cover_.at(j).count(p)) throw std::out_of_range("transition: point outside the overlap");
        if (i == j) return Mat::identity(fiber_.dim());
        return tau_.at({i, j, p});
    }

    /// Coordinates of a default-chart fiber vector at p in chart i.
    Vec to_chart(std::size_t p, std::size_t i, std::span<const Rat> v) const
    {
        return transition(i, default_chart(p), p).apply(v);
    }

    /// Default-chart coordinates of a chart-i fiber vector at p.
    Vec from_chart(std::size_t p, std::size_t i, std::span<const Rat> v) const
    {
        return transition(default_chart(p), i, p).apply(v);
    }

    LieHom transition_hom(std::size_t i, std::size_t j, std::size_t p) const
    {
        return LieHom(fiber_, fiber_, transition(i, j, p));
    }

private:
    LieAlgebra fiber_;
    std::size_t base_;
    std::vector<std::set<std::size_t>> cover_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Mat> tau_;
};

/// Base Z/n with charts U0 = {0..n/2}, U1 = {n/2..n-1, 0}; the transition is
/// sigma at 0 and the identity at n/2.
inline DiscreteBundle make_twisted_bundle(const LieAlgebra& g, std::size_t n, const Mat& sigma)
{
    if (n < 3) throw std::invalid_argument("make_twisted_bundle: cycle length must be at least 3");
    require_automorphism(g, sigma);
    std::set<std::size_t> U0, U1{0};
    for (std::size_t p = 0; p <= n / 2; ++p) U0.insert(p);
    for (std::size_t p = n / 2; p < n; ++p) U1.insert(p);
    return DiscreteBundle(g, n, {U0, U1}, {{{0, 1, 0}, sigma}});
}

/// Two overlapping charts {0..m}, {m..n-1} (m = n/2, one chart when n < 2) with identity transitions.
inline DiscreteBundle make_trivial_bundle(const LieAlgebra& g, std::size_t n)
{
    if (n < 2) return DiscreteBundle(g, n, {std::set<std::size_t>{0}}, {});
    std::set<std::size_t> U0, U1;
    for (std::size_t p = 0; p <= n / 2; ++p) U0.insert(p);
    for (std::size_t p = n / 2; p < n; ++p) U1.insert(p);
    return DiscreteBundle(g, n, {U0, U1}, {});
}

/// X -> -X^T on sl3, in the sl3_matrices() basis: an outer automorphism.
inline Mat sl3_negative_transpose()
{
    auto basis = sl3_matrices();
    std::vector<Vec> cols;
    for (const auto& b : basis) {
        Vec v;
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) v.push_back(b(r, c));
        cols.push_back(std::move(v));
    }
    Mat coords = Mat::from_columns(9, cols);
    Mat sigma(basis.size(), basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        Mat img = Rat(-1) * basis[k].transpose();
        Vec flat;
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) flat.push_back(img(r, c));
        Vec x = *solve(coords, flat);
        for (std::size_t r = 0; r < x.size(); ++r) sigma(r, k) = x[r];
    }
    return sigma;
}

/// Finite-support section: base point -> default-chart fiber vector.
class Section {
public:
    Section() = default;
    explicit Section(std::size_t fiber_dim) : fiber_dim_(fiber_dim) {}

    static Section delta(std::size_t fiber_dim, std::size_t p, Vec v)
    {
        Section s(fiber_dim);
        s.set(p, std::move(v));
        return s;
    }

    std::size_t fiber_dim() const { return fiber_dim_; }
    const std::map<std::size_t, Vec>& values() const { return values_; }

    void set(std::size_t p, Vec v)
    {
        if (v.size() != fiber_dim_) throw std::invalid_argument("Section::set: wrong fiber dimension");
        if (is_zero(v))
            values_.erase(p);
        else
            values_[p] = std::move(v);
    }

    Vec at(std::size_t p) const
    {
        auto it = values_.find(p);
        return it == values_.end() ? zero_vec(fiber_dim_) : it->second;
    }

    friend Section operator+(Section a, const Section& b)
    {
        for (const auto& [p, v] : b.values_) a.set(p, a.at(p) + v);
        return a;
    }

    friend bool operator==(const Section&, const Section&) = default;

private:
    std::size_t fiber_dim_ = 0;
    std::map<std::size_t, Vec> values_;
};

/// Partition of unity: weights[i][p] = rho_i(p).
struct PartitionOfUnity {
    std::vector<std::map<std::size_t, Rat>> weights;

    Rat at(std::size_t i, std::size_t p) const
    {
        auto it = weights.at(i).find(p);
        return it == weights[i].end() ? Rat(0) : it->second;
    }
};

/// rho_i >= 0, supp rho_i inside U_i, sum_i rho_i(p) = 1.
inline void require_partition(const DiscreteBundle& B, const PartitionOfUnity& rho)
{
    if (rho.weights.size() != B.cover().size()) throw std::invalid_argument("partition: one weight function per chart required");
    std::vector<Rat> total(B.base_size(), Rat(0));
    for (std::size_t i = 0; i < rho.weights.size(); ++i)
        for (const auto& [p, w] : rho.weights[i]) {
            if (w < 0) throw std::invalid_argument("partition: negative weight");
            if (!w.is_zero() && !B.cover()[i].count(p)) throw std::invalid_argument("partition: weight outside its chart");
            total.at(p) += w;
        }
    for (std::size_t p = 0; p < B.base_size(); ++p)
        if (total[p] != 1) throw std::invalid_argument("partition: weights at point " + std::to_string(p) + " do not sum to 1");
}

/// Every point goes entirely to its lowest chart.
inline PartitionOfUnity lowest_chart_partition(const DiscreteBundle& B)
{
    PartitionOfUnity rho{std::vector<std::map<std::size_t, Rat>>(B.cover().size())};
    for (std::size_t p = 0; p < B.base_size(); ++p) rho.weights[B.default_chart(p)][p] = 1;
    return rho;
}

/// Equal shares among all charts containing the point.
inline PartitionOfUnity uniform_partition(const DiscreteBundle& B)
{
    PartitionOfUnity rho{std::vector<std::map<std::size_t, Rat>>(B.cover().size())};
    for (std::size_t p = 0; p < B.base_size(); ++p) {
        auto ch = B.charts_at(p);
        for (std::size_t i : ch) rho.weights[i][p] = Rat(1, static_cast<long>(ch.size()));
    }
    return rho;
}

/// Sections of the bundle with the fiberwise universal forms V(K_p).
class BundleForms {
public:
    explicit BundleForms(DiscreteBundle B) : bundle_(std::move(B)), U_(universal_form(bundle_.fiber())) {}

    const DiscreteBundle& bundle() const { return bundle_; }
    const UniversalForm& universal() const { return U_; }
    std::size_t fiber_dim() const { return bundle_.fiber().dim(); }
    std::size_t v_dim() const { return U_.dim(); }

    /// Sections with finite support are all sections here: sum_p g, basis
    /// index p * dim g + x for delta_p (x) e_x in the default chart.
    LieAlgebra section_algebra() const
    {
        const std::size_t ng = fiber_dim(), n = bundle_.base_size() * ng;
        LieAlgebra L(n, "sections");
        for (std::size_t p = 0; p < bundle_.base_size(); ++p)
            for (std::size_t x = 0; x < ng; ++x)
                for (std::size_t y = x + 1; y < ng; ++y) {
                    Vec v = zero_vec(n);
                    for (const auto& [k, c] : bundle_.fiber().bracket_basis(x, y)) v[p * ng + k] = c;
                    if (!is_zero(v)) L.set_bracket(p * ng + x, p * ng + y, v);
                }
        return L;
    }

    Vec to_coords(const Section& X) const
    {
        check(X, fiber_dim());
        Vec v = zero_vec(bundle_.base_size() * fiber_dim());
        for (const auto& [p, x] : X.values())
            for (std::size_t k = 0; k < x.size(); ++k) v[p * fiber_dim() + k] = x[k];
        return v;
    }

    Section from_coords(std::span<const Rat> v, std::size_t dim) const
    {
        Section s(dim);
        for (std::size_t p = 0; p < bundle_.base_size(); ++p) s.set(p, Vec(v.begin() + p * dim, v.begin() + (p + 1) * dim));
        return s;
    }

    /// Section given by chart-i coordinates on U_i.
    Section from_chart(std::size_t i, const std::map<std::size_t, Vec>& values) const
    {
        Section s(fiber_dim());
        for (const auto& [p, v] : values) s.set(p, bundle_.from_chart(p, i, v));
        return s;
    }

    /// [X,Y](p) = [X(p), Y(p)], computed in the default chart.
    Section section_bracket(const Section& X, const Section& Y) const
    {
        check(X, fiber_dim());
        check(Y, fiber_dim());
        Section out(fiber_dim());
        for (const auto& [p, x] : X.values()) {
            auto it = Y.values().find(p);
            if (it != Y.values().end()) out.set(p, bundle_.fiber().bracket(x, it->second));
        }
        return out;
    }

    /// The bracket at p computed in chart i, returned in chart-i coordinates.
    Vec bracket_in_chart(const Section& X, const Section& Y, std::size_t p, std::size_t i) const
    {
        return bundle_.fiber().bracket(bundle_.to_chart(p, i, X.at(p)), bundle_.to_chart(p, i, Y.at(p)));
    }

    /// Transition of V(K): the map induced on V_g by tau(i,j,p).
    Mat v_transition(std::size_t i, std::size_t j, std::size_t p) const
    {
        return induced_map(bundle_.transition_hom(i, j, p), U_, U_);
    }

    /// kappa_K(X,Y)(p) = kappa(X(p), Y(p)) in the default chart of V(K).
    Section kappa_K(const Section& X, const Section& Y) const
    {
        check(X, fiber_dim());
        check(Y, fiber_dim());
        Section out(v_dim());
        for (const auto& [p, x] : X.values()) {
            auto it = Y.values().find(p);
            if (it != Y.values().end()) out.set(p, U_.kappa(x, it->second));
        }
        return out;
    }

    /// kappa at p computed in chart i (chart-i coordinates of V).
    Vec kappa_in_chart(const Section& X, const Section& Y, std::size_t p, std::size_t i) const
    {
        return U_.kappa(bundle_.to_chart(p, i, X.at(p)), bundle_.to_chart(p, i, Y.at(p)));
    }

    /// kappa_K as a bilinear form on the section algebra with values in V-section coordinates.
    Vec kappa_K_basis(std::size_t a, std::size_t b) const
    {
        const std::size_t ng = fiber_dim(), vd = v_dim();
        Vec out = zero_vec(bundle_.base_size() * vd);
        if (a / ng != b / ng) return out;
        Vec k = U_.kappa_basis(a % ng, b % ng);
        for (std::size_t v = 0; v < vd; ++v) out[(a / ng) * vd + v] = k[v];
        return out;
    }

    /// Whether kappa_K of basis sections spans all V-sections.
    bool span_check() const
    {
        const std::size_t n = bundle_.base_size() * fiber_dim(), width = bundle_.base_size() * v_dim();
        SpanBuilder sb(width);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b) sb.add(kappa_K_basis(a, b));
        return sb.rank() == width;
    }

    /// The beta with beta . kappa_K = gamma, glued from chart-local
    /// factorizations: beta(delta_p v) = sum_i rho_i(p) beta_i(delta_p tau_V(i,d(p),p) v),
    /// where beta_i factors gamma restricted to the sections over U_i in
    /// chart i through the universal form of g^{U_i}. Columns are V-section
    /// coordinates p * dim V + v.
    Mat factor_invariant_form(const BilinearForm& gamma, const PartitionOfUnity& rho) const
    {
        const std::size_t ng = fiber_dim(), vd = v_dim(), base = bundle_.base_size();
        if (gamma.dim() != base * ng) throw std::invalid_argument("factor_invariant_form: form is not defined on the sections");
        require_partition(bundle_, rho);
        if (!gamma.is_symmetric() || !is_invariant(section_algebra(), gamma)) throw NotInvariant();
        if (!span_check()) throw SpanFailure();
        for (std::size_t a = 0; a < base * ng; ++a)
            for (std::size_t b = a; b < base * ng; ++b)
                if (a / ng != b / ng && !is_zero(gamma.at(a, b))) throw DoesNotFactor(a / ng, b / ng);

        Mat beta(gamma.target_dim(), base * vd);
        for (std::size_t i = 0; i < bundle_.cover().size(); ++i) {
            // cutoff: only the support of rho_i contributes
            std::vector<std::size_t> pts(bundle_.cover()[i].begin(), bundle_.cover()[i].end());
            bool used = false;
            for (std::size_t p : pts) used = used || !rho.at(i, p).is_zero();
            if (!used) continue;
            const Chart& ch = chart(i);
            // gamma_i: gamma on chart-i sections over U_i, extended by zero
            const std::size_t m = pts.size() * ng;
            std::vector<Vec> lifted(m);
            for (std::size_t a = 0; a < m; ++a) {
                Vec s = zero_vec(base * ng);
                std::size_t p = pts[a / ng];
                Vec x = bundle_.from_chart(p, i, unit_vec(ng, a % ng));
                for (std::size_t k = 0; k < ng; ++k) s[p * ng + k] = x[k];
                lifted[a] = std::move(s);
            }
            BilinearForm gi(m, gamma.target_dim());
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a; b < m; ++b) gi.set(a, b, gamma(lifted[a], lifted[b]));
            Mat psi = factor_form(ch.universal, gi);
            for (std::size_t q = 0; q < pts.size(); ++q) {
                std::size_t p = pts[q];
                Rat w = rho.at(i, p);
                if (w.is_zero()) continue;
                Mat local = psi * ch.point_inclusions[q] * v_transition(i, bundle_.default_chart(p), p);
                for (std::size_t r = 0; r < local.rows(); ++r)
                    for (std::size_t v = 0; v < vd; ++v) beta(r, p * vd + v) += w * local(r, v);
            }
        }
        const std::size_t n = base * ng;
        bool ok = parallel_all_of(n, [&](std::size_t a) {
            for (std::size_t b = a; b < n; ++b)
                if (beta.apply(kappa_K_basis(a, b)) != gamma.at(a, b)) return false;
            return true;
        });
        if (!ok) throw std::logic_error("factor_invariant_form: glued map does not factor the form");
        return beta;
    }

    /// psi . kappa_K for a linear map psi on V-sections.
    BilinearForm compose_kappa(const Mat& psi) const
    {
        const std::size_t n = bundle_.base_size() * fiber_dim();
        BilinearForm b(n, psi.rows());
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = a; c < n; ++c) b.set(a, c, psi.apply(kappa_K_basis(a, c)));
        return b;
    }

    /// sum_p c_p Killing_p with c_p in Q^m, p-th entry of coeffs.
    BilinearForm pointwise_killing(const std::vector<Vec>& coeffs) const
    {
        const std::size_t ng = fiber_dim(), n = bundle_.base_size() * ng;
        if (coeffs.size() != bundle_.base_size()) throw std::invalid_argument("pointwise_killing: one coefficient per point");
        Mat K = killing_form(bundle_.fiber());
        BilinearForm b(n, coeffs.at(0).size());
        for (std::size_t p = 0; p < bundle_.base_size(); ++p)
            for (std::size_t x = 0; x < ng; ++x)
                for (std::size_t y = x; y < ng; ++y)
                    b.set(p * ng + x, p * ng + y, K(x, y) * coeffs[p]);
        return b;
    }

private:
    struct Chart {
        UniversalForm universal;
        std::vector<Mat> point_inclusions; // V_g -> V(g^{U_i}) for each point of U_i
    };

    const Chart& chart(std::size_t i) const
    {
        auto it = charts_.find(i);
        if (it != charts_.end()) return it->second;
        const std::size_t ng = fiber_dim();
        std::vector<std::size_t> pts(bundle_.cover()[i].begin(), bundle_.cover()[i].end());
        LieAlgebra local(pts.size() * ng, "g^U" + std::to_string(i));
        for (std::size_t q = 0; q < pts.size(); ++q)
            for (std::size_t x = 0; x < ng; ++x)
                for (std::size_t y = x + 1; y < ng; ++y) {
                    Vec v = zero_vec(local.dim());
                    for (const auto& [k, c] : bundle_.fiber().bracket_basis(x, y)) v[q * ng + k] = c;
                    if (!is_zero(v)) local.set_bracket(q * ng + x, q * ng + y, v);
                }
        Chart ch{universal_form(local), {}};
        for (std::size_t q = 0; q < pts.size(); ++q) {
            Mat inc(local.dim(), ng);
            for (std::size_t x = 0; x < ng; ++x) inc(q * ng + x, x) = 1;
            ch.point_inclusions.push_back(induced_map(LieHom(bundle_.fiber(), local, inc), U_, ch.universal));
        }
        return charts_.emplace(i, std::move(ch)).first->second;
    }

    void check(const Section& X, std::size_t dim) const
    {
        if (X.fiber_dim() != dim) throw InvalidBundle("section has the wrong fiber dimension");
        for (const auto& [p, v] : X.values())
            if (p >= bundle_.base_size()) throw InvalidBundle("section supported outside the base");
    }

    DiscreteBundle bundle_;
    UniversalForm U_;
    mutable std::map<std::size_t, Chart> charts_;
};

} // namespace univext

#endif
