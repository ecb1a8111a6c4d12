#include "univext/cohom.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace univext;

namespace {
/// The same multiplication table with no declared unit.
CommAlgebra forget_unit(const CommAlgebra& A)
{
    CommAlgebra plain(A.dim(), A.name() + "-plain");
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j) plain.set_product_raw(i, j, to_dense(A.product_basis(i, j), A.dim()));
    return plain;
}

Mat random_eta(oracle::RatGen& gen, std::size_t rows, std::size_t cols)
{
    Mat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = gen();
    return m;
}
} // namespace

TEST(Cochain, AlternatingCoordinatesRoundTrip)
{
    oracle::RatGen gen(3);
    Cochain2 w(4, 2);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) w.set(i, j, gen.vec(2));
    EXPECT_TRUE(w.is_alternating());
    EXPECT_EQ(Cochain2::from_coords(4, 2, w.coords()), w);
    EXPECT_EQ(w.at(2, 1), Rat(-1) * w.at(1, 2));
    EXPECT_THROW(w.set(1, 1, Vec{1, 0}), std::invalid_argument);
}

TEST(Cochain, PairIndexEnumeratesPairs)
{
    std::size_t k = 0;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) EXPECT_EQ(pair_index(5, i, j), k++);
    EXPECT_EQ(num_pairs(5), 10u);
    EXPECT_EQ(num_pairs(0), 0u);
}

TEST(Cocycle, CoboundariesAreCocycles)
{
    oracle::RatGen gen(11);
    for (const auto& name : {"sl2", "heisenberg3", "sl3"}) {
        LieAlgebra L = catalog(name);
        Cochain2 w = coboundary(L, random_eta(gen, 2, L.dim()));
        EXPECT_TRUE(is_cocycle(L, w)) << name;
        for (const auto& v : d2(L, w)) EXPECT_TRUE(is_zero(v));
    }
}

TEST(Cocycle, DetectsFailure)
{
    // on sl2 every 2-cochain is closed; on sl3 omega(E12,E13) = 1 alone is not
    LieAlgebra L = sl3();
    Cochain2 w(8, 1);
    w.set(0, 1, Vec{1});
    EXPECT_FALSE(is_cocycle(L, w));
    Cochain2 v(3, 1);
    v.set(0, 2, Vec{1});
    EXPECT_TRUE(is_cocycle(sl2(), v));
}

TEST(H2, Goldens)
{
    struct Case {
        const char* name;
        std::size_t z, b, h;
    };
    for (const auto& c : {Case{"sl2", 3, 3, 0}, Case{"so3", 3, 3, 0}, Case{"sl3", 8, 8, 0}, Case{"abelian(2)", 1, 0, 1},
                          Case{"heisenberg3", 3, 1, 2}, Case{"abelian(3)", 3, 0, 3}}) {
        LieAlgebra L = catalog(c.name);
        CohomologySpace H = h2(L);
        auto [z, b] = oracle::z2_b2(L);
        EXPECT_EQ(H.Z2().dim(), z) << c.name;
        EXPECT_EQ(H.B2().dim(), b) << c.name;
        EXPECT_EQ(H.dim(), z - b) << c.name;
        EXPECT_EQ(H.Z2().dim(), c.z) << c.name;
        EXPECT_EQ(H.B2().dim(), c.b) << c.name;
        EXPECT_EQ(H.dim(), c.h) << c.name;
    }
}

TEST(H2, ScalesWithCoefficientDimension)
{
    EXPECT_EQ(h2(heisenberg3(), 2).dim(), 4u);
    EXPECT_EQ(h2(abelian(3), 2).dim(), 6u);
    EXPECT_EQ(h2(sl2(), 3).dim(), 0u);
}

TEST(H2, ClassAndRepresentative)
{
    LieAlgebra L = heisenberg3();
    CohomologySpace H = h2(L);
    for (std::size_t s = 0; s < H.dim(); ++s) {
        Vec e = unit_vec(H.dim(), s);
        Cochain2 rep = H.representative(e);
        EXPECT_TRUE(is_cocycle(L, rep));
        EXPECT_EQ(H.class_of(rep), e);
    }
    oracle::RatGen gen(5);
    Cochain2 cob = coboundary(L, random_eta(gen, 1, 3));
    EXPECT_TRUE(H.is_coboundary(cob));
    EXPECT_TRUE(is_zero(H.class_of(cob)));
    auto eta = H.primitive(cob);
    ASSERT_TRUE(eta.has_value());
    EXPECT_EQ(coboundary(L, *eta), cob);
    Cochain2 xz(3, 1);
    xz.set(0, 2, Vec{1});
    EXPECT_TRUE(H.is_cocycle(xz));
    EXPECT_FALSE(H.primitive(xz).has_value());
}

TEST(H2, ClassOfNonCocycleThrows)
{
    CohomologySpace H = h2(sl3());
    Cochain2 w(8, 1);
    w.set(0, 1, Vec{1});
    EXPECT_THROW(H.class_of(w), std::invalid_argument);
}

TEST(Maier, ExamplesAndDimensions)
{
    // Omega/dA vanishes for Q[t]/t^2 and points(2), is one-dimensional for Q{1,x,y,xy}
    EXPECT_EQ(maier_cocycle(sl2(), truncated_poly(2)).q_dim, 0u);
    EXPECT_EQ(maier_cocycle(sl2(), functions_on_points(2)).q_dim, 0u);
    MaierCocycle m = maier_cocycle(sl2(), exterior_pair());
    EXPECT_EQ(m.v_dim, 1u);
    EXPECT_EQ(m.q_dim, 1u);
    EXPECT_EQ(m.current.dim(), 12u);
    EXPECT_TRUE(is_cocycle(m.current, m.omega));
    EXPECT_FALSE(m.omega.is_zero());
    EXPECT_THROW(maier_cocycle(heisenberg3(), exterior_pair()), NotSemisimple);
}

TEST(Maier, UniversalOnCurrentAlgebra)
{
    MaierCocycle m = maier_cocycle(sl2(), exterior_pair());
    CohomologySpace H = h2(m.current);
    EXPECT_EQ(H.dim(), m.v_dim * m.q_dim);
    UniversalityReport r = verify_universal(m.current, m.omega);
    EXPECT_TRUE(r.perfect);
    EXPECT_TRUE(r.universal());
    ASSERT_EQ(r.shapes.size(), 2u);
    EXPECT_EQ(r.shapes[1], std::make_pair(std::size_t{2}, std::size_t{2}));
}

TEST(Maier, TrivialQuotientGivesTrivialH2)
{
    LieAlgebra C = current_algebra(truncated_poly(2), sl2());
    EXPECT_EQ(h2(C).dim(), 0u);
}

TEST(Maier, LaurentResidueValues)
{
    LoopCurrent loop(sl2());
    UniversalForm U = universal_form(sl2());
    // kappa(e,f) is the generator of V; omega(t^m e, t^n f) = n [m+n=0] kappa(e,f)
    Vec kef = U.kappa_basis(0, 1);
    for (long m = -3; m <= 3; ++m)
        for (long n = -3; n <= 3; ++n) {
            Vec v = maier_laurent(U, loop.monomial(m, 0), loop.monomial(n, 1));
            EXPECT_EQ(v, Rat(m + n == 0 ? n : 0) * kef) << m << "," << n;
        }
    EXPECT_TRUE(is_zero(maier_laurent(U, loop.monomial(1, 0), loop.monomial(-1, 0))));
}

TEST(Extension, RestrictsToOriginalAndIsCocycle)
{
    CommAlgebra A = exterior_pair();
    LieAlgebra g = sl2();
    MaierCocycle m = maier_cocycle(g, A);
    Cochain2 ext = extend_cocycle(A, g, m.omega, unit_chooser(A));
    LieAlgebra S = semidirect(A, g);
    EXPECT_EQ(S.dim(), 15u);
    EXPECT_TRUE(is_cocycle(S, ext));
    EXPECT_EQ(restriction_map(ext, A, g), m.omega);
    // zero on g x g
    for (std::size_t a = 12; a < 15; ++a)
        for (std::size_t b = 12; b < 15; ++b) EXPECT_TRUE(is_zero(ext.at(a, b)));
}

TEST(Extension, UniversalOnSemidirectProduct)
{
    CommAlgebra A = exterior_pair();
    LieAlgebra g = sl2();
    MaierCocycle m = maier_cocycle(g, A);
    Cochain2 ext = extend_cocycle(A, g, m.omega, unit_chooser(A));
    LieAlgebra S = semidirect(A, g);
    EXPECT_EQ(h2(S).dim(), 1u);
    UniversalityReport r = verify_universal(S, ext);
    EXPECT_TRUE(r.universal());
}

TEST(Extension, RestrictionIsBijectiveOnH2)
{
    CommAlgebra A = exterior_pair();
    LieAlgebra g = sl2();
    CohomologySpace HS = h2(semidirect(A, g)), HC = h2(current_algebra(A, g));
    Mat res = induced_h2_map(HS, HC, current_embedding(A, g));
    EXPECT_TRUE(is_bijective(res));
}

TEST(Extension, InjectivityStepCoboundaryRestriction)
{
    // a cocycle on the semidirect product whose restriction is a coboundary
    // is itself a coboundary
    CommAlgebra A = truncated_poly(2);
    LieAlgebra g = sl2();
    LieAlgebra C = current_algebra(A, g), S = semidirect(A, g);
    CohomologySpace HS = h2(S);
    oracle::RatGen gen(21);
    for (int trial = 0; trial < 3; ++trial) {
        Cochain2 w = coboundary(C, random_eta(gen, 1, C.dim()));
        Cochain2 ext = extend_cocycle(A, g, w, unit_chooser(A));
        EXPECT_TRUE(is_cocycle(S, ext));
        EXPECT_TRUE(HS.is_coboundary(ext));
    }
    for (std::size_t s = 0; s < HS.dim(); ++s) {
        Cochain2 rep = HS.representative(unit_vec(HS.dim(), s));
        EXPECT_FALSE(h2(C).is_coboundary(restriction_map(rep, A, g)));
    }
}

TEST(Extension, RejectsNonCocycle)
{
    CommAlgebra A = truncated_poly(2);
    LieAlgebra g = sl2();
    Cochain2 w(6, 1);
    w.set(0, 3, Vec{1});
    EXPECT_THROW(extend_cocycle(A, g, w, unit_chooser(A)), std::invalid_argument);
}

TEST(Extension, IndependentOfNeutralTripleFinite)
{
    CommAlgebra A = exterior_pair();
    CommAlgebra plain = forget_unit(A);
    LieAlgebra g = sl2();
    MaierCocycle m = maier_cocycle(g, A);
    NeutralChooser unit = unit_chooser(A), solved = solving_chooser(plain);
    oracle::RatGen gen(99);
    for (int trial = 0; trial < 25; ++trial) {
        Vec f1 = gen.vec(12), f2 = gen.vec(12), y1 = gen.vec(3), y2 = gen.vec(3);
        EXPECT_EQ(extended_value(A, g, m.omega, unit, f1, y1, f2, y2),
                  extended_value(A, g, m.omega, solved, f1, y1, f2, y2));
    }
    Cochain2 ext = extend_cocycle(A, g, m.omega, unit);
    for (int trial = 0; trial < 10; ++trial) {
        Vec f1 = gen.vec(12), f2 = gen.vec(12), y1 = gen.vec(3), y2 = gen.vec(3);
        Vec s1 = f1, s2 = f2;
        s1.insert(s1.end(), y1.begin(), y1.end());
        s2.insert(s2.end(), y2.begin(), y2.end());
        EXPECT_EQ(ext(s1, s2), extended_value(A, g, m.omega, unit, f1, y1, f2, y2));
    }
}

TEST(Extension, IndependentOfNeutralTripleSequences)
{
    // omega0 = eta . [_,_] with eta determined by a hash of (index, basis)
    SequenceCurrent seq(sl2());
    auto eta = [](const CurrentElement& u) {
        Rat s = 0;
        for (const auto& [k, v] : u.terms())
            for (std::size_t x = 0; x < v.size(); ++x) s += v[x] * Rat(static_cast<long>((k * 7 + x * 13) % 11) - 5);
        return Vec{s};
    };
    auto omega0 = [&](const CurrentElement& a, const CurrentElement& b) { return eta(seq.bracket(a, b)); };
    auto support_choice = [](const std::vector<std::map<long, Rat>>& comps) {
        std::vector<FinSuppSeq> elems;
        for (const auto& c : comps) elems.push_back(to_seq(c));
        return neutral_triple(elems).lambda.coeffs();
    };
    auto chain_choice = [](const std::vector<std::map<long, Rat>>& comps) {
        std::vector<FinSuppSeq> elems;
        for (const auto& c : comps) elems.push_back(to_seq(c));
        return chain_neutral_triple(elems).lambda.coeffs();
    };
    oracle::RatGen gen(7);
    std::uniform_int_distribution<long> idx(1, 6);
    std::uniform_int_distribution<std::size_t> basis(0, 2);
    auto random_element = [&] {
        CurrentElement f = seq.zero();
        for (int t = 0; t < 3; ++t) f = f + seq.monomial(idx(gen.engine()), basis(gen.engine()), gen());
        return SemidirectElement{f, gen.vec(3)};
    };
    for (int trial = 0; trial < 100; ++trial) {
        SemidirectElement a = random_element(), b = random_element();
        EXPECT_EQ(extended_value<SequenceCarrier>(seq, omega0, support_choice, a, b),
                  extended_value<SequenceCarrier>(seq, omega0, chain_choice, a, b));
    }
}

TEST(Extension, LoopCocycleVanishesOnLieAlgebra)
{
    LoopCurrent loop(sl2());
    UniversalForm U = universal_form(sl2());
    auto omega0 = [&](const CurrentElement& a, const CurrentElement& b) { return maier_laurent(U, a, b); };
    auto one = [](const std::vector<std::map<long, Rat>>&) { return std::map<long, Rat>{{0, Rat(1)}}; };
    SemidirectElement x = loop.embed_lie(Vec{1, 0, 0}), y = loop.embed_lie(Vec{0, 1, 0});
    EXPECT_TRUE(is_zero(extended_value<LaurentCarrier>(loop, omega0, one, x, y)));
    // (t^m e, 0) against (0, f): omega0(t^m e, t^0 f) = 0 unless m = 0, and then 0 as well
    for (long m = -2; m <= 2; ++m) {
        SemidirectElement a = loop.embed(loop.monomial(m, 0));
        EXPECT_TRUE(is_zero(extended_value<LaurentCarrier>(loop, omega0, one, a, y)));
    }
}

TEST(Certificate, LoopCocycleIsNotACoboundary)
{
    LoopCurrent loop(sl2());
    UniversalForm U = universal_form(sl2());
    std::vector<CurrentElement> window;
    for (long m = -1; m <= 1; ++m)
        for (std::size_t b = 0; b < 3; ++b) window.push_back(loop.monomial(m, b));
    auto omega = [&](const CurrentElement& a, const CurrentElement& b) { return maier_laurent(U, a, b); };
    auto cert = non_coboundary_certificate<LaurentCarrier>(loop, omega, window, U.dim());
    ASSERT_TRUE(cert.has_value());
    EXPECT_TRUE(cert->verify());
    EXPECT_EQ(cert->target, 0u);
}

TEST(Certificate, NoneForCoboundary)
{
    LoopCurrent loop(sl2());
    std::vector<CurrentElement> window;
    for (long m = -1; m <= 1; ++m)
        for (std::size_t b = 0; b < 3; ++b) window.push_back(loop.monomial(m, b));
    auto eta = [](const CurrentElement& u) {
        Rat s = 0;
        for (const auto& [k, v] : u.terms()) s += v[0] * Rat(k) + v[2];
        return Vec{s};
    };
    auto omega = [&](const CurrentElement& a, const CurrentElement& b) { return eta(loop.bracket(a, b)); };
    EXPECT_FALSE((non_coboundary_certificate<LaurentCarrier>(loop, omega, window, 1)).has_value());
}

TEST(DeltaW, AbelianIsNotUniversal)
{
    // abelian(2) with its identity-valued cocycle: not perfect
    LieAlgebra L = abelian(2);
    Cochain2 w(2, 1);
    w.set(0, 1, Vec{1});
    UniversalityReport r = verify_universal(L, w);
    EXPECT_FALSE(r.perfect);
    EXPECT_TRUE(r.bijective[0]);
    EXPECT_FALSE(r.universal());
}

TEST(Cocycle, ZeroAndSl2EwedgeF)
{
    // every 2-cochain on sl2 is closed: d(e^f -> 1) vanishes on (h,e,f)
    LieAlgebra L = sl2();
    Cochain2 w(3, 1);
    w.set(0, 1, Vec{1});
    EXPECT_EQ(d2_at(L, w, 2, 0, 1), Vec{0});
    EXPECT_TRUE(is_cocycle(L, w));
    for (const auto& v : d2(L, Cochain2(3, 2))) EXPECT_TRUE(is_zero(v));
}

TEST(Maier, TruncatedCubicGivesZeroCocycle)
{
    MaierCocycle m = maier_cocycle(sl2(), truncated_poly(3));
    EXPECT_EQ(m.q_dim, 0u);
    EXPECT_TRUE(m.omega.is_zero());
}

TEST(Maier, LaurentAntisymmetric)
{
    LoopCurrent loop(sl2());
    UniversalForm U = universal_form(sl2());
    for (long m = -3; m <= 3; ++m)
        for (long n = -3; n <= 3; ++n)
            for (std::size_t x = 0; x < 3; ++x)
                for (std::size_t y = 0; y < 3; ++y) {
                    CurrentElement a = loop.monomial(m, x), b = loop.monomial(n, y);
                    EXPECT_TRUE(is_zero(maier_laurent(U, a, b) + maier_laurent(U, b, a)));
                }
}

TEST(DeltaW, ZeroTargetOnSl2IsUniversal)
{
    Cochain2 w(3, 0);
    UniversalityReport r = verify_universal(sl2(), w);
    EXPECT_TRUE(r.universal());
    EXPECT_FALSE(verify_universal(abelian(1), Cochain2(1, 1)).universal());
}

TEST(Extension, PointsTimesSl2EveryBasisCocycle)
{
    CommAlgebra A = functions_on_points(2);
    LieAlgebra g = sl2();
    LieAlgebra C = current_algebra(A, g), S = semidirect(A, g);
    EXPECT_EQ(S.dim(), 9u);
    CohomologySpace HC = h2(C), HS = h2(S);
    for (std::size_t r = 0; r < HC.Z2().dim(); ++r) {
        Cochain2 w0 = Cochain2::from_coords(C.dim(), 1, HC.Z2().basis_vector(r));
        Cochain2 ext = extend_cocycle(A, g, w0, unit_chooser(A));
        EXPECT_TRUE(ext.is_alternating());
        EXPECT_TRUE(is_cocycle(S, ext));
        EXPECT_EQ(restriction_map(ext, A, g), w0);
    }
    EXPECT_EQ(HS.dim(), HC.dim());
    EXPECT_TRUE(is_bijective(induced_h2_map(HS, HC, current_embedding(A, g))));
}

TEST(Extension, InjectivityArgumentSteps)
{
    CommAlgebra A = truncated_poly(2);
    LieAlgebra g = sl2();
    LieAlgebra S = semidirect(A, g);
    oracle::RatGen gen(4);
    for (int trial = 0; trial < 3; ++trial) {
        Cochain2 w = coboundary(S, random_eta(gen, 2, S.dim()));
        InjectivitySteps st = injectivity_steps(A, g, w);
        EXPECT_TRUE(st.restriction_is_coboundary);
        EXPECT_TRUE(st.vanishes_on_current);
        EXPECT_TRUE(st.vanishes_on_mixed);
        EXPECT_TRUE(st.lie_part_is_coboundary);
        EXPECT_TRUE(st.is_coboundary);
    }
    // a non-trivial class on the exterior example does not restrict to a coboundary
    CommAlgebra X = exterior_pair();
    Cochain2 ext = extend_cocycle(X, g, maier_cocycle(g, X).omega, unit_chooser(X));
    EXPECT_FALSE(injectivity_steps(X, g, ext).restriction_is_coboundary);
}
