#include "univext/calg.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace univext;

TEST(ValidateAlg, Examples)
{
    EXPECT_FALSE(validate_alg(functions_on_points(3)).has_value());
    EXPECT_FALSE(validate_alg(truncated_poly(3)).has_value());
    EXPECT_FALSE(validate_alg(exterior_pair()).has_value());
    // e0 e0 = e0, e0 e1 = e0: (e0 e1) e1 = e0 but e0 (e1 e1) = 0
    CommAlgebra bad(2);
    bad.set_product(0, 0, Vec{1, 0});
    bad.set_product(0, 1, Vec{1, 0});
    auto v = validate_alg(bad);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->kind, AlgViolation::Kind::associativity);

    CommAlgebra noncomm(2);
    noncomm.set_product_raw(0, 1, Vec{1, 0});
    EXPECT_EQ(validate_alg(noncomm)->kind, AlgViolation::Kind::commutativity);

    CommAlgebra wrong_unit = truncated_poly(2);
    wrong_unit.set_unit(Vec{0, 1});
    EXPECT_EQ(validate_alg(wrong_unit)->kind, AlgViolation::Kind::unit);
}

TEST(Unitalisation, Examples)
{
    CommAlgebra dual = unitalisation(zero_product(1));
    EXPECT_EQ(dual.dim(), 2u);
    // the adjoined generator squares to zero: Q[eps]/eps^2
    EXPECT_EQ(dual.mul(Vec{0, 1}, Vec{0, 1}), (Vec{0, 0}));
    EXPECT_EQ(dual.unit(), (Vec{1, 0}));
    EXPECT_EQ(unitalisation(functions_on_points(2)).dim(), 3u);
    for (const auto& A : {zero_product(2), functions_on_points(3), truncated_poly(3), exterior_pair()}) {
        CommAlgebra U = unitalisation(A);
        EXPECT_FALSE(validate_alg(U).has_value());
        ASSERT_TRUE(U.unit().has_value());
    }
}

TEST(Neutral, Examples)
{
    FinSuppSeq f;
    f.set(1, 3);
    f.set(2, Rat(-1, 2));
    EXPECT_EQ(neutral_for(f), FinSuppSeq::indicator({1, 2}));
    EXPECT_EQ(neutral_for(f) * f, f);

    CommAlgebra A = truncated_poly(3);
    EXPECT_EQ(neutral_for(A, Vec{0, 1, 5}), *A.unit());

    EXPECT_THROW(neutral_for(zero_product(1), Vec{1}), NotPseudoUnital);

    // canonical solve on a unit-free algebra
    CommAlgebra P = functions_on_points(3);
    Vec nu = solved_neutral(P, {Vec{0, 2, 0}});
    EXPECT_EQ(nu, (Vec{0, 1, 0}));
}

TEST(NeutralTriple, Examples)
{
    FinSuppSeq a = FinSuppSeq::indicator({1}), b;
    b.set(3, 7);
    auto t = neutral_triple({a, b});
    EXPECT_EQ(t.mu, FinSuppSeq::indicator({1, 3}));
    EXPECT_EQ(t.nu, t.mu);
    EXPECT_EQ(t.lambda, t.mu);
    EXPECT_TRUE(is_neutral_triple(t, a));
    EXPECT_TRUE(is_neutral_triple(t, b));

    CommAlgebra A = exterior_pair();
    auto u = neutral_triple(A, {Vec{0, 1, 0, 0}});
    EXPECT_EQ(u.mu, *A.unit());
    EXPECT_EQ(u.nu, *A.unit());
    EXPECT_EQ(u.lambda, *A.unit());

    // elements of A_m get (1_{m+2}, 1_{m+1}, 1_m)
    FinSuppSeq c;
    c.set(2, 1);
    c.set(4, -3);
    auto ch = chain_neutral_triple({c});
    EXPECT_EQ(ch.mu, FinSuppSeq::chain_unit(4));
    EXPECT_EQ(ch.nu, FinSuppSeq::chain_unit(5));
    EXPECT_EQ(ch.lambda, FinSuppSeq::chain_unit(6));
    EXPECT_TRUE(is_neutral_triple(ch, c));

    EXPECT_THROW(neutral_triple(zero_product(2), {Vec{1, 0}}), NotPseudoUnital);
}

TEST(FinSuppSeq, PseudoUnital)
{
    oracle::RatGen g(23);
    std::uniform_int_distribution<long> idx(1, 30);
    for (int t = 0; t < 50; ++t) {
        FinSuppSeq f;
        for (int k = 0; k < 5; ++k) f.set(idx(g.engine()), g());
        EXPECT_EQ(neutral_for(f) * f, f);
    }
}

TEST(Kaehler, Examples)
{
    CommAlgebra Q(1, "Q");
    Q.set_product(0, 0, Vec{1});
    Q.set_unit(Vec{1});
    EXPECT_EQ(kaehler(Q).dim(), 0u);

    KaehlerModule K = kaehler(truncated_poly(3));
    EXPECT_EQ(K.dim(), 2u);
    // dt and t dt span; t^2 dt = (1/3) d(t^3) = 0
    Vec dt = K.d(Vec{0, 1, 0});
    Vec tdt = K.action(1).apply(dt);
    EXPECT_EQ(rank(Mat::from_rows(2, {dt, tdt})), 2u);
    EXPECT_TRUE(is_zero(K.action(2).apply(dt)));

    for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(kaehler(functions_on_points(n)).dim(), 0u);

    // frozen from the sympy I/I^2 computation
    EXPECT_EQ(kaehler(exterior_pair()).dim(), 4u);
    EXPECT_THROW(kaehler(zero_product(2)), std::invalid_argument);
}

TEST(Kaehler, LeibnizAndUnit)
{
    for (const auto& A : {truncated_poly(3), truncated_poly(4), exterior_pair(), functions_on_points(3),
                          unitalisation(zero_product(2))}) {
        KaehlerModule K = kaehler(A);
        const std::size_t n = A.dim();
        EXPECT_TRUE(is_zero(K.d(*A.unit())));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Vec ea = unit_vec(n, a), eb = unit_vec(n, b);
                Vec lhs = K.d(A.mul(ea, eb));
                Vec rhs = K.action(a).apply(K.d(eb)) + K.action(b).apply(K.d(ea));
                EXPECT_EQ(lhs, rhs) << A.name();
            }
    }
}

TEST(OmegaModDA, Examples)
{
    EXPECT_EQ(omega_mod_dA(kaehler(truncated_poly(3))).dim(), 0u);
    EXPECT_EQ(omega_mod_dA(kaehler(exterior_pair())).dim(), 1u);
    CommAlgebra Q(1);
    Q.set_product(0, 0, Vec{1});
    Q.set_unit(Vec{1});
    EXPECT_EQ(omega_mod_dA(kaehler(Q)).dim(), 0u);
}

TEST(OmegaModDA, InvariantUnderBasisChange)
{
    // relabel x <-> y and rescale: same algebra up to isomorphism
    CommAlgebra A = exterior_pair();
    Mat P{{1, 0, 0, 0}, {0, 0, 2, 0}, {0, 3, 0, 0}, {0, 0, 0, 6}}; // new basis in old coordinates (columns)
    Mat Pinv = Mat{{1, 0, 0, 0}, {0, 0, Rat(1, 3), 0}, {0, Rat(1, 2), 0, 0}, {0, 0, 0, Rat(1, 6)}};
    ASSERT_EQ(P * Pinv, Mat::identity(4));
    CommAlgebra B(4, "xy-relabelled");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j) B.set_product(i, j, Pinv.apply(A.mul(P.col_vec(i), P.col_vec(j))));
    B.set_unit(Pinv.apply(*A.unit()));
    ASSERT_FALSE(validate_alg(B).has_value());
    EXPECT_EQ(kaehler(B).dim(), kaehler(A).dim());
    EXPECT_EQ(omega_mod_dA(kaehler(B)).dim(), omega_mod_dA(kaehler(A)).dim());
}

TEST(Laurent, Residue)
{
    EXPECT_EQ(laurent_residue({LaurentPoly::monomial(-1)}), 1);
    for (long k = -3; k <= 3; ++k) EXPECT_EQ(laurent_residue(laurent_d(LaurentPoly::monomial(k))), 0);
    LaurentOneForm w = LaurentPoly::monomial(2) * laurent_d(LaurentPoly::monomial(-2));
    EXPECT_EQ(laurent_residue(w), -2);
    // Leibniz for the formal derivative
    LaurentPoly a = LaurentPoly::monomial(3, 2) + LaurentPoly::monomial(-2, -1);
    LaurentPoly b = LaurentPoly::monomial(-1, 5) + LaurentPoly::monomial(1);
    EXPECT_EQ(laurent_d(a * b), a * laurent_d(b) + b * laurent_d(a));
}

TEST(KaehlerUniversal, Examples)
{
    KaehlerModule K = kaehler(truncated_poly(3));
    AModule Om = as_module(K);
    auto id = kaehler_universal_check(K, K.d_matrix(), Om);
    EXPECT_EQ(id.phi, Mat::identity(K.dim()));
    EXPECT_TRUE(id.unique);

    auto zero = kaehler_universal_check(K, Mat(K.dim(), 3), Om);
    EXPECT_TRUE(zero.phi.is_zero());

    // F = Q[t]/t^2 as a module over Q[t]/t^3, T = formal derivative
    AModule F{2, {Mat::identity(2), Mat{{0, 0}, {1, 0}}, Mat(2, 2)}};
    Mat T{{0, 1, 0}, {0, 0, 2}};
    auto res = kaehler_universal_check(K, T, F);
    EXPECT_EQ(res.phi.apply(K.d(Vec{0, 1, 0})), (Vec{1, 0}));
    EXPECT_EQ(res.phi * K.d_matrix(), T);

    // the formal derivative into A itself is not a derivation on Q[t]/t^3
    AModule Areg{3, {}};
    for (std::size_t a = 0; a < 3; ++a) Areg.rho.push_back(K.algebra().mul_matrix(unit_vec(3, a)));
    Mat Tbad{{0, 1, 0}, {0, 0, 2}, {0, 0, 0}};
    EXPECT_THROW(kaehler_universal_check(K, Tbad, Areg), LeibnizViolation);
}

TEST(KaehlerUniversal, ExteriorPair)
{
    KaehlerModule K = kaehler(exterior_pair());
    auto r = kaehler_universal_check(K, K.d_matrix(), as_module(K));
    EXPECT_EQ(r.phi, Mat::identity(K.dim()));
    EXPECT_TRUE(r.unique);
}
