#include "oracles.hpp"

#include "paramod/error.hpp"
#include "paramod/matrix.hpp"
#include "paramod/poly.hpp"

#include <gtest/gtest.h>

using namespace paramod;

namespace {

Scalar q(long n, long d = 1) { return Scalar(n, d); }

Mat random_mat(oracle::Rng& rng, std::size_t r, std::size_t c) {
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.rational(9, 4);
    return m;
}

std::vector<std::vector<Scalar>> rows_of(const Mat& m) {
    std::vector<std::vector<Scalar>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
    return out;
}

} // namespace

TEST(Scalar, CanonicalRationals) {
    EXPECT_EQ(Scalar::parse("6/8").str(), "3/4");
    EXPECT_EQ(Scalar::parse("-4/2").str(), "-2");
    EXPECT_EQ(Scalar::parse("3/6").str(), "1/2");
    EXPECT_TRUE(Scalar::parse("10/5").is_integer());
    EXPECT_FALSE(Scalar::parse("1/3").is_integer());
}

TEST(Scalar, GaussianRoundTrip) {
    for (const char* s : {"1/2+1/3*i", "-1/2-3*i", "5*i", "-7/9*i"}) {
        Scalar x = Scalar::parse(s);
        EXPECT_EQ(Scalar::parse(x.str()), x) << s;
    }
    Scalar i = Scalar::parse("1*i");
    EXPECT_EQ(i * i, q(-1));
    EXPECT_FALSE(i.is_integer());
    EXPECT_EQ((q(1) + i) / (q(1) - i), i);
}

TEST(Scalar, RejectsGarbage) {
    EXPECT_THROW(Scalar::parse("abc"), Error);
    EXPECT_THROW(Scalar::parse("1/0"), Error);
    EXPECT_THROW(Scalar::parse(""), Error);
    EXPECT_THROW(Scalar::parse("3/-6"), Error);
}

TEST(Scalar, FieldAxiomsOnRandomValues) {
    oracle::Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        Scalar a = rng.rational(50, 13), b = rng.rational(50, 13), c = rng.rational(50, 13);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a + b) - b, a);
        if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    }
}

TEST(Projective, Canonicalization) {
    ProjectivePoint p(q(2), q(3));
    EXPECT_EQ(p, ProjectivePoint::finite(q(3, 2)));
    EXPECT_EQ(ProjectivePoint(q(0), q(-5)), ProjectivePoint::infinity());
    EXPECT_EQ(ProjectivePoint::parse("inf").str(), "inf");
    EXPECT_EQ(ProjectivePoint::parse("-1/2"), ProjectivePoint::finite(q(-1, 2)));
    EXPECT_THROW(ProjectivePoint(q(0), q(0)), Error);
}

TEST(Projective, ScalingInvariance) {
    oracle::Rng rng(12);
    for (int k = 0; k < 100; ++k) {
        Scalar kap = rng.chance(20) ? q(0) : rng.rational(9, 4);
        Scalar lam = rng.rational(9, 4);
        if (kap.is_zero() && lam.is_zero()) continue;
        Scalar t(0);
        while (t.is_zero()) t = rng.rational(9, 4);
        ProjectivePoint p(kap, lam);
        EXPECT_EQ(p, ProjectivePoint(kap * t, lam * t));
        EXPECT_EQ(ProjectivePoint(p.kappa(), p.lambda()), p);
    }
}

TEST(Matrix, DeterminantExamples) {
    Mat v{{1, 0, 0}, {1, 1, 1}, {1, 2, 4}};
    EXPECT_EQ(det(v), q(2));
    EXPECT_EQ(det(Mat::identity(5)), q(1));
    Mat rep{{1, 2, 3}, {4, 5, 6}, {1, 2, 3}};
    EXPECT_EQ(det(rep), q(0));
    EXPECT_THROW(det(Mat(2, 3)), Error);
}

TEST(Matrix, RankExamples) {
    EXPECT_EQ(rank(Mat(3, 3)), 0u);
    EXPECT_EQ(rank(Mat{{1, 0, 0}, {1, 1, 1}, {1, 2, 2}}), 2u);
    oracle::Rng rng(13);
    for (int k = 0; k < 20; ++k) {
        auto z = oracle::random_config(rng);
        Mat m(5, 5);
        for (std::size_t i = 0; i < 5; ++i) {
            Scalar u = rng.rational(1000, 997);
            m(i, 0) = 1;
            m(i, 1) = z[i];
            m(i, 2) = z[i] * z[i];
            m(i, 3) = u;
            m(i, 4) = u * z[i];
        }
        EXPECT_EQ(rank(m), oracle::gauss_rank(rows_of(m)));
    }
}

TEST(Matrix, DeterminantAgreesWithLeibniz) {
    oracle::Rng rng(14);
    for (int k = 0; k < 50; ++k) {
        Mat m = random_mat(rng, 4, 4);
        EXPECT_EQ(det(m), oracle::leibniz_det(rows_of(m)));
    }
}

TEST(Matrix, DeterminantIsMultiplicativeAndAlternating) {
    oracle::Rng rng(15);
    for (int k = 0; k < 50; ++k) {
        Mat a = random_mat(rng, 3, 3), b = random_mat(rng, 3, 3);
        EXPECT_EQ(det(a * b), det(a) * det(b));
        Mat s = a;
        for (std::size_t j = 0; j < 3; ++j) std::swap(s(0, j), s(2, j));
        EXPECT_EQ(det(s), -det(a));
        Mat t = a;
        Scalar c = rng.rational(5, 3);
        for (std::size_t j = 0; j < 3; ++j) t(1, j) *= c;
        EXPECT_EQ(det(t), c * det(a));
    }
}

TEST(Matrix, RankOfTransposeAndNullspace) {
    oracle::Rng rng(16);
    for (int k = 0; k < 50; ++k) {
        std::size_t r = static_cast<std::size_t>(rng.uniform(1, 5)), c = static_cast<std::size_t>(rng.uniform(1, 6));
        Mat m = random_mat(rng, r, c);
        if (rng.chance(50) && r > 1)
            for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * q(2);
        EXPECT_EQ(rank(m), rank(m.transpose()));
        auto ns = nullspace(m);
        EXPECT_EQ(ns.size() + rank(m), c);
        for (const auto& v : ns)
            for (const auto& x : m * v) EXPECT_TRUE(x.is_zero());
    }
}

TEST(Matrix, SolveAffine) {
    Mat m{{1, 1}, {1, -1}};
    auto s = solve_affine(m, {q(3), q(1)});
    ASSERT_TRUE(s);
    EXPECT_EQ(s->particular, (Vec{q(2), q(1)}));
    EXPECT_EQ(s->dimension(), 0u);
    EXPECT_FALSE(solve_affine(Mat{{1, 1}, {1, 1}}, {q(1), q(2)}));
}

TEST(Poly, InterpolationExamples) {
    auto r = interpolate({{q(0), q(0)}, {q(1), q(1)}}, 1);
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, Poly({q(0), q(1)}));
    EXPECT_FALSE(interpolate({{q(0), q(0)}, {q(1), q(1)}, {q(2), q(3)}}, 1));
    auto line = interpolate({{q(0), q(0)}, {q(1), q(1)}, {q(2), q(2)}, {q(3), q(3)}}, 3);
    ASSERT_TRUE(line);
    EXPECT_EQ(line->degree(), 1);
    EXPECT_EQ(*line, Poly({q(0), q(1)}));
    EXPECT_THROW(interpolate({{q(1), q(0)}, {q(1), q(2)}}, 2), Error);
}

TEST(Poly, ArithmeticAndBounds) {
    Poly a({q(1), q(2)});
    Poly b({q(-1), q(0), q(1)});
    EXPECT_EQ((a * b).degree(), 3);
    EXPECT_EQ((a * b)(q(2)), a(q(2)) * b(q(2)));
    auto [quo, rem] = (a * b + Poly({q(5)})).divmod(b);
    EXPECT_EQ(quo, a);
    EXPECT_EQ(rem, Poly({q(5)}));
    EXPECT_THROW(Poly({q(1), q(1), q(1)}, 1), Error);
    EXPECT_EQ(gcd(Poly::from_roots({q(1), q(2)}), Poly::from_roots({q(2), q(3)})), Poly::linear(q(2)));
}

TEST(Poly, DividedDifferenceIdentity) {
    oracle::Rng rng(17);
    for (int k = 0; k < 200; ++k) {
        auto cfg = oracle::random_config(rng);
        std::vector<Scalar> c;
        for (int e = 0; e <= 3; ++e) c.push_back(rng.rational(20, 7));
        Poly p(c);
        Scalar s(0);
        for (std::size_t i = 0; i < 5; ++i) s += p(cfg[i]) / oracle::lagrange_weight(cfg, i);
        EXPECT_TRUE(s.is_zero());
        // Degree 4 is where the identity stops: the sum is the leading coefficient.
        Poly p4 = p + Poly::monomial(4, q(3));
        Scalar s4(0);
        for (std::size_t i = 0; i < 5; ++i) s4 += p4(cfg[i]) / oracle::lagrange_weight(cfg, i);
        EXPECT_EQ(s4, q(3));
    }
}
