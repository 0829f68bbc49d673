#include "oracles.hpp"

#include "paramod/error.hpp"

#include <gtest/gtest.h>

using namespace paramod;

namespace {

Scalar q(long n, long d = 1) { return Scalar(n, d); }

SpectrumRank2 constant_spectrum(const Scalar& plus, const Scalar& minus, int d) {
    std::array<std::pair<Scalar, Scalar>, kPoints> nu;
    nu.fill({plus, minus});
    return SpectrumRank2::make(nu, d);
}

WeightVector uniform(const Scalar& x) {
    WeightVector w;
    w.fill(x);
    return w;
}

// Kostov-genericity read straight off the sign sums.
bool sums_avoid_integers(const SpectrumRank2& nu) {
    for (unsigned m = 0; m < 32; ++m) {
        Scalar s(0);
        for (std::size_t i = 0; i < kPoints; ++i) s += (m >> i) & 1u ? nu.nu[i].second : nu.nu[i].first;
        if (s.is_integer()) return false;
    }
    return true;
}

Scalar fuchs_sum(const SpectrumRank2& nu) {
    Scalar s(nu.d);
    for (const auto& [a, b] : nu.nu) s += a + b;
    return s;
}

} // namespace

TEST(Spectrum, FuchsIsEnforced) {
    EXPECT_NO_THROW(constant_spectrum(q(1, 4), q(-1, 4), 0));
    EXPECT_THROW(constant_spectrum(q(1, 4), q(-1, 4), 1), Error);
}

TEST(Spectrum, PredicateExamples) {
    auto p = spectrum_predicates(constant_spectrum(q(1, 4), q(-1, 4), 0));
    EXPECT_TRUE(p.kostov_generic);
    EXPECT_TRUE(p.non_resonant);
    EXPECT_TRUE(p.non_special);
    EXPECT_FALSE(spectrum_predicates(constant_spectrum(q(1, 5), q(-1, 5), 0)).kostov_generic);
    // nu+ - nu- = 0 is an integer, so the zero spectrum is resonant.
    auto z = spectrum_predicates(constant_spectrum(q(0), q(0), 0));
    EXPECT_FALSE(z.kostov_generic);
    EXPECT_FALSE(z.non_resonant);
    EXPECT_FALSE(z.non_special);
}

TEST(Spectrum, PredicatesMatchDirectEnumeration) {
    oracle::Rng rng(41);
    for (int k = 0; k < 300; ++k) {
        std::array<std::pair<Scalar, Scalar>, kPoints> nu;
        Scalar acc(0);
        for (auto& [a, b] : nu) {
            a = Scalar(rng.uniform(-8, 8), rng.uniform(1, 4));
            b = Scalar(rng.uniform(-8, 8), rng.uniform(1, 4));
            acc += a + b;
        }
        int d = static_cast<int>(rng.uniform(-2, 2));
        nu[4].second -= acc + Scalar(d);
        auto s = SpectrumRank2::make(nu, d);
        auto p = spectrum_predicates(s);
        EXPECT_EQ(p.kostov_generic, sums_avoid_integers(s));
        bool nr = true;
        for (const auto& [a, b] : s.nu) nr = nr && !(a - b).is_integer();
        EXPECT_EQ(p.non_resonant, nr);
        EXPECT_EQ(p.non_special, p.kostov_generic && p.non_resonant);
    }
}

TEST(Elm, WeightExamples) {
    auto w = elm_weight(uniform(q(1, 4)), 0);
    EXPECT_EQ(w, (WeightVector{q(3, 4), q(1, 4), q(1, 4), q(1, 4), q(1, 4)}));
    EXPECT_EQ(elm_weight(w, 0), uniform(q(1, 4)));
    EXPECT_THROW(elm_weight(uniform(q(0)), 1), Error);
    EXPECT_THROW(elm_weight(uniform(q(1, 4)), 5), Error);
}

TEST(Elm, SpectrumExamples) {
    auto nu = elm_spectrum(constant_spectrum(q(1, 4), q(-1, 4), 0), 0);
    EXPECT_EQ(nu.d, -1);
    EXPECT_EQ(nu.nu[0], std::make_pair(q(3, 4), q(1, 4)));
    EXPECT_EQ(nu.nu[1], std::make_pair(q(1, 4), q(-1, 4)));
    auto twice = elm_spectrum(nu, 0);
    EXPECT_EQ(twice.d, -2);
    EXPECT_EQ(twice.nu[0], std::make_pair(q(5, 4), q(3, 4)));

    std::array<std::pair<Scalar, Scalar>, kPoints> raw;
    raw.fill({q(1, 3), q(-1, 3)});
    raw[2] = {q(0), q(0)};
    auto res = elm_spectrum(SpectrumRank2::make(raw, 0), 2);
    EXPECT_EQ(res.nu[2], std::make_pair(q(1), q(0)));
    EXPECT_FALSE(spectrum_predicates(res).non_resonant);
}

TEST(Elm, PreservesPredicatesAndFuchs) {
    oracle::Rng rng(42);
    for (int k = 0; k < 200; ++k) {
        int d = static_cast<int>(rng.uniform(-2, 3));
        auto nu = oracle::random_spectrum(rng, d);
        auto j = static_cast<std::size_t>(rng.uniform(0, 4));
        auto e = elm_spectrum(nu, j);
        EXPECT_EQ(e.d, d - 1);
        EXPECT_TRUE(fuchs_sum(e).is_zero());
        auto p = spectrum_predicates(e);
        EXPECT_TRUE(p.kostov_generic && p.non_resonant);
    }
}

TEST(Elm, WitnessConservesSValue) {
    oracle::Rng rng(43);
    for (int k = 0; k < 500; ++k) {
        int d = static_cast<int>(rng.uniform(-2, 3));
        auto w = oracle::random_weight(rng, d);
        int deg = static_cast<int>(rng.uniform(-3, 3));
        auto contact = static_cast<ContactSet>(rng.uniform(0, 31));
        auto j = static_cast<std::size_t>(rng.uniform(0, 4));
        auto e = elm_witness(deg, contact, j);
        EXPECT_EQ(s_value(d, deg, contact, w), s_value(d - 1, e.degree, e.contact, elm_weight(w, j)));
        // Only the membership of j can change.
        EXPECT_EQ(e.contact & ~(1u << j), contact & ~(1u << j));
    }
}

TEST(MiddleConvolution, Example) {
    MCBranch b = MCBranch::parse("+++++", {q(-1, 4), q(-1, 4), q(-1, 4), q(-1, 4), q(-1, 4)});
    auto mc = mc_spectrum(constant_spectrum(q(1, 4), q(-1, 4), 0), b);
    EXPECT_EQ(mc.rank, 3);
    EXPECT_EQ(mc.d, 0);
    EXPECT_EQ(mc.betaK, q(5, 4));
    for (const auto& t : mc.triples) EXPECT_EQ(t, (std::array<Scalar, 3>{q(-1, 4), q(-1, 4), q(1, 2)}));
    EXPECT_EQ(b.sigma_str(), "+++++");
}

TEST(MiddleConvolution, Rejections) {
    auto nu = constant_spectrum(q(1, 4), q(-1, 4), 0);
    // Sum of beta_V must be -beta_K.
    EXPECT_THROW(mc_spectrum(nu, MCBranch::parse("+++++", {q(0), q(0), q(0), q(0), q(0)})), Error);
    EXPECT_THROW(mc_spectrum(constant_spectrum(q(1, 5), q(-1, 5), 0),
                             MCBranch::parse("+++++", {q(-1, 5), q(-1, 5), q(-1, 5), q(-1, 5), q(-1, 5)})),
                 Error);
    EXPECT_THROW(MCBranch::parse("++x++", {}), Error);
}

TEST(MiddleConvolution, RankDegreeAndFuchs) {
    oracle::Rng rng(44);
    int admissible = 0;
    for (int k = 0; k < 300; ++k) {
        int d = static_cast<int>(rng.uniform(-2, 3));
        auto nu = oracle::random_spectrum(rng, d);
        MCBranch b;
        Scalar sumH(0);
        for (std::size_t i = 0; i < kPoints; ++i) {
            b.sigma[i] = rng.chance(50) ? 1 : -1;
            sumH += nu.pick(i, b.sigma[i]);
        }
        Scalar rest(0);
        for (std::size_t i = 0; i + 1 < kPoints; ++i) {
            b.betaV[i] = rng.rational(30, 11);
            rest += b.betaV[i];
        }
        b.betaV[4] = -sumH - rest;
        MCSpectrumRank3 mc;
        try {
            mc = mc_spectrum(nu, b);
        } catch (const Error& e) {
            ASSERT_EQ(e.kind(), ErrorKind::precondition);
            continue;
        }
        ++admissible;
        EXPECT_EQ(mc.rank, 3);
        EXPECT_EQ(mc.d, d);
        Scalar total(d);
        for (const auto& t : mc.triples)
            for (const auto& x : t) total += x;
        EXPECT_TRUE(total.is_zero());
        for (std::size_t i = 0; i < kPoints; ++i) {
            EXPECT_EQ(mc.triples[i][0], mc.triples[i][1]);
            EXPECT_NE(mc.triples[i][2], mc.triples[i][0]);
            EXPECT_EQ(mc.betaU[i], mc.betaK - mc.betaH[i] - b.betaV[i]);
        }
    }
    EXPECT_GT(admissible, 200);
}

TEST(CharacterPoly, Examples) {
    EXPECT_EQ(character_poly(q(0), q(0), q(0), q(0), q(0)), q(16));
    EXPECT_EQ(character_poly(q(2), q(2), q(2), q(2), q(2)), q(48));
}

TEST(CharacterPoly, DihedralInvariance) {
    oracle::Rng rng(45);
    for (int k = 0; k < 200; ++k) {
        Scalar x = rng.rational(9, 5), y = rng.rational(9, 5), z = rng.rational(9, 5), u = rng.rational(9, 5),
               v = rng.rational(9, 5);
        Scalar f = character_poly(x, y, z, u, v);
        EXPECT_EQ(f, character_poly(y, z, u, v, x));
        EXPECT_EQ(f, character_poly(v, u, z, y, x));
    }
}
