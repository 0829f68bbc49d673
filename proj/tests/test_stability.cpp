#include "oracles.hpp"

#include "paramod/error.hpp"

#include <gtest/gtest.h>

using namespace paramod;

namespace {

Scalar q(long n, long d = 1) { return Scalar(n, d); }

MarkedConfiguration z01234() { return MarkedConfiguration({q(0), q(1), q(2), q(3), q(4)}); }

ParabolicStructure make(const BundleType& b, std::initializer_list<const char*> u) {
    ParabolicStructure L{b, {}};
    std::size_t i = 0;
    for (const char* s : u) L.u[i++] = ProjectivePoint::parse(s);
    return L;
}

WeightVector uniform(const Scalar& x) {
    WeightVector w;
    w.fill(x);
    return w;
}

WeightVector weights(std::initializer_list<Scalar> v) {
    WeightVector w;
    std::copy(v.begin(), v.end(), w.begin());
    return w;
}

} // namespace

TEST(Weights, KostovExamples) {
    EXPECT_TRUE(weight_is_kostov_generic(uniform(q(1, 4)), 1));
    EXPECT_FALSE(weight_is_kostov_generic(uniform(q(1, 5)), 1));
    EXPECT_TRUE(weight_is_kostov_generic(uniform(q(0)), 1));
    EXPECT_FALSE(weight_is_kostov_generic(uniform(q(0)), 2));
    EXPECT_TRUE(weight_is_non_resonant(uniform(q(1, 4))));
    EXPECT_FALSE(weight_is_non_resonant(uniform(q(0))));
    EXPECT_THROW(validate_weight(uniform(q(1))), Error);
    EXPECT_THROW(validate_weight(uniform(q(-1, 3))), Error);
}

TEST(Weights, SValueExamples) {
    EXPECT_EQ(s_value(1, 1, 0, uniform(q(1, 4))), q(1, 4));
    WeightVector w = weights({q(1, 7), q(2, 7), q(3, 8), q(1, 2), q(9, 10)});
    Scalar total(0);
    for (const auto& x : w) total += x;
    EXPECT_EQ(s_value(1, -1, 31, w), q(3) - total);
}

TEST(Contact, IndexRoundTrip) {
    for (ContactSet s = 0; s < 32; ++s) EXPECT_EQ(contact_from_indices(contact_indices(s)), s);
    EXPECT_EQ(lowest_relevant_degree(1), -1);
    EXPECT_EQ(lowest_relevant_degree(0), -2);
    EXPECT_EQ(lowest_relevant_degree(5), 1);
    EXPECT_EQ(lowest_relevant_degree(-2), -3);
}

TEST(Candidates, Examples) {
    oracle::Rng rng(31);
    auto cfg = z01234();
    auto flat = oracle::det_zero_structure(rng, cfg);
    bool full = false;
    for (const auto& c : destabilizing_candidates(flat, cfg)) full = full || (c.degree == -1 && c.contact == 31u);
    EXPECT_TRUE(full);

    auto gen = oracle::generic_structure(rng, BundleType::B());
    ASSERT_FALSE(oracle::leibniz_det(oracle::delta_matrix(gen, cfg)).is_zero());
    std::vector<ContactSet> minus1;
    for (const auto& c : destabilizing_candidates(gen, cfg))
        if (c.degree == -1) minus1.push_back(c.contact);
    std::sort(minus1.begin(), minus1.end());
    EXPECT_EQ(minus1, (std::vector<ContactSet>{15, 23, 27, 29, 30}));

    // The degree-1 summand meets exactly the flags at infinity.
    for (unsigned mask : {0u, 0b00101u, 0b11100u}) {
        auto L = oracle::generic_structure(rng, BundleType::B(), mask);
        int hits = 0;
        for (const auto& c : destabilizing_candidates(L, cfg))
            if (c.degree == 1) hits += c.contact == mask;
        EXPECT_EQ(hits, 1) << mask;
    }
}

TEST(Candidates, WitnessesAreSaturatedWithExactContact) {
    oracle::Rng rng(32);
    for (const auto& b : {BundleType::B(), BundleType::Bprime()})
        for (int k = 0; k < 40; ++k) {
            auto cfg = oracle::random_config(rng);
            auto L = oracle::random_structure(rng, b, 20, 3, 2);
            for (const auto& c : destabilizing_candidates(L, cfg)) {
                EXPECT_EQ(contact_of(c.witness.q, c.witness.r, L, cfg), c.contact);
                EXPECT_TRUE(is_saturated(c.witness.q, c.witness.r, b.d0 - c.degree, b.d1 - c.degree));
                auto again = find_subbundle(L, cfg, c.degree, c.contact);
                ASSERT_TRUE(again);
                EXPECT_EQ(contact_of(again->q, again->r, L, cfg), c.contact);
            }
        }
}

TEST(IsStable, Examples) {
    auto cfg = z01234();
    auto L = make(BundleType::B(), {"0", "0", "0", "0", "1"});
    EXPECT_TRUE(is_stable(L, cfg, uniform(q(1, 4))).stable);
    auto r = is_stable(L, cfg, uniform(q(1, 10)));
    EXPECT_FALSE(r.stable);
    EXPECT_EQ(r.worst.degree, 1);
    EXPECT_EQ(r.margin, q(-1, 2));
    auto M = make(BundleType::B(), {"inf", "inf", "0", "1", "3"});
    EXPECT_TRUE(is_stable(M, cfg, weights({q(3, 4), q(1, 4), q(3, 4), q(3, 4), q(3, 4)})).stable);
    EXPECT_THROW(is_stable(L, cfg, uniform(q(1, 5))), Error);
}

TEST(IsStable, ClosedFormAgreesOnGenericFlags) {
    oracle::Rng rng(33);
    for (int k = 0; k < 200; ++k) {
        auto cfg = oracle::random_config(rng);
        auto w = oracle::random_weight(rng, 1);
        unsigned mask = static_cast<unsigned>(rng.uniform(0, 31));
        if (rng.chance(50)) mask = 0;
        auto LB = k % 5 == 0 ? oracle::det_zero_structure(rng, cfg) : oracle::generic_structure(rng, BundleType::B(), mask);
        EXPECT_EQ(is_stable(LB, cfg, w).stable, oracle::closed_form_stable_B(LB, cfg, w)) << k;
        auto LP = oracle::generic_structure(rng, BundleType::Bprime(), mask);
        if (k % 5 == 0) {
            // rk_L = 4: flags on a cubic.
            for (std::size_t i = 0; i < kPoints; ++i)
                LP.u[i] = ProjectivePoint::finite(Scalar(2) - cfg[i] * cfg[i] * cfg[i] + Scalar(k) * cfg[i]);
        }
        EXPECT_EQ(is_stable(LP, cfg, w).stable, oracle::closed_form_stable_Bprime(LP, cfg, w)) << k;
    }
}

TEST(IsStable, MarginMatchesSubsheafEnumeration) {
    oracle::Rng rng(34);
    for (const auto& b : {BundleType::B(), BundleType::Bprime()})
        for (int k = 0; k < 100; ++k) {
            auto cfg = oracle::random_config(rng);
            auto w = oracle::random_weight(rng, 1);
            // Small flag values make coincidences and collinearities frequent.
            auto L = oracle::random_structure(rng, b, 25, 2, 1);
            EXPECT_EQ(is_stable(L, cfg, w).margin, oracle::subsheaf_margin(L, cfg, w)) << k;
        }
}

TEST(IsStable, CollinearTripleHidesDestabilizingPair) {
    // Flags 1..3 lie on u = 0; the pair {4, 5} still spans a degree-0 subbundle r = 2z - 1.
    auto cfg = z01234();
    auto L = make(BundleType::B(), {"0", "0", "0", "5", "7"});
    auto w = weights({q(1, 20), q(1, 20), q(1, 20), q(7, 10), q(7, 10)});
    ASSERT_TRUE(weight_is_kostov_generic(w, 1));
    EXPECT_TRUE(oracle::closed_form_stable_B(L, cfg, w));
    auto r = is_stable(L, cfg, w);
    EXPECT_FALSE(r.stable);
    EXPECT_EQ(r.worst.degree, 0);
    EXPECT_EQ(r.worst.contact, 0b11000u);
    EXPECT_EQ(r.margin, q(-1, 4));
    EXPECT_EQ(r.margin, oracle::subsheaf_margin(L, cfg, w));
}

TEST(Stabilizing, WitnessWeights) {
    EXPECT_EQ(stabilizing_weight(StratumId::parse_label("B", "U2")), uniform(q(4, 15)));
    EXPECT_EQ(stabilizing_weight(StratumId::parse_label("B", "Ui(2)")), uniform(q(7, 15)));
    EXPECT_EQ(stabilizing_weight(StratumId::parse_label("B", "Uij''(1,2)")),
              weights({q(11, 15), q(4, 15), q(11, 15), q(11, 15), q(11, 15)}));
    EXPECT_THROW(stabilizing_weight(StratumId::parse_label("B", "Uij'(1,2)")), Error);
}

TEST(Stabilizing, RepresentativesAreStable) {
    oracle::Rng rng(35);
    for (int k = 0; k < 30; ++k) {
        auto cfg = oracle::random_config(rng);
        unsigned mask = k % 3 == 0 ? 0u : k % 3 == 1 ? 1u << rng.uniform(0, 4) : 0b10010u;
        auto L = oracle::generic_structure(rng, BundleType::B(), mask);
        auto s = classify(L, cfg);
        ASSERT_FALSE(s.decomposable);
        EXPECT_TRUE(is_stable(L, cfg, stabilizing_weight(s)).stable) << s.label();
    }
}

TEST(Emptiness, Examples) {
    EXPECT_TRUE(no_stable_structure(uniform(q(1, 10)), BundleType::B()));
    EXPECT_FALSE(no_stable_structure(uniform(q(4, 15)), BundleType::B()));
    EXPECT_TRUE(no_stable_structure(uniform(q(1, 4)), BundleType::Bprime()));
    EXPECT_THROW(no_stable_structure(uniform(q(1, 4)), BundleType{0, 0}), Error);
}

TEST(Emptiness, NoStableRandomStructure) {
    oracle::Rng rng(36);
    for (int k = 0; k < 200; ++k) {
        auto cfg = oracle::random_config(rng);
        auto w = oracle::random_weight(rng, 1);
        for (const auto& b : {BundleType::B(), BundleType::Bprime()}) {
            if (!no_stable_structure(w, b)) continue;
            auto L = oracle::random_structure(rng, b, 20);
            EXPECT_FALSE(is_stable(L, cfg, w).stable);
        }
    }
}

TEST(Chamber, Examples) {
    auto c = chamber_classify(uniform(q(4, 15)), 1);
    EXPECT_EQ(c.intervals.size(), 32u);
    bool all_plus = false;
    for (const auto& iv : c.intervals)
        if (iv.eps == std::array<int, kPoints>{1, 1, 1, 1, 1}) {
            all_plus = true;
            EXPECT_EQ(iv.lower, 1);
        }
    EXPECT_TRUE(all_plus);
    EXPECT_THROW(chamber_classify(uniform(q(1, 5)), 1), Error);
    EXPECT_NO_THROW(chamber_classify(uniform(q(0)), 1));
}

TEST(Chamber, IntervalsBracketTheFunctionals) {
    oracle::Rng rng(37);
    for (int k = 0; k < 100; ++k) {
        int d = static_cast<int>(rng.uniform(-2, 3));
        auto w = oracle::random_weight(rng, d);
        for (const auto& iv : chamber_classify(w, d).intervals) {
            Scalar s(0);
            for (std::size_t i = 0; i < kPoints; ++i) s += Scalar(iv.eps[i]) * w[i];
            EXPECT_LT(Scalar(iv.lower), s);
            EXPECT_LT(s, Scalar(iv.lower + 2));
            EXPECT_EQ(((iv.lower - d) % 2 + 2) % 2, 0);
        }
    }
}
