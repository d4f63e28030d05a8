#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "random_words.hpp"
#include "strichartz/closed_forms.hpp"
#include "strichartz/errors.hpp"
#include "strichartz/lens.hpp"
#include "strichartz/symmetry.hpp"

using namespace strichartz;
using namespace testing_support;

namespace {

double lens_quotient(const ExpQuadraticParams& freq, const HermiteLens& lens, const Grid& g) {
    return lens.quotient(lens.project(sample_gaussian_maximizer(to_physical(freq), g)));
}

}  // namespace

TEST(Generators, IdentityDetection) {
    EXPECT_TRUE(is_identity(GGenerator{Translate{0.0, {0.0}}}));
    EXPECT_FALSE(is_identity(GGenerator{Phase{0.1}}));
    EXPECT_TRUE(is_identity(LGenerator{identity_rotation(3)}));
    EXPECT_FALSE(is_identity(LGenerator{Boost{1e-3}}));
    EXPECT_TRUE(is_identity(LGenerator{Boost{1e-13}}, 1e-12));
    EXPECT_FALSE(describe(LGenerator{Boost{0.5}}).empty());
}

TEST(Generators, BadArgumentsRejected) {
    const ExpQuadraticParams g = canonical_gaussian(2, Space::frequency);
    EXPECT_THROW(apply_G(g, ParabolicDilate{0.0}), InvalidArgument);
    EXPECT_THROW(apply_G(g, Galilean{{1.0}}), InvalidArgument);
    EXPECT_THROW(apply_G(g, Rotate{{1.0, 1.0, 0.0, 1.0}}), InvalidArgument);
    EXPECT_THROW(apply_G(canonical_gaussian(2, Space::physical), Phase{1.0}), InvalidArgument);
    ConeExpParams edge = canonical_cone_params(3);
    edge.b[0] = 1.2;
    EXPECT_THROW(apply_L(edge, Boost{0.1}), ConstraintViolation);
}

TEST(Generators, CommutingPairsCompose) {
    const ExpQuadraticParams g = canonical_gaussian(1, Space::frequency);
    const auto a = apply_G(apply_G(g, Translate{0.2, {0.3}}), Translate{-0.5, {0.1}});
    const auto b = apply_G(g, Translate{-0.3, {0.4}});
    EXPECT_LT(coefficient_distance(a, b), 1e-15);
    const auto c = apply_G(apply_G(g, Phase{0.4}), Scale{2.0});
    const auto d = apply_G(apply_G(g, Scale{2.0}), Phase{0.4});
    EXPECT_LT(coefficient_distance(c, d), 1e-15);
}

TEST(CanonicalG, CanonicalInputGivesIdentityTrail) {
    for (int n = 1; n <= 2; ++n) {
        const CanonicalG c = canonicalize_G(canonical_gaussian(n, Space::frequency));
        for (const auto& g : c.trail) EXPECT_TRUE(is_identity(g, 1e-14)) << describe(g);
    }
}

TEST(CanonicalG, TranslationOffsetIsRemoved) {
    ExpQuadraticParams p = canonical_gaussian(1, Space::frequency);
    p.b[0] = {0.0, 0.7};
    const CanonicalG c = canonicalize_G(p);
    EXPECT_FALSE(is_identity(c.trail.front()));
    EXPECT_LT(coefficient_distance(c.canonical, canonical_gaussian(1, Space::frequency)), 1e-14);
}

TEST(CanonicalG, RandomReplayAndIdempotence) {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 50; ++k) {
        const ExpQuadraticParams p = random_gaussian(1 + k % 2, rng);
        const CanonicalG c = canonicalize_G(p);
        EXPECT_LT(coefficient_distance(replay(p, c.trail), c.canonical), 1e-10);
        EXPECT_LT(coefficient_distance(c.canonical, canonical_gaussian(p.dim(), Space::frequency)), 1e-10);
        for (const auto& g : canonicalize_G(c.canonical).trail) EXPECT_TRUE(is_identity(g, 1e-10));
    }
}

TEST(CanonicalG, DilatedGaussiansAreEquivalent) {
    ExpQuadraticParams a = canonical_gaussian(2, Space::frequency);
    ExpQuadraticParams b = a;
    a.A = -1.0;
    b.A = -2.0;
    EXPECT_TRUE(orbit_equivalent(a, b));
}

TEST(CanonicalL, BoostIsUndone) {
    ConeExpParams p = canonical_cone_params(3);
    p.A = -std::cosh(1.0);
    p.b = {std::sinh(1.0), 0.0, 0.0};
    const CanonicalL c = canonicalize_L(p);
    bool boosted = false;
    for (const auto& g : c.trail)
        if (const auto* b = std::get_if<Boost>(&g)) {
            EXPECT_NEAR(b->a, -1.0, 1e-12);
            boosted = true;
        }
    EXPECT_TRUE(boosted);
    EXPECT_LT(coefficient_distance(c.canonical, canonical_cone_params(3)), 1e-12);
}

TEST(CanonicalL, RandomReplayAndIdempotence) {
    std::mt19937_64 rng(22);
    for (int k = 0; k < 50; ++k) {
        const ConeExpParams p = random_cone(2 + k % 2, rng);
        const CanonicalL c = canonicalize_L(p);
        EXPECT_LT(coefficient_distance(replay(p, c.trail), c.canonical), 1e-10);
        EXPECT_NEAR(c.canonical.A.real(), -1.0, 1e-12);
        for (const auto& g : canonicalize_L(c.canonical).trail) EXPECT_TRUE(is_identity(g, 1e-10)) << describe(g);
    }
}

TEST(OrbitEquivalence, WordsStayInOrbit) {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 20; ++k) {
        const int n = 1 + k % 2;
        const ExpQuadraticParams p = random_gaussian(n, rng);
        EXPECT_TRUE(orbit_equivalent(p, replay(p, random_g_word(n, 5, rng))));
        const ConeExpParams c = random_cone(n + 1, rng);
        EXPECT_TRUE(orbit_equivalent(c, replay(c, random_l_word(n + 1, 5, rng))));
    }
}

TEST(OrbitEquivalence, BranchAmplitudeOffsetSeparatesOrbits) {
    const ConeExpParams a = canonical_cone_params(3);
    ConeExpParams b = a;
    b.D += 0.5;
    EXPECT_FALSE(orbit_equivalent(a, b));
    EXPECT_FALSE(orbit_equivalent(canonical_cone_params(2), a));
}

TEST(QuotientInvariance, SchrodingerWordsInHermiteSpan) {
    // Small words keep the Gaussian well inside the degree-24 span, where the
    // lens quotient is exact over the whole time line.
    const HermiteLens lens(1, 24);
    const Grid g(1, 512, 16.0);
    std::mt19937_64 rng(24);
    const ExpQuadraticParams base = canonical_gaussian(1, Space::frequency);
    EXPECT_NEAR(lens_quotient(base, lens, g), oracle::s1(), 1e-12);
    for (int k = 0; k < 10; ++k) {
        const ExpQuadraticParams p = replay(base, random_g_word(1, 5, rng, 0.5));
        EXPECT_NEAR(lens_quotient(p, lens, g), oracle::s1(), 1e-6);
    }
}

TEST(QuotientInvariance, ConeWordsWithoutBoost) {
    std::mt19937_64 rng(25);
    const ConeExpParams base = canonical_cone_params(3);
    for (int k = 0; k < 5; ++k) {
        // the light-cone closed form needs Re b = 0, which every generator but the boost keeps
        const ConeExpParams p = replay(base, random_l_word(3, 5, rng, false));
        EXPECT_NEAR(wave_quotient_closed_form(p).quotient, oracle::w3(), 1e-6);
    }
}
