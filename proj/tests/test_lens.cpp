#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "strichartz/closed_forms.hpp"
#include "strichartz/errors.hpp"
#include "strichartz/lens.hpp"
#include "strichartz/quadrature.hpp"

using namespace strichartz;

TEST(HermiteFunctions, Orthonormal) {
    const int m = 20;
    const GaussRule r = gauss_hermite(40);
    std::vector<std::vector<double>> phi;
    for (double y : r.nodes) phi.push_back(hermite_functions(m, y));
    for (int j = 0; j <= m; ++j)
        for (int k = 0; k <= m; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i)
                s += r.weights[i] * std::exp(r.nodes[i] * r.nodes[i]) * phi[i][static_cast<std::size_t>(j)] *
                     phi[i][static_cast<std::size_t>(k)];
            EXPECT_NEAR(s, j == k ? 1.0 : 0.0, 1e-13) << j << " " << k;
        }
}

TEST(HermiteFunctions, GroundState) {
    const auto v = hermite_functions(3, 0.7);
    EXPECT_NEAR(v[0], std::pow(oracle::pi, -0.25) * std::exp(-0.245), 1e-15);
    EXPECT_NEAR(v[1], std::sqrt(2.0) * 0.7 * v[0], 1e-15);
}

TEST(HermiteLens, GroundStateGivesSharpConstant) {
    EXPECT_NEAR(HermiteLens(1, 0).quotient({1.0}), oracle::s1(), 1e-13);
    EXPECT_NEAR(HermiteLens(2, 0).quotient({1.0}), oracle::s2(), 1e-13);
    HermiteLens l1(1, 12);
    std::vector<cplx> a(l1.size(), 0.0);
    a[0] = cplx(0.3, -2.0);
    EXPECT_NEAR(l1.quotient(a), oracle::s1(), 1e-13);
}

TEST(HermiteLens, ExcitedStatesAreBelow) {
    const HermiteLens l(1, 8);
    for (std::size_t k = 1; k < l.size(); ++k) {
        std::vector<cplx> a(l.size(), 0.0);
        a[k] = 1.0;
        EXPECT_LT(l.quotient(a), oracle::s1() - 1e-3) << k;
    }
}

TEST(HermiteLens, ProjectAndSampleRoundTrip) {
    const HermiteLens l(2, 10);
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g;
    std::vector<cplx> a(l.size());
    for (auto& c : a) c = {g(rng), g(rng)};
    const Grid grid(2, 128, 12.0);
    const std::vector<cplx> b = l.project(l.sample(a, grid));
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(std::abs(a[k] - b[k]), 0.0, 1e-10);
}

TEST(HermiteLens, QuotientMatchesWindowedFftForGaussian) {
    // Lens of the sampled Gaussian equals S; the FFT window value is below by the tail.
    const HermiteLens l(1, 24);
    const Grid g(1, 1024, 20.0);
    const auto f = sample_gaussian_maximizer(canonical_gaussian(1, Space::physical), g);
    EXPECT_NEAR(l.quotient(l.project(f)), oracle::s1(), 1e-12);
}

TEST(HermiteLens, GradientMatchesFiniteDifferences) {
    for (int n = 1; n <= 2; ++n) {
        const HermiteLens l(n, n == 1 ? 10 : 5);
        std::mt19937_64 rng(42 + n);
        std::normal_distribution<double> g;
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<cplx> a(l.size()), h(l.size());
            for (auto& c : a) c = {g(rng), g(rng)};
            for (auto& c : h) c = {g(rng), g(rng)};
            std::vector<cplx> grad;
            l.power_ratio(a, &grad);
            double analytic = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) analytic += (std::conj(grad[k]) * h[k]).real();
            const double eps = 1e-5;
            std::vector<cplx> ap(a), am(a);
            for (std::size_t k = 0; k < a.size(); ++k) {
                ap[k] += eps * h[k];
                am[k] -= eps * h[k];
            }
            const double fd = (l.power_ratio(ap) - l.power_ratio(am)) / (2 * eps);
            EXPECT_NEAR(analytic, fd, 1e-6 * std::abs(fd) + 1e-12) << n;
        }
    }
}

TEST(HermiteLens, BadArguments) {
    EXPECT_THROW(HermiteLens(3, 4), Error);
    EXPECT_THROW(HermiteLens(1, -1), Error);
    EXPECT_THROW(HermiteLens(1, 4).quotient({1.0}), Error);
}
