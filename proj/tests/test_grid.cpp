#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "strichartz/errors.hpp"
#include "strichartz/grid.hpp"
#include "strichartz/parallel.hpp"

using namespace strichartz;
using std::numbers::pi;

TEST(Grid, RejectsBadShapes) {
    EXPECT_THROW(Grid(4, 8, 1.0), InvalidArgument);
    EXPECT_THROW(Grid(1, 0, 1.0), InvalidArgument);
    EXPECT_THROW(Grid(2, 8, -1.0), InvalidArgument);
}

TEST(Grid, FlattenRoundTrip) {
    const Grid g(3, {4, 6, 8}, {1.0, 2.0, 3.0});
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g.flatten(g.unflatten(i)), i);
    EXPECT_EQ(g.size(), 4u * 6u * 8u);
    const auto z = g.unflatten(g.zero_index());
    for (int a = 0; a < 3; ++a) EXPECT_EQ(g.wavenumber(a, z[static_cast<std::size_t>(a)]), 0);
}

TEST(Grid, DualSpacing) {
    const Grid g(1, 64, 8.0);
    EXPECT_DOUBLE_EQ(g.freq_spacing(0), pi / 8.0);
    EXPECT_DOUBLE_EQ(g.freq(0, 0), -32 * pi / 8.0);
    EXPECT_DOUBLE_EQ(g.zero_cell_freq(), 0.5 * pi / 8.0);
}

TEST(Fourier, GaussianTransform) {
    // exp(-|x|^2) -> pi^(n/2) exp(-|xi|^2 / 4)
    for (int n = 1; n <= 3; ++n) {
        const Grid g(n, 64, 8.0);
        const auto f = ComplexField::sample(g, Space::physical, [&](const std::array<double, 3>& x) {
            double r2 = 0;
            for (int a = 0; a < n; ++a) r2 += x[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)];
            return cplx(std::exp(-r2), 0.0);
        });
        const ComplexField fh = forward_fourier(f);
        double worst = 0;
        for (std::size_t i = 0; i < fh.size(); ++i) {
            const double k = fh.radius(i);
            worst = std::max(worst, std::abs(fh.values[i] - std::pow(pi, 0.5 * n) * std::exp(-k * k / 4.0)));
        }
        EXPECT_LT(worst, 1e-12) << "n = " << n;
        const ComplexField back = inverse_fourier(fh);
        for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(std::abs(back.values[i] - f.values[i]), 0.0, 1e-13);
    }
}

TEST(Fourier, Plancherel) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nrm;
    const Grid g(2, {16, 12, 1}, {3.0, 5.0, 1.0});
    ComplexField f(g, Space::physical);
    for (auto& v : f.values) v = {nrm(rng), nrm(rng)};
    const double lhs = std::pow(l2_norm(f), 2);
    const double rhs = std::pow(l2_norm(forward_fourier(f)), 2) / std::pow(2 * pi, 2);
    EXPECT_NEAR(lhs, rhs, 1e-12 * lhs);
}

TEST(Fourier, SpaceMismatchThrows) {
    const Grid g(1, 8, 1.0);
    EXPECT_THROW(forward_fourier(ComplexField(g, Space::frequency)), InvalidArgument);
    EXPECT_THROW(inverse_fourier(ComplexField(g, Space::physical)), InvalidArgument);
}

TEST(LpNorm, ConstantField) {
    const Grid g(1, 10, 1.0);
    SpaceTimeField u;
    for (int k = 0; k < 4; ++k) {
        u.times.push_back(0.5 * k);
        u.slices.push_back(ComplexField(g, Space::physical, std::vector<cplx>(10, cplx(0.0, 2.0))));
    }
    // midpoint cells: 2 * 4 slices * 0.5 => |2|^3 * 2 * 2
    const LpSums s = lp_spacetime_sums(u, 3.0);
    EXPECT_NEAR(s.norm(3.0), std::cbrt(8.0 * 2.0 * 2.0), 1e-12);
    EXPECT_THROW(s.check({1e-3, 1e-3}), BoundaryMassError);
}

TEST(Sobolev, ZeroModeRejected) {
    const Grid g(2, 16, 4.0);
    const auto bump = ComplexField::sample(g, Space::physical, [](const std::array<double, 3>& x) {
        return cplx(std::exp(-x[0] * x[0] - x[1] * x[1]), 0.0);
    });
    EXPECT_THROW(sobolev_half_norm(bump, bump), ZeroModeError);
    EXPECT_NO_THROW(sobolev_half_norm(bump, ComplexField(g, Space::physical)));
}

TEST(Parallel, PairwiseSumIndependentOfWorkers) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> v(100003);
    for (auto& x : v) x = u(rng) * std::pow(10.0, 8 * u(rng));
    const int saved = worker_count();
    set_worker_count(1);
    const double a = pairwise_sum(v);
    set_worker_count(4);
    const double b = pairwise_sum(v);
    std::vector<double> out(v.size());
    parallel_for(v.size(), [&](std::size_t i) { out[i] = 2 * v[i]; });
    set_worker_count(saved);
    EXPECT_EQ(a, b);
    for (std::size_t i = 0; i < v.size(); ++i) ASSERT_EQ(out[i], 2 * v[i]);
}
