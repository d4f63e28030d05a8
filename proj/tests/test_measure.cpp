#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "strichartz/errors.hpp"
#include "strichartz/measure_quadrature.hpp"

using namespace strichartz;
using oracle::pi;

namespace {

const MeasureSpec kParPair{Surface::paraboloid, 2, MeasureWeight::unit, 2};
const MeasureSpec kParTriple{Surface::paraboloid, 1, MeasureWeight::unit, 3};
const MeasureSpec kCone3{Surface::cone_plus, 3, MeasureWeight::inverse_norm, 2};
const MeasureSpec kCone2{Surface::cone_plus, 2, MeasureWeight::inverse_norm, 2};
const MeasureSpec kCone2Triple{Surface::cone_plus, 2, MeasureWeight::inverse_norm, 3};

}  // namespace

TEST(MeasureSpec, SupportedCombinations) {
    for (const auto& s : {kParPair, kParTriple, kCone3, kCone2, kCone2Triple}) EXPECT_NO_THROW(s.validate()) << s.name();
    EXPECT_THROW((MeasureSpec{Surface::paraboloid, 3, MeasureWeight::unit, 2}.validate()), Error);
    EXPECT_THROW((MeasureSpec{Surface::cone_plus, 3, MeasureWeight::unit, 2}.validate()), Error);
}

TEST(ClosedForm, Values) {
    EXPECT_NEAR(convolution_closed_form(kParPair, {1.0, {0.3, 0.1}}), pi / 2, 1e-15);
    EXPECT_NEAR(convolution_closed_form(kParTriple, {2.0, {0.5}}), pi / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(convolution_closed_form(kCone3, {2.0, {0.5, 0.3, 0.2}}), 2 * pi, 1e-15);
    EXPECT_NEAR(convolution_closed_form(kCone2Triple, {2.0, {0.5, 0.7}}), 4 * pi * pi, 1e-13);
    EXPECT_NEAR(convolution_closed_form(kCone2, {5.0, {3.0, 0.0}}), 2 * pi / 4.0, 1e-15);
}

TEST(ClosedForm, OutsideSupportRejected) {
    EXPECT_THROW(convolution_closed_form(kParPair, {0.5, {1.0, 0.0}}), RegionError);
    EXPECT_THROW(convolution_closed_form(kParTriple, {1.0, {2.0}}), RegionError);
    EXPECT_THROW(convolution_closed_form(kCone3, {1.0, {1.0, 0.0, 0.0}}), RegionError);
    EXPECT_THROW(convolution_oracle(kCone2, {1.0, {2.0, 0.0}}), RegionError);
}

TEST(SymmetryReduce, ReducedPoints) {
    EXPECT_DOUBLE_EQ(symmetry_reduce(kParTriple, {4.0, {3.0}}).tau, 1.0);
    EXPECT_DOUBLE_EQ(symmetry_reduce(kCone3, {5.0, {3.0, 0.0, 0.0}}).tau, 4.0);
    const FreqPoint r = symmetry_reduce(kParPair, {2.0, {1.0, 1.0}});
    EXPECT_DOUBLE_EQ(r.tau, 1.0);
    EXPECT_EQ(r.xi, (std::vector<double>{0.0, 0.0}));
    EXPECT_TRUE(in_region(Region::forward_cone, {1.0, {0.5, 0.5}}));
    EXPECT_FALSE(in_region(Region::forward_cone, {1.0, {1.0, 0.0}}));
}

TEST(Oracle, MatchesClosedForms) {
    const std::vector<std::pair<MeasureSpec, FreqPoint>> cases{
        {kParPair, {2.0, {0.0, 0.0}}},      {kParPair, {2.0, {0.5, 0.3}}}, {kParTriple, {2.0, {0.5}}},
        {kCone3, {2.0, {0.5, 0.3, 0.2}}},   {kCone2, {2.0, {0.0, 0.0}}},   {kCone2, {2.0, {0.0, 1.2}}},
        {kCone2Triple, {1.0, {0.0, 0.0}}}};
    for (const auto& [spec, pt] : cases) {
        const double exact = convolution_closed_form(spec, pt);
        const OracleResult r = convolution_oracle(spec, pt);
        EXPECT_NEAR(r.value / exact, 1.0, 1e-4) << spec.name() << " tau=" << pt.tau;
        EXPECT_EQ(r.levels.size(), 3u);
    }
}

TEST(Oracle, ConeRatioBetweenPoints) {
    const double a = convolution_oracle(kCone2, {2.0, {0.0, 0.0}}).value;
    const double b = convolution_oracle(kCone2, {2.0, {0.0, 1.2}}).value;
    EXPECT_NEAR(a / b, std::sqrt(4.0 - 1.44) / 2.0, 1e-4);
}

TEST(Oracle, GalileanShiftOfParaboloidPair) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    const FreqPoint pt{1.5, {0.2, -0.1}};
    const double base = convolution_oracle(kParPair, pt).value;
    for (int k = 0; k < 3; ++k) {
        const double v0 = u(rng), v1 = u(rng);
        const FreqPoint sh{pt.tau + 2 * (v0 * pt.xi[0] + v1 * pt.xi[1]) + 2 * (v0 * v0 + v1 * v1),
                           {pt.xi[0] + 2 * v0, pt.xi[1] + 2 * v1}};
        EXPECT_NEAR(convolution_oracle(kParPair, sh).value / base, 1.0, 1e-4);
    }
}

TEST(Oracle, ConeScaling) {
    const FreqPoint pt{2.0, {0.5, 0.7}};
    const FreqPoint big{3.0 * pt.tau, {3.0 * pt.xi[0], 3.0 * pt.xi[1]}};
    EXPECT_NEAR(convolution_oracle(kCone2, big).value * 3.0 / convolution_oracle(kCone2, pt).value, 1.0, 1e-4);
    EXPECT_NEAR(convolution_oracle(kCone2Triple, big).value / convolution_oracle(kCone2Triple, pt).value, 1.0, 1e-3);
}

TEST(Oracle, MollifiedLevelsApproachLimit) {
    const FreqPoint pt{2.0, {0.0, 0.0}};
    const double exact = convolution_closed_form(kCone2, pt);
    const double coarse = std::abs(mollified_convolution(kCone2, pt, 0.1) - exact);
    const double fine = std::abs(mollified_convolution(kCone2, pt, 0.025) - exact);
    EXPECT_LE(fine, coarse);
}

TEST(Oracle, BadOptionsRejected) {
    OracleOptions o;
    o.epsilons = {0.1};
    EXPECT_THROW(convolution_oracle(kParPair, {2.0, {0.0, 0.0}}, o), Error);
    o.epsilons = {0.1, 0.05, 0.025};
    o.level_tol = -1.0;
    EXPECT_THROW(convolution_oracle(kParPair, {2.0, {0.0, 0.0}}, o), Error);
}
