#pragma once

#include <string>
#include <variant>
#include <vector>

#include "strichartz/closed_forms.hpp"

namespace strichartz {

struct Translate {
    double t0 = 0.0;
    std::vector<double> x0;
};
struct ParabolicDilate {
    double lambda = 1.0;
};
struct Dilate {
    double lambda = 1.0;
};
struct Scale {
    double mu = 1.0;
};
/// Row-major n x n rotation matrix.
struct Rotate {
    std::vector<double> R;
};
struct Phase {
    double theta = 0.0;
};
struct PhasePair {
    double theta_plus = 0.0;
    double theta_minus = 0.0;
};
struct Galilean {
    std::vector<double> v;
};
/// Lorentz boost with rapidity a along the first axis.
struct Boost {
    double a = 0.0;
};

using GGenerator = std::variant<Translate, ParabolicDilate, Scale, Rotate, Phase, Galilean>;
using LGenerator = std::variant<Translate, Dilate, Scale, Rotate, PhasePair, Boost>;

std::string describe(const GGenerator& g);
std::string describe(const LGenerator& g);
bool is_identity(const GGenerator& g, double tol = 0.0);
bool is_identity(const LGenerator& g, double tol = 0.0);

Rotate identity_rotation(int n);
/// Rotation whose first row is u / |u|; identity when u = 0.
Rotate frame_rotation(const std::vector<double>& u);

/// Action on frequency-form Gaussian coefficients.
ExpQuadraticParams apply_G(const ExpQuadraticParams& params, const GGenerator& gen);
/// Action on cone profile coefficients. ConstraintViolation if the result
/// leaves the cone constraint by more than 1e-12.
ConeExpParams apply_L(const ConeExpParams& params, const LGenerator& gen);

template <class Params, class Gen>
struct Canonical {
    Params canonical;
    std::vector<Gen> trail;
};

using CanonicalG = Canonical<ExpQuadraticParams, GGenerator>;
using CanonicalL = Canonical<ConeExpParams, LGenerator>;

/// Reduces to A = -1/4, b = 0, C = (n/2) log pi (the transform of exp(-|x|^2))
/// by translate, phase, Galilean, dilate, scale.
CanonicalG canonicalize_G(const ExpQuadraticParams& params);
/// Reduces to A = -1, b = 0, C = canonical_cone_log_scale(n) by translate,
/// phase, rotate, boost, dilate, scale. D keeps its offset Re D - Re C.
CanonicalL canonicalize_L(const ConeExpParams& params);

ExpQuadraticParams replay(const ExpQuadraticParams& params, const std::vector<GGenerator>& trail);
ConeExpParams replay(const ConeExpParams& params, const std::vector<LGenerator>& trail);

/// Largest coefficient difference |A - A'|, |b_i - b'_i|, |C - C'| (and D).
double coefficient_distance(const ExpQuadraticParams& p, const ExpQuadraticParams& q);
double coefficient_distance(const ConeExpParams& p, const ConeExpParams& q);

bool orbit_equivalent(const ExpQuadraticParams& p, const ExpQuadraticParams& q, double tol = 1e-8);
bool orbit_equivalent(const ConeExpParams& p, const ConeExpParams& q, double tol = 1e-8);

}  // namespace strichartz
