#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "strichartz/grid.hpp"

namespace strichartz {

/// Product equations f(x_1)...f(x_k) = F(sum q(x_i), sum x_i) with q = |x|^2
/// (schr1, schr2, line_pair) or q = |x| (wave2, wave3).
/// line_pair is the one-dimensional two-factor equation with squares; it has
/// non-exponential solutions and is kept only as a negative example.
enum class FeqKind { schr1, schr2, wave2, wave3, line_pair };

const char* to_string(FeqKind k);
FeqKind feq_kind_from_string(const std::string& s);
int feq_arity(FeqKind k);
int feq_dim(FeqKind k);
bool feq_cone(FeqKind k);
/// False for line_pair: zero residual there says nothing about the shape of f.
bool feq_supports_uniqueness(FeqKind k);

using Point = std::vector<double>;
using ProfileFn = std::function<cplx(const Point&)>;
/// F(s, v): s the summed q, v the summed points.
using TotalFn = std::function<cplx(double, const Point&)>;
using Tuple = std::vector<Point>;

/// max over tuples of |prod f(x_i) - F(s, v)| / (1 + |F(s, v)|).
double feq_residual(FeqKind kind, const ProfileFn& f, const TotalFn& F, const std::vector<Tuple>& tuples);

/// |xi|^(1/2) f(xi): the weighted profile on which the cone equations hold.
ProfileFn weighted_profile(const ProfileFn& raw);

struct ExpFamilyFit {
    FeqKind kind = FeqKind::schr2;
    cplx A{0.0, 0.0};
    std::vector<cplx> b;
    cplx C{0.0, 0.0};
    double residual = 0.0;  // RMS misfit of log f

    cplx eval(const Point& x) const;
    /// F matching this f: exp(A s + b.v + k C).
    TotalFn total() const;
};

/// exp(A q(x) + b.x + C).
ProfileFn exponential_profile(FeqKind kind, cplx A, const std::vector<cplx>& b, cplx C);

/// Least-squares fit of log f to A q(x) + b.x + C. Samples must follow a
/// connected path; the phase is unwrapped along it. VanishingSampleError if
/// any |f| <= floor.
ExpFamilyFit fit_exponential(const std::vector<Point>& points, const std::vector<cplx>& values, FeqKind kind,
                             double floor = 1e-300);
/// Same, unwrapping each phase against parents[i] < i (-1 for a root)
/// instead of the previous sample.
ExpFamilyFit fit_exponential(const std::vector<Point>& points, const std::vector<cplx>& values, FeqKind kind,
                             const std::vector<long>& parents, double floor = 1e-300);

/// Opposite square vertices: p = (x+y)/2 + H((x-y)/2), q = (x+y)/2 - H((x-y)/2).
std::pair<std::array<double, 2>, std::array<double, 2>> square_map(const std::array<double, 2>& x,
                                                                   const std::array<double, 2>& y);

/// p on the line through 0 and y with p + q = x + y and |p| + |q| = |x| + |y|.
/// DegenerateError when x, y are colinear.
std::pair<std::array<double, 3>, std::array<double, 3>> ellipsoid_map(const std::array<double, 3>& x,
                                                                      const std::array<double, 3>& y);

/// det dP/dy and det dQ/dy of ellipsoid_map at (x, y) by central differences.
std::array<double, 2> ellipsoid_map_jacobians(const std::array<double, 3>& x, const std::array<double, 3>& y,
                                              double h = 1e-6);

struct Rectangle {
    std::array<double, 2> a, b, c, d;
};

/// max |f(a) f(c) - f(b) f(d)|. InvalidRectangle unless a-b is orthogonal to
/// c-b and a-b = d-c (1e-10 relative).
double rectangle_residual(const std::function<cplx(const std::array<double, 2>&)>& f,
                          const std::vector<Rectangle>& rects);

/// max |g(x) g(y) - g(x + y)|.
double cauchy_residual(const ProfileFn& g, const std::vector<std::pair<Point, Point>>& pairs);

/// X = a U + b V, Y = c U + d V with U, V future null vectors spanning a plane
/// through X and Y, normalised to time component 1. Vectors are (t, x).
struct NullDecomposition {
    Point U, V;
    double a = 0, b = 0, c = 0, d = 0;
};
NullDecomposition cone_null_decompose(const Point& X, const Point& Y);

/// max(|F(aU)F(bV) - F(X)|, |F(aU)F(bV)F(cU)F(dV) - F(X+Y)|) for the
/// decomposition of (X, Y).
double cone_extension_residual(const std::function<cplx(const Point&)>& F, const Point& X, const Point& Y);

/// For any f, F(s, t) = f((t + r)/2) f((t - r)/2), r = sqrt(2s - t^2),
/// solves the line_pair equation.
TotalFn line_pair_solution(const std::function<cplx(double)>& f);

}  // namespace strichartz
