#pragma once

#include <functional>
#include <vector>

namespace strichartz {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // magnitude of the last Richardson correction
    int levels = 0;
    bool converged = false;
};

struct QuadOptions {
    double rel_tol = 1e-7;
    double abs_tol = 0.0;
    int initial_points = 3;
    int max_levels = 10;  // each level triples the point count
};

/// Midpoint rule on [a, b] refined by tripling, with Richardson elimination
/// of the even error terms h^2, h^4, ...
QuadResult integrate_midpoint(const std::function<double(double)>& f, double a, double b,
                              const QuadOptions& opt = {});

/// Nested 2D version: the inner integral in y is converged for each outer x.
QuadResult integrate_midpoint_2d(const std::function<double(double, double)>& f, double ax, double bx,
                                 double ay, double by, const QuadOptions& opt = {});

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);
/// Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);
/// Gauss-Hermite rule for weight exp(-x^2).
GaussRule gauss_hermite(int n);

}  // namespace strichartz
