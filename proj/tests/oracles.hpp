#pragma once

// Closed-form values derived by hand, independent of the library code paths.

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using std::numbers::pi;

inline double s1() { return std::pow(12.0, -1.0 / 12.0); }
inline double s2() { return 1.0 / std::sqrt(2.0); }
inline double w3() { return std::pow(3.0 / (16.0 * pi), 0.25); }
inline double w2_claimed() { return std::pow(25.0 / (64.0 * pi), 1.0 / 6.0); }

// Free Schrodinger evolution of exp(-|x|^2) with u-hat(t) = exp(i t |xi|^2) f-hat:
// u = (1 - 4 i t)^(-n/2) exp(-|x|^2 / (1 - 4 i t)).
inline std::complex<double> gaussian_evolution(int n, double t, double r2) {
    const std::complex<double> a(1.0, -4.0 * t);
    return std::pow(a, -0.5 * n) * std::exp(-r2 / a);
}

// ||u||_p^p = (pi/p)^(n/2) * int (1 + 16 t^2)^(-1) dt = (pi/p)^(n/2) pi/4, ||f||_2 = (pi/2)^(n/4).
inline double gaussian_quotient(int n) {
    const double p = 2.0 + 4.0 / n;
    return std::pow(std::pow(pi / p, 0.5 * n) * pi / 4.0, 1.0 / p) / std::pow(pi / 2.0, 0.25 * n);
}

// Same integral restricted to |t| <= T: arctan(4T)/2 in place of pi/4.
inline double gaussian_quotient_window(int n, double T) {
    const double p = 2.0 + 4.0 / n;
    return std::pow(std::pow(pi / p, 0.5 * n) * std::atan(4.0 * T) / 2.0, 1.0 / p) / std::pow(pi / 2.0, 0.25 * n);
}

// ||f_+||^2 = (2 pi)^-n int |xi|^-1 exp(-2a|xi| + 2c) dxi for A = -a, b = 0, C = c.
inline double cone_branch_norm_sq(int n, double a, double c) {
    if (n == 3) return std::exp(2.0 * c) / (8.0 * pi * pi * a * a);
    return std::exp(2.0 * c) / (4.0 * pi * a);
}

// Light-cone integral of the n = 2 pair with f_+ = f_-: ||u||_6^6 = 35 pi^2 / 2
// against ||(f, g)||^2 = 4 pi, so Q^6 = 35 / (128 pi).
inline double w2_attained() { return std::pow(35.0 / (128.0 * pi), 1.0 / 6.0); }

}  // namespace oracle
