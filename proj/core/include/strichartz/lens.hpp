#pragma once

#include <array>
#include <vector>

#include "strichartz/grid.hpp"

namespace strichartz {

/**
 * Schrodinger data expanded in tensor Hermite functions
 * psi_k(x) = sigma^(-n/2) prod_a phi_{k_a}(x_a / sigma), k_a <= degree.
 *
 * The lens transform maps free evolution on R x R^n to oscillator evolution
 * on (-pi/2, pi/2) x R^n and preserves the critical L^p norm, so
 * ||u||_p^p = (1/2) int_{-pi/2}^{pi/2} int |v(s, y)|^p dy ds with
 * v(s) = sum_k a_k exp(-i s |k|) phi_k. On the span the integral is a
 * polynomial times a Gaussian in y and a trigonometric polynomial of period
 * pi in s, and both rules below are exact for it.
 */
class HermiteLens {
public:
    HermiteLens(int dim, int degree, double sigma = 0.70710678118654752440);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    double sigma() const { return sigma_; }
    double p() const { return p_; }
    /// Number of coefficients, (degree + 1)^dim.
    std::size_t size() const;
    int space_nodes() const { return static_cast<int>(nodes_.size()); }
    int time_nodes() const { return static_cast<int>(times_.size()); }

    /// Coefficients of a physical field by grid quadrature.
    std::vector<cplx> project(const ComplexField& f) const;
    /// Physical samples of sum_k a_k psi_k on g.
    ComplexField sample(const std::vector<cplx>& a, const Grid& g) const;

    /// ||u||_p^p / ||f||_2^p and, if grad is set, its gradient with respect
    /// to a in the inner product Re sum conj(g) da.
    double power_ratio(const std::vector<cplx>& a, std::vector<cplx>* grad = nullptr) const;
    double quotient_from_ratio(double ratio) const;
    double quotient(const std::vector<cplx>& a) const { return quotient_from_ratio(power_ratio(a)); }

private:
    int dim_;
    int degree_;
    double sigma_;
    double p_;
    std::vector<double> nodes_;    // y_i
    std::vector<double> weights_;  // exact for poly(y) exp(-p y^2 / 2)
    std::vector<double> phi_;      // phi_k(y_i), row k
    std::vector<double> times_;
};

/// Orthonormal Hermite functions phi_0..phi_m at y, by the stable recurrence.
std::vector<double> hermite_functions(int m, double y);

}  // namespace strichartz
