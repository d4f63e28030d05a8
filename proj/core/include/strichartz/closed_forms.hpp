#pragma once

#include <string>
#include <vector>

#include "strichartz/grid.hpp"
#include "strichartz/propagators.hpp"
#include "strichartz/quadrature.hpp"

namespace strichartz {

struct SharpConstant {
    Equation equation = Equation::schrodinger;
    int dim = 1;
    std::string expression;
    double value = 0.0;
};

/// S(1), S(2), W(2), W(3). UnsupportedCase for any other pair.
SharpConstant sharp_constant(Equation equation, int n);

/// exp(A|x|^2 + b.x + C) in physical space, or the same shape in frequency
/// space with the hat coefficients.
struct ExpQuadraticParams {
    cplx A{-1.0, 0.0};
    std::vector<cplx> b;
    cplx C{0.0, 0.0};
    Space space = Space::physical;

    int dim() const { return static_cast<int>(b.size()); }
    void validate() const;
};

ExpQuadraticParams to_frequency(const ExpQuadraticParams& p);
ExpQuadraticParams to_physical(const ExpQuadraticParams& p);
/// exp(-|x|^2) in the requested representation.
ExpQuadraticParams canonical_gaussian(int n, Space space);

/// Samples the Gaussian on the grid in params.space.
ComplexField sample_gaussian_maximizer(const ExpQuadraticParams& params, const Grid& grid);

/// Wave profile pair f_+ = |xi|^(-1/2) exp(A|xi| + b.xi + C),
/// f_- = |xi|^(-1/2) exp(conj(A)|xi| - conj(b).xi + D).
struct ConeExpParams {
    cplx A{-1.0, 0.0};
    std::vector<cplx> b;
    cplx C{0.0, 0.0};
    cplx D{0.0, 0.0};
    int dim = 3;

    /// Throws ConstraintViolation unless |Re b| < -Re A.
    void validate() const;
};

/// A = -1, b = 0, C = D = log(2 pi^2) (n = 3) or log(2 pi) (n = 2).
ConeExpParams canonical_cone_params(int n);
/// Real C making u_+(0, 0) = 1 for the canonical A, b.
double canonical_cone_log_scale(int n);

WaveSplitPair sample_cone_maximizer(const ConeExpParams& params, const Grid& grid);

/// u_+(t, x) from the explicit rational (n = 3) or inverse square root
/// (n = 2) formula. x has params.dim entries.
cplx eval_plus_wave_closed_form(const ConeExpParams& params, double t, const std::vector<double>& x);
/// u = u_+ + u_-, with u_- = exp(D - conj(C)) conj(u_+).
cplx eval_wave_closed_form(const ConeExpParams& params, double t, const std::vector<double>& x);

enum class PolyForm { quartic, sextic };

/// RHS - LHS of the quartic or sextic two-variable inequality.
double poly_inequality_gap(double X, double Y, PolyForm which);

/// ||f_+||^2 in closed form (with D in place of C for f_-).
double cone_branch_norm_sq(const ConeExpParams& params, bool minus);

/// Space-time integral of |u|^p (or |u_+|^p) by light-cone coordinates.
/// Requires Re b = 0; rotate and boost first otherwise.
QuadResult wave_lp_power_closed_form(const ConeExpParams& params, bool plus_only = false,
                                     const QuadOptions& opt = {});

/// ||u||_{L^p} / ||(f, g)|| from the closed form and exact data norms.
QuotientReport wave_quotient_closed_form(const ConeExpParams& params, const QuadOptions& opt = {});
/// n = 3 case of wave_quotient_closed_form.
QuotientReport wave3_quotient_closed_form(const ConeExpParams& params, const QuadOptions& opt = {});

}  // namespace strichartz
