#include "strichartz/closed_forms.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "strichartz/errors.hpp"

namespace strichartz {

using std::numbers::pi;

SharpConstant sharp_constant(Equation equation, int n) {
    if (equation == Equation::schrodinger && n == 1) return {equation, n, "12^(-1/12)", std::pow(12.0, -1.0 / 12.0)};
    if (equation == Equation::schrodinger && n == 2) return {equation, n, "2^(-1/2)", 1.0 / std::sqrt(2.0)};
    if (equation == Equation::wave && n == 2)
        return {equation, n, "(25/(64 pi))^(1/6)", std::pow(25.0 / (64.0 * pi), 1.0 / 6.0)};
    if (equation == Equation::wave && n == 3)
        return {equation, n, "(3/(16 pi))^(1/4)", std::pow(3.0 / (16.0 * pi), 0.25)};
    throw UnsupportedCase(std::string("no sharp constant for ") + to_string(equation) + " in dimension " +
                          std::to_string(n));
}

namespace {

cplx bilinear(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void ExpQuadraticParams::validate() const {
    if (b.empty() || b.size() > 3) throw InvalidArgument("b must have 1 to 3 entries");
    if (!finite(A) || !finite(C)) throw InvalidArgument("non-finite coefficient");
    for (const auto& v : b)
        if (!finite(v)) throw InvalidArgument("non-finite coefficient");
    if (!(A.real() < 0.0)) throw ConstraintViolation("Re(A) must be negative, got " + std::to_string(A.real()));
}

ExpQuadraticParams to_frequency(const ExpQuadraticParams& p) {
    p.validate();
    if (p.space == Space::frequency) return p;
    const double n = p.dim();
    ExpQuadraticParams q;
    q.space = Space::frequency;
    q.A = 1.0 / (4.0 * p.A);
    q.b.resize(p.b.size());
    for (std::size_t i = 0; i < p.b.size(); ++i) q.b[i] = cplx{0.0, 1.0} * p.b[i] / (2.0 * p.A);
    q.C = p.C - bilinear(p.b, p.b) / (4.0 * p.A) + 0.5 * n * (std::log(pi) - std::log(-p.A));
    return q;
}

ExpQuadraticParams to_physical(const ExpQuadraticParams& p) {
    p.validate();
    if (p.space == Space::physical) return p;
    const double n = p.dim();
    ExpQuadraticParams q;
    q.space = Space::physical;
    q.A = 1.0 / (4.0 * p.A);
    q.b.resize(p.b.size());
    for (std::size_t i = 0; i < p.b.size(); ++i) q.b[i] = cplx{0.0, -1.0} * p.b[i] / (2.0 * p.A);
    q.C = p.C - bilinear(p.b, p.b) / (4.0 * p.A) - 0.5 * n * (std::log(4.0 * pi) + std::log(-p.A));
    return q;
}

ExpQuadraticParams canonical_gaussian(int n, Space space) {
    ExpQuadraticParams p{cplx{-1.0, 0.0}, std::vector<cplx>(static_cast<std::size_t>(n)), cplx{0.0, 0.0},
                         Space::physical};
    return space == Space::physical ? p : to_frequency(p);
}

ComplexField sample_gaussian_maximizer(const ExpQuadraticParams& params, const Grid& grid) {
    params.validate();
    if (params.dim() != grid.dim) throw InvalidArgument("params and grid dimensions differ");
    return ComplexField::sample(grid, params.space, [&](const std::array<double, 3>& x) {
        cplx e = params.C;
        double r2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            r2 += x[a] * x[a];
            e += params.b[a] * x[a];
        }
        return std::exp(params.A * r2 + e);
    });
}

void ConeExpParams::validate() const {
    if (dim != 2 && dim != 3) throw UnsupportedCase("cone profiles are defined for n = 2, 3");
    if (static_cast<int>(b.size()) != dim) throw InvalidArgument("b must have dim entries");
    if (!finite(A) || !finite(C) || !finite(D)) throw InvalidArgument("non-finite coefficient");
    double rb = 0.0;
    for (const auto& v : b) {
        if (!finite(v)) throw InvalidArgument("non-finite coefficient");
        rb += v.real() * v.real();
    }
    rb = std::sqrt(rb);
    if (!(rb < -A.real()))
        throw ConstraintViolation("need |Re b| < -Re A, got |Re b| = " + std::to_string(rb) +
                                  ", Re A = " + std::to_string(A.real()));
}

double canonical_cone_log_scale(int n) {
    if (n == 3) return std::log(2.0 * pi * pi);
    if (n == 2) return std::log(2.0 * pi);
    throw UnsupportedCase("cone profiles are defined for n = 2, 3");
}

ConeExpParams canonical_cone_params(int n) {
    const double c = canonical_cone_log_scale(n);
    return {cplx{-1.0, 0.0}, std::vector<cplx>(static_cast<std::size_t>(n)), cplx{c, 0.0}, cplx{c, 0.0}, n};
}

WaveSplitPair sample_cone_maximizer(const ConeExpParams& params, const Grid& grid) {
    params.validate();
    if (params.dim != grid.dim) throw InvalidArgument("params and grid dimensions differ");
    WaveSplitPair out{ComplexField(grid, Space::frequency), ComplexField(grid, Space::frequency)};
    for (std::size_t i = 0; i < out.f_plus.size(); ++i) {
        const auto xi = out.f_plus.point(i);
        const double r = regularized_frequency(out.f_plus, i);
        cplx bp{0.0, 0.0};
        cplx bm{0.0, 0.0};
        for (int a = 0; a < grid.dim; ++a) {
            bp += params.b[a] * xi[a];
            bm -= std::conj(params.b[a]) * xi[a];
        }
        const double w = 1.0 / std::sqrt(r);
        out.f_plus.values[i] = w * std::exp(params.A * r + bp + params.C);
        out.f_minus.values[i] = w * std::exp(std::conj(params.A) * r + bm + params.D);
    }
    return out;
}

namespace {

// (Re A)^2 - |Re b|^2 + |y|^2 - s^2 + 2i(Re A s - Re b.y), s = t + Im A,
// y = x + Im b.
cplx cone_quadratic(const ConeExpParams& p, double t, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != p.dim) throw InvalidArgument("x must have dim entries");
    const double a = p.A.real();
    const double s = t + p.A.imag();
    double rb2 = 0.0, y2 = 0.0, by = 0.0;
    for (int i = 0; i < p.dim; ++i) {
        const double y = x[static_cast<std::size_t>(i)] + p.b[static_cast<std::size_t>(i)].imag();
        const double rb = p.b[static_cast<std::size_t>(i)].real();
        rb2 += rb * rb;
        y2 += y * y;
        by += rb * y;
    }
    return {a * a - rb2 + y2 - s * s, 2.0 * (a * s - by)};
}

}  // namespace

cplx eval_plus_wave_closed_form(const ConeExpParams& params, double t, const std::vector<double>& x) {
    params.validate();
    const cplx Q = cone_quadratic(params, t, x);
    const cplx scale = std::exp(params.C);
    if (params.dim == 3) return scale / (2.0 * pi * pi * Q);
    if (Q.imag() == 0.0 && Q.real() <= 0.0)
        throw BranchError("square root argument " + std::to_string(Q.real()) + " lies on the cut (-inf, 0]");
    return scale / (2.0 * pi * std::sqrt(Q));
}

cplx eval_wave_closed_form(const ConeExpParams& params, double t, const std::vector<double>& x) {
    const cplx up = eval_plus_wave_closed_form(params, t, x);
    return up + std::exp(params.D - std::conj(params.C)) * std::conj(up);
}

double poly_inequality_gap(double X, double Y, PolyForm which) {
    if (!(X >= 0.0) || !(Y >= 0.0)) throw DomainError("X and Y must be nonnegative");
    if (which == PolyForm::quartic) {
        const double lhs = X * X + Y * Y + 4.0 * X * Y;
        return 1.5 * (X + Y) * (X + Y) - lhs;
    }
    const double X2 = X * X, Y2 = Y * Y;
    const double lhs = X2 * X2 * X2 + Y2 * Y2 * Y2 + 9.0 * X2 * X2 * Y2 + 9.0 * X2 * Y2 * Y2 +
                       6.0 * X2 * X2 * X * Y + 6.0 * X * Y * Y2 * Y2 + 18.0 * X2 * X * Y2 * Y;
    const double s = X2 + Y2;
    return 6.25 * s * s * s - lhs;
}

double cone_branch_norm_sq(const ConeExpParams& params, bool minus) {
    params.validate();
    const double s = -2.0 * params.A.real();
    double w2 = 0.0;
    for (const auto& v : params.b) w2 += 4.0 * v.real() * v.real();
    const double c = minus ? params.D.real() : params.C.real();
    const double radial = params.dim == 3 ? 4.0 * pi / (s * s - w2) : 2.0 * pi / std::sqrt(s * s - w2);
    return std::exp(2.0 * c) * radial / std::pow(2.0 * pi, params.dim);
}

QuadResult wave_lp_power_closed_form(const ConeExpParams& params, bool plus_only, const QuadOptions& opt) {
    params.validate();
    for (const auto& v : params.b)
        if (v.real() != 0.0) throw DomainError("light-cone quadrature needs Re b = 0; canonicalize first");
    const int n = params.dim;
    const double p = n == 3 ? 4.0 : 6.0;
    const double a = -params.A.real();
    const double sphere = n == 3 ? 4.0 * pi : 2.0 * pi;
    const double cn = n == 3 ? 2.0 * pi * pi : 2.0 * pi;
    const double power = n == 3 ? 1.0 : 0.5;  // |u_+| = e^{Re C} / (cn |Q|^power)
    const cplx kappa = plus_only ? cplx{0.0, 0.0} : std::exp(params.D - std::conj(params.C));
    const double phase_c = params.C.imag();
    const double amp = std::exp(params.C.real()) / cn;

    // sigma = alpha + beta in (0, pi), delta = beta - alpha = (pi - sigma) v.
    auto integrand = [&](double sigma, double v) {
        const double delta = (pi - sigma) * v;
        const double alpha = 0.5 * (sigma - delta);
        const double beta = 0.5 * (sigma + delta);
        const double ca = std::cos(alpha), cb = std::cos(beta);
        // |Q| = a^2 / (ca cb), arg Q = alpha - beta
        const double modQ = a * a / (ca * cb);
        const double argQ = alpha - beta;
        const cplx up = amp * std::pow(modQ, -power) * std::polar(1.0, phase_c - power * argQ);
        const double mod_u = std::abs(up + kappa * std::conj(up));
        const double r = a * std::sin(sigma) / (2.0 * ca * cb);
        const double jac = 0.5 * a * a / (ca * ca * cb * cb) * 0.5 * (pi - sigma);
        return std::pow(mod_u, p) * sphere * std::pow(r, n - 1) * jac;
    };
    return integrate_midpoint_2d(integrand, 0.0, pi, -1.0, 1.0, opt);
}

QuotientReport wave_quotient_closed_form(const ConeExpParams& params, const QuadOptions& opt) {
    const QuadResult I = wave_lp_power_closed_form(params, false, opt);
    if (!I.converged)
        throw ConvergenceError("light-cone quadrature reached relative error " +
                               std::to_string(I.error / std::abs(I.value)) + " after " + std::to_string(I.levels) +
                               " levels");
    const double p = params.dim == 3 ? 4.0 : 6.0;
    QuotientReport r;
    r.method = "closed_form";
    r.p = p;
    r.lp_norm = std::pow(I.value, 1.0 / p);
    r.data_norm = std::sqrt(2.0 * (cone_branch_norm_sq(params, false) + cone_branch_norm_sq(params, true)));
    r.quotient = r.lp_norm / r.data_norm;
    r.error_estimate = r.quotient * I.error / (p * std::abs(I.value));
    return r;
}

QuotientReport wave3_quotient_closed_form(const ConeExpParams& params, const QuadOptions& opt) {
    if (params.dim != 3) throw UnsupportedCase("wave3_quotient_closed_form needs n = 3");
    return wave_quotient_closed_form(params, opt);
}

}  // namespace strichartz
