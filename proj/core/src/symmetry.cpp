#include "strichartz/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "strichartz/errors.hpp"

namespace strichartz {

using std::numbers::pi;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string vec_str(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(17);
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
    return os.str();
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool rotation_is_identity(const Rotate& r, double tol) {
    const auto n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(r.R.size()))));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(r.R[i * n + j] - (i == j ? 1.0 : 0.0)) > tol) return false;
    return true;
}

void check_dim(std::size_t got, int n, const char* what) {
    if (static_cast<int>(got) != n)
        throw InvalidArgument(std::string(what) + " has " + std::to_string(got) + " entries, expected " +
                              std::to_string(n));
}

void check_rotation(const Rotate& r, int n) {
    check_dim(r.R.size(), n * n, "rotation matrix");
    const auto m = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < m; ++k) s += r.R[i * m + k] * r.R[j * m + k];
            if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-10) throw InvalidArgument("rotation matrix is not orthogonal");
        }
    double det = 0.0;
    const auto& R = r.R;
    if (n == 1) det = R[0];
    if (n == 2) det = R[0] * R[3] - R[1] * R[2];
    if (n == 3)
        det = R[0] * (R[4] * R[8] - R[5] * R[7]) - R[1] * (R[3] * R[8] - R[5] * R[6]) +
              R[2] * (R[3] * R[7] - R[4] * R[6]);
    if (std::abs(det - 1.0) > 1e-10) throw InvalidArgument("rotation matrix must have determinant 1");
}

std::vector<cplx> rotate(const Rotate& r, const std::vector<cplx>& b) {
    const std::size_t n = b.size();
    std::vector<cplx> out(n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i] += r.R[i * n + j] * b[j];
    return out;
}

}  // namespace

std::string describe(const GGenerator& g) {
    return std::visit(overloaded{
                          [](const Translate& x) { return "translate(t0=" + num(x.t0) + ", x0=" + vec_str(x.x0) + ")"; },
                          [](const ParabolicDilate& x) { return "parabolic_dilate(" + num(x.lambda) + ")"; },
                          [](const Scale& x) { return "scale(" + num(x.mu) + ")"; },
                          [](const Rotate& x) { return "rotate(" + vec_str(x.R) + ")"; },
                          [](const Phase& x) { return "phase(" + num(x.theta) + ")"; },
                          [](const Galilean& x) { return "galilean(" + vec_str(x.v) + ")"; },
                      },
                      g);
}

std::string describe(const LGenerator& g) {
    return std::visit(overloaded{
                          [](const Translate& x) { return "translate(t0=" + num(x.t0) + ", x0=" + vec_str(x.x0) + ")"; },
                          [](const Dilate& x) { return "dilate(" + num(x.lambda) + ")"; },
                          [](const Scale& x) { return "scale(" + num(x.mu) + ")"; },
                          [](const Rotate& x) { return "rotate(" + vec_str(x.R) + ")"; },
                          [](const PhasePair& x) {
                              return "phase(plus=" + num(x.theta_plus) + ", minus=" + num(x.theta_minus) + ")";
                          },
                          [](const Boost& x) { return "boost(" + num(x.a) + ")"; },
                      },
                      g);
}

bool is_identity(const GGenerator& g, double tol) {
    return std::visit(overloaded{
                          [&](const Translate& x) { return std::abs(x.t0) <= tol && max_abs(x.x0) <= tol; },
                          [&](const ParabolicDilate& x) { return std::abs(x.lambda - 1.0) <= tol; },
                          [&](const Scale& x) { return std::abs(x.mu - 1.0) <= tol; },
                          [&](const Rotate& x) { return rotation_is_identity(x, tol); },
                          [&](const Phase& x) { return std::abs(x.theta) <= tol; },
                          [&](const Galilean& x) { return max_abs(x.v) <= tol; },
                      },
                      g);
}

bool is_identity(const LGenerator& g, double tol) {
    return std::visit(overloaded{
                          [&](const Translate& x) { return std::abs(x.t0) <= tol && max_abs(x.x0) <= tol; },
                          [&](const Dilate& x) { return std::abs(x.lambda - 1.0) <= tol; },
                          [&](const Scale& x) { return std::abs(x.mu - 1.0) <= tol; },
                          [&](const Rotate& x) { return rotation_is_identity(x, tol); },
                          [&](const PhasePair& x) {
                              return std::abs(x.theta_plus) <= tol && std::abs(x.theta_minus) <= tol;
                          },
                          [&](const Boost& x) { return std::abs(x.a) <= tol; },
                      },
                      g);
}

Rotate identity_rotation(int n) {
    Rotate r;
    r.R.assign(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i) r.R[static_cast<std::size_t>(i * n + i)] = 1.0;
    return r;
}

Rotate frame_rotation(const std::vector<double>& u) {
    const int n = static_cast<int>(u.size());
    double len = 0.0;
    for (double x : u) len += x * x;
    len = std::sqrt(len);
    if (len == 0.0 || n == 1) return identity_rotation(n);
    std::vector<double> e(u);
    for (double& x : e) x /= len;
    Rotate r;
    if (n == 2) {
        r.R = {e[0], e[1], -e[1], e[0]};
        return r;
    }
    // n = 3: complete with the coordinate axis least aligned with e.
    int axis = 0;
    for (int a = 1; a < 3; ++a)
        if (std::abs(e[static_cast<std::size_t>(a)]) < std::abs(e[static_cast<std::size_t>(axis)])) axis = a;
    std::vector<double> f(3, 0.0);
    f[static_cast<std::size_t>(axis)] = 1.0;
    const double d = f[0] * e[0] + f[1] * e[1] + f[2] * e[2];
    for (int i = 0; i < 3; ++i) f[static_cast<std::size_t>(i)] -= d * e[static_cast<std::size_t>(i)];
    const double fl = std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2]);
    for (double& x : f) x /= fl;
    const std::vector<double> g{e[1] * f[2] - e[2] * f[1], e[2] * f[0] - e[0] * f[2], e[0] * f[1] - e[1] * f[0]};
    r.R = {e[0], e[1], e[2], f[0], f[1], f[2], g[0], g[1], g[2]};
    return r;
}

ExpQuadraticParams apply_G(const ExpQuadraticParams& params, const GGenerator& gen) {
    params.validate();
    if (params.space != Space::frequency) throw InvalidArgument("apply_G acts on frequency-form coefficients");
    const int n = params.dim();
    const cplx I{0.0, 1.0};
    ExpQuadraticParams q = params;
    std::visit(overloaded{
                   [&](const Translate& x) {
                       check_dim(x.x0.size(), n, "translation x0");
                       q.A += I * x.t0;
                       for (int i = 0; i < n; ++i) q.b[static_cast<std::size_t>(i)] += I * x.x0[static_cast<std::size_t>(i)];
                   },
                   [&](const ParabolicDilate& x) {
                       if (!(x.lambda > 0.0)) throw InvalidArgument("dilation factor must be positive");
                       q.A /= x.lambda * x.lambda;
                       for (auto& v : q.b) v /= x.lambda;
                       q.C -= n * std::log(x.lambda);
                   },
                   [&](const Scale& x) {
                       if (!(x.mu > 0.0)) throw InvalidArgument("scale factor must be positive");
                       q.C += std::log(x.mu);
                   },
                   [&](const Rotate& x) {
                       check_rotation(x, n);
                       q.b = rotate(x, q.b);
                   },
                   [&](const Phase& x) { q.C += I * x.theta; },
                   [&](const Galilean& x) {
                       check_dim(x.v.size(), n, "Galilean velocity");
                       cplx bv{0.0, 0.0};
                       double v2 = 0.0;
                       for (int i = 0; i < n; ++i) {
                           const double vi = x.v[static_cast<std::size_t>(i)];
                           bv += params.b[static_cast<std::size_t>(i)] * vi;
                           v2 += vi * vi;
                           q.b[static_cast<std::size_t>(i)] -= params.A * vi;
                       }
                       q.C += params.A * v2 / 4.0 - bv / 2.0;
                   },
               },
               gen);
    return q;
}

ConeExpParams apply_L(const ConeExpParams& params, const LGenerator& gen) {
    params.validate();
    const int n = params.dim;
    const cplx I{0.0, 1.0};
    ConeExpParams q = params;
    std::visit(overloaded{
                   [&](const Translate& x) {
                       check_dim(x.x0.size(), n, "translation x0");
                       q.A += I * x.t0;
                       for (int i = 0; i < n; ++i) q.b[static_cast<std::size_t>(i)] += I * x.x0[static_cast<std::size_t>(i)];
                   },
                   [&](const Dilate& x) {
                       if (!(x.lambda > 0.0)) throw InvalidArgument("dilation factor must be positive");
                       q.A /= x.lambda;
                       for (auto& v : q.b) v /= x.lambda;
                       q.C -= n * std::log(x.lambda);
                       q.D -= n * std::log(x.lambda);
                   },
                   [&](const Scale& x) {
                       if (!(x.mu > 0.0)) throw InvalidArgument("scale factor must be positive");
                       q.C += std::log(x.mu);
                       q.D += std::log(x.mu);
                   },
                   [&](const Rotate& x) {
                       check_rotation(x, n);
                       q.b = rotate(x, q.b);
                   },
                   [&](const PhasePair& x) {
                       q.C += I * x.theta_plus;
                       q.D += I * x.theta_minus;
                   },
                   [&](const Boost& x) {
                       const double ch = std::cosh(x.a), sh = std::sinh(x.a);
                       q.A = params.A * ch - params.b[0] * sh;
                       q.b[0] = -params.A * sh + params.b[0] * ch;
                   },
               },
               gen);
    double rb = 0.0;
    for (const auto& v : q.b) rb += v.real() * v.real();
    rb = std::sqrt(rb);
    if (rb >= -q.A.real() + 1e-12)
        throw ConstraintViolation("transformed coefficients leave the cone: |Re b| = " + num(rb) +
                                  ", -Re A = " + num(-q.A.real()));
    return q;
}

CanonicalG canonicalize_G(const ExpQuadraticParams& params) {
    params.validate();
    if (params.space != Space::frequency) throw InvalidArgument("canonicalize_G expects frequency-form coefficients");
    const int n = params.dim();
    CanonicalG out;
    ExpQuadraticParams p = params;
    auto push = [&](GGenerator g) {
        p = apply_G(p, g);
        out.trail.push_back(std::move(g));
    };
    std::vector<double> x0(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x0[static_cast<std::size_t>(i)] = -p.b[static_cast<std::size_t>(i)].imag();
    push(Translate{-p.A.imag(), x0});
    push(Phase{-p.C.imag()});
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = p.b[static_cast<std::size_t>(i)].real() / p.A.real();
    push(Galilean{v});
    push(ParabolicDilate{2.0 * std::sqrt(-p.A.real())});
    push(Scale{std::exp(0.5 * n * std::log(pi) - p.C.real())});
    out.canonical = p;
    return out;
}

CanonicalL canonicalize_L(const ConeExpParams& params) {
    params.validate();
    const int n = params.dim;
    CanonicalL out;
    ConeExpParams p = params;
    auto push = [&](LGenerator g) {
        p = apply_L(p, g);
        out.trail.push_back(std::move(g));
    };
    std::vector<double> x0(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x0[static_cast<std::size_t>(i)] = -p.b[static_cast<std::size_t>(i)].imag();
    push(Translate{-p.A.imag(), x0});
    push(PhasePair{-p.C.imag(), -p.D.imag()});
    std::vector<double> rb(static_cast<std::size_t>(n));
    double rb_len = 0.0;
    for (int i = 0; i < n; ++i) {
        rb[static_cast<std::size_t>(i)] = p.b[static_cast<std::size_t>(i)].real();
        rb_len += rb[static_cast<std::size_t>(i)] * rb[static_cast<std::size_t>(i)];
    }
    // rounding-level Re b (e.g. left by an earlier boost) counts as zero
    push(std::sqrt(rb_len) <= 1e-12 * -p.A.real() ? identity_rotation(n) : frame_rotation(rb));
    push(Boost{std::atanh(p.b[0].real() / p.A.real())});
    push(Dilate{-p.A.real()});
    push(Scale{std::exp(canonical_cone_log_scale(n) - p.C.real())});
    out.canonical = p;
    return out;
}

ExpQuadraticParams replay(const ExpQuadraticParams& params, const std::vector<GGenerator>& trail) {
    ExpQuadraticParams p = params;
    for (const auto& g : trail) p = apply_G(p, g);
    return p;
}

ConeExpParams replay(const ConeExpParams& params, const std::vector<LGenerator>& trail) {
    ConeExpParams p = params;
    for (const auto& g : trail) p = apply_L(p, g);
    return p;
}

double coefficient_distance(const ExpQuadraticParams& p, const ExpQuadraticParams& q) {
    if (p.b.size() != q.b.size() || p.space != q.space) return std::numeric_limits<double>::infinity();
    double d = std::max(std::abs(p.A - q.A), std::abs(p.C - q.C));
    for (std::size_t i = 0; i < p.b.size(); ++i) d = std::max(d, std::abs(p.b[i] - q.b[i]));
    return d;
}

double coefficient_distance(const ConeExpParams& p, const ConeExpParams& q) {
    if (p.dim != q.dim || p.b.size() != q.b.size()) return std::numeric_limits<double>::infinity();
    double d = std::max({std::abs(p.A - q.A), std::abs(p.C - q.C), std::abs(p.D - q.D)});
    for (std::size_t i = 0; i < p.b.size(); ++i) d = std::max(d, std::abs(p.b[i] - q.b[i]));
    return d;
}

bool orbit_equivalent(const ExpQuadraticParams& p, const ExpQuadraticParams& q, double tol) {
    const ExpQuadraticParams pf = to_frequency(p);
    const ExpQuadraticParams qf = to_frequency(q);
    if (pf.dim() != qf.dim()) return false;
    return coefficient_distance(canonicalize_G(pf).canonical, canonicalize_G(qf).canonical) <= tol;
}

bool orbit_equivalent(const ConeExpParams& p, const ConeExpParams& q, double tol) {
    if (p.dim != q.dim) return false;
    return coefficient_distance(canonicalize_L(p).canonical, canonicalize_L(q).canonical) <= tol;
}

}  // namespace strichartz
