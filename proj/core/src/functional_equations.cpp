#include "strichartz/functional_equations.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "strichartz/errors.hpp"

namespace strichartz {

using std::numbers::pi;

const char* to_string(FeqKind k) {
    switch (k) {
        case FeqKind::schr1: return "schr1";
        case FeqKind::schr2: return "schr2";
        case FeqKind::wave2: return "wave2";
        case FeqKind::wave3: return "wave3";
        case FeqKind::line_pair: return "line_pair";
    }
    return "?";
}

FeqKind feq_kind_from_string(const std::string& s) {
    for (FeqKind k : {FeqKind::schr1, FeqKind::schr2, FeqKind::wave2, FeqKind::wave3, FeqKind::line_pair})
        if (s == to_string(k)) return k;
    throw InvalidArgument("unknown functional equation kind '" + s + "'");
}

int feq_arity(FeqKind k) {
    return (k == FeqKind::schr1 || k == FeqKind::wave2) ? 3 : 2;
}

int feq_dim(FeqKind k) {
    switch (k) {
        case FeqKind::schr1:
        case FeqKind::line_pair: return 1;
        case FeqKind::schr2:
        case FeqKind::wave2: return 2;
        case FeqKind::wave3: return 3;
    }
    return 1;
}

bool feq_cone(FeqKind k) { return k == FeqKind::wave2 || k == FeqKind::wave3; }

bool feq_supports_uniqueness(FeqKind k) { return k != FeqKind::line_pair; }

namespace {

double q_of(FeqKind k, const Point& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return feq_cone(k) ? std::sqrt(s) : s;
}

void check_point(FeqKind k, const Point& x) {
    if (static_cast<int>(x.size()) != feq_dim(k))
        throw InvalidArgument(std::string("point dimension does not match kind ") + to_string(k));
}

}  // namespace

double feq_residual(FeqKind kind, const ProfileFn& f, const TotalFn& F, const std::vector<Tuple>& tuples) {
    double worst = 0.0;
    const int k = feq_arity(kind);
    for (const auto& t : tuples) {
        if (static_cast<int>(t.size()) != k)
            throw InvalidArgument(std::string("tuple arity does not match kind ") + to_string(kind));
        cplx lhs{1.0, 0.0};
        double s = 0.0;
        Point v(static_cast<std::size_t>(feq_dim(kind)), 0.0);
        for (const auto& x : t) {
            check_point(kind, x);
            lhs *= f(x);
            s += q_of(kind, x);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += x[i];
        }
        const cplx rhs = F(s, v);
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
    return worst;
}

ProfileFn weighted_profile(const ProfileFn& raw) {
    return [raw](const Point& x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(std::sqrt(s)) * raw(x);
    };
}

ProfileFn exponential_profile(FeqKind kind, cplx A, const std::vector<cplx>& b, cplx C) {
    if (static_cast<int>(b.size()) != feq_dim(kind)) throw InvalidArgument("b has the wrong dimension");
    return [kind, A, b, C](const Point& x) {
        cplx e = A * q_of(kind, x) + C;
        for (std::size_t i = 0; i < b.size(); ++i) e += b[i] * x[i];
        return std::exp(e);
    };
}

cplx ExpFamilyFit::eval(const Point& x) const { return exponential_profile(kind, A, b, C)(x); }

TotalFn ExpFamilyFit::total() const {
    const double k = feq_arity(kind);
    return [A = A, b = b, C = C, k](double s, const Point& v) {
        cplx e = A * s + k * C;
        for (std::size_t i = 0; i < b.size(); ++i) e += b[i] * v[i];
        return std::exp(e);
    };
}

ExpFamilyFit fit_exponential(const std::vector<Point>& points, const std::vector<cplx>& values, FeqKind kind,
                             double floor) {
    std::vector<long> parents(points.size());
    for (std::size_t i = 0; i < parents.size(); ++i) parents[i] = static_cast<long>(i) - 1;
    return fit_exponential(points, values, kind, parents, floor);
}

ExpFamilyFit fit_exponential(const std::vector<Point>& points, const std::vector<cplx>& values, FeqKind kind,
                             const std::vector<long>& parents, double floor) {
    if (points.size() != values.size() || parents.size() != values.size())
        throw InvalidArgument("points, values and parents differ in length");
    const int n = feq_dim(kind);
    const int cols = n + 2;
    if (static_cast<int>(points.size()) < cols) throw InvalidArgument("too few samples for the fit");
    const auto m = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd M(m, cols);
    Eigen::VectorXd re(m), im(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& x = points[static_cast<std::size_t>(i)];
        check_point(kind, x);
        const cplx v = values[static_cast<std::size_t>(i)];
        if (!(std::abs(v) > floor))
            throw VanishingSampleError("sample " + std::to_string(i) + " has |f| = " + std::to_string(std::abs(v)));
        M(i, 0) = q_of(kind, x);
        for (int a = 0; a < n; ++a) M(i, 1 + a) = x[static_cast<std::size_t>(a)];
        M(i, cols - 1) = 1.0;
        re[i] = std::log(std::abs(v));
        double ph = std::arg(v);
        const long par = parents[static_cast<std::size_t>(i)];
        if (par >= i) throw InvalidArgument("parent index must precede its sample");
        if (par >= 0) ph = im[par] + std::remainder(ph - im[par], 2.0 * pi);
        im[i] = ph;
    }
    const auto qr = M.colPivHouseholderQr();
    const Eigen::VectorXd cr = qr.solve(re);
    const Eigen::VectorXd ci = qr.solve(im);
    ExpFamilyFit fit;
    fit.kind = kind;
    fit.A = {cr[0], ci[0]};
    fit.b.resize(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) fit.b[static_cast<std::size_t>(a)] = {cr[1 + a], ci[1 + a]};
    fit.C = {cr[cols - 1], ci[cols - 1]};
    const Eigen::VectorXd rr = M * cr - re;
    const Eigen::VectorXd ri = M * ci - im;
    fit.residual = std::sqrt((rr.squaredNorm() + ri.squaredNorm()) / static_cast<double>(m));
    return fit;
}

std::pair<std::array<double, 2>, std::array<double, 2>> square_map(const std::array<double, 2>& x,
                                                                   const std::array<double, 2>& y) {
    const double m0 = 0.5 * (x[0] + y[0]), m1 = 0.5 * (x[1] + y[1]);
    const double h0 = -0.5 * (x[1] - y[1]), h1 = 0.5 * (x[0] - y[0]);
    return {{m0 + h0, m1 + h1}, {m0 - h0, m1 - h1}};
}

std::pair<std::array<double, 3>, std::array<double, 3>> ellipsoid_map(const std::array<double, 3>& x,
                                                                      const std::array<double, 3>& y) {
    const double xy = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    const double nx = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const double ny = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
    const std::array<double, 3> cr{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
    const double nc = std::sqrt(cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]);
    if (!(nc > 1e-12 * nx * ny) || nx == 0.0 || ny == 0.0) throw DegenerateError("x and y are colinear");
    const double lam = (xy - nx * ny) / (xy + nx * ny + 2.0 * ny * ny);
    std::array<double, 3> p{}, q{};
    for (int i = 0; i < 3; ++i) {
        p[static_cast<std::size_t>(i)] = lam * y[static_cast<std::size_t>(i)];
        q[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + y[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(i)];
    }
    return {p, q};
}

std::array<double, 2> ellipsoid_map_jacobians(const std::array<double, 3>& x, const std::array<double, 3>& y,
                                              double h) {
    Eigen::Matrix3d JP, JQ;
    for (int j = 0; j < 3; ++j) {
        auto yp = y, ym = y;
        yp[static_cast<std::size_t>(j)] += h;
        ym[static_cast<std::size_t>(j)] -= h;
        const auto [pp, qp] = ellipsoid_map(x, yp);
        const auto [pm, qm] = ellipsoid_map(x, ym);
        for (int i = 0; i < 3; ++i) {
            const auto k = static_cast<std::size_t>(i);
            JP(i, j) = (pp[k] - pm[k]) / (2.0 * h);
            JQ(i, j) = (qp[k] - qm[k]) / (2.0 * h);
        }
    }
    return {JP.determinant(), JQ.determinant()};
}

double rectangle_residual(const std::function<cplx(const std::array<double, 2>&)>& f,
                          const std::vector<Rectangle>& rects) {
    double worst = 0.0;
    for (const auto& r : rects) {
        const double u0 = r.a[0] - r.b[0], u1 = r.a[1] - r.b[1];
        const double w0 = r.c[0] - r.b[0], w1 = r.c[1] - r.b[1];
        const double scale = std::max({1.0, std::hypot(u0, u1) * std::hypot(w0, w1)});
        if (std::abs(u0 * w0 + u1 * w1) > 1e-10 * scale) throw InvalidRectangle("a - b is not orthogonal to c - b");
        const double e0 = u0 - (r.d[0] - r.c[0]), e1 = u1 - (r.d[1] - r.c[1]);
        if (std::hypot(e0, e1) > 1e-10 * std::max(1.0, std::hypot(u0, u1))) throw InvalidRectangle("a - b != d - c");
        worst = std::max(worst, std::abs(f(r.a) * f(r.c) - f(r.b) * f(r.d)));
    }
    return worst;
}

double cauchy_residual(const ProfileFn& g, const std::vector<std::pair<Point, Point>>& pairs) {
    double worst = 0.0;
    for (const auto& [x, y] : pairs) {
        if (x.size() != y.size()) throw InvalidArgument("pair dimensions differ");
        Point s(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
        worst = std::max(worst, std::abs(g(x) * g(y) - g(s)));
    }
    return worst;
}

namespace {

double mink(const Point& a, const Point& b) {
    double s = a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i) s -= a[i] * b[i];
    return s;
}

double euclid(const Point& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

bool parallel(const Point& a, const Point& b) {
    // |a|^2 |b|^2 - (a.b)^2 via the Gram determinant.
    double aa = 0, bb = 0, ab = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        aa += a[i] * a[i];
        bb += b[i] * b[i];
        ab += a[i] * b[i];
    }
    return aa * bb - ab * ab <= 1e-24 * aa * bb;
}

Point normalise_future(Point w) {
    if (w[0] < 0) for (double& v : w) v = -v;
    const double t = w[0];
    for (double& v : w) v /= t;
    return w;
}

void check_causal(const Point& X, const char* name) {
    const double tol = 1e-12 * std::max(1.0, euclid(X));
    if (!(X[0] > 0.0) || mink(X, X) < -tol * std::max(1.0, euclid(X)))
        throw DomainError(std::string(name) + " is not in the closed forward cone");
}

}  // namespace

NullDecomposition cone_null_decompose(const Point& X, const Point& Y) {
    if (X.size() < 2 || X.size() != Y.size()) throw InvalidArgument("X and Y must be (t, x) vectors of equal length");
    check_causal(X, "X");
    check_causal(Y, "Y");
    const double tol = 1e-12;
    const bool xnull = std::abs(mink(X, X)) <= tol * X[0] * X[0];
    const bool ynull = std::abs(mink(Y, Y)) <= tol * Y[0] * Y[0];
    Point Z = Y;
    if (parallel(X, Y)) {
        if (xnull) throw DegenerateError("X and Y are parallel null vectors");
        // Any plane through the time-like X works; take one containing a
        // spatial direction orthogonal to the spatial part of X.
        Z.assign(X.size(), 0.0);
        std::size_t axis = 1;
        for (std::size_t i = 2; i < X.size(); ++i)
            if (std::abs(X[i]) < std::abs(X[axis])) axis = i;
        Z[axis] = 1.0;
        double d = 0.0, xs = 0.0;
        for (std::size_t i = 1; i < X.size(); ++i) {
            d += Z[i] * X[i];
            xs += X[i] * X[i];
        }
        if (xs > 0)
            for (std::size_t i = 1; i < X.size(); ++i) Z[i] -= d * X[i] / xs;
    }
    // Null directions alpha X + beta Z: m(X) r^2 + 2 <X,Z> r + m(Z) = 0, r = alpha / beta.
    const double mx = mink(X, X), mz = mink(Z, Z), xz = mink(X, Z);
    const double disc = xz * xz - mx * mz;
    if (!(disc > 0.0)) throw DegenerateError("the plane through X and Y is not time-like");
    auto combo = [&](double al, double be) {
        Point w(X.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = al * X[i] + be * Z[i];
        return normalise_future(w);
    };
    Point U, V;
    const bool yv = ynull && !parallel(X, Y);
    if (xnull) {
        U = normalise_future(X);
        // second root of beta (2 <X,Z> alpha + m(Z) beta) = 0
        V = yv ? normalise_future(Y) : combo(-mz, 2.0 * xz);
    } else if (yv) {
        V = normalise_future(Y);
        U = combo(2.0 * xz, -mx);
    } else {
        const double sq = std::sqrt(disc);
        const double q = -(xz + std::copysign(sq, xz));
        // roots r1 = q / mx, r2 = mz / q
        U = combo(q / mx, 1.0);
        V = combo(mz / q, 1.0);
    }
    NullDecomposition out;
    out.U = U;
    out.V = V;
    const double uv = mink(U, V);
    if (!(uv > 0.0)) throw DegenerateError("null directions coincide");
    out.a = mink(X, V) / uv;
    out.b = xnull ? 0.0 : mink(X, U) / uv;
    out.c = yv ? 0.0 : mink(Y, V) / uv;
    out.d = mink(Y, U) / uv;
    return out;
}

double cone_extension_residual(const std::function<cplx(const Point&)>& F, const Point& X, const Point& Y) {
    const NullDecomposition d = cone_null_decompose(X, Y);
    auto scaled = [](const Point& w, double s) {
        Point o(w);
        for (double& v : o) v *= s;
        return o;
    };
    Point S(X.size());
    for (std::size_t i = 0; i < S.size(); ++i) S[i] = X[i] + Y[i];
    const cplx fx = F(scaled(d.U, d.a)) * F(scaled(d.V, d.b));
    const cplx fy = F(scaled(d.U, d.c)) * F(scaled(d.V, d.d));
    return std::max(std::abs(fx - F(X)), std::abs(fx * fy - F(S)));
}

TotalFn line_pair_solution(const std::function<cplx(double)>& f) {
    return [f](double s, const Point& v) {
        const double t = v[0];
        const double r = std::sqrt(std::max(0.0, 2.0 * s - t * t));
        return f(0.5 * (t + r)) * f(0.5 * (t - r));
    };
}

}  // namespace strichartz
