#include "strichartz/measure_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "strichartz/errors.hpp"
#include "strichartz/parallel.hpp"
#include "strichartz/quadrature.hpp"

namespace strichartz {

using std::numbers::pi;

void MeasureSpec::validate() const {
    const bool ok = (surface == Surface::paraboloid && weight == MeasureWeight::unit &&
                     ((dim == 2 && factors == 2) || (dim == 1 && factors == 3))) ||
                    (surface == Surface::cone_plus && weight == MeasureWeight::inverse_norm &&
                     ((dim == 3 && factors == 2) || (dim == 2 && factors == 2) || (dim == 2 && factors == 3)));
    if (!ok) throw UnsupportedCase("unsupported measure convolution " + name());
}

std::string MeasureSpec::name() const {
    return std::string(surface == Surface::paraboloid ? "paraboloid" : "cone") + "_n" + std::to_string(dim) + "_" +
           (weight == MeasureWeight::unit ? "unit" : "inverse_norm") + "_x" + std::to_string(factors);
}

namespace {

double norm_sq(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

void check_point(const MeasureSpec& spec, const FreqPoint& pt) {
    spec.validate();
    if (static_cast<int>(pt.xi.size()) != spec.dim)
        throw InvalidArgument("point has " + std::to_string(pt.xi.size()) + " xi entries, measure dimension is " +
                              std::to_string(spec.dim));
    if (!std::isfinite(pt.tau) || !std::isfinite(norm_sq(pt.xi))) throw InvalidArgument("non-finite point");
}

std::string describe(const FreqPoint& pt) {
    std::string s = "(tau=" + std::to_string(pt.tau) + ", xi=[";
    for (std::size_t i = 0; i < pt.xi.size(); ++i) s += (i ? "," : "") + std::to_string(pt.xi[i]);
    return s + "])";
}

}  // namespace

bool in_region(Region r, const FreqPoint& pt) {
    const double x2 = norm_sq(pt.xi);
    switch (r) {
        case Region::parabolic_triple:
            return 3.0 * pt.tau > x2;
        case Region::parabolic_pair:
            return 2.0 * pt.tau > x2;
        case Region::forward_cone:
            return pt.tau > std::sqrt(x2);
    }
    return false;
}

Region region_of(const MeasureSpec& spec) {
    spec.validate();
    if (spec.surface == Surface::cone_plus) return Region::forward_cone;
    return spec.factors == 2 ? Region::parabolic_pair : Region::parabolic_triple;
}

double reduced_tau(const MeasureSpec& spec, const FreqPoint& pt) {
    check_point(spec, pt);
    const double x2 = norm_sq(pt.xi);
    if (spec.surface == Surface::paraboloid) return pt.tau - x2 / spec.factors;
    const double d = pt.tau * pt.tau - x2;
    return pt.tau > 0.0 && d > 0.0 ? std::sqrt(d) : (pt.tau > 0.0 && d == 0.0 ? 0.0 : -1.0);
}

FreqPoint symmetry_reduce(const MeasureSpec& spec, const FreqPoint& pt) {
    if (!in_region(region_of(spec), pt))
        throw RegionError("point " + describe(pt) + " is not strictly inside the support of " + spec.name());
    const double t = reduced_tau(spec, pt);
    if (!(t > 0.0)) throw RegionError("point " + describe(pt) + " reduces to the boundary");
    return {t, std::vector<double>(pt.xi.size(), 0.0)};
}

double convolution_closed_form(const MeasureSpec& spec, const FreqPoint& pt) {
    const FreqPoint r = symmetry_reduce(spec, pt);
    if (spec.surface == Surface::paraboloid) return spec.factors == 2 ? pi / 2.0 : pi / std::sqrt(3.0);
    if (spec.dim == 3) return 2.0 * pi;
    if (spec.factors == 3) return 4.0 * pi * pi;
    return 2.0 * pi / r.tau;
}

namespace {

// One radial ray through the integration variable eta = rho * e.
// Paraboloid: h(rho) = a2 rho^2 - 2 b1 rho + c0, weight rho^power.
// Cone: h(rho) = k rho + |c - rho v|, weight rho^power / |c - rho v|.
// With cube > 0 the cone weight becomes 3 rho d^2 / (cube rho^3 + d^3),
// d = |c - rho v|.
struct Ray {
    bool cone = false;
    double a2 = 0.0, b1 = 0.0, c0 = 0.0;
    double k = 1.0, vv = 1.0, cv = 0.0, cc = 0.0;
    int power = 1;
    double cube = 0.0;

    double dist(double rho) const { return std::sqrt(std::max(0.0, cc - 2.0 * rho * cv + rho * rho * vv)); }
    double h(double rho) const { return cone ? k * rho + dist(rho) : (a2 * rho - 2.0 * b1) * rho + c0; }
    double weight(double rho) const {
        if (cube > 0.0) {
            const double d = dist(rho);
            return 3.0 * rho * d * d / (cube * rho * rho * rho + d * d * d);
        }
        const double w = power == 0 ? 1.0 : (power == 1 ? rho : std::pow(rho, power));
        return cone ? w / dist(rho) : w;
    }

    // Nonnegative rho with h(rho) = L.
    void roots(double L, std::vector<double>& out) const {
        double A, B, C;  // A rho^2 + B rho + C = 0
        if (cone) {
            A = vv - k * k;
            B = 2.0 * (L * k - cv);
            C = cc - L * L;
        } else {
            A = a2;
            B = -2.0 * b1;
            C = c0 - L;
        }
        double r[2];
        int nr = 0;
        if (std::abs(A) <= 1e-14 * (std::abs(B) + std::abs(C))) {
            if (B != 0.0) r[nr++] = -C / B;
        } else {
            const double disc = B * B - 4.0 * A * C;
            if (disc < 0.0) return;
            const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
            if (q != 0.0) {
                r[nr++] = q / A;
                r[nr++] = C / q;
            } else {
                r[nr++] = 0.0;
            }
        }
        for (int i = 0; i < nr; ++i) {
            const double rho = r[i];
            if (!(rho >= 0.0) || !std::isfinite(rho)) continue;
            if (cone && (L - k * rho < -1e-12 * std::max(1.0, L) ||
                         std::abs(h(rho) - L) > 1e-8 * std::max(1.0, std::abs(L))))
                continue;
            out.push_back(rho);
        }
    }
};

// Integral over rho >= 0 of bump(tau - h(rho)) * weight(rho), with the
// triangular bump of half-width eps split at its kinks.
double radial_integral(const Ray& ray, double tau, double eps, const GaussRule& gl) {
    std::vector<double> br{0.0};
    ray.roots(tau - eps, br);
    ray.roots(tau, br);
    ray.roots(tau + eps, br);
    if (br.size() == 1) return 0.0;
    if (ray.cone) {
        if (ray.vv > 0.0 && ray.cv > 0.0) br.push_back(ray.cv / ray.vv);
    } else if (ray.b1 > 0.0) {
        br.push_back(ray.b1 / ray.a2);
    }
    std::sort(br.begin(), br.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        const double lo = br[i], hi = br[i + 1];
        if (!(hi > lo)) continue;
        const double mid = 0.5 * (lo + hi);
        if (std::abs(tau - ray.h(mid)) >= eps) continue;
        const double half = 0.5 * (hi - lo);
        double s = 0.0;
        for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
            const double rho = mid + half * gl.nodes[j];
            const double bump = std::max(0.0, 1.0 - std::abs(tau - ray.h(rho)) / eps) / eps;
            s += gl.weights[j] * bump * ray.weight(rho);
        }
        total += half * s;
    }
    return total;
}

int default_angular(const MeasureSpec& spec) {
    if (spec.dim == 3) return 96;                    // sphere: 48 x 96
    if (spec.surface == Surface::cone_plus && spec.factors == 3) return 48;  // S^3
    return 512;
}

}  // namespace

double mollified_convolution(const MeasureSpec& spec, const FreqPoint& pt, double eps, const OracleOptions& opt) {
    check_point(spec, pt);
    if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
    const GaussRule gl = gauss_legendre(opt.radial_nodes);
    const int M = opt.angular_points > 0 ? opt.angular_points : default_angular(spec);
    const double tau = pt.tau;
    const double cc = norm_sq(pt.xi);
    std::vector<double> partial;

    if (spec.surface == Surface::paraboloid) {
        // eta in R^2 in both cases: eta_1 (pair, n = 2) or (eta_1, eta_2) (triple, n = 1).
        partial.resize(static_cast<std::size_t>(M));
        parallel_for(partial.size(), [&](std::size_t i) {
            const double th = 2.0 * pi * (static_cast<double>(i) + 0.5) / M;
            const double e1 = std::cos(th), e2 = std::sin(th);
            Ray ray;
            ray.power = 1;
            if (spec.factors == 2) {
                ray.a2 = 2.0;
                ray.b1 = pt.xi[0] * e1 + pt.xi[1] * e2;
                ray.c0 = cc;
            } else {
                const double s = e1 + e2;
                ray.a2 = 1.0 + s * s;
                ray.b1 = pt.xi[0] * s;
                ray.c0 = cc;
            }
            partial[i] = radial_integral(ray, tau, eps, gl) * 2.0 * pi / M;
        });
    } else if (spec.factors == 2 && spec.dim == 2) {
        partial.resize(static_cast<std::size_t>(M));
        parallel_for(partial.size(), [&](std::size_t i) {
            const double th = 2.0 * pi * (static_cast<double>(i) + 0.5) / M;
            Ray ray;
            ray.cone = true;
            ray.power = 0;
            ray.k = 1.0;
            ray.vv = 1.0;
            ray.cv = pt.xi[0] * std::cos(th) + pt.xi[1] * std::sin(th);
            ray.cc = cc;
            partial[i] = radial_integral(ray, tau, eps, gl) * 2.0 * pi / M;
        });
    } else if (spec.factors == 2 && spec.dim == 3) {
        const int Mt = std::max(2, M / 2);
        const GaussRule mu = gauss_legendre(Mt);
        partial.resize(static_cast<std::size_t>(Mt));
        parallel_for(partial.size(), [&](std::size_t i) {
            const double z = mu.nodes[i];
            const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
            std::vector<double> row(static_cast<std::size_t>(M));
            for (int j = 0; j < M; ++j) {
                const double ph = 2.0 * pi * (j + 0.5) / M;
                Ray ray;
                ray.cone = true;
                ray.power = 1;
                ray.k = 1.0;
                ray.vv = 1.0;
                ray.cv = pt.xi[0] * s * std::cos(ph) + pt.xi[1] * s * std::sin(ph) + pt.xi[2] * z;
                ray.cc = cc;
                row[static_cast<std::size_t>(j)] = radial_integral(ray, tau, eps, gl);
            }
            partial[i] = mu.weights[i] * pairwise_sum(row) * 2.0 * pi / M;
        });
    } else {
        // Three cone factors in n = 2: (eta_1, eta_2) = rho (cos psi u, sin psi w) in R^4,
        // the third factor eliminated. The integrand is split by the partition
        // |eta_l|^3 / sum_k |eta_k|^3; the three pieces agree by permutation
        // symmetry, so only l = 3 is integrated, and in that piece the
        // 1/|eta_3| singularity is removed.
        const GaussRule psi = gauss_legendre(std::max(2, M / 2), 0.0, pi / 2.0);
        partial.resize(psi.nodes.size());
        parallel_for(partial.size(), [&](std::size_t i) {
            const double cp = std::cos(psi.nodes[i]), sp = std::sin(psi.nodes[i]);
            std::vector<double> row(static_cast<std::size_t>(M) * static_cast<std::size_t>(M));
            for (int a = 0; a < M; ++a) {
                const double t1 = 2.0 * pi * (a + 0.5) / M;
                for (int b = 0; b < M; ++b) {
                    const double t2 = 2.0 * pi * (b + 0.5) / M;
                    const double v0 = cp * std::cos(t1) + sp * std::cos(t2);
                    const double v1 = cp * std::sin(t1) + sp * std::sin(t2);
                    Ray ray;
                    ray.cone = true;
                    ray.power = 1;
                    ray.k = cp + sp;
                    ray.cube = cp * cp * cp + sp * sp * sp;
                    ray.vv = v0 * v0 + v1 * v1;
                    ray.cv = pt.xi[0] * v0 + pt.xi[1] * v1;
                    ray.cc = cc;
                    row[static_cast<std::size_t>(a) * static_cast<std::size_t>(M) + static_cast<std::size_t>(b)] =
                        radial_integral(ray, tau, eps, gl);
                }
            }
            // The S^3 area element is cos(psi) sin(psi); it cancels against 1/(|eta_1||eta_2|).
            partial[i] = psi.weights[i] * pairwise_sum(row) * (2.0 * pi / M) * (2.0 * pi / M);
        });
    }
    return pairwise_sum(partial);
}

OracleResult convolution_oracle(const MeasureSpec& spec, const FreqPoint& pt, const OracleOptions& opt) {
    check_point(spec, pt);
    if (opt.epsilons.size() != 3) throw InvalidArgument("the oracle needs exactly three epsilon levels");
    const double e0 = opt.epsilons[0], e1 = opt.epsilons[1], e2 = opt.epsilons[2];
    if (!(opt.level_tol >= 0.0)) throw InvalidArgument("level_tol must be nonnegative");
    if (!(e0 > e1 && e1 > e2 && e2 > 0.0) || std::abs(e0 / e1 - e1 / e2) > 1e-12 * (e0 / e1))
        throw InvalidArgument("epsilons must decrease geometrically");
    if (!in_region(region_of(spec), pt))
        throw RegionError("point " + describe(pt) + " is not strictly inside the support of " + spec.name());
    const double tstar = reduced_tau(spec, pt);
    const double gap = spec.surface == Surface::cone_plus ? pt.tau - std::sqrt(norm_sq(pt.xi)) : tstar;
    if (tstar < opt.margin_factor * e0 || gap < 2.0 * e0)
        throw RegionError("point " + describe(pt) + " is within " + std::to_string(opt.margin_factor) +
                          " eps of the support boundary");

    OracleResult res;
    res.epsilons = opt.epsilons;
    for (double e : opt.epsilons) res.levels.push_back(mollified_convolution(spec, pt, e, opt));
    const double v0 = res.levels[0], v1 = res.levels[1], v2 = res.levels[2];
    const double d1 = v0 - v1, d2 = v1 - v2;
    const double scale = std::max(std::abs(v2), 1e-300);
    if (std::max(std::abs(d1), std::abs(d2)) <= opt.level_tol * scale) {
        res.value = v2;
        res.error = std::max(std::abs(d1), std::abs(d2));
        res.order = std::numeric_limits<double>::infinity();
        res.exact_levels = true;
        return res;
    }
    const double ratio = d1 / d2;
    const double q = ratio > 0.0 ? std::log(ratio) / std::log(e0 / e1) : -1.0;
    if (!std::isfinite(q) || q < 0.8 || q > 6.0)
        throw ConvergenceError("inconsistent Richardson ratios at " + describe(pt) + ": levels " + std::to_string(v0) +
                               ", " + std::to_string(v1) + ", " + std::to_string(v2));
    const double corr = d2 / (std::pow(e0 / e1, q) - 1.0);
    res.value = v2 - corr;
    res.error = std::abs(corr);
    res.order = q;
    return res;
}

}  // namespace strichartz
