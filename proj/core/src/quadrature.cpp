#include "strichartz/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "strichartz/errors.hpp"
#include "strichartz/parallel.hpp"

namespace strichartz {

namespace {

// Sum of f at the midpoints of n equal cells on [a, b], excluding those
// already present in the n/3 partition (every cell whose index is 1 mod 3).
double new_midpoints(const std::function<double(double)>& f, double a, double b, long n, bool skip_old) {
    const double h = (b - a) / static_cast<double>(n);
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        if (skip_old && i % 3 == 1) continue;
        v.push_back(f(a + (static_cast<double>(i) + 0.5) * h));
    }
    return pairwise_sum(v);
}

}  // namespace

QuadResult integrate_midpoint(const std::function<double(double)>& f, double a, double b, const QuadOptions& opt) {
    if (!(b > a)) throw InvalidArgument("integration interval must have b > a");
    if (opt.initial_points < 1 || opt.max_levels < 2) throw InvalidArgument("bad quadrature options");
    long n = opt.initial_points;
    double sum = new_midpoints(f, a, b, n, false);
    std::vector<std::vector<double>> table;
    table.push_back({sum * (b - a) / static_cast<double>(n)});
    QuadResult res;
    for (int level = 1; level < opt.max_levels; ++level) {
        n *= 3;
        sum += new_midpoints(f, a, b, n, true);
        std::vector<double> row{sum * (b - a) / static_cast<double>(n)};
        double factor = 9.0;
        for (std::size_t k = 1; k <= table.back().size(); ++k) {
            row.push_back(row[k - 1] + (row[k - 1] - table.back()[k - 1]) / (factor - 1.0));
            factor *= 9.0;
        }
        const double best = row.back();
        const double err = std::abs(best - table.back().back());
        table.push_back(std::move(row));
        res = {best, err, level + 1, false};
        if (level >= 2 && err <= std::max(opt.rel_tol * std::abs(best), opt.abs_tol)) {
            res.converged = true;
            return res;
        }
    }
    return res;
}

QuadResult integrate_midpoint_2d(const std::function<double(double, double)>& f, double ax, double bx, double ay,
                                 double by, const QuadOptions& opt) {
    QuadOptions inner = opt;
    inner.rel_tol = opt.rel_tol * 0.1;
    inner.abs_tol = opt.abs_tol * 0.1;
    bool inner_ok = true;
    double inner_err = 0.0;
    auto outer = [&](double x) {
        const QuadResult r = integrate_midpoint([&](double y) { return f(x, y); }, ay, by, inner);
        inner_ok = inner_ok && r.converged;
        inner_err = std::max(inner_err, r.error);
        return r.value;
    };
    QuadResult res = integrate_midpoint(outer, ax, bx, opt);
    res.converged = res.converged && inner_ok;
    res.error += inner_err * (bx - ax);
    return res;
}

namespace {

GaussRule golub_welsch(const Eigen::VectorXd& offdiag, double mu0) {
    const int n = static_cast<int>(offdiag.size()) + 1;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) J(i, i + 1) = J(i + 1, i) = offdiag[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        r.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
        const double v0 = es.eigenvectors()(0, i);
        r.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
    }
    return r;
}

}  // namespace

GaussRule gauss_legendre(int n) {
    if (n < 1) throw InvalidArgument("Gauss rule needs n >= 1");
    if (n == 1) return {{0.0}, {2.0}};
    Eigen::VectorXd beta(n - 1);
    for (int k = 1; k < n; ++k) beta[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    return golub_welsch(beta, 2.0);
}

GaussRule gauss_legendre(int n, double a, double b) {
    GaussRule r = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        r.nodes[i] = mid + half * r.nodes[i];
        r.weights[i] *= half;
    }
    return r;
}

GaussRule gauss_hermite(int n) {
    if (n < 1) throw InvalidArgument("Gauss rule needs n >= 1");
    const double mu0 = std::sqrt(std::numbers::pi);
    if (n == 1) return {{0.0}, {mu0}};
    Eigen::VectorXd beta(n - 1);
    for (int k = 1; k < n; ++k) beta[k - 1] = std::sqrt(0.5 * k);
    GaussRule r = golub_welsch(beta, mu0);
    // Newton polish on the orthonormal Hermite polynomial H_n, then Christoffel
    // weights 1 / sum_{k<n} H_k(x)^2 (H_k orthonormal for exp(-x^2)),
    // which keep relative accuracy for the tiny tail weights.
    std::vector<double> h(static_cast<std::size_t>(n) + 1);
    const auto eval = [&](double x) {
        h[0] = std::pow(std::numbers::pi, -0.25);
        h[1] = std::sqrt(2.0) * x * h[0];
        for (int k = 2; k <= n; ++k)
            h[static_cast<std::size_t>(k)] = std::sqrt(2.0 / k) * x * h[static_cast<std::size_t>(k - 1)] -
                                             std::sqrt((k - 1.0) / k) * h[static_cast<std::size_t>(k - 2)];
    };
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        double x = r.nodes[i];
        for (int it = 0; it < 3; ++it) {
            eval(x);
            const double df = std::sqrt(2.0 * n) * h[static_cast<std::size_t>(n - 1)];
            if (df == 0.0) break;
            x -= h[static_cast<std::size_t>(n)] / df;
        }
        eval(x);
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += h[static_cast<std::size_t>(k)] * h[static_cast<std::size_t>(k)];
        r.nodes[i] = x;
        r.weights[i] = 1.0 / s;
    }
    return r;
}

}  // namespace strichartz
