#include "strichartz/lens.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>

#include "strichartz/errors.hpp"
#include "strichartz/parallel.hpp"
#include "strichartz/quadrature.hpp"

namespace strichartz {

using std::numbers::pi;

std::vector<double> hermite_functions(int m, double y) {
    std::vector<double> v(static_cast<std::size_t>(m) + 1);
    v[0] = std::pow(pi, -0.25) * std::exp(-0.5 * y * y);
    if (m >= 1) v[1] = std::sqrt(2.0) * y * v[0];
    for (int k = 2; k <= m; ++k)
        v[static_cast<std::size_t>(k)] = std::sqrt(2.0 / k) * y * v[static_cast<std::size_t>(k - 1)] -
                                         std::sqrt((k - 1.0) / k) * v[static_cast<std::size_t>(k - 2)];
    return v;
}

namespace {

using MatC = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatR = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Nodes and weights w_i with sum w_i g(z_i) = int g for g = poly * exp(-z^2).
// Golub-Welsch nodes are polished by Newton on phi_q; weights come from the
// Christoffel function, which keeps relative accuracy in the tails.
void hermite_rule(int q, std::vector<double>& z, std::vector<double>& w) {
    const GaussRule g = gauss_hermite(q);
    z = g.nodes;
    w.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        double x = z[i];
        for (int it = 0; it < 3; ++it) {
            const auto ph = hermite_functions(q, x);
            const double f = ph[static_cast<std::size_t>(q)];
            const double df = std::sqrt(2.0 * q) * ph[static_cast<std::size_t>(q - 1)] - x * f;
            if (df == 0.0) break;
            x -= f / df;
        }
        z[i] = x;
        const auto ph = hermite_functions(q - 1, x);
        double s = 0.0;
        for (double v : ph) s += v * v;
        w[i] = 1.0 / s;
    }
}

double power_abs(double r2, double p) {
    // |V|^p from |V|^2 for the even exponents used here
    return std::pow(r2, 0.5 * p);
}

}  // namespace

HermiteLens::HermiteLens(int dim, int degree, double sigma) : dim_(dim), degree_(degree), sigma_(sigma) {
    if (dim != 1 && dim != 2) throw UnsupportedCase("lens discretization supports n = 1, 2, got n = " + std::to_string(dim));
    if (degree < 0 || degree > 80) throw InvalidArgument("Hermite degree must lie in [0, 80]");
    if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
    p_ = 2.0 + 4.0 / dim;
    const int pe = static_cast<int>(std::lround(p_));
    // Integrand degree per axis is p * degree.
    const int q = pe * degree / 2 + 1;
    std::vector<double> z, w;
    hermite_rule(q, z, w);
    const double c = 0.5 * p_;
    nodes_.resize(z.size());
    weights_.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        nodes_[i] = z[i] / std::sqrt(c);
        weights_[i] = w[i] / std::sqrt(c);
    }
    phi_.assign(static_cast<std::size_t>(degree + 1) * nodes_.size(), 0.0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto ph = hermite_functions(degree, nodes_[i]);
        for (int k = 0; k <= degree; ++k) phi_[static_cast<std::size_t>(k) * nodes_.size() + i] = ph[static_cast<std::size_t>(k)];
    }
    // The s-integrand has period pi and frequencies 2j, |j| <= (p/4) n degree.
    const int ms = pe * dim * degree / 2 + 2;
    times_.resize(static_cast<std::size_t>(ms));
    for (int k = 0; k < ms; ++k) times_[static_cast<std::size_t>(k)] = -0.5 * pi + pi * (k + 0.5) / ms;
}

std::size_t HermiteLens::size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim_; ++a) s *= static_cast<std::size_t>(degree_ + 1);
    return s;
}

namespace {

// B(k, i) = psi_k at coordinate i of one axis.
MatR axis_basis(int m, double sigma, const Grid& g, int axis) {
    const int n = g.points[static_cast<std::size_t>(axis)];
    MatR B(m + 1, n);
    const double s = 1.0 / std::sqrt(sigma);
    for (int i = 0; i < n; ++i) {
        const auto ph = hermite_functions(m, g.coord(axis, i) / sigma);
        for (int k = 0; k <= m; ++k) B(k, i) = s * ph[static_cast<std::size_t>(k)];
    }
    return B;
}

}  // namespace

std::vector<cplx> HermiteLens::project(const ComplexField& f0) const {
    const ComplexField f = to_space(f0, Space::physical);
    if (f.grid.dim != dim_) throw InvalidArgument("field dimension does not match the lens basis");
    const int m1 = degree_ + 1;
    const MatR B0 = axis_basis(degree_, sigma_, f.grid, 0);
    std::vector<cplx> a(size());
    const double vol = f.grid.cell_volume();
    if (dim_ == 1) {
        Eigen::Map<const Eigen::VectorXcd> F(f.values.data(), f.grid.points[0]);
        Eigen::VectorXcd r = B0.cast<cplx>() * F * vol;
        for (int k = 0; k < m1; ++k) a[static_cast<std::size_t>(k)] = r[k];
    } else {
        const MatR B1 = axis_basis(degree_, sigma_, f.grid, 1);
        Eigen::Map<const MatC> F(f.values.data(), f.grid.points[0], f.grid.points[1]);
        MatC r = B0.cast<cplx>() * F * B1.transpose().cast<cplx>() * vol;
        for (int k = 0; k < m1; ++k)
            for (int l = 0; l < m1; ++l) a[static_cast<std::size_t>(k * m1 + l)] = r(k, l);
    }
    return a;
}

ComplexField HermiteLens::sample(const std::vector<cplx>& a, const Grid& g) const {
    if (g.dim != dim_) throw InvalidArgument("grid dimension does not match the lens basis");
    if (a.size() != size()) throw InvalidArgument("coefficient count does not match the lens basis");
    const int m1 = degree_ + 1;
    ComplexField out(g, Space::physical);
    const MatR B0 = axis_basis(degree_, sigma_, g, 0);
    if (dim_ == 1) {
        Eigen::Map<const Eigen::VectorXcd> A(a.data(), m1);
        Eigen::VectorXcd v = B0.transpose().cast<cplx>() * A;
        for (int i = 0; i < g.points[0]; ++i) out.values[static_cast<std::size_t>(i)] = v[i];
    } else {
        const MatR B1 = axis_basis(degree_, sigma_, g, 1);
        Eigen::Map<const MatC> A(a.data(), m1, m1);
        MatC v = B0.transpose().cast<cplx>() * A * B1.cast<cplx>();
        Eigen::Map<MatC>(out.values.data(), g.points[0], g.points[1]) = v;
    }
    return out;
}

double HermiteLens::power_ratio(const std::vector<cplx>& a, std::vector<cplx>* grad) const {
    if (a.size() != size()) throw InvalidArgument("coefficient count does not match the lens basis");
    const int m1 = degree_ + 1;
    const auto nq = static_cast<Eigen::Index>(nodes_.size());
    const Eigen::Map<const MatR> Phi(phi_.data(), m1, nq);
    const Eigen::Map<const Eigen::VectorXd> wy(weights_.data(), nq);
    const double ws = pi / static_cast<double>(times_.size());
    const std::size_t ns = times_.size();
    std::vector<double> part(ns, 0.0);
    std::vector<std::vector<cplx>> gpart(grad ? ns : 0);

    parallel_for(ns, [&](std::size_t k) {
        const double s = times_[k];
        Eigen::VectorXcd d(m1);
        for (int j = 0; j < m1; ++j) d[j] = std::polar(1.0, -s * j);
        if (dim_ == 1) {
            Eigen::Map<const Eigen::VectorXcd> A(a.data(), m1);
            const Eigen::VectorXcd c = d.cwiseProduct(A);
            const Eigen::VectorXcd V = Phi.transpose().cast<cplx>() * c;
            double acc = 0.0;
            Eigen::VectorXcd W(nq);
            for (Eigen::Index i = 0; i < nq; ++i) {
                const double r2 = std::norm(V[i]);
                const double pw = power_abs(r2, p_);
                acc += pw * wy[i];
                W[i] = r2 > 0 ? p_ * pw / r2 * V[i] * wy[i] * ws : cplx{0.0, 0.0};
            }
            part[k] = acc * ws;
            if (grad) {
                const Eigen::VectorXcd G = d.conjugate().cwiseProduct(Phi.cast<cplx>() * W);
                gpart[k].assign(G.data(), G.data() + m1);
            }
        } else {
            Eigen::Map<const MatC> A(a.data(), m1, m1);
            const MatC c = d.asDiagonal() * A * d.asDiagonal();
            const MatC V = Phi.transpose().cast<cplx>() * c * Phi.cast<cplx>();
            double acc = 0.0;
            MatC W(nq, nq);
            for (Eigen::Index i = 0; i < nq; ++i)
                for (Eigen::Index j = 0; j < nq; ++j) {
                    const double r2 = std::norm(V(i, j));
                    const double pw = power_abs(r2, p_);
                    const double w = wy[i] * wy[j];
                    acc += pw * w;
                    W(i, j) = r2 > 0 ? p_ * pw / r2 * V(i, j) * w * ws : cplx{0.0, 0.0};
                }
            part[k] = acc * ws;
            if (grad) {
                const Eigen::VectorXcd dc = d.conjugate();
                const MatC G = dc.asDiagonal() * (Phi.cast<cplx>() * W * Phi.transpose().cast<cplx>()) * dc.asDiagonal();
                gpart[k].assign(G.data(), G.data() + m1 * m1);
            }
        }
    });

    const double P = pairwise_sum(part);
    double N = 0.0;
    for (const auto& v : a) N += std::norm(v);
    if (!(N > 0.0)) throw InvalidArgument("zero coefficient vector");
    const double scale = std::pow(N, -0.5 * p_);
    if (grad) {
        grad->assign(a.size(), cplx{0.0, 0.0});
        for (std::size_t k = 0; k < ns; ++k)
            for (std::size_t i = 0; i < a.size(); ++i) (*grad)[i] += gpart[k][i];
        for (std::size_t i = 0; i < a.size(); ++i) (*grad)[i] = ((*grad)[i] - p_ * P / N * a[i]) * scale;
    }
    return P * scale;
}

double HermiteLens::quotient_from_ratio(double ratio) const { return std::pow(0.5 * ratio, 1.0 / p_); }

}  // namespace strichartz
