#pragma once

#include <string>
#include <vector>

namespace strichartz {

enum class Surface { paraboloid, cone_plus };
enum class MeasureWeight { unit, inverse_norm };

/// Self-convolution of a surface measure with `factors` copies.
/// Supported: (paraboloid, 2, unit, 2), (paraboloid, 1, unit, 3),
/// (cone_plus, 3, inverse_norm, 2), (cone_plus, 2, inverse_norm, 2),
/// (cone_plus, 2, inverse_norm, 3).
struct MeasureSpec {
    Surface surface = Surface::paraboloid;
    int dim = 2;
    MeasureWeight weight = MeasureWeight::unit;
    int factors = 2;

    void validate() const;
    std::string name() const;
};

struct FreqPoint {
    double tau = 0.0;
    std::vector<double> xi;
};

enum class Region { parabolic_pair, parabolic_triple, forward_cone };

/// 3 tau > xi^2, 2 tau > |xi|^2, tau > |xi| respectively (strict).
bool in_region(Region r, const FreqPoint& pt);
Region region_of(const MeasureSpec& spec);

/// tau - |xi|^2 / factors on the paraboloid, sqrt(tau^2 - |xi|^2) on the cone.
double reduced_tau(const MeasureSpec& spec, const FreqPoint& pt);

/// (tau*, 0). RegionError unless pt lies strictly inside the support region.
FreqPoint symmetry_reduce(const MeasureSpec& spec, const FreqPoint& pt);

/// pi/2, pi/sqrt(3), 2 pi, 4 pi^2 or 2 pi / sqrt(tau^2 - |xi|^2).
double convolution_closed_form(const MeasureSpec& spec, const FreqPoint& pt);

struct OracleOptions {
    std::vector<double> epsilons{0.1, 0.05, 0.025};
    int radial_nodes = 12;     // Gauss-Legendre nodes per radial piece
    int angular_points = 0;    // 0 selects a per-case default
    double margin_factor = 10.0;
    double level_tol = 1e-6;   // relative spread below which the levels count as converged
};

struct OracleResult {
    double value = 0.0;
    double error = 0.0;
    double order = 0.0;          // observed order; infinity when the levels agree within level_tol
    bool exact_levels = false;   // all levels agree within level_tol
    std::vector<double> epsilons;
    std::vector<double> levels;  // mollified values per epsilon
};

/// The convolution with the tau-delta replaced by a triangular bump of
/// half-width eps; the xi-delta is eliminated exactly.
double mollified_convolution(const MeasureSpec& spec, const FreqPoint& pt, double eps,
                             const OracleOptions& opt = {});

/// Mollified values over opt.epsilons with Richardson extrapolation to eps = 0.
OracleResult convolution_oracle(const MeasureSpec& spec, const FreqPoint& pt, const OracleOptions& opt = {});

}  // namespace strichartz
