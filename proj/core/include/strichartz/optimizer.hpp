#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strichartz/closed_forms.hpp"
#include "strichartz/functional_equations.hpp"
#include "strichartz/grid.hpp"
#include "strichartz/propagators.hpp"

namespace strichartz {

/// How the quotient is discretized during ascent.
/// lens: Hermite span with the exact lens-transform quadrature (Schrodinger, n = 1, 2).
/// window: FFT grid over the spec's time window (both equations).
enum class AscentMethod { lens, window };

const char* to_string(AscentMethod m);

struct AscentConfig {
    int max_iters = 500;
    double step = 1.0;
    double step_decay = 0.5;
    double grad_tol = 1e-9;
    std::uint64_t seed = 0;
    AscentMethod method = AscentMethod::lens;
    int hermite_degree = 0;    // 0 picks 24 for n = 1 and 16 for n = 2
    double armijo = 1e-4;
    int max_backtracks = 50;
    double band_limit = 0.0;   // window mode: confine the ascent to |xi| <= band_limit (0 = off)
    /// Wave runs: ascend over physical (f, g) supported in |x| <= support_radius
    /// instead of over (f_+, f_-) (0 = off). With radius + half_width <= box
    /// half-width the periodic evolution agrees with the free one on the window.
    double support_radius = 0.0;
    /// Wave window: zero-padding factor per axis for the physical sums
    /// (0 picks ceil(p / 2), which keeps the grid sum of |u|^p free of aliasing).
    int oversample = 0;

    void validate() const;
};

struct AscentTrace {
    AscentMethod method = AscentMethod::lens;
    std::vector<double> quotients;   // after each accepted step, starting with the seed
    std::vector<double> grad_norms;
    ComplexField final_field;        // physical; Schrodinger runs
    WaveSplitPair final_pair;        // wave runs
    double final_grad_norm = 0.0;
    int iterations = 0;
    int evaluations = 0;
    double max_evaluated = 0.0;      // largest quotient seen, line-search trials included
    std::string stop_reason;
    ExpFamilyFit fit;
    bool has_fit = false;
};

/// Inner product Re <a, b>: h^n sum for physical fields,
/// (2 pi)^-n dxi^n sum for frequency fields.
double field_inner(const ComplexField& a, const ComplexField& b);
double pair_inner(const WaveSplitPair& a, const WaveSplitPair& b);

/// ||u||_p^p / ||f||_2^p on the spec's grid window, without boundary checks.
double window_power_ratio(const ComplexField& f, const EvolutionSpec& spec);
/// Wave form: u is evaluated on the spectrum zero-padded by `oversample` per axis.
double window_power_ratio(const WaveSplitPair& pair, const EvolutionSpec& spec, int oversample = 1);

/// Gradient of window_power_ratio: p Adj[|u|^(p-2) u] / ||f||^p - p (||u||^p / ||f||^(p+2)) f,
/// Adj the reversed-phase evolution summed over time slices. Returned in the
/// space of the input with respect to field_inner.
ComplexField quotient_gradient(const ComplexField& f, const EvolutionSpec& spec);
/// Wave form over (f_+, f_-) jointly, with respect to pair_inner.
WaveSplitPair quotient_gradient(const WaveSplitPair& pair, const EvolutionSpec& spec, int oversample = 1);

/// Padding factor a wave ascent with cfg uses.
int window_oversample(const EvolutionSpec& spec, const AscentConfig& cfg);

/// Normalized gradient ascent with Armijo backtracking. The Schrodinger
/// overload honours cfg.method; the wave overload always uses the window.
/// StagnationError when max_backtracks halvings fail while the demanded
/// increase is still above rounding.
AscentTrace maximize_quotient(const ComplexField& f0, const EvolutionSpec& spec, const AscentConfig& cfg);
AscentTrace maximize_quotient(const WaveSplitPair& p0, const EvolutionSpec& spec, const AscentConfig& cfg);

/// |Q(maximizer) - sharp constant| for the discretization an ascent with cfg
/// would use on grid g; floored at 1e-12 for the exact lens rule. Wave runs
/// use the canonical cone pair.
double ascent_grid_error(const EvolutionSpec& spec, const AscentConfig& cfg, const Grid& g);

/// Sum of three Gaussians with random centres, widths and linear phases.
ComplexField random_seed_field(const Grid& g, std::uint64_t seed, double scale = 0.70710678118654752440);

/// Schrodinger: log-quadratic fit of the physical field on the connected
/// window |f| >= window * max f around the peak. Wave: log-linear fit of
/// |xi|^(1/2) f_+ on the same kind of window, excluding xi = 0.
ExpFamilyFit fit_maximizer_family(const ComplexField& field, const EvolutionSpec& spec, double window = 0.05);

/// Gaussian parameters of a Schrodinger fit.
ExpQuadraticParams fitted_gaussian(const ExpFamilyFit& fit);

struct PerturbationRow {
    std::size_t direction = 0;
    double amplitude = 0.0;
    double quotient = 0.0;
    double change = 0.0;  // quotient - quotient at amplitude 0
};

struct PerturbationScan {
    double base_quotient = 0.0;
    std::vector<PerturbationRow> rows;
    std::vector<double> curvature;  // c in change ~ -c amplitude^2, per direction
    std::vector<double> r_squared;
};

/// Quotient of maximizer + amplitude * h for each direction h (physical
/// fields on one grid, scaled to the maximizer's norm), evaluated exactly in
/// the Hermite lens span. Schrodinger n = 1, 2 only.
PerturbationScan perturbation_scan(const ExpQuadraticParams& params, const EvolutionSpec& spec,
                                   const std::vector<ComplexField>& directions, const std::vector<double>& amplitudes,
                                   int hermite_degree = 0);

}  // namespace strichartz
