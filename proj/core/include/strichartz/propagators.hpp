#pragma once

#include <string>
#include <vector>

#include "strichartz/grid.hpp"

namespace strichartz {

enum class Equation { schrodinger, wave };

const char* to_string(Equation e);

/// Midpoint samples t_k = -T + (k + 1/2) dt, dt = 2T / count, k < count.
struct TimeSamples {
    int count = 1;
    double half_width = 1.0;

    double dt() const { return 2.0 * half_width / count; }
    double time(int k) const { return -half_width + (k + 0.5) * dt(); }
    std::vector<double> all() const;
    void validate() const;
};

struct EvolutionSpec {
    Equation equation = Equation::schrodinger;
    int dim = 1;
    TimeSamples times;
    BoundaryThresholds boundary;
    double alias_threshold = 1e-8;
    double zero_mode_threshold = 1e-6;

    /// 2 + 4/n for Schrodinger, 2 + 4/(n-1) for the wave equation.
    double p() const;
    void validate() const;
};

/// Frequency-space half-wave components f_+, f_-.
struct WaveSplitPair {
    ComplexField f_plus;
    ComplexField f_minus;

    void validate() const;
};

/// Share of sum |f-hat|^2 in cells with max_a |k_a| / (N_a/2) >= 3/4.
double alias_fraction(const ComplexField& fhat);
void check_alias(const ComplexField& fhat, double threshold, const std::string& what);

/// u-hat(t) = exp(i t |xi|^2) f-hat, one slice per spec time.
SpaceTimeField schrodinger_evolve(const ComplexField& f, const EvolutionSpec& spec);

/// f_+ = (|xi|^(1/2) f-hat - i |xi|^(-1/2) g-hat) / 2, f_- with +.
WaveSplitPair wave_split(const ComplexField& f, const ComplexField& g, double zero_mode_threshold = 1e-6);
/// Inverse of wave_split, returning physical (f, g).
std::pair<ComplexField, ComplexField> wave_reconstruct(const WaveSplitPair& pair);
/// (||f||^2_{H^1/2} + ||g||^2_{H^-1/2})^(1/2) = (2 ||f_+||^2 + 2 ||f_-||^2)^(1/2).
double wave_data_norm(const WaveSplitPair& pair);

struct WaveEvolution {
    SpaceTimeField u;
    SpaceTimeField u_plus;
    SpaceTimeField u_minus;
};

/// u(t) = IFT(|xi|^(-1/2)(exp(it|xi|) f_+ + exp(-it|xi|) f_-)).
SpaceTimeField half_wave_evolve(const WaveSplitPair& pair, const EvolutionSpec& spec);
/// Same, also returning the two branches u_+ and u_-.
WaveEvolution half_wave_evolve_branches(const WaveSplitPair& pair, const EvolutionSpec& spec);

struct QuotientReport {
    std::string method;
    double p = 0.0;
    double lp_norm = 0.0;
    double data_norm = 0.0;
    double quotient = 0.0;
    double spatial_boundary_fraction = 0.0;
    double temporal_boundary_fraction = 0.0;
    double alias_fraction = 0.0;
    double error_estimate = 0.0;  // quadrature error where known, else 0
    bool has_grid = false;
    Grid grid;
    TimeSamples times;
};

/// Streams over time slices; slices are never stored together.
QuotientReport strichartz_quotient_schrodinger(const ComplexField& f, const EvolutionSpec& spec);
QuotientReport strichartz_quotient_wave(const ComplexField& f, const ComplexField& g, const EvolutionSpec& spec);
QuotientReport strichartz_quotient_wave(const WaveSplitPair& pair, const EvolutionSpec& spec);

}  // namespace strichartz
