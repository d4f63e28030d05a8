// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when a
// criterion fails, except criteria 4 and 10 which are known failures; if one
// of those ever passes the exit status is nonzero too, so the record gets
// revisited.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "oracles.hpp"
#include "random_words.hpp"
#include "strichartz/closed_forms.hpp"
#include "strichartz/functional_equations.hpp"
#include "strichartz/lens.hpp"
#include "strichartz/optimizer.hpp"
#include "strichartz/propagators.hpp"
#include "strichartz/symmetry.hpp"

using namespace strichartz;
using testing_support::random_cone;
using testing_support::random_g_word;
using testing_support::random_gaussian;
using testing_support::random_l_word;

namespace {

// ---------------------------------------------------------------- pinned tolerances

constexpr double kSchrTol = 5e-3;
constexpr double kSchr1Seconds = 60.0;
constexpr double kSchr2Seconds = 300.0;
constexpr double kWave3ClosedTol = 1e-5;
constexpr double kWave3FftTol = 1e-2;
constexpr double kWave3Seconds = 600.0;
constexpr double kWave2Tol = 1e-4;
constexpr double kWave2Seconds = 300.0;
constexpr double kMeasureTol = 2e-2;
constexpr double kAscentTol = 5e-3;
constexpr double kFitTol = 1e-3;
constexpr int kAscentIters = 499;
constexpr int kTripwireFields = 1000;
constexpr double kFeqExpTol = 1e-10;
constexpr double kFeqNonmemberTol = 1e-3;
constexpr double kMapTol = 1e-12;
constexpr double kJacobianFloor = 1e-8;
constexpr int kMapSamples = 10000;
constexpr double kWordTolSchr = 1e-3;
constexpr double kWordTolWave = 1e-2;
constexpr double kReplayTol = 1e-10;
constexpr int kPolyPairs = 100000;
constexpr double kPolyGapFloor = 1e-12;
constexpr double kPolyRel = 1e-6;
constexpr double kFdTol = 1e-4;
constexpr int kFdPairs = 20;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

EvolutionSpec schr_spec(int dim, int slices, double T, double boundary = 1.0) {
    EvolutionSpec s;
    s.equation = Equation::schrodinger;
    s.dim = dim;
    s.times = {slices, T};
    s.boundary = {boundary, boundary};
    return s;
}

EvolutionSpec wave_spec(int dim, int slices, double T, double boundary = 1.0) {
    EvolutionSpec s;
    s.equation = Equation::wave;
    s.dim = dim;
    s.times = {slices, T};
    s.boundary = {boundary, boundary};
    return s;
}

// ---------------------------------------------------------------- 1/T extrapolation

// Per-slice space integrals of |u|^p at midpoint times over [-T_max, T_max].
struct SliceIntegrals {
    std::vector<double> times;
    std::vector<double> values;
    double dt = 0.0;
};

// Fits I(T) = c0 + c1/T + c2/T^2 + c3/T^3 through the partial windows and returns c0.
double extrapolate_window(const SliceIntegrals& s, const std::vector<double>& windows) {
    const auto m = static_cast<Eigen::Index>(windows.size());
    Eigen::MatrixXd V(m, 4);
    Eigen::VectorXd I(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double T = windows[static_cast<std::size_t>(i)];
        double sum = 0.0;
        for (std::size_t k = 0; k < s.times.size(); ++k)
            if (std::abs(s.times[k]) < T) sum += s.values[k];
        I(i) = sum * s.dt;
        for (int j = 0; j < 4; ++j) V(i, j) = std::pow(T, -j);
    }
    return V.colPivHouseholderQr().solve(I)(0);
}

SliceIntegrals schrodinger_slices(const ComplexField& f, const TimeSamples& ts) {
    const ComplexField fhat = to_space(f, Space::frequency);
    const double p = 2.0 + 4.0 / f.grid.dim;
    SliceIntegrals s;
    s.dt = ts.dt();
    for (int k = 0; k < ts.count; ++k) {
        const double t = ts.time(k);
        ComplexField uh = fhat;
        for (std::size_t i = 0; i < uh.size(); ++i) {
            const double r = uh.radius(i);
            uh.values[i] *= std::polar(1.0, t * r * r);
        }
        const ComplexField u = inverse_fourier(uh);
        double sum = 0.0;
        for (const auto& z : u.values) sum += std::pow(std::abs(z), p);
        s.times.push_back(t);
        s.values.push_back(sum * u.cell_volume());
    }
    return s;
}

SliceIntegrals wave_slices(const WaveSplitPair& w, const TimeSamples& ts) {
    const double p = 2.0 + 4.0 / (w.f_plus.grid.dim - 1);
    SliceIntegrals s;
    s.dt = ts.dt();
    for (int k = 0; k < ts.count; ++k) {
        const double t = ts.time(k);
        ComplexField uh = w.f_plus;
        for (std::size_t i = 0; i < uh.size(); ++i) {
            const double r = regularized_frequency(uh, i);
            uh.values[i] = (std::polar(1.0, t * r) * w.f_plus.values[i] + std::polar(1.0, -t * r) * w.f_minus.values[i]) /
                           std::sqrt(r);
        }
        const ComplexField u = inverse_fourier(uh);
        double sum = 0.0;
        for (const auto& z : u.values) sum += std::pow(std::norm(z), 0.5 * p);
        s.times.push_back(t);
        s.values.push_back(sum * u.cell_volume());
    }
    return s;
}

// ---------------------------------------------------------------- criteria

Outcome schr_constant(int dim) {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid g = dim == 1 ? Grid(1, 2048, 20.0) : Grid(2, 256, 30.0);
    const EvolutionSpec spec = dim == 1 ? schr_spec(1, 512, 6.0, 1e-3) : schr_spec(2, 512, 10.0, 1e-3);
    const QuotientReport r =
        strichartz_quotient_schrodinger(sample_gaussian_maximizer(canonical_gaussian(dim, Space::physical), g), spec);
    const double exact = dim == 1 ? oracle::s1() : oracle::s2();
    const double err = std::abs(r.quotient - exact), secs = seconds_since(t0);
    const double limit = dim == 1 ? kSchr1Seconds : kSchr2Seconds;
    return {err <= kSchrTol && secs < limit, "Q=" + num(r.quotient) + " exact=" + num(exact) + " err=" + num(err) +
                                                 " tol=" + num(kSchrTol) + " time=" + num(secs) + "s"};
}

Outcome wave3_constant() {
    const auto t0 = std::chrono::steady_clock::now();
    const QuotientReport c = wave3_quotient_closed_form(canonical_cone_params(3));
    const double ce = std::abs(c.quotient - oracle::w3());
    const Grid g(3, 96, std::numbers::pi / 0.3);
    const QuotientReport f =
        strichartz_quotient_wave(sample_cone_maximizer(canonical_cone_params(3), g), wave_spec(3, 72, 9.0, 1e-2));
    const double fe = std::abs(f.quotient - oracle::w3()), secs = seconds_since(t0);
    return {ce <= kWave3ClosedTol && fe <= kWave3FftTol && secs < kWave3Seconds,
            "closed=" + num(c.quotient) + " err=" + num(ce) + " fft96=" + num(f.quotient) + " err=" + num(fe) +
                " time=" + num(secs) + "s"};
}

Outcome wave2_constant() {
    const auto t0 = std::chrono::steady_clock::now();
    const QuotientReport c = wave_quotient_closed_form(canonical_cone_params(2));
    const double err = std::abs(c.quotient - oracle::w2_claimed()), secs = seconds_since(t0);
    return {err <= kWave2Tol && secs < kWave2Seconds,
            "closed=" + num(c.quotient) + " target=" + num(oracle::w2_claimed()) + " err=" + num(err) +
                " (35/(128 pi))^(1/6)=" + num(oracle::w2_attained()) + " time=" + num(secs) + "s"};
}

Outcome measure_convolutions() {
    cli::MeasureConfig mc;
    mc.sweep = true;
    mc.sweep_points = 20;
    mc.tol = kMeasureTol;
    std::ostringstream out, err;
    cli::cmd_measure_conv(mc, out, err);
    const auto rep = cli::json::parse(out.str());
    double worst = 0.0, spread = 0.0;
    int rows = 0;
    for (const auto& r : rep["rows"]) {
        worst = std::max(worst, r["rel_error"].get<double>());
        ++rows;
    }
    for (const auto& s : rep["sweeps"]) spread = std::max(spread, s["spread"].get<double>());
    return {rows == 15 && worst < kMeasureTol && spread < kMeasureTol,
            std::to_string(rows) + " points max_rel=" + num(worst) + " max_sweep_spread=" + num(spread)};
}

struct AscentSummary {
    Outcome outcome;
    double worst_excess = -1.0;  // max over runs of max_evaluated - (S + 2 grid_err)
};

AscentSummary optimizer_rediscovery() {
    double worst_gap = 0.0, worst_fit = 0.0, excess = -1.0;
    int worst_iters = 0;
    bool ok = true;
    for (int dim : {1, 2}) {
        const Grid g = dim == 1 ? Grid(1, 256, 10.0) : Grid(2, 64, 8.0);
        const EvolutionSpec spec = dim == 1 ? schr_spec(1, 128, 4.0) : schr_spec(2, 64, 3.0);
        const double S = sharp_constant(Equation::schrodinger, dim).value;
        for (std::uint64_t seed : {1, 2, 3}) {
            AscentConfig ac;
            ac.max_iters = kAscentIters;
            ac.seed = seed;
            ac.method = AscentMethod::lens;
            const AscentTrace tr = maximize_quotient(random_seed_field(g, seed), spec, ac);
            const double gap = std::abs(S - tr.quotients.back());
            const double ge = ascent_grid_error(spec, ac, g);
            worst_gap = std::max(worst_gap, gap);
            worst_fit = std::max(worst_fit, tr.has_fit ? tr.fit.residual : INFINITY);
            worst_iters = std::max(worst_iters, tr.iterations);
            excess = std::max(excess, tr.max_evaluated - (S + 2.0 * ge));
            ok = ok && tr.has_fit && gap <= kAscentTol && tr.fit.residual < kFitTol && tr.iterations < 500;
        }
    }
    return {{ok, "6 runs max_gap=" + num(worst_gap) + " max_fit_residual=" + num(worst_fit) +
                     " max_iterations=" + std::to_string(worst_iters)},
            excess};
}

Outcome tripwire(double ascent_excess) {
    double excess = ascent_excess;
    std::string detail;
    AscentConfig window;
    window.method = AscentMethod::window;
    // Schrodinger: boxes that hold the evolution of the random fields over the window.
    for (int dim : {1, 2}) {
        const Grid g = dim == 1 ? Grid(1, 1024, 40.0) : Grid(2, 128, 16.0);
        const EvolutionSpec spec = dim == 1 ? schr_spec(1, 64, 2.0) : schr_spec(2, 16, 1.0);
        const double S = sharp_constant(Equation::schrodinger, dim).value;
        const double bound = S + 2.0 * ascent_grid_error(spec, window, g);
        double mx = 0.0;
        for (int k = 0; k < kTripwireFields; ++k)
            mx = std::max(mx, std::pow(window_power_ratio(random_seed_field(g, 100000 + k), spec), 1.0 / spec.p()));
        excess = std::max(excess, mx - bound);
        detail += " schr" + std::to_string(dim) + "_max=" + num(mx) + "/" + num(bound);
    }
    for (int dim : {2, 3}) {
        const Grid g = dim == 2 ? Grid(2, 32, 8.0) : Grid(3, 16, 6.0);
        const EvolutionSpec spec = dim == 2 ? wave_spec(2, 64, 4.0) : wave_spec(3, 32, 3.0);
        const double S = sharp_constant(Equation::wave, dim).value;
        const int os = window_oversample(spec, window);
        const double bound = S + 2.0 * ascent_grid_error(spec, window, g);
        double mx = 0.0;
        for (int k = 0; k < kTripwireFields; ++k) {
            const WaveSplitPair w{to_space(random_seed_field(g, 200000 + 2 * k), Space::frequency),
                                  to_space(random_seed_field(g, 200001 + 2 * k), Space::frequency)};
            mx = std::max(mx, std::pow(window_power_ratio(w, spec, os), 1.0 / spec.p()));
        }
        // short wave ascents count as optimizer evaluations too
        AscentConfig ac = window;
        ac.max_iters = 40;
        ac.seed = 1;
        ac.support_radius = g.extent[0] - spec.times.half_width;
        const WaveSplitPair p0{to_space(random_seed_field(g, 1), Space::frequency),
                               to_space(random_seed_field(g, 1000004), Space::frequency)};
        const AscentTrace tr = maximize_quotient(p0, spec, ac);
        mx = std::max(mx, tr.max_evaluated);
        excess = std::max(excess, mx - bound);
        detail += " wave" + std::to_string(dim) + "_max=" + num(mx) + "/" + num(bound);
    }
    return {excess <= 0.0, "worst excess over S+2*grid_err=" + num(excess) + detail};
}

Outcome functional_equations() {
    cli::FeqConfig fc;
    fc.fixtures = {"exponential", "nonmember", "maps"};
    fc.samples = kMapSamples;
    std::ostringstream out, err;
    cli::cmd_feq_check(fc, out, err);
    const auto rep = cli::json::parse(out.str());
    double exp_worst = 0.0, non_min = INFINITY, map_worst = 0.0, det_min = INFINITY;
    int exp_n = 0, non_n = 0;
    for (const auto& r : rep["rows"]) {
        const std::string fx = r["fixture"];
        if (fx == "exponential") {
            exp_worst = std::max(exp_worst, r["residual"].get<double>());
            ++exp_n;
        } else if (fx == "nonmember") {
            non_min = std::min(non_min, r["residual"].get<double>());
            ++non_n;
        } else {
            for (const char* k : {"square_sum_error", "square_norm_error", "ellipsoid_sum_error",
                                  "ellipsoid_norm_error", "ellipsoid_line_error"})
                map_worst = std::max(map_worst, r[k].get<double>());
            det_min = r["min_abs_jacobian_det"].get<double>();
        }
    }
    return {exp_n == 4 && non_n == 4 && exp_worst < kFeqExpTol && non_min > kFeqNonmemberTol && map_worst < kMapTol &&
                det_min > kJacobianFloor,
            "exponential_max=" + num(exp_worst) + " nonmember_min=" + num(non_min) + " maps_max=" + num(map_worst) +
                " min|det J|=" + num(det_min)};
}

Outcome symmetry_suite() {
    std::mt19937_64 rng(20240917);
    // Words acting on maximizers; quotients by 1/T-extrapolated FFT windows.
    const Grid g1(1, 4096, 120.0);
    const TimeSamples ts1{480, 6.0};
    const Grid g3(3, 64, 8.0);
    const TimeSamples ts3{48, 6.0};
    const std::vector<double> windows{2.0, 3.0, 4.0, 6.0};
    auto schr_q = [&](const ExpQuadraticParams& p) {
        const ComplexField f = to_space(sample_gaussian_maximizer(p, g1), Space::physical);
        return std::pow(extrapolate_window(schrodinger_slices(f, ts1), windows), 1.0 / 6.0) / l2_norm(f);
    };
    auto wave_q = [&](const ConeExpParams& p) {
        const WaveSplitPair w = sample_cone_maximizer(p, g3);
        return std::pow(extrapolate_window(wave_slices(w, ts3), windows), 0.25) / wave_data_norm(w);
    };
    const ExpQuadraticParams gauss = canonical_gaussian(1, Space::frequency);
    const ConeExpParams cone = canonical_cone_params(3);
    const double q1 = schr_q(gauss), q3 = wave_q(cone);
    double schr_dev = std::abs(q1 - oracle::s1()), wave_dev = std::abs(q3 - oracle::w3());
    for (int k = 0; k < 25; ++k) {
        ExpQuadraticParams p = gauss;
        for (const auto& gen : random_g_word(1, 4, rng, 0.5)) p = apply_G(p, gen);
        schr_dev = std::max(schr_dev, std::abs(schr_q(p) - q1));
    }
    for (int k = 0; k < 25; ++k) {
        ConeExpParams p = cone;
        for (const auto& gen : random_l_word(3, 4, rng, true, false, 0.5)) p = apply_L(p, gen);
        wave_dev = std::max(wave_dev, std::abs(wave_q(p) - q3));
    }
    // Replay of canonicalization trails.
    double replay_err = 0.0;
    for (int k = 0; k < 25; ++k) {
        const int n = 1 + k % 3;
        const ExpQuadraticParams p = random_gaussian(n, rng);
        const CanonicalG c = canonicalize_G(p);
        replay_err = std::max(replay_err, coefficient_distance(replay(p, c.trail), c.canonical));
        const ConeExpParams q = random_cone(2 + k % 2, rng);
        const CanonicalL d = canonicalize_L(q);
        replay_err = std::max(replay_err, coefficient_distance(replay(q, d.trail), d.canonical));
    }
    // Orbit linking: dilated, translated and boosted maximizer params.
    int linked = 0;
    for (int k = 0; k < 10; ++k) {
        const int n = 1 + k % 3;
        const ExpQuadraticParams p = random_gaussian(n, rng);
        ExpQuadraticParams q = p;
        q = apply_G(q, ParabolicDilate{std::exp(0.5 * (k % 5 - 2))});
        q = apply_G(q, Translate{0.1 * k, testing_support::random_vector(n, 1.0, rng)});
        if (orbit_equivalent(p, q)) ++linked;
    }
    for (int k = 0; k < 10; ++k) {
        const int n = 2 + k % 2;
        const ConeExpParams p = random_cone(n, rng);
        ConeExpParams q = apply_L(p, Dilate{std::exp(0.3 * (k % 5 - 2))});
        q = apply_L(q, Translate{0.2 * k, testing_support::random_vector(n, 1.0, rng)});
        q = apply_L(q, Boost{0.1 * (k % 7 - 3)});
        if (orbit_equivalent(p, q)) ++linked;
    }
    return {schr_dev <= kWordTolSchr && wave_dev <= kWordTolWave && replay_err < kReplayTol && linked == 20,
            "schr1 words max_dev=" + num(schr_dev) + " (tol " + num(kWordTolSchr) + ") wave3 words max_dev=" +
                num(wave_dev) + " (tol " + num(kWordTolWave) + ") replay=" + num(replay_err) +
                " linked=" + std::to_string(linked) + "/20"};
}

Outcome polynomial_inequalities() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double min_gap = INFINITY;
    double worst_scale = 0.0;  // largest X + Y among violating pairs
    int premise = 0, violated = 0;
    for (PolyForm form : {PolyForm::quartic, PolyForm::sextic})
        for (int k = 0; k < kPolyPairs; ++k) {
            const double X = u(rng), Y = u(rng);
            const double gap = poly_inequality_gap(X, Y, form);
            min_gap = std::min(min_gap, gap);
            if (gap < kPolyGapFloor) {
                ++premise;
                if (!(std::abs(X - Y) < kPolyRel * (X + Y))) {
                    ++violated;
                    worst_scale = std::max(worst_scale, X + Y);
                }
            }
        }
    return {min_gap >= 0.0 && violated == 0, "min_gap=" + num(min_gap) + " pairs with gap<1e-12: " +
                                                 std::to_string(premise) + " violations=" + std::to_string(violated) +
                                                 " largest violating X+Y=" + num(worst_scale)};
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

Outcome gradient_checks() {
    constexpr double h = 1e-5;
    double worst = 0.0;
    std::string detail;
    for (int dim : {1, 2}) {
        const Grid g = dim == 1 ? Grid(1, 256, 10.0) : Grid(2, 64, 8.0);
        const EvolutionSpec spec = dim == 1 ? schr_spec(1, 64, 2.0) : schr_spec(2, 32, 1.5);
        const HermiteLens lens(dim, dim == 1 ? 24 : 16);
        std::mt19937_64 rng(300 + dim);
        std::normal_distribution<double> nrm;
        double w_case = 0.0;
        for (int k = 0; k < kFdPairs; ++k) {
            const ComplexField f = random_seed_field(g, 300000 + 2 * k);
            const ComplexField d = random_seed_field(g, 300001 + 2 * k);
            const double an = field_inner(quotient_gradient(f, spec), d);
            const double fd =
                (window_power_ratio(f + cplx(h) * d, spec) - window_power_ratio(f - cplx(h) * d, spec)) / (2 * h);
            w_case = std::max(w_case, relative(an, fd));
            std::vector<cplx> a(lens.size()), e(lens.size()), grad;
            for (std::size_t i = 0; i < a.size(); ++i) {
                a[i] = {nrm(rng), nrm(rng)};
                e[i] = {nrm(rng), nrm(rng)};
            }
            lens.power_ratio(a, &grad);
            double lan = 0.0;
            std::vector<cplx> ap(a), am(a);
            for (std::size_t i = 0; i < a.size(); ++i) {
                lan += std::real(std::conj(grad[i]) * e[i]);
                ap[i] += h * e[i];
                am[i] -= h * e[i];
            }
            w_case = std::max(w_case, relative(lan, (lens.power_ratio(ap) - lens.power_ratio(am)) / (2 * h)));
        }
        worst = std::max(worst, w_case);
        detail += " schr" + std::to_string(dim) + "=" + num(w_case);
    }
    for (int dim : {2, 3}) {
        const Grid g = dim == 2 ? Grid(2, 32, 8.0) : Grid(3, 16, 6.0);
        const EvolutionSpec spec = dim == 2 ? wave_spec(2, 32, 4.0) : wave_spec(3, 16, 3.0);
        const int os = window_oversample(spec, AscentConfig{});
        double w_case = 0.0;
        for (int k = 0; k < kFdPairs; ++k) {
            auto pair = [&](std::uint64_t s) {
                return WaveSplitPair{to_space(random_seed_field(g, s), Space::frequency),
                                     to_space(random_seed_field(g, s + 1), Space::frequency)};
            };
            const WaveSplitPair w = pair(400000 + 4 * k), d = pair(400002 + 4 * k);
            const double an = pair_inner(quotient_gradient(w, spec, os), d);
            const WaveSplitPair wp{w.f_plus + cplx(h) * d.f_plus, w.f_minus + cplx(h) * d.f_minus};
            const WaveSplitPair wm{w.f_plus - cplx(h) * d.f_plus, w.f_minus - cplx(h) * d.f_minus};
            const double fd = (window_power_ratio(wp, spec, os) - window_power_ratio(wm, spec, os)) / (2 * h);
            w_case = std::max(w_case, relative(an, fd));
        }
        worst = std::max(worst, w_case);
        detail += " wave" + std::to_string(dim) + "=" + num(w_case);
    }
    return {worst < kFdTol, "max relative difference" + detail};
}

}  // namespace

int main() {
    int failures = 0;
    int known_passed = 0;
    auto report = [&](int id, const std::string& name, const Outcome& o, bool known_failure = false) {
        std::string tag = o.pass ? "PASS" : "FAIL";
        if (known_failure && !o.pass) tag += " (known)";
        std::printf("%s [%d] %s: %s\n", tag.c_str(), id, name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        if (known_failure) known_passed += o.pass ? 1 : 0;
        else if (!o.pass) ++failures;
    };
    auto guarded = [](const std::function<Outcome()>& fn) {
        try {
            return fn();
        } catch (const std::exception& e) {
            return Outcome{false, std::string("exception: ") + e.what()};
        }
    };
    report(1, "sharp constant S(1)", guarded([] { return schr_constant(1); }));
    report(2, "sharp constant S(2)", guarded([] { return schr_constant(2); }));
    report(3, "sharp constant W(3)", guarded(wave3_constant));
    report(4, "sharp constant W(2)", guarded(wave2_constant), true);
    report(5, "measure convolutions", guarded(measure_convolutions));
    AscentSummary asc{{false, ""}, INFINITY};
    try {
        asc = optimizer_rediscovery();
    } catch (const std::exception& e) {
        asc.outcome = {false, std::string("exception: ") + e.what()};
    }
    report(6, "optimizer rediscovery", asc.outcome);
    report(7, "never-exceed tripwire", guarded([&] { return tripwire(asc.worst_excess); }));
    report(8, "functional equations", guarded(functional_equations));
    report(9, "symmetry suite", guarded(symmetry_suite));
    report(10, "polynomial inequalities", guarded(polynomial_inequalities), true);
    report(11, "gradient finite differences", guarded(gradient_checks));
    std::printf("%d unexpected failure(s), %d known failure(s) now passing\n", failures, known_passed);
    return failures == 0 && known_passed == 0 ? 0 : 1;
}
