#include "strichartz/propagators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "strichartz/errors.hpp"
#include "strichartz/parallel.hpp"

namespace strichartz {

using std::numbers::pi;

const char* to_string(Equation e) { return e == Equation::schrodinger ? "schrodinger" : "wave"; }

std::vector<double> TimeSamples::all() const {
    std::vector<double> t(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) t[static_cast<std::size_t>(k)] = time(k);
    return t;
}

void TimeSamples::validate() const {
    if (count < 1) throw InvalidArgument("time sample count must be >= 1");
    if (!(half_width > 0.0) || !std::isfinite(half_width)) throw InvalidArgument("time half-width must be positive");
}

double EvolutionSpec::p() const {
    return equation == Equation::schrodinger ? 2.0 + 4.0 / dim : 2.0 + 4.0 / (dim - 1);
}

void EvolutionSpec::validate() const {
    times.validate();
    if (equation == Equation::schrodinger && dim != 1 && dim != 2)
        throw UnsupportedCase("Schrodinger evolution supports n = 1, 2, got " + std::to_string(dim));
    if (equation == Equation::wave && dim != 2 && dim != 3)
        throw UnsupportedCase("wave evolution supports n = 2, 3, got " + std::to_string(dim));
    if (!(alias_threshold > 0.0) || !(zero_mode_threshold > 0.0))
        throw InvalidArgument("alias and zero-mode thresholds must be positive");
}

void WaveSplitPair::validate() const {
    f_plus.validate();
    f_minus.validate();
    if (!(f_plus.grid == f_minus.grid)) throw InvalidArgument("f_plus and f_minus must share a grid");
    if (f_plus.space != Space::frequency || f_minus.space != Space::frequency)
        throw InvalidArgument("wave split components live in frequency space");
}

double alias_fraction(const ComplexField& fhat) {
    const Grid& g = fhat.grid;
    double total = 0.0;
    double outer = 0.0;
    for (std::size_t i = 0; i < fhat.values.size(); ++i) {
        const double v = std::norm(fhat.values[i]);
        total += v;
        const auto idx = g.unflatten(i);
        double m = 0.0;
        for (int a = 0; a < g.dim; ++a)
            m = std::max(m, std::abs(static_cast<double>(g.wavenumber(a, idx[a]))) / (g.points[a] / 2));
        if (m >= 0.75) outer += v;
    }
    return total > 0.0 ? outer / total : 0.0;
}

void check_alias(const ComplexField& fhat, double threshold, const std::string& what) {
    const double a = alias_fraction(fhat);
    if (a > threshold)
        throw AliasError(what + " carries " + std::to_string(a) + " of its L2 mass in the outer quarter (threshold " +
                         std::to_string(threshold) + ")");
}

namespace {

void check_dim(const ComplexField& f, const EvolutionSpec& spec) {
    if (f.grid.dim != spec.dim)
        throw InvalidArgument("field dimension " + std::to_string(f.grid.dim) + " does not match spec dimension " +
                              std::to_string(spec.dim));
}

std::vector<double> squared_freqs(const ComplexField& fhat) {
    std::vector<double> k2(fhat.size());
    for (std::size_t i = 0; i < k2.size(); ++i) {
        const double r = fhat.radius(i);
        k2[i] = r * r;
    }
    return k2;
}

// Physical slice from centred frequency samples; work is scratch storage.
void slice_from_freq(const std::vector<cplx>& centred, const Grid& g, std::vector<cplx>& out) {
    detail::centred_to_dft(centred, out, g);
    detail::fft_inplace(out, g, +1);
    const double scale = 1.0 / (static_cast<double>(g.size()) * g.cell_volume());
    for (auto& v : out) v *= scale;
}

QuotientReport make_report(const std::string& method, const EvolutionSpec& spec, const Grid& g, const LpSums& sums,
                           double data_norm, double alias) {
    QuotientReport r;
    r.method = method;
    r.p = spec.p();
    r.lp_norm = sums.total > 0 ? sums.norm(r.p) : 0.0;
    r.data_norm = data_norm;
    r.quotient = data_norm > 0 ? r.lp_norm / data_norm : 0.0;
    r.spatial_boundary_fraction = sums.spatial_fraction();
    r.temporal_boundary_fraction = sums.temporal_fraction();
    r.alias_fraction = alias;
    r.has_grid = true;
    r.grid = g;
    r.times = spec.times;
    return r;
}

}  // namespace

SpaceTimeField schrodinger_evolve(const ComplexField& f, const EvolutionSpec& spec) {
    spec.validate();
    if (spec.equation != Equation::schrodinger) throw InvalidArgument("spec is not a Schrodinger spec");
    check_dim(f, spec);
    const ComplexField fhat = to_space(f, Space::frequency);
    check_alias(fhat, spec.alias_threshold, "initial data");
    const auto k2 = squared_freqs(fhat);
    SpaceTimeField u;
    u.times = spec.times.all();
    u.slices.resize(u.times.size());
    parallel_for(u.times.size(), [&](std::size_t k) {
        const double t = u.times[k];
        std::vector<cplx> m(fhat.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::polar(1.0, t * k2[i]) * fhat.values[i];
        std::vector<cplx> out;
        slice_from_freq(m, f.grid, out);
        u.slices[k] = ComplexField(f.grid, Space::physical, std::move(out));
    });
    return u;
}

WaveSplitPair wave_split(const ComplexField& f, const ComplexField& g, double zero_mode_threshold) {
    if (!(f.grid == g.grid)) throw InvalidArgument("f and g must share a grid");
    const ComplexField fh = to_space(f, Space::frequency);
    const ComplexField gh = to_space(g, Space::frequency);
    const double z = zero_mode_fraction(gh, -0.5);
    if (z > zero_mode_threshold)
        throw ZeroModeError("g carries " + std::to_string(z) + " of its H^-1/2 mass at xi = 0 (threshold " +
                            std::to_string(zero_mode_threshold) + ")");
    WaveSplitPair out{ComplexField(f.grid, Space::frequency), ComplexField(f.grid, Space::frequency)};
    const cplx I{0.0, 1.0};
    for (std::size_t i = 0; i < fh.size(); ++i) {
        const double r = regularized_frequency(fh, i);
        const double s = std::sqrt(r);
        out.f_plus.values[i] = 0.5 * (s * fh.values[i] - I / s * gh.values[i]);
        out.f_minus.values[i] = 0.5 * (s * fh.values[i] + I / s * gh.values[i]);
    }
    return out;
}

std::pair<ComplexField, ComplexField> wave_reconstruct(const WaveSplitPair& pair) {
    pair.validate();
    ComplexField fh(pair.f_plus.grid, Space::frequency);
    ComplexField gh(pair.f_plus.grid, Space::frequency);
    const cplx I{0.0, 1.0};
    for (std::size_t i = 0; i < fh.size(); ++i) {
        const double s = std::sqrt(regularized_frequency(fh, i));
        fh.values[i] = (pair.f_plus.values[i] + pair.f_minus.values[i]) / s;
        gh.values[i] = I * s * (pair.f_plus.values[i] - pair.f_minus.values[i]);
    }
    return {inverse_fourier(fh), inverse_fourier(gh)};
}

double wave_data_norm(const WaveSplitPair& pair) {
    pair.validate();
    double s = 0.0;
    for (std::size_t i = 0; i < pair.f_plus.size(); ++i)
        s += std::norm(pair.f_plus.values[i]) + std::norm(pair.f_minus.values[i]);
    const int n = pair.f_plus.grid.dim;
    return std::sqrt(2.0 * s * pair.f_plus.grid.dual_cell_volume() / std::pow(2.0 * pi, n));
}

namespace {

struct WaveFactors {
    std::vector<double> mod;     // |xi| (0 in the zero cell)
    std::vector<double> weight;  // |xi|^(-1/2), regularized
};

WaveFactors wave_factors(const ComplexField& fhat) {
    WaveFactors w;
    w.mod.resize(fhat.size());
    w.weight.resize(fhat.size());
    for (std::size_t i = 0; i < fhat.size(); ++i) {
        w.mod[i] = fhat.radius(i);
        w.weight[i] = 1.0 / std::sqrt(regularized_frequency(fhat, i));
    }
    return w;
}

void check_wave_inputs(const WaveSplitPair& pair, const EvolutionSpec& spec) {
    spec.validate();
    if (spec.equation != Equation::wave) throw InvalidArgument("spec is not a wave spec");
    pair.validate();
    check_dim(pair.f_plus, spec);
    check_alias(pair.f_plus, spec.alias_threshold, "f_plus");
    check_alias(pair.f_minus, spec.alias_threshold, "f_minus");
}

}  // namespace

WaveEvolution half_wave_evolve_branches(const WaveSplitPair& pair, const EvolutionSpec& spec) {
    check_wave_inputs(pair, spec);
    const WaveFactors w = wave_factors(pair.f_plus);
    const Grid& g = pair.f_plus.grid;
    WaveEvolution ev;
    ev.u.times = ev.u_plus.times = ev.u_minus.times = spec.times.all();
    const std::size_t nt = ev.u.times.size();
    ev.u.slices.resize(nt);
    ev.u_plus.slices.resize(nt);
    ev.u_minus.slices.resize(nt);
    parallel_for(nt, [&](std::size_t k) {
        const double t = ev.u.times[k];
        std::vector<cplx> mp(g.size()), mm(g.size());
        for (std::size_t i = 0; i < mp.size(); ++i) {
            mp[i] = w.weight[i] * std::polar(1.0, t * w.mod[i]) * pair.f_plus.values[i];
            mm[i] = w.weight[i] * std::polar(1.0, -t * w.mod[i]) * pair.f_minus.values[i];
        }
        std::vector<cplx> up, um;
        slice_from_freq(mp, g, up);
        slice_from_freq(mm, g, um);
        std::vector<cplx> u(up.size());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = up[i] + um[i];
        ev.u.slices[k] = ComplexField(g, Space::physical, std::move(u));
        ev.u_plus.slices[k] = ComplexField(g, Space::physical, std::move(up));
        ev.u_minus.slices[k] = ComplexField(g, Space::physical, std::move(um));
    });
    return ev;
}

SpaceTimeField half_wave_evolve(const WaveSplitPair& pair, const EvolutionSpec& spec) {
    return half_wave_evolve_branches(pair, spec).u;
}

QuotientReport strichartz_quotient_schrodinger(const ComplexField& f, const EvolutionSpec& spec) {
    spec.validate();
    if (spec.equation != Equation::schrodinger) throw InvalidArgument("spec is not a Schrodinger spec");
    check_dim(f, spec);
    const ComplexField fhat = to_space(f, Space::frequency);
    const double alias = alias_fraction(fhat);
    check_alias(fhat, spec.alias_threshold, "initial data");
    const auto k2 = squared_freqs(fhat);
    const double p = spec.p();
    std::vector<std::array<double, 2>> per(static_cast<std::size_t>(spec.times.count));
    parallel_for(per.size(), [&](std::size_t k) {
        const double t = spec.times.time(static_cast<int>(k));
        std::vector<cplx> m(fhat.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::polar(1.0, t * k2[i]) * fhat.values[i];
        std::vector<cplx> out;
        slice_from_freq(m, f.grid, out);
        per[k] = slice_power_sums(ComplexField(f.grid, Space::physical, std::move(out)), p);
    });
    const LpSums sums = combine_slice_sums(per, f.grid.cell_volume(), spec.times.dt());
    if (sums.total > 0) sums.check(spec.boundary);
    const double norm = l2_norm(fhat) / std::pow(2.0 * pi, 0.5 * spec.dim);
    return make_report("fft", spec, f.grid, sums, norm, alias);
}

QuotientReport strichartz_quotient_wave(const WaveSplitPair& pair, const EvolutionSpec& spec) {
    check_wave_inputs(pair, spec);
    const WaveFactors w = wave_factors(pair.f_plus);
    const Grid& g = pair.f_plus.grid;
    const double p = spec.p();
    std::vector<std::array<double, 2>> per(static_cast<std::size_t>(spec.times.count));
    parallel_for(per.size(), [&](std::size_t k) {
        const double t = spec.times.time(static_cast<int>(k));
        std::vector<cplx> m(g.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            m[i] = w.weight[i] * (std::polar(1.0, t * w.mod[i]) * pair.f_plus.values[i] +
                                  std::polar(1.0, -t * w.mod[i]) * pair.f_minus.values[i]);
        std::vector<cplx> out;
        slice_from_freq(m, g, out);
        per[k] = slice_power_sums(ComplexField(g, Space::physical, std::move(out)), p);
    });
    const LpSums sums = combine_slice_sums(per, g.cell_volume(), spec.times.dt());
    if (sums.total > 0) sums.check(spec.boundary);
    const double alias = std::max(alias_fraction(pair.f_plus), alias_fraction(pair.f_minus));
    return make_report("fft", spec, g, sums, wave_data_norm(pair), alias);
}

QuotientReport strichartz_quotient_wave(const ComplexField& f, const ComplexField& g, const EvolutionSpec& spec) {
    return strichartz_quotient_wave(wave_split(f, g, spec.zero_mode_threshold), spec);
}

}  // namespace strichartz
