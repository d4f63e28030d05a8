#include "strichartz/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include "fft.hpp"
#include "strichartz/errors.hpp"
#include "strichartz/parallel.hpp"

namespace strichartz {

using std::numbers::pi;

Grid::Grid(int d, int n, double e) : dim(d) {
    for (int a = 0; a < 3; ++a) {
        points[a] = a < d ? n : 1;
        extent[a] = e;
    }
    validate();
}

Grid::Grid(int d, std::array<int, 3> p, std::array<double, 3> e) : dim(d), points(p), extent(e) {
    for (int a = d; a < 3; ++a) points[a] = 1;
    validate();
}

void Grid::validate() const {
    if (dim < 1 || dim > 3) throw InvalidArgument("grid dim must be 1, 2 or 3, got " + std::to_string(dim));
    for (int a = 0; a < dim; ++a) {
        if (points[a] < 2 || points[a] % 2 != 0)
            throw InvalidArgument("points_per_axis must be even and >= 2, got " + std::to_string(points[a]));
        if (!(extent[a] > 0.0) || !std::isfinite(extent[a]))
            throw InvalidArgument("extent must be positive and finite");
    }
}

double Grid::freq_spacing(int axis) const { return pi / extent[axis]; }

std::size_t Grid::size() const {
    std::size_t n = 1;
    for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points[a]);
    return n;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= spacing(a);
    return v;
}

double Grid::dual_cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= freq_spacing(a);
    return v;
}

double Grid::min_nonzero_freq() const {
    double m = freq_spacing(0);
    for (int a = 1; a < dim; ++a) m = std::min(m, freq_spacing(a));
    return m;
}

std::size_t Grid::zero_index() const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = 0; a < dim; ++a) idx[a] = points[a] / 2;
    return flatten(idx);
}

std::array<int, 3> Grid::unflatten(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = dim - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % static_cast<std::size_t>(points[a]));
        flat /= static_cast<std::size_t>(points[a]);
    }
    return idx;
}

std::size_t Grid::flatten(const std::array<int, 3>& idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim; ++a) flat = flat * static_cast<std::size_t>(points[a]) + static_cast<std::size_t>(idx[a]);
    return flat;
}

ComplexField::ComplexField(const Grid& g, Space s) : grid(g), space(s), values(g.size(), cplx{0.0, 0.0}) {}

ComplexField::ComplexField(const Grid& g, Space s, std::vector<cplx> v) : grid(g), space(s), values(std::move(v)) {
    validate();
}

void ComplexField::validate() const {
    grid.validate();
    if (values.size() != grid.size())
        throw InvalidArgument("field has " + std::to_string(values.size()) + " values, grid needs " +
                              std::to_string(grid.size()));
}

std::array<double, 3> ComplexField::point(std::size_t flat) const {
    const auto idx = grid.unflatten(flat);
    std::array<double, 3> pt{0.0, 0.0, 0.0};
    for (int a = 0; a < grid.dim; ++a)
        pt[a] = space == Space::physical ? grid.coord(a, idx[a]) : grid.freq(a, idx[a]);
    return pt;
}

double ComplexField::radius(std::size_t flat) const {
    const auto pt = point(flat);
    return std::sqrt(pt[0] * pt[0] + pt[1] * pt[1] + pt[2] * pt[2]);
}

double ComplexField::cell_volume() const {
    return space == Space::physical ? grid.cell_volume() : grid.dual_cell_volume();
}

ComplexField& ComplexField::operator*=(cplx c) {
    for (auto& v : values) v *= c;
    return *this;
}

ComplexField& ComplexField::operator+=(const ComplexField& o) {
    if (!(o.grid == grid) || o.space != space) throw InvalidArgument("field grids or spaces differ");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

ComplexField operator*(cplx c, ComplexField f) { return f *= c; }

ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }

ComplexField operator-(ComplexField a, const ComplexField& b) {
    a += cplx{-1.0, 0.0} * b;
    return a;
}

void SpaceTimeField::validate() const {
    if (times.size() != slices.size()) throw InvalidArgument("times and slices differ in length");
    if (slices.empty()) throw InvalidArgument("space-time field has no slices");
    for (const auto& s : slices)
        if (!(s.grid == slices.front().grid)) throw InvalidArgument("slices do not share one grid");
    if (times.size() > 1) {
        const double d = times[1] - times[0];
        if (!(d > 0)) throw InvalidArgument("times must be strictly increasing");
        for (std::size_t i = 1; i < times.size(); ++i) {
            const double di = times[i] - times[i - 1];
            if (!(di > 0) || std::abs(di - d) > 1e-9 * std::max(1.0, std::abs(d)))
                throw InvalidArgument("times must be uniformly spaced");
        }
    }
}

double SpaceTimeField::dt() const { return times.size() > 1 ? times[1] - times[0] : 1.0; }

namespace detail {

namespace {

struct PlanKey {
    int dim;
    std::array<int, 3> points;
    int sign;
    bool operator<(const PlanKey& o) const {
        return std::tie(dim, points, sign) < std::tie(o.dim, o.points, o.sign);
    }
};

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan get_plan(const Grid& g, int sign) {
    static std::map<PlanKey, fftw_plan> cache;
    const PlanKey key{g.dim, g.points, sign};
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<cplx> scratch(g.size());
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft(g.dim, g.points.data(), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw Error("FFTW failed to create a plan");
    cache.emplace(key, plan);
    return plan;
}

// (-1)^(k0+k1+k2) and the shifted index for centred position idx.
inline void shift_and_sign(const Grid& g, const std::array<int, 3>& idx, std::array<int, 3>& q, int& parity) {
    parity = 0;
    q = {0, 0, 0};
    for (int a = 0; a < g.dim; ++a) {
        const int n = g.points[a];
        const int k = idx[a] - n / 2;
        q[a] = (k + n) % n;
        parity += k;
    }
}

}  // namespace

void fft_inplace(std::vector<cplx>& data, const Grid& grid, int sign) {
    fftw_plan plan = get_plan(grid, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

void centred_to_dft(const std::vector<cplx>& centred, std::vector<cplx>& dft, const Grid& grid) {
    dft.resize(centred.size());
    std::array<int, 3> q{};
    int parity = 0;
    for (std::size_t i = 0; i < centred.size(); ++i) {
        shift_and_sign(grid, grid.unflatten(i), q, parity);
        const cplx v = (parity % 2 == 0) ? centred[i] : -centred[i];
        dft[grid.flatten(q)] = v;
    }
}

void dft_to_centred(const std::vector<cplx>& dft, std::vector<cplx>& centred, const Grid& grid) {
    centred.resize(dft.size());
    std::array<int, 3> q{};
    int parity = 0;
    for (std::size_t i = 0; i < centred.size(); ++i) {
        shift_and_sign(grid, grid.unflatten(i), q, parity);
        const cplx v = dft[grid.flatten(q)];
        centred[i] = (parity % 2 == 0) ? v : -v;
    }
}

}  // namespace detail

ComplexField forward_fourier(const ComplexField& f) {
    f.validate();
    if (f.space != Space::physical) throw InvalidArgument("forward_fourier expects a physical-space field");
    std::vector<cplx> work = f.values;
    detail::fft_inplace(work, f.grid, FFTW_FORWARD);
    ComplexField out(f.grid, Space::frequency);
    detail::dft_to_centred(work, out.values, f.grid);
    const double h = f.grid.cell_volume();
    for (auto& v : out.values) v *= h;
    return out;
}

ComplexField inverse_fourier(const ComplexField& fhat) {
    fhat.validate();
    if (fhat.space != Space::frequency) throw InvalidArgument("inverse_fourier expects a frequency-space field");
    std::vector<cplx> work;
    detail::centred_to_dft(fhat.values, work, fhat.grid);
    detail::fft_inplace(work, fhat.grid, FFTW_BACKWARD);
    const double scale = 1.0 / (static_cast<double>(fhat.grid.size()) * fhat.grid.cell_volume());
    for (auto& v : work) v *= scale;
    return ComplexField(fhat.grid, Space::physical, std::move(work));
}

ComplexField to_space(const ComplexField& f, Space s) {
    if (f.space == s) return f;
    return s == Space::frequency ? forward_fourier(f) : inverse_fourier(f);
}

double LpSums::norm(double p) const { return std::pow(total * weight, 1.0 / p); }

void LpSums::check(const BoundaryThresholds& th) const {
    if (spatial_fraction() > th.spatial)
        throw BoundaryMassError("spatial edge cells carry " + std::to_string(spatial_fraction()) +
                                " of sum |u|^p (threshold " + std::to_string(th.spatial) + ")");
    if (temporal_fraction() > th.temporal)
        throw BoundaryMassError("first/last time slices carry " + std::to_string(temporal_fraction()) +
                                " of sum |u|^p (threshold " + std::to_string(th.temporal) + ")");
}

std::array<double, 2> slice_power_sums(const ComplexField& u, double p) {
    const Grid& g = u.grid;
    double total = 0.0;
    double edge = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double a = std::abs(u.values[i]);
        const double v = p == 2.0 ? a * a : std::pow(a, p);
        total += v;
        const auto idx = g.unflatten(i);
        bool on_edge = false;
        for (int ax = 0; ax < g.dim; ++ax)
            if (idx[ax] == 0 || idx[ax] == g.points[ax] - 1) on_edge = true;
        if (on_edge) edge += v;
    }
    return {total, edge};
}

LpSums combine_slice_sums(const std::vector<std::array<double, 2>>& per_slice, double cell_volume, double dt) {
    LpSums s;
    std::vector<double> tot(per_slice.size()), edge(per_slice.size());
    for (std::size_t k = 0; k < per_slice.size(); ++k) {
        tot[k] = per_slice[k][0];
        edge[k] = per_slice[k][1];
    }
    s.total = pairwise_sum(tot);
    s.spatial_boundary = pairwise_sum(edge);
    if (!per_slice.empty()) {
        s.temporal_boundary = per_slice.front()[0];
        if (per_slice.size() > 1) s.temporal_boundary += per_slice.back()[0];
    }
    s.weight = cell_volume * dt;
    return s;
}

LpSums lp_spacetime_sums(const SpaceTimeField& u, double p) {
    u.validate();
    if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
    std::vector<std::array<double, 2>> per(u.slices.size());
    parallel_for(u.slices.size(), [&](std::size_t k) { per[k] = slice_power_sums(u.slices[k], p); });
    return combine_slice_sums(per, u.slices.front().cell_volume(), u.dt());
}

double lp_spacetime_norm(const SpaceTimeField& u, double p, const BoundaryThresholds& th) {
    const LpSums s = lp_spacetime_sums(u, p);
    if (s.total == 0.0) return 0.0;
    s.check(th);
    return s.norm(p);
}

double l2_norm(const ComplexField& f) {
    f.validate();
    double s = 0.0;
    for (const auto& v : f.values) s += std::norm(v);
    return std::sqrt(s * f.cell_volume());
}

double regularized_frequency(const ComplexField& fhat, std::size_t flat) {
    const double r = fhat.radius(flat);
    return r > 0.0 ? r : fhat.grid.zero_cell_freq();
}

double zero_mode_fraction(const ComplexField& ghat, double order) {
    if (ghat.space != Space::frequency) throw InvalidArgument("zero_mode_fraction expects a frequency field");
    double total = 0.0;
    for (std::size_t i = 0; i < ghat.values.size(); ++i)
        total += std::pow(regularized_frequency(ghat, i), 2.0 * order) * std::norm(ghat.values[i]);
    if (total == 0.0) return 0.0;
    const std::size_t z = ghat.grid.zero_index();
    return std::pow(ghat.grid.zero_cell_freq(), 2.0 * order) * std::norm(ghat.values[z]) / total;
}

namespace {

double homogeneous_sq(const ComplexField& fhat, double order) {
    const int n = fhat.grid.dim;
    double s = 0.0;
    for (std::size_t i = 0; i < fhat.values.size(); ++i)
        s += std::pow(regularized_frequency(fhat, i), 2.0 * order) * std::norm(fhat.values[i]);
    return s * fhat.grid.dual_cell_volume() / std::pow(2.0 * pi, n);
}

}  // namespace

double sobolev_half_norm(const ComplexField& f, const ComplexField& g, SobolevPair pair, double zero_mode_threshold) {
    if (!(f.grid == g.grid)) throw InvalidArgument("f and g must share a grid");
    const ComplexField fh = to_space(f, Space::frequency);
    const ComplexField gh = to_space(g, Space::frequency);
    if (pair.f_order < 0.0 && zero_mode_fraction(fh, pair.f_order) > zero_mode_threshold)
        throw ZeroModeError("f carries mass at xi = 0 under a negative-order weight");
    if (pair.g_order < 0.0 && zero_mode_fraction(gh, pair.g_order) > zero_mode_threshold)
        throw ZeroModeError("g carries " + std::to_string(zero_mode_fraction(gh, pair.g_order)) +
                            " of its weighted mass at xi = 0");
    return std::sqrt(homogeneous_sq(fh, pair.f_order) + homogeneous_sq(gh, pair.g_order));
}

}  // namespace strichartz
