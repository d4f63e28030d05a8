#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace strichartz {

using cplx = std::complex<double>;

/// Which side of the Fourier transform a field's samples live on.
enum class Space { physical, frequency };

/**
 * Uniform grid on [-extent, extent) per axis, dim in {1, 2, 3}.
 *
 * The dual (frequency) grid has spacing pi/extent and frequencies
 * k*pi/extent for k in [-N/2, N/2), stored in increasing order.
 * Flat indices are row-major with axis 0 slowest.
 */
struct Grid {
    int dim = 1;
    std::array<int, 3> points{1, 1, 1};
    std::array<double, 3> extent{1.0, 1.0, 1.0};

    Grid() = default;
    Grid(int dim, int n, double extent);
    Grid(int dim, std::array<int, 3> points, std::array<double, 3> extent);

    void validate() const;

    double spacing(int axis) const { return 2.0 * extent[axis] / points[axis]; }
    double freq_spacing(int axis) const;
    std::size_t size() const;
    double cell_volume() const;
    double dual_cell_volume() const;

    double coord(int axis, int i) const { return -extent[axis] + i * spacing(axis); }
    double freq(int axis, int i) const { return (i - points[axis] / 2) * freq_spacing(axis); }
    /// Integer wavenumber k in [-N/2, N/2) for centred index i.
    int wavenumber(int axis, int i) const { return i - points[axis] / 2; }

    /// Smallest nonzero |xi| on the dual grid.
    double min_nonzero_freq() const;
    /// |xi| used in place of 0 inside the xi = 0 cell for |xi|^(negative) weights.
    double zero_cell_freq() const { return 0.5 * min_nonzero_freq(); }
    /// Flat index of the xi = 0 cell.
    std::size_t zero_index() const;

    std::array<int, 3> unflatten(std::size_t flat) const;
    std::size_t flatten(const std::array<int, 3>& idx) const;

    bool operator==(const Grid& o) const = default;
};

/// Complex samples on a grid, in physical or frequency space.
struct ComplexField {
    Grid grid;
    Space space = Space::physical;
    std::vector<cplx> values;

    ComplexField() = default;
    ComplexField(const Grid& g, Space s);
    ComplexField(const Grid& g, Space s, std::vector<cplx> v);

    /// Samples fn(point) at every grid point; point is a physical
    /// coordinate or a frequency depending on the space.
    template <class Fn>
    static ComplexField sample(const Grid& g, Space s, Fn&& fn) {
        ComplexField out(g, s);
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = fn(out.point(i));
        return out;
    }

    void validate() const;
    std::array<double, 3> point(std::size_t flat) const;
    /// Euclidean norm of point(flat) (|x| or |xi|).
    double radius(std::size_t flat) const;
    double cell_volume() const;
    std::size_t size() const { return values.size(); }

    ComplexField& operator*=(cplx c);
    ComplexField& operator+=(const ComplexField& o);
};

ComplexField operator*(cplx c, ComplexField f);
ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator-(ComplexField a, const ComplexField& b);

/// u(t, .) at uniformly spaced, strictly increasing times.
struct SpaceTimeField {
    std::vector<double> times;
    std::vector<ComplexField> slices;

    void validate() const;
    double dt() const;
};

/// f-hat(xi) = integral f(x) exp(-i x.xi) dx, sampled on the dual grid.
ComplexField forward_fourier(const ComplexField& f);
/// f(x) = (2 pi)^-n integral f-hat(xi) exp(i x.xi) dxi.
ComplexField inverse_fourier(const ComplexField& fhat);

struct BoundaryThresholds {
    double spatial = 1e-6;
    double temporal = 1e-6;
};

/// Sum of |u|^p over a space-time sample set with the edge shares.
struct LpSums {
    double total = 0.0;
    double spatial_boundary = 0.0;
    double temporal_boundary = 0.0;
    double weight = 0.0;  // cell volume * dt

    double norm(double p) const;
    double spatial_fraction() const { return total > 0 ? spatial_boundary / total : 0.0; }
    double temporal_fraction() const { return total > 0 ? temporal_boundary / total : 0.0; }
    /// Throws BoundaryMassError when an edge share exceeds its threshold.
    void check(const BoundaryThresholds& th) const;
};

/// Per-slice sums of |u|^p: {total, share on outermost spatial cells}.
std::array<double, 2> slice_power_sums(const ComplexField& u, double p);

/// Combines per-slice sums in slice order (deterministic).
LpSums combine_slice_sums(const std::vector<std::array<double, 2>>& per_slice, double cell_volume, double dt);

LpSums lp_spacetime_sums(const SpaceTimeField& u, double p);
/// Midpoint-rule L^p norm of u over space-time.
double lp_spacetime_norm(const SpaceTimeField& u, double p, const BoundaryThresholds& th = {});

double l2_norm(const ComplexField& f);

/// Sobolev orders applied to f and g in the pair norm.
struct SobolevPair {
    double f_order = 0.5;
    double g_order = -0.5;
};

/// |xi| with the xi = 0 cell replaced by grid.zero_cell_freq().
double regularized_frequency(const ComplexField& fhat, std::size_t flat);

/// Share of sum |xi|^(2s)|g-hat|^2 carried by the xi = 0 cell.
double zero_mode_fraction(const ComplexField& ghat, double order);

/// (||f||^2_{H^{s_f}} + ||g||^2_{H^{s_g}})^(1/2), homogeneous norms in
/// frequency space. Inputs may be physical or frequency fields.
double sobolev_half_norm(const ComplexField& f, const ComplexField& g, SobolevPair pair = {},
                         double zero_mode_threshold = 1e-6);

/// Moves a field into the requested space (copy if already there).
ComplexField to_space(const ComplexField& f, Space s);

}  // namespace strichartz
