#ifndef LTLAB_GRID_HPP
#define LTLAB_GRID_HPP

#include <cmath>
#include <cstddef>
#include <variant>
#include <vector>

#include "ltlab/errors.hpp"

namespace ltlab {

/// Uniform interior-node grid on (x_min, x_max) with Dirichlet truncation:
/// nodes x_i = x_min + i*h, i = 1..n, h = (x_max - x_min)/(n+1).
struct Grid1D {
    double x_min = -1.0;
    double x_max = 1.0;
    int n = 3;

    Grid1D() = default;
    Grid1D(double a, double b, int n_);

    double h() const { return (x_max - x_min) / (n + 1); }
    double node(int i) const { return x_min + (i + 1) * h(); }
    std::vector<double> nodes() const;
};

/// Radial grid r_i = i*h, i = 1..n, h = r_max/(n+1), in dimension dim >= 2.
struct RadialGrid {
    double r_max = 1.0;
    int n = 3;
    int dim = 3;

    RadialGrid() = default;
    RadialGrid(double r_max_, int n_, int dim_);

    double h() const { return r_max / (n + 1); }
    double node(int i) const { return (i + 1) * h(); }
    std::vector<double> nodes() const;
};

using GridVariant = std::variant<Grid1D, RadialGrid>;

/// Surface area of the unit sphere S^{d-1} in R^d.
double sphere_surface(int d);

/// Dimension of the space of degree-l spherical harmonics in d variables.
long multiplicity_l(int l, int d);

/// Centrifugal coefficient of the reduced radial operator -u'' + kappa/r^2 u.
double kappa_l(int l, int d);

/// Nonnegative sampled potential; the optimization variable V.
struct PotentialField {
    GridVariant grid;
    std::vector<double> values;

    PotentialField() = default;
    PotentialField(Grid1D g, std::vector<double> v);
    PotentialField(RadialGrid g, std::vector<double> v);

    bool radial() const { return std::holds_alternative<RadialGrid>(grid); }
    int dim() const;
    int size() const { return static_cast<int>(values.size()); }
    double spacing() const;
    /// Node coordinate (x or r).
    double coord(int i) const;
    std::vector<double> coords() const;
    /// Trapezoidal quadrature weight of node i (includes |S^{d-1}| r^{d-1} for radial grids).
    double weight(int i) const;
    std::vector<double> weights() const;
    /// Linear interpolation at coordinate c, zero outside the covered range.
    double interpolate(double c) const;

    void validate() const;
};

/// integral of V^p by trapezoidal quadrature.
double lp_norm_power(const PotentialField& V, double p);

/// The field t^2 V(t .), resampled on V's grid.
PotentialField rescale(const PotentialField& V, double t);

/// Cumulative p-mass over balls of radius R for each entry of radii.
std::vector<double> mass_profile(const PotentialField& V, double p,
                                 const std::vector<double>& radii);

} // namespace ltlab

#endif
