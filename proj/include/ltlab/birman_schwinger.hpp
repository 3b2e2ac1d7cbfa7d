#ifndef LTLAB_BIRMAN_SCHWINGER_HPP
#define LTLAB_BIRMAN_SCHWINGER_HPP

#include <map>
#include <vector>

#include "ltlab/grid.hpp"

namespace ltlab {

struct BsChannelRecord {
    int l = 0;
    long multiplicity = 1;
    double value = 0.0;
};

struct BirmanSchwingerResult {
    /// mu_j(V) in decreasing order, each channel level repeated by its
    /// spherical-harmonic multiplicity.
    std::vector<double> mus;
    std::vector<BsChannelRecord> channels;
    /// N -> N * mu_N^{d/2} / int V^{d/2}, for N = 1..count.
    std::map<int, double> ell_estimates;
    double norm_power = 0.0; // int V^{d/2}
};

struct SpherePotentialSpec {
    int L = 0;
    int dim = 3;
};

/// mu_j eigenvalues of the Birman-Schwinger operator for a radial V, d >= 3.
/// Per channel the generalized problem A_l u = nu diag(V) u is solved through
/// Lanczos on D^{1/2} A_l^{-1} D^{1/2}; the outer boundary condition is
/// Neumann (zero-energy modes approach constants in low dimensions, so a
/// Dirichlet wall would bias mu by O(1/r_max)).
BirmanSchwingerResult mu_spectrum(const PotentialField& V, int count, int l_max = -1);

/// V_L(x) = (L+(d-2)/2)(L+d/2) * 4/(1+|x|^2)^2 sampled on the grid, plus the
/// closed-form value of int V_L^{d/2}.
struct SpherePotential {
    PotentialField field;
    double closed_form_norm = 0.0;
};
SpherePotential sphere_potential(const SpherePotentialSpec& spec, const RadialGrid& grid);

/// W(r) = r^{-4} V(1/r) resampled on V's grid; flags when 1/r fell outside
/// the covered range (zero-filled there).
struct InversionResult {
    PotentialField field;
    bool extrapolated = false;
};
InversionResult inversion_transform(const PotentialField& V);

/// Least-squares constant fit of r^4 V(r) over the outer 20% of the grid.
double decay_tail_check(const PotentialField& V);

} // namespace ltlab

#endif
