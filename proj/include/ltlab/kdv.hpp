#ifndef LTLAB_KDV_HPP
#define LTLAB_KDV_HPP

#include <vector>

#include "ltlab/grid.hpp"

namespace ltlab {

/// KdV N-soliton parameters: betas strictly descending positive; shifts are
/// the asymptotic bump centers.
struct SolitonSpec {
    std::vector<double> betas;
    std::vector<double> shifts;

    SolitonSpec() = default;
    SolitonSpec(std::vector<double> b, std::vector<double> x);
    int order() const { return static_cast<int>(betas.size()); }
    void validate() const;
};

/// Reflectionless well depth -Q_{beta,X} >= 0 sampled on the grid; the
/// spectrum of -Delta - V is exactly {-beta_j^2}.
PotentialField soliton_profile(const SolitonSpec& spec, const Grid1D& grid);

/// {-beta_1^2, ..., -beta_N^2} ascending.
std::vector<double> exact_spectrum(const SolitonSpec& spec);

/// Scale betas so sum beta^3 = 3/16 (shifts scaled consistently).
SolitonSpec normalize_to_manifold(const SolitonSpec& spec);

struct ManifoldFit {
    SolitonSpec fitted_spec;
    double l2_distance = 0.0;
    int order = 0; // m <= n_max of the fitted soliton; 0 = zero potential
};

/// L2 distance from V to the manifold of normalized m-solitons, m <= n_max.
ManifoldFit manifold_distance(const PotentialField& V, int n_max);

namespace detail {
/// (log det A)'' evaluated through LU trace identities on the raw matrix;
/// test cross-check for the subset-sum production path. Valid while the
/// entries of A stay within double range.
double logdet_dd_trace(const SolitonSpec& spec, double x);
} // namespace detail

} // namespace ltlab

#endif
