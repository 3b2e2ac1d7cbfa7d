#ifndef LTLAB_SCHRODINGER_HPP
#define LTLAB_SCHRODINGER_HPP

#include <vector>

#include "ltlab/grid.hpp"

namespace ltlab {

struct SpectrumRequest {
    PotentialField V;
    int count = 1;          // number of min-max levels requested
    int l_max = -1;         // radial only; -1 = auto-increase until certified
    double tol = 1e-10;     // absolute eigenvalue tolerance (reporting only)
    bool want_vectors = true;
};

/// One retained state: min-max value with channel bookkeeping. For 1D grids
/// l = 0 and multiplicity = 1. For radial grids `vector` is the reduced
/// radial function v(r) = r^{(d-1)/2} R(r), normalized to int v^2 dr = 1.
struct SpectrumState {
    double value = 0.0;
    int l = 0;
    long multiplicity = 1;
    std::vector<double> vector;
};

struct SpectrumResult {
    /// Min-max levels sorted ascending, each degenerate radial level repeated
    /// multiplicity times; padded with zeros up to the requested count.
    std::vector<double> eigenvalues;
    /// One record per distinct computed state (not repeated by multiplicity).
    std::vector<SpectrumState> states;
    int negative_count = 0;

    /// Index into `states` for flat eigenvalue slot j (-1 for zero padding).
    std::vector<int> state_of_level;
};

/// Lowest `count` min-max levels of -Delta - V with Dirichlet box truncation.
SpectrumResult lowest_eigenpairs(const SpectrumRequest& req);

/// sup over grid-centered windows of radius r of the local integral of V^p.
double vanishing_bound_probe(const PotentialField& V, double p, double r);

} // namespace ltlab

#endif
