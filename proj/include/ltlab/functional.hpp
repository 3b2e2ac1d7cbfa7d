#ifndef LTLAB_FUNCTIONAL_HPP
#define LTLAB_FUNCTIONAL_HPP

#include <map>
#include <utility>
#include <vector>

#include "ltlab/grid.hpp"

namespace ltlab {

/// gamma admissibility: > 1/2 in d=1, > 0 in d=2, >= 0 in d >= 3
/// (the boundary gamma = 1/2, d = 1 is excluded).
bool gamma_admissible(double gamma, int dim);

struct RieszReport {
    double gamma = 0.0;
    int dim = 1;
    int n_states = 1;
    double riesz_sum = 0.0;  // sum over the min(N, M) lowest of |lambda_j|^gamma
    double norm_power = 0.0; // integral of V^{gamma+d/2}
    double ratio = 0.0;      // riesz_sum / norm_power
    std::vector<double> eigenvalues;
    int negative_count = 0;
};

RieszReport riesz_ratio(const PotentialField& V, double gamma, int n_states);

struct GnsOptions {
    double box = 25.0;   // half-width (1D) or r_max (radial)
    int n = 2048;
    int max_iter = 40000;
    double tol = 1e-10;  // relative change of the quotient
};

/// L^(1)_{gamma,d} from its dual expression through the best
/// Gagliardo-Nirenberg-Sobolev constant, computed by projected gradient
/// ascent of the log-quotient over radial profiles.
double gns_reference_L1(double gamma, int dim, const GnsOptions& opts = {});

/// Violations (N, K) of N/c_N <= K/c_K + (N-K)/c_{N-K} + tol.
std::vector<std::pair<int, int>> subadditivity_check(const std::map<int, double>& table,
                                                     double tol = 1e-12);

/// Violations N of c_{N+1} >= c_N - tol (monotone reformulation for L tables).
std::vector<int> monotonicity_check(const std::map<int, double>& table, double tol = 1e-12);

} // namespace ltlab

#endif
