#ifndef LTLAB_SCF_HPP
#define LTLAB_SCF_HPP

#include <optional>
#include <string>
#include <vector>

#include "ltlab/grid.hpp"
#include "ltlab/kdv.hpp"
#include "ltlab/schrodinger.hpp"

namespace ltlab {

struct InitSpec {
    enum class Kind { gaussian, two_bump, soliton, file_csv, values };
    Kind kind = Kind::gaussian;
    // gaussian: amplitude * exp(-(x-center)^2 / width^2); two_bump adds a second one
    double amplitude = 1.0, center = 0.0, width = 2.0;
    double amplitude2 = 0.6, center2 = 6.0, width2 = 2.0;
    std::optional<SolitonSpec> soliton;
    std::string path;
    std::vector<double> values;
};

struct ScfConfig {
    double gamma = 1.5;
    int dim = 1;
    int n_states = 1;
    double eta = 0.5;
    int max_iter = 500;
    double tol_fixed_point = 1e-9; // relative L^{gamma+d/2} change
    double tol_objective = 1e-6;   // accepted decrease before damping halves
    double degeneracy_tol = 1e-9;
    double box = 40.0; // half-width (1D) or r_max (radial)
    int grid_n = 5461;
    int l_max = -1;
    InitSpec init;
    unsigned seed = 0;
};

struct ScfResult {
    PotentialField V_star;
    SpectrumResult spectrum; // n_states + 1 levels
    double L_estimate = 0.0;
    double gap = 0.0; // lambda_{N+1} - lambda_N, zero-padded levels allowed
    double decay_rate_fit = 0.0;
    int iterations = 0;
    bool converged = false;
    double residual = 0.0; // || normalize(EL(V*)) - V* ||_{gamma+d/2}
    std::vector<double> objective_history; // running ratio at accepted iterates
    ScfConfig config;
};

/// One application of the Euler-Lagrange map
///   V -> ( 2 gamma / ((d+2 gamma) L) * sum_{j<=min(N,M)} |l_j|^{gamma-1} |u_j|^2 )^{1/(gamma+d/2-1)}
/// with fractional occupancy across a degeneracy cluster straddling the N-cut.
PotentialField euler_lagrange_map(const PotentialField& V, double gamma, int n_states,
                                  double L_current, double degeneracy_tol = 1e-9,
                                  int l_max = -1);

ScfResult run_scf(const ScfConfig& config);

bool gap_check(const ScfResult& result);

struct BindingCorrection {
    double A_R = 0.0;
    double e_R = 0.0;
    double B_R = 0.0;
    double trial_ratio = 0.0;
    double R_effective = 0.0; // separation snapped to the grid
};

/// Two displaced copies of the optimizer density at separation R: the
/// correction quantities and the 2N-state trial Riesz ratio.
BindingCorrection binding_correction(const PotentialField& V_opt, double gamma,
                                     int n_states, double R, int dim);

/// Build an initial potential field from an InitSpec on a fresh grid.
PotentialField make_initial_field(const ScfConfig& config);

/// Least-squares slope magnitude of log V over coords in [0.80, 0.92] * coord_max.
double fit_decay_rate(const PotentialField& V);

} // namespace ltlab

#endif
