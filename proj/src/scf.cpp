#include "ltlab/scf.hpp"

#include <algorithm>
#include <cmath>

#include "ltlab/functional.hpp"
#include "ltlab/io.hpp"

namespace ltlab {

namespace {

/// Flat-slot occupancies filling exactly min(N, M) states, with equal
/// fractional weights across a degeneracy cluster straddling the cut.
std::vector<double> occupancies(const std::vector<double>& lam, int M, int N, double deg_tol) {
    const int Ncut = std::min(N, M);
    std::vector<double> occ(M, 0.0);
    for (int j = 0; j < Ncut; ++j) occ[j] = 1.0;
    if (Ncut < M) {
        const double pivot = lam[Ncut - 1];
        std::vector<int> cluster;
        int below = 0;
        for (int j = 0; j < M; ++j) {
            if (std::abs(lam[j] - pivot) <= deg_tol)
                cluster.push_back(j);
            else if (j < Ncut)
                ++below;
        }
        if (cluster.size() > 1) {
            std::fill(occ.begin(), occ.end(), 0.0);
            for (int j = 0; j < M && j < below; ++j)
                if (std::abs(lam[j] - pivot) > deg_tol) occ[j] = 1.0;
            const double frac = double(Ncut - below) / double(cluster.size());
            for (int j : cluster) occ[j] = frac;
        }
    }
    return occ;
}

/// Angular-averaged density of one flat slot of state st at node i.
double slot_density(const PotentialField& V, const SpectrumState& st, int i) {
    const double v = st.vector[i];
    if (!V.radial()) return v * v;
    const int d = V.dim();
    const double r = V.coord(i);
    return v * v / (std::pow(r, d - 1) * sphere_surface(d));
}

PotentialField normalized(const PotentialField& V, double p) {
    const double norm = lp_norm_power(V, p);
    if (!(norm > 0.0)) throw degenerate_input("scf: zero-norm potential");
    const double c = std::pow(norm, -1.0 / p);
    PotentialField out = V;
    for (double& v : out.values) v *= c;
    return out;
}

double lp_distance(const PotentialField& A, const PotentialField& B, double p) {
    double s = 0.0;
    for (int i = 0; i < A.size(); ++i)
        s += A.weight(i) * std::pow(std::abs(A.values[i] - B.values[i]), p);
    return std::pow(s, 1.0 / p);
}

double riesz_sum_of(const std::vector<double>& lam, double gamma, int n) {
    double s = 0.0;
    for (int j = 0; j < std::min<int>(n, lam.size()); ++j)
        if (lam[j] < 0.0) s += std::pow(-lam[j], gamma);
    return s;
}

} // namespace

PotentialField euler_lagrange_map(const PotentialField& V, double gamma, int n_states,
                                  double L_current, double degeneracy_tol, int l_max) {
    const int d = V.dim();
    const double expo = gamma + 0.5 * d - 1.0;
    if (expo < 1e-6)
        throw invalid_input("euler_lagrange_map: gamma + d/2 must exceed 1");
    if (!(L_current > 0.0)) throw invalid_input("euler_lagrange_map: L_current must be > 0");

    SpectrumRequest req;
    req.V = V;
    req.count = n_states + 3; // room to see a cluster straddling the cut
    req.l_max = l_max;
    const auto spec = lowest_eigenpairs(req);
    const int M = spec.negative_count;
    if (M == 0) throw breakdown_error("euler_lagrange_map: no negative eigenvalue");

    std::vector<double> lam(spec.eigenvalues.begin(), spec.eigenvalues.begin() + M);
    const auto occ = occupancies(lam, M, n_states, degeneracy_tol);

    const double pref = 2.0 * gamma / ((d + 2.0 * gamma) * L_current);
    PotentialField out = V;
    for (int i = 0; i < V.size(); ++i) {
        double rho = 0.0;
        for (int j = 0; j < M; ++j) {
            if (occ[j] == 0.0) continue;
            const auto& st = spec.states[spec.state_of_level[j]];
            rho += occ[j] * std::pow(-lam[j], gamma - 1.0) * slot_density(V, st, i);
        }
        out.values[i] = std::pow(pref * rho, 1.0 / expo);
    }
    return out;
}

PotentialField make_initial_field(const ScfConfig& cfg) {
    auto bump = [](double c, double a, double x0, double w) {
        return a * std::exp(-(c - x0) * (c - x0) / (w * w));
    };
    std::vector<double> vals(cfg.grid_n);
    if (cfg.init.kind == InitSpec::Kind::soliton) {
        if (cfg.dim != 1) throw invalid_input("scf init: solitons are 1D");
        if (!cfg.init.soliton) throw invalid_input("scf init: missing soliton spec");
        return soliton_profile(*cfg.init.soliton, Grid1D(-cfg.box, cfg.box, cfg.grid_n));
    }
    if (cfg.init.kind == InitSpec::Kind::file_csv) {
        return potential_from_csv(cfg.init.path);
    }
    if (cfg.dim == 1) {
        Grid1D g(-cfg.box, cfg.box, cfg.grid_n);
        for (int i = 0; i < cfg.grid_n; ++i) {
            const double x = g.node(i);
            switch (cfg.init.kind) {
                case InitSpec::Kind::gaussian:
                    vals[i] = bump(x, cfg.init.amplitude, cfg.init.center, cfg.init.width);
                    break;
                case InitSpec::Kind::two_bump:
                    vals[i] = bump(x, cfg.init.amplitude, cfg.init.center, cfg.init.width) +
                              bump(x, cfg.init.amplitude2, cfg.init.center2, cfg.init.width2);
                    break;
                case InitSpec::Kind::values:
                    vals[i] = cfg.init.values.at(i);
                    break;
                default:
                    throw invalid_input("scf init: unsupported kind");
            }
        }
        return PotentialField(g, std::move(vals));
    }
    RadialGrid g(cfg.box, cfg.grid_n, cfg.dim);
    for (int i = 0; i < cfg.grid_n; ++i) {
        const double r = g.node(i);
        switch (cfg.init.kind) {
            case InitSpec::Kind::gaussian:
                vals[i] = bump(r, cfg.init.amplitude, cfg.init.center, cfg.init.width);
                break;
            case InitSpec::Kind::two_bump:
                vals[i] = bump(r, cfg.init.amplitude, cfg.init.center, cfg.init.width) +
                          bump(r, cfg.init.amplitude2, cfg.init.center2, cfg.init.width2);
                break;
            case InitSpec::Kind::values:
                vals[i] = cfg.init.values.at(i);
                break;
            default:
                throw invalid_input("scf init: unsupported kind");
        }
    }
    return PotentialField(g, std::move(vals));
}

double fit_decay_rate(const PotentialField& V) {
    const double cmax = V.radial() ? std::get<RadialGrid>(V.grid).r_max
                                   : std::max(std::abs(std::get<Grid1D>(V.grid).x_min),
                                              std::abs(std::get<Grid1D>(V.grid).x_max));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long m = 0;
    for (int i = 0; i < V.size(); ++i) {
        const double c = std::abs(V.coord(i));
        if (c < 0.80 * cmax || c > 0.92 * cmax) continue;
        if (!(V.values[i] > 1e-290)) continue;
        const double y = std::log(V.values[i]);
        sx += c;
        sy += y;
        sxx += c * c;
        sxy += c * y;
        ++m;
    }
    if (m < 8) return 0.0;
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return -slope;
}

ScfResult run_scf(const ScfConfig& cfg) {
    if (!gamma_admissible(cfg.gamma, cfg.dim) || cfg.gamma <= 0.0)
        throw invalid_input("run_scf: gamma not admissible for this dimension");
    if (!(cfg.eta > 0.0 && cfg.eta <= 1.0)) throw invalid_input("run_scf: eta must be in (0,1]");
    if (!(cfg.tol_fixed_point > 0.0)) throw invalid_input("run_scf: tolerances must be > 0");
    const double p = cfg.gamma + 0.5 * cfg.dim;

    PotentialField V = normalized(make_initial_field(cfg), p);

    auto ratio_of = [&](const PotentialField& W) {
        SpectrumRequest rq;
        rq.V = W;
        rq.count = cfg.n_states;
        rq.l_max = cfg.l_max;
        rq.want_vectors = false;
        const auto sp = lowest_eigenpairs(rq);
        return riesz_sum_of(sp.eigenvalues, cfg.gamma, cfg.n_states) / lp_norm_power(W, p);
    };

    double L = ratio_of(V);
    if (!(L > 0.0)) throw breakdown_error("run_scf: initial potential has no bound state");

    double eta = cfg.eta;
    PotentialField best = V;
    double best_L = L;
    int it = 0;
    bool converged = false;
    double residual = 0.0;
    std::vector<double> history{L};

    for (; it < cfg.max_iter; ++it) {
        PotentialField Vel;
        try {
            Vel = normalized(euler_lagrange_map(V, cfg.gamma, cfg.n_states, L,
                                                cfg.degeneracy_tol, cfg.l_max),
                             p);
        } catch (const breakdown_error&) {
            break; // return best iterate flagged not converged
        }
        residual = lp_distance(Vel, V, p);
        if (residual <= cfg.tol_fixed_point) {
            converged = true;
            ++it;
            break;
        }
        PotentialField Vn = V;
        for (int i = 0; i < V.size(); ++i)
            Vn.values[i] = (1.0 - eta) * V.values[i] + eta * Vel.values[i];
        Vn = normalized(Vn, p);
        const double Ln = ratio_of(Vn);
        if (Ln < L - cfg.tol_objective) {
            eta *= 0.5; // reject the step, damp harder
            if (eta < 1.0 / 256.0) break;
            continue;
        }
        V = std::move(Vn);
        L = Ln;
        history.push_back(L);
        if (L > best_L) {
            best_L = L;
            best = V;
        }
    }

    if (!converged && best_L > L) {
        V = best;
        L = best_L;
        residual = lp_distance(normalized(euler_lagrange_map(V, cfg.gamma, cfg.n_states, L,
                                                             cfg.degeneracy_tol, cfg.l_max),
                                          p),
                               V, p);
        converged = residual <= cfg.tol_fixed_point;
    }

    ScfResult res;
    res.config = cfg;
    res.V_star = V;
    res.iterations = it;
    res.converged = converged;
    res.residual = residual;
    res.L_estimate = L;
    res.objective_history = std::move(history);

    SpectrumRequest rq;
    rq.V = V;
    rq.count = cfg.n_states + 1;
    rq.l_max = cfg.l_max;
    res.spectrum = lowest_eigenpairs(rq);
    const auto& ev = res.spectrum.eigenvalues;
    res.gap = ev[cfg.n_states] - ev[cfg.n_states - 1];
    res.decay_rate_fit = fit_decay_rate(V);
    return res;
}

bool gap_check(const ScfResult& result) {
    const int N = result.config.n_states;
    const auto& ev = result.spectrum.eigenvalues;
    if (static_cast<int>(ev.size()) < N + 1) return false;
    return ev[N - 1] < ev[N] - result.config.degeneracy_tol;
}

BindingCorrection binding_correction(const PotentialField& V_opt, double gamma,
                                     int n_states, double R, int dim) {
    if (V_opt.radial() || dim != 1)
        throw invalid_input("binding_correction: displaced copies require a 1D grid");
    if (V_opt.dim() != dim) throw invalid_input("binding_correction: dimension mismatch");
    if (!(R > 0.0)) throw invalid_input("binding_correction: R must be > 0");
    const auto& g = std::get<Grid1D>(V_opt.grid);
    if (R >= 0.5 * (g.x_max - g.x_min))
        throw invalid_input("binding_correction: R exceeds the grid");

    SpectrumRequest rq;
    rq.V = V_opt;
    rq.count = n_states;
    const auto sp = lowest_eigenpairs(rq);
    if (sp.negative_count < n_states)
        throw invalid_input("binding_correction: fewer than N negative eigenvalues");

    const double gd = gamma + 0.5 * dim;
    const double p = gd / (gd - 1.0);
    const double L = riesz_sum_of(sp.eigenvalues, gamma, n_states) / lp_norm_power(V_opt, gd);
    const double beta = 2.0 * gamma / ((dim + 2.0 * gamma) * L);

    const int n = V_opt.size();
    const double h = g.h();
    const int k = std::max(1, static_cast<int>(std::lround(0.5 * R / h)));

    std::vector<double> rho(n, 0.0);
    for (int j = 0; j < n_states; ++j) {
        const auto& st = sp.states[sp.state_of_level[j]];
        for (int i = 0; i < n; ++i)
            rho[i] += std::pow(-sp.eigenvalues[j], gamma - 1.0) * st.vector[i] * st.vector[i];
    }

    auto shifted = [&](const std::vector<double>& f, int by) {
        std::vector<double> out(n, 0.0);
        for (int i = 0; i < n; ++i) {
            const int src = i - by;
            if (src >= 0 && src < n) out[i] = f[src];
        }
        return out;
    };
    const auto rho_p = shifted(rho, k);
    const auto rho_m = shifted(rho, -k);

    BindingCorrection out;
    out.R_effective = 2.0 * k * h;

    std::vector<double> vr(n);
    double a_r = 0.0;
    for (int i = 0; i < n; ++i) {
        const double both = beta * (rho_p[i] + rho_m[i]);
        vr[i] = std::pow(both, p - 1.0);
        a_r += h * (std::pow(both, p) - std::pow(beta * rho_p[i], p) -
                    std::pow(beta * rho_m[i], p));
    }
    out.A_R = a_r;

    double e_r = 0.0, b_r = 0.0;
    for (int a = 0; a < n_states; ++a) {
        const auto& ua = sp.states[sp.state_of_level[a]].vector;
        const auto uap = shifted(ua, k);
        const auto uam = shifted(ua, -k);
        for (int b = 0; b < n_states; ++b) {
            const auto& ub = sp.states[sp.state_of_level[b]].vector;
            const auto ubp = shifted(ub, k);
            double se = 0.0, sb = 0.0;
            for (int i = 0; i < n; ++i) {
                se += h * std::abs(uam[i]) * std::abs(ubp[i]);
                const double vplus = std::pow(beta * rho_p[i], p - 1.0);
                sb += h * std::abs(uap[i]) * std::abs(ubp[i]) * (vr[i] - vplus);
            }
            e_r = std::max(e_r, se);
            b_r = std::max(b_r, std::abs(sb));
        }
    }
    out.e_R = e_r;
    out.B_R = b_r;

    PotentialField VR(g, vr);
    out.trial_ratio = riesz_ratio(VR, gamma, 2 * n_states).ratio;
    return out;
}

} // namespace ltlab
