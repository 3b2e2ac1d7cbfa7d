#include "ltlab/functional.hpp"

#include <algorithm>
#include <cmath>

#include "ltlab/schrodinger.hpp"

namespace ltlab {

bool gamma_admissible(double gamma, int dim) {
    if (dim <= 0) return false;
    if (dim == 1) return gamma > 0.5;
    if (dim == 2) return gamma > 0.0;
    return gamma >= 0.0;
}

RieszReport riesz_ratio(const PotentialField& V, double gamma, int n_states) {
    if (!gamma_admissible(gamma, V.dim()) || gamma <= 0.0)
        throw invalid_input("riesz_ratio: gamma not admissible for this dimension");
    if (n_states < 1) throw invalid_input("riesz_ratio: n_states must be >= 1");

    RieszReport rep;
    rep.gamma = gamma;
    rep.dim = V.dim();
    rep.n_states = n_states;
    rep.norm_power = lp_norm_power(V, gamma + 0.5 * V.dim());
    if (rep.norm_power <= 0.0)
        throw degenerate_input("riesz_ratio: zero potential");

    SpectrumRequest req;
    req.V = V;
    req.count = n_states;
    req.want_vectors = false;
    const auto spec = lowest_eigenpairs(req);
    rep.eigenvalues = spec.eigenvalues;
    rep.negative_count = spec.negative_count;
    for (int j = 0; j < std::min(n_states, spec.negative_count); ++j)
        rep.riesz_sum += std::pow(-spec.eigenvalues[j], gamma);
    rep.ratio = rep.riesz_sum / rep.norm_power;
    return rep;
}

namespace {

/// Discrete radial (or 1D) functional evaluator for the GNS quotient.
struct GnsWorkspace {
    int dim;
    double h;
    std::vector<double> w;       // L^p quadrature weights
    std::vector<double> stiff_w; // midpoint weights for int |u'|^2

    explicit GnsWorkspace(int dim_, double box, int n) : dim(dim_) {
        if (dim == 1) {
            Grid1D g(-box, box, n);
            h = g.h();
            w.assign(n, h);
            stiff_w.assign(n + 1, h);
        } else {
            RadialGrid g(box, n, dim);
            h = g.h();
            const double area = sphere_surface(dim);
            w.resize(n);
            for (int i = 0; i < n; ++i) w[i] = area * std::pow(g.node(i), dim - 1) * h;
            stiff_w.resize(n + 1);
            for (int i = 0; i <= n; ++i) {
                const double rm = (i + 0.5) * h; // midpoint between node i-1 and i
                stiff_w[i] = area * std::pow(rm, dim - 1) * h;
            }
        }
    }

    double integral_pow(const std::vector<double>& u, double p) const {
        double s = 0.0;
        for (size_t i = 0; i < u.size(); ++i) s += w[i] * std::pow(std::abs(u[i]), p);
        return s;
    }

    // int |u'|^2 with Dirichlet values 0 at both artificial endpoints.
    double dirichlet_energy(const std::vector<double>& u) const {
        const int n = static_cast<int>(u.size());
        double s = stiff_w[0] * u[0] * u[0] / (h * h);
        for (int i = 1; i < n; ++i) {
            const double d = u[i] - u[i - 1];
            s += stiff_w[i] * d * d / (h * h);
        }
        s += stiff_w[n] * u[n - 1] * u[n - 1] / (h * h);
        return s;
    }

    // gradient of dirichlet_energy (one half of it, i.e. the stiffness apply)
    std::vector<double> stiffness_apply(const std::vector<double>& u) const {
        const int n = static_cast<int>(u.size());
        std::vector<double> g(n);
        for (int i = 0; i < n; ++i) {
            const double left = (i == 0) ? u[0] : u[i] - u[i - 1];
            const double right = (i == n - 1) ? -u[i] : u[i + 1] - u[i];
            g[i] = (stiff_w[i] * left - stiff_w[i + 1] * right) / (h * h);
        }
        return g;
    }
};

} // namespace

double gns_reference_L1(double gamma, int dim, const GnsOptions& opts) {
    if (!gamma_admissible(gamma, dim) || gamma <= 0.0)
        throw invalid_input("gns_reference_L1: gamma not admissible");
    const double p = (2.0 * dim + 4.0 * gamma) / (dim - 2.0 + 2.0 * gamma);
    const double a = ((2.0 - dim) * p + 2.0 * dim) / (dim * (p - 2.0));
    const double q = 4.0 / (dim * (p - 2.0));

    GnsWorkspace ws(dim, opts.box, opts.n);
    std::vector<double> u(opts.n);
    for (int i = 0; i < opts.n; ++i) {
        const double c = dim == 1 ? -opts.box + (i + 1) * ws.h : (i + 1) * ws.h;
        u[i] = std::exp(-0.25 * c * c);
    }

    auto log_quotient = [&](const std::vector<double>& v) {
        return q * std::log(ws.integral_pow(v, p)) - a * std::log(ws.integral_pow(v, 2.0)) -
               std::log(ws.dirichlet_energy(v));
    };

    double F = log_quotient(u);
    double step = 0.1;
    double rel_change = 1.0;
    for (int it = 0; it < opts.max_iter; ++it) {
        const double Ip = ws.integral_pow(u, p);
        const double I2 = ws.integral_pow(u, 2.0);
        const double Ig = ws.dirichlet_energy(u);
        const auto Ku = ws.stiffness_apply(u);
        std::vector<double> g(u.size());
        double gn = 0.0;
        for (size_t i = 0; i < u.size(); ++i) {
            g[i] = q * p * ws.w[i] * std::pow(std::abs(u[i]), p - 1) / Ip -
                   2.0 * a * ws.w[i] * u[i] / I2 - 2.0 * Ku[i] / Ig;
            gn += g[i] * g[i];
        }
        gn = std::sqrt(gn);
        if (gn == 0.0) break;
        std::vector<double> un(u.size());
        for (size_t i = 0; i < u.size(); ++i) un[i] = std::max(u[i] + step * g[i] / gn, 0.0);
        const double Fn = log_quotient(un);
        if (Fn > F) {
            rel_change = (Fn - F) / std::abs(F);
            u = std::move(un);
            F = Fn;
            step = std::min(step * 1.3, 1.0);
            if (rel_change < opts.tol && it > 100) break;
        } else {
            step *= 0.5;
            if (step < 1e-14) break;
        }
    }
    if (rel_change > 1e-6)
        throw numerical_failure("gns_reference_L1: quotient did not settle", rel_change);

    const double C = std::exp(F);
    return std::pow(2.0 * gamma / (2.0 * gamma + dim), gamma + 0.5 * dim) *
           std::pow(dim / (2.0 * gamma), 0.5 * dim) * std::pow(C, 0.5 * dim);
}

std::vector<std::pair<int, int>> subadditivity_check(const std::map<int, double>& table,
                                                     double tol) {
    if (table.empty()) throw invalid_input("subadditivity_check: empty table");
    for (auto [N, c] : table)
        if (!(c > 0.0)) throw invalid_input("subadditivity_check: estimates must be positive");
    std::vector<std::pair<int, int>> bad;
    for (auto [N, cN] : table) {
        for (int K = 1; K < N; ++K) {
            auto a = table.find(K);
            auto b = table.find(N - K);
            if (a == table.end() || b == table.end()) continue;
            if (double(N) / cN > double(K) / a->second + double(N - K) / b->second + tol)
                bad.emplace_back(N, K);
        }
    }
    return bad;
}

std::vector<int> monotonicity_check(const std::map<int, double>& table, double tol) {
    if (table.empty()) throw invalid_input("monotonicity_check: empty table");
    std::vector<int> bad;
    for (auto it = table.begin(); it != table.end(); ++it) {
        auto next = table.find(it->first + 1);
        if (next != table.end() && next->second < it->second - tol) bad.push_back(it->first);
    }
    return bad;
}

} // namespace ltlab
