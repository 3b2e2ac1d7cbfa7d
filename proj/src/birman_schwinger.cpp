#include "ltlab/birman_schwinger.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

#include "ltlab/tridiag.hpp"

namespace ltlab {

namespace {

constexpr int kAutoLmaxCap = 64;

/// Largest k eigenvalues of C = D^{1/2} A^{-1} D^{1/2} by Lanczos with full
/// reorthogonalization; A is the SPD tridiagonal channel kinetic operator.
std::vector<double> top_bs_channel(const std::vector<double>& diag,
                                   const std::vector<double>& off,
                                   const std::vector<double>& sqrtv, int k) {
    const int n = static_cast<int>(diag.size());
    TridiagSolver solver(diag, off);
    auto apply = [&](const std::vector<double>& x) {
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) y[i] = sqrtv[i] * x[i];
        y = solver.solve(y);
        for (int i = 0; i < n; ++i) y[i] *= sqrtv[i];
        return y;
    };

    const int m = std::min(n, std::max(120, 12 * k + 30));
    std::vector<std::vector<double>> Q;
    Q.reserve(m + 1);
    std::vector<double> alpha, beta;

    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss;
    std::vector<double> q(n);
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) {
        q[i] = sqrtv[i] > 0.0 ? sqrtv[i] * (1.0 + 0.01 * gauss(rng)) : 0.0;
        nrm += q[i] * q[i];
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) return {};
    for (double& x : q) x /= nrm;
    Q.push_back(q);

    for (int j = 0; j < m; ++j) {
        auto w = apply(Q[j]);
        double a = 0.0;
        for (int i = 0; i < n; ++i) a += Q[j][i] * w[i];
        alpha.push_back(a);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& qq : Q) {
                double c = 0.0;
                for (int i = 0; i < n; ++i) c += qq[i] * w[i];
                for (int i = 0; i < n; ++i) w[i] -= c * qq[i];
            }
        }
        double b = 0.0;
        for (double x : w) b += x * x;
        b = std::sqrt(b);
        if (b < 1e-13) break;
        beta.push_back(b);
        for (double& x : w) x /= b;
        Q.push_back(std::move(w));
    }

    const int mm = static_cast<int>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(mm, mm);
    for (int i = 0; i < mm; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < mm) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
    std::vector<double> mus;
    for (int i = mm - 1; i >= 0 && static_cast<int>(mus.size()) < k; --i) {
        const double mu = es.eigenvalues()(i);
        if (mu <= 0.0) break;
        mus.push_back(mu);
    }
    return mus;
}

} // namespace

BirmanSchwingerResult mu_spectrum(const PotentialField& V, int count, int l_max) {
    if (!V.radial()) throw invalid_input("mu_spectrum: radial fields only");
    const auto& g = std::get<RadialGrid>(V.grid);
    if (g.dim < 3) throw invalid_input("mu_spectrum: dimension must be >= 3");
    if (count < 1) throw invalid_input("mu_spectrum: count must be >= 1");
    const double vmax = *std::max_element(V.values.begin(), V.values.end());
    if (!(vmax > 0.0)) throw invalid_input("mu_spectrum: potential vanishes on the grid");

    const int n = V.size();
    const double h = g.h();
    const double floor = 1e-14 * vmax;
    std::vector<double> sqrtv(n);
    for (int i = 0; i < n; ++i) sqrtv[i] = V.values[i] > floor ? std::sqrt(V.values[i]) : 0.0;

    BirmanSchwingerResult res;
    res.norm_power = lp_norm_power(V, 0.5 * g.dim);

    const bool auto_l = l_max < 0;
    const int cap = auto_l ? kAutoLmaxCap : l_max;
    std::vector<double> flat;
    for (int l = 0; l <= cap; ++l) {
        std::vector<double> diag(n);
        std::vector<double> off(n - 1, -1.0 / (h * h));
        const double kap = kappa_l(l, g.dim);
        for (int i = 0; i < n; ++i) {
            const double r = g.node(i);
            diag[i] = 2.0 / (h * h) + kap / (r * r);
        }
        diag[n - 1] = 1.0 / (h * h) + kap / (g.node(n - 1) * g.node(n - 1)); // Neumann outer

        const auto mus = top_bs_channel(diag, off, sqrtv, count);
        const long mult = multiplicity_l(l, g.dim);
        for (double mu : mus) {
            res.channels.push_back({l, mult, mu});
            for (long m = 0; m < mult; ++m) flat.push_back(mu);
        }
        std::sort(flat.begin(), flat.end(), std::greater<>());
        const double channel_top = mus.empty() ? 0.0 : mus.front();
        // channel tops are nonincreasing in l, so no later channel can enter
        // the leading `count` once the current top falls below the cutoff
        if (static_cast<int>(flat.size()) >= count && channel_top < flat[count - 1] - 1e-15)
            break;
        if (l == cap)
            throw channel_exhaustion(cap,
                                     "mu_spectrum: l_max too small to certify requested count");
    }

    std::sort(res.channels.begin(), res.channels.end(),
              [](const auto& a, const auto& b) { return a.value > b.value; });
    res.mus.assign(flat.begin(), flat.begin() + std::min<size_t>(flat.size(), count));
    for (int N = 1; N <= static_cast<int>(res.mus.size()); ++N)
        res.ell_estimates[N] =
            N * std::pow(res.mus[N - 1], 0.5 * g.dim) / res.norm_power;
    return res;
}

SpherePotential sphere_potential(const SpherePotentialSpec& spec, const RadialGrid& grid) {
    if (spec.L < 0) throw invalid_input("sphere_potential: L must be >= 0");
    if (spec.dim != grid.dim || spec.dim < 3)
        throw invalid_input("sphere_potential: dimension mismatch or dim < 3");
    const double d = spec.dim;
    const double c = (spec.L + 0.5 * (d - 2.0)) * (spec.L + 0.5 * d);
    std::vector<double> vals(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double r = grid.node(i);
        vals[i] = 4.0 * c / ((1.0 + r * r) * (1.0 + r * r));
    }
    SpherePotential out{PotentialField(grid, std::move(vals)), 0.0};
    out.closed_form_norm = std::pow(c, 0.5 * d) * sphere_surface(spec.dim + 1);
    return out;
}

InversionResult inversion_transform(const PotentialField& V) {
    if (!V.radial()) throw invalid_input("inversion_transform: radial fields only");
    InversionResult out{V, false};
    const auto& g = std::get<RadialGrid>(V.grid);
    const double lo = g.node(0), hi = g.node(g.n - 1);
    for (int i = 0; i < V.size(); ++i) {
        const double r = V.coord(i);
        const double s = 1.0 / r;
        if (s < lo || s > hi) {
            out.field.values[i] = 0.0;
            out.extrapolated = true;
        } else {
            out.field.values[i] = V.interpolate(s) / (r * r * r * r);
        }
    }
    return out;
}

double decay_tail_check(const PotentialField& V) {
    if (!V.radial()) throw invalid_input("decay_tail_check: radial fields only");
    const auto& g = std::get<RadialGrid>(V.grid);
    double s = 0.0;
    long m = 0;
    for (int i = 0; i < V.size(); ++i) {
        const double r = V.coord(i);
        if (r < 0.8 * g.r_max) continue;
        s += r * r * r * r * V.values[i];
        ++m;
    }
    return m > 0 ? s / double(m) : 0.0;
}

} // namespace ltlab
