#include "ltlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "ltlab/birman_schwinger.hpp"
#include "ltlab/functional.hpp"
#include "ltlab/grid.hpp"
#include "ltlab/kdv.hpp"
#include "ltlab/scf.hpp"
#include "ltlab/schrodinger.hpp"

namespace ltlab {

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

PotentialField gaussian_mix_1d(const Grid1D& g, std::mt19937_64& rng, int max_bumps) {
    std::uniform_int_distribution<int> nb(1, max_bumps);
    std::uniform_real_distribution<double> amp(0.2, 1.5), pos(-10.0, 10.0), wid(0.8, 4.0);
    const int m = nb(rng);
    std::vector<double> a(m), c(m), w(m);
    for (int k = 0; k < m; ++k) {
        a[k] = amp(rng);
        c[k] = pos(rng);
        w[k] = wid(rng);
    }
    std::vector<double> vals(g.n, 0.0);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i);
        for (int k = 0; k < m; ++k)
            vals[i] += a[k] * std::exp(-(x - c[k]) * (x - c[k]) / (w[k] * w[k]));
    }
    PotentialField V(g, std::move(vals));
    const double norm = lp_norm_power(V, 2.0);
    for (double& v : V.values) v /= std::sqrt(norm);
    return V;
}

PotentialField radial_bump(const RadialGrid& g, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> amp(0.5, 1.0), pos(0.6, 1.8), wid(0.25, 0.6);
    const double a1 = amp(rng), c1 = pos(rng), w1 = wid(rng);
    const double a2 = amp(rng), c2 = pos(rng), w2 = wid(rng);
    std::vector<double> vals(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double r = g.node(i);
        vals[i] = scale * (a1 * std::exp(-(r - c1) * (r - c1) / (w1 * w1)) +
                           a2 * std::exp(-(r - c2) * (r - c2) / (w2 * w2)));
    }
    return PotentialField(g, std::move(vals));
}

double l2_relative_diff(const PotentialField& A, const PotentialField& B) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < A.size(); ++i) {
        const double d = A.values[i] - B.values[i];
        num += A.weight(i) * d * d;
        den += A.weight(i) * A.values[i] * A.values[i];
    }
    return std::sqrt(num / den);
}

// --- criterion bodies -----------------------------------------------------

CriterionResult crit1_soliton_oracle() {
    CriterionResult r{1, "soliton spectrum oracle + grid doubling", false, ""};
    const SolitonSpec spec({0.9, 0.6, 0.3}, {0.0, 0.0, 0.0});
    const std::vector<double> exact{-0.81, -0.36, -0.09};
    double errs[2];
    const int ns[2] = {8192, 16384};
    for (int t = 0; t < 2; ++t) {
        const Grid1D g(-60.0, 60.0, ns[t]);
        SpectrumRequest rq;
        rq.V = soliton_profile(spec, g);
        rq.count = 3;
        rq.want_vectors = false;
        const auto sp = lowest_eigenpairs(rq);
        double e = 0.0;
        for (int j = 0; j < 3; ++j) e = std::max(e, std::abs(sp.eigenvalues[j] - exact[j]));
        errs[t] = e;
    }
    const double order = std::log2(errs[0] / errs[1]);
    r.pass = errs[0] <= 1e-4 && order >= 1.9;
    r.details = fmt("max|dl|=%.2e (tol 1e-4), doubling order %.2f (need >=1.9)", errs[0], order);
    return r;
}

CriterionResult crit2_gamma32_identity() {
    CriterionResult r{2, "gamma=3/2 identity on m-solitons", false, ""};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> bdist(0.3, 1.0), xdist(-12.0, 12.0);
    const Grid1D g(-60.0, 60.0, 8192);
    double worst = 0.0;
    for (int m = 1; m <= 4; ++m) {
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<double> b(m), x(m);
            for (;;) {
                for (int j = 0; j < m; ++j) b[j] = bdist(rng);
                std::sort(b.begin(), b.end(), std::greater<>());
                bool ok = true;
                for (int j = 1; j < m; ++j)
                    if (b[j - 1] - b[j] < 0.08) ok = false;
                if (ok) break;
            }
            for (int j = 0; j < m; ++j) x[j] = xdist(rng);
            const auto V = soliton_profile(SolitonSpec(b, x), g);
            const auto rep = riesz_ratio(V, 1.5, m);
            worst = std::max(worst, std::abs(rep.ratio - 0.1875));
        }
    }
    r.pass = worst <= 1e-4;
    r.details = fmt("worst |ratio-3/16| = %.2e over 12 specs (tol 1e-4)", worst);
    return r;
}

CriterionResult crit3_strict_inequality() {
    CriterionResult r{3, "strict inequality off the soliton manifold", false, ""};
    const Grid1D g(-60.0, 60.0, 8192);
    int checked = 0, violations = 0;
    double max_ratio = 0.0;
    for (int s = 0; s < 100; ++s) {
        std::mt19937_64 rng(100 + s);
        const auto V = gaussian_mix_1d(g, rng, 3);
        const auto rep = riesz_ratio(V, 1.5, 10);
        max_ratio = std::max(max_ratio, rep.ratio);
        ++checked;
        if (rep.ratio >= 0.1875 - 1e-4) {
            const auto fit = manifold_distance(V, 6);
            if (fit.l2_distance > 1e-2) ++violations;
        }
    }
    r.pass = violations == 0;
    r.details = fmt("%d bumps, max ratio %.6f, %d violations of ratio<3/16-1e-4 when dist>1e-2",
                    checked, max_ratio, violations);
    return r;
}

CriterionResult crit4_scf_one_bubble() {
    CriterionResult r{4, "SCF recovers the 1-bubble at gamma=3/2", false, ""};
    ScfConfig cfg;
    cfg.gamma = 1.5;
    cfg.dim = 1;
    cfg.n_states = 1;
    cfg.box = 40.0;
    cfg.grid_n = 5461;
    cfg.tol_fixed_point = 1e-10;
    cfg.max_iter = 400;
    cfg.init.kind = InitSpec::Kind::gaussian;
    cfg.init.width = 2.0;
    const auto res = run_scf(cfg);
    const auto fit = manifold_distance(res.V_star, 1);
    const double lam1 = res.spectrum.eigenvalues[0];
    const double want_rate = 2.0 * std::sqrt(-lam1);
    const bool okL = std::abs(res.L_estimate - 0.1875) <= 1e-4;
    const bool okD = fit.l2_distance <= 1e-3;
    const bool okG = gap_check(res);
    const bool okR = std::abs(res.decay_rate_fit - want_rate) <= 0.10 * want_rate;
    r.pass = okL && okD && okG && okR && res.converged;
    r.details = fmt("L=%.6f (d %.1e), dist=%.2e, gap_check=%d, decay %.4f vs %.4f, conv=%d",
                    res.L_estimate, std::abs(res.L_estimate - 0.1875), fit.l2_distance, okG,
                    res.decay_rate_fit, want_rate, int(res.converged));
    return r;
}

CriterionResult crit5_scf_two_bubble() {
    CriterionResult r{5, "SCF N=2 at gamma=3/2 lands on the 2-soliton manifold", false, ""};
    ScfConfig cfg;
    cfg.gamma = 1.5;
    cfg.dim = 1;
    cfg.n_states = 2;
    cfg.box = 40.0;
    cfg.grid_n = 4096;
    cfg.tol_fixed_point = 1e-5; // the fixed-point set is a manifold; the
                                // residual plateaus near 1e-6 while drifting
    cfg.max_iter = 1500;
    cfg.init.kind = InitSpec::Kind::two_bump;
    cfg.init.amplitude = 1.4;
    cfg.init.center = -8.0;
    cfg.init.width = std::sqrt(3.0);
    cfg.init.amplitude2 = 0.6;
    cfg.init.center2 = 8.0;
    cfg.init.width2 = 2.0;
    const auto res = run_scf(cfg);
    const auto fit = manifold_distance(res.V_star, 2);
    const bool okD = fit.l2_distance <= 1e-2;
    const bool okL = std::abs(res.L_estimate - 0.1875) <= 1e-3;
    r.pass = okD && okL && res.converged;
    r.details = fmt("dist=%.2e (tol 1e-2), L=%.6f, fitted m=%d, conv=%d, iters=%d",
                    fit.l2_distance, res.L_estimate, fit.order, int(res.converged),
                    res.iterations);
    return r;
}

CriterionResult crit6_binding_gamma2() {
    CriterionResult r{6, "binding regime at gamma=2", false, ""};
    ScfConfig c1;
    c1.gamma = 2.0;
    c1.dim = 1;
    c1.n_states = 1;
    c1.box = 40.0;
    c1.grid_n = 4096;
    c1.tol_fixed_point = 1e-10;
    c1.max_iter = 600;
    c1.init.kind = InitSpec::Kind::gaussian;
    c1.init.width = 2.0;
    const auto r1 = run_scf(c1);

    ScfConfig c2 = c1;
    c2.n_states = 2;
    c2.max_iter = 2000;
    c2.tol_fixed_point = 1e-9;
    c2.init.kind = InitSpec::Kind::two_bump;
    c2.init.amplitude = 1.4;
    c2.init.center = -6.0;
    c2.init.width = std::sqrt(3.0);
    c2.init.amplitude2 = 0.6;
    c2.init.center2 = 6.0;
    c2.init.width2 = 2.0;
    const auto r2 = run_scf(c2);

    const auto bc = binding_correction(r1.V_star, 2.0, 1, 15.0, 1);
    const bool okDiff = r2.L_estimate - r1.L_estimate > 1e-4;
    const bool okA = bc.A_R > 0.0;
    const bool okT = bc.trial_ratio > r1.L_estimate;
    r.pass = okDiff && okA && okT;
    r.details = fmt("L2-L1=%.3e (> 1e-4), A_R=%.3e (> 0), trial-L1=%.3e (> 0)",
                    r2.L_estimate - r1.L_estimate, bc.A_R, bc.trial_ratio - r1.L_estimate);
    return r;
}

CriterionResult crit7_el_fixed_point() {
    CriterionResult r{7, "Euler-Lagrange map fixes exact solitons", false, ""};
    const Grid1D g(-60.0, 60.0, 8192);
    const double b1 = std::cbrt(3.0 / 16.0);
    const auto V1 = soliton_profile(SolitonSpec({b1}, {0.0}), g);
    const auto E1 = euler_lagrange_map(V1, 1.5, 1, 3.0 / 16.0);
    const double d1 = l2_relative_diff(V1, E1);

    const double c = std::cbrt(3.0 / 16.0 / (0.8 * 0.8 * 0.8 + 0.5 * 0.5 * 0.5));
    const auto V2 =
        soliton_profile(SolitonSpec({0.8 * c, 0.5 * c}, {-3.0, 4.0}), g);
    const auto E2 = euler_lagrange_map(V2, 1.5, 2, 3.0 / 16.0);
    const double d2 = l2_relative_diff(V2, E2);

    r.pass = d1 <= 1e-5 && d2 <= 1e-5;
    r.details = fmt("1-soliton rel %.2e, 2-soliton rel %.2e (tol 1e-5)", d1, d2);
    return r;
}

CriterionResult crit8_clr_sphere() {
    CriterionResult r{8, "CLR sphere potentials in d=3", false, ""};
    const RadialGrid g(200.0, 16384, 3);
    const auto v1 = sphere_potential({1, 3}, g);
    const auto b1 = mu_spectrum(v1.field, 8);
    int cluster = 0;
    bool has_l1 = false, has_l0 = false;
    for (double mu : b1.mus)
        if (std::abs(mu - 1.0) <= 1e-3) ++cluster;
    for (const auto& c : b1.channels) {
        if (std::abs(c.value - 1.0) <= 1e-3) {
            if (c.l == 1) has_l1 = true;
            if (c.l == 0) has_l0 = true;
        }
    }
    const auto v0 = sphere_potential({0, 3}, g);
    const auto b0 = mu_spectrum(v0.field, 5);
    const bool okS1 = std::abs(b0.mus[0] - 1.0) <= 1e-3;
    const bool okS2 = std::abs(b0.mus[1] - 0.2) <= 1e-3;
    r.pass = cluster == 4 && has_l1 && has_l0 && okS1 && okS2;
    r.details = fmt("V1 level-1 cluster mult=%d (need 4, l=1 present=%d), sobolev mu1=%.5f mu2=%.5f",
                    cluster, int(has_l1), b0.mus[0], b0.mus[1]);
    return r;
}

CriterionResult crit9_d7_gain() {
    CriterionResult r{9, "d=7 strict gain factor", false, ""};
    const RadialGrid g(200.0, 16384, 7);
    const auto v1 = sphere_potential({1, 7}, g);
    const auto b1 = mu_spectrum(v1.field, 10);
    const auto v0 = sphere_potential({0, 7}, g);
    const auto b0 = mu_spectrum(v0.field, 2);
    const double got = b1.ell_estimates.at(9) / b0.ell_estimates.at(1);
    const double want = std::pow(5.0, 3.5) / std::pow(9.0, 2.5);
    r.pass = std::abs(got / want - 1.0) <= 0.01;
    r.details = fmt("ratio %.6f vs %.6f (rel err %.2e, tol 1%%)", got, want,
                    std::abs(got / want - 1.0));
    return r;
}

CriterionResult crit10_inversion() {
    CriterionResult r{10, "inversion invariance of mu", false, ""};
    const RadialGrid g(200.0, 16384, 3);
    std::mt19937_64 rng(42);
    const auto V = radial_bump(g, rng, 6.0);
    const auto W = inversion_transform(V);
    const auto mv = mu_spectrum(V, 3);
    const auto mw = mu_spectrum(W.field, 3);
    double worst = 0.0;
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(mv.mus[j] - mw.mus[j]));

    const auto sob = sphere_potential({0, 3}, g);
    const auto sw = inversion_transform(sob.field);
    double fixed = 0.0;
    for (int i = 0; i < sob.field.size(); ++i)
        fixed = std::max(fixed, std::abs(sw.field.values[i] - sob.field.values[i]));

    r.pass = worst <= 1e-3 && fixed <= 1e-3;
    r.details = fmt("max|dmu| %.2e (tol 1e-3), sobolev fixed-point sup %.2e", worst, fixed);
    return r;
}

CriterionResult crit11_bs_principle() {
    CriterionResult r{11, "Birman-Schwinger counting cross-check", false, ""};
    const RadialGrid g(60.0, 8192, 3);
    int agree = 0;
    for (int s = 0; s < 20; ++s) {
        std::mt19937_64 rng(500 + s);
        std::uniform_real_distribution<double> sc(2.0, 14.0);
        const auto V = radial_bump(g, rng, sc(rng));
        const auto bs = mu_spectrum(V, 16);
        int count_mu = 0;
        for (double mu : bs.mus)
            if (mu > 1.0 + 1e-6) ++count_mu;
        SpectrumRequest rq;
        rq.V = V;
        rq.count = 16;
        rq.want_vectors = false;
        const auto sp = lowest_eigenpairs(rq);
        if (count_mu == sp.negative_count) ++agree;
    }
    r.pass = agree == 20;
    r.details = fmt("%d/20 bumps agree on #{mu>1} == #negative eigenvalues", agree);
    return r;
}

CriterionResult crit12_dichotomy() {
    CriterionResult r{12, "dichotomy decoupling of displaced bumps", false, ""};
    const Grid1D g(-80.0, 80.0, 8192);
    const double h = g.h();
    std::vector<double> single_vals(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i);
        single_vals[i] = 0.25 * std::exp(-0.5 * x * x);
    }
    const PotentialField Vb(g, single_vals);
    SpectrumRequest rq;
    rq.V = Vb;
    rq.count = 4;
    rq.want_vectors = false;
    const auto sp = lowest_eigenpairs(rq);
    std::vector<double> single;
    for (int j = 0; j < sp.negative_count; ++j) single.push_back(sp.eigenvalues[j]);
    std::vector<double> doubled;
    for (double v : single) {
        doubled.push_back(v);
        doubled.push_back(v);
    }
    std::sort(doubled.begin(), doubled.end());

    double errs[2];
    const double seps[2] = {30.0, 60.0};
    for (int t = 0; t < 2; ++t) {
        const int k = static_cast<int>(std::lround(0.5 * seps[t] / h));
        std::vector<double> pair_vals(g.n, 0.0);
        for (int i = 0; i < g.n; ++i) {
            if (i - k >= 0) pair_vals[i] += single_vals[i - k];
            if (i + k < g.n) pair_vals[i] += single_vals[i + k];
        }
        SpectrumRequest rp;
        rp.V = PotentialField(g, pair_vals);
        rp.count = static_cast<int>(doubled.size());
        rp.want_vectors = false;
        const auto pp = lowest_eigenpairs(rp);
        double e = 0.0;
        for (size_t j = 0; j < doubled.size(); ++j)
            e = std::max(e, std::abs(pp.eigenvalues[j] - doubled[j]));
        errs[t] = e;
    }
    r.pass = errs[1] <= 0.5 * errs[0];
    r.details = fmt("err(R=30)=%.3e err(R=60)=%.3e ratio=%.1f (need >=2)", errs[0], errs[1],
                    errs[0] / std::max(errs[1], 1e-300));
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(bool quick) {
    using Fn = std::function<CriterionResult()>;
    struct Entry {
        int id;
        Fn fn;
        bool in_quick;
    };
    const std::vector<Entry> entries = {
        {1, crit1_soliton_oracle, true},  {2, crit2_gamma32_identity, true},
        {3, crit3_strict_inequality, false}, {4, crit4_scf_one_bubble, true},
        {5, crit5_scf_two_bubble, false}, {6, crit6_binding_gamma2, false},
        {7, crit7_el_fixed_point, true},  {8, crit8_clr_sphere, true},
        {9, crit9_d7_gain, true},         {10, crit10_inversion, true},
        {11, crit11_bs_principle, false}, {12, crit12_dichotomy, true},
    };
    std::vector<CriterionResult> out;
    for (const auto& e : entries) {
        if (quick && !e.in_quick) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult cr;
        try {
            cr = e.fn();
        } catch (const std::exception& ex) {
            cr.id = e.id;
            cr.pass = false;
            cr.details = std::string("exception: ") + ex.what();
        }
        cr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (cr.id == 1 && cr.seconds >= 30.0) {
            cr.pass = false;
            cr.details += fmt(" [runtime %.1fs exceeds 30s]", cr.seconds);
        }
        out.push_back(std::move(cr));
    }
    return out;
}

int report_acceptance(const std::vector<CriterionResult>& results) {
    int failures = 0;
    for (const auto& r : results) {
        std::printf("criterion %2d %s  %-55s [%5.1fs] %s\n", r.id,
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.details.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%zu criteria run, %d failed\n", results.size(), failures);
    return failures;
}

} // namespace ltlab
