#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ltlab/functional.hpp"
#include "ltlab/kdv.hpp"
#include "ltlab/schrodinger.hpp"

using namespace ltlab;

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(SolitonSpec({0.5, 0.8}, {0.0, 0.0}), invalid_input);
    CHECK_THROWS_AS(SolitonSpec({0.8, 0.8}, {0.0, 0.0}), invalid_input);
    CHECK_THROWS_AS(SolitonSpec({0.8, -0.1}, {0.0, 0.0}), invalid_input);
    CHECK_THROWS_AS(SolitonSpec({0.8}, {0.0, 1.0}), invalid_input);
    CHECK_THROWS_AS(SolitonSpec({}, {}), invalid_input);
}

TEST_CASE("1-soliton profile is 2 b^2 sech^2(b(x - X))") {
    Grid1D g(-40.0, 40.0, 4096);
    for (double b : {0.4, std::cbrt(3.0 / 16.0), 1.1}) {
        for (double X : {0.0, -3.5}) {
            const auto V = soliton_profile(SolitonSpec({b}, {X}), g);
            for (int i = 100; i < g.n; i += 331) {
                const double x = g.node(i);
                const double want = 2.0 * b * b / std::pow(std::cosh(b * (x - X)), 2);
                CHECK(V.values[i] == doctest::Approx(want).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("L2 norm squared equals 16/3 sum beta^3") {
    Grid1D g(-60.0, 60.0, 8192);
    const auto V = soliton_profile(SolitonSpec({0.9, 0.6, 0.3}, {0.0, 0.0, 0.0}), g);
    const double want = 16.0 / 3.0 * (0.729 + 0.216 + 0.027);
    CHECK(lp_norm_power(V, 2.0) == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("widely separated 2-soliton equals the sum of its 1-solitons") {
    Grid1D g(-60.0, 60.0, 8192);
    const auto both = soliton_profile(SolitonSpec({0.8, 0.5}, {-30.0, 30.0}), g);
    const auto a = soliton_profile(SolitonSpec({0.8}, {-30.0}), g);
    const auto b = soliton_profile(SolitonSpec({0.5}, {30.0}), g);
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i)
        worst = std::max(worst, std::abs(both.values[i] - a.values[i] - b.values[i]));
    CHECK(worst < 1e-6);
}

TEST_CASE("exact spectrum and shift independence") {
    const SolitonSpec s({0.8, 0.5}, {0.0, 0.0});
    const auto ev = exact_spectrum(s);
    CHECK(ev[0] == doctest::Approx(-0.64));
    CHECK(ev[1] == doctest::Approx(-0.25));
    CHECK(exact_spectrum(SolitonSpec({0.7}, {2.0}))[0] == doctest::Approx(-0.49));

    // shifting the profile does not move the computed spectrum
    Grid1D g(-60.0, 60.0, 4096);
    SpectrumRequest rq;
    rq.count = 2;
    rq.want_vectors = false;
    rq.V = soliton_profile(s, g);
    const auto sp0 = lowest_eigenpairs(rq);
    rq.V = soliton_profile(SolitonSpec({0.8, 0.5}, {-7.0, 4.0}), g);
    const auto sp1 = lowest_eigenpairs(rq);
    for (int j = 0; j < 2; ++j)
        CHECK(sp0.eigenvalues[j] == doctest::Approx(sp1.eigenvalues[j]).epsilon(1e-6));
}

TEST_CASE("normalize_to_manifold") {
    const auto one = normalize_to_manifold(SolitonSpec({1.0}, {0.0}));
    CHECK(one.betas[0] == doctest::Approx(std::cbrt(3.0 / 16.0)).epsilon(1e-14));

    const auto already = normalize_to_manifold(one);
    CHECK(already.betas[0] == doctest::Approx(one.betas[0]).epsilon(1e-14));

    const auto three = normalize_to_manifold(SolitonSpec({0.9, 0.6, 0.3}, {1.0, 0.0, -1.0}));
    double s3 = 0.0;
    for (double b : three.betas) s3 += b * b * b;
    CHECK(s3 == doctest::Approx(3.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("subset-sum profile agrees with the LU trace identities") {
    const SolitonSpec s2({0.8, 0.5}, {-2.0, 3.0});
    const SolitonSpec s3({0.9, 0.6, 0.3}, {0.0, 1.0, -1.0});
    Grid1D g(-6.0, 6.0, 241);
    const auto V2 = soliton_profile(s2, g);
    const auto V3 = soliton_profile(s3, g);
    for (int i = 0; i < g.n; i += 17) {
        const double x = g.node(i);
        CHECK(V2.values[i] ==
              doctest::Approx(-2.0 * detail::logdet_dd_trace(s2, x)).epsilon(1e-9));
        CHECK(V3.values[i] ==
              doctest::Approx(-2.0 * detail::logdet_dd_trace(s3, x)).epsilon(1e-9));
    }
}

TEST_CASE("riesz ratio of solitons is 3/16") {
    Grid1D g(-60.0, 60.0, 8192);
    const auto V = soliton_profile(SolitonSpec({0.9, 0.6, 0.3}, {-4.0, 0.0, 5.0}), g);
    CHECK(riesz_ratio(V, 1.5, 3).ratio == doctest::Approx(3.0 / 16.0).epsilon(6e-4));
}

TEST_CASE("manifold self-fit recovers an exact 2-soliton") {
    Grid1D g(-60.0, 60.0, 16384);
    const auto spec = normalize_to_manifold(SolitonSpec({0.8, 0.5}, {-5.0, 6.0}));
    const auto V = soliton_profile(spec, g);
    const auto fit = manifold_distance(V, 3);
    CHECK(fit.order == 2);
    CHECK(fit.l2_distance <= 1e-6);
    CHECK(fit.fitted_spec.betas[0] == doctest::Approx(spec.betas[0]).epsilon(1e-6));
    CHECK(fit.fitted_spec.betas[1] == doctest::Approx(spec.betas[1]).epsilon(1e-6));
}

TEST_CASE("manifold distance of a gaussian bump is positive") {
    Grid1D g(-60.0, 60.0, 8192);
    std::vector<double> vals(g.n);
    for (int i = 0; i < g.n; ++i) vals[i] = std::exp(-0.2 * g.node(i) * g.node(i));
    PotentialField V(g, vals);
    const double norm = std::sqrt(lp_norm_power(V, 2.0));
    for (double& v : V.values) v /= norm;
    const auto fit = manifold_distance(V, 3);
    CHECK(fit.l2_distance > 1e-3);
}

TEST_CASE("manifold distance is translation invariant") {
    Grid1D g(-60.0, 60.0, 8192);
    const auto spec = normalize_to_manifold(SolitonSpec({0.8, 0.5}, {-4.0, 3.0}));
    const auto d0 = manifold_distance(soliton_profile(spec, g), 2).l2_distance;
    SolitonSpec moved = spec;
    for (double& x : moved.shifts) x += 2.5;
    const auto d1 = manifold_distance(soliton_profile(moved, g), 2).l2_distance;
    CHECK(std::abs(d0 - d1) < 1e-8);
}

TEST_CASE("fit with no bound states falls back to the zero potential") {
    Grid1D g(-20.0, 20.0, 1024);
    std::vector<double> vals(g.n, 1e-6);
    PotentialField V(g, vals);
    const auto fit = manifold_distance(V, 2);
    CHECK(fit.order == 0);
    CHECK(fit.l2_distance == doctest::Approx(std::sqrt(lp_norm_power(V, 2.0))));
}

TEST_CASE("beta_N -> 0 degenerates the N-soliton to the (N-1)-soliton") {
    Grid1D g(-60.0, 60.0, 8192);
    const auto V3 = soliton_profile(SolitonSpec({0.8, 0.5, 1e-3}, {0.0, 2.0, 0.0}), g);
    const auto V2 = soliton_profile(SolitonSpec({0.8, 0.5}, {0.0, 2.0}), g);
    double gap2 = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double d = V3.values[i] - V2.values[i];
        gap2 += g.h() * d * d;
    }
    CHECK(std::sqrt(gap2) <= 1e-2);
}
