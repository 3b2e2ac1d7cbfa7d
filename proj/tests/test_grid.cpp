#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "ltlab/grid.hpp"
#include "ltlab/kdv.hpp"

using namespace ltlab;

namespace {

// Adaptive Simpson quadrature, the independent oracle for radial integrals.
double simpson(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

double adaptive(const std::function<double(double)>& f, double a, double b, double whole,
                double tol, int depth) {
    const double c = 0.5 * (a + b);
    const double left = simpson(f, a, c), right = simpson(f, c, b);
    if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(f, a, c, left, 0.5 * tol, depth + 1) +
           adaptive(f, c, b, right, 0.5 * tol, depth + 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
    return adaptive(f, a, b, simpson(f, a, b), tol, 0);
}

PotentialField one_soliton(double beta, double shift, const Grid1D& g) {
    return soliton_profile(SolitonSpec({beta}, {shift}), g);
}

} // namespace

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(Grid1D(1.0, -1.0, 100), invalid_input);
    CHECK_THROWS_AS(Grid1D(-1.0, 1.0, 2), invalid_input);
    CHECK_THROWS_AS(RadialGrid(-1.0, 100, 3), invalid_input);
    CHECK_THROWS_AS(RadialGrid(1.0, 100, 1), invalid_input);

    Grid1D g(-2.0, 2.0, 7);
    CHECK(g.h() == doctest::Approx(0.5));
    CHECK(g.node(0) == doctest::Approx(-1.5));
    CHECK(g.node(6) == doctest::Approx(1.5));

    RadialGrid r(10.0, 9, 3);
    CHECK(r.node(0) == doctest::Approx(1.0));
}

TEST_CASE("spherical harmonic multiplicities") {
    for (int l = 0; l < 6; ++l) CHECK(multiplicity_l(l, 3) == 2 * l + 1);
    CHECK(multiplicity_l(0, 7) == 1);
    CHECK(multiplicity_l(1, 7) == 7);
    CHECK(multiplicity_l(2, 4) == 9);  // degree-2 harmonics on S^3
    CHECK(multiplicity_l(1, 4) == 4);
}

TEST_CASE("lp_norm_power on the zero potential") {
    Grid1D g(-10.0, 10.0, 201);
    PotentialField V(g, std::vector<double>(201, 0.0));
    CHECK(lp_norm_power(V, 2.0) == 0.0);
}

TEST_CASE("lp_norm_power of the normalized 1-soliton is 1") {
    const double beta = std::cbrt(3.0 / 16.0);
    Grid1D g(-40.0, 40.0, 8192);
    const auto V = one_soliton(beta, 0.0, g);
    CHECK(lp_norm_power(V, 2.0) == doctest::Approx(1.0).epsilon(1e-8));
    // 16/3 beta^3 for a generic beta
    const auto W = one_soliton(0.7, 0.0, g);
    CHECK(lp_norm_power(W, 2.0) ==
          doctest::Approx(16.0 / 3.0 * 0.7 * 0.7 * 0.7).epsilon(1e-8));
}

TEST_CASE("radial lp_norm_power matches adaptive quadrature of the closed form") {
    const int d = 3;
    RadialGrid g(200.0, 16384, d);
    std::vector<double> vals(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double r = g.node(i);
        vals[i] = double(d) * (d - 2) / ((1.0 + r * r) * (1.0 + r * r));
    }
    PotentialField V(g, vals);
    const double got = lp_norm_power(V, 0.5 * d);
    const double oracle = sphere_surface(d) * integrate(
                                                  [&](double r) {
                                                      const double v =
                                                          3.0 / ((1 + r * r) * (1 + r * r));
                                                      return std::pow(v, 1.5) * r * r;
                                                  },
                                                  0.0, 200.0);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("non-finite input rejected") {
    Grid1D g(-1.0, 1.0, 5);
    std::vector<double> vals(5, 1.0);
    vals[2] = std::nan("");
    CHECK_THROWS_AS(PotentialField(g, vals), invalid_input);
    vals[2] = -0.5;
    CHECK_THROWS_AS(PotentialField(g, vals), invalid_input);
}

TEST_CASE("rescale identity and scaling law") {
    Grid1D g(-30.0, 30.0, 4096);
    const auto V = one_soliton(0.6, 1.0, g);

    const auto same = rescale(V, 1.0);
    for (int i = 0; i < V.size(); i += 97) CHECK(same.values[i] == doctest::Approx(V.values[i]));

    const double gamma = 1.5, d = 1.0;
    const double p = gamma + 0.5 * d;
    for (double t : {0.5, 2.0}) {
        const auto W = rescale(V, t);
        CHECK(lp_norm_power(W, p) ==
              doctest::Approx(std::pow(t, 2 * gamma) * lp_norm_power(V, p)).epsilon(1e-3));
    }

    // normalization by algebraic inversion of the scaling law
    const double t = std::pow(lp_norm_power(V, p), -1.0 / (2.0 * gamma));
    CHECK(lp_norm_power(rescale(V, t), p) == doctest::Approx(1.0).epsilon(1e-3));

    CHECK_THROWS_AS(rescale(V, 0.0), invalid_input);
    CHECK_THROWS_AS(rescale(V, -1.0), invalid_input);
}

TEST_CASE("rescale round trip is O(h^2)") {
    Grid1D g(-30.0, 30.0, 4096);
    const auto V = one_soliton(0.6, 0.0, g);
    const auto W = rescale(rescale(V, 1.7), 1.0 / 1.7);
    double worst = 0.0;
    for (int i = 0; i < V.size(); ++i) worst = std::max(worst, std::abs(W.values[i] - V.values[i]));
    CHECK(worst < 10.0 * g.h() * g.h());
}

TEST_CASE("quadrature consistency under grid doubling") {
    auto norm_at = [](int n) {
        Grid1D g(-30.0, 30.0, n);
        return lp_norm_power(one_soliton(0.6, 0.0, g), 2.0);
    };
    const double exact = 16.0 / 3.0 * 0.216;
    const double e1 = std::abs(norm_at(2048) - exact);
    const double e2 = std::abs(norm_at(4096) - exact);
    CHECK(e2 < 0.3 * e1); // second order
}

TEST_CASE("mass_profile exhaustion, monotonicity, split bumps") {
    Grid1D g(-60.0, 60.0, 8192);

    PotentialField zero(g, std::vector<double>(8192, 0.0));
    for (double v : mass_profile(zero, 2.0, {1.0, 5.0})) CHECK(v == 0.0);

    const auto V = one_soliton(0.6, 0.0, g);
    const auto prof = mass_profile(V, 2.0, {1.0, 5.0, 20.0, 100.0});
    for (size_t i = 1; i < prof.size(); ++i) CHECK(prof[i] >= prof[i - 1]);
    CHECK(prof.back() == doctest::Approx(lp_norm_power(V, 2.0)).epsilon(1e-12));

    // two far 1-solitons: half the p-mass inside a ball covering one bump
    std::vector<double> vals(8192);
    const auto A = one_soliton(0.6, -20.0, g);
    const auto B = one_soliton(0.6, 20.0, g);
    for (int i = 0; i < 8192; ++i) vals[i] = A.values[i] + B.values[i];
    PotentialField two(g, vals);
    const auto half = mass_profile(two, 2.0, {5.0}).front();
    // direct quadrature oracle on the explicit two-bump profile over |x|<=5
    double oracle = 0.0;
    for (int i = 0; i < 8192; ++i)
        if (std::abs(g.node(i)) <= 5.0) oracle += g.h() * vals[i] * vals[i];
    CHECK(half == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(half == doctest::Approx(0.5 * lp_norm_power(two, 2.0)).epsilon(1e-6));

    CHECK_THROWS_AS(mass_profile(V, 2.0, {5.0, 1.0}), invalid_input);
}
