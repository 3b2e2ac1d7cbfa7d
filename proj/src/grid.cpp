#include "ltlab/grid.hpp"

#include <algorithm>
#include <numbers>

namespace ltlab {

Grid1D::Grid1D(double a, double b, int n_) : x_min(a), x_max(b), n(n_) {
    if (!(x_min < x_max)) throw invalid_input("Grid1D: x_min must be < x_max");
    if (n < 3) throw invalid_input("Grid1D: n must be >= 3");
    if (!std::isfinite(x_min) || !std::isfinite(x_max))
        throw invalid_input("Grid1D: non-finite bounds");
}

std::vector<double> Grid1D::nodes() const {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = node(i);
    return xs;
}

RadialGrid::RadialGrid(double r_max_, int n_, int dim_) : r_max(r_max_), n(n_), dim(dim_) {
    if (!(r_max > 0) || !std::isfinite(r_max)) throw invalid_input("RadialGrid: r_max must be > 0");
    if (n < 3) throw invalid_input("RadialGrid: n must be >= 3");
    if (dim < 2) throw invalid_input("RadialGrid: dim must be >= 2");
}

std::vector<double> RadialGrid::nodes() const {
    std::vector<double> rs(n);
    for (int i = 0; i < n; ++i) rs[i] = node(i);
    return rs;
}

double sphere_surface(int d) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

long multiplicity_l(int l, int d) {
    if (l < 0 || d < 1) throw invalid_input("multiplicity_l: bad arguments");
    if (l == 0) return 1;
    if (d == 1) return l <= 1 ? 1 : 0;
    // (2l+d-2)/(l+d-2) * binom(l+d-2, l)
    double binom = 1.0;
    for (int i = 1; i <= l; ++i) binom *= double(d - 2 + i) / double(i);
    double m = binom * double(2 * l + d - 2) / double(l + d - 2);
    return std::lround(m);
}

double kappa_l(int l, int d) {
    return double(l) * (l + d - 2) + 0.25 * double(d - 1) * (d - 3);
}

PotentialField::PotentialField(Grid1D g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    validate();
}

PotentialField::PotentialField(RadialGrid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    validate();
}

int PotentialField::dim() const {
    return radial() ? std::get<RadialGrid>(grid).dim : 1;
}

double PotentialField::spacing() const {
    return radial() ? std::get<RadialGrid>(grid).h() : std::get<Grid1D>(grid).h();
}

double PotentialField::coord(int i) const {
    return radial() ? std::get<RadialGrid>(grid).node(i) : std::get<Grid1D>(grid).node(i);
}

std::vector<double> PotentialField::coords() const {
    return radial() ? std::get<RadialGrid>(grid).nodes() : std::get<Grid1D>(grid).nodes();
}

double PotentialField::weight(int i) const {
    const double h = spacing();
    if (!radial()) return h;
    const auto& g = std::get<RadialGrid>(grid);
    const double r = g.node(i);
    return sphere_surface(g.dim) * std::pow(r, g.dim - 1) * h;
}

std::vector<double> PotentialField::weights() const {
    std::vector<double> w(values.size());
    for (int i = 0; i < size(); ++i) w[i] = weight(i);
    return w;
}

double PotentialField::interpolate(double c) const {
    const double h = spacing();
    const double c0 = coord(0);
    const double t = (c - c0) / h;
    if (t < -1.0 || t > size()) return 0.0;
    // endpoints of the covered range carry value 0 (Dirichlet truncation)
    const long k = static_cast<long>(std::floor(t));
    const double f = t - k;
    const double lo = (k >= 0 && k < size()) ? values[k] : 0.0;
    const double hi = (k + 1 >= 0 && k + 1 < size()) ? values[k + 1] : 0.0;
    return lo * (1.0 - f) + hi * f;
}

void PotentialField::validate() const {
    const int n = radial() ? std::get<RadialGrid>(grid).n : std::get<Grid1D>(grid).n;
    if (static_cast<int>(values.size()) != n)
        throw invalid_input("PotentialField: values length does not match grid node count");
    for (double v : values) {
        if (!std::isfinite(v)) throw invalid_input("PotentialField: non-finite value");
        if (v < 0.0) throw invalid_input("PotentialField: negative value");
    }
}

double lp_norm_power(const PotentialField& V, double p) {
    if (!(p >= 1.0)) throw invalid_input("lp_norm_power: p must be >= 1");
    double s = 0.0;
    for (int i = 0; i < V.size(); ++i) s += V.weight(i) * std::pow(V.values[i], p);
    if (!std::isfinite(s)) throw invalid_input("lp_norm_power: non-finite integral");
    return s;
}

PotentialField rescale(const PotentialField& V, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw invalid_input("rescale: t must be > 0");
    PotentialField out = V;
    const double t2 = t * t;
    for (int i = 0; i < V.size(); ++i) out.values[i] = t2 * V.interpolate(t * V.coord(i));
    return out;
}

std::vector<double> mass_profile(const PotentialField& V, double p,
                                 const std::vector<double>& radii) {
    if (!(p >= 1.0)) throw invalid_input("mass_profile: p must be >= 1");
    for (size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw invalid_input("mass_profile: radii must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw invalid_input("mass_profile: radii must be increasing");
    }
    std::vector<double> out;
    out.reserve(radii.size());
    for (double R : radii) {
        double s = 0.0;
        for (int i = 0; i < V.size(); ++i) {
            const double c = V.radial() ? V.coord(i) : std::abs(V.coord(i));
            if (c <= R) s += V.weight(i) * std::pow(V.values[i], p);
        }
        out.push_back(s);
    }
    return out;
}

} // namespace ltlab
