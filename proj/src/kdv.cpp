#include "ltlab/kdv.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "ltlab/schrodinger.hpp"

namespace ltlab {

namespace {

constexpr int kMaxSolitonOrder = 16;
constexpr double kManifoldMass = 3.0 / 16.0;

/// Matrix exponent shifts X' that put the asymptotic bump centers at the
/// requested positions: the 1-soliton offset log(2b)/(2b) plus the pairwise
/// scattering displacement from every soliton sitting to the right.
std::vector<double> compensated_shifts(const SolitonSpec& spec) {
    const int N = spec.order();
    std::vector<double> xp(N);
    for (int j = 0; j < N; ++j) {
        double s = std::log(2.0 * spec.betas[j]) / (2.0 * spec.betas[j]);
        for (int k = 0; k < N; ++k) {
            if (k == j) continue;
            const bool right = spec.shifts[k] > spec.shifts[j] ||
                               (spec.shifts[k] == spec.shifts[j] && k > j);
            if (right)
                s += std::log((spec.betas[j] + spec.betas[k]) /
                              std::abs(spec.betas[j] - spec.betas[k])) /
                     spec.betas[j];
        }
        xp[j] = spec.shifts[j] + s;
    }
    return xp;
}

struct SubsetTable {
    std::vector<unsigned> masks;
    std::vector<double> logw;  // log det of the Cauchy minor M_S
    std::vector<double> bsum;  // sum of betas over S
};

SubsetTable subset_table(const std::vector<double>& b) {
    const int N = static_cast<int>(b.size());
    SubsetTable t;
    const unsigned total = 1u << N;
    t.masks.reserve(total);
    t.logw.reserve(total);
    t.bsum.reserve(total);
    for (unsigned mask = 0; mask < total; ++mask) {
        double w = 0.0, bs = 0.0;
        for (int j = 0; j < N; ++j) {
            if (!(mask >> j & 1u)) continue;
            bs += b[j];
            w -= std::log(2.0 * b[j]);
            for (int k = 0; k < j; ++k) {
                if (!(mask >> k & 1u)) continue;
                w += 2.0 * std::log(std::abs(b[j] - b[k]) / (b[j] + b[k]));
            }
        }
        t.masks.push_back(mask);
        t.logw.push_back(w);
        t.bsum.push_back(bs);
    }
    return t;
}

} // namespace

SolitonSpec::SolitonSpec(std::vector<double> b, std::vector<double> x)
    : betas(std::move(b)), shifts(std::move(x)) {
    validate();
}

void SolitonSpec::validate() const {
    if (betas.empty()) throw invalid_input("SolitonSpec: empty beta vector");
    if (betas.size() != shifts.size())
        throw invalid_input("SolitonSpec: betas and shifts must have equal length");
    if (static_cast<int>(betas.size()) > kMaxSolitonOrder)
        throw invalid_input("SolitonSpec: order too large");
    for (size_t j = 0; j < betas.size(); ++j) {
        if (!(betas[j] > 0.0) || !std::isfinite(betas[j]))
            throw invalid_input("SolitonSpec: betas must be positive");
        if (j > 0 && !(betas[j] < betas[j - 1]))
            throw invalid_input("SolitonSpec: betas must be strictly descending");
        if (!std::isfinite(shifts[j])) throw invalid_input("SolitonSpec: non-finite shift");
    }
}

PotentialField soliton_profile(const SolitonSpec& spec, const Grid1D& grid) {
    spec.validate();
    const int N = spec.order();
    const auto xp = compensated_shifts(spec);
    const auto tab = subset_table(spec.betas);
    const size_t S = tab.masks.size();

    std::vector<double> vals(grid.n);
    std::vector<double> phi(S);
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.node(i);
        double mx = -std::numeric_limits<double>::infinity();
        for (size_t s = 0; s < S; ++s) {
            double th = 0.0;
            for (int j = 0; j < N; ++j)
                if (tab.masks[s] >> j & 1u) th += spec.betas[j] * (x - xp[j]);
            phi[s] = tab.logw[s] - 2.0 * th;
            mx = std::max(mx, phi[s]);
        }
        double z = 0.0, m1 = 0.0, m2 = 0.0;
        for (size_t s = 0; s < S; ++s) {
            const double p = std::exp(phi[s] - mx);
            z += p;
            m1 += p * tab.bsum[s];
            m2 += p * tab.bsum[s] * tab.bsum[s];
        }
        m1 /= z;
        m2 /= z;
        // V = -Q = 2 (log det A)'' = 8 Var_p(sum_{j in S} beta_j)
        vals[i] = std::max(0.0, 8.0 * (m2 - m1 * m1));
    }
    return PotentialField(grid, std::move(vals));
}

std::vector<double> exact_spectrum(const SolitonSpec& spec) {
    spec.validate();
    std::vector<double> out(spec.order());
    for (int j = 0; j < spec.order(); ++j) out[j] = -spec.betas[j] * spec.betas[j];
    std::sort(out.begin(), out.end());
    return out;
}

SolitonSpec normalize_to_manifold(const SolitonSpec& spec) {
    spec.validate();
    double s3 = 0.0;
    for (double b : spec.betas) s3 += b * b * b;
    const double c = std::cbrt(kManifoldMass / s3);
    SolitonSpec out = spec;
    for (double& b : out.betas) b *= c;
    for (double& x : out.shifts) x /= c;
    return out;
}

namespace detail {

double logdet_dd_trace(const SolitonSpec& spec, double x) {
    const int N = spec.order();
    const auto xp = compensated_shifts(spec);
    Eigen::MatrixXd A(N, N), A1(N, N), A2(N, N);
    std::vector<double> th(N);
    for (int j = 0; j < N; ++j) th[j] = spec.betas[j] * (x - xp[j]);
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k) {
            const double bsum = spec.betas[j] + spec.betas[k];
            const double e = std::exp(-th[j] - th[k]);
            A(j, k) = (j == k ? 1.0 : 0.0) + e / bsum;
            A1(j, k) = -e;
            A2(j, k) = bsum * e;
        }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const Eigen::MatrixXd G = lu.solve(A1);
    const Eigen::MatrixXd H = lu.solve(A2);
    return H.trace() - (G * G).trace();
}

} // namespace detail

namespace {

double fit_distance(const PotentialField& V, const SolitonSpec& spec) {
    const auto& g = std::get<Grid1D>(V.grid);
    const PotentialField W = soliton_profile(spec, g);
    double s = 0.0;
    for (int i = 0; i < V.size(); ++i) {
        const double d = V.values[i] - W.values[i];
        s += V.weight(i) * d * d;
    }
    return std::sqrt(s);
}

double golden_shift(const PotentialField& V, SolitonSpec spec, int j, double lo, double hi) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    auto eval = [&](double s) {
        spec.shifts[j] = s;
        return fit_distance(V, spec);
    };
    double fc = eval(c), fd = eval(d);
    while (b - a > 1e-9) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = eval(d);
        }
    }
    return 0.5 * (a + b);
}

/// Initial shift guesses: the tallest local maxima matched to the largest betas.
std::vector<double> initial_shifts(const PotentialField& V, int m) {
    std::vector<std::pair<double, double>> peaks; // (height, position)
    for (int i = 1; i + 1 < V.size(); ++i) {
        if (V.values[i] > V.values[i - 1] && V.values[i] >= V.values[i + 1])
            peaks.emplace_back(V.values[i], V.coord(i));
    }
    std::sort(peaks.begin(), peaks.end(), [](auto a, auto b) { return a.first > b.first; });
    std::vector<double> out(m);
    double centroid = 0.0, mass = 0.0;
    for (int i = 0; i < V.size(); ++i) {
        centroid += V.weight(i) * V.values[i] * V.coord(i);
        mass += V.weight(i) * V.values[i];
    }
    centroid = mass > 0 ? centroid / mass : 0.0;
    for (int j = 0; j < m; ++j)
        out[j] = j < static_cast<int>(peaks.size()) ? peaks[j].second : centroid;
    return out;
}

} // namespace

ManifoldFit manifold_distance(const PotentialField& V, int n_max) {
    if (V.radial()) throw invalid_input("manifold_distance: 1D fields only");
    if (n_max < 1) throw invalid_input("manifold_distance: n_max must be >= 1");

    SpectrumRequest req;
    req.V = V;
    req.count = n_max;
    req.want_vectors = false;
    const auto spec = lowest_eigenpairs(req);

    std::vector<double> betas;
    for (int j = 0; j < spec.negative_count; ++j) {
        const double lam = spec.eigenvalues[j];
        if (lam < -1e-6) betas.push_back(std::sqrt(-lam));
    }
    std::sort(betas.begin(), betas.end(), std::greater<>());

    ManifoldFit best;
    best.order = 0;
    best.l2_distance = std::sqrt(lp_norm_power(V, 2.0));
    if (betas.empty()) return best;

    for (int m = 1; m <= static_cast<int>(betas.size()); ++m) {
        // project the m deepest betas onto the manifold normalization
        std::vector<double> b(betas.begin(), betas.begin() + m);
        double s3 = 0.0;
        for (double v : b) s3 += v * v * v;
        const double c = std::cbrt(3.0 / 16.0 / s3);
        for (double& v : b) v *= c;
        bool ok = true;
        for (int j = 1; j < m; ++j)
            if (!(b[j] < b[j - 1] * (1.0 - 1e-12))) ok = false;
        if (!ok) continue;
        SolitonSpec cand(b, initial_shifts(V, m));
        for (int pass = 0; pass < 3; ++pass) {
            for (int j = 0; j < m; ++j) {
                const double span = 5.0 / cand.betas[j];
                cand.shifts[j] =
                    golden_shift(V, cand, j, cand.shifts[j] - span, cand.shifts[j] + span);
            }
        }
        const double d = fit_distance(V, cand);
        if (best.order == 0 || d < best.l2_distance) {
            best.fitted_spec = cand;
            best.l2_distance = d;
            best.order = m;
        }
    }
    return best;
}

} // namespace ltlab
