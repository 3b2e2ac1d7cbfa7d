#include "ltlab/schrodinger.hpp"

#include <algorithm>
#include <cmath>

#include "ltlab/tridiag.hpp"

namespace ltlab {

namespace {

constexpr int kAutoLmaxCap = 64;

struct ChannelOperator {
    std::vector<double> diag;
    std::vector<double> off;
};

ChannelOperator channel_operator(const PotentialField& V, int l) {
    const int n = V.size();
    const double h = V.spacing();
    ChannelOperator op;
    op.diag.resize(n);
    op.off.assign(n - 1, -1.0 / (h * h));
    const double two_h2 = 2.0 / (h * h);
    if (V.radial()) {
        const int d = V.dim();
        const double kap = kappa_l(l, d);
        for (int i = 0; i < n; ++i) {
            const double r = V.coord(i);
            op.diag[i] = two_h2 + kap / (r * r) - V.values[i];
        }
    } else {
        for (int i = 0; i < n; ++i) op.diag[i] = two_h2 - V.values[i];
    }
    return op;
}

void normalize_l2(std::vector<double>& v, double h) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s * h);
    for (double& x : v) x /= s;
}

} // namespace

SpectrumResult lowest_eigenpairs(const SpectrumRequest& req) {
    const PotentialField& V = req.V;
    V.validate();
    if (req.count < 1) throw invalid_input("lowest_eigenpairs: count must be >= 1");
    const double h = V.spacing();

    SpectrumResult res;

    if (!V.radial()) {
        auto op = channel_operator(V, 0);
        auto eig = lowest_tridiag_eigenpairs(op.diag, op.off, req.count, req.want_vectors);
        for (size_t j = 0; j < eig.values.size(); ++j) {
            if (eig.values[j] >= 0.0) break;
            SpectrumState st;
            st.value = eig.values[j];
            st.l = 0;
            st.multiplicity = 1;
            if (req.want_vectors) {
                st.vector = std::move(eig.vectors[j]);
                normalize_l2(st.vector, h);
            }
            res.states.push_back(std::move(st));
        }
    } else {
        const bool auto_l = req.l_max < 0;
        const int cap = auto_l ? kAutoLmaxCap : req.l_max;
        long collected = 0;
        for (int l = 0;; ++l) {
            if (l > cap) {
                if (auto_l)
                    throw channel_exhaustion(cap, "lowest_eigenpairs: auto l_max cap reached");
                break;
            }
            auto op = channel_operator(V, l);
            auto eig = lowest_tridiag_eigenpairs(op.diag, op.off, req.count, req.want_vectors);
            const double channel_lowest = eig.values.empty() ? 0.0 : eig.values.front();
            for (size_t j = 0; j < eig.values.size(); ++j) {
                if (eig.values[j] >= 0.0) break;
                SpectrumState st;
                st.value = eig.values[j];
                st.l = l;
                st.multiplicity = multiplicity_l(l, V.dim());
                if (req.want_vectors) {
                    st.vector = std::move(eig.vectors[j]);
                    normalize_l2(st.vector, h);
                }
                collected += st.multiplicity;
                res.states.push_back(std::move(st));
            }
            // Channel minima are nondecreasing in l, so once the current
            // channel opens above the count-th collected level (or above 0)
            // no further channel can contribute.
            std::vector<double> flat;
            for (const auto& st : res.states)
                for (long m = 0; m < st.multiplicity; ++m) flat.push_back(st.value);
            std::sort(flat.begin(), flat.end());
            const double cutoff =
                static_cast<long>(flat.size()) >= req.count ? flat[req.count - 1] : 0.0;
            if (channel_lowest >= cutoff || channel_lowest >= 0.0) break;
            if (!auto_l && l == cap)
                throw channel_exhaustion(
                    cap, "lowest_eigenpairs: l_max too small to certify requested levels");
        }
    }

    std::sort(res.states.begin(), res.states.end(), [](const auto& a, const auto& b) {
        return a.value != b.value ? a.value < b.value : a.l < b.l;
    });

    for (size_t s = 0; s < res.states.size(); ++s) {
        for (long m = 0; m < res.states[s].multiplicity; ++m) {
            if (static_cast<int>(res.eigenvalues.size()) == req.count) break;
            res.eigenvalues.push_back(res.states[s].value);
            res.state_of_level.push_back(static_cast<int>(s));
        }
    }
    res.negative_count = static_cast<int>(res.eigenvalues.size());
    while (static_cast<int>(res.eigenvalues.size()) < req.count) {
        res.eigenvalues.push_back(0.0);
        res.state_of_level.push_back(-1);
    }
    return res;
}

double vanishing_bound_probe(const PotentialField& V, double p, double r) {
    if (!(r > 0.0)) throw invalid_input("vanishing_bound_probe: r must be > 0");
    if (!(p >= 1.0)) throw invalid_input("vanishing_bound_probe: p must be >= 1");
    const int n = V.size();
    std::vector<double> prefix(n + 1, 0.0);
    for (int i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] + V.weight(i) * std::pow(V.values[i], p);
    const double h = V.spacing();
    const int half = static_cast<int>(std::floor(r / h));
    double best = 0.0;
    for (int c = 0; c < n; ++c) {
        const int lo = std::max(0, c - half);
        const int hi = std::min(n - 1, c + half);
        best = std::max(best, prefix[hi + 1] - prefix[lo]);
    }
    return best;
}

} // namespace ltlab
