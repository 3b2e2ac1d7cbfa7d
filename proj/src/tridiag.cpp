#include "ltlab/tridiag.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "ltlab/errors.hpp"

namespace ltlab {

TridiagEigen lowest_tridiag_eigenpairs(const std::vector<double>& diag,
                                       const std::vector<double>& off, int k,
                                       bool want_vectors) {
    const int n = static_cast<int>(diag.size());
    if (n < 1 || static_cast<int>(off.size()) != n - 1)
        throw invalid_input("lowest_tridiag_eigenpairs: inconsistent sizes");
    k = std::min(k, n);
    if (k < 1) throw invalid_input("lowest_tridiag_eigenpairs: k must be >= 1");

    std::vector<double> d = diag, e = off;
    std::vector<double> w(n);
    std::vector<lapack_int> iblock(n), isplit(n);
    lapack_int m = 0, nsplit = 0;

    lapack_int info = LAPACKE_dstebz('I', want_vectors ? 'B' : 'E', n, 0.0, 0.0, 1, k,
                                     0.0, d.data(), e.data(), &m, &nsplit, w.data(),
                                     iblock.data(), isplit.data());
    if (info != 0) throw numerical_failure("dstebz failed", double(info));

    TridiagEigen out;
    out.values.assign(w.begin(), w.begin() + m);
    if (want_vectors) {
        std::vector<double> z(static_cast<size_t>(n) * m);
        std::vector<lapack_int> ifail(m);
        info = LAPACKE_dstein(LAPACK_COL_MAJOR, n, d.data(), e.data(), m, w.data(),
                              iblock.data(), isplit.data(), z.data(), n, ifail.data());
        if (info != 0) throw numerical_failure("dstein failed", double(info));
        out.vectors.resize(m);
        for (int j = 0; j < m; ++j)
            out.vectors[j].assign(z.begin() + static_cast<size_t>(j) * n,
                                  z.begin() + static_cast<size_t>(j + 1) * n);
    }
    return out;
}

TridiagSolver::TridiagSolver(const std::vector<double>& diag, const std::vector<double>& off)
    : d_(diag), l_(off.size()), off_(off) {
    const size_t n = diag.size();
    for (size_t i = 1; i < n; ++i) {
        if (d_[i - 1] <= 0.0)
            throw numerical_failure("TridiagSolver: matrix not positive definite", d_[i - 1]);
        l_[i - 1] = off_[i - 1] / d_[i - 1];
        d_[i] -= l_[i - 1] * off_[i - 1];
    }
}

std::vector<double> TridiagSolver::solve(const std::vector<double>& b) const {
    const size_t n = d_.size();
    std::vector<double> x(b);
    for (size_t i = 1; i < n; ++i) x[i] -= l_[i - 1] * x[i - 1];
    for (size_t i = 0; i < n; ++i) x[i] /= d_[i];
    for (size_t i = n - 1; i-- > 0;) x[i] -= l_[i] * x[i + 1];
    return x;
}

} // namespace ltlab
