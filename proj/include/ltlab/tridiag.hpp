#ifndef LTLAB_TRIDIAG_HPP
#define LTLAB_TRIDIAG_HPP

#include <vector>

namespace ltlab {

/// Eigenpairs of a symmetric tridiagonal matrix, lowest `k` by bisection +
/// inverse iteration (LAPACK dstebz/dstein).
struct TridiagEigen {
    std::vector<double> values;               // ascending, size k
    std::vector<std::vector<double>> vectors; // unit 2-norm, empty if not requested
};

TridiagEigen lowest_tridiag_eigenpairs(const std::vector<double>& diag,
                                       const std::vector<double>& off, int k,
                                       bool want_vectors);

/// Solves T x = b for symmetric positive definite tridiagonal T (Thomas / LDL^T).
class TridiagSolver {
  public:
    TridiagSolver(const std::vector<double>& diag, const std::vector<double>& off);
    std::vector<double> solve(const std::vector<double>& b) const;

  private:
    std::vector<double> d_; // pivots
    std::vector<double> l_; // subdiagonal multipliers
    std::vector<double> off_;
};

} // namespace ltlab

#endif
