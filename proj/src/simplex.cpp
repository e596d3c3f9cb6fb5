#include "codiff/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace codiff {

namespace {

// Tableau layout: rows 0..m-1 are constraints, row m holds the reduced
// costs; the last column is the right-hand side. The objective row stores
// c_j - c_B^T B^{-1} A_j, so the value is -T(m, last).
class Tableau {
 public:
  Tableau(Eigen::MatrixXd t, std::vector<int> basis, double tol, int maxPivots, int& pivots)
      : t_(std::move(t)), basis_(std::move(basis)), tol_(tol), maxPivots_(maxPivots),
        pivots_(pivots) {}

  Eigen::MatrixXd& data() { return t_; }
  std::vector<int>& basis() { return basis_; }
  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int rhs() const { return static_cast<int>(t_.cols()) - 1; }

  void pivot(int r, int col) {
    if (++pivots_ > maxPivots_) throw Degenerate("simplex: pivot cap exceeded");
    t_.row(r) /= t_(r, col);
    for (int i = 0; i < t_.rows(); ++i) {
      if (i != r && t_(i, col) != 0.0) t_.row(i) -= t_(i, col) * t_.row(r);
    }
    basis_[r] = col;
  }

  // Runs Bland's rule over columns [0, ncols). Returns -1 at optimality or
  // the entering column when the problem is unbounded along it.
  int run(int ncols) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (t_(rows(), j) < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return -1;
      int leave = -1;
      double bestRatio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        if (t_(i, enter) > tol_) {
          const double ratio = t_(i, rhs()) / t_(i, enter);
          if (ratio < bestRatio - 1e-15 ||
              (std::abs(ratio - bestRatio) <= 1e-15 && basis_[i] < basis_[leave])) {
            bestRatio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return enter;
      pivot(leave, enter);
    }
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  double tol_;
  int maxPivots_;
  int& pivots_;
};

}  // namespace

SimplexResult solveSimplex(const StandardFormLP& lp, const SimplexOptions& opts) {
  const int m = static_cast<int>(lp.A.rows());
  const int n = static_cast<int>(lp.A.cols());
  if (lp.b.size() != m || lp.c.size() != n) {
    throw DimensionMismatch("solveSimplex: inconsistent LP dimensions");
  }
  SimplexResult result;
  int pivots = 0;

  // Phase 1: artificials on every row, rows flipped so that b >= 0.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    const double sign = lp.b(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * lp.A.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = sign * lp.b(i);
    basis[i] = n + i;
  }
  for (int i = 0; i < m; ++i) t.row(m) -= t.row(i);
  for (int i = 0; i < m; ++i) t(m, n + i) = 0.0;

  Tableau phase1(std::move(t), std::move(basis), opts.pivot_tol, opts.max_pivots, pivots);
  phase1.run(n + m);
  const double infeasibility = -phase1.data()(m, n + m);
  if (infeasibility > opts.pivot_tol * (1.0 + lp.b.cwiseAbs().maxCoeff())) {
    result.status = SimplexResult::Status::Infeasible;
    result.pivots = pivots;
    return result;
  }

  // Drive artificials out of the basis; rows where that is impossible are
  // redundant and get dropped.
  std::vector<int> keepRows;
  {
    auto& tab = phase1.data();
    auto& bas = phase1.basis();
    for (int i = 0; i < m; ++i) {
      if (bas[i] < n) {
        keepRows.push_back(i);
        continue;
      }
      int col = -1;
      for (int j = 0; j < n; ++j) {
        if (std::abs(tab(i, j)) > opts.pivot_tol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        phase1.pivot(i, col);
        keepRows.push_back(i);
      }
    }
  }

  // Phase 2 on the original columns.
  const int mr = static_cast<int>(keepRows.size());
  Eigen::MatrixXd t2 = Eigen::MatrixXd::Zero(mr + 1, n + 1);
  std::vector<int> basis2(mr);
  for (int r = 0; r < mr; ++r) {
    const int i = keepRows[r];
    t2.row(r).head(n) = phase1.data().row(i).head(n);
    t2(r, n) = phase1.data()(i, n + m);
    basis2[r] = phase1.basis()[i];
  }
  t2.row(mr).head(n) = lp.c.transpose();
  for (int r = 0; r < mr; ++r) {
    const double cb = lp.c(basis2[r]);
    if (cb != 0.0) t2.row(mr) -= cb * t2.row(r);
  }

  Tableau phase2(std::move(t2), std::move(basis2), opts.pivot_tol, opts.max_pivots, pivots);
  const int unboundedCol = phase2.run(n);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < mr; ++r) x(phase2.basis()[r]) = phase2.data()(r, n);
  result.x = x;
  result.pivots = pivots;

  if (unboundedCol >= 0) {
    Eigen::VectorXd ray = Eigen::VectorXd::Zero(n);
    ray(unboundedCol) = 1.0;
    for (int r = 0; r < mr; ++r) ray(phase2.basis()[r]) = -phase2.data()(r, unboundedCol);
    result.status = SimplexResult::Status::Unbounded;
    result.ray = ray;
    return result;
  }
  result.status = SimplexResult::Status::Optimal;
  result.value = lp.c.dot(x);
  return result;
}

}  // namespace codiff
