#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

namespace fec {

/// Diagnostics of one truncated-SVD least-squares solve.
struct TsvdReport {
  Eigen::VectorXd singular_values;  // descending
  int rank_eps = 0;                 // #{σ_i >= ε σ_max}
  double cond = 1.0;                // σ_max / σ_min of the full matrix
  double residual_norm = 0.0;       // ||A a - b||_2
  double solution_norm = 0.0;       // ||a||_2
};

namespace detail {

/// Thin SVD via LAPACK; divide-and-conquer first, plain Golub-Kahan fallback.
inline void thin_svd(const Eigen::MatrixXcd& a, Eigen::MatrixXcd& u, Eigen::VectorXd& s,
                     Eigen::MatrixXcd& vh) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  const int r = std::min(m, n);
  u.resize(m, r);
  s.resize(r);
  vh.resize(r, n);
  Eigen::MatrixXcd work = a;  // zgesdd destroys its input
  auto* ap = reinterpret_cast<lapack_complex_double*>(work.data());
  auto* up = reinterpret_cast<lapack_complex_double*>(u.data());
  auto* vp = reinterpret_cast<lapack_complex_double*>(vh.data());
  int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, ap, m, s.data(), up, m, vp, r);
  if (info != 0) {
    work = a;
    ap = reinterpret_cast<lapack_complex_double*>(work.data());
    std::vector<double> superb(std::max(1, r - 1));
    info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n, ap, m, s.data(), up, m,
                          vp, r, superb.data());
    if (info != 0) throw std::runtime_error("SVD failed to converge (info=" +
                                            std::to_string(info) + ")");
  }
}

}  // namespace detail

/// Minimum-norm least squares restricted to the singular subspace with
/// σ_i >= ε σ_max (relative threshold).
inline std::pair<Eigen::VectorXcd, TsvdReport> tsvd_solve(const Eigen::MatrixXcd& a,
                                                          const Eigen::VectorXcd& b,
                                                          double eps) {
  if (a.rows() < 1 || a.cols() < 1) throw std::invalid_argument("tsvd_solve: empty matrix");
  if (b.size() != a.rows())
    throw std::invalid_argument("tsvd_solve: rhs length does not match row count");
  if (eps <= 0.0 || eps >= 1.0)
    throw std::invalid_argument("tsvd_solve: tolerance must lie in (0, 1)");

  Eigen::MatrixXcd u, vh;
  Eigen::VectorXd s;
  detail::thin_svd(a, u, s, vh);

  TsvdReport report;
  report.singular_values = s;
  const double smax = s.size() ? s[0] : 0.0;
  const double smin = s.size() ? s[s.size() - 1] : 0.0;
  report.cond = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();

  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(a.cols());
  if (smax > 0.0) {
    int rank = 0;
    while (rank < s.size() && s[rank] >= eps * smax) ++rank;
    report.rank_eps = rank;
    if (rank > 0) {
      const Eigen::VectorXcd uhb = u.leftCols(rank).adjoint() * b;
      x = vh.topRows(rank).adjoint() * (uhb.array() / s.head(rank).array()).matrix();
    }
  }
  report.residual_norm = (a * x - b).norm();
  report.solution_norm = x.norm();
  return {std::move(x), report};
}

/// Number of singular values with σ_i/σ_max strictly inside (ε, 1 - ε).
inline int plunge_region_size(const TsvdReport& report, double eps) {
  const auto& s = report.singular_values;
  if (s.size() == 0) return 0;
  const double smax = s[0];
  if (smax <= 0.0) return 0;
  int count = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double v = s[i] / smax;
    if (v > eps && v < 1.0 - eps) ++count;
  }
  return count;
}

}  // namespace fec
