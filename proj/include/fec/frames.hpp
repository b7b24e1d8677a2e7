#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fec/geometry.hpp"

namespace fec {

using Complex = std::complex<double>;

/// Tensor Fourier frame exp(iπ x·l / T) on R = [-T, T]^2.
///
/// Odd axis sizes N = 2n+1 use the symmetric index range [-n, n]. Even sizes
/// use the half-open range [-N/2, N/2 - 1] so that sweeps over arbitrary N
/// keep N_Λ = N^2.
struct FrameSpec {
  int n;                // per-axis half-degree (max |l| over the range)
  int axis_size;        // N
  double half_width;    // T
  double trunc_tol;     // ε

  static FrameSpec from_half_degree(int n, double T = 2.0, double eps = 1e-14) {
    return make(2 * n + 1, T, eps);
  }
  static FrameSpec from_axis_size(int N, double T = 2.0, double eps = 1e-14) {
    return make(N, T, eps);
  }

  int lmin() const { return (axis_size % 2) ? -(axis_size - 1) / 2 : -axis_size / 2; }
  int lmax() const { return (axis_size % 2) ? (axis_size - 1) / 2 : axis_size / 2 - 1; }
  int num_modes() const { return axis_size * axis_size; }  // N_Λ

 private:
  static FrameSpec make(int N, double T, double eps) {
    if (N < 1) throw std::invalid_argument("frame axis size must be >= 1");
    if (T <= 1.0) throw std::invalid_argument("embedding half-width T must be > 1");
    if (eps <= 0.0 || eps >= 1.0)
      throw std::invalid_argument("truncation tolerance must lie in (0, 1)");
    return FrameSpec{N / 2, N, T, eps};
  }
};

struct MultiIndex {
  int l1{};
  int l2{};
};

enum class DerivOrder { value, dx, dy, dxx, dyy };

/// Row-major enumeration of the index set, (lmin,lmin) .. (lmax,lmax).
inline std::vector<MultiIndex> linear_index(const FrameSpec& spec) {
  std::vector<MultiIndex> idx;
  idx.reserve(spec.num_modes());
  for (int l1 = spec.lmin(); l1 <= spec.lmax(); ++l1)
    for (int l2 = spec.lmin(); l2 <= spec.lmax(); ++l2) idx.push_back({l1, l2});
  return idx;
}

namespace detail {

inline Complex deriv_factor(const FrameSpec& spec, const MultiIndex& l, DerivOrder d) {
  const double w = std::numbers::pi / spec.half_width;
  switch (d) {
    case DerivOrder::value: return {1.0, 0.0};
    case DerivOrder::dx: return {0.0, w * l.l1};
    case DerivOrder::dy: return {0.0, w * l.l2};
    case DerivOrder::dxx: return {-(w * l.l1) * (w * l.l1), 0.0};
    case DerivOrder::dyy: return {-(w * l.l2) * (w * l.l2), 0.0};
  }
  throw std::logic_error("unreachable");
}

/// Phases exp(iπ c l / T) for l = lmin..lmax, one complex multiply per entry.
inline void axis_phases(const FrameSpec& spec, double coord, std::vector<Complex>& out) {
  const double w = std::numbers::pi / spec.half_width;
  const int count = spec.axis_size;
  out.resize(count);
  const Complex step = std::polar(1.0, w * coord);
  Complex cur = std::polar(1.0, w * coord * spec.lmin());
  for (int j = 0; j < count; ++j, cur *= step) out[j] = cur;
}

}  // namespace detail

inline Complex eval_basis(const FrameSpec& spec, const MultiIndex& l, const Point2& p,
                          DerivOrder d = DerivOrder::value) {
  const double w = std::numbers::pi / spec.half_width;
  return detail::deriv_factor(spec, l, d) *
         std::polar(1.0, w * (l.l1 * p.x + l.l2 * p.y));
}

/// |points| x N_Λ evaluation matrix; entry (k, j) = scale * d-derivative of
/// basis j at point k, columns ordered by linear_index.
inline Eigen::MatrixXcd eval_matrix(const FrameSpec& spec,
                                    const std::vector<Point2>& points, DerivOrder d,
                                    double scale = 1.0) {
  if (points.empty()) throw std::invalid_argument("eval_matrix: empty point list");
  const int nl = spec.num_modes();
  const int na = spec.axis_size;
  Eigen::MatrixXcd a(points.size(), nl);
  std::vector<Complex> ax, ay;
  for (std::size_t k = 0; k < points.size(); ++k) {
    detail::axis_phases(spec, points[k].x, ax);
    detail::axis_phases(spec, points[k].y, ay);
    int col = 0;
    for (int i1 = 0; i1 < na; ++i1) {
      const MultiIndex base{spec.lmin() + i1, 0};
      for (int i2 = 0; i2 < na; ++i2, ++col) {
        const MultiIndex l{base.l1, spec.lmin() + i2};
        a(k, col) = scale * detail::deriv_factor(spec, l, d) * ax[i1] * ay[i2];
      }
    }
  }
  return a;
}

/// Synthesis sum scale * Σ c_j (d-derivative of basis j) at one point.
inline Complex synthesize(const FrameSpec& spec, const Eigen::VectorXcd& coeffs,
                          const Point2& p, DerivOrder d = DerivOrder::value,
                          double scale = 1.0) {
  const int na = spec.axis_size;
  thread_local std::vector<Complex> ax, ay;
  detail::axis_phases(spec, p.x, ax);
  detail::axis_phases(spec, p.y, ay);
  Complex acc{0.0, 0.0};
  int col = 0;
  for (int i1 = 0; i1 < na; ++i1) {
    Complex inner{0.0, 0.0};
    for (int i2 = 0; i2 < na; ++i2, ++col) {
      const MultiIndex l{spec.lmin() + i1, spec.lmin() + i2};
      inner += coeffs[col] * detail::deriv_factor(spec, l, d) * ay[i2];
    }
    acc += inner * ax[i1];
  }
  return scale * acc;
}

}  // namespace fec
