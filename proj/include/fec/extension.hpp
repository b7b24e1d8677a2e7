#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>

#include "fec/frames.hpp"
#include "fec/geometry.hpp"
#include "fec/linalg.hpp"
#include "fec/nodes.hpp"

namespace fec {

using ComplexField = std::function<Complex(const Point2&)>;

/// Discrete Fourier extension of a function on an irregular domain.
///
/// `coeffs` is the raw solution of the scaled collocation system; the
/// synthesis scale used during the fit is folded into evaluation so that
/// fit -> evaluate is scale-consistent. `scaled_coeffs()` gives the plain
/// frame coefficients a_l.
struct Approximant {
  FrameSpec spec;
  Eigen::VectorXcd coeffs;
  double synth_scale = 1.0;
  TsvdReport report;
  std::size_t n_interior = 0;
  std::size_t n_boundary = 0;
  std::optional<GridSpec> grid;

  Eigen::VectorXcd scaled_coeffs() const { return synth_scale * coeffs; }
};

inline Complex evaluate(const Approximant& ap, const Point2& p,
                        DerivOrder d = DerivOrder::value) {
  return synthesize(ap.spec, ap.coeffs, p, d, ap.synth_scale);
}

inline Eigen::VectorXcd evaluate(const Approximant& ap, const std::vector<Point2>& pts,
                                 DerivOrder d = DerivOrder::value) {
  Eigen::VectorXcd out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = evaluate(ap, pts[i], d);
  return out;
}

/// Least-squares fit at explicit nodes; system rows carry `row_scale`, the
/// right-hand side carries the raw samples f(x_k).
inline Approximant fit_at_nodes(const ComplexField& f, const std::vector<Point2>& nodes,
                                const FrameSpec& spec, double row_scale,
                                std::optional<GridSpec> grid = std::nullopt) {
  if (nodes.size() <= static_cast<std::size_t>(spec.num_modes()))
    throw std::runtime_error("undersampled system: N_Omega = " +
                             std::to_string(nodes.size()) +
                             " <= N_Lambda = " + std::to_string(spec.num_modes()));
  const Eigen::MatrixXcd a = eval_matrix(spec, nodes, DerivOrder::value, row_scale);
  Eigen::VectorXcd b(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) b[k] = f(nodes[k]);
  auto [x, report] = tsvd_solve(a, b, spec.trunc_tol);
  return Approximant{spec, std::move(x), row_scale, std::move(report),
                     nodes.size(), 0, grid};
}

/// Fit on P_Ω = (tensor grid on R) ∩ interior(Ω), rows scaled by 1/sqrt(N_R).
inline Approximant fit(const ComplexField& f, const Domain& d, const FrameSpec& spec,
                       const GridSpec& g) {
  const auto interior = restrict_interior(tensor_grid(g), d);
  const double n_r = static_cast<double>(g.mx) * g.my;
  return fit_at_nodes(f, interior, spec, 1.0 / std::sqrt(n_r), g);
}

/// Sup-norm error over an interior-restricted tensor grid.
inline double max_error_on_grid(const Approximant& ap, const ComplexField& f,
                                const Domain& d, const GridSpec& eval_grid) {
  const auto pts = restrict_interior(tensor_grid(eval_grid), d);
  if (pts.empty()) throw std::runtime_error("max_error: empty evaluation set");
  double err = 0.0;
  for (const auto& p : pts) err = std::max(err, std::abs(f(p) - evaluate(ap, p)));
  return err;
}

/// Error grid `eval_density` times finer than the fit grid.
inline double max_error(const Approximant& ap, const ComplexField& f, const Domain& d,
                        int eval_density = 2) {
  if (eval_density < 1) throw std::invalid_argument("eval_density must be >= 1");
  if (!ap.grid) throw std::runtime_error("max_error: approximant carries no fit grid");
  return max_error_on_grid(ap, f, d, ap.grid->refined(eval_density));
}

/// Real-valued field lifted to the complex interface.
inline ComplexField real_field(std::function<double(const Point2&)> f) {
  return [f = std::move(f)](const Point2& p) { return Complex{f(p), 0.0}; };
}

}  // namespace fec
