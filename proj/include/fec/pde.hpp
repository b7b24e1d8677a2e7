#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fec/extension.hpp"
#include "fec/frames.hpp"
#include "fec/geometry.hpp"
#include "fec/linalg.hpp"
#include "fec/nodes.hpp"

namespace fec {

using ScalarField = std::function<double(const Point2&)>;

/// Coefficients of -div(α grad U) + β U = F; ∂xα and ∂yα are supplied
/// analytically.
struct CoefficientField {
  ScalarField alpha;
  ScalarField alpha_dx;
  ScalarField alpha_dy;
  ScalarField beta;
};

struct PdeProblem {
  Domain domain;
  CoefficientField coeffs;
  ComplexField source;     // F on the interior
  ComplexField dirichlet;  // H on the boundary
  std::optional<ComplexField> exact;
};

struct PdeSolution {
  Approximant approximant;
  TsvdReport report;
  NodeSet nodes;
  std::optional<double> max_err;
};

/// Rows of the collocation system: interior rows apply the operator through
/// the frame's analytic derivatives, boundary rows sample the basis. All
/// blocks use unit row scale.
inline std::pair<Eigen::MatrixXcd, Eigen::VectorXcd> assemble(const PdeProblem& p,
                                                              const NodeSet& ns,
                                                              const FrameSpec& spec) {
  const std::size_t ni = ns.n_interior();
  const std::size_t nb = ns.n_boundary();
  const int nl = spec.num_modes();
  if (ni + nb <= static_cast<std::size_t>(nl))
    throw std::runtime_error("undersampled system: N_I + N_B = " +
                             std::to_string(ni + nb) +
                             " <= N_Lambda = " + std::to_string(nl));

  Eigen::MatrixXcd mat(ni + nb, nl);
  Eigen::VectorXcd rhs(ni + nb);
  const double w = std::numbers::pi / spec.half_width;
  const int na = spec.axis_size;
  std::vector<Complex> ax, ay;

  for (std::size_t j = 0; j < ni; ++j) {
    const Point2& x = ns.interior[j];
    const double alpha = p.coeffs.alpha(x);
    const double beta = p.coeffs.beta(x);
    if (!(alpha > 0.0))
      throw std::runtime_error("coefficient violation: alpha <= 0 at node (" +
                               std::to_string(x.x) + ", " + std::to_string(x.y) + ")");
    if (beta < 0.0)
      throw std::runtime_error("coefficient violation: beta < 0 at node (" +
                               std::to_string(x.x) + ", " + std::to_string(x.y) + ")");
    const double ax1 = p.coeffs.alpha_dx(x);
    const double ax2 = p.coeffs.alpha_dy(x);
    detail::axis_phases(spec, x.x, ax);
    detail::axis_phases(spec, x.y, ay);
    int col = 0;
    for (int i1 = 0; i1 < na; ++i1) {
      const int l1 = spec.lmin() + i1;
      for (int i2 = 0; i2 < na; ++i2, ++col) {
        const int l2 = spec.lmin() + i2;
        // β φ - αx ∂xφ - αy ∂yφ - α (∂xxφ + ∂yyφ)
        const Complex op{beta + alpha * w * w * (double(l1) * l1 + double(l2) * l2),
                         -w * (ax1 * l1 + ax2 * l2)};
        mat(j, col) = op * ax[i1] * ay[i2];
      }
    }
    rhs[j] = p.source(x);
  }

  for (std::size_t q = 0; q < nb; ++q) {
    const Point2& x = ns.boundary[q];
    detail::axis_phases(spec, x.x, ax);
    detail::axis_phases(spec, x.y, ay);
    int col = 0;
    for (int i1 = 0; i1 < na; ++i1)
      for (int i2 = 0; i2 < na; ++i2, ++col) mat(ni + q, col) = ax[i1] * ay[i2];
    rhs[ni + q] = p.dirichlet(x);
  }
  return {std::move(mat), std::move(rhs)};
}

/// Boundary-node count as a function of (N, N_Λ).
struct BoundaryPolicy {
  enum class Kind { linear, log_count, square_style, explicit_count };
  Kind kind = Kind::linear;
  double param = 3.0;
  bool base10 = false;  // log_count only; natural log by default

  std::size_t count(int axis_size, int num_modes) const {
    switch (kind) {
      case Kind::linear:
        return static_cast<std::size_t>(std::llround(param * axis_size));
      case Kind::log_count: {
        const double lg = base10 ? std::log10(double(num_modes))
                                 : std::log(double(num_modes));
        return static_cast<std::size_t>(std::llround(param)) *
               static_cast<std::size_t>(std::floor(lg));
      }
      case Kind::square_style:
        return static_cast<std::size_t>(4 * axis_size - 4);
      case Kind::explicit_count:
        return static_cast<std::size_t>(std::llround(param));
    }
    throw std::logic_error("unreachable");
  }

  std::string describe() const {
    switch (kind) {
      case Kind::linear: return "linear:" + std::to_string(param);
      case Kind::log_count:
        return std::string(base10 ? "log10:" : "log:") + std::to_string(param);
      case Kind::square_style: return "square";
      case Kind::explicit_count: return "count:" + std::to_string(param);
    }
    return "?";
  }

  static BoundaryPolicy linear(double k) { return {Kind::linear, k, false}; }
  static BoundaryPolicy log_nodes(double c, bool base10 = false) {
    return {Kind::log_count, c, base10};
  }
  static BoundaryPolicy square() { return {Kind::square_style, 0, false}; }
  static BoundaryPolicy explicit_n(std::size_t n) {
    return {Kind::explicit_count, double(n), false};
  }
};

struct SolveOptions {
  int eval_density = 2;            // error grid refinement vs the fit grid
  std::size_t corner_extra = 0;    // extra boundary nodes per corner arc
  double corner_radius = 0.1;
};

namespace detail {

inline PdeSolution solve_impl(const PdeProblem& p, const FrameSpec& spec, NodeSet ns,
                              const GridSpec& eval_grid, const SolveOptions& opt) {
  auto [mat, rhs] = assemble(p, ns, spec);
  auto [x, report] = tsvd_solve(mat, rhs, spec.trunc_tol);
  Approximant ap{spec, std::move(x), 1.0, report, ns.n_interior(), ns.n_boundary(),
                 eval_grid};
  std::optional<double> err;
  if (p.exact) err = max_error_on_grid(ap, *p.exact, p.domain, eval_grid);
  return PdeSolution{std::move(ap), std::move(report), std::move(ns), err};
}

}  // namespace detail

/// Grid-based interior nodes + arc-length boundary nodes per the policy.
inline PdeSolution solve(const PdeProblem& p, const FrameSpec& spec,
                         const BoundaryPolicy& policy, const GridSpec& g,
                         const SolveOptions& opt = {}) {
  auto interior = restrict_interior(tensor_grid(g), p.domain);
  auto bnodes = boundary_nodes(p.domain, policy.count(spec.axis_size, spec.num_modes()));
  if (opt.corner_extra > 0)
    bnodes = corner_refine(bnodes, p.domain, opt.corner_extra, opt.corner_radius);
  NodeSet ns = make_node_set(std::move(interior), std::move(bnodes), spec, g);
  return detail::solve_impl(p, spec, std::move(ns), g.refined(opt.eval_density), opt);
}

/// Seeded uniform-random interior nodes (Example-7 style).
inline PdeSolution solve_random(const PdeProblem& p, const FrameSpec& spec,
                                const BoundaryPolicy& policy, std::size_t n_interior,
                                std::uint64_t seed, const GridSpec& eval_grid,
                                const SolveOptions& opt = {}) {
  auto interior = random_interior(p.domain, n_interior, seed);
  auto bnodes = boundary_nodes(p.domain, policy.count(spec.axis_size, spec.num_modes()));
  if (opt.corner_extra > 0)
    bnodes = corner_refine(bnodes, p.domain, opt.corner_extra, opt.corner_radius);
  NodeSet ns = make_node_set(std::move(interior), std::move(bnodes), spec,
                             std::nullopt, seed);
  return detail::solve_impl(p, spec, std::move(ns), eval_grid, opt);
}

struct ResidualDiagnostics {
  double max_abs = 0.0;
  double rms = 0.0;
};

/// Strong-form residual -∂x(α ∂xU) - ∂y(α ∂yU) + βU - F at probe points,
/// using the frame's analytic derivatives.
inline ResidualDiagnostics residual_diagnostics(const PdeSolution& sol,
                                                const PdeProblem& p,
                                                const std::vector<Point2>& probes) {
  ResidualDiagnostics out;
  if (probes.empty()) return out;
  double sq = 0.0;
  for (const auto& x : probes) {
    const Complex u = evaluate(sol.approximant, x, DerivOrder::value);
    const Complex ux = evaluate(sol.approximant, x, DerivOrder::dx);
    const Complex uy = evaluate(sol.approximant, x, DerivOrder::dy);
    const Complex lap = evaluate(sol.approximant, x, DerivOrder::dxx) +
                        evaluate(sol.approximant, x, DerivOrder::dyy);
    const Complex r = p.coeffs.beta(x) * u - p.coeffs.alpha_dx(x) * ux -
                      p.coeffs.alpha_dy(x) * uy - p.coeffs.alpha(x) * lap -
                      p.source(x);
    const double m = std::abs(r);
    out.max_abs = std::max(out.max_abs, m);
    sq += m * m;
  }
  out.rms = std::sqrt(sq / probes.size());
  return out;
}

}  // namespace fec
