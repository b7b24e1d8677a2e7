#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fec/extension.hpp"
#include "fec/geometry.hpp"
#include "fec/pde.hpp"

namespace fec {

// ---------------------------------------------------------------------------
// Function presets f1..f4 for the approximation experiments
// ---------------------------------------------------------------------------

struct FunctionPreset {
  std::string name;
  std::string default_domain;
  ScalarField f;
};

inline const std::vector<FunctionPreset>& function_presets() {
  static const std::vector<FunctionPreset> presets = {
      {"f1", "pentagon",
       [](const Point2& p) { return std::pow(std::abs(p.x * p.y), 3.0); }},
      {"f2", "triangle",
       [](const Point2& p) {
         const double d = (p.x - 1.1) * (p.x - 1.1) + (p.y - 1.1) * (p.y - 1.1);
         return 1.0 / std::pow(d, 1.5);
       }},
      {"f3", "lune",
       [](const Point2& p) {
         return std::cos(5 * p.x + p.y) * std::sin(p.x - 3 * p.y);
       }},
      {"f4", "pentagon", [](const Point2& p) { return std::exp(p.x + 2 * p.y); }},
  };
  return presets;
}

inline const FunctionPreset& function_preset(const std::string& name) {
  for (const auto& fp : function_presets())
    if (fp.name == name) return fp;
  throw std::invalid_argument("unknown function preset '" + name +
                              "'; valid: f1 f2 f3 f4");
}

// ---------------------------------------------------------------------------
// Manufactured PDE presets (Examples 1..7)
// ---------------------------------------------------------------------------

/// Exact solution with hand-derived first derivatives and Laplacian, so the
/// source term is analytic: F = βU - αx Ux - αy Uy - α ΔU.
struct ManufacturedSolution {
  ScalarField value;
  ScalarField ddx;
  ScalarField ddy;
  ScalarField laplacian;
};

struct PdePreset {
  std::string id;
  std::string domain_name;
  CoefficientField coeffs;
  ManufacturedSolution exact;
  BoundaryPolicy default_policy;
  double default_gamma = 4.0;
  int grid_x_factor = 1;          // Example 6: x-axis division twice as dense
  bool random_nodes = false;      // Example 7: uniform-random interior nodes
  double random_interior_factor = 2.0;  // N_I = factor * N_Λ when random

  PdeProblem problem() const {
    const auto& c = coeffs;
    const auto& u = exact;
    ComplexField source = [c, u](const Point2& p) {
      return Complex{c.beta(p) * u.value(p) - c.alpha_dx(p) * u.ddx(p) -
                         c.alpha_dy(p) * u.ddy(p) - c.alpha(p) * u.laplacian(p),
                     0.0};
    };
    return PdeProblem{catalog(domain_name), coeffs, std::move(source),
                      real_field(u.value), real_field(u.value)};
  }
};

namespace detail {

inline CoefficientField const_coeffs(double alpha, double beta) {
  return {[alpha](const Point2&) { return alpha; }, [](const Point2&) { return 0.0; },
          [](const Point2&) { return 0.0; }, [beta](const Point2&) { return beta; }};
}

/// α = exp(x+y); ∂xα = ∂yα = α.
inline CoefficientField exp_sum_coeffs() {
  auto a = [](const Point2& p) { return std::exp(p.x + p.y); };
  return {a, a, a, [](const Point2&) { return 0.0; }};
}

/// Gaussian exp(-(x²+y²)/2).
inline ManufacturedSolution gaussian_solution() {
  auto v = [](const Point2& p) { return std::exp(-(p.x * p.x + p.y * p.y) / 2); };
  return {v, [v](const Point2& p) { return -p.x * v(p); },
          [v](const Point2& p) { return -p.y * v(p); },
          [v](const Point2& p) { return (p.x * p.x + p.y * p.y - 2) * v(p); }};
}

/// sin(c g(x,y)) for a polynomial phase g:
///   d/dx = c gx cos(cg),  d²/dx² = c gxx cos(cg) - c² gx² sin(cg).
inline ManufacturedSolution sine_of(double c, ScalarField g, ScalarField gx,
                                    ScalarField gy, ScalarField gxx, ScalarField gyy) {
  auto v = [c, g](const Point2& p) { return std::sin(c * g(p)); };
  auto ddx = [c, g, gx](const Point2& p) { return c * gx(p) * std::cos(c * g(p)); };
  auto ddy = [c, g, gy](const Point2& p) { return c * gy(p) * std::cos(c * g(p)); };
  auto lap = [c, g, gx, gy, gxx, gyy](const Point2& p) {
    const double cg = c * g(p);
    return c * (gxx(p) + gyy(p)) * std::cos(cg) -
           c * c * (gx(p) * gx(p) + gy(p) * gy(p)) * std::sin(cg);
  };
  return {v, ddx, ddy, lap};
}

}  // namespace detail

inline const std::vector<PdePreset>& pde_presets() {
  using detail::const_coeffs;
  using detail::exp_sum_coeffs;
  using detail::gaussian_solution;
  using detail::sine_of;
  using std::numbers::pi;

  static const std::vector<PdePreset> presets = [] {
    std::vector<PdePreset> v;

    // Example 1: α = 1, β = 10, U = exp(-(x²+y²)/2) on the pentagon.
    v.push_back({"example1", "pentagon", const_coeffs(1.0, 10.0), gaussian_solution(),
                 BoundaryPolicy::linear(5)});

    // Example 2: α = exp(x+y), β = 0,
    // U = sin(π/2 (x²/0.6² + y²/0.9² - 1)) on the ellipse.
    {
      const double ia = 1.0 / 0.36, ib = 1.0 / 0.81;
      v.push_back({"example2", "ellipse", exp_sum_coeffs(),
                   sine_of(pi / 2,
                           [ia, ib](const Point2& p) {
                             return p.x * p.x * ia + p.y * p.y * ib - 1.0;
                           },
                           [ia](const Point2& p) { return 2 * p.x * ia; },
                           [ib](const Point2& p) { return 2 * p.y * ib; },
                           [ia](const Point2&) { return 2 * ia; },
                           [ib](const Point2&) { return 2 * ib; }),
                   BoundaryPolicy::linear(3)});
    }

    // Example 3: α = (sin x + 1)(cos y + 1), β = exp(x+y), Gaussian U on the
    // triangle.
    {
      CoefficientField c;
      c.alpha = [](const Point2& p) {
        return (std::sin(p.x) + 1) * (std::cos(p.y) + 1);
      };
      c.alpha_dx = [](const Point2& p) { return std::cos(p.x) * (std::cos(p.y) + 1); };
      c.alpha_dy = [](const Point2& p) { return -(std::sin(p.x) + 1) * std::sin(p.y); };
      c.beta = [](const Point2& p) { return std::exp(p.x + p.y); };
      v.push_back({"example3", "triangle", c, gaussian_solution(),
                   BoundaryPolicy::linear(6)});
    }

    // Example 4: α = 1, β = 0, U = (1-x²)^{5/2} (1-y²)^{5/2} on the square
    // (corner-singular solution).
    {
      auto gx = [](double s) { return std::pow(std::max(0.0, 1 - s * s), 2.5); };
      auto gx1 = [](double s) {
        return -5 * s * std::pow(std::max(0.0, 1 - s * s), 1.5);
      };
      auto gx2 = [](double s) {
        const double w = std::max(0.0, 1 - s * s);
        return -5 * std::pow(w, 1.5) + 15 * s * s * std::sqrt(w);
      };
      ManufacturedSolution u;
      u.value = [gx](const Point2& p) { return gx(p.x) * gx(p.y); };
      u.ddx = [gx, gx1](const Point2& p) { return gx1(p.x) * gx(p.y); };
      u.ddy = [gx, gx1](const Point2& p) { return gx(p.x) * gx1(p.y); };
      u.laplacian = [gx, gx2](const Point2& p) {
        return gx2(p.x) * gx(p.y) + gx(p.x) * gx2(p.y);
      };
      v.push_back({"example4", "square", const_coeffs(1.0, 0.0), u,
                   BoundaryPolicy::square()});
    }

    // Example 5: α = exp(x+y), β = 0, U = sin(π(x²+y²-0.9²)/2) on the lune.
    v.push_back({"example5", "lune", exp_sum_coeffs(),
                 sine_of(pi / 2,
                         [](const Point2& p) { return p.x * p.x + p.y * p.y - 0.81; },
                         [](const Point2& p) { return 2 * p.x; },
                         [](const Point2& p) { return 2 * p.y; },
                         [](const Point2&) { return 2.0; },
                         [](const Point2&) { return 2.0; }),
                 BoundaryPolicy::linear(6)});

    // Example 6: α = exp(x+y), β = 0, U = sin(x²+y²) on the five-petal
    // annulus; x-axis grid twice as dense.
    {
      PdePreset pr{"example6", "five_petal_annulus", exp_sum_coeffs(),
                   sine_of(1.0,
                           [](const Point2& p) { return p.x * p.x + p.y * p.y; },
                           [](const Point2& p) { return 2 * p.x; },
                           [](const Point2& p) { return 2 * p.y; },
                           [](const Point2&) { return 2.0; },
                           [](const Point2&) { return 2.0; }),
                   BoundaryPolicy::linear(8)};
      pr.grid_x_factor = 2;
      v.push_back(std::move(pr));
    }

    // Example 7: α = exp(x+y), β = 0, U = sin(4x² - 4x⁴/0.9² - y²) on the
    // bowtie, with uniform-random interior nodes (N_I = 2 N_Λ).
    {
      const double c4 = 4.0 / 0.81;
      PdePreset pr{"example7", "bowtie", exp_sum_coeffs(),
                   sine_of(1.0,
                           [c4](const Point2& p) {
                             return 4 * p.x * p.x - c4 * std::pow(p.x, 4) - p.y * p.y;
                           },
                           [c4](const Point2& p) {
                             return 8 * p.x - 4 * c4 * std::pow(p.x, 3);
                           },
                           [](const Point2& p) { return -2 * p.y; },
                           [c4](const Point2& p) { return 8 - 12 * c4 * p.x * p.x; },
                           [](const Point2&) { return -2.0; }),
                   BoundaryPolicy::linear(4)};
      pr.random_nodes = true;
      v.push_back(std::move(pr));
    }
    return v;
  }();
  return presets;
}

inline const PdePreset& pde_preset(const std::string& id) {
  for (const auto& pr : pde_presets())
    if (pr.id == id) return pr;
  std::string msg = "unknown PDE preset '" + id + "'; valid:";
  for (const auto& pr : pde_presets()) msg += " " + pr.id;
  throw std::invalid_argument(msg);
}

}  // namespace fec
