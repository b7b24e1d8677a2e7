#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fec/pde.hpp"
#include "fec/presets.hpp"

using fec::BoundaryPolicy;
using fec::Complex;
using fec::ComplexField;
using fec::Domain;
using fec::FrameSpec;
using fec::GridSpec;
using fec::NodeSet;
using fec::PdeProblem;
using fec::Point2;
using std::numbers::pi;

namespace {

fec::CoefficientField const_coeffs(double alpha, double beta) {
  return {[alpha](const Point2&) { return alpha; },
          [](const Point2&) { return 0.0; },
          [](const Point2&) { return 0.0; },
          [beta](const Point2&) { return beta; }};
}

}  // namespace

TEST_CASE("single-mode degenerate assembly") {
  // N = 1 frame: only the constant basis function.
  const auto spec = FrameSpec::from_axis_size(1);
  REQUIRE(spec.num_modes() == 1);
  PdeProblem p{fec::catalog("pentagon"), const_coeffs(1.0, 10.0),
               [](const Point2&) { return Complex{5, 0}; },
               [](const Point2&) { return Complex{0.5, 0}; }, std::nullopt};
  NodeSet ns;
  ns.interior = {{0.1, 0.2}};
  ns.boundary = {{0, 0.9}};
  const auto [mat, rhs] = fec::assemble(p, ns, spec);
  REQUIRE(mat.rows() == 2);
  REQUIRE(mat.cols() == 1);
  CHECK(std::abs(mat(0, 0) - Complex{10, 0}) <= 1e-15);  // interior row = beta
  CHECK(std::abs(mat(1, 0) - Complex{1, 0}) <= 1e-15);   // boundary row = 1
  CHECK(std::abs(rhs[0] - Complex{5, 0}) <= 1e-15);
  CHECK(std::abs(rhs[1] - Complex{0.5, 0}) <= 1e-15);
}

TEST_CASE("constant-coefficient interior block matches the explicit combination") {
  const auto spec = FrameSpec::from_axis_size(5);
  const double alpha = 2.25, beta = 10.0;
  PdeProblem p{fec::catalog("pentagon"), const_coeffs(alpha, beta),
               [](const Point2&) { return Complex{0, 0}; },
               [](const Point2&) { return Complex{0, 0}; }, std::nullopt};
  NodeSet ns;
  ns.interior = fec::restrict_interior(fec::tensor_grid(GridSpec(12, 12, 2.0)),
                                       p.domain);
  ns.boundary = fec::boundary_nodes(p.domain, 10);
  REQUIRE(ns.n_total() > 25);
  const auto [mat, rhs] = fec::assemble(p, ns, spec);

  const auto a1 = fec::eval_matrix(spec, ns.interior, fec::DerivOrder::value, 1.0);
  const auto a4 = fec::eval_matrix(spec, ns.interior, fec::DerivOrder::dxx, 1.0);
  const auto a5 = fec::eval_matrix(spec, ns.interior, fec::DerivOrder::dyy, 1.0);
  const Eigen::MatrixXcd expect = beta * a1 - alpha * (a4 + a5);
  const double scale = expect.cwiseAbs().maxCoeff();
  CHECK((mat.topRows(ns.n_interior()) - expect).cwiseAbs().maxCoeff() <=
        1e-14 * scale);

  const auto b = fec::eval_matrix(spec, ns.boundary, fec::DerivOrder::value, 1.0);
  CHECK((mat.bottomRows(ns.n_boundary()) - b).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("coefficient sign violations are reported with the offending node") {
  const auto spec = FrameSpec::from_axis_size(3);
  NodeSet ns;
  ns.interior = {{0.25, 0.0}};
  ns.boundary = fec::boundary_nodes(fec::catalog("pentagon"), 12);
  auto zero = [](const Point2&) { return Complex{0, 0}; };

  PdeProblem bad_alpha{fec::catalog("pentagon"),
                       {[](const Point2& q) { return q.x - 0.5; },  // <= 0 at the node
                        [](const Point2&) { return 1.0; },
                        [](const Point2&) { return 0.0; },
                        [](const Point2&) { return 0.0; }},
                       zero, zero, std::nullopt};
  try {
    fec::assemble(bad_alpha, ns, spec);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("0.25") != std::string::npos);
  }

  PdeProblem bad_beta{fec::catalog("pentagon"),
                      {[](const Point2&) { return 1.0; },
                       [](const Point2&) { return 0.0; },
                       [](const Point2&) { return 0.0; },
                       [](const Point2&) { return -1.0; }},
                      zero, zero, std::nullopt};
  CHECK_THROWS_AS(fec::assemble(bad_beta, ns, spec), std::runtime_error);
}

TEST_CASE("a constant manufactured solution is recovered to 1e-10") {
  const double c = 3.7;
  PdeProblem p{fec::catalog("pentagon"), const_coeffs(1.0, 10.0),
               [c](const Point2&) { return Complex{10.0 * c, 0}; },
               [c](const Point2&) { return Complex{c, 0}; },
               [c](const Point2&) { return Complex{c, 0}; }};
  const auto spec = FrameSpec::from_axis_size(5);
  const auto sol = fec::solve(p, spec, BoundaryPolicy::linear(4),
                              GridSpec::from_frame(5, 4.0));
  REQUIRE(sol.max_err.has_value());
  CHECK(*sol.max_err <= 1e-10);
}

TEST_CASE("a basis-mode manufactured solution is recovered to 1e-9") {
  // U = phi_(2,1); with alpha = 1, beta = 0 the operator gives
  // F = (pi/T)^2 (2^2 + 1^2) U from the Laplacian eigenvalue relation.
  const auto spec = FrameSpec::from_axis_size(7);
  const double w = pi / spec.half_width;
  const ComplexField u = [spec](const Point2& q) {
    return fec::eval_basis(spec, {2, 1}, q);
  };
  PdeProblem p{fec::catalog("pentagon"), const_coeffs(1.0, 0.0),
               [u, w](const Point2& q) { return w * w * 5.0 * u(q); }, u, u};
  const auto sol = fec::solve(p, spec, BoundaryPolicy::linear(4),
                              GridSpec::from_frame(7, 4.0));
  REQUIRE(sol.max_err.has_value());
  CHECK(*sol.max_err <= 1e-9);

  // strong-form residual consistency at off-node probes
  const auto probes = fec::random_interior(p.domain, 50, 5);
  const auto diag = fec::residual_diagnostics(sol, p, probes);
  double max_f = 0.0;
  for (const auto& q : probes) max_f = std::max(max_f, std::abs(p.source(q)));
  CHECK(diag.max_abs <= 1e-8 * (1.0 + max_f));
}

TEST_CASE("the solve is linear in the data") {
  const auto& preset = fec::pde_preset("example1");
  const auto base = preset.problem();
  const double c = 2.5;
  PdeProblem scaled = base;
  scaled.source = [f = base.source, c](const Point2& q) { return c * f(q); };
  scaled.dirichlet = [h = base.dirichlet, c](const Point2& q) { return c * h(q); };
  scaled.exact.reset();

  const auto spec = FrameSpec::from_axis_size(9);
  const auto g = GridSpec::from_frame(9, 4.0);
  const auto s1 = fec::solve(base, spec, BoundaryPolicy::linear(5), g);
  const auto s2 = fec::solve(scaled, spec, BoundaryPolicy::linear(5), g);
  const Eigen::VectorXcd diff = s2.approximant.coeffs - c * s1.approximant.coeffs;
  CHECK(diff.norm() <= 1e-10 * (1.0 + s1.approximant.coeffs.norm()));
}

TEST_CASE("homogeneous data yields the zero solution") {
  auto zero = [](const Point2&) { return Complex{0, 0}; };
  PdeProblem p{fec::catalog("pentagon"), const_coeffs(1.0, 10.0), zero, zero, zero};
  const auto spec = FrameSpec::from_axis_size(7);
  const auto sol = fec::solve(p, spec, BoundaryPolicy::linear(4),
                              GridSpec::from_frame(7, 4.0));
  CHECK(sol.approximant.coeffs.norm() <= 1e-12);
  const auto diag =
      fec::residual_diagnostics(sol, p, fec::random_interior(p.domain, 20, 9));
  CHECK(diag.max_abs <= 1e-10);
}

TEST_CASE("residuals are anchored at the collocation nodes") {
  const auto& preset = fec::pde_preset("example2");
  const auto problem = preset.problem();
  const auto spec = FrameSpec::from_axis_size(9);
  const auto g = GridSpec::from_frame(9, 4.0);
  const auto sol = fec::solve(problem, spec, preset.default_policy, g);

  const auto at_nodes = fec::residual_diagnostics(sol, problem, sol.nodes.interior);
  // probes shifted half a cell away from the grid nodes
  std::vector<Point2> off;
  for (const auto& q : sol.nodes.interior) {
    const Point2 shifted{q.x + g.dx() / 2, q.y + g.dy() / 2};
    if (problem.domain.contains(shifted) == fec::Region::interior)
      off.push_back(shifted);
  }
  const auto off_nodes = fec::residual_diagnostics(sol, problem, off);
  INFO("rms at nodes " << at_nodes.rms << " vs off nodes " << off_nodes.rms);
  CHECK(at_nodes.rms <= off_nodes.rms * 1.05);
}

TEST_CASE("boundary policies produce the documented counts") {
  CHECK(BoundaryPolicy::linear(3).count(20, 400) == 60);
  CHECK(BoundaryPolicy::linear(5).count(20, 400) == 100);
  // natural log: floor(log 1681) = 7
  CHECK(BoundaryPolicy::log_nodes(20).count(41, 1681) == 140);
  // base-10 variant: floor(log10 1681) = 3
  CHECK(BoundaryPolicy::log_nodes(20, true).count(41, 1681) == 60);
  CHECK(BoundaryPolicy::square().count(30, 900) == 116);
  CHECK(BoundaryPolicy::explicit_n(77).count(30, 900) == 77);
  CHECK(BoundaryPolicy::linear(3).describe().rfind("linear:", 0) == 0);
  CHECK(BoundaryPolicy::square().describe() == "square");
}

TEST_CASE("presets carry the documented formulas") {
  const auto& ex3 = fec::pde_preset("example3");
  CHECK(ex3.coeffs.beta({0, 0}) == Catch::Approx(1.0));  // exp(0)
  CHECK(ex3.coeffs.alpha({0, 0}) == Catch::Approx(2.0)); // (sin 0 + 1)(cos 0 + 1)

  // exact solutions vanish on the level-set boundaries they were built from
  const auto& ex2 = fec::pde_preset("example2");
  CHECK(std::abs(ex2.exact.value({0.6, 0})) <= 1e-14);
  CHECK(std::abs(ex2.exact.value({0, 0.9})) <= 1e-14);
  const auto& ex5 = fec::pde_preset("example5");
  CHECK(std::abs(ex5.exact.value({0.9, 0})) <= 1e-14);
  CHECK(std::abs(ex5.exact.value({0, -0.9})) <= 1e-14);

  CHECK(fec::pde_preset("example7").random_nodes);
  CHECK(fec::pde_preset("example6").grid_x_factor == 2);
  CHECK_THROWS_AS(fec::pde_preset("example99"), std::invalid_argument);
}

TEST_CASE("manufactured derivative plumbing is consistent") {
  // the hand-coded ddx/ddy/laplacian of each preset match finite differences
  const double h = 1e-5;
  const Point2 q{0.21, -0.17};
  for (const auto& preset : fec::pde_presets()) {
    const auto& u = preset.exact;
    const double fd_x = (u.value({q.x + h, q.y}) - u.value({q.x - h, q.y})) / (2 * h);
    const double fd_y = (u.value({q.x, q.y + h}) - u.value({q.x, q.y - h})) / (2 * h);
    const double fd_lap = (u.value({q.x + h, q.y}) + u.value({q.x - h, q.y}) +
                           u.value({q.x, q.y + h}) + u.value({q.x, q.y - h}) -
                           4 * u.value(q)) /
                          (h * h);
    INFO(preset.id);
    CHECK(u.ddx(q) == Catch::Approx(fd_x).margin(1e-7));
    CHECK(u.ddy(q) == Catch::Approx(fd_y).margin(1e-7));
    CHECK(u.laplacian(q) == Catch::Approx(fd_lap).margin(1e-4));
  }
}

TEST_CASE("analytic examples converge at desk scale") {
  for (const char* id : {"example1", "example3"}) {
    const auto& preset = fec::pde_preset(id);
    const auto problem = preset.problem();
    const auto spec = FrameSpec::from_axis_size(17);
    const auto g = GridSpec::from_frame(17, preset.default_gamma);
    const auto sol = fec::solve(problem, spec, preset.default_policy, g);
    REQUIRE(sol.max_err.has_value());
    INFO(id << " error " << *sol.max_err);
    CHECK(*sol.max_err <= 1e-6);
  }
}
