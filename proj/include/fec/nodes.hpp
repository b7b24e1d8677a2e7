#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fec/frames.hpp"
#include "fec/geometry.hpp"

namespace fec {

/// Equispaced tensor grid on R = [-T, T]^2 with M points per axis (even),
/// spacing 2T/M, indices k in {-M/2, ..., M/2 - 1}.
struct GridSpec {
  int mx;
  int my;
  double half_width;   // T
  double gamma;        // nominal oversampling factor, M ≈ γN

  GridSpec(int mx_, int my_, double T, double gamma_ = 0.0)
      : mx(mx_), my(my_), half_width(T), gamma(gamma_) {
    if (mx < 2 || my < 2 || mx % 2 || my % 2)
      throw std::invalid_argument("grid sizes must be even and >= 2");
  }

  /// M = γN rounded up to even; x_factor doubles (etc.) the x-axis density.
  static GridSpec from_frame(int axis_size, double gamma, double T = 2.0,
                             int x_factor = 1) {
    const int my = 2 * static_cast<int>(std::ceil(gamma * axis_size / 2.0));
    return GridSpec(my * x_factor, my, T, gamma);
  }

  GridSpec refined(int density) const {
    return GridSpec(mx * density, my * density, half_width, gamma);
  }

  double dx() const { return 2.0 * half_width / mx; }
  double dy() const { return 2.0 * half_width / my; }
};

inline std::vector<Point2> tensor_grid(const GridSpec& g) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(g.mx) * g.my);
  for (int k1 = -g.mx / 2; k1 < g.mx / 2; ++k1)
    for (int k2 = -g.my / 2; k2 < g.my / 2; ++k2)
      pts.push_back({2.0 * g.half_width * k1 / g.mx, 2.0 * g.half_width * k2 / g.my});
  return pts;
}

/// Keeps exactly the strictly interior points; grid points landing on the
/// boundary are dropped (boundary rows come from separate arc-length nodes).
inline std::vector<Point2> restrict_interior(const std::vector<Point2>& grid,
                                             const Domain& d) {
  std::vector<Point2> out;
  out.reserve(grid.size());
  for (const auto& p : grid)
    if (d.contains(p) == Region::interior) out.push_back(p);
  return out;
}

/// `count` i.i.d. uniform samples over the domain by seeded rejection
/// sampling from the bounding box.
inline std::vector<Point2> random_interior(const Domain& d, std::size_t count,
                                           std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("random_interior: count must be >= 1");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> ux(d.bbox.xmin, d.bbox.xmax);
  std::uniform_real_distribution<double> uy(d.bbox.ymin, d.bbox.ymax);
  std::vector<Point2> out;
  out.reserve(count);
  std::size_t trials = 0;
  while (out.size() < count) {
    const double x = ux(gen);
    const double y = uy(gen);
    ++trials;
    if (d.contains({x, y}) == Region::interior) out.push_back({x, y});
    if (trials >= 1000000 && static_cast<double>(out.size()) / trials < 1e-4)
      throw std::runtime_error("random_interior: rejection acceptance rate below 1e-4 "
                               "(degenerate domain '" + d.name + "')");
  }
  return out;
}

inline constexpr const char* kRandomGeneratorName = "mt19937_64";

struct NodeSet {
  std::vector<Point2> interior;
  std::vector<Point2> boundary;
  std::optional<GridSpec> grid;          // equispaced source grid, if any
  std::optional<std::uint64_t> seed;     // random(seed) tag, if any

  std::size_t n_interior() const { return interior.size(); }
  std::size_t n_boundary() const { return boundary.size(); }
  std::size_t n_total() const { return interior.size() + boundary.size(); }
};

/// Fails loudly when N_I + N_B <= N_Λ (oversampling requirement).
inline NodeSet make_node_set(std::vector<Point2> interior, std::vector<Point2> boundary,
                             const FrameSpec& spec,
                             std::optional<GridSpec> grid = std::nullopt,
                             std::optional<std::uint64_t> seed = std::nullopt) {
  if (interior.size() + boundary.size() <=
      static_cast<std::size_t>(spec.num_modes()))
    throw std::runtime_error(
        "undersampled system: N_I + N_B = " +
        std::to_string(interior.size() + boundary.size()) +
        " <= N_Lambda = " + std::to_string(spec.num_modes()));
  return NodeSet{std::move(interior), std::move(boundary), grid, seed};
}

struct OversamplingReport {
  std::size_t n_interior;
  std::size_t n_boundary;
  std::size_t n_modes;
  double ratio_interior;  // N_I / N_Λ
  double ratio_total;     // (N_I + N_B) / N_Λ
};

inline OversamplingReport oversampling_report(const NodeSet& ns, const FrameSpec& spec) {
  const double nl = spec.num_modes();
  return {ns.n_interior(), ns.n_boundary(), static_cast<std::size_t>(spec.num_modes()),
          ns.n_interior() / nl, ns.n_total() / nl};
}

}  // namespace fec
