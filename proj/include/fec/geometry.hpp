#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace fec {

struct Point2 {
  double x{};
  double y{};
};

inline double distance(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

enum class Region { interior, boundary, exterior };

enum class CurveKind { outer, inner_hole };

/// Closed curve, parametrized over t in [0,1) with param(0) = lim_{t->1} param(t).
struct BoundaryCurve {
  std::function<Point2(double)> at;     // position
  std::function<double(double)> speed;  // |p'(t)|, arc-length density
  CurveKind kind = CurveKind::outer;
};

/// Location of a sharp corner or cusp: curve index + parameter value.
struct CornerRef {
  std::size_t curve{};
  double t{};
};

struct BBox {
  double xmin{}, xmax{}, ymin{}, ymax{};
};

struct Domain {
  std::string name;
  std::function<Region(const Point2&)> classify;
  std::vector<BoundaryCurve> curves;
  BBox bbox{};
  std::vector<CornerRef> corners;

  Region contains(const Point2& p) const { return classify(p); }
};

namespace detail {

inline constexpr double kBoundaryTol = 1e-12;

struct SimpsonFail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double simpson(const std::function<double(double)>& f, double a, double m,
                      double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb,
                                   double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, lm, m, fa, flm, fm);
  const double right = simpson(f, m, rm, b, fm, frm, fb);
  const double delta = left + right - whole;
  // second test: delta at the rounding-noise floor of the local integral
  if (std::abs(delta) <= 15.0 * tol ||
      std::abs(delta) <= 1e-15 * (std::abs(left) + std::abs(right)))
    return left + right + delta / 15.0;
  if (depth <= 0)
    throw SimpsonFail("arc-length quadrature failed to converge (non-rectifiable curve?)");
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol, int max_depth = 48) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb))
    throw SimpsonFail("arc-length quadrature hit a non-finite speed value");
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, simpson(f, a, m, b, fa, fm, fb),
                              tol, max_depth);
}

}  // namespace detail

/// Cumulative arc-length table for one closed curve, with inversion s -> t.
class ArcLengthParam {
 public:
  explicit ArcLengthParam(const BoundaryCurve& curve, int table_size = 1024,
                          double tol = 1e-13)
      : curve_(&curve), k_(table_size), cum_(static_cast<std::size_t>(table_size) + 1, 0.0) {
    const double per_cell_tol = std::max(tol / k_, 2e-15);
    for (int i = 0; i < k_; ++i) {
      const double a = static_cast<double>(i) / k_;
      const double b = static_cast<double>(i + 1) / k_;
      cum_[i + 1] = cum_[i] + detail::adaptive_simpson(curve.speed, a, b, per_cell_tol);
    }
  }

  double total() const { return cum_.back(); }

  double arc_at(double t) const {
    t -= std::floor(t);
    const double scaled = t * k_;
    const int i = std::min(static_cast<int>(scaled), k_ - 1);
    const double a = static_cast<double>(i) / k_;
    return cum_[i] + detail::adaptive_simpson(curve_->speed, a, t, 1e-14);
  }

  /// Parameter value with arc_at(t) == s (s taken modulo total length).
  double t_at(double s) const {
    const double len = total();
    s = std::fmod(s, len);
    if (s < 0) s += len;
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    int i = static_cast<int>(it - cum_.begin()) - 1;
    i = std::clamp(i, 0, k_ - 1);
    double lo = static_cast<double>(i) / k_;
    double hi = static_cast<double>(i + 1) / k_;
    double slo = cum_[i];
    // bisection on the monotone cumulative arc length
    for (int iter = 0; iter < 60 && hi - lo > 1e-15; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double smid = cum_[i] + detail::adaptive_simpson(
                                        curve_->speed, static_cast<double>(i) / k_, mid, 1e-14);
      if (smid < s) {
        lo = mid;
        slo = smid;
      } else {
        hi = mid;
      }
    }
    (void)slo;
    return 0.5 * (lo + hi);
  }

 private:
  const BoundaryCurve* curve_;
  int k_;
  std::vector<double> cum_;
};

/// n_total points on the boundary, allocated to the curves proportionally to
/// arc length (largest-remainder rounding) and equispaced in arc length on
/// each curve, starting at t = 0.
inline std::vector<Point2> boundary_nodes(const Domain& d, std::size_t n_total) {
  const std::size_t nc = d.curves.size();
  if (nc == 0) throw std::invalid_argument("domain has no boundary curves");
  if (n_total < nc)
    throw std::invalid_argument("need at least one boundary node per curve");

  std::vector<ArcLengthParam> arcs;
  arcs.reserve(nc);
  double total = 0.0;
  for (const auto& c : d.curves) {
    arcs.emplace_back(c);
    total += arcs.back().total();
  }

  // largest-remainder allocation
  std::vector<std::size_t> m(nc, 0);
  std::vector<std::pair<double, std::size_t>> rem;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < nc; ++i) {
    const double quota = n_total * arcs[i].total() / total;
    m[i] = static_cast<std::size_t>(std::floor(quota));
    assigned += m[i];
    rem.emplace_back(quota - std::floor(quota), i);
  }
  std::sort(rem.begin(), rem.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (std::size_t j = 0; assigned < n_total; ++j, ++assigned) m[rem[j % nc].second]++;
  for (std::size_t i = 0; i < nc; ++i) {
    if (m[i] == 0) {
      auto big = std::max_element(m.begin(), m.end()) - m.begin();
      m[big]--;
      m[i]++;
    }
  }

  std::vector<Point2> out;
  out.reserve(n_total);
  for (std::size_t i = 0; i < nc; ++i) {
    const double len = arcs[i].total();
    for (std::size_t j = 0; j < m[i]; ++j) {
      const double t = (j == 0) ? 0.0 : arcs[i].t_at(j * len / m[i]);
      out.push_back(d.curves[i].at(t));
    }
  }
  return out;
}

/// Appends, per flagged corner, `extra_per_corner` boundary points clustered
/// geometrically (ratio 0.5) toward the corner along both incident arcs,
/// within `radius` of arc length. Near-duplicates (< 1e-12) are dropped.
inline std::vector<Point2> corner_refine(const std::vector<Point2>& nodes,
                                         const Domain& d, std::size_t extra_per_corner,
                                         double radius) {
  std::vector<Point2> out = nodes;
  if (extra_per_corner == 0 || d.corners.empty()) return out;
  for (const auto& corner : d.corners) {
    const auto& curve = d.curves.at(corner.curve);
    ArcLengthParam arc(curve);
    const double sc = arc.arc_at(corner.t);
    for (int dir : {+1, -1}) {
      double step = radius;
      for (std::size_t k = 0; k < extra_per_corner; ++k, step *= 0.5) {
        const Point2 p = curve.at(arc.t_at(sc + dir * step));
        const bool dup = std::any_of(out.begin(), out.end(), [&](const Point2& q) {
          return distance(p, q) < 1e-12;
        });
        if (!dup) out.push_back(p);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Domain catalog
// ---------------------------------------------------------------------------

namespace domains {

inline Domain polygon(std::string name, std::vector<Point2> verts) {
  const std::size_t nv = verts.size();
  double perimeter = 0.0;
  std::vector<double> seg(nv), cum(nv + 1, 0.0);
  for (std::size_t i = 0; i < nv; ++i) {
    seg[i] = distance(verts[i], verts[(i + 1) % nv]);
    cum[i + 1] = cum[i] + seg[i];
    perimeter += seg[i];
  }

  Domain d;
  d.name = std::move(name);
  d.classify = [verts, nv](const Point2& p) {
    bool inside = true;
    double min_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nv; ++i) {
      const Point2& a = verts[i];
      const Point2& b = verts[(i + 1) % nv];
      const double ex = b.x - a.x, ey = b.y - a.y;
      const double px = p.x - a.x, py = p.y - a.y;
      const double cross = ex * py - ey * px;
      if (cross < 0) inside = false;
      const double len2 = ex * ex + ey * ey;
      const double tt = std::clamp((px * ex + py * ey) / len2, 0.0, 1.0);
      min_dist = std::min(min_dist, std::hypot(px - tt * ex, py - tt * ey));
    }
    if (min_dist <= detail::kBoundaryTol) return Region::boundary;
    return inside ? Region::interior : Region::exterior;
  };

  BoundaryCurve c;
  c.at = [verts, cum, seg, perimeter, nv](double t) {
    t -= std::floor(t);
    double s = t * perimeter;
    std::size_t i = static_cast<std::size_t>(
                        std::upper_bound(cum.begin(), cum.end(), s) - cum.begin()) - 1;
    i = std::min(i, nv - 1);
    const double u = (s - cum[i]) / seg[i];
    const Point2& a = verts[i];
    const Point2& b = verts[(i + 1) % nv];
    return Point2{a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
  };
  c.speed = [perimeter](double) { return perimeter; };  // arc-length-natural
  d.curves.push_back(std::move(c));

  d.bbox = {verts[0].x, verts[0].x, verts[0].y, verts[0].y};
  for (const auto& v : verts) {
    d.bbox.xmin = std::min(d.bbox.xmin, v.x);
    d.bbox.xmax = std::max(d.bbox.xmax, v.x);
    d.bbox.ymin = std::min(d.bbox.ymin, v.y);
    d.bbox.ymax = std::max(d.bbox.ymax, v.y);
  }
  for (std::size_t i = 0; i < nv; ++i) d.corners.push_back({0, cum[i] / perimeter});
  return d;
}

inline Domain ellipse(double a, double b, std::string name = "ellipse") {
  using std::numbers::pi;
  Domain d;
  d.name = std::move(name);
  d.classify = [a, b](const Point2& p) {
    const double f = p.x * p.x / (a * a) + p.y * p.y / (b * b) - 1.0;
    if (std::abs(f) <= detail::kBoundaryTol) return Region::boundary;
    return f < 0 ? Region::interior : Region::exterior;
  };
  BoundaryCurve c;
  c.at = [a, b](double t) {
    return Point2{a * std::cos(2 * pi * t), b * std::sin(2 * pi * t)};
  };
  c.speed = [a, b](double t) {
    return 2 * pi * std::hypot(a * std::sin(2 * pi * t), b * std::cos(2 * pi * t));
  };
  d.curves.push_back(std::move(c));
  d.bbox = {-a, a, -b, b};
  return d;
}

/// Disk of radius 0.9 minus the open disk of radius 0.6 centered at (0.3, 0);
/// the two circles are internally tangent at (0.9, 0).
inline Domain lune() {
  using std::numbers::pi;
  Domain d;
  d.name = "lune";
  d.classify = [](const Point2& p) {
    const double fo = p.x * p.x + p.y * p.y - 0.81;
    const double fi = (p.x - 0.3) * (p.x - 0.3) + p.y * p.y - 0.36;
    const double tol = detail::kBoundaryTol;
    if (std::abs(fo) <= tol && fi >= -tol) return Region::boundary;
    if (std::abs(fi) <= tol && fo <= tol) return Region::boundary;
    if (fo < 0 && fi > 0) return Region::interior;
    return Region::exterior;
  };
  BoundaryCurve outer;
  outer.at = [](double t) {
    return Point2{0.9 * std::cos(2 * pi * t), 0.9 * std::sin(2 * pi * t)};
  };
  outer.speed = [](double) { return 2 * pi * 0.9; };
  BoundaryCurve inner;
  inner.at = [](double t) {
    return Point2{0.3 + 0.6 * std::cos(2 * pi * t), 0.6 * std::sin(2 * pi * t)};
  };
  inner.speed = [](double) { return 2 * pi * 0.6; };
  inner.kind = CurveKind::inner_hole;
  d.curves.push_back(std::move(outer));
  d.curves.push_back(std::move(inner));
  d.bbox = {-0.9, 0.9, -0.9, 0.9};
  d.corners.push_back({0, 0.0});  // tangency cusp at (0.9, 0)
  return d;
}

/// Annular region between r = 0.4 + 0.2 sin(5θ) and r = 0.7 + 0.2 sin(5θ).
inline Domain five_petal_annulus() {
  using std::numbers::pi;
  auto r_in = [](double th) { return 0.4 + 0.2 * std::sin(5 * th); };
  auto r_out = [](double th) { return 0.7 + 0.2 * std::sin(5 * th); };
  auto dr = [](double th) { return std::cos(5 * th); };  // d/dθ of both radii

  Domain d;
  d.name = "five_petal_annulus";
  d.classify = [r_in, r_out](const Point2& p) {
    const double r = std::hypot(p.x, p.y);
    const double th = std::atan2(p.y, p.x);
    const double f1 = r - r_in(th);
    const double f2 = r_out(th) - r;
    const double tol = detail::kBoundaryTol;
    if (std::abs(f1) <= tol && f2 >= -tol) return Region::boundary;
    if (std::abs(f2) <= tol && f1 >= -tol) return Region::boundary;
    if (f1 > 0 && f2 > 0) return Region::interior;
    return Region::exterior;
  };
  auto polar_curve = [&](auto radius, CurveKind kind) {
    BoundaryCurve c;
    c.at = [radius](double t) {
      const double th = 2 * pi * t;
      const double r = radius(th);
      return Point2{r * std::cos(th), r * std::sin(th)};
    };
    c.speed = [radius, dr](double t) {
      const double th = 2 * pi * t;
      return 2 * pi * std::hypot(radius(th), dr(th));
    };
    c.kind = kind;
    return c;
  };
  d.curves.push_back(polar_curve(r_out, CurveKind::outer));
  d.curves.push_back(polar_curve(r_in, CurveKind::inner_hole));
  d.bbox = {-0.9, 0.9, -0.9, 0.9};
  return d;
}

/// Figure-eight region {4x^2 - 4x^4/0.9^2 - y^2 >= 0}; the boundary is the
/// Lissajous curve (0.9 sin(2πt), 0.9 sin(4πt)) and pinches at the origin.
inline Domain bowtie() {
  using std::numbers::pi;
  Domain d;
  d.name = "bowtie";
  d.classify = [](const Point2& p) {
    const double g = 4 * p.x * p.x - 4 * std::pow(p.x, 4) / 0.81 - p.y * p.y;
    if (std::abs(g) <= detail::kBoundaryTol) return Region::boundary;
    return g > 0 ? Region::interior : Region::exterior;
  };
  BoundaryCurve c;
  c.at = [](double t) {
    return Point2{0.9 * std::sin(2 * pi * t), 0.9 * std::sin(4 * pi * t)};
  };
  c.speed = [](double t) {
    return 2 * pi * std::hypot(0.9 * std::cos(2 * pi * t), 1.8 * std::cos(4 * pi * t));
  };
  d.curves.push_back(std::move(c));
  d.bbox = {-0.9, 0.9, -0.9, 0.9};
  d.corners.push_back({0, 0.0});   // origin pinch, first crossing
  d.corners.push_back({0, 0.5});   // origin pinch, second crossing
  return d;
}

}  // namespace domains

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "diamond", "pentagon", "triangle",           "lune",
      "ellipse", "square",   "five_petal_annulus", "bowtie"};
  return names;
}

inline Domain catalog(const std::string& name) {
  using domains::polygon;
  if (name == "diamond")
    return polygon("diamond", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  if (name == "pentagon")
    return polygon("pentagon",
                   {{0, 0.9}, {-0.9, 0.2}, {-0.7, -0.8}, {0.7, -0.8}, {0.9, 0.2}});
  if (name == "triangle")
    return polygon("triangle", {{0, 0.9}, {-0.6, -0.9}, {0.6, -0.9}});
  if (name == "square")
    return polygon("square", {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  if (name == "lune") return domains::lune();
  if (name == "ellipse") return domains::ellipse(0.6, 0.9);
  if (name == "five_petal_annulus") return domains::five_petal_annulus();
  if (name == "bowtie") return domains::bowtie();

  std::string msg = "unknown domain '" + name + "'; valid identifiers:";
  for (const auto& n : catalog_names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

}  // namespace fec
