#pragma once

#include "qlab/scalar.hpp"

#include <cstddef>
#include <vector>

namespace qlab {

using Point = std::vector<Scalar>;

/// Half-space <normal, x> <= 1. The offset is normalized to one, which
/// is possible because 0 lies in the interior of every polytope here.
struct Facet {
  Point normal;
};

/// Convex polytope in dimension 1..3 with 0 in its interior, stored both
/// as vertices (hull vertices only) and as facet inequalities.
class ConvexPolytope {
public:
  /// Convex hull of the given points; throws InvalidArgument when 0 is not
  /// interior or the points are degenerate.
  static ConvexPolytope hull(const std::vector<Point>& points);
  /// Axis box [lo_1, hi_1] x ... ; requires lo_i < 0 < hi_i.
  static ConvexPolytope box(const Point& lo, const Point& hi);

  std::size_t dimension() const noexcept { return dim_; }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }

  /// min{t >= 0 : p in tK} = max(0, max_f <n_f, p>).
  Scalar gauge(const Point& p) const;
  bool contains(const Point& p) const { return gauge(p) <= 1; }

private:
  std::size_t dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Facet> facets_;
};

/// A body star-shaped about 0: a finite union of convex polytopes, each
/// with 0 in its interior. A single piece is the usual convex body.
class Body {
public:
  explicit Body(ConvexPolytope convex);
  explicit Body(std::vector<ConvexPolytope> pieces);

  static Body hull(const std::vector<Point>& points) { return Body(ConvexPolytope::hull(points)); }
  static Body box(const Point& lo, const Point& hi) { return Body(ConvexPolytope::box(lo, hi)); }
  /// [-h, h]^n.
  static Body cube(std::size_t n, const Scalar& half_side);

  std::size_t dimension() const noexcept { return pieces_.front().dimension(); }
  const std::vector<ConvexPolytope>& pieces() const noexcept { return pieces_; }
  bool convex() const noexcept { return pieces_.size() == 1; }
  /// Vertex set closed under negation (checked for every piece union).
  bool symmetric() const noexcept { return symmetric_; }
  bool star_shaped() const noexcept { return true; }

  Scalar gauge(const Point& p) const;
  bool contains(const Point& p) const { return gauge(p) <= 1; }

  /// Axis-aligned bounding box of the body.
  const Point& lower() const noexcept { return lower_; }
  const Point& upper() const noexcept { return upper_; }
  /// max |v_i| over all vertices: the norm of the i-th coordinate functional
  /// with respect to the gauge.
  Scalar coordinate_extent(std::size_t i) const;

  Body scaled(const Scalar& factor) const;

private:
  void finish();

  std::vector<ConvexPolytope> pieces_;
  bool symmetric_ = false;
  Point lower_;
  Point upper_;
};

/// Full-rank lattice L = G Z^n; basis vectors are the columns of G.
class LatticeSpec {
public:
  /// `basis[k]` is the k-th basis vector.
  explicit LatticeSpec(std::vector<Point> basis);
  static LatticeSpec integer(std::size_t n);
  static LatticeSpec diagonal(const Point& steps);

  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<Point>& basis() const noexcept { return basis_; }
  const Scalar& determinant() const noexcept { return det_; }

  /// G k.
  Point point(const std::vector<Integer>& k) const;
  /// G^{-1} y.
  Point coordinates(const Point& y) const;
  /// Integer boxes [lo_j, hi_j] containing every k with G k in the box [lo, hi].
  void integer_box(const Point& lo, const Point& hi, std::vector<Integer>& k_lo, std::vector<Integer>& k_hi) const;

private:
  std::vector<Point> basis_;
  std::vector<std::vector<Scalar>> inverse_; // row-major G^{-1}
  Scalar det_;
};

} // namespace qlab
