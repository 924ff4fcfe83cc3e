#include "qlab/polytope.hpp"

#include "qlab/errors.hpp"

#include <algorithm>
#include <optional>

namespace qlab {

namespace {

Scalar dot(const Point& a, const Point& b) {
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Solves A x = b by Gauss-Jordan elimination; nullopt when singular.
std::optional<Point> solve(std::vector<Point> a, Point b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Scalar f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = 0; r < n; ++r) b[r] /= a[r][r];
  return b;
}

std::size_t rank_of(std::vector<Point> rows, std::size_t n) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Scalar f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < n; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

// A nonzero vector orthogonal to the given n-1 points, or nullopt when
// they are linearly dependent.
std::optional<Point> orthogonal(const std::vector<const Point*>& pts, std::size_t n) {
  if (n == 1) return Point{Scalar(1)};
  if (n == 2) {
    const Point& p = *pts[0];
    if (p[0] == 0 && p[1] == 0) return std::nullopt;
    return Point{-p[1], p[0]};
  }
  const Point& p = *pts[0];
  const Point& q = *pts[1];
  Point u{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
  if (u[0] == 0 && u[1] == 0 && u[2] == 0) return std::nullopt;
  return u;
}

template <class F> void for_each_subset(std::size_t m, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > m) return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool origin_interior(const std::vector<Point>& pts, std::size_t n) {
  if (rank_of(pts, n) < n) return false;
  if (n == 1) {
    bool pos = false, neg = false;
    for (const auto& p : pts) {
      pos = pos || p[0] > 0;
      neg = neg || p[0] < 0;
    }
    return pos && neg;
  }
  bool interior = true;
  for_each_subset(pts.size(), n - 1, [&](const std::vector<std::size_t>& idx) {
    if (!interior) return;
    std::vector<const Point*> sel;
    for (auto i : idx) sel.push_back(&pts[i]);
    auto u = orthogonal(sel, n);
    if (!u) return;
    for (int sign : {1, -1}) {
      bool all_nonpositive = true;
      for (const auto& p : pts)
        if (sign * dot(*u, p) > 0) {
          all_nonpositive = false;
          break;
        }
      if (all_nonpositive) interior = false;
    }
  });
  return interior;
}

} // namespace

ConvexPolytope ConvexPolytope::hull(const std::vector<Point>& points) {
  if (points.empty()) throw InvalidArgument("polytope needs vertices");
  const std::size_t n = points.front().size();
  if (n < 1 || n > 3) throw InvalidArgument("polytope dimension must be 1, 2 or 3");
  for (const auto& p : points)
    if (p.size() != n) throw InvalidArgument("polytope vertices have mixed dimensions");
  if (!origin_interior(points, n)) throw InvalidArgument("0 must be an interior point of the polytope");

  ConvexPolytope poly;
  poly.dim_ = n;
  for_each_subset(points.size(), n, [&](const std::vector<std::size_t>& idx) {
    std::vector<Point> rows;
    for (auto i : idx) rows.push_back(points[i]);
    auto normal = solve(rows, Point(n, Scalar(1)));
    if (!normal) return;
    for (const auto& p : points)
      if (dot(*normal, p) > 1) return;
    for (const auto& f : poly.facets_)
      if (f.normal == *normal) return;
    poly.facets_.push_back(Facet{*normal});
  });

  for (const auto& p : points) {
    std::vector<Point> tight;
    for (const auto& f : poly.facets_)
      if (dot(f.normal, p) == 1) tight.push_back(f.normal);
    if (rank_of(tight, n) == n && std::find(poly.vertices_.begin(), poly.vertices_.end(), p) == poly.vertices_.end())
      poly.vertices_.push_back(p);
  }
  return poly;
}

ConvexPolytope ConvexPolytope::box(const Point& lo, const Point& hi) {
  const std::size_t n = lo.size();
  if (n < 1 || n > 3 || hi.size() != n) throw InvalidArgument("box dimension must be 1, 2 or 3");
  for (std::size_t i = 0; i < n; ++i)
    if (!(lo[i] < 0 && hi[i] > 0)) throw InvalidArgument("box must contain 0 in its interior");
  ConvexPolytope poly;
  poly.dim_ = n;
  for (std::size_t i = 0; i < n; ++i) {
    Point up(n, Scalar(0)), down(n, Scalar(0));
    up[i] = 1 / hi[i];
    down[i] = 1 / lo[i];
    poly.facets_.push_back(Facet{up});
    poly.facets_.push_back(Facet{down});
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Point v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? hi[i] : lo[i];
    poly.vertices_.push_back(v);
  }
  return poly;
}

Scalar ConvexPolytope::gauge(const Point& p) const {
  Scalar t = 0;
  for (const auto& f : facets_) {
    Scalar s = dot(f.normal, p);
    if (s > t) t = s;
  }
  return t;
}

Body::Body(ConvexPolytope convex) { pieces_.push_back(std::move(convex)); finish(); }

Body::Body(std::vector<ConvexPolytope> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InvalidArgument("body needs at least one piece");
  for (const auto& p : pieces_)
    if (p.dimension() != pieces_.front().dimension()) throw InvalidArgument("body pieces have mixed dimensions");
  finish();
}

Body Body::cube(std::size_t n, const Scalar& half_side) {
  return box(Point(n, Scalar(-half_side)), Point(n, half_side));
}

void Body::finish() {
  const std::size_t n = dimension();
  lower_.assign(n, Scalar(0));
  upper_.assign(n, Scalar(0));
  std::vector<Point> all;
  for (const auto& piece : pieces_)
    for (const auto& v : piece.vertices()) {
      all.push_back(v);
      for (std::size_t i = 0; i < n; ++i) {
        lower_[i] = std::min(lower_[i], v[i]);
        upper_[i] = std::max(upper_[i], v[i]);
      }
    }
  symmetric_ = true;
  for (const auto& v : all) {
    Point neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = -v[i];
    if (std::find(all.begin(), all.end(), neg) == all.end()) {
      symmetric_ = false;
      break;
    }
  }
}

Scalar Body::gauge(const Point& p) const {
  if (p.size() != dimension()) throw IndexError("point dimension does not match the body");
  Scalar best = pieces_.front().gauge(p);
  for (std::size_t k = 1; k < pieces_.size(); ++k) best = std::min(best, pieces_[k].gauge(p));
  return best;
}

Scalar Body::coordinate_extent(std::size_t i) const {
  if (i >= dimension()) throw IndexError("coordinate outside the body dimension");
  return std::max(Scalar(-lower_[i]), upper_[i]);
}

Body Body::scaled(const Scalar& factor) const {
  if (factor <= 0) throw InvalidArgument("body scale factor must be positive");
  std::vector<ConvexPolytope> out;
  for (const auto& piece : pieces_) {
    std::vector<Point> vs = piece.vertices();
    for (auto& v : vs)
      for (auto& c : v) c *= factor;
    out.push_back(ConvexPolytope::hull(vs));
  }
  return Body(std::move(out));
}

LatticeSpec::LatticeSpec(std::vector<Point> basis) : basis_(std::move(basis)) {
  const std::size_t n = basis_.size();
  if (n < 1 || n > 3) throw InvalidArgument("lattice dimension must be 1, 2 or 3");
  for (const auto& b : basis_)
    if (b.size() != n) throw InvalidArgument("lattice basis must be square");

  // G has the basis vectors as columns; invert [G | I].
  std::vector<Point> a(n, Point(2 * n, Scalar(0)));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = basis_[c][r];
    a[r][n + r] = 1;
  }
  det_ = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw InvalidArgument("lattice generator is singular");
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det_ = -det_;
    }
    det_ *= a[col][col];
    Scalar inv = 1 / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Scalar f = a[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  inverse_.assign(n, std::vector<Scalar>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inverse_[r][c] = a[r][n + c];
}

LatticeSpec LatticeSpec::integer(std::size_t n) { return diagonal(Point(n, Scalar(1))); }

LatticeSpec LatticeSpec::diagonal(const Point& steps) {
  std::vector<Point> basis(steps.size(), Point(steps.size(), Scalar(0)));
  for (std::size_t i = 0; i < steps.size(); ++i) basis[i][i] = steps[i];
  return LatticeSpec(std::move(basis));
}

Point LatticeSpec::point(const std::vector<Integer>& k) const {
  const std::size_t n = dimension();
  Point p(n, Scalar(0));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) p[r] += basis_[c][r] * Scalar(k[c]);
  return p;
}

Point LatticeSpec::coordinates(const Point& y) const {
  const std::size_t n = dimension();
  Point k(n, Scalar(0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) k[r] += inverse_[r][c] * y[c];
  return k;
}

void LatticeSpec::integer_box(const Point& lo, const Point& hi, std::vector<Integer>& k_lo,
                              std::vector<Integer>& k_hi) const {
  const std::size_t n = dimension();
  k_lo.assign(n, Integer(0));
  k_hi.assign(n, Integer(0));
  for (std::size_t r = 0; r < n; ++r) {
    Scalar min = 0, max = 0;
    for (std::size_t c = 0; c < n; ++c) {
      Scalar a = inverse_[r][c] * lo[c];
      Scalar b = inverse_[r][c] * hi[c];
      if (a > b) std::swap(a, b);
      min += a;
      max += b;
    }
    k_lo[r] = ceil(min);
    k_hi[r] = floor(max);
  }
}

} // namespace qlab
