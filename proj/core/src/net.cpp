#include "qlab/net.hpp"

#include "qlab/errors.hpp"

#include <algorithm>

namespace qlab {

Net Net::lattice(const Scalar& delta) {
  if (delta <= 0) throw InvalidArgument("lattice net needs delta > 0");
  Net n;
  n.kind_ = Kind::lattice;
  n.delta_ = delta;
  return n;
}

Net Net::explicit_points(std::vector<Scalar> points, const Scalar& delta, const Scalar& reach) {
  if (delta <= 0) throw InvalidArgument("explicit net needs delta > 0");
  if (reach < 0) throw InvalidArgument("explicit net needs reach >= 0");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (!std::binary_search(points.begin(), points.end(), Scalar(0)))
    throw InvalidArgument("explicit net must contain 0");

  const Scalar lo = -reach;
  const Scalar& hi = reach;
  if (points.front() - lo > delta || hi - points.back() > delta)
    throw InvalidArgument("explicit net does not cover the ends of its window at mesh " + to_string(delta));
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const Scalar& a = points[k];
    const Scalar& b = points[k + 1];
    Scalar left = std::max(a, lo);
    Scalar right = std::min(b, hi);
    if (left > right) continue;
    Scalar mid = (a + b) / 2;
    Scalar t = std::clamp(mid, left, right);
    if (std::min(Scalar(t - a), Scalar(b - t)) > delta)
      throw InvalidArgument("explicit net gap (" + to_string(a) + ", " + to_string(b) + ") exceeds twice the mesh " +
                            to_string(delta));
  }

  Net n;
  n.kind_ = Kind::explicit_points;
  n.delta_ = delta;
  n.reach_ = reach;
  n.points_ = std::move(points);
  return n;
}

bool Net::contains(const Scalar& value) const {
  if (kind_ == Kind::lattice) {
    Scalar q = value / delta_;
    return q.get_den() == 1;
  }
  return std::binary_search(points_.begin(), points_.end(), value);
}

std::vector<Scalar> Net::nearest(const Scalar& x) const {
  if (kind_ == Kind::lattice) {
    Scalar q = x / delta_;
    if (q.get_den() == 1) return {x};
    Scalar below = Scalar(floor(q)) * delta_;
    Scalar above = below + delta_;
    Scalar db = x - below;
    Scalar da = above - x;
    if (db < da) return {below};
    if (da < db) return {above};
    return {below, above};
  }

  if (abs(x) > *reach_ + delta_)
    throw CoverageError("point " + to_string(x) + " is outside the explicit net window [-" + to_string(*reach_) +
                        ", " + to_string(*reach_) + "] extended by " + to_string(delta_));
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  if (it != points_.end() && *it == x) return {x};
  if (it == points_.begin()) return {*it};
  if (it == points_.end()) return {points_.back()};
  const Scalar& below = *(it - 1);
  const Scalar& above = *it;
  Scalar db = x - below;
  Scalar da = above - x;
  if (db < da) return {below};
  if (da < db) return {above};
  return {below, above};
}

std::vector<Scalar> Net::points_within(const Scalar& center, const Scalar& radius) const {
  if (radius < 0) throw InvalidArgument("negative radius");
  std::vector<Scalar> out;
  if (kind_ == Kind::lattice) {
    Integer k_lo = ceil((center - radius) / delta_);
    Integer k_hi = floor((center + radius) / delta_);
    for (Integer k = k_lo; k <= k_hi; ++k) out.emplace_back(Scalar(k) * delta_);
    return out;
  }
  if (center - radius < -*reach_ || center + radius > *reach_)
    throw CoverageError("interval [" + to_string(center - radius) + ", " + to_string(center + radius) +
                        "] leaves the explicit net window [-" + to_string(*reach_) + ", " + to_string(*reach_) + "]");
  auto first = std::lower_bound(points_.begin(), points_.end(), Scalar(center - radius));
  auto last = std::upper_bound(points_.begin(), points_.end(), Scalar(center + radius));
  out.assign(first, last);
  return out;
}

Net Net::scaled(const Scalar& factor) const {
  if (factor <= 0) throw InvalidArgument("net scale factor must be positive");
  if (kind_ == Kind::lattice) return lattice(delta_ * factor);
  std::vector<Scalar> pts;
  pts.reserve(points_.size());
  for (const auto& p : points_) pts.emplace_back(p * factor);
  return explicit_points(std::move(pts), delta_ * factor, *reach_ * factor);
}

bool operator==(const Net& a, const Net& b) {
  return a.kind_ == b.kind_ && a.delta_ == b.delta_ && a.reach_ == b.reach_ && a.points_ == b.points_;
}

void sort_by_closeness(std::vector<Scalar>& candidates, const Scalar& x) {
  std::stable_sort(candidates.begin(), candidates.end(), [&](const Scalar& a, const Scalar& b) {
    Scalar da = abs(x - a);
    Scalar db = abs(x - b);
    if (da != db) return da < db;
    Scalar aa = abs(a);
    Scalar ab = abs(b);
    if (aa != ab) return aa < ab;
    return a > b;
  });
}

Scalar pick_nearest(const Net& net, const Scalar& x) {
  std::vector<Scalar> c = net.nearest(x);
  if (c.size() == 1) return c.front();
  sort_by_closeness(c, x);
  return c.front();
}

const Net& NetFamily::at(Index i) const {
  auto it = overrides_.find(i);
  return it == overrides_.end() ? default_ : it->second;
}

Scalar NetFamily::max_delta(const std::vector<Index>& indices) const {
  if (indices.empty()) return default_.delta();
  Scalar m = 0;
  for (Index i : indices) m = std::max(m, at(i).delta());
  return m;
}

NetFamily NetFamily::scaled(const Scalar& factor) const {
  NetFamily out(default_.scaled(factor));
  for (const auto& [i, n] : overrides_) out.set(i, n.scaled(factor));
  return out;
}

} // namespace qlab
