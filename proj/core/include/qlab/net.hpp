#pragma once

#include "qlab/coeffs.hpp"
#include "qlab/scalar.hpp"

#include <map>
#include <optional>
#include <vector>

namespace qlab {

/// A quantization alphabet for one coordinate: either the lattice
/// delta*Z or an explicit finite delta-net of the window [-reach, reach].
/// Both always contain 0.
class Net {
public:
  enum class Kind { lattice, explicit_points };

  static Net lattice(const Scalar& delta);
  /// Points are sorted and deduplicated; throws InvalidArgument when 0 is
  /// missing or some point of [-reach, reach] is farther than delta from
  /// every member.
  static Net explicit_points(std::vector<Scalar> points, const Scalar& delta, const Scalar& reach);

  Kind kind() const noexcept { return kind_; }
  /// The net parameter: every point of the covered range is within
  /// delta() of a member.
  const Scalar& delta() const noexcept { return delta_; }
  /// Covered half-width; nullopt for lattices (all of R).
  const std::optional<Scalar>& reach() const noexcept { return reach_; }
  /// Members of an explicit net (empty for lattices).
  const std::vector<Scalar>& points() const noexcept { return points_; }

  bool contains(const Scalar& value) const;

  /// The one or two members closest to x, ascending.
  std::vector<Scalar> nearest(const Scalar& x) const;

  /// Members d with |d - center| <= radius, ascending.
  std::vector<Scalar> points_within(const Scalar& center, const Scalar& radius) const;

  /// Same net scaled by a positive factor (lattice: delta*factor).
  Net scaled(const Scalar& factor) const;

  friend bool operator==(const Net& a, const Net& b);

private:
  Net() = default;

  Kind kind_ = Kind::lattice;
  Scalar delta_;
  std::optional<Scalar> reach_;
  std::vector<Scalar> points_;
};

inline std::vector<Scalar> net_nearest(const Net& net, const Scalar& x) { return net.nearest(x); }
inline std::vector<Scalar> net_points_within(const Net& net, const Scalar& center, const Scalar& radius) {
  return net.points_within(center, radius);
}

/// Tie rule used by every quantizer: among equally near candidates the
/// smaller absolute value wins, then the non-negative one.
Scalar pick_nearest(const Net& net, const Scalar& x);

/// Orders candidates by |x - d|, then |d|, then d >= 0 first.
void sort_by_closeness(std::vector<Scalar>& candidates, const Scalar& x);

/// Per-index nets with a default for unmapped indices.
class NetFamily {
public:
  explicit NetFamily(Net fallback) : default_(std::move(fallback)) {}

  void set(Index i, Net net) { overrides_.insert_or_assign(i, std::move(net)); }
  const Net& at(Index i) const;
  const Net& fallback() const noexcept { return default_; }
  const std::map<Index, Net>& overrides() const noexcept { return overrides_; }

  /// Largest net parameter over the given indices (the fallback's when empty).
  Scalar max_delta(const std::vector<Index>& indices) const;

  NetFamily scaled(const Scalar& factor) const;

private:
  Net default_;
  std::map<Index, Net> overrides_;
};

/// Selected digits d_i (nonzero ones stored) and the error, once measured.
struct QuantizationChoice {
  Coeffs digits;
  std::optional<Scalar> error;
};

} // namespace qlab
