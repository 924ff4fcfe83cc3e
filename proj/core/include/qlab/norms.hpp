#pragma once

#include "qlab/coeffs.hpp"
#include "qlab/polytope.hpp"
#include "qlab/scalar.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qlab {

class BasisSpace;

/// Sup norm on indices 0..n-1.
struct C0Space {
  std::size_t n;
};

/// max_k |a_0 + ... + a_k| on indices 0..n-1.
struct SummingSpace {
  std::size_t n;
};

/// max over rows r of the summing norm of (signs[r][i] a_i).
struct MultiSignSpace {
  std::size_t n;
  std::vector<std::vector<int>> signs; // rows x n, entries +-1
};

/// Span of the Schauder hat functions f_0..f_max_index in C[0,1]:
/// f_0 = 1, f_1(t) = t, f_{2^k+l} the hat on [l 2^-k, (l+1) 2^-k].
struct SchauderSpace {
  std::size_t max_index;
};

/// Path-sum norm max_beta |sum_{alpha <= beta} x_alpha| on the nodes of a
/// forest given by parents (parent index < child index).
struct TreeSpace {
  std::vector<std::optional<std::size_t>> parents;
};

/// Haar functions h_0..h_{2^level - 1} on the Cantor set.
struct HaarSpace {
  std::size_t level;
};

/// Finite section of Y = X (+)_inf (sum l_inf^{n^2})_0 with blocks
/// n = 1..blocks; block n has n^2 + 1 coordinates, indexed
/// lexicographically. phi_n is the inner basis vector with index n - 1.
struct DirectSumYSpace {
  std::shared_ptr<const BasisSpace> inner;
  std::size_t blocks;
};

/// Gauge of a star-shaped body in R^n.
struct PolyGaugeSpace {
  Body body;
};

/// Inner space with basis vectors e_i replaced by scales[i] e_i.
struct ScaledSpace {
  std::shared_ptr<const BasisSpace> inner;
  std::vector<Scalar> scales;
};

using SpaceVariant = std::variant<C0Space, SummingSpace, MultiSignSpace, SchauderSpace, TreeSpace,
                                  HaarSpace, DirectSumYSpace, PolyGaugeSpace, ScaledSpace>;

/// A finite-dimensional normed space with a distinguished basis. The
/// constructor validates the family invariants.
class BasisSpace {
public:
  BasisSpace(SpaceVariant family);

  static BasisSpace c0(std::size_t n) { return BasisSpace(C0Space{n}); }
  static BasisSpace summing(std::size_t n) { return BasisSpace(SummingSpace{n}); }
  static BasisSpace multisign(std::vector<std::vector<int>> signs);
  static BasisSpace schauder(std::size_t max_index) { return BasisSpace(SchauderSpace{max_index}); }
  static BasisSpace tree(std::vector<std::optional<std::size_t>> parents) { return BasisSpace(TreeSpace{std::move(parents)}); }
  static BasisSpace haar(std::size_t level) { return BasisSpace(HaarSpace{level}); }
  static BasisSpace direct_sum_y(BasisSpace inner, std::size_t blocks);
  static BasisSpace poly_gauge(Body body) { return BasisSpace(PolyGaugeSpace{std::move(body)}); }

  const SpaceVariant& family() const noexcept { return family_; }
  template <class T> const T* as() const noexcept { return std::get_if<T>(&family_); }

  std::string family_name() const;
  /// Number of basis vectors; valid indices are 0..dimension()-1.
  std::size_t dimension() const;

private:
  SpaceVariant family_;
};

/// Exact norm; throws IndexError when x has support outside the space.
Scalar norm(const BasisSpace& space, const Coeffs& x);

/// Dyadic rational in [0, 1].
class DyadicPoint {
public:
  /// numerator / 2^exponent; throws IndexError outside [0, 1].
  DyadicPoint(std::uint64_t numerator, unsigned exponent);
  /// Throws IndexError unless value is in [0,1] with a power-of-two denominator.
  explicit DyadicPoint(const Scalar& value);

  const Scalar& value() const noexcept { return value_; }

private:
  Scalar value_;
};

/// Value of sum a_i f_i at a dyadic point (Schauder).
Scalar eval_function(const SchauderSpace& space, const Coeffs& x, const DyadicPoint& p);
/// Value of sum a_i h_i on a depth-`level` atom, atoms numbered left to right.
Scalar eval_function(const HaarSpace& space, const Coeffs& x, std::size_t atom);

/// Value of the Schauder basis function f_i at t.
Scalar schauder_basis_value(std::size_t i, const Scalar& t);

/// Norm of the coefficient functional x -> a_i. Exact for every family
/// except MultiSignSpace, where the returned 2 is an upper bound.
Scalar dual_coeff_norm(const BasisSpace& space, Index i);

/// ||e_i||.
Scalar basis_vector_norm(const BasisSpace& space, Index i);

/// ||P_k x|| <= ||x|| for all prefixes k.
bool is_prefix_monotone(const BasisSpace& space);

struct NormalizedSpace {
  BasisSpace space;           // basis vectors e_i / ||e_i||
  std::vector<Scalar> scales; // 1 / ||e_i||
  Scalar delta_factor;        // a = min ||e_i||: (eps, delta) -> (eps, a delta)
};

/// Rescales every basis vector to norm one.
NormalizedSpace normalize_space(const BasisSpace& space);

/// Indices of block n (1-based), coordinates j = 1..n^2+1, of a Y section.
Index y_flat_index(std::size_t block, std::size_t j);
std::size_t y_dimension(std::size_t blocks);
/// Inverse of y_flat_index.
std::pair<std::size_t, std::size_t> y_block_coordinate(Index flat);

} // namespace qlab
