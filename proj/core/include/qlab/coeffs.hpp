#pragma once

#include "qlab/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qlab {

using Index = std::size_t;

/// Finitely supported coefficient vector sum a_i e_i. Only nonzero
/// entries are stored, so equality is support-and-value equality.
class Coeffs {
public:
  using Storage = std::map<Index, Scalar>;
  using const_iterator = Storage::const_iterator;

  Coeffs() = default;
  Coeffs(std::initializer_list<std::pair<const Index, Scalar>> entries);

  /// Dense constructor: entry k of `values` becomes index `offset + k`.
  static Coeffs dense(const std::vector<Scalar>& values, Index offset = 0);

  Scalar get(Index i) const;
  void set(Index i, const Scalar& value);
  void add_to(Index i, const Scalar& value);

  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  std::vector<Index> support() const;
  std::optional<Index> max_index() const;

  /// Keeps the entries with index <= k (basis projection P_k).
  Coeffs prefix(Index k) const;
  /// Keeps the entries whose index is in `indices`.
  Coeffs restrict_to(const std::vector<Index>& indices) const;

  const_iterator begin() const noexcept { return entries_.begin(); }
  const_iterator end() const noexcept { return entries_.end(); }

  Coeffs& operator+=(const Coeffs& other);
  Coeffs& operator-=(const Coeffs& other);
  Coeffs& operator*=(const Scalar& factor);

  friend bool operator==(const Coeffs& a, const Coeffs& b) { return a.entries_ == b.entries_; }

private:
  Storage entries_;
};

Coeffs operator+(Coeffs a, const Coeffs& b);
Coeffs operator-(Coeffs a, const Coeffs& b);
Coeffs operator*(Coeffs a, const Scalar& factor);
Coeffs operator*(const Scalar& factor, Coeffs a);

inline Coeffs coeffs_sub(const Coeffs& a, const Coeffs& b) { return a - b; }
inline Coeffs coeffs_scale(const Coeffs& a, const Scalar& factor) { return a * factor; }

/// max_i |a_i|, zero for the empty vector.
Scalar sup_abs(const Coeffs& a);

} // namespace qlab
