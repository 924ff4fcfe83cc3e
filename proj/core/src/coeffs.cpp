#include "qlab/coeffs.hpp"

#include <algorithm>

namespace qlab {

Coeffs::Coeffs(std::initializer_list<std::pair<const Index, Scalar>> entries) {
  for (const auto& [i, v] : entries) add_to(i, v);
}

Coeffs Coeffs::dense(const std::vector<Scalar>& values, Index offset) {
  Coeffs c;
  for (std::size_t k = 0; k < values.size(); ++k) c.set(offset + k, values[k]);
  return c;
}

Scalar Coeffs::get(Index i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? Scalar(0) : it->second;
}

void Coeffs::set(Index i, const Scalar& value) {
  if (value == 0)
    entries_.erase(i);
  else
    entries_.insert_or_assign(i, value);
}

void Coeffs::add_to(Index i, const Scalar& value) {
  if (value == 0) return;
  auto [it, inserted] = entries_.try_emplace(i, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) entries_.erase(it);
  }
}

std::vector<Index> Coeffs::support() const {
  std::vector<Index> s;
  s.reserve(entries_.size());
  for (const auto& [i, v] : entries_) s.push_back(i);
  return s;
}

std::optional<Index> Coeffs::max_index() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.rbegin()->first;
}

Coeffs Coeffs::prefix(Index k) const {
  Coeffs c;
  for (auto it = entries_.begin(); it != entries_.end() && it->first <= k; ++it) c.entries_.insert(*it);
  return c;
}

Coeffs Coeffs::restrict_to(const std::vector<Index>& indices) const {
  Coeffs c;
  for (Index i : indices)
    if (auto it = entries_.find(i); it != entries_.end()) c.entries_.insert(*it);
  return c;
}

Coeffs& Coeffs::operator+=(const Coeffs& other) {
  for (const auto& [i, v] : other) add_to(i, v);
  return *this;
}

Coeffs& Coeffs::operator-=(const Coeffs& other) {
  for (const auto& [i, v] : other) add_to(i, -v);
  return *this;
}

Coeffs& Coeffs::operator*=(const Scalar& factor) {
  if (factor == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& [i, v] : entries_) v *= factor;
  return *this;
}

Coeffs operator+(Coeffs a, const Coeffs& b) { return a += b; }
Coeffs operator-(Coeffs a, const Coeffs& b) { return a -= b; }
Coeffs operator*(Coeffs a, const Scalar& factor) { return a *= factor; }
Coeffs operator*(const Scalar& factor, Coeffs a) { return a *= factor; }

Scalar sup_abs(const Coeffs& a) {
  Scalar m = 0;
  for (const auto& [i, v] : a) m = std::max(m, abs(v));
  return m;
}

} // namespace qlab
