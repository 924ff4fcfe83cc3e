#include "qlab/quantize.hpp"

#include "qlab/errors.hpp"

#include <map>

namespace qlab {

namespace {

QuantizerReport finish(const Coeffs& x, Coeffs digits, Scalar error, Scalar guarantee, const Scalar& delta) {
  QuantizerReport r;
  r.neighborly_excess = neighborly_excess(x, digits, delta);
  r.choice.digits = std::move(digits);
  r.choice.error = error;
  r.error = std::move(error);
  r.guarantee = std::move(guarantee);
  return r;
}

// Greedy over the given indices (ascending) keeping the running sum of
// a_i - d_i within the net radius.
Coeffs summing_digits(const Coeffs& x, const std::vector<Index>& indices, const NetFamily& nets) {
  Coeffs d;
  Scalar run = 0;
  for (Index i : indices) {
    Scalar a = x.get(i);
    if (a == 0) continue;
    Scalar target = run + a;
    Scalar digit = pick_nearest(nets.at(i), target);
    d.set(i, digit);
    run = target - digit;
  }
  return d;
}

void require_within(const Coeffs& x, std::size_t dimension, const char* what) {
  auto top = x.max_index();
  if (top && *top >= dimension) throw IndexError(std::string("coefficient index outside the ") + what + " space");
}

} // namespace

Scalar neighborly_excess(const Coeffs& x, const Coeffs& digits, const Scalar& delta) {
  Scalar worst = sup_abs(x - digits);
  return delta > 0 ? Scalar(worst / delta) : Scalar(0);
}

QuantizerReport quantize_c0(const Coeffs& x, const NetFamily& nets) {
  Coeffs d;
  for (const auto& [i, a] : x) d.set(i, pick_nearest(nets.at(i), a));
  Scalar delta = nets.max_delta(x.support());
  return finish(x, d, sup_abs(x - d), delta, delta);
}

QuantizerReport quantize_summing(const Coeffs& x, const NetFamily& nets) {
  Coeffs d = summing_digits(x, x.support(), nets);
  Scalar run = 0, error = 0;
  for (const auto& [i, r] : x - d) {
    run += r;
    error = std::max(error, abs(run));
  }
  Scalar delta = nets.max_delta(x.support());
  return finish(x, d, error, delta, delta);
}

QuantizerReport quantize_multisign(const Coeffs& x, const NetFamily& nets,
                                   const std::vector<std::vector<int>>& signs) {
  BasisSpace space = BasisSpace::multisign(signs);
  require_within(x, space.dimension(), "multisign");
  // Sign classes: indices sharing the same column of the sign matrix.
  std::map<std::vector<int>, std::vector<Index>> classes;
  for (Index i : x.support()) {
    std::vector<int> column;
    for (const auto& row : signs) column.push_back(row[i]);
    classes[column].push_back(i);
  }
  Coeffs d;
  for (const auto& [pattern, indices] : classes) d += summing_digits(x, indices, nets);
  Scalar delta = nets.max_delta(x.support());
  Scalar guarantee = delta * pow2(static_cast<int>(signs.size()));
  return finish(x, d, norm(space, x - d), guarantee, delta);
}

QuantizerReport quantize_schauder(const Coeffs& x, const NetFamily& nets) {
  auto top = x.max_index();
  SchauderSpace space{top ? *top : 0};
  Coeffs d;
  Coeffs residual; // sum_{i < n} (a_i - d_i) f_i
  auto value_at = [&](const Scalar& t) {
    Scalar v = 0;
    for (const auto& [i, r] : residual) v += r * schauder_basis_value(i, t);
    return v;
  };
  for (const auto& [n, a] : x) {
    Scalar digit = 0;
    if (n == 0) {
      digit = pick_nearest(nets.at(0), a);
    } else if (n == 1) {
      digit = pick_nearest(nets.at(1), value_at(Scalar(1)) + a);
    } else {
      std::size_t k = 0;
      while ((std::size_t{2} << k) <= n) ++k;
      const std::size_t l = n - (std::size_t{1} << k);
      Scalar left = Scalar(l) / pow2(static_cast<int>(k));
      Scalar right = Scalar(l + 1) / pow2(static_cast<int>(k));
      Scalar mid = (left + right) / 2;
      Scalar at_mid = value_at(mid) + a;
      Scalar edge = std::max(abs(value_at(left)), abs(value_at(right)));
      if (abs(at_mid) > edge) digit = pick_nearest(nets.at(n), at_mid);
    }
    if (digit != 0) d.set(n, digit);
    residual.set(n, a - digit);
  }
  Scalar delta = nets.max_delta(x.support());
  return finish(x, d, norm(BasisSpace(space), x - d), delta, delta);
}

QuantizerReport quantize_tree(const Coeffs& x, const NetFamily& nets, const TreeSpace& space) {
  BasisSpace basis{space};
  require_within(x, basis.dimension(), "tree");
  Coeffs d;
  std::vector<Scalar> path(space.parents.size());
  for (std::size_t i = 0; i < space.parents.size(); ++i) {
    Scalar above = space.parents[i] ? path[*space.parents[i]] : Scalar(0);
    Scalar a = x.get(i);
    Scalar digit = a == 0 ? Scalar(0) : pick_nearest(nets.at(i), above + a);
    if (digit != 0) d.set(i, digit);
    path[i] = above + a - digit;
  }
  Scalar delta = nets.max_delta(x.support());
  return finish(x, d, norm(basis, x - d), delta, delta);
}

QuantizerReport quantize_y(const Coeffs& x, const NetFamily& nets, const DirectSumYSpace& space) {
  BasisSpace basis{space};
  require_within(x, basis.dimension(), "Y");
  Coeffs d;
  for (std::size_t n = 1; n <= space.blocks; ++n) {
    const std::size_t sq = n * n;
    std::vector<Index> prefix;
    for (std::size_t j = 1; j <= sq; ++j) prefix.push_back(y_flat_index(n, j));
    d += summing_digits(x, prefix, nets);
    Index closing = y_flat_index(n, sq + 1);
    Scalar a = x.get(closing);
    if (a != 0) d.set(closing, pick_nearest(nets.at(closing), a));
  }
  Scalar delta = nets.max_delta(x.support());
  // 3 delta from the block sup part, delta ||phi_n|| / n^2 from the inner part.
  Scalar series = 0;
  for (std::size_t n = 1; n <= space.blocks; ++n)
    series += basis_vector_norm(*space.inner, n - 1) / Scalar(n * n);
  return finish(x, d, norm(basis, x - d), 3 * delta + delta * series, delta);
}

QuantizationChoice round_nearest(const Coeffs& x, const NetFamily& nets) {
  QuantizationChoice c;
  for (const auto& [i, a] : x) c.digits.set(i, pick_nearest(nets.at(i), a));
  return c;
}

std::optional<QuantizerReport> quantize(const BasisSpace& space, const Coeffs& x, const NetFamily& nets) {
  std::optional<QuantizerReport> r;
  if (space.as<C0Space>()) {
    require_within(x, space.dimension(), "c0");
    r = quantize_c0(x, nets);
  } else if (space.as<SummingSpace>()) {
    require_within(x, space.dimension(), "summing");
    r = quantize_summing(x, nets);
  } else if (const auto* s = space.as<MultiSignSpace>()) {
    r = quantize_multisign(x, nets, s->signs);
  } else if (space.as<SchauderSpace>()) {
    require_within(x, space.dimension(), "Schauder");
    r = quantize_schauder(x, nets);
  } else if (const auto* s = space.as<TreeSpace>()) {
    r = quantize_tree(x, nets, *s);
  } else if (const auto* s = space.as<DirectSumYSpace>()) {
    r = quantize_y(x, nets, *s);
  } else {
    return std::nullopt;
  }
  r->error = norm(space, x - r->choice.digits);
  r->choice.error = r->error;
  return r;
}

} // namespace qlab
