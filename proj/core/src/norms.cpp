#include "qlab/norms.hpp"

#include "qlab/errors.hpp"

#include <algorithm>

namespace qlab {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

std::size_t floor_log2(std::size_t v) {
  std::size_t k = 0;
  while (v >>= 1) ++k;
  return k;
}

void check_support(const BasisSpace& space, const Coeffs& x) {
  auto top = x.max_index();
  if (top && *top >= space.dimension())
    throw IndexError("coefficient index " + std::to_string(*top) + " outside a space of dimension " +
                     std::to_string(space.dimension()));
}

Scalar summing_norm(const Coeffs& x) {
  Scalar run = 0, best = 0;
  for (const auto& [i, a] : x) {
    run += a;
    best = std::max(best, abs(run));
  }
  return best;
}

// Node values of sum a_i f_i at j / 2^levels, j = 0..2^levels. Hats start
// at k = 1 (index 2^k + l with l < 2^k), so the first refinement, the node
// 1/2, is plain interpolation of f_0 and f_1.
std::vector<Scalar> schauder_nodes(const Coeffs& x, std::size_t levels) {
  std::vector<Scalar> vals{x.get(0), x.get(0) + x.get(1)};
  for (std::size_t k = 0; k < levels; ++k) {
    const std::size_t width = std::size_t{1} << k;
    std::vector<Scalar> next(2 * width + 1);
    for (std::size_t l = 0; l < width; ++l) {
      next[2 * l] = vals[l];
      next[2 * l + 1] = (vals[l] + vals[l + 1]) / 2;
      if (k > 0) next[2 * l + 1] += x.get(width + l);
    }
    next[2 * width] = vals[width];
    vals = std::move(next);
  }
  return vals;
}

// Values on nodes of the depth-`level` binary tree; leaves are the atoms.
std::vector<Scalar> haar_node_values(const Coeffs& x, std::size_t level) {
  const std::size_t nodes = (std::size_t{1} << (level + 1)) - 1;
  std::vector<Scalar> val(nodes);
  val[0] = x.get(0);
  for (std::size_t k = 0; 2 * k + 2 < nodes; ++k) {
    Scalar a = x.get(k + 1);
    val[2 * k + 1] = val[k] + a;
    val[2 * k + 2] = val[k] - a;
  }
  return val;
}

Point dense_point(const Coeffs& x, std::size_t n) {
  Point p(n, Scalar(0));
  for (const auto& [i, a] : x) p[i] = a;
  return p;
}

} // namespace

BasisSpace::BasisSpace(SpaceVariant family) : family_(std::move(family)) {
  std::visit(overloaded{
                 [](const C0Space& s) {
                   if (s.n < 1) throw InvalidArgument("c0 dimension must be at least 1");
                 },
                 [](const SummingSpace& s) {
                   if (s.n < 1) throw InvalidArgument("summing dimension must be at least 1");
                 },
                 [](const MultiSignSpace& s) {
                   if (s.n < 1 || s.signs.empty()) throw InvalidArgument("multisign needs n >= 1 and a sign row");
                   for (const auto& row : s.signs) {
                     if (row.size() != s.n) throw InvalidArgument("sign row length differs from n");
                     for (int e : row)
                       if (e != 1 && e != -1) throw InvalidArgument("sign entries must be +1 or -1");
                   }
                 },
                 [](const SchauderSpace&) {},
                 [](const TreeSpace& s) {
                   if (s.parents.empty()) throw InvalidArgument("tree needs at least one node");
                   for (std::size_t i = 0; i < s.parents.size(); ++i)
                     if (s.parents[i] && *s.parents[i] >= i)
                       throw InvalidArgument("tree parent index must be smaller than the child's");
                 },
                 [](const HaarSpace& s) {
                   if (s.level < 1 || s.level > 24) throw InvalidArgument("haar level must be in 1..24");
                 },
                 [](const DirectSumYSpace& s) {
                   if (!s.inner) throw InvalidArgument("Y needs an inner space");
                   if (s.blocks < 1) throw InvalidArgument("Y needs at least one block");
                   if (s.inner->dimension() < s.blocks)
                     throw InvalidArgument("inner space dimension is smaller than the block count");
                 },
                 [](const PolyGaugeSpace&) {},
                 [](const ScaledSpace& s) {
                   if (!s.inner || s.scales.size() != s.inner->dimension())
                     throw InvalidArgument("one scale per inner basis vector is required");
                   for (const auto& c : s.scales)
                     if (c <= 0) throw InvalidArgument("scales must be positive");
                 },
             },
             family_);
}

BasisSpace BasisSpace::multisign(std::vector<std::vector<int>> signs) {
  std::size_t n = signs.empty() ? 0 : signs.front().size();
  return BasisSpace(MultiSignSpace{n, std::move(signs)});
}

BasisSpace BasisSpace::direct_sum_y(BasisSpace inner, std::size_t blocks) {
  return BasisSpace(DirectSumYSpace{std::make_shared<const BasisSpace>(std::move(inner)), blocks});
}

std::string BasisSpace::family_name() const {
  return std::visit(overloaded{
                        [](const C0Space&) { return std::string("c0"); },
                        [](const SummingSpace&) { return std::string("summing"); },
                        [](const MultiSignSpace&) { return std::string("multisign"); },
                        [](const SchauderSpace&) { return std::string("schauder"); },
                        [](const TreeSpace&) { return std::string("tree"); },
                        [](const HaarSpace&) { return std::string("haar"); },
                        [](const DirectSumYSpace&) { return std::string("y"); },
                        [](const PolyGaugeSpace&) { return std::string("gauge"); },
                        [](const ScaledSpace&) { return std::string("scaled"); },
                    },
                    family_);
}

std::size_t BasisSpace::dimension() const {
  return std::visit(overloaded{
                        [](const C0Space& s) { return s.n; },
                        [](const SummingSpace& s) { return s.n; },
                        [](const MultiSignSpace& s) { return s.n; },
                        [](const SchauderSpace& s) { return s.max_index + 1; },
                        [](const TreeSpace& s) { return s.parents.size(); },
                        [](const HaarSpace& s) { return std::size_t{1} << s.level; },
                        [](const DirectSumYSpace& s) { return y_dimension(s.blocks); },
                        [](const PolyGaugeSpace& s) { return s.body.dimension(); },
                        [](const ScaledSpace& s) { return s.scales.size(); },
                    },
                    family_);
}

Scalar norm(const BasisSpace& space, const Coeffs& x) {
  check_support(space, x);
  if (x.empty()) return 0;
  return std::visit(
      overloaded{
          [&](const C0Space&) { return sup_abs(x); },
          [&](const SummingSpace&) { return summing_norm(x); },
          [&](const MultiSignSpace& s) {
            Scalar best = 0;
            for (const auto& row : s.signs) {
              Scalar run = 0;
              for (const auto& [i, a] : x) {
                run += row[i] * a;
                best = std::max(best, abs(run));
              }
            }
            return best;
          },
          [&](const SchauderSpace&) {
            Index top = *x.max_index();
            std::size_t levels = top < 2 ? 0 : floor_log2(top) + 1;
            Scalar best = 0;
            for (const auto& v : schauder_nodes(x, levels)) best = std::max(best, abs(v));
            return best;
          },
          [&](const TreeSpace& s) {
            std::vector<Scalar> path(s.parents.size());
            Scalar best = 0;
            for (std::size_t i = 0; i < s.parents.size(); ++i) {
              path[i] = (s.parents[i] ? path[*s.parents[i]] : Scalar(0)) + x.get(i);
              best = std::max(best, abs(path[i]));
            }
            return best;
          },
          [&](const HaarSpace& s) {
            auto val = haar_node_values(x, s.level);
            Scalar best = 0;
            for (std::size_t k = (std::size_t{1} << s.level) - 1; k < val.size(); ++k)
              best = std::max(best, abs(val[k]));
            return best;
          },
          [&](const DirectSumYSpace& s) {
            Scalar best = 0;
            Coeffs inner;
            for (std::size_t n = 1; n <= s.blocks; ++n) {
              const std::size_t sq = n * n;
              Scalar closing = x.get(y_flat_index(n, sq + 1));
              Scalar block_sum = 0;
              for (std::size_t j = 1; j <= sq; ++j) {
                Scalar a = x.get(y_flat_index(n, j));
                block_sum += a;
                best = std::max(best, abs(Scalar(a + closing)));
              }
              inner.set(n - 1, block_sum / Scalar(sq));
            }
            return std::max(best, norm(*s.inner, inner));
          },
          [&](const PolyGaugeSpace& s) { return s.body.gauge(dense_point(x, s.body.dimension())); },
          [&](const ScaledSpace& s) {
            Coeffs y;
            for (const auto& [i, a] : x) y.set(i, a * s.scales[i]);
            return norm(*s.inner, y);
          },
      },
      space.family());
}

DyadicPoint::DyadicPoint(std::uint64_t numerator, unsigned exponent) {
  if (exponent > 62) throw IndexError("dyadic exponent too large");
  value_ = Scalar(Integer(std::to_string(numerator)), Integer(1) << exponent);
  value_.canonicalize();
  if (value_ > 1) throw IndexError("dyadic point outside [0, 1]");
}

DyadicPoint::DyadicPoint(const Scalar& value) : value_(value) {
  if (value < 0 || value > 1) throw IndexError("dyadic point outside [0, 1]");
  const mpz_class& den = value.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1) throw IndexError("point " + to_string(value) + " is not dyadic");
}

Scalar schauder_basis_value(std::size_t i, const Scalar& t) {
  if (i == 0) return 1;
  if (i == 1) return t;
  const std::size_t k = floor_log2(i);
  const std::size_t l = i - (std::size_t{1} << k);
  Scalar s = t * Scalar(Integer(1) << k) - Scalar(l);
  if (s < 0 || s > 1) return 0;
  return 1 - abs(2 * s - 1);
}

Scalar eval_function(const SchauderSpace& space, const Coeffs& x, const DyadicPoint& p) {
  Scalar v = 0;
  for (const auto& [i, a] : x) {
    if (i > space.max_index) throw IndexError("Schauder index outside the space");
    v += a * schauder_basis_value(i, p.value());
  }
  return v;
}

Scalar eval_function(const HaarSpace& space, const Coeffs& x, std::size_t atom) {
  if (atom >= (std::size_t{1} << space.level)) throw IndexError("Haar atom outside the level");
  auto top = x.max_index();
  if (top && *top >= (std::size_t{1} << space.level)) throw IndexError("Haar index outside the space");
  std::size_t node = (std::size_t{1} << space.level) - 1 + atom;
  Scalar v = x.get(0);
  while (node > 0) {
    std::size_t parent = (node - 1) / 2;
    Scalar a = x.get(parent + 1);
    v += node % 2 == 1 ? a : Scalar(-a);
    node = parent;
  }
  return v;
}

Scalar dual_coeff_norm(const BasisSpace& space, Index i) {
  if (i >= space.dimension()) throw IndexError("coefficient index outside the space");
  return std::visit(overloaded{
                        [&](const C0Space&) { return Scalar(1); },
                        [&](const SummingSpace&) { return Scalar(i == 0 ? 1 : 2); },
                        [&](const MultiSignSpace&) { return Scalar(i == 0 ? 1 : 2); },
                        [&](const SchauderSpace&) { return Scalar(i == 0 ? 1 : 2); },
                        [&](const TreeSpace& s) { return Scalar(s.parents[i] ? 2 : 1); },
                        [&](const HaarSpace&) { return Scalar(1); },
                        [&](const DirectSumYSpace& s) {
                          auto [n, j] = y_block_coordinate(i);
                          Scalar phi = dual_coeff_norm(*s.inner, n - 1);
                          if (j == n * n + 1) return Scalar(1 + phi);
                          return Scalar(2 - Scalar(2) / Scalar(n * n) + phi);
                        },
                        [&](const PolyGaugeSpace& s) { return s.body.coordinate_extent(i); },
                        [&](const ScaledSpace& s) { return Scalar(dual_coeff_norm(*s.inner, i) / s.scales[i]); },
                    },
                    space.family());
}

Scalar basis_vector_norm(const BasisSpace& space, Index i) { return norm(space, Coeffs{{i, Scalar(1)}}); }

bool is_prefix_monotone(const BasisSpace& space) {
  if (const auto* s = space.as<ScaledSpace>()) return is_prefix_monotone(*s->inner);
  return !space.as<DirectSumYSpace>() && !space.as<PolyGaugeSpace>();
}

NormalizedSpace normalize_space(const BasisSpace& space) {
  const std::size_t n = space.dimension();
  std::vector<Scalar> scales(n);
  Scalar smallest;
  for (std::size_t i = 0; i < n; ++i) {
    Scalar e = basis_vector_norm(space, i);
    scales[i] = 1 / e;
    if (i == 0 || e < smallest) smallest = e;
  }
  auto inner = std::make_shared<const BasisSpace>(space);
  return NormalizedSpace{BasisSpace(ScaledSpace{inner, scales}), scales, smallest};
}

Index y_flat_index(std::size_t block, std::size_t j) {
  if (block < 1 || j < 1 || j > block * block + 1) throw IndexError("Y coordinate outside its block");
  return y_dimension(block - 1) + (j - 1);
}

std::size_t y_dimension(std::size_t blocks) {
  std::size_t total = 0;
  for (std::size_t n = 1; n <= blocks; ++n) total += n * n + 1;
  return total;
}

std::pair<std::size_t, std::size_t> y_block_coordinate(Index flat) {
  std::size_t n = 1;
  while (flat >= n * n + 1) {
    flat -= n * n + 1;
    ++n;
  }
  return {n, flat + 1};
}

} // namespace qlab
