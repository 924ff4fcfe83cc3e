#include "qlab/constructions.hpp"

#include "qlab/errors.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace qlab {

namespace {

Scalar value_at(const Functional& f, Index i) {
  auto it = std::lower_bound(f.begin(), f.end(), i, [](const auto& e, Index k) { return e.first < k; });
  return it != f.end() && it->first == i ? it->second : Scalar(0);
}

Scalar evaluate(const Functional& f, const Coeffs& x) {
  Scalar s = 0;
  for (const auto& [i, v] : f) s += v * x.get(i);
  return s;
}

Functional truncate(const Functional& f, Index n) {
  Functional out;
  for (const auto& e : f)
    if (e.first <= n) out.push_back(e);
  return out;
}

// {sum k_i eta_i e_i^* : sum |k_i| eta_i <= 1}, k in lexicographic order.
std::vector<std::vector<Scalar>> dual_set(const std::vector<Scalar>& meshes, std::size_t j) {
  std::vector<std::vector<Scalar>> out;
  std::vector<Scalar> current;
  auto rec = [&](auto&& self, std::size_t i, const Scalar& budget) -> void {
    if (i == j) {
      out.push_back(current);
      return;
    }
    Integer top = floor(budget / meshes[i]);
    for (Integer k = -top; k <= top; ++k) {
      Scalar v = Scalar(k) * meshes[i];
      current.push_back(v);
      self(self, i + 1, budget - abs(v));
      current.pop_back();
    }
  };
  rec(rec, 0, Scalar(1));
  return out;
}

std::vector<Scalar> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<Scalar> a(n);
  for (auto& c : a) {
    c = Scalar(static_cast<long>(rng() % 33) - 16, 16);
    c.canonicalize();
  }
  return a;
}

// Checks sup_{g in S} g(a) >= (1 - eta) ||a|| on sampled a (l_inf base).
std::optional<std::vector<Scalar>> norming_failure(const std::vector<std::vector<Scalar>>& s, std::size_t j,
                                                   const Scalar& eta, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed + j);
  for (std::size_t t = 0; t < samples; ++t) {
    std::vector<Scalar> a = random_vector(rng, j);
    Scalar na = 0;
    for (const auto& c : a) na = std::max(na, abs(c));
    if (na == 0) continue;
    Scalar best = 0;
    for (const auto& g : s) {
      Scalar v = 0;
      for (std::size_t i = 0; i < j; ++i) v += g[i] * a[i];
      best = std::max(best, v);
    }
    if (best < (1 - eta) * na) return a;
  }
  return std::nullopt;
}

std::size_t stage_for(const USpaceBuild& build, const Coeffs& x) {
  auto top = x.max_index();
  if (x.support().size() && x.support().front() == 0) throw IndexError("U coordinates start at 1");
  if (!top) return 1;
  for (std::size_t j = 0; j < build.markers.size(); ++j)
    if (*top <= build.markers[j]) return j + 1;
  throw IndexError("coefficient index " + std::to_string(*top) + " beyond n_J = " +
                   std::to_string(build.max_index()));
}

} // namespace

USpaceBuild build_u_space(const BasisSpace& base, const Scalar& eta, std::size_t stages,
                          const UBuildOptions& options) {
  const auto* c0 = base.as<C0Space>();
  if (!c0) throw InvalidArgument("the U construction supports a c0 base only");
  if (stages < 1) throw InvalidArgument("at least one stage is required");
  if (stages > options.max_stages) throw InvalidArgument("stage count above the configured cap");
  if (stages > c0->n) throw InvalidArgument("more stages than base basis vectors");
  if (!(eta > 0 && eta < 1)) throw InvalidArgument("eta must lie in (0, 1)");

  std::vector<Scalar> meshes;
  if (options.meshes) {
    meshes = *options.meshes;
    if (meshes.size() < stages) throw InvalidArgument("one mesh per stage is required");
    for (std::size_t i = 0; i < meshes.size(); ++i) {
      if (meshes[i] <= 0 || meshes[i].get_num() != 1) throw InvalidArgument("meshes must be integer reciprocals");
      if (i > 0 && meshes[i] > meshes[i - 1]) throw InvalidArgument("meshes must be non-increasing");
    }
  } else {
    Integer c = ceil(1 / eta);
    for (std::size_t i = 1; i <= stages; ++i) meshes.push_back(1 / (pow2(static_cast<int>(i)) * Scalar(c)));
  }

  USpaceBuild b{base, eta, {}, stages, {}, {}, {}, {}, {}};
  for (int attempt = 0;; ++attempt) {
    b.dual_sets.clear();
    std::optional<std::vector<Scalar>> failure;
    for (std::size_t j = 1; j <= stages && !failure; ++j) {
      b.dual_sets.push_back(dual_set(meshes, j));
      failure = norming_failure(b.dual_sets.back(), j, eta, options.norming_samples, options.seed);
    }
    if (!failure) break;
    if (options.meshes || attempt >= 8) {
      std::string text;
      for (const auto& c : *failure) text += (text.empty() ? "" : ", ") + to_string(c);
      throw MeshTooCoarse("dual lattice mesh does not norm the stage; failing sample (" + text + ")");
    }
    for (auto& m : meshes) m /= 2;
  }
  b.meshes = meshes;

  std::set<Functional> seen;
  auto add = [&](Functional f, std::size_t stage) {
    if (seen.insert(f).second) {
      b.functionals.push_back(std::move(f));
      b.stage_of.push_back(stage);
    }
  };
  b.markers.push_back(1);
  for (const auto& g : b.dual_sets[0]) add(g[0] == 0 ? Functional{} : Functional{{1, g[0]}}, 1);

  for (std::size_t j0 = 1; j0 < stages; ++j0) {
    // Group S_{j0+1} by the restriction to the first j0 coordinates.
    std::map<std::vector<Scalar>, std::vector<const std::vector<Scalar>*>> by_prefix;
    for (const auto& g : b.dual_sets[j0])
      by_prefix[std::vector<Scalar>(g.begin(), g.end() - 1)].push_back(&g);

    std::vector<std::pair<std::size_t, const std::vector<Scalar>*>> pairs;
    const std::size_t existing = b.functionals.size();
    for (std::size_t fi = 0; fi < existing; ++fi) {
      std::vector<Scalar> tilde;
      for (Index m : b.markers) tilde.push_back(value_at(b.functionals[fi], m));
      auto it = by_prefix.find(tilde);
      if (it == by_prefix.end()) continue;
      for (const auto* g : it->second) pairs.emplace_back(fi, g);
    }
    if (existing + 2 * pairs.size() > options.max_functionals)
      throw SearchBudgetExceeded("U construction exceeds the functional cap at stage " + std::to_string(j0 + 1),
                                 existing + 2 * pairs.size());

    const Index start = b.markers.back();
    const Index marker = start + pairs.size() + 1;
    for (std::size_t t = 0; t < pairs.size(); ++t) {
      const auto& [fi, g] = pairs[t];
      const Index link = start + 1 + t;
      Functional with_link = b.functionals[fi];
      with_link.emplace_back(link, Scalar(1));
      Functional full = with_link;
      if (g->back() != 0) full.emplace_back(marker, g->back());
      add(with_link, j0 + 1);
      add(std::move(full), j0 + 1);
      b.links.push_back(LinkRecord{link, j0, fi, *g});
    }
    b.markers.push_back(marker);
  }
  return b;
}

Scalar u_norm(const USpaceBuild& build, const Coeffs& x) {
  stage_for(build, x);
  Scalar best = 0;
  for (const auto& f : build.functionals) best = std::max(best, abs(evaluate(f, x)));
  return best;
}

QuantizerReport quantize_u(const USpaceBuild& build, const Coeffs& x, const NetFamily& nets) {
  const std::size_t stage = stage_for(build, x);
  std::vector<Index> touched;
  for (Index i = 1; i <= build.markers[stage - 1]; ++i) touched.push_back(i);

  Coeffs d;
  d.set(1, pick_nearest(nets.at(1), x.get(1)));
  for (const auto& link : build.links) {
    if (link.stage >= stage) break;
    // f(x' - y') with x', y' living on [1, n_{j0}].
    Scalar before = evaluate(build.functionals[link.parent], x - d);
    d.set(link.link, pick_nearest(nets.at(link.link), before + x.get(link.link)));
    if (&link == &build.links.back() || (&link + 1)->stage != link.stage) {
      Index marker = build.markers[link.stage];
      d.set(marker, pick_nearest(nets.at(marker), x.get(marker)));
    }
  }
  QuantizerReport r;
  Scalar radius = nets.max_delta(touched);
  r.error = u_norm(build, x - d);
  r.guarantee = 2 * radius;
  r.neighborly_excess = neighborly_excess(x, d, radius);
  r.choice.digits = std::move(d);
  r.choice.error = r.error;
  return r;
}

EquivalenceReport subsequence_equivalence_check(const USpaceBuild& build, std::size_t samples, std::uint64_t seed) {
  EquivalenceReport r;
  BasisSpace base = build.base;
  const std::size_t j = build.markers.size();
  std::mt19937_64 rng(seed);
  bool first = true;
  for (std::size_t t = 0; t < samples; ++t) {
    std::vector<Scalar> a = t < j ? std::vector<Scalar>(j, Scalar(0)) : random_vector(rng, j);
    if (t < j) a[t] = 1;
    Coeffs u, e;
    for (std::size_t i = 0; i < j; ++i) {
      u.set(build.markers[i], a[i]);
      e.set(i, a[i]);
    }
    Scalar ne = norm(base, e);
    if (ne == 0) continue;
    Scalar ratio = u_norm(build, u) / ne;
    ++r.samples;
    if (first || ratio < r.min_ratio) r.min_ratio = ratio;
    if (first || ratio > r.max_ratio) r.max_ratio = ratio;
    first = false;
    if (ratio < 1 - build.eta || ratio > 1) r.within_bounds = false;
  }
  return r;
}

UInvariantReport verify_u_invariants(const USpaceBuild& build) {
  UInvariantReport r;
  std::set<Functional> all(build.functionals.begin(), build.functionals.end());
  std::set<Index> link_indices;
  for (const auto& l : build.links) link_indices.insert(l.link);
  auto fail = [&](bool& flag, const std::string& what) {
    if (flag) r.violations.push_back(what);
    flag = false;
  };

  for (std::size_t k = 0; k < build.functionals.size(); ++k) {
    const Functional& f = build.functionals[k];
    const std::size_t stage = build.stage_of[k];
    Index reach = f.empty() ? 0 : f.back().first;
    for (Index n = 0; n <= reach; ++n)
      if (!all.count(truncate(f, n))) fail(r.prefix_closed, "prefix truncation missing from G");
    if (reach > build.markers[stage - 1]) fail(r.supports_ok, "functional supported beyond its stage marker");

    std::vector<Scalar> tilde;
    for (std::size_t i = 0; i < stage; ++i) tilde.push_back(value_at(f, build.markers[i]));
    const auto& s = build.dual_sets[stage - 1];
    if (std::find(s.begin(), s.end(), tilde) == s.end()) fail(r.markers_in_dual_sets, "marker values not in S_j");

    for (const auto& [i, v] : f) {
      if (abs(v) > 1) fail(r.in_c0_ball, "functional outside the c0 unit ball");
      auto m = std::find(build.markers.begin(), build.markers.end(), i);
      if (m != build.markers.end()) {
        Scalar steps = v / build.meshes[m - build.markers.begin()];
        if (steps.get_den() != 1) fail(r.values_ok, "marker value off the mesh");
      } else if (link_indices.count(i)) {
        if (v != 1) fail(r.values_ok, "link value other than 0 or 1");
      } else {
        fail(r.values_ok, "value at a coordinate that is neither marker nor link");
      }
    }
  }
  for (Index i = 1; i <= build.max_index(); ++i)
    if (u_norm(build, Coeffs{{i, Scalar(1)}}) != 1) fail(r.unit_basis, "basis vector without unit norm");
  return r;
}

} // namespace qlab
