#include "qlab/oracle.hpp"

#include "qlab/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

namespace qlab {

namespace {

// Members d of the net with |d - center| <= radius. Explicit nets are
// filtered directly: members outside the covered window still count.
std::vector<Scalar> members_within(const Net& net, const Scalar& center, const Scalar& radius) {
  if (net.kind() == Net::Kind::lattice) return net.points_within(center, radius);
  std::vector<Scalar> out;
  for (const auto& d : net.points())
    if (abs(d - center) <= radius) out.push_back(d);
  return out;
}

struct Search {
  const NormModel& model;
  const NetFamily& nets;
  const Coeffs& x;
  const std::vector<Index>& order;
  std::vector<Scalar> dual;
  const SearchOptions& options;
  Scalar box; // radius used for the initial (unpruned) box
  Scalar best;
  Coeffs best_digits;
  std::uint64_t nodes = 0;
  Coeffs current;

  void tick() {
    if (++nodes > options.budget)
      throw SearchBudgetExceeded("search exceeded its budget of " + std::to_string(options.budget) + " nodes",
                                 nodes);
  }

  void run(std::size_t depth) {
    if (depth == order.size()) {
      Scalar e = model.norm(x - current);
      if (e < best) {
        best = e;
        best_digits = current;
      }
      return;
    }
    const Index i = order[depth];
    const Scalar a = x.get(i);
    std::vector<Scalar> cands = members_within(nets.at(i), a, box * dual[depth]);
    sort_by_closeness(cands, a);
    for (const auto& d : cands) {
      if (options.pruning) {
        if (best == 0) return;
        // |a_i - d_i| <= ||e_i^*|| ||x - y|| must leave room to beat the incumbent.
        if (abs(a - d) >= best * dual[depth]) break;
      }
      tick();
      current.set(i, d);
      if (options.pruning && model.prefix_monotone()) {
        if (model.norm(x.prefix(i) - current) >= best) continue;
      }
      run(depth + 1);
    }
    current.set(i, Scalar(0));
  }
};

void check_section(const NormModel& model, const std::vector<Index>& section) {
  for (Index i : section)
    if (!model.valid_index(i)) throw IndexError("section index " + std::to_string(i) + " outside the space");
}

std::uint64_t next(std::mt19937_64& rng, std::uint64_t m) { return rng() % m; }

// Points of {-1, -1 + h, ..., 1}^n in lexicographic order.
void grid_points(std::size_t n, const Scalar& h, std::vector<std::vector<Scalar>>& out) {
  std::vector<Scalar> values;
  for (Scalar t = -1; t <= 1; t += h) values.push_back(t);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<Scalar> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = values[idx[k]];
    out.push_back(std::move(p));
    std::size_t k = n;
    while (k > 0 && idx[k - 1] + 1 == values.size()) idx[--k] = 0;
    if (k == 0) return;
    ++idx[k - 1];
  }
}

std::size_t power_or_cap(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t v = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

} // namespace

std::optional<QuantizationChoice> NormModel::warm_start(const Coeffs&, const NetFamily&) const {
  return std::nullopt;
}

SpaceModel::SpaceModel(BasisSpace space) : space_(std::move(space)), monotone_(is_prefix_monotone(space_)) {}

Scalar SpaceModel::norm(const Coeffs& x) const { return qlab::norm(space_, x); }

Scalar SpaceModel::dual_bound(Index i) const { return dual_coeff_norm(space_, i); }

std::optional<QuantizationChoice> SpaceModel::warm_start(const Coeffs& x, const NetFamily& nets) const {
  try {
    if (auto r = quantize(space_, x, nets)) return r->choice;
  } catch (const CoverageError&) {
  }
  return std::nullopt;
}

std::shared_ptr<const NormModel> make_model(const BasisSpace& space) { return std::make_shared<SpaceModel>(space); }

SectionProblem full_section(const BasisSpace& space, NetFamily nets, QuantizationMode mode) {
  std::vector<Index> section(space.dimension());
  for (std::size_t i = 0; i < section.size(); ++i) section[i] = i;
  return SectionProblem{make_model(space), std::move(section), std::move(nets), mode};
}

std::uint64_t default_search_budget() {
  if (const char* env = std::getenv("QLAB_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 10'000'000;
}

SearchResult best_quantization(const SectionProblem& problem, const Coeffs& x, const SearchOptions& options) {
  const NormModel& model = *problem.model;
  check_section(model, problem.section);
  for (const auto& [i, a] : x)
    if (std::find(problem.section.begin(), problem.section.end(), i) == problem.section.end())
      throw IndexError("x has support outside the section");

  std::vector<Index> order;
  if (problem.mode == QuantizationMode::support_restricted)
    order = x.support();
  else
    order = problem.section;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  // Warm start: the family's greedy when it has one, else rounding.
  QuantizationChoice start;
  if (auto warm = model.warm_start(x, problem.nets))
    start = *warm;
  else
    start = round_nearest(x, problem.nets);
  Scalar start_error = model.norm(x - start.digits);

  Search s{model, problem.nets, x, order, {}, options, start_error, start_error, start.digits, 0, {}};
  for (Index i : order) s.dual.push_back(model.dual_bound(i));
  if (options.pruning) {
    s.run(0);
  } else {
    // Exhaustive over the initial box: the incumbent only records.
    s.best = start_error + 1;
    s.run(0);
    if (!(s.best < start_error)) {
      s.best = start_error;
      s.best_digits = start.digits;
    }
  }
  SearchResult r;
  r.choice.digits = s.best_digits;
  r.choice.error = s.best;
  r.nodes = s.nodes;
  return r;
}

std::vector<Coeffs> sample_section_ball(const NormModel& model, const std::vector<Index>& section,
                                        const SamplingPlan& plan) {
  const std::size_t n = section.size();
  std::vector<std::vector<Scalar>> raw;
  // Deterministic grid part, as fine as the sample count allows.
  if (n > 0) {
    for (const auto& [base, h] : {std::pair{9u, Scalar(1, 4)}, std::pair{5u, Scalar(1, 2)}, std::pair{3u, Scalar(1)}}) {
      if (power_or_cap(base, n, plan.count) <= plan.count) {
        grid_points(n, h, raw);
        break;
      }
    }
  }
  std::mt19937_64 rng(plan.seed);
  while (raw.size() < plan.count && n > 0) {
    std::vector<Scalar> p(n);
    for (auto& c : p) c = Scalar(static_cast<long>(next(rng, 33)) - 16, 16);
    for (auto& c : p) c.canonicalize();
    // Random radius in {1/8, ..., 1} applied after normalization.
    Scalar radius(static_cast<long>(next(rng, 8)) + 1, 8);
    radius.canonicalize();
    p.push_back(radius);
    raw.push_back(std::move(p));
  }

  std::vector<Coeffs> out;
  for (std::size_t s = 0; s < raw.size() && out.size() < plan.count; ++s) {
    const auto& p = raw[s];
    Coeffs x;
    for (std::size_t k = 0; k < n; ++k) x.set(section[k], p[k]);
    Scalar nx = model.norm(x);
    if (nx != 0) {
      if (p.size() > n)
        x *= p[n] / nx;
      else if (nx > 1)
        x *= 1 / nx;
    }
    x *= plan.scale;
    out.push_back(std::move(x));
  }
  return out;
}

EpsEstimate eps_ball_estimate(const SectionProblem& problem, const SamplingPlan& plan, const SearchOptions& options) {
  EpsEstimate e;
  e.lower_bound = 0;
  e.seed = plan.seed;
  e.scale = plan.scale;
  e.sampling = "grid+random directions in the norm ball of radius " + to_string(plan.scale);
  for (const auto& x : sample_section_ball(*problem.model, problem.section, plan)) {
    SearchResult r = best_quantization(problem, x, options);
    e.nodes += r.nodes;
    ++e.sample_count;
    if (*r.choice.error > e.lower_bound) {
      e.lower_bound = *r.choice.error;
      e.witness = x;
    }
  }
  return e;
}

EpsEstimate eps_space_estimate(const SectionProblem& problem, const Scalar& radius, const SamplingPlan& plan,
                               const SearchOptions& options) {
  if (radius < 0) throw InvalidArgument("radius must be non-negative");
  SamplingPlan scaled = plan;
  scaled.scale = plan.scale * radius;
  return eps_ball_estimate(problem, scaled, options);
}

PropertyPVerdict check_property_p(const NormModel& model, const NetFamily& nets, const std::vector<Index>& section,
                                  const SearchOptions& options) {
  check_section(model, section);
  std::vector<Index> order = section;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  PropertyPVerdict v;
  Coeffs current;
  auto tick = [&] {
    if (++v.nodes > options.budget)
      throw SearchBudgetExceeded("property P search exceeded its budget", v.nodes);
  };
  // ||y|| <= 1 forces |d_i| <= ||e_i^*||.
  auto dfs = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == order.size()) {
      Scalar nv = model.norm(current);
      if (nv <= 1) {
        v.witness = current;
        v.witness_norm = nv;
        return true;
      }
      return false;
    }
    const Index i = order[depth];
    std::vector<Scalar> cands = members_within(nets.at(i), Scalar(0), model.dual_bound(i));
    cands.erase(std::remove(cands.begin(), cands.end(), Scalar(0)), cands.end());
    sort_by_closeness(cands, Scalar(0));
    for (const auto& d : cands) {
      tick();
      current.set(i, d);
      if (options.pruning && model.prefix_monotone() && model.norm(current) > 1) continue;
      if (self(self, depth + 1)) return true;
    }
    current.set(i, Scalar(0));
    return false;
  };
  v.holds = dfs(dfs, 0);
  return v;
}

Coeffs haar_witness(std::size_t level) {
  if (level < 1) throw InvalidArgument("level must be at least 1");
  Coeffs x;
  Scalar c = Scalar(1) / Scalar(level);
  for (std::size_t i = 1; i < (std::size_t{1} << level); ++i) x.set(i, c);
  return x;
}

HaarDistance haar_witness_distance(std::size_t level, const Scalar& delta, const SearchOptions& options) {
  if (delta <= 0) throw InvalidArgument("delta must be positive");
  BasisSpace space = BasisSpace::haar(level);
  SectionProblem p = full_section(space, NetFamily(Net::lattice(delta)), QuantizationMode::unrestricted);
  SearchResult r = best_quantization(p, haar_witness(level), options);
  return HaarDistance{*r.choice.error, r.choice.digits, r.nodes};
}

QuasiGreedyEstimate quasi_greedy_constants(const NormModel& model, std::size_t dimension, const Scalar& delta,
                                           const SamplingPlan& plan) {
  if (dimension > 16) throw InvalidArgument("quasi-greedy subset enumeration is capped at dimension 16");
  std::vector<Index> section(dimension);
  for (std::size_t i = 0; i < dimension; ++i) section[i] = i;

  // Unit-norm samples: sign-type grid vectors first, then random ones.
  std::vector<std::vector<Scalar>> raw;
  if (power_or_cap(5, dimension, plan.count) <= plan.count)
    grid_points(dimension, Scalar(1, 2), raw);
  else if (power_or_cap(3, dimension, plan.count) <= plan.count)
    grid_points(dimension, Scalar(1), raw);
  std::mt19937_64 rng(plan.seed);
  while (raw.size() < plan.count) {
    std::vector<Scalar> p(dimension);
    for (auto& c : p) {
      c = Scalar(static_cast<long>(next(rng, 33)) - 16, 16);
      c.canonicalize();
    }
    raw.push_back(std::move(p));
  }

  QuasiGreedyEstimate q;
  for (const auto& p : raw) {
    Coeffs x = Coeffs::dense(p);
    Scalar nx = model.norm(x);
    if (nx == 0) continue;
    x *= 1 / nx;
    ++q.sample_count;
    std::vector<Index> big;
    for (const auto& [i, a] : x)
      if (abs(a) >= delta) big.push_back(i);
    Scalar k = model.norm(x.restrict_to(big));
    if (k > q.k_lower) {
      q.k_lower = k;
      q.k_witness = x;
    }
    for (std::size_t mask = 1; mask < (std::size_t{1} << big.size()); ++mask) {
      std::vector<Index> subset;
      for (std::size_t b = 0; b < big.size(); ++b)
        if (mask >> b & 1) subset.push_back(big[b]);
      Scalar l = model.norm(x.restrict_to(subset));
      if (l > q.l_lower) {
        q.l_lower = l;
        q.l_witness = x;
        q.l_subset = subset;
      }
    }
  }
  return q;
}

} // namespace qlab
