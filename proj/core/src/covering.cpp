#include "qlab/covering.hpp"

#include "qlab/errors.hpp"

#include <algorithm>
#include <functional>

namespace qlab {

namespace {

Point sub(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Calls f on every point of the grid {lo + k mesh} inside [lo, hi] per
// coordinate, in lexicographic order; stops when f returns false.
void scan_box(const Point& lo, const Point& hi, const Scalar& mesh, const std::function<bool(const Point&)>& f) {
  const std::size_t n = lo.size();
  std::vector<Integer> first(n), last(n), k(n);
  for (std::size_t i = 0; i < n; ++i) {
    first[i] = ceil(lo[i] / mesh);
    last[i] = floor(hi[i] / mesh);
    if (first[i] > last[i]) return;
  }
  k = first;
  Point p(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) p[i] = mesh * Scalar(k[i]);
    if (!f(p)) return;
    std::size_t i = n;
    while (i > 0 && k[i - 1] == last[i - 1]) {
      k[i - 1] = first[i - 1];
      --i;
    }
    if (i == 0) return;
    ++k[i - 1];
  }
}

// Every product point of the per-coordinate lists.
void for_each_product(const std::vector<std::vector<Scalar>>& lists, const std::function<void(const Point&)>& f) {
  for (const auto& l : lists)
    if (l.empty()) return;
  std::vector<std::size_t> idx(lists.size(), 0);
  Point p(lists.size());
  while (true) {
    for (std::size_t i = 0; i < lists.size(); ++i) p[i] = lists[i][idx[i]];
    f(p);
    std::size_t i = lists.size();
    while (i > 0 && idx[i - 1] + 1 == lists[i - 1].size()) idx[--i] = 0;
    if (i == 0) return;
    ++idx[i - 1];
  }
}

void for_each_lattice_point(const LatticeSpec& lattice, const Point& lo, const Point& hi,
                            const std::function<void(const Point&)>& f) {
  std::vector<Integer> k_lo, k_hi;
  lattice.integer_box(lo, hi, k_lo, k_hi);
  const std::size_t n = lattice.dimension();
  for (std::size_t i = 0; i < n; ++i)
    if (k_lo[i] > k_hi[i]) return;
  std::vector<Integer> k = k_lo;
  while (true) {
    f(lattice.point(k));
    std::size_t i = n;
    while (i > 0 && k[i - 1] == k_hi[i - 1]) {
      k[i - 1] = k_lo[i - 1];
      --i;
    }
    if (i == 0) return;
    ++k[i - 1];
  }
}

// Window of translates z with p - z in t K, per coordinate.
void translate_window(const Body& body, const Point& p, const Scalar& t, const Scalar& margin, Point& lo, Point& hi) {
  const std::size_t n = p.size();
  lo.resize(n);
  hi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = p[i] - t * body.upper()[i] - margin;
    hi[i] = p[i] - t * body.lower()[i] + margin;
  }
}

Scalar sup_radius(const Body& body) {
  Scalar r = 0;
  for (std::size_t i = 0; i < body.dimension(); ++i) r = std::max(r, body.coordinate_extent(i));
  return r;
}

std::vector<Scalar> members_in(const Net& net, const Scalar& lo, const Scalar& hi) {
  if (net.kind() == Net::Kind::lattice) return net.points_within((lo + hi) / 2, (hi - lo) / 2);
  std::vector<Scalar> out;
  for (const auto& d : net.points())
    if (d >= lo && d <= hi) out.push_back(d);
  return out;
}

void record(const CoverOptions& options, const Point& p, const std::optional<Scalar>& d) {
  if (options.slack_out) options.slack_out->push_back(SlackSample{p, d});
}

} // namespace

Scalar gauge(const Body& body, const Point& p) { return body.gauge(p); }

std::vector<Point> lattice_candidates(const LatticeSpec& lattice, const Body& body, const Point& p,
                                      const Scalar& threshold) {
  if (p.size() != lattice.dimension() || body.dimension() != lattice.dimension())
    throw InvalidArgument("body, lattice and point dimensions differ");
  Point lo, hi;
  translate_window(body, p, threshold, Scalar(0), lo, hi);
  std::vector<Point> out;
  for_each_lattice_point(lattice, lo, hi, [&](const Point& z) { out.push_back(z); });
  return out;
}

std::optional<Scalar> lattice_distance(const LatticeSpec& lattice, const Body& body, const Point& p,
                                       const Scalar& threshold) {
  std::optional<Scalar> best;
  for (const auto& z : lattice_candidates(lattice, body, p, threshold)) {
    Scalar g = body.gauge(sub(p, z));
    if (!best || g < *best) best = g;
  }
  if (best && *best <= threshold) return best;
  return std::nullopt;
}

std::vector<std::pair<Point, Scalar>> certify_uncovered(const Body& body, const LatticeSpec& lattice, const Point& p,
                                                        const Scalar& margin) {
  Point lo, hi;
  translate_window(body, p, Scalar(1), margin, lo, hi);
  std::vector<std::pair<Point, Scalar>> out;
  for_each_lattice_point(lattice, lo, hi, [&](const Point& z) { out.emplace_back(z, body.gauge(sub(p, z))); });
  return out;
}

namespace {

CoverVerdict fresh(const CoverOptions& options, Scalar bound) {
  if (options.mesh <= 0) throw InvalidArgument("mesh must be positive");
  CoverVerdict v;
  v.resolution = options.mesh;
  v.translate_bound = std::move(bound);
  v.worst_slack = 0;
  return v;
}

// Records one scanned point; returns false (stop) once p is uncovered.
bool tally(CoverVerdict& v, const CoverOptions& options, const Point& p, const std::optional<Scalar>& d,
           const std::function<std::vector<std::pair<Point, Scalar>>()>& certify, const Scalar& threshold) {
  ++v.points_checked;
  record(options, p, d);
  if (d) {
    v.worst_slack = std::max(v.worst_slack, *d);
    return true;
  }
  auto cert = certify();
  if (!std::all_of(cert.begin(), cert.end(), [&](const auto& c) { return c.second > threshold; }))
    throw Error("uncovered grid point failed exact re-verification");
  v.covered = false;
  v.witness = p;
  v.certificate = std::move(cert);
  return false;
}

} // namespace

CoverVerdict check_p1(const Body& body, const LatticeSpec& lattice, const CoverOptions& options) {
  const std::size_t n = lattice.dimension();
  if (body.dimension() != n) throw InvalidArgument("body and lattice dimensions differ");
  CoverVerdict v = fresh(options, sup_radius(body) + 1);
  scan_box(Point(n, Scalar(0)), Point(n, Scalar(1)), options.mesh, [&](const Point& t) {
    Point p(n, Scalar(0));
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) p[r] += lattice.basis()[c][r] * t[c];
    return tally(v, options, p, lattice_distance(lattice, body, p, Scalar(1)),
                 [&] { return certify_uncovered(body, lattice, p, Scalar(1)); }, Scalar(1));
  });
  return v;
}

CoverVerdict check_p2(const Body& body, const std::vector<Net>& nets, const CoverOptions& options,
                      std::optional<std::pair<Point, Point>> region) {
  const std::size_t n = body.dimension();
  if (nets.size() != n) throw InvalidArgument("one net per coordinate is required");
  Point lo = region ? region->first : Point(n, Scalar(0));
  Point hi = region ? region->second : Point(n, Scalar(1));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& reach = nets[i].reach();
    if (reach && (lo[i] < -*reach || hi[i] > *reach))
      throw CoverageError("explicit net " + std::to_string(i) + " does not reach the scanned box");
  }
  CoverVerdict v = fresh(options, sup_radius(body) + 1);

  // Members outside the window are not needed: the box check above is the
  // coverage precondition, so explicit nets are filtered directly.
  auto translates = [&](const Point& p, const Scalar& margin) {
    Point wlo, whi;
    translate_window(body, p, Scalar(1), margin, wlo, whi);
    std::vector<std::vector<Scalar>> lists(n);
    for (std::size_t i = 0; i < n; ++i) lists[i] = members_in(nets[i], wlo[i], whi[i]);
    return lists;
  };
  scan_box(lo, hi, options.mesh, [&](const Point& p) {
    std::optional<Scalar> best;
    for_each_product(translates(p, Scalar(0)), [&](const Point& z) {
      Scalar g = body.gauge(sub(p, z));
      if (!best || g < *best) best = g;
    });
    if (best && *best > 1) best.reset();
    return tally(v, options, p, best, [&] {
      std::vector<std::pair<Point, Scalar>> cert;
      for_each_product(translates(p, Scalar(1)),
                       [&](const Point& z) { cert.emplace_back(z, body.gauge(sub(p, z))); });
      return cert;
    }, Scalar(1));
  });
  return v;
}

CoverVerdict check_p3(const Body& body, const CoverOptions& options) {
  const std::size_t n = body.dimension();
  CoverVerdict v = fresh(options, Scalar(1));
  std::vector<Point> corners;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Point c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (mask >> i) & 1;
    corners.push_back(c);
  }
  scan_box(Point(n, Scalar(0)), Point(n, Scalar(1)), options.mesh, [&](const Point& p) {
    std::optional<Scalar> best;
    std::vector<std::pair<Point, Scalar>> all;
    for (const auto& c : corners) {
      Scalar g = body.gauge(sub(p, c));
      all.emplace_back(c, g);
      if (!best || g < *best) best = g;
    }
    if (best && *best > 1) best.reset();
    return tally(v, options, p, best, [&] { return all; }, Scalar(1));
  });
  return v;
}

Scalar amplified_tolerance(const Scalar& eps0) {
  if (!(eps0 > 0 && eps0 < 1)) throw InvalidArgument("eps0 must lie in (0, 1)");
  return (floor_scalar(eps0 / (1 - eps0)) + 1) * eps0;
}

AmplificationReport amplification_check(const Body& body, const LatticeSpec& lattice, const Scalar& eps0,
                                        std::optional<Scalar> eps1, const Scalar& radius,
                                        const CoverOptions& options) {
  const std::size_t n = lattice.dimension();
  if (body.dimension() != n) throw InvalidArgument("body and lattice dimensions differ");
  if (radius < 0) throw InvalidArgument("radius must be non-negative");
  AmplificationReport r;
  r.eps0 = eps0;
  r.eps1 = eps1 ? *eps1 : amplified_tolerance(eps0);
  r.radius = radius;

  auto phase = [&](const Point& lo, const Point& hi, const Scalar& tol, bool inside_body) {
    CoverVerdict v = fresh(options, sup_radius(body) + 1);
    scan_box(lo, hi, options.mesh, [&](const Point& p) {
      if (inside_body && body.gauge(p) > 1) return true;
      return tally(v, options, p, lattice_distance(lattice, body, p, tol),
                   [&] { return certify_uncovered(body, lattice, p, tol * sup_radius(body) + 1); }, tol);
    });
    return v;
  };
  r.phase1 = phase(body.lower(), body.upper(), eps0, true);
  r.phase2 = phase(Point(n, Scalar(-radius)), Point(n, radius), r.eps1, false);
  return r;
}

Body parallelogram_body() {
  return Body::hull({{Scalar(1, 4), Scalar(1)}, {Scalar(3, 4), Scalar(1)}, {Scalar(-1, 4), Scalar(-1)},
                     {Scalar(-3, 4), Scalar(-1)}});
}

ParallelogramReport parallelogram_example(const Scalar& eta, const CoverOptions& options) {
  if (!(eta > 0 && eta < Scalar(1, 2))) throw InvalidArgument("eta must lie in (0, 1/2)");
  ParallelogramReport r{eta, parallelogram_body(), {}, false, false, {}, true, 0, {}};
  const Body& k = r.body;
  // Q = (3/4) P2 + (1/4) P3.
  const Point p2{Scalar(3, 4), Scalar(1)}, p3{Scalar(-1, 4), Scalar(-1)};
  r.q = {Scalar(3, 4) * p2[0] + Scalar(1, 4) * p3[0], Scalar(3, 4) * p2[1] + Scalar(1, 4) * p3[1]};
  r.q_in_k = k.contains(r.q);
  r.q_in_shifted_k = k.contains(sub(r.q, {Scalar(1), Scalar(1)}));

  LatticeSpec z2 = LatticeSpec::integer(2);
  r.tiling = check_p1(k, z2, options);

  // Interior points of K must avoid the interiors of the other translates.
  scan_box(k.lower(), k.upper(), Scalar(1, 16), [&](const Point& p) {
    if (!(k.gauge(p) < 1)) return true;
    ++r.disjointness_samples;
    for (const auto& z : lattice_candidates(z2, k, p, Scalar(1))) {
      if (z[0] == 0 && z[1] == 0) continue;
      if (k.gauge(sub(p, z)) < 1) r.interiors_disjoint = false;
    }
    return true;
  });

  r.shrunk_lattice = check_p2(k, {Net::lattice(Scalar(1)), Net::lattice(1 - eta)}, options);
  return r;
}

} // namespace qlab
