#pragma once

#include "qlab/net.hpp"
#include "qlab/polytope.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qlab {

/// Grid-based coverage verdict. A positive verdict holds at the recorded
/// grid resolution; a negative one comes with an exactly verified point.
struct CoverVerdict {
  bool covered = true;
  std::optional<Point> witness;
  /// For a witness: every translate examined and its gauge distance (> 1).
  std::vector<std::pair<Point, Scalar>> certificate;
  Scalar resolution;
  Scalar translate_bound;
  std::uint64_t points_checked = 0;
  /// Largest minimal gauge distance seen at a covered grid point.
  Scalar worst_slack;
};

/// Per-point minimal gauge distance, for CSV export.
struct SlackSample {
  Point point;
  std::optional<Scalar> distance; // nullopt when no translate reaches it
};

struct CoverOptions {
  Scalar mesh{1, 64};
  std::vector<SlackSample>* slack_out = nullptr;
};

Scalar gauge(const Body& body, const Point& p);

/// Z-combination translates of `threshold * body` that can contain p.
std::vector<Point> lattice_candidates(const LatticeSpec& lattice, const Body& body, const Point& p,
                                      const Scalar& threshold);

/// min over lattice points z of gauge(p - z); nullopt when no z puts p in
/// threshold * body.
std::optional<Scalar> lattice_distance(const LatticeSpec& lattice, const Body& body, const Point& p,
                                       const Scalar& threshold);

/// (P1) for L + K: scans the closed fundamental domain G [0,1]^n.
CoverVerdict check_p1(const Body& body, const LatticeSpec& lattice, const CoverOptions& options = {});

/// (P2) for prod D_i + K, scanning the box [region_lo, region_hi].
/// Throws CoverageError when an explicit net does not reach the box.
CoverVerdict check_p2(const Body& body, const std::vector<Net>& nets, const CoverOptions& options = {},
                      std::optional<std::pair<Point, Point>> region = std::nullopt);

/// (P3): [0,1]^n against the 2^n translates {0,1}^n + K.
CoverVerdict check_p3(const Body& body, const CoverOptions& options = {});

/// (floor(e0 / (1 - e0)) + 1) e0.
Scalar amplified_tolerance(const Scalar& eps0);

struct AmplificationReport {
  Scalar eps0;
  Scalar eps1;
  CoverVerdict phase1; // K subset L + eps0 K
  CoverVerdict phase2; // [-R, R]^n subset L + eps1 K
  Scalar radius;
};

AmplificationReport amplification_check(const Body& body, const LatticeSpec& lattice, const Scalar& eps0,
                                        std::optional<Scalar> eps1, const Scalar& radius,
                                        const CoverOptions& options = {});

struct ParallelogramReport {
  Scalar eta;
  Body body;
  Point q;
  bool q_in_k = false;
  bool q_in_shifted_k = false;
  CoverVerdict tiling;
  bool interiors_disjoint = true;
  std::uint64_t disjointness_samples = 0;
  CoverVerdict shrunk_lattice; // L = Z x (1 - eta) Z
};

/// K = conv{(1/4,1), (3/4,1), (-1/4,-1), (-3/4,-1)}.
Body parallelogram_body();

ParallelogramReport parallelogram_example(const Scalar& eta, const CoverOptions& options = {});

/// Exact check against every lattice translate in an enlarged box;
/// returns the (translate, gauge distance) list, all distances > 1 when
/// p is uncovered.
std::vector<std::pair<Point, Scalar>> certify_uncovered(const Body& body, const LatticeSpec& lattice,
                                                        const Point& p, const Scalar& margin);

} // namespace qlab
