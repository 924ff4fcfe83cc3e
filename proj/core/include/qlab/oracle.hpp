#pragma once

#include "qlab/coeffs.hpp"
#include "qlab/net.hpp"
#include "qlab/norms.hpp"
#include "qlab/quantize.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qlab {

/// What the exact search needs from a normed space.
class NormModel {
public:
  virtual ~NormModel() = default;

  virtual Scalar norm(const Coeffs& x) const = 0;
  /// An upper bound of ||e_i^*||, used for box pruning.
  virtual Scalar dual_bound(Index i) const = 0;
  /// ||P_k x|| <= ||x|| for every prefix projection.
  virtual bool prefix_monotone() const = 0;
  virtual bool valid_index(Index i) const = 0;
  /// A support-respecting greedy quantization used as warm start.
  virtual std::optional<QuantizationChoice> warm_start(const Coeffs& x, const NetFamily& nets) const;
  virtual std::string describe() const = 0;
};

/// Adapts a BasisSpace.
class SpaceModel final : public NormModel {
public:
  explicit SpaceModel(BasisSpace space);

  Scalar norm(const Coeffs& x) const override;
  Scalar dual_bound(Index i) const override;
  bool prefix_monotone() const override { return monotone_; }
  bool valid_index(Index i) const override { return i < space_.dimension(); }
  std::optional<QuantizationChoice> warm_start(const Coeffs& x, const NetFamily& nets) const override;
  std::string describe() const override { return space_.family_name(); }

  const BasisSpace& space() const noexcept { return space_; }

private:
  BasisSpace space_;
  bool monotone_;
  std::vector<Scalar> dual_;
};

std::shared_ptr<const NormModel> make_model(const BasisSpace& space);

enum class QuantizationMode {
  support_restricted, // CQP: digits only on supp(x)
  unrestricted,       // NQP: digits anywhere in the section
};

struct SectionProblem {
  std::shared_ptr<const NormModel> model;
  std::vector<Index> section; // E
  NetFamily nets;
  QuantizationMode mode = QuantizationMode::support_restricted;
};

/// Section {0, ..., dim-1} of a space.
SectionProblem full_section(const BasisSpace& space, NetFamily nets,
                            QuantizationMode mode = QuantizationMode::support_restricted);

/// 10^7 unless the environment variable QLAB_BUDGET holds a positive integer.
std::uint64_t default_search_budget();

struct SearchOptions {
  std::uint64_t budget = default_search_budget();
  bool pruning = true;
};

struct SearchResult {
  QuantizationChoice choice; // error always set
  std::uint64_t nodes = 0;
};

/// Exact minimum of ||x - sum d_i e_i|| over admissible digits.
SearchResult best_quantization(const SectionProblem& problem, const Coeffs& x,
                               const SearchOptions& options = {});

/// Seeded sample plan on the unit ball of the section, multiplied by
/// `scale` (scale R = samples from the ball of radius R).
struct SamplingPlan {
  std::size_t count = 200;
  std::uint64_t seed = 1;
  Scalar scale = 1;
};

/// The sample points a plan produces, deterministically.
std::vector<Coeffs> sample_section_ball(const NormModel& model, const std::vector<Index>& section,
                                        const SamplingPlan& plan);

/// Sampled lower bound of the best quantization tolerance.
struct EpsEstimate {
  Scalar lower_bound;
  Coeffs witness;
  std::size_t sample_count = 0;
  std::string sampling;
  std::uint64_t seed = 0;
  Scalar scale;
  bool certified = false; // sampled suprema are never certified
  std::uint64_t nodes = 0;
};

EpsEstimate eps_ball_estimate(const SectionProblem& problem, const SamplingPlan& plan,
                              const SearchOptions& options = {});
/// Samples from the ball of radius `radius` (same seed -> radius times the unit-ball samples).
EpsEstimate eps_space_estimate(const SectionProblem& problem, const Scalar& radius, const SamplingPlan& plan,
                               const SearchOptions& options = {});

struct PropertyPVerdict {
  bool holds = false;
  Coeffs witness; // digits d_i != 0 with ||sum d_i e_i|| <= 1
  Scalar witness_norm;
  std::uint64_t nodes = 0;
};

/// Searches d_i in D_i \ {0} (i in E) with ||sum d_i e_i|| <= 1.
PropertyPVerdict check_property_p(const NormModel& model, const NetFamily& nets, const std::vector<Index>& section,
                                  const SearchOptions& options = {});

/// (1/N) sum_{i=1}^{2^N-1} h_i.
Coeffs haar_witness(std::size_t level);

struct HaarDistance {
  Scalar distance;
  Coeffs nearest; // an optimal digit vector
  std::uint64_t nodes = 0;
};

/// dist(x_N, F_delta) over the indices 0..2^N-1 (unrestricted support).
HaarDistance haar_witness_distance(std::size_t level, const Scalar& delta, const SearchOptions& options = {});

struct QuasiGreedyEstimate {
  Scalar k_lower = 1;
  Scalar l_lower = 1;
  Coeffs k_witness;
  Coeffs l_witness;
  std::vector<Index> l_subset;
  std::size_t sample_count = 0;
};

/// Sampled lower bounds of K((e_i), delta) and L((e_i), delta) over
/// unit-norm vectors of the whole space.
QuasiGreedyEstimate quasi_greedy_constants(const NormModel& model, std::size_t dimension, const Scalar& delta,
                                           const SamplingPlan& plan);

} // namespace qlab
