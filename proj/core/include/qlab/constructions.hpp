#pragma once

#include "qlab/coeffs.hpp"
#include "qlab/net.hpp"
#include "qlab/norms.hpp"
#include "qlab/oracle.hpp"
#include "qlab/quantize.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace qlab {

// ---------------------------------------------------------------------
// Y = X (+)_inf (sum l_inf^{n^2})_0, truncated at M blocks.

struct YSpaceBuild {
  BasisSpace inner;
  std::size_t blocks;
  BasisSpace space; // DirectSumYSpace
  std::size_t dimension;

  Index flat_index(std::size_t block, std::size_t j) const { return y_flat_index(block, j); }
  std::pair<std::size_t, std::size_t> block_coordinate(Index flat) const { return y_block_coordinate(flat); }
};

/// Throws InvalidArgument when the inner space has fewer than M basis
/// vectors or they are not normalized.
YSpaceBuild build_y_space(const BasisSpace& inner, std::size_t blocks);

/// Exact basis constant of f_j = e_j + e_{n+1}/n (j <= n), f_{n+1} = e_1 + ... + e_n
/// in l_inf^{n+1}: max over m of ||P_m||, each computed as the maximal
/// absolute row sum of the projection matrix. Throws SearchBudgetExceeded
/// for n above `max_n`.
Scalar lemma_basis_constant(std::size_t n, std::size_t max_n = 128);
/// ||P_m|| for m = 1..n+1.
std::vector<Scalar> lemma_projection_norms(std::size_t n, std::size_t max_n = 128);

// ---------------------------------------------------------------------
// The space U with an SNQP basis containing a copy of the base basis.

/// Sparse functional on U coordinates (1-based), entries sorted by index.
using Functional = std::vector<std::pair<Index, Scalar>>;

struct LinkRecord {
  Index link;          // i((f, g))
  std::size_t stage;   // j0: the pair lives in T_{j0}
  std::size_t parent;  // position of f in functionals
  std::vector<Scalar> g; // g in S_{j0+1}, as coefficients of e_1^*..e_{j0+1}^*
};

struct USpaceBuild {
  BasisSpace base;
  Scalar eta;
  std::vector<Scalar> meshes;                          // eta_1 >= eta_2 >= ...
  std::size_t stages = 0;                              // J
  std::vector<std::vector<std::vector<Scalar>>> dual_sets; // S_1..S_J
  std::vector<Index> markers;                          // n_1 < ... < n_J
  std::vector<Functional> functionals;                 // G, deduplicated
  std::vector<std::size_t> stage_of;                   // first stage containing each functional
  std::vector<LinkRecord> links;                       // ordered by link index

  Index max_index() const { return markers.back(); }
};

struct UBuildOptions {
  std::optional<std::vector<Scalar>> meshes; // default 1/(2^i ceil(1/eta)), halved on failure
  std::size_t norming_samples = 64;
  std::uint64_t seed = 1;
  std::size_t max_stages = 3;
  std::size_t max_functionals = 100000;
};

/// Base must be C0UnitVector(n) with n >= stages; 0 < eta < 1.
USpaceBuild build_u_space(const BasisSpace& base, const Scalar& eta, std::size_t stages,
                          const UBuildOptions& options = {});

/// sup over G of |sum f(i) a_i|; IndexError outside [1, n_J].
Scalar u_norm(const USpaceBuild& build, const Coeffs& x);

/// Stage-wise extension quantizer with (eps/3)-nets; guarantee 2 eps / 3.
QuantizerReport quantize_u(const USpaceBuild& build, const Coeffs& x, const NetFamily& nets);

struct EquivalenceReport {
  Scalar min_ratio;
  Scalar max_ratio;
  std::size_t samples = 0;
  bool within_bounds = true; // all ratios in [1 - eta, 1]
};

/// u_norm(sum a_i u_{n_i}) / ||sum a_i e_{i-1}||_base over seeded samples.
EquivalenceReport subsequence_equivalence_check(const USpaceBuild& build, std::size_t samples, std::uint64_t seed);

/// Invariant checks of a finished build; the strings name violations.
struct UInvariantReport {
  bool prefix_closed = true;
  bool supports_ok = true;
  bool markers_in_dual_sets = true;
  bool values_ok = true;
  bool in_c0_ball = true;
  bool unit_basis = true;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

UInvariantReport verify_u_invariants(const USpaceBuild& build);

/// NormModel over U for the exact search.
class UModel final : public NormModel {
public:
  explicit UModel(std::shared_ptr<const USpaceBuild> build) : build_(std::move(build)) {}

  Scalar norm(const Coeffs& x) const override { return u_norm(*build_, x); }
  Scalar dual_bound(Index i) const override { return i == 1 ? Scalar(1) : Scalar(2); }
  bool prefix_monotone() const override { return true; }
  bool valid_index(Index i) const override { return i >= 1 && i <= build_->max_index(); }
  std::string describe() const override { return "u"; }

private:
  std::shared_ptr<const USpaceBuild> build_;
};

} // namespace qlab
