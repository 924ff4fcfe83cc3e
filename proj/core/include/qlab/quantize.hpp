#pragma once

#include "qlab/coeffs.hpp"
#include "qlab/net.hpp"
#include "qlab/norms.hpp"

#include <optional>
#include <vector>

namespace qlab {

struct QuantizerReport {
  QuantizationChoice choice;
  Scalar error;             // exact norm of x - sum d_i e_i
  Scalar guarantee;         // the bound the construction promises
  Scalar neighborly_excess; // max_i |a_i - d_i| / delta
};

/// Per-coordinate nearest choice; error is the sup norm.
QuantizerReport quantize_c0(const Coeffs& x, const NetFamily& nets);

/// Left-to-right greedy keeping every prefix error within delta.
QuantizerReport quantize_summing(const Coeffs& x, const NetFamily& nets);

/// Summing greedy inside each sign class; guarantee 2^rows * delta.
QuantizerReport quantize_multisign(const Coeffs& x, const NetFamily& nets,
                                   const std::vector<std::vector<int>>& signs);

/// Node rule greedy; keeps the running sup error within delta.
QuantizerReport quantize_schauder(const Coeffs& x, const NetFamily& nets);

/// Greedy along the order-respecting enumeration controlling path sums.
QuantizerReport quantize_tree(const Coeffs& x, const NetFamily& nets, const TreeSpace& space);

/// Blockwise prefix greedy plus the closing coordinate of each block;
/// guarantee 3 delta + delta * sum_{n <= blocks} 1/n^2.
QuantizerReport quantize_y(const Coeffs& x, const NetFamily& nets, const DirectSumYSpace& space);

/// Nearest digit per coordinate with the smallest-absolute-value tie rule.
/// Carries no guarantee; error is left unset.
QuantizationChoice round_nearest(const Coeffs& x, const NetFamily& nets);

/// Runs the family's greedy quantizer when one exists (nullopt for
/// PolyGauge and rescaled spaces); errors are measured in `space`.
std::optional<QuantizerReport> quantize(const BasisSpace& space, const Coeffs& x, const NetFamily& nets);

/// max_i |a_i - d_i| / delta over the support of x and of the digits.
Scalar neighborly_excess(const Coeffs& x, const Coeffs& digits, const Scalar& delta);

} // namespace qlab
