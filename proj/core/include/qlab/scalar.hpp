#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace qlab {

/// Exact rational scalar. GMP keeps results of arithmetic canonical
/// (reduced, positive denominator); values built from text are
/// canonicalized by parse_scalar.
using Scalar = mpq_class;
using Integer = mpz_class;

/// Parses "p", "p/q", or a finite decimal such as "-0.375".
Scalar parse_scalar(std::string_view text);

/// Canonical "p/q" text, with "/q" omitted when q == 1.
std::string to_string(const Scalar& value);

/// Lossy view for reports and plotting only.
double to_double(const Scalar& value);

Scalar abs(const Scalar& value);
Integer floor(const Scalar& value);
Integer ceil(const Scalar& value);

/// 2^k as an exact scalar, k may be negative.
Scalar pow2(int k);

/// Integer part as used in floor(e0/(1-e0)) style formulas.
inline Scalar floor_scalar(const Scalar& value) { return Scalar(floor(value)); }

} // namespace qlab
