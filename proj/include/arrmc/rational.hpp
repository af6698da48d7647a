#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace arrmc {

/// Exact arbitrary precision rational, always kept in canonical form.
using Scalar = mpq_class;

/// Parses "p/q", "p" or "-p/q" (surrounding whitespace allowed).
/// Throws InputError on malformed text or a zero denominator.
Scalar parse_rational(std::string_view text);

std::string to_string(const Scalar& q);

bool is_integer(const Scalar& q);

/// Largest integer <= q.
mpz_class floor(const Scalar& q);

/// q - floor(q), in [0, 1).
Scalar frac(const Scalar& q);

double to_double(const Scalar& q);

/// exp(2 pi i q) in double precision.
std::complex<double> unit_root(const Scalar& q);

} // namespace arrmc
