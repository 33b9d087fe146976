#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace balfilt {

// Arbitrary-precision exact scalars. All arithmetic in the core is done on
// these; doubles appear only in the flow harness.
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Thrown on malformed numeric text or inconsistent shapes.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an internal exactness certificate fails to check out. This
// indicates a bug, never bad user input.
struct certification_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// Parses "p", "-p" or "p/q" (q > 0 after sign normalisation) into a
/// canonical rational. Rejects anything else, including "p/0".
Rational parse_rational(const std::string& text);

/// Canonical text form: "p" when the denominator is 1, else "p/q" in lowest
/// terms with q > 0. Inverse of parse_rational on its image.
std::string format_rational(const Rational& value);

inline bool is_integer(const Rational& value) { return denominator(value) == 1; }

double to_double(const Rational& value);

}  // namespace balfilt
