#ifndef GUESSWORK_RATIONAL_HPP
#define GUESSWORK_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace guesswork {

/// Exact rational number. All probability and moment computations in this
/// library run on these; floating point appears only in diagnostics
/// (entropy bounds, simulation statistics).
using Rat = mpq_class;

/// Domain error raised by library operations (bad input, violated
/// precondition, exceeded search cap). The CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p/q", an integer, or a plain decimal string ("0.35" -> 7/20).
/// The conversion is exact; no floating point is involved.
/// Throws Error on malformed input or zero denominator.
Rat parse_rational(const std::string& text);

/// Canonical "p/q" rendering ("p" when the denominator is 1).
std::string to_fraction(const Rat& value);

/// Decimal rendering with up to `digits` fractional digits, trailing
/// zeros trimmed. Exact when the expansion terminates within `digits`.
std::string to_decimal(const Rat& value, int digits = 12);

/// Exact sum of a vector of rationals.
Rat rat_sum(const std::vector<Rat>& values);

}  // namespace guesswork

#endif
