#ifndef CODIAG_RATIONAL_HPP
#define CODIAG_RATIONAL_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <numeric>
#include <string>

namespace codiag {

/// Exact rational arithmetic for durations, clock values and guards.
/// All timed semantics in the toolkit is computed over Rat; no floating point.
using Rat = boost::rational<long long>;

inline long long rat_floor(const Rat& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() < 0 && q * r.denominator() != r.numerator()) --q;
  return q;
}

/// Fractional part in [0,1).
inline Rat rat_frac(const Rat& r) { return r - Rat(rat_floor(r)); }

inline bool rat_is_integer(const Rat& r) { return r.denominator() == 1; }

/// Renders without loss: integers as-is, otherwise "p/q".
std::string rat_to_string(const Rat& r);

/// Parses "7", "-3", "p/q" or decimal notation like "0.4" (exactly 2/5).
/// Returns false on malformed input.
bool rat_parse(const std::string& text, Rat& out);

}  // namespace codiag

#endif
