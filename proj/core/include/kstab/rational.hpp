#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kstab {

// Exact scalars. Rat is always kept in lowest terms with a positive
// denominator (cpp_rational's canonical form), so equality is structural.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rat>;

inline BigInt num(const Rat& r) { return numerator(r); }
inline BigInt den(const Rat& r) { return denominator(r); }

inline int sign_of(const Rat& r) { return r.sign(); }
inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

BigInt floor_rat(const Rat& r);
BigInt ceil_rat(const Rat& r);

/// Parse "p/q", "p", or a plain decimal like "-0.25" / "1e-9" into an exact rational.
Rat parse_rational(std::string_view text);

/// Canonical serialization: "p/q", or "p" when the denominator is 1; sign on the numerator.
std::string rat_to_string(const Rat& r);

/// Fixed-width decimal rendering with `frac_digits` fractional digits,
/// rounded half away from zero. Deterministic; used for "approx" report fields.
std::string rat_to_decimal(const Rat& r, int frac_digits = 12);

/// True iff r is the square of a rational (r >= 0 and numerator/denominator
/// are both perfect squares); the exact root is stored in `root`.
bool exact_sqrt(const Rat& r, Rat& root);

/// Certified square-root approximation: returns q with |q - sqrt(x)| <= precision.
/// Exact when x is a perfect square. Requires x >= 0 and precision > 0.
Rat sqrt_approx(const Rat& x, const Rat& precision);

/// Compare a against b*sqrt(s) exactly (s >= 0); returns -1, 0, or +1.
int compare_with_sqrt(const Rat& a, const Rat& b, const Rat& s);

}  // namespace kstab
