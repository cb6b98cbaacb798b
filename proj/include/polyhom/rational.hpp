#pragma once

// Exact arithmetic used by the polytope / integer-linear-algebra layers.
// boost::multiprecision is header-only; cpp_int has a small-value fast path
// so these types are cheap for the exponent-sized numbers we mostly handle.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyhom {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline double to_double(const Rat& q) { return q.convert_to<double>(); }
inline double to_double(const Int& z) { return z.convert_to<double>(); }

inline Int numer(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denom(const Rat& q) { return boost::multiprecision::denominator(q); }

// Exact rational from a double (every finite double is a dyadic rational).
inline Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
  Rat r(x);
  return r;
}

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

// Least common multiple of all denominators (>= 1).
inline Int common_denominator(const RatVec& v) {
  Int l = 1;
  for (const auto& q : v) l = int_lcm(l, denom(q));
  return l;
}

inline bool is_integral(const Rat& q) { return denom(q) == 1; }

inline Int floor_rat(const Rat& q) {
  Int n = numer(q), d = denom(q);
  Int f = n / d;
  if (n < 0 && n % d != 0) --f;
  return f;
}

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

}  // namespace polyhom
