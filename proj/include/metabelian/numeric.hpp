#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "metabelian/errors.hpp"

namespace metabelian {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_pow(const Int &base, unsigned long long e) {
  Int r = 1, b = base;
  while (e != 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// base^e as an exact rational, e may be negative (base must be nonzero then).
inline Rat rat_pow(const Int &base, long long e) {
  if (e >= 0) return Rat(int_pow(base, static_cast<unsigned long long>(e)));
  if (base == 0) fail(Errc::division_by_zero, "0 raised to a negative power");
  return Rat(1) / Rat(int_pow(base, static_cast<unsigned long long>(-e)));
}

} // namespace metabelian
