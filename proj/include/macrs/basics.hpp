#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace macrs {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy shared across the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};
struct UnsupportedPair : Error { using Error::Error; };
struct NotDominant : Error { using Error::Error; };
struct GroupTooLarge : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct PoleAtPoint : Error { using Error::Error; };
struct NonIntegerK : Error { using Error::Error; };
struct DegenerateEigenvalues : Error { using Error::Error; };
struct DivisionRemainder : Error { using Error::Error; };
struct NotInvariant : Error { using Error::Error; };
struct PoleInGamma : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };

inline void require(bool cond, const char* msg) {
  if (!cond) throw Error(msg);
}

inline Rat rat(long num, long den = 1) { Rat r(num, den); r.canonicalize(); return r; }

inline bool is_integral(const Rat& r) { return r.get_den() == 1; }

inline long to_long(const Rat& r) {
  require(is_integral(r), "to_long: not an integer");
  require(r.get_num().fits_slong_p(), "to_long: out of range");
  return r.get_num().get_si();
}

inline long to_long(const Int& z) {
  require(z.fits_slong_p(), "to_long: out of range");
  return z.get_si();
}

// Exact r^e for integer e (negative allowed; 0^negative throws).
inline Rat rat_pow(const Rat& r, long e) {
  if (e == 0) return Rat(1);
  if (r == 0) {
    if (e < 0) throw DivisionByZero("0 raised to a negative power");
    return Rat(0);
  }
  Rat base = e < 0 ? Rat(1) / r : r;
  unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : e;
  Rat acc(1);
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline size_t hash_mix(size_t h, size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

// Deterministic xorshift generator for property tests and probe points.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
  // Nonzero rational with small numerator/denominator, away from roots of unity.
  Rat small_rat() {
    long num = range(2, 9), den = range(num + 1, num + 9);
    return rat(num, den);
  }
};

}  // namespace macrs
