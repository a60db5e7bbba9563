#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace capbound {

// Exact arbitrary-precision rational. gmp canonicalizes on construction,
// so denominator > 0 and gcd(num, den) == 1 always hold.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p/q" or "p". Throws on malformed input.
inline Rational rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator in: " + s);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline double rat_to_double(const Rational& r) { return r.get_d(); }

// Smallest rational k/scale >= x. Used to round floating upper bounds
// outward before they enter exact LP arithmetic.
inline Rational rat_round_up(double x, long scale = 1000000000L) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  double scaled = std::ceil(x * static_cast<double>(scale));
  mpz_class k;
  mpz_set_d(k.get_mpz_t(), scaled);
  // ceil in double can land one ulp short; bump until k/scale >= x
  Rational r(k, scale);
  r.canonicalize();
  while (r.get_d() < x) {
    k += 1;
    r = Rational(k, scale);
    r.canonicalize();
  }
  return r;
}

inline mpz_class rat_lcm_of_denominator(const mpz_class& acc, const Rational& r) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), acc.get_mpz_t(), r.get_den().get_mpz_t());
  return l;
}

}  // namespace capbound
