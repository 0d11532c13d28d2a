#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "rotcalc/errors.hpp"

namespace rotcalc {

// The universal scalar: an arbitrary-precision rational, always canonical
// (lowest terms, denominator >= 1). gmpxx keeps arithmetic results canonical;
// every construction path below canonicalizes explicitly.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den <= 0) throw ParseError("denominator must be positive");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat(const mpz_class& num, const mpz_class& den = 1) {
  if (den <= 0) throw ParseError("denominator must be positive");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Text form "p" or "p/q" with an optional leading '-'. Rejects q <= 0 and
// anything else (signs inside the denominator, whitespace, empty fields).
inline Rat parse_rat(std::string_view text) {
  auto fail = [&] {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  };
  if (text.empty()) fail();
  std::size_t i = 0;
  if (text[i] == '-') ++i;
  std::size_t num_begin = i;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
  if (i == num_begin) fail();
  mpz_class num(std::string(text.substr(0, i)), 10);
  mpz_class den(1);
  if (i < text.size()) {
    if (text[i] != '/') fail();
    ++i;
    std::size_t den_begin = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == den_begin || i != text.size()) fail();
    den = mpz_class(std::string(text.substr(den_begin)), 10);
    if (den <= 0) fail();
  }
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline mpz_class rat_floor(const Rat& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline mpz_class rat_ceil(const Rat& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// floor(x / y) as an integer, for positive modulus y.
inline mpz_class rat_floor_div(const Rat& x, const Rat& y) {
  return rat_floor(Rat(x / y));
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline mpz_class pow_ui(const mpz_class& base, unsigned long exp) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline mpz_class pow10(unsigned long exp) { return pow_ui(mpz_class(10), exp); }

// Fixed-point decimal rendering with `places` fractional digits, rounding
// half away from zero. Exact; independent of the platform float formatting.
inline std::string rat_to_decimal(const Rat& q, unsigned long places) {
  const bool negative = q < 0;
  mpz_class num = abs(mpz_class(q.get_num()));
  const mpz_class& den = q.get_den();
  mpz_class scaled = num * pow10(places);
  mpz_class quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(),
              den.get_mpz_t());
  if (2 * rem >= den) ++quot;
  mpz_class ipart = quot / pow10(places);
  mpz_class fpart = quot % pow10(places);
  std::string frac = fpart.get_str();
  if (frac.size() < places) frac.insert(0, places - frac.size(), '0');
  std::string out;
  if (negative && quot != 0) out += '-';
  out += ipart.get_str();
  if (places > 0) {
    out += '.';
    out += frac;
  }
  return out;
}

}  // namespace rotcalc
