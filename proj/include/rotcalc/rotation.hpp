#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rotcalc/bounds.hpp"
#include "rotcalc/effort.hpp"
#include "rotcalc/errors.hpp"
#include "rotcalc/pl_lift.hpp"
#include "rotcalc/rat.hpp"

namespace rotcalc {

// All rotation numbers are reported in turns (normalized by the
// circumference), so the unit translation has rotation number 1 for every l.

struct Enclosure {
  Rat lo, hi;
  long effort = 0;

  Rat width() const { return hi - lo; }
  Rat midpoint() const { return (lo + hi) / 2; }
};

struct DecimalValue {
  std::string text;
  int guaranteed_digits = 0;
};

// ExactRational | Enclosure | Decimal
using RotValue = std::variant<Rat, Enclosure, DecimalValue>;

enum class Ordering { Less, Equal, Greater };

struct CFExpansion {
  std::vector<mpz_class> terms;  // a0; a1, a2, ...
  std::vector<Rat> convergents;  // one per term
  bool exact = false;
};

// ---------------------------------------------------------------------------
// Enclosures from materialized powers.

// [min/(n l), max/(n l)] where (min, max) are the exact displacement extrema
// of F^n. Contains the true rotation number; width is at most 1/n.
inline Enclosure rot_enclosure(const PLLift& F, long n,
                               const EffortLimits& lim = EffortLimits::defaults()) {
  if (n < 1) throw EffortExceeded("rot_enclosure requires n >= 1");
  if (n > lim.max_iterates)
    throw EffortExceeded("iterate budget exhausted at n = " +
                         std::to_string(n));
  if (static_cast<long>(F.piece_count()) * n > lim.max_pieces)
    throw EffortExceeded("piece budget exhausted");
  PLLift G = power(F, n);
  auto [mn, mx] = displacement_extrema(G);
  Rat scale = Rat(n) * F.circumference();
  return Enclosure{mn / scale, mx / scale, n};
}

// Certified but slightly widened enclosure computed by orbit streaming;
// reaches efforts far beyond what materialization allows. The endpoints are
// exact rationals and the true rotation number lies inside.
inline Enclosure rot_enclosure_streamed(const PLLift& F, long n, int bits,
                                        const EffortLimits& lim = EffortLimits::defaults()) {
  if (n < 1) throw EffortExceeded("rot_enclosure requires n >= 1");
  BoundedExtrema ext =
      streamed_displacement_bounds(F, n, bits, lim.max_stream_steps);
  Rat scale = Rat(n) * F.circumference();
  return Enclosure{ext.min_lo / scale, ext.max_hi / scale, n};
}

// ---------------------------------------------------------------------------
// Exact comparison against a rational target.

namespace detail {

struct CompareOutcome {
  Ordering order;
  bool certified_equal_by_fixed_point = false;
};

// Sign test on the displacement extrema of F^q against p l; Equal comes with
// a periodic-point certificate.
inline CompareOutcome rot_compare_materialized(const PLLift& F,
                                               const mpz_class& p, long q) {
  PLLift G = power(F, q);
  auto [mn, mx] = displacement_extrema(G);
  Rat target = Rat(p) * F.circumference();
  if (mx < target) return {Ordering::Less, false};
  if (mn > target) return {Ordering::Greater, false};
  bool certified = !fixed_points(G, p).empty();
  return {Ordering::Equal, certified};
}

inline bool materialization_feasible(const PLLift& F, long q,
                                     const EffortLimits& lim) {
  return q <= lim.max_iterates &&
         static_cast<long>(F.piece_count()) * q <= lim.max_pieces;
}

// Streamed Less/Greater decision; cannot certify Equal. The precision ladder
// retries with more bits while the interval slack straddles the target.
inline std::optional<Ordering> rot_compare_streamed(const PLLift& F,
                                                    const mpz_class& p, long q,
                                                    const EffortLimits& lim) {
  long steps_needed = 3 * static_cast<long>(F.piece_count()) * q;
  if (steps_needed > lim.max_stream_steps) return std::nullopt;
  Rat target = Rat(p) * F.circumference();
  for (int bits : {128, 256, 512}) {
    BoundedExtrema ext =
        streamed_displacement_bounds(F, q, bits, lim.max_stream_steps);
    if (ext.max_hi < target) return Ordering::Less;
    if (ext.min_lo > target) return Ordering::Greater;
    if (ext.max_lo >= target && ext.min_hi <= target)
      return std::nullopt;  // genuinely straddling: only an exact test helps
  }
  return std::nullopt;
}

// Exact when cheap, streamed when deep; honest failure otherwise.
inline Ordering rot_compare_auto(const PLLift& F, const mpz_class& p, long q,
                                 const EffortLimits& lim) {
  const long kExactPreferred = 2048;
  if (q <= kExactPreferred && materialization_feasible(F, q, lim))
    return rot_compare_materialized(F, p, q).order;
  if (auto r = rot_compare_streamed(F, p, q, lim)) return *r;
  if (materialization_feasible(F, q, lim))
    return rot_compare_materialized(F, p, q).order;
  throw EffortExceeded("comparison against denominator " + std::to_string(q) +
                       " exceeds the configured effort budget");
}

}  // namespace detail

// Exact sign of rot(F) - p/q, certified: Less/Greater come from strict
// displacement inequalities of F^q, Equal from an exact periodic point.
inline Ordering rot_compare(const PLLift& F, const Rat& target,
                            const EffortLimits& lim = EffortLimits::defaults()) {
  mpz_class p = target.get_num();
  if (!target.get_den().fits_slong_p())
    throw EffortExceeded("comparison denominator too large");
  long q = static_cast<long>(target.get_den().get_si());
  if (F.is_translation()) {
    Rat r = F.pieces()[0].v / F.circumference();
    if (r < target) return Ordering::Less;
    if (r > target) return Ordering::Greater;
    return Ordering::Equal;
  }
  return detail::rot_compare_auto(F, p, q, lim);
}

// ---------------------------------------------------------------------------
// Stern-Brocot descent: shared engine behind rational detection, continued
// fractions, and certified decimal rendering. Maintains a certified open
// bracket (lo, hi) around the rotation number; each step compares against
// the mediant and descends. A comparison that lands exactly resolves the
// rotation number as a rational.

class SternBrocotWalker {
 public:
  enum class Move { Left, Right, Exact };

  SternBrocotWalker(const PLLift& F, EffortLimits lim)
      : F_(F), lim_(lim) {
    if (F.is_translation()) {
      exact_ = F.pieces()[0].v / F.circumference();
      return;
    }
    auto [mn, mx] = displacement_extrema(F);
    const Rat& l = F.circumference();
    mpz_class k = rat_floor(mn / l);
    mpz_class k_hi = rat_floor(mx / l) + 1;
    // locate the integer part by exact comparisons
    mpz_class a0 = k;
    for (mpz_class c = k + 1; c <= k_hi; ++c) {
      Ordering o = detail::rot_compare_auto(F_, c, 1, lim_);
      if (o == Ordering::Equal) {
        exact_ = Rat(c);
        return;
      }
      if (o == Ordering::Greater)
        a0 = c;
      else
        break;
    }
    lo_p_ = a0;
    lo_q_ = 1;
    hi_p_ = a0 + 1;
    hi_q_ = 1;
  }

  bool has_exact() const { return exact_.has_value(); }
  const Rat& exact() const { return *exact_; }

  Rat lower() const { return rat(lo_p_, lo_q_); }
  Rat upper() const { return rat(hi_p_, hi_q_); }
  const mpz_class& lower_den() const { return lo_q_; }
  const mpz_class& upper_den() const { return hi_q_; }
  mpz_class mediant_den() const { return lo_q_ + hi_q_; }

  // One mediant comparison. Requires !has_exact().
  Move advance() {
    mpz_class mp = lo_p_ + hi_p_;
    mpz_class mq = lo_q_ + hi_q_;
    if (!mq.fits_slong_p())
      throw EffortExceeded("mediant denominator out of range");
    Ordering o =
        detail::rot_compare_auto(F_, mp, static_cast<long>(mq.get_si()), lim_);
    if (o == Ordering::Equal) {
      exact_ = rat(mp, mq);
      return Move::Exact;
    }
    if (o == Ordering::Greater) {
      lo_p_ = mp;
      lo_q_ = mq;
      return Move::Right;
    }
    hi_p_ = mp;
    hi_q_ = mq;
    return Move::Left;
  }

 private:
  const PLLift& F_;
  EffortLimits lim_;
  std::optional<Rat> exact_;
  mpz_class lo_p_, lo_q_{1}, hi_p_, hi_q_{1};
};

// Stern-Brocot search for an exact rational rotation number with denominator
// at most q_max; every hit is certified by a periodic point in rot_compare.
inline std::optional<Rat> rot_rational(const PLLift& F, const mpz_class& q_max,
                                       const EffortLimits& lim = EffortLimits::defaults()) {
  if (q_max < 1) throw EffortExceeded("rot_rational requires q_max >= 1");
  SternBrocotWalker walker(F, lim);
  while (!walker.has_exact() && walker.mediant_den() <= q_max)
    walker.advance();
  if (walker.has_exact() && walker.exact().get_den() <= q_max)
    return walker.exact();
  return std::nullopt;
}

namespace detail {

// Canonical continued fraction of a rational (floor convention; the final
// term of a non-integer is at least 2).
inline std::vector<mpz_class> cf_of_rational(const Rat& x) {
  std::vector<mpz_class> terms;
  mpz_class num = x.get_num(), den = x.get_den();
  while (true) {
    mpz_class a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(),
                den.get_mpz_t());
    terms.push_back(a);
    if (r == 0) break;
    num = den;
    den = r;
  }
  return terms;
}

inline std::vector<Rat> convergents_of(const std::vector<mpz_class>& terms) {
  std::vector<Rat> conv;
  mpz_class p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // (p_{-1}, q_{-1}), (p_{-2}, ...)
  for (const mpz_class& a : terms) {
    mpz_class p = a * p0 + p1;
    mpz_class q = a * q0 + q1;
    conv.push_back(rat(p, q));
    p1 = p0;
    q1 = q0;
    p0 = p;
    q0 = q;
  }
  return conv;
}

}  // namespace detail

// Continued-fraction expansion of the rotation number, obtained purely from
// certified mediant comparisons: runs of Left/Right moves along the
// Stern-Brocot path are the partial quotients. Terminates early with
// exact=true if a comparison certifies a rational value.
inline CFExpansion rot_cf(const PLLift& F, int depth,
                          const EffortLimits& lim = EffortLimits::defaults()) {
  if (depth < 1) throw EffortExceeded("rot_cf requires depth >= 1");
  SternBrocotWalker walker(F, lim);
  CFExpansion out;
  if (walker.has_exact()) {
    out.terms = detail::cf_of_rational(walker.exact());
    out.convergents = detail::convergents_of(out.terms);
    out.exact = true;
    return out;
  }
  out.terms.push_back(rat_floor(walker.lower()));
  // Runs: L^{a1 - 1} R^{a2} L^{a3} ... ; a1 = 1 is certified by an initial R.
  bool first_run = true;
  std::optional<SternBrocotWalker::Move> run_dir;
  mpz_class run_len = 0;
  while (static_cast<int>(out.terms.size()) < depth) {
    SternBrocotWalker::Move m = walker.advance();
    if (m == SternBrocotWalker::Move::Exact) {
      out.terms = detail::cf_of_rational(walker.exact());
      out.convergents = detail::convergents_of(out.terms);
      out.exact = true;
      return out;
    }
    if (first_run && m == SternBrocotWalker::Move::Right) {
      out.terms.push_back(1);  // a1 = 1: the value is above the mediant
      first_run = false;
      run_dir = m;
      run_len = 1;
      continue;
    }
    if (!run_dir) {  // first move is Left; open the a1 run
      run_dir = m;
      run_len = 1;
      continue;
    }
    if (m == *run_dir) {
      ++run_len;
      continue;
    }
    // run closed: emit its digit
    out.terms.push_back(first_run ? run_len + 1 : run_len);
    first_run = false;
    run_dir = m;
    run_len = 1;
  }
  out.convergents = detail::convergents_of(out.terms);
  out.exact = false;
  return out;
}

namespace detail {

// True when every point of [lo, hi] rounds to the same fixed-point decimal.
inline bool renders_uniformly(const Rat& lo, const Rat& hi,
                              unsigned long digits) {
  return rat_to_decimal(lo, digits) == rat_to_decimal(hi, digits);
}

}  // namespace detail

// Certified decimal: descend the Stern-Brocot tree until the certified
// bracket is narrower than 10^-(digits+1) and rounds unambiguously, then
// render the midpoint. Exact rational rotation numbers render directly.
inline DecimalValue rot_decimal(const PLLift& F, int digits,
                                const EffortLimits& lim = EffortLimits::defaults()) {
  if (digits < 1) throw EffortExceeded("rot_decimal requires digits >= 1");
  SternBrocotWalker walker(F, lim);
  Rat width_target =
      rat(mpz_class(1), pow10(static_cast<unsigned long>(digits) + 1));
  while (true) {
    if (walker.has_exact())
      return DecimalValue{
          rat_to_decimal(walker.exact(), static_cast<unsigned long>(digits)),
          digits};
    Rat lo = walker.lower(), hi = walker.upper();
    if (hi - lo < width_target &&
        detail::renders_uniformly(lo, hi, static_cast<unsigned long>(digits)))
      return DecimalValue{rat_to_decimal(Rat((lo + hi) / 2),
                                         static_cast<unsigned long>(digits)),
                          digits};
    walker.advance();
  }
}

inline std::string rot_value_str(const RotValue& v) {
  if (const Rat* r = std::get_if<Rat>(&v)) return rat_str(*r) + " (exact)";
  if (const Enclosure* e = std::get_if<Enclosure>(&v))
    return "[" + rat_str(e->lo) + ", " + rat_str(e->hi) + "] (effort " +
           std::to_string(e->effort) + ")";
  const DecimalValue& d = std::get<DecimalValue>(v);
  return d.text + " (certified " + std::to_string(d.guaranteed_digits) +
         " digits)";
}

}  // namespace rotcalc
