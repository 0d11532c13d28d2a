#pragma once

#include <optional>
#include <vector>

#include "rotcalc/effort.hpp"
#include "rotcalc/errors.hpp"
#include "rotcalc/pl_lift.hpp"
#include "rotcalc/rat.hpp"

namespace rotcalc {

// Certified fixed-point orbit arithmetic. Points are carried as integers m
// with value m / Q, Q = den(l) * 2^bits, and every map application rounds
// outward, so lower/upper bounds stay exact rational statements while each
// step costs O(bits) regardless of orbit depth.
class BoundedStepper {
 public:
  BoundedStepper(const PLLift& F, int bits) : bits_(bits) {
    const Rat& l = F.circumference();
    ln_ = l.get_num();
    ld_ = l.get_den();
    Q_ = ld_ << static_cast<unsigned long>(bits);
    lQ_ = ln_ << static_cast<unsigned long>(bits);  // l * Q
    for (const Piece& p : F.pieces()) {
      PieceData d;
      d.bd = p.x.get_den();
      d.bxQ = p.x.get_num() * Q_;
      // y = s x + c with c = v - s x0; scaled: (S m + C) / D, all integer
      mpz_class sn = p.slope.get_num(), sd = p.slope.get_den();
      Rat c = p.v - p.slope * p.x;
      d.S = sn * c.get_den();
      d.C = c.get_num() * sd * Q_;
      d.D = sd * c.get_den();
      pieces_.push_back(std::move(d));
    }
  }

  const mpz_class& scale() const { return Q_; }
  int bits() const { return bits_; }

  // m/Q-valued image bound of x = m/Q under the lift; round down or up.
  mpz_class step(const mpz_class& m, bool up) const {
    mpz_class k, m0;
    mpz_fdiv_qr(k.get_mpz_t(), m0.get_mpz_t(), m.get_mpz_t(),
                lQ_.get_mpz_t());
    // linear scan: piece lists are short and the compare is one small mul
    std::size_t idx = pieces_.size() - 1;
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
      if (pieces_[i].bxQ * 1 > m0 * pieces_[i].bd) {
        idx = i - 1;
        break;
      }
    }
    const PieceData& d = pieces_[idx];
    mpz_class num = d.S * m0 + d.C;
    mpz_class out;
    if (up)
      mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), d.D.get_mpz_t());
    else
      mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), d.D.get_mpz_t());
    return out + k * lQ_;
  }

  mpz_class from_rat_down(const Rat& x) const {
    mpz_class m;
    mpz_class num = x.get_num() * Q_;
    mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
    return m;
  }

  mpz_class from_rat_up(const Rat& x) const {
    mpz_class m;
    mpz_class num = x.get_num() * Q_;
    mpz_cdiv_q(m.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
    return m;
  }

  Rat to_rat(const mpz_class& m) const { return rat(m, Q_); }

 private:
  struct PieceData {
    mpz_class bxQ, bd;  // break x scaled by Q; break denominator
    mpz_class S, C, D;  // image bound = (S m + C) / D, plus the period term
  };
  int bits_;
  mpz_class ln_, ld_, Q_, lQ_;
  std::vector<PieceData> pieces_;
};

struct BoundedExtrema {
  Rat min_lo, min_hi;  // certified bounds for min_x (F^n(x) - x)
  Rat max_lo, max_hi;  // certified bounds for max_x (F^n(x) - x)
};

// Certified bounds on the displacement extrema of F^n without materializing
// F^n. The breaks of F^n lie among the backward orbits of the breaks of F;
// for break c at depth k the displacement is F^{n-k}(c) - F^{-k}(c), and
// both factors satisfy the same backward recursion, so one forward pass of
// length n plus one synchronized backward pass per break covers every
// candidate. Extra candidates that are not true breaks cannot move the
// extrema, so the bounds stay certified.
inline BoundedExtrema streamed_displacement_bounds(const PLLift& F, long n,
                                                   int bits, long max_steps) {
  BoundedStepper fwd(F, bits);
  BoundedStepper bwd(invert(F), bits);
  const mpz_class& Q = fwd.scale();
  std::optional<std::array<mpz_class, 4>> acc;  // min_lo, min_hi, max_lo, max_hi
  long steps = 0;
  auto fold = [&](const mpz_class& lo, const mpz_class& hi) {
    if (!acc) {
      acc = {lo, hi, lo, hi};
      return;
    }
    if (lo < (*acc)[0]) (*acc)[0] = lo;
    if (hi < (*acc)[1]) (*acc)[1] = hi;
    if (lo > (*acc)[2]) (*acc)[2] = lo;
    if (hi > (*acc)[3]) (*acc)[3] = hi;
  };
  for (const Piece& piece : F.pieces()) {
    mpz_class w_lo = fwd.from_rat_down(piece.x);
    mpz_class w_hi = fwd.from_rat_up(piece.x);
    for (long j = 0; j < n; ++j) {
      if (++steps > max_steps)
        throw EffortExceeded("stream budget exhausted");
      w_lo = fwd.step(w_lo, false);
      w_hi = fwd.step(w_hi, true);
    }
    mpz_class b_lo = fwd.from_rat_down(piece.x);
    mpz_class b_hi = fwd.from_rat_up(piece.x);
    fold(w_lo - b_hi, w_hi - b_lo);
    for (long k = 1; k < n; ++k) {
      if ((steps += 2) > max_steps)
        throw EffortExceeded("stream budget exhausted");
      w_lo = bwd.step(w_lo, false);
      w_hi = bwd.step(w_hi, true);
      b_lo = bwd.step(b_lo, false);
      b_hi = bwd.step(b_hi, true);
      fold(w_lo - b_hi, w_hi - b_lo);
    }
  }
  return BoundedExtrema{rat((*acc)[0], Q), rat((*acc)[1], Q),
                        rat((*acc)[2], Q), rat((*acc)[3], Q)};
}

}  // namespace rotcalc
