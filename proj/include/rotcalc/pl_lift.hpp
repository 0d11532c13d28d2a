#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "rotcalc/errors.hpp"
#include "rotcalc/rat.hpp"

namespace rotcalc {

struct Piece {
  Rat x;      // break point in [0, l)
  Rat v;      // value F(x)
  Rat slope;  // slope on [x, next break)

  bool operator==(const Piece& other) const {
    return x == other.x && v == other.v && slope == other.slope;
  }
};

// A lift of an orientation-preserving PL circle homeomorphism: finitely many
// pieces on the fundamental domain [0, l), extended to the line by
// F(x + l) = F(x) + l. Canonical form: pieces sorted, x_0 = 0 always stored
// (single-piece maps are exactly the translations), interior neighbours have
// distinct slopes, continuity and the wrap condition hold exactly.
class PLLift {
 public:
  static PLLift normalize(std::vector<Piece> raw, const Rat& circumference) {
    return finish(std::move(raw), circumference, /*validate=*/true);
  }

  static PLLift identity(const Rat& circumference) {
    return translation(Rat(0), circumference);
  }

  static PLLift translation(const Rat& amount, const Rat& circumference) {
    if (circumference <= 0) throw NonPositive("circumference must be > 0");
    PLLift f;
    f.l_ = circumference;
    f.pieces_ = {Piece{Rat(0), amount, Rat(1)}};
    return f;
  }

  const Rat& circumference() const { return l_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t piece_count() const { return pieces_.size(); }
  bool is_translation() const { return pieces_.size() == 1; }

  // Upper end of piece i's domain (the next break, or l).
  Rat piece_end(std::size_t i) const {
    return i + 1 < pieces_.size() ? pieces_[i + 1].x : l_;
  }

  // Value at the upper end of piece i (equals the next piece's v, or v_0 + l).
  Rat piece_end_value(std::size_t i) const {
    const Piece& p = pieces_[i];
    return p.v + p.slope * (piece_end(i) - p.x);
  }

  // Index of the piece whose domain contains x0 (x0 reduced into [0, l)).
  std::size_t piece_index(const Rat& x0) const {
    std::size_t lo = 0, hi = pieces_.size();
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (pieces_[mid].x <= x0)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  }

  // Trusted construction for internally generated piece lists (composition,
  // inversion): skips the O(m) continuity re-verification but still merges
  // and re-anchors.
  static PLLift assemble(std::vector<Piece> raw, const Rat& circumference) {
    return finish(std::move(raw), circumference, /*validate=*/false);
  }

 private:
  PLLift() = default;

  static PLLift finish(std::vector<Piece> raw, const Rat& l, bool validate) {
    if (raw.empty()) throw EmptyInput("no pieces given");
    if (l <= 0) throw NonPositive("circumference must be > 0");
    std::sort(raw.begin(), raw.end(),
              [](const Piece& a, const Piece& b) { return a.x < b.x; });
    if (validate) {
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].slope <= 0)
          throw NotMonotone("slope must be positive at break " +
                            rat_str(raw[i].x));
        if (i > 0 && raw[i].x == raw[i - 1].x)
          throw Discontinuous("duplicate break " + rat_str(raw[i].x));
        if (raw[i].x < 0 || raw[i].x >= l)
          throw Discontinuous("break " + rat_str(raw[i].x) +
                              " outside [0, l)");
      }
      for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
        Rat expect = raw[i].v + raw[i].slope * (raw[i + 1].x - raw[i].x);
        if (expect != raw[i + 1].v)
          throw Discontinuous("value mismatch at break " +
                              rat_str(raw[i + 1].x));
      }
      const Piece& last = raw.back();
      Rat wrap = last.v + last.slope * (raw.front().x + l - last.x);
      if (wrap != raw.front().v + l)
        throw Discontinuous("wrap condition violated");
    }
    if (raw.front().x != 0) {
      const Piece& last = raw.back();
      Rat v0 = last.v + last.slope * (l - last.x) - l;
      raw.insert(raw.begin(), Piece{Rat(0), v0, last.slope});
    }
    std::vector<Piece> merged;
    merged.reserve(raw.size());
    merged.push_back(raw.front());
    for (std::size_t i = 1; i < raw.size(); ++i) {
      if (raw[i].slope == merged.back().slope) continue;
      merged.push_back(raw[i]);
    }
    if (merged.size() == 1 && merged.front().slope != 1)
      throw Discontinuous("single-piece map must be a translation");
    PLLift f;
    f.l_ = l;
    f.pieces_ = std::move(merged);
    return f;
  }

  Rat l_;
  std::vector<Piece> pieces_;
};

// Exact evaluation anywhere on the line, via F(x + k l) = F(x) + k l.
inline Rat evaluate(const PLLift& F, const Rat& x) {
  const Rat& l = F.circumference();
  mpz_class k = rat_floor_div(x, l);
  Rat x0 = x - Rat(k) * l;
  const Piece& p = F.pieces()[F.piece_index(x0)];
  return p.v + p.slope * (x0 - p.x) + Rat(k) * l;
}

inline Rat slope_at(const PLLift& F, const Rat& x) {
  const Rat& l = F.circumference();
  Rat x0 = x - Rat(rat_floor_div(x, l)) * l;
  return F.pieces()[F.piece_index(x0)].slope;
}

inline bool equals(const PLLift& F, const PLLift& G) {
  return F.circumference() == G.circumference() && F.pieces() == G.pieces();
}

// Exact composition F o G by a merge walk over G's pieces and the lifted
// breaks of F; piece count of the result is at most |F| + |G|.
inline PLLift compose(const PLLift& F, const PLLift& G) {
  if (F.circumference() != G.circumference())
    throw MismatchedCircumference("compose requires equal circumferences");
  const Rat& l = F.circumference();
  std::vector<Piece> out;
  out.reserve(F.piece_count() + G.piece_count());
  for (std::size_t j = 0; j < G.piece_count(); ++j) {
    const Piece& g = G.pieces()[j];
    Rat x_end = G.piece_end(j);
    Rat v_end = G.piece_end_value(j);
    Rat cur_x = g.x;
    Rat cur_y = g.v;
    while (true) {
      // F's affine piece at cur_y, lifted: F(t) = s t + c on [cur_y, upper)
      mpz_class k = rat_floor_div(cur_y, l);
      Rat shift = Rat(k) * l;
      Rat y0 = cur_y - shift;
      std::size_t idx = F.piece_index(y0);
      const Piece& fp = F.pieces()[idx];
      Rat s = fp.slope;
      Rat c = fp.v + shift - s * (fp.x + shift);
      Rat upper = F.piece_end(idx) + shift;
      out.push_back(Piece{cur_x, s * cur_y + c, s * g.slope});
      if (upper >= v_end) break;
      cur_x = g.x + (upper - g.v) / g.slope;
      cur_y = upper;
    }
  }
  return PLLift::assemble(std::move(out), l);
}

// Exact inverse lift: each piece (x, v, s) contributes (v - k l, x - k l, 1/s)
// with k chosen so the new break lies in [0, l).
inline PLLift invert(const PLLift& F) {
  const Rat& l = F.circumference();
  std::vector<Piece> out;
  out.reserve(F.piece_count());
  for (const Piece& p : F.pieces()) {
    mpz_class k = rat_floor_div(p.v, l);
    Rat shift = Rat(k) * l;
    out.push_back(Piece{p.v - shift, p.x - shift, Rat(1) / p.slope});
  }
  return PLLift::assemble(std::move(out), l);
}

// F^n by binary doubling; n may be negative or zero.
inline PLLift power(const PLLift& F, long n) {
  if (n == 0) return PLLift::identity(F.circumference());
  if (n < 0) return power(invert(F), -n);
  PLLift result = PLLift::identity(F.circumference());
  PLLift base = F;
  while (true) {
    if (n & 1) result = compose(result, base);
    n >>= 1;
    if (n == 0) break;
    base = compose(base, base);
  }
  return result;
}

// F^{-1} o G^{-1} o F o G; the sign convention for all commutator results.
inline PLLift commutator(const PLLift& F, const PLLift& G) {
  return compose(invert(F), compose(invert(G), compose(F, G)));
}

// Exact min and max of F(x) - x over one period. The displacement is PL and
// continuous, so the extrema are attained at break points.
inline std::pair<Rat, Rat> displacement_extrema(const PLLift& F) {
  Rat mn = F.pieces()[0].v - F.pieces()[0].x;
  Rat mx = mn;
  for (std::size_t i = 1; i < F.piece_count(); ++i) {
    Rat d = F.pieces()[i].v - F.pieces()[i].x;
    if (d < mn) mn = d;
    if (d > mx) mx = d;
  }
  return {mn, mx};
}

// A maximal solution component of F(x) = x + p l in [0, l): either a point
// (lo == hi) or a closed interval. hi == l marks a component reaching the
// wrap point.
struct FixedPart {
  Rat lo, hi;
  bool is_point() const { return lo == hi; }
  bool operator==(const FixedPart& o) const { return lo == o.lo && hi == o.hi; }
};

inline std::vector<FixedPart> fixed_points(const PLLift& F,
                                           const mpz_class& p) {
  const Rat& l = F.circumference();
  Rat target = Rat(p) * l;
  std::vector<FixedPart> parts;
  for (std::size_t i = 0; i < F.piece_count(); ++i) {
    const Piece& pc = F.pieces()[i];
    Rat x_end = F.piece_end(i);
    if (pc.slope == 1) {
      if (pc.v - pc.x == target) parts.push_back(FixedPart{pc.x, x_end});
    } else {
      // solve v + s (x - x0) = x + target
      Rat xs = (target - pc.v + pc.slope * pc.x) / (pc.slope - 1);
      if (xs >= pc.x && xs <= x_end && xs < l)
        parts.push_back(FixedPart{xs, xs});
    }
  }
  // merge touching components
  std::vector<FixedPart> merged;
  for (const auto& part : parts) {
    if (!merged.empty() && merged.back().hi >= part.lo) {
      if (part.hi > merged.back().hi) merged.back().hi = part.hi;
    } else {
      merged.push_back(part);
    }
  }
  return merged;
}

// Canonical representative of the circle homeomorphism underlying a lift:
// the lift with F(0) reduced into [0, l), plus the integer translation
// offset. Two lifts differ by k l exactly when they share a representative
// and their offsets differ by k.
struct CircleMap {
  PLLift rep;
  mpz_class offset;
};

inline CircleMap to_circle(const PLLift& F) {
  const Rat& l = F.circumference();
  mpz_class k = rat_floor_div(F.pieces()[0].v, l);
  if (k == 0) return CircleMap{F, k};
  Rat shift = Rat(k) * l;
  std::vector<Piece> moved = F.pieces();
  for (auto& p : moved) p.v -= shift;
  return CircleMap{PLLift::assemble(std::move(moved), l), k};
}

inline PLLift to_lift(const CircleMap& c) {
  if (c.offset == 0) return c.rep;
  const Rat& l = c.rep.circumference();
  Rat shift = Rat(c.offset) * l;
  std::vector<Piece> moved = c.rep.pieces();
  for (auto& p : moved) p.v += shift;
  return PLLift::assemble(std::move(moved), l);
}

// Value of the underlying circle map at x in [0, l), reduced into [0, l).
inline Rat evaluate_circle(const CircleMap& c, const Rat& x) {
  const Rat& l = c.rep.circumference();
  Rat y = evaluate(c.rep, x);
  return y - Rat(rat_floor_div(y, l)) * l;
}

}  // namespace rotcalc
