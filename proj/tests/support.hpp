#pragma once

#include <random>
#include <string>
#include <vector>

#include "rotcalc/pl_lift.hpp"
#include "rotcalc/rat.hpp"

namespace testutil {

using rotcalc::PLLift;
using rotcalc::Piece;
using rotcalc::Rat;

inline Rat q(const char* text) { return rotcalc::parse_rat(text); }

inline std::string fixture(const std::string& name) {
  return std::string(ROTCALC_FIXTURES_DIR) + "/" + name;
}

// The two-slope (2/3, 4/3) map on l = 1 used across the suites; its rotation
// number is log2(3) - 1.
inline PLLift two_slope_map() {
  return PLLift::normalize({Piece{q("0"), q("2/3"), q("2/3")},
                            Piece{q("1/2"), q("1"), q("4/3")}},
                           Rat(1));
}

// Random rational in [0, bound) with denominator dividing 2^4 3^2 5^2.
inline Rat random_rat(std::mt19937_64& rng, const Rat& bound) {
  static const long dens[] = {1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 25, 40, 48};
  long d = dens[rng() % (sizeof(dens) / sizeof(dens[0]))];
  long n = static_cast<long>(rng() % static_cast<unsigned long>(8 * d));
  return rotcalc::rat(n, 8 * d) * bound;
}

// Random PL lift: pick increasing breaks and increasing values; slopes are
// implied, so continuity and equivariance hold by construction.
inline PLLift random_lift(std::mt19937_64& rng, int max_breaks = 6) {
  Rat l(1);
  int m = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_breaks - 1));
  std::vector<Rat> xs, vs;
  xs.push_back(Rat(0));
  while (static_cast<int>(xs.size()) < m) {
    Rat x = random_rat(rng, l);
    bool dup = false;
    for (const Rat& seen : xs) dup = dup || seen == x;
    if (!dup) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  Rat v0 = random_rat(rng, Rat(2)) - Rat(1);
  vs.push_back(v0);
  // strictly increasing values with total rise exactly l
  std::vector<Rat> cuts;
  cuts.push_back(Rat(0));
  while (static_cast<int>(cuts.size()) < m) {
    Rat c = random_rat(rng, l);
    bool dup = false;
    for (const Rat& seen : cuts) dup = dup || seen == c;
    if (!dup) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  for (int i = 1; i < m; ++i) vs.push_back(v0 + cuts[i]);
  std::vector<Piece> pieces;
  for (int i = 0; i < m; ++i) {
    Rat x_end = (i + 1 < m) ? xs[i + 1] : l;
    Rat v_end = (i + 1 < m) ? vs[i + 1] : v0 + l;
    pieces.push_back(Piece{xs[i], vs[i], (v_end - vs[i]) / (x_end - xs[i])});
  }
  return PLLift::normalize(std::move(pieces), l);
}

}  // namespace testutil
