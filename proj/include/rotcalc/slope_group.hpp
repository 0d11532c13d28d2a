#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

#include "rotcalc/errors.hpp"
#include "rotcalc/rat.hpp"

namespace rotcalc {

namespace detail {

inline std::vector<std::pair<unsigned long, long>> factor_small(
    unsigned long n) {
  std::vector<std::pair<unsigned long, long>> out;
  for (unsigned long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      long e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace detail

// The multiplicative group P generated by positive integers n_1, ..., n_k,
// together with d = gcd(n_i - 1). Membership of a rational in P is decided
// against the row lattice of the generator exponent matrix; the Hermite
// normal form of that matrix is computed once and cached here. Generators
// need not be multiplicatively independent.
struct SlopeGroup {
  std::vector<unsigned long> generators;
  std::vector<unsigned long> prime_basis;
  std::vector<std::vector<long>> exponent_matrix;  // row i: exponents of n_i
  unsigned long d = 1;
  std::vector<std::vector<mpz_class>> hnf;  // row-echelon lattice basis

  static SlopeGroup make(std::vector<unsigned long> gens) {
    if (gens.empty()) throw InvalidGroup("at least one generator required");
    SlopeGroup g;
    g.generators = std::move(gens);
    for (unsigned long n : g.generators) {
      if (n < 2) throw InvalidGroup("generators must be >= 2");
      for (auto [p, e] : detail::factor_small(n)) {
        (void)e;
        g.prime_basis.push_back(p);
      }
    }
    std::sort(g.prime_basis.begin(), g.prime_basis.end());
    g.prime_basis.erase(
        std::unique(g.prime_basis.begin(), g.prime_basis.end()),
        g.prime_basis.end());
    for (unsigned long n : g.generators) {
      std::vector<long> row(g.prime_basis.size(), 0);
      for (auto [p, e] : detail::factor_small(n)) {
        auto it =
            std::lower_bound(g.prime_basis.begin(), g.prime_basis.end(), p);
        row[static_cast<std::size_t>(it - g.prime_basis.begin())] = e;
      }
      g.exponent_matrix.push_back(std::move(row));
    }
    g.d = 0;
    for (unsigned long n : g.generators) g.d = std::gcd(g.d, n - 1);
    if (g.d == 0) g.d = 1;  // all generators equal 2... gcd(1) handled above
    g.compute_hnf();
    return g;
  }

  // Is the integer vector e in the lattice spanned by the generator rows?
  bool lattice_contains(std::vector<mpz_class> e) const {
    for (const auto& row : hnf) {
      std::size_t c = 0;
      while (c < row.size() && row[c] == 0) ++c;
      if (c == row.size()) continue;
      if (e[c] % row[c] != 0) return false;
      mpz_class q = e[c] / row[c];
      for (std::size_t j = c; j < row.size(); ++j) e[j] -= q * row[j];
    }
    for (const auto& v : e)
      if (v != 0) return false;
    return true;
  }

 private:
  void compute_hnf() {
    std::size_t rows = exponent_matrix.size();
    std::size_t cols = prime_basis.size();
    std::vector<std::vector<mpz_class>> m(rows,
                                          std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = exponent_matrix[i][j];

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
      // Euclidean elimination: leave a single nonzero entry in column c
      // among rows >= r.
      while (true) {
        std::size_t i1 = rows, i2 = rows;
        for (std::size_t i = r; i < rows; ++i) {
          if (m[i][c] != 0) {
            if (i1 == rows)
              i1 = i;
            else {
              i2 = i;
              break;
            }
          }
        }
        if (i1 == rows) break;  // column already clear
        if (i2 == rows) {
          std::swap(m[i1], m[r]);
          if (m[r][c] < 0)
            for (auto& v : m[r]) v = -v;
          ++r;
          break;
        }
        if (abs(m[i1][c]) > abs(m[i2][c])) std::swap(i1, i2);
        mpz_class q = m[i2][c] / m[i1][c];
        for (std::size_t j = 0; j < cols; ++j) m[i2][j] -= q * m[i1][j];
      }
    }
    m.resize(r);
    hnf = std::move(m);
  }
};

// The break ring A = Z[1/n_1, ..., 1/n_k]; shares the generator data with
// the slope group it came from.
struct BreakRing {
  SlopeGroup group;

  static BreakRing make(std::vector<unsigned long> gens) {
    return BreakRing{SlopeGroup::make(std::move(gens))};
  }
};

namespace detail {

// Strip all prime_basis factors out of |n|; returns the exponent vector and
// leaves the cofactor in n. Membership requires the cofactor to reach 1.
inline std::vector<mpz_class> strip_basis(mpz_class& n,
                                          const std::vector<unsigned long>& basis) {
  std::vector<mpz_class> exps(basis.size(), 0);
  if (n < 0) n = -n;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), basis[i])) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), basis[i]);
      ++exps[i];
    }
  }
  return exps;
}

}  // namespace detail

// x is in A iff the denominator of x (lowest terms) factors over the prime
// basis. Trial division over the basis only; a residual cofactor != 1 means
// "not in the ring".
inline bool in_break_ring(const Rat& x, const BreakRing& A) {
  mpz_class den = x.get_den();
  detail::strip_basis(den, A.group.prime_basis);
  return den == 1;
}

// s is in P iff s > 0, s factors over the prime basis, and its exponent
// vector lies in the row lattice of the generator exponent matrix.
inline bool in_slope_group(const Rat& s, const SlopeGroup& P) {
  if (s <= 0) throw NonPositive("slope-group membership requires s > 0");
  if (s == 1) return true;
  mpz_class num = s.get_num();
  mpz_class den = s.get_den();
  auto en = detail::strip_basis(num, P.prime_basis);
  auto ed = detail::strip_basis(den, P.prime_basis);
  if (num != 1 || den != 1) return false;
  std::vector<mpz_class> e(en.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = en[i] - ed[i];
  return P.lattice_contains(std::move(e));
}

inline unsigned long gcd_defect(const SlopeGroup& P) { return P.d; }

// Residue of x in A / IP*A = Z/dZ, computed as num * den^{-1} mod d. The
// denominator is invertible because it divides a product of generators,
// each congruent to 1 mod d.
inline unsigned long residue_mod_d(const Rat& x, const SlopeGroup& P,
                                   const BreakRing& A) {
  if (!in_break_ring(x, A)) throw NotInRing(rat_str(x) + " is not in A");
  if (P.d == 1) return 0;
  mpz_class d(static_cast<unsigned long>(P.d));
  mpz_class den_mod = x.get_den() % d;
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den_mod.get_mpz_t(), d.get_mpz_t()) == 0)
    throw NotInRing("denominator not invertible mod d");
  mpz_class r = (x.get_num() % d) * inv % d;
  if (r < 0) r += d;
  return r.get_ui();
}

inline unsigned long residue_mod_d(const Rat& x, const SlopeGroup& P) {
  return residue_mod_d(x, P, BreakRing{P});
}

}  // namespace rotcalc
