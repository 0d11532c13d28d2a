#include <catch2/catch_amalgamated.hpp>

#include <mpfr.h>

#include <random>

#include "rotcalc/rotation.hpp"
#include "support.hpp"

using namespace rotcalc;
using testutil::q;
using testutil::two_slope_map;

namespace {

// Independent numeric oracle: continued fraction of log2(3) - 1 extracted
// from 256-bit arithmetic.
std::vector<long> cf_oracle_log23(int terms) {
  mpfr_t x, inv;
  mpfr_init2(x, 256);
  mpfr_init2(inv, 256);
  mpfr_set_ui(x, 3, MPFR_RNDN);
  mpfr_log2(x, x, MPFR_RNDN);
  mpfr_sub_ui(x, x, 1, MPFR_RNDN);
  std::vector<long> out;
  out.push_back(0);
  for (int i = 1; i < terms; ++i) {
    mpfr_ui_div(inv, 1, x, MPFR_RNDN);
    long a = mpfr_get_si(inv, MPFR_RNDD);
    out.push_back(a);
    mpfr_sub_si(x, inv, a, MPFR_RNDN);
  }
  mpfr_clear(x);
  mpfr_clear(inv);
  return out;
}

}  // namespace

TEST_CASE("enclosures from materialized powers") {
  PLLift f = two_slope_map();
  Enclosure e1 = rot_enclosure(f, 1);
  CHECK(e1.lo == q("1/2"));
  CHECK(e1.hi == q("2/3"));
  Enclosure e2 = rot_enclosure(f, 2);
  CHECK(e2.lo == q("9/16"));
  CHECK(e2.hi == q("11/18"));

  PLLift t = PLLift::translation(q("3/7"), Rat(1));
  Enclosure e5 = rot_enclosure(t, 5);
  CHECK(e5.lo == q("3/7"));
  CHECK(e5.hi == q("3/7"));

  CHECK_THROWS_AS(rot_enclosure(f, 0), EffortExceeded);
}

TEST_CASE("enclosures intersect across efforts") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    PLLift a = testutil::random_lift(rng);
    Enclosure e1 = rot_enclosure(a, 3);
    Enclosure e2 = rot_enclosure(a, 8);
    Enclosure e3 = rot_enclosure(a, 24);
    CHECK(e1.lo <= e2.hi);
    CHECK(e2.lo <= e1.hi);
    CHECK(e2.lo <= e3.hi);
    CHECK(e3.lo <= e2.hi);
    CHECK(e1.lo <= e3.hi);
    CHECK(e3.lo <= e1.hi);
  }
}

TEST_CASE("streamed bounds contain the exact enclosure") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 15; ++trial) {
    PLLift a = testutil::random_lift(rng);
    Enclosure exact = rot_enclosure(a, 40);
    Enclosure streamed = rot_enclosure_streamed(a, 40, 192);
    CHECK(streamed.lo <= exact.lo);
    CHECK(streamed.hi >= exact.hi);
    // slope products over 40 steps stay far below 2^768, so at that
    // precision the slack is negligible against a width ~1/40
    Enclosure precise = rot_enclosure_streamed(a, 40, 768);
    CHECK(precise.width() <= exact.width() + q("1/1000000"));
  }
}

TEST_CASE("rot_compare") {
  PLLift f = two_slope_map();
  CHECK(rot_compare(f, q("1/2")) == Ordering::Greater);
  CHECK(rot_compare(f, q("2/3")) == Ordering::Less);
  CHECK(rot_compare(PLLift::translation(q("1/2"), Rat(1)), q("1/2")) ==
        Ordering::Equal);
  CHECK(rot_compare(f, q("7/12")) == Ordering::Greater);
  CHECK(rot_compare(f, q("3/5")) == Ordering::Less);
}

TEST_CASE("rot_compare translation equivariance") {
  PLLift f = two_slope_map();
  PLLift tf = compose(PLLift::translation(Rat(1), Rat(1)), f);
  CHECK(rot_compare(tf, q("3/2")) == rot_compare(f, q("1/2")));
  CHECK(rot_compare(tf, q("5/3")) == rot_compare(f, q("2/3")));
  Enclosure e = rot_enclosure(f, 4);
  Enclosure et = rot_enclosure(tf, 4);
  CHECK(et.lo == e.lo + 1);
  CHECK(et.hi == e.hi + 1);
}

TEST_CASE("rot_rational") {
  PLLift t = PLLift::translation(q("2/5"), Rat(1));
  auto r = rot_rational(t, 10);
  REQUIRE(r.has_value());
  CHECK(*r == q("2/5"));

  // conjugation invariance with exact certificates
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    PLLift g = testutil::random_lift(rng);
    PLLift conj = compose(g, compose(t, invert(g)));
    auto rc = rot_rational(conj, 10);
    REQUIRE(rc.has_value());
    CHECK(*rc == q("2/5"));
  }

  CHECK_FALSE(rot_rational(two_slope_map(), 50).has_value());
  CHECK_FALSE(rot_rational(t, 3).has_value());  // q_max below denominator
}

TEST_CASE("rot_rational homogeneity on rational cases") {
  std::mt19937_64 rng(34);
  PLLift t = PLLift::translation(q("1/3"), Rat(1));
  PLLift g = testutil::random_lift(rng);
  PLLift f = compose(g, compose(t, invert(g)));
  for (long k = 1; k <= 4; ++k) {
    auto r = rot_rational(power(f, k), 10);
    REQUIRE(r.has_value());
    CHECK(*r == Rat(k) / 3);
  }
}

TEST_CASE("rot_cf on the two-slope map matches the numeric oracle") {
  CFExpansion cf = rot_cf(two_slope_map(), 7);
  REQUIRE(cf.terms.size() == 7);
  auto oracle = cf_oracle_log23(7);
  for (int i = 0; i < 7; ++i) CHECK(cf.terms[i] == oracle[i]);
  CHECK_FALSE(cf.exact);
  REQUIRE(cf.convergents.size() == 7);
  CHECK(cf.convergents[2] == q("1/2"));
  CHECK(cf.convergents[3] == q("3/5"));
  CHECK(cf.convergents[4] == q("7/12"));
  CHECK(cf.convergents[5] == q("24/41"));
  CHECK(cf.convergents[6] == q("31/53"));
}

TEST_CASE("rot_cf exact cases") {
  CFExpansion cf = rot_cf(PLLift::translation(q("2/5"), Rat(1)), 10);
  CHECK(cf.exact);
  REQUIRE(cf.terms.size() == 3);
  CHECK(cf.terms[0] == 0);
  CHECK(cf.terms[1] == 2);
  CHECK(cf.terms[2] == 2);
  CHECK(cf.convergents.back() == q("2/5"));

  CFExpansion id = rot_cf(PLLift::identity(Rat(1)), 5);
  CHECK(id.exact);
  REQUIRE(id.terms.size() == 1);
  CHECK(id.terms[0] == 0);
}

TEST_CASE("rot_cf convergents alternate around the rotation number") {
  PLLift f = two_slope_map();
  CFExpansion cf = rot_cf(f, 7);
  // n = 1024 sits near a good denominator, giving width ~1e-6, well inside
  // the gap |rot - 31/53| ~ 6e-5
  Enclosure tight = rot_enclosure(f, 1024);
  for (std::size_t i = 1; i < cf.convergents.size(); ++i) {
    // odd-indexed convergents (a1, a3, ...) sit above, even below
    if (i % 2 == 1)
      CHECK(cf.convergents[i] >= tight.hi);
    else
      CHECK(cf.convergents[i] <= tight.lo);
  }
}

TEST_CASE("rot_decimal") {
  PLLift f = two_slope_map();
  CHECK(rot_decimal(f, 4).text == "0.5850");
  CHECK(rot_decimal(f, 9).text == "0.584962501");
  DecimalValue d = rot_decimal(PLLift::translation(q("1/3"), Rat(1)), 6);
  CHECK(d.text == "0.333333");
  CHECK(d.guaranteed_digits == 6);
}

TEST_CASE("quasimorphism bound at the enclosure level") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 15; ++trial) {
    PLLift a = testutil::random_lift(rng);
    PLLift b = testutil::random_lift(rng);
    Enclosure ea = rot_enclosure(a, 32);
    Enclosure eb = rot_enclosure(b, 32);
    Enclosure eab = rot_enclosure(compose(a, b), 32);
    Rat discrepancy =
        rat_abs(eab.midpoint() - ea.midpoint() - eb.midpoint());
    CHECK(discrepancy <= Rat(2) + ea.width() + eb.width() + eab.width());
  }
}

TEST_CASE("commutator enclosures respect the defect bound") {
  std::mt19937_64 rng(36);
  const long n = 64;
  Rat bound = Rat(1) + rat(2, n);
  for (int trial = 0; trial < 10; ++trial) {
    PLLift a = testutil::random_lift(rng);
    PLLift b = testutil::random_lift(rng);
    Enclosure e = rot_enclosure(commutator(a, b), n);
    CHECK(e.lo >= -bound);
    CHECK(e.hi <= bound);
  }
}

TEST_CASE("homogeneity of enclosures for powers") {
  PLLift f = two_slope_map();
  for (long k = 2; k <= 4; ++k) {
    Enclosure deep = rot_enclosure(f, 12 * k);
    Enclosure pow = rot_enclosure(power(f, k), 12);
    // rot(F^k) = k rot(F): the scaled deep enclosure must intersect
    CHECK(pow.lo <= Rat(k) * deep.hi);
    CHECK(Rat(k) * deep.lo <= pow.hi);
  }
}

TEST_CASE("rot_value formatting") {
  CHECK(rot_value_str(RotValue(q("2/5"))) == "2/5 (exact)");
  CHECK(rot_value_str(RotValue(DecimalValue{"0.5850", 4})) ==
        "0.5850 (certified 4 digits)");
  CHECK(rot_value_str(RotValue(Enclosure{q("1/2"), q("2/3"), 1})) ==
        "[1/2, 2/3] (effort 1)");
}
