#include "triadic/measure.hpp"

#include "doctest.h"

#include <vector>

using triadic::adjacent_ratio_max;
using triadic::atom_ratio_bound;
using triadic::ball_ratio_estimate;
using triadic::density_oracle;
using triadic::digit_one_count;
using triadic::Int;
using triadic::interval_hi;
using triadic::interval_lo;
using triadic::MeasureParams;
using triadic::mu;
using triadic::mu_interval;
using triadic::nu;
using triadic::pow3;
using triadic::Rat;
using triadic::ternary_digits;
using triadic::TriadicBox;
using triadic::TriadicInterval;
using triadic::validate_params;

namespace {

const Rat kFifth(Int(1), Int(5));
const Rat kThird(Int(1), Int(3));

const std::vector<Rat> kDeltas = {
    kFifth,
    Rat(Int(1), Int(4)),
    Rat(Int(3), Int(10)),
    kThird,
};

}  // namespace

TEST_SUITE("measure") {

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(validate_params({Rat(0), 1}), std::domain_error);
  CHECK_THROWS_AS(validate_params({Rat(Int(2), Int(5)), 1}), std::domain_error);
  CHECK_THROWS_AS(validate_params({kFifth, 0}), std::domain_error);
  CHECK_NOTHROW(validate_params({kThird, 1}));
  CHECK_NOTHROW(validate_params({kFifth, 3}));
}

TEST_CASE("interval endpoints and digits") {
  TriadicInterval I{2, Int(4)};
  CHECK(interval_lo(I) == Rat(Int(4), Int(9)));
  CHECK(interval_hi(I) == Rat(Int(5), Int(9)));
  CHECK(ternary_digits(Int(11), 3) == std::vector<int>{1, 0, 2});
  CHECK(ternary_digits(Int(0), 2) == std::vector<int>{0, 0});
  CHECK_THROWS_AS(ternary_digits(Int(9), 2), std::domain_error);
  CHECK(digit_one_count(Int(11), 3) == 1);
  CHECK(digit_one_count(Int(4), 2) == 2);
  // Only the residue mod 3^n matters.
  CHECK(digit_one_count(Int(4) + pow3(2) * 7, 2) == 2);
  CHECK(digit_one_count(Int(-1), 1) == 0);  // -1 mod 3 = 2
}

TEST_CASE("atom masses at delta 1/5") {
  MeasureParams mp{kFifth, 1};
  CHECK(mu(mp, {1, Int(0)}) == kFifth);
  CHECK(mu(mp, {1, Int(1)}) == Rat(Int(3), Int(5)));
  CHECK(mu(mp, {1, Int(2)}) == kFifth);
  CHECK(mu(mp, {2, Int(4)}) == Rat(Int(9), Int(25)));  // digits 11
  CHECK(mu(mp, {0, Int(0)}) == Rat(1));
}

TEST_CASE("delta 1/3 reproduces Lebesgue on atoms") {
  MeasureParams mp{kThird, 1};
  for (unsigned long n = 0; n <= 6; ++n) {
    Rat atom(Int(1), pow3(n));
    for (Int i(0); i < pow3(n); ++i) CHECK(mu(mp, {n, i}) == atom);
  }
}

TEST_CASE("children of an atom partition its mass") {
  for (const Rat& d : kDeltas) {
    MeasureParams mp{d, 1};
    for (unsigned long n = 0; n <= 7; ++n) {
      for (Int i(0); i < pow3(n); ++i) {
        Rat parent = mu(mp, {n, i});
        Rat sum = mu(mp, {n + 1, 3 * i}) + mu(mp, {n + 1, 3 * i + 1}) +
                  mu(mp, {n + 1, 3 * i + 2});
        CHECK(sum == parent);
      }
    }
  }
}

TEST_CASE("level masses sum to one") {
  for (const Rat& d : kDeltas) {
    MeasureParams mp{d, 1};
    for (unsigned long n = 0; n <= 6; ++n) {
      Rat total(0);
      for (Int i(0); i < pow3(n); ++i) total += mu(mp, {n, i});
      CHECK(total == Rat(1));
    }
  }
}

TEST_CASE("mass is invariant under integer translation of the index") {
  MeasureParams mp{kFifth, 1};
  for (unsigned long n = 1; n <= 4; ++n)
    for (Int i(0); i < pow3(n); ++i)
      for (long t : {-2L, 1L, 5L})
        CHECK(mu(mp, {n, i + pow3(n) * t}) == mu(mp, {n, i}));
}

TEST_CASE("mu_interval agrees with atom decompositions") {
  MeasureParams mp{kFifth, 1};
  CHECK(mu_interval(mp, kThird, Rat(Int(2), Int(3))) == Rat(Int(3), Int(5)));
  CHECK(mu_interval(mp, Rat(0), Rat(1)) == Rat(1));
  CHECK(mu_interval(mp, Rat(0), Rat(0)) == Rat(0));
  // [1/9, 2/3) = atoms 01 (3/25) + 02 (1/25) + the middle third (3/5).
  CHECK(mu_interval(mp, Rat(Int(1), Int(9)), Rat(Int(2), Int(3))) ==
        Rat(Int(19), Int(25)));
  CHECK_THROWS_AS(mu_interval(mp, Rat(0), Rat(Int(1), Int(2))),
                  std::domain_error);

  MeasureParams leb{kThird, 1};
  CHECK(mu_interval(leb, Rat(0), Rat(Int(1), Int(27))) == Rat(Int(1), Int(27)));

  // Periodic extension beyond [0, 1): [-1/3, 0) carries the mass of [2/3, 1).
  CHECK(mu_interval(mp, -kThird, kThird) == Rat(Int(2), Int(5)));

  // Every triadic interval splits exactly at any interior triadic point.
  for (long a = 0; a <= 8; ++a)
    for (long b = a; b <= 9; ++b)
      for (long c = a; c <= b; ++c) {
        Rat ra(Int(a), Int(9)), rb(Int(b), Int(9)), rc(Int(c), Int(9));
        CHECK(mu_interval(mp, ra, rb) ==
              mu_interval(mp, ra, rc) + mu_interval(mp, rc, rb));
      }
}

TEST_CASE("nu multiplies per-axis interval masses") {
  MeasureParams mp{kFifth, 2};
  TriadicBox box{{{1, Int(1)}, {1, Int(1)}}};
  CHECK(nu(mp, box) == Rat(Int(9), Int(25)));
  TriadicBox mixed{{{1, Int(1)}, {2, Int(0)}}};
  CHECK(nu(mp, mixed) == Rat(Int(3), Int(5)) * Rat(Int(1), Int(25)));
  TriadicBox wrong{{{1, Int(0)}}};
  CHECK_THROWS_AS(nu(mp, wrong), std::domain_error);
}

TEST_CASE("density oracle matches atom masses on every atom") {
  for (const Rat& d : kDeltas) {
    MeasureParams mp{d, 1};
    for (unsigned long n = 0; n <= 5; ++n) {
      Rat scale(Int(1), pow3(n));
      for (Int i(0); i < pow3(n); ++i) {
        // Interior point of the atom: its midpoint.
        Rat x = (Rat(i) + Rat(Int(1), Int(2))) * scale;
        CHECK(density_oracle(mp, n, x) * scale == mu(mp, {n, i}));
      }
    }
  }
}

TEST_CASE("adjacent ratio attains the doubling bound at every level") {
  for (const Rat& d : {kFifth, Rat(Int(1), Int(4))}) {
    MeasureParams mp{d, 1};
    Rat bound = atom_ratio_bound(mp);
    CHECK(bound == (Rat(1) - 2 * d) / d);
    for (unsigned long n = 1; n <= 6; ++n)
      CHECK(adjacent_ratio_max(mp, n, Int(0), pow3(n)) == bound);
  }
  // Lebesgue: all atoms equal, the max ratio collapses to 1.
  MeasureParams leb{kThird, 1};
  CHECK(adjacent_ratio_max(leb, 3, Int(0), pow3(3)) == Rat(1));
}

TEST_CASE("adjacent ratio over a sub-range") {
  MeasureParams mp{kFifth, 1};
  // Pair (0, 1) at level 2: digits 00 and 01, ratio 3.
  CHECK(adjacent_ratio_max(mp, 2, Int(0), Int(2)) == Rat(3));
  // A span with a single atom has no adjacent pair.
  CHECK(adjacent_ratio_max(mp, 2, Int(0), Int(1)) == Rat(0));
  CHECK_THROWS_AS(adjacent_ratio_max(mp, 2, Int(1), Int(1)), std::domain_error);
  CHECK_THROWS_AS(adjacent_ratio_max(mp, 0, Int(0), Int(1)), std::domain_error);
}

TEST_CASE("ball ratio estimate is exact for Lebesgue") {
  MeasureParams leb{kThird, 1};
  CHECK(ball_ratio_estimate(leb, Rat(Int(1), Int(3)), Rat(Int(1), Int(9))) ==
        Rat(2));
  MeasureParams mp{kFifth, 1};
  Rat r = ball_ratio_estimate(mp, Rat(Int(1), Int(3)), Rat(Int(1), Int(9)));
  CHECK(r > Rat(0));
  CHECK(r <= atom_ratio_bound(mp).pow(2) * 2);
}

}  // TEST_SUITE
