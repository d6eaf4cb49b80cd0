#include "triadic/kset.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "triadic/errors.hpp"
#include "triadic/measure.hpp"

#include <utility>
#include <vector>

using triadic::binomial_tail;
using triadic::Bounds;
using triadic::Cert;
using triadic::certify_leq;
using triadic::check_tail_bounds;
using triadic::complement_components;
using triadic::component_count;
using triadic::components;
using triadic::count_k;
using triadic::decide_leq;
using triadic::digit_one_count;
using triadic::entropy_H;
using triadic::first_member;
using triadic::gap_count;
using triadic::gap_total_length;
using triadic::GapList;
using triadic::gaps;
using triadic::IndexRun;
using triadic::Int;
using triadic::KMemberStream;
using triadic::KSetSpec;
using triadic::last_member;
using triadic::member;
using triadic::members;
using triadic::MeasureParams;
using triadic::mu;
using triadic::mu_k;
using triadic::pow3;
using triadic::Precision;
using triadic::Rat;
using triadic::resource_error;
using triadic::strict_regime;
using triadic::TailReport;
using triadic::validate_spec;

namespace {

const Rat kFifth(Int(1), Int(5));

KSetSpec spec_of(unsigned long n, unsigned long k, Rat delta = kFifth) {
  return KSetSpec{n, k, delta};
}

// Reference membership: scan the n ternary digits directly.
bool brute_member(const Int& i, unsigned long n, unsigned long k) {
  return n - digit_one_count(i, n) <= k;
}

std::vector<Int> brute_members(unsigned long n, unsigned long k) {
  std::vector<Int> out;
  for (Int i(0); i < pow3(n); ++i)
    if (brute_member(i, n, k)) out.push_back(i);
  return out;
}

// Reference component runs rebuilt from the raw membership bitmap.
std::vector<IndexRun> brute_components(unsigned long n, unsigned long k) {
  std::vector<IndexRun> runs;
  bool open = false;
  for (Int i(0); i < pow3(n); ++i) {
    if (brute_member(i, n, k)) {
      if (!open) {
        runs.push_back({i, i});
        open = true;
      } else {
        runs.back().last = i;
      }
    } else {
      open = false;
    }
  }
  return runs;
}

}  // namespace

TEST_SUITE("kset") {

TEST_CASE("spec validation and regime") {
  CHECK_THROWS_AS(validate_spec(spec_of(0, 0)), std::domain_error);
  CHECK_THROWS_AS(validate_spec({2, 1, Rat(0)}), std::domain_error);
  CHECK_THROWS_AS(validate_spec({2, 1, Rat(Int(2), Int(5))}), std::domain_error);
  CHECK_NOTHROW(validate_spec(spec_of(2, 1)));

  // 2 delta n <= k <= (2/3) n with delta = 1/5.
  CHECK(strict_regime(spec_of(10, 4)));
  CHECK(strict_regime(spec_of(5, 2)));
  CHECK_FALSE(strict_regime(spec_of(10, 3)));
  CHECK_FALSE(strict_regime(spec_of(10, 7)));
  CHECK(strict_regime({3, 2, Rat(Int(1), Int(3))}));
}

TEST_CASE("membership matches the digit-count scan") {
  std::vector<Int> expect = {Int(1), Int(3), Int(4), Int(5), Int(7)};
  CHECK(members(spec_of(2, 1)) == expect);
  for (unsigned long n = 1; n <= 9; ++n)
    for (unsigned long k = 0; k <= n + 1; ++k) {
      KSetSpec s = spec_of(n, k);
      std::vector<Int> brute = brute_members(n, k);
      CHECK(members(s) == brute);
      CHECK(count_k(s) == Int(brute.size()));
      for (const Int& i : brute) CHECK(member(i, s));
    }
}

TEST_CASE("stream enumerates members in increasing order") {
  KSetSpec s = spec_of(4, 2);
  std::vector<Int> via_stream;
  for (KMemberStream it(s); !it.done(); it.next()) via_stream.push_back(it.value());
  CHECK(via_stream == members(s));
  for (size_t i = 1; i < via_stream.size(); ++i)
    CHECK(via_stream[i - 1] < via_stream[i]);
}

TEST_CASE("mu_k equals the sum of member atom masses") {
  CHECK(mu_k(spec_of(2, 1)) == Rat(Int(21), Int(25)));
  for (unsigned long n = 1; n <= 8; ++n)
    for (unsigned long k = 0; k <= n; ++k) {
      KSetSpec s = spec_of(n, k);
      MeasureParams mp{s.delta, 1};
      Rat total(0);
      for (const Int& i : members(s)) total += mu(mp, {n, i});
      CHECK(mu_k(s) == total);
    }
  // k >= n covers everything.
  CHECK(mu_k(spec_of(3, 3)) == Rat(1));
  CHECK(mu_k(spec_of(3, 5)) == Rat(1));
  // Lebesgue: mass is just normalized cardinality.
  KSetSpec leb{6, 2, Rat(Int(1), Int(3))};
  CHECK(mu_k(leb) == Rat(count_k(leb), pow3(6)));
}

TEST_CASE("extreme members have the closed digit forms") {
  KSetSpec s = spec_of(10, 4);
  CHECK(first_member(s) == (pow3(6) - 1) / 2);          // 0000111111
  CHECK(last_member(s) == pow3(10) - pow3(6) + (pow3(6) - 1) / 2);
  CHECK(member(first_member(s), s));
  CHECK(member(last_member(s), s));
  CHECK_FALSE(member(first_member(s) - 1, s));
  // Degenerate k >= n: the whole interval.
  CHECK(first_member(spec_of(3, 3)) == 0);
  CHECK(last_member(spec_of(3, 3)) == pow3(3) - 1);
  for (unsigned long n = 1; n <= 8; ++n)
    for (unsigned long k = 0; k <= n; ++k) {
      std::vector<Int> brute = brute_members(n, k);
      CHECK(first_member(spec_of(n, k)) == brute.front());
      CHECK(last_member(spec_of(n, k)) == brute.back());
    }
}

TEST_CASE("component counts match runs rebuilt from the bitmap") {
  CHECK(component_count(spec_of(10, 4)) == 2561);
  CHECK(gap_count(spec_of(10, 4)) == 2560);
  for (unsigned long n = 1; n <= 9; ++n)
    for (unsigned long k = 0; k <= n; ++k) {
      KSetSpec s = spec_of(n, k);
      std::vector<IndexRun> brute = brute_components(n, k);
      CHECK(component_count(s) == Int(brute.size()));
      CHECK(gap_count(s) == Int(brute.size()) - 1);
      std::vector<IndexRun> got = components(s);
      REQUIRE(got.size() == brute.size());
      for (size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].first == brute[i].first);
        CHECK(got[i].last == brute[i].last);
      }
    }
}

TEST_CASE("gap lists and lengths") {
  GapList g = gaps(spec_of(2, 1));
  REQUIRE(g.size() == 2);
  CHECK(g[0].lo == Rat(Int(2), Int(9)));
  CHECK(g[0].hi == Rat(Int(1), Int(3)));
  CHECK(g[1].lo == Rat(Int(2), Int(3)));
  CHECK(g[1].hi == Rat(Int(7), Int(9)));
  CHECK(gaps(spec_of(1, 0)).empty());
  CHECK(gap_total_length(spec_of(2, 1)) == Rat(Int(2), Int(9)));

  for (unsigned long n = 1; n <= 8; ++n)
    for (unsigned long k = 0; k <= n; ++k) {
      KSetSpec s = spec_of(n, k);
      Rat sum(0);
      for (const auto& gap : gaps(s)) {
        CHECK(gap.lo < gap.hi);
        sum += gap.length();
      }
      CHECK(gap_total_length(s) == sum);
    }
}

TEST_CASE("complement adds the leading and trailing pieces") {
  GapList c = complement_components(spec_of(2, 1));
  REQUIRE(c.size() == 4);
  CHECK(c[0].lo == Rat(0));
  CHECK(c[0].hi == Rat(Int(1), Int(9)));
  CHECK(c[3].lo == Rat(Int(8), Int(9)));
  CHECK(c[3].hi == Rat(1));
  // k >= n: K is all of [0, 1), complement empty.
  CHECK(complement_components(spec_of(2, 2)).empty());
  // k = 0 keeps only the all-1s atom; complement is the two sides.
  GapList c0 = complement_components(spec_of(2, 0));
  REQUIRE(c0.size() == 2);
  CHECK(c0[0].lo == Rat(0));
  CHECK(c0[1].hi == Rat(1));
}

TEST_CASE("enumeration respects the atom cap") {
  CHECK_THROWS_AS(members(spec_of(12, 12), 10), resource_error);
  CHECK_THROWS_AS(components(spec_of(12, 12), 10), resource_error);
  CHECK_NOTHROW(members(spec_of(12, 0), 10));
}

TEST_CASE("entropy enclosure matches the reference evaluation") {
  Precision p{64};
  for (long ia = 1; ia <= 9; ++ia)
    for (long ip = 1; ip <= ia; ++ip) {
      Rat a(Int(ia), Int(10)), q(Int(ip), Int(10));
      Bounds h = entropy_H(a, q, p);
      CHECK_MESSAGE(oracle::contains_entropy(a, q, h),
                    "a = " << a.str() << " p = " << q.str());
      // H >= 0 with equality only at p = a.
      if (ip == ia) {
        CHECK(h.lo() == Rat(0));
        CHECK(h.hi() == Rat(0));
      } else {
        CHECK(h.hi() > Rat(0));
      }
    }
  CHECK_THROWS_AS(entropy_H(Rat(Int(1), Int(4)), Rat(Int(1), Int(2)), p),
                  std::domain_error);
  CHECK_THROWS_AS(entropy_H(Rat(1), Rat(Int(1), Int(2)), p), std::domain_error);
}

TEST_CASE("entropy dominates the quadratic lower bound") {
  for (long ia = 1; ia <= 9; ++ia)
    for (long ip = 1; ip <= ia; ++ip) {
      Rat a(Int(ia), Int(10)), q(Int(ip), Int(10));
      Rat quad = 2 * (a - q) * (a - q);
      auto dec = decide_leq(
          [&](Precision) { return Bounds(quad); },
          [&](Precision pr) { return entropy_H(a, q, pr); }, 64, 256);
      // Equality holds at p = a (both zero), so Yes is expected everywhere.
      CHECK(dec.cert == Cert::Yes);
    }
}

TEST_CASE("binomial tail closed cases and brute sums") {
  Rat half(Int(1), Int(2));
  CHECK(binomial_tail(2, half, half) == Rat(Int(3), Int(4)));
  CHECK(binomial_tail(5, half, half) == half);
  CHECK(binomial_tail(7, Rat(0), kFifth) == Rat(1));
  CHECK(binomial_tail(7, Rat(1), kFifth) == kFifth.pow(7));
  CHECK(binomial_tail(4, half, Rat(1)) == Rat(1));

  // Direct summation oracle.
  for (unsigned long n : {1ul, 3ul, 10ul, 23ul}) {
    for (const Rat& a : {Rat(Int(1), Int(3)), Rat(Int(3), Int(5)), Rat(Int(9), Int(10))}) {
      for (const Rat& q : {kFifth, Rat(Int(1), Int(2)), Rat(Int(2), Int(3))}) {
        Rat sum(0);
        Int m0 = (a * Rat(Int(n))).ceil();
        for (Int m = m0; m <= Int(n); ++m) {
          unsigned long mu_ = m.get_ui();
          sum += Rat(triadic::binomial(n, mu_)) * q.pow(static_cast<long>(mu_)) *
                 (Rat(1) - q).pow(static_cast<long>(n - mu_));
        }
        CHECK(binomial_tail(n, a, q) == sum);
      }
    }
  }
  CHECK_THROWS_AS(binomial_tail(3, Rat(2), kFifth), std::domain_error);
  CHECK_THROWS_AS(binomial_tail(3, kFifth, Rat(0)), std::domain_error);
}

TEST_CASE("chernoff bound certifies on a spot grid") {
  // tail(n, a, p) <= exp(-n H(a, p)) for p < a.
  for (unsigned long n : {5ul, 20ul}) {
    Rat a(Int(3), Int(5)), q(Int(2), Int(5));
    Rat tail = binomial_tail(n, a, q);
    auto dec = decide_leq(
        [&](Precision) { return Bounds(tail); },
        [&](Precision pr) {
          return enclose_exp(entropy_H(a, q, pr).scale(Rat(-static_cast<long>(n))), pr);
        },
        64, 256);
    CHECK(dec.cert == Cert::Yes);
  }
}

TEST_CASE("tail bounds certify in the strict regime") {
  const std::vector<std::pair<unsigned long, unsigned long>> cases = {{10, 4},
                                                                      {5, 2}};
  for (auto [n, k] : cases) {
    TailReport tr = check_tail_bounds(spec_of(n, k));
    CHECK(tr.mass.cert == Cert::Yes);
    CHECK(tr.length.cert == Cert::Yes);
    CHECK(tr.gaps.cert == Cert::Yes);
    CHECK(tr.mass.level <= triadic::kMaxLevel);
  }
  // The boundary case k = 2 delta n = (2/3) n at delta = 1/3.
  TailReport edge = check_tail_bounds({3, 2, Rat(Int(1), Int(3))});
  CHECK(edge.mass.cert == Cert::Yes);
  CHECK(edge.length.cert == Cert::Yes);
  CHECK(edge.gaps.cert == Cert::Yes);
  // Out of regime is a domain error, not a silent fail.
  CHECK_THROWS_AS(check_tail_bounds(spec_of(10, 2)), std::domain_error);
  CHECK_THROWS_AS(check_tail_bounds(spec_of(10, 7)), std::domain_error);
}

}  // TEST_SUITE
