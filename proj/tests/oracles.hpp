#pragma once

// Independent reference computations used to cross-check the library.
// Everything here is deliberately written against different primitives
// than the code under test: MPFR at 512 bits with directed rounding for
// transcendental values, and direct brute-force scans for combinatorial
// ones.

#include "triadic/enclosure.hpp"
#include "triadic/rational.hpp"

#include <mpfr.h>

#include <random>

namespace oracle {

using triadic::Bounds;
using triadic::Int;
using triadic::Rat;

constexpr mpfr_prec_t kPrec = 512;

class Real {
public:
  Real() { mpfr_init2(v_, kPrec); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

private:
  mpfr_t v_;
};

// True iff [down, up] lies inside b. The callers arrange for the true
// value to lie in [down, up], so this never falsely accepts.
inline bool brackets(mpfr_srcptr down, mpfr_srcptr up, const Bounds& b) {
  return mpfr_cmp_q(down, b.lo().raw().get_mpq_t()) >= 0 &&
         mpfr_cmp_q(up, b.hi().raw().get_mpq_t()) <= 0;
}

// log and exp are increasing, so rounding the input and every operation
// in one direction yields a one-sided bound on the true value.
inline bool contains_log(const Rat& x, const Bounds& b) {
  Real down, up;
  mpfr_set_q(down.get(), x.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_log(down.get(), down.get(), MPFR_RNDD);
  mpfr_set_q(up.get(), x.raw().get_mpq_t(), MPFR_RNDU);
  mpfr_log(up.get(), up.get(), MPFR_RNDU);
  return brackets(down.get(), up.get(), b);
}

inline bool contains_exp(const Rat& x, const Bounds& b) {
  Real down, up;
  mpfr_set_q(down.get(), x.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_exp(down.get(), down.get(), MPFR_RNDD);
  mpfr_set_q(up.get(), x.raw().get_mpq_t(), MPFR_RNDU);
  mpfr_exp(up.get(), up.get(), MPFR_RNDU);
  return brackets(down.get(), up.get(), b);
}

// H(a, p) = a log(a/p) + (1-a) log((1-a)/(1-p)). The ratios and the
// weights a, 1-a are exact rationals; each log is bounded monotonically
// as above and mpfr_mul_q scales by the exact positive weight with a
// single directed rounding, so direction is preserved term by term.
inline void entropy_dir(const Rat& a, const Rat& p, mpfr_rnd_t dir, mpfr_ptr out) {
  Rat r1 = a / p;
  Rat r2 = (Rat(1) - a) / (Rat(1) - p);
  Real t1, t2;
  mpfr_set_q(t1.get(), r1.raw().get_mpq_t(), dir);
  mpfr_log(t1.get(), t1.get(), dir);
  mpfr_mul_q(t1.get(), t1.get(), a.raw().get_mpq_t(), dir);
  mpfr_set_q(t2.get(), r2.raw().get_mpq_t(), dir);
  mpfr_log(t2.get(), t2.get(), dir);
  mpfr_mul_q(t2.get(), t2.get(), (Rat(1) - a).raw().get_mpq_t(), dir);
  mpfr_add(out, t1.get(), t2.get(), dir);
}

inline bool contains_entropy(const Rat& a, const Rat& p, const Bounds& b) {
  Real down, up;
  entropy_dir(a, p, MPFR_RNDD, down.get());
  entropy_dir(a, p, MPFR_RNDU, up.get());
  return brackets(down.get(), up.get(), b);
}

// Deterministic small rationals for property sweeps. Denominators stay
// modest so exact arithmetic in the sweeps stays cheap.
inline Rat random_rat(std::mt19937& rng, long num_range = 200, long den_max = 40) {
  std::uniform_int_distribution<long> num(-num_range, num_range);
  std::uniform_int_distribution<long> den(1, den_max);
  return Rat(Int(num(rng)), Int(den(rng)));
}

}  // namespace oracle
