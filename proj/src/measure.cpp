#include "triadic/measure.hpp"

#include <algorithm>

namespace triadic {

void validate_params(const MeasureParams& mp) {
  if (mp.delta.sign() <= 0 || mp.delta > Rat(1, 3)) {
    throw std::domain_error("params: delta must lie in (0, 1/3]");
  }
  if (mp.dim < 1) throw std::domain_error("params: dim must be >= 1");
}

Rat interval_lo(const TriadicInterval& I) {
  return Rat(I.index, pow3(I.level));
}

Rat interval_hi(const TriadicInterval& I) {
  return Rat(I.index + 1, pow3(I.level));
}

std::vector<int> ternary_digits(const Int& i, unsigned long n) {
  if (sgn(i) < 0 || i >= pow3(n)) {
    throw std::domain_error("ternary_digits: index out of [0, 3^n)");
  }
  std::vector<int> digits(n, 0);
  Int t = i;
  for (unsigned long pos = n; pos > 0; --pos) {
    digits[pos - 1] = static_cast<int>(mpz_fdiv_q_ui(t.get_mpz_t(), t.get_mpz_t(), 3));
  }
  return digits;
}

unsigned long digit_one_count(const Int& i, unsigned long n) {
  Int t;
  mpz_fdiv_r(t.get_mpz_t(), i.get_mpz_t(), pow3(n).get_mpz_t());
  unsigned long k = 0;
  for (unsigned long j = 0; j < n; ++j) {
    if (mpz_fdiv_q_ui(t.get_mpz_t(), t.get_mpz_t(), 3) == 1) ++k;
  }
  return k;
}

Rat mu(const MeasureParams& mp, const TriadicInterval& I) {
  unsigned long k = digit_one_count(I.index, I.level);
  Rat one_minus = Rat(1) - mp.delta * Rat(2);
  return mp.delta.pow(static_cast<long>(I.level - k)) *
         one_minus.pow(static_cast<long>(k));
}

Rat mu_interval(const MeasureParams& mp, const Rat& a, const Rat& b) {
  if (a > b) throw std::domain_error("mu_interval: a > b");
  auto la = a.triadic_level();
  auto lb = b.triadic_level();
  if (!la || !lb) {
    throw std::domain_error("mu_interval: endpoint is not a triadic rational");
  }
  Rat total(0);
  Rat cur = a;
  while (cur < b) {
    unsigned long n = cur.triadic_level().value();
    // Coarsest interval starting at cur that still fits inside [cur, b).
    while (Rat(Int(1), pow3(n)) > b - cur) ++n;
    TriadicInterval I{n, (cur * Rat(pow3(n))).floor()};
    total += mu(mp, I);
    cur += Rat(Int(1), pow3(n));
  }
  return total;
}

Rat nu(const MeasureParams& mp, const TriadicBox& B) {
  if (B.axes.size() != mp.dim) {
    throw std::domain_error("nu: box axis count does not match dim");
  }
  Rat p(1);
  for (const auto& I : B.axes) p *= mu(mp, I);
  return p;
}

Rat density_oracle(const MeasureParams& mp, unsigned long n, const Rat& x) {
  Rat factor_mid = Rat(1) + (Rat(1) - mp.delta * Rat(3)) * Rat(2);
  Rat factor_out = Rat(1) - (Rat(1) - mp.delta * Rat(3));
  Rat p(1);
  Rat t = x;
  for (unsigned long j = 0; j < n; ++j) {
    Rat frac = t - Rat(t.floor());
    bool mid = (frac >= Rat(1, 3) && frac < Rat(2, 3));
    p *= mid ? factor_mid : factor_out;
    t *= Rat(3);
  }
  return p;
}

Rat adjacent_ratio_max(const MeasureParams& mp, unsigned long n,
                       const Int& i_begin, const Int& i_end) {
  if (n < 1) throw std::domain_error("adjacent_ratio_max: level must be >= 1");
  if (i_begin >= i_end) {
    throw std::domain_error("adjacent_ratio_max: empty span");
  }
  Rat best(0);
  Rat prev = mu(mp, TriadicInterval{n, i_begin});
  for (Int i = i_begin + 1; i < i_end; ++i) {
    Rat next = mu(mp, TriadicInterval{n, i});
    Rat r = std::max(prev / next, next / prev);
    best = std::max(best, r);
    prev = next;
  }
  return best;
}

Rat atom_ratio_bound(const MeasureParams& mp) {
  return (Rat(1) - mp.delta * Rat(2)) / mp.delta;
}

Rat ball_ratio_estimate(const MeasureParams& mp, const Rat& center,
                        const Rat& radius) {
  if (radius.sign() <= 0) {
    throw std::domain_error("ball_ratio_estimate: radius must be positive");
  }
  Rat two_r = radius * Rat(2);
  Rat big = mu_interval(mp, center - two_r, center + two_r);
  Rat small = mu_interval(mp, center - radius, center + radius);
  return big / small;
}

}  // namespace triadic
