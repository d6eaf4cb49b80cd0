#include "triadic/enclosure.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace triadic {

std::string cert_str(Cert c) {
  switch (c) {
    case Cert::Yes: return "True";
    case Cert::No: return "False";
    default: return "Undecided";
  }
}

Bounds::Bounds(const Rat& lo, const Rat& hi) : lo_(lo), hi_(hi) {
  if (lo_ > hi_) throw std::domain_error("Bounds: lo > hi");
}

Bounds operator+(const Bounds& a, const Bounds& b) {
  return Bounds(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

Bounds operator-(const Bounds& a, const Bounds& b) {
  return Bounds(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

Bounds operator*(const Bounds& a, const Bounds& b) {
  Rat p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_;
  Rat p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
  Rat lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Rat hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return Bounds(lo, hi);
}

Bounds operator/(const Bounds& a, const Bounds& b) { return a * b.recip(); }

Bounds Bounds::scale(const Rat& c) const {
  if (c.sign() >= 0) return Bounds(lo_ * c, hi_ * c);
  return Bounds(hi_ * c, lo_ * c);
}

Bounds Bounds::recip() const {
  if (lo_.sign() <= 0 && hi_.sign() >= 0) {
    throw std::domain_error("Bounds: reciprocal of interval containing 0");
  }
  return Bounds(hi_.inverse(), lo_.inverse());
}

Bounds Bounds::pow_u(unsigned long e) const {
  // Valid enclosure for any sign pattern; tight for intervals that do not
  // straddle 0 (the only case used downstream).
  Bounds r(Rat(1));
  Bounds base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

Bounds Bounds::round_out_abs(long frac_bits) const {
  return Bounds(dyadic_floor(lo_, frac_bits), dyadic_ceil(hi_, frac_bits));
}

Bounds Bounds::round_out_sig(long sig_bits) const {
  return Bounds(sig_floor(lo_, sig_bits), sig_ceil(hi_, sig_bits));
}

Bounds Bounds::intersect(const Bounds& o) const {
  Rat lo = std::max(lo_, o.lo_);
  Rat hi = std::min(hi_, o.hi_);
  if (lo > hi) throw std::domain_error("Bounds: empty intersection");
  return Bounds(lo, hi);
}

namespace {

// Enclosure of log((1+t)/(1-t)) = 2 sum_{j>=0} t^(2j+1)/(2j+1) for exact
// 0 <= t <= 1/2, directed dyadic rounding at frac_bits. Addition of
// same-grid dyadics is exact, so only products and divisions round.
// Truncation remainder after J terms: 2 t^(2J+1) / ((2J+1)(1 - t^2)).
Bounds log_atanh(const Rat& t, long fb) {
  if (t.is_zero()) return Bounds(Rat(0));
  Rat t_lo = dyadic_floor(t, fb);
  Rat t_hi = dyadic_ceil(t, fb);
  Rat t2_lo = dyadic_floor(t_lo * t_lo, fb);
  Rat t2_hi = dyadic_ceil(t_hi * t_hi, fb);
  Rat pow_lo = t_lo, pow_hi = t_hi;
  Rat sum_lo(0), sum_hi(0);
  Rat tail_cut = Rat(1, pow_int(2, static_cast<unsigned long>(fb - 6)));
  Rat one_minus_t2 = Rat(1) - t2_hi;
  unsigned long j = 0;
  while (true) {
    Rat odd(2 * static_cast<long>(j) + 1);
    sum_lo += dyadic_floor(pow_lo / odd, fb);
    sum_hi += dyadic_ceil(pow_hi / odd, fb);
    ++j;
    pow_lo = dyadic_floor(pow_lo * t2_lo, fb);
    pow_hi = dyadic_ceil(pow_hi * t2_hi, fb);
    Rat rem = (pow_hi * Rat(2)) / (Rat(2 * static_cast<long>(j) + 1) * one_minus_t2);
    if (rem <= tail_cut) {
      return Bounds(sum_lo * Rat(2), sum_hi * Rat(2) + rem);
    }
  }
}

Bounds log3_enclosure(long level) {
  static std::map<long, Bounds> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(level);
  if (it != cache.end()) return it->second;
  // t = 1/2 gives (1+t)/(1-t) = 3.
  Bounds b = log_atanh(Rat(1, 2), level + 12);
  cache.emplace(level, b);
  return b;
}

}  // namespace

Bounds enclose_log(const Rat& x, Precision p) {
  if (x.sign() <= 0) throw std::domain_error("enclose_log: argument <= 0");
  long level = std::max(p.level, 4L);
  // Reduce x = 3^m * y with y in [2/3, 2); the windows tile (0, inf).
  long e2 = floor_log2_abs(x);
  long m = (e2 >= 0) ? (e2 * 665) / 1054 : -((-e2 * 665 + 1053) / 1054);
  Rat pm = (m >= 0) ? Rat(pow3(static_cast<unsigned long>(m)))
                    : Rat(Int(1), pow3(static_cast<unsigned long>(-m)));
  while (x * Rat(3) < pm * Rat(2)) {
    --m;
    pm /= Rat(3);
  }
  while (x >= pm * Rat(2)) {
    ++m;
    pm *= Rat(3);
  }
  Rat y = x / pm;
  long fb = level + 12;
  Bounds core(Rat(0));
  if (y >= Rat(1)) {
    core = log_atanh((y - Rat(1)) / (y + Rat(1)), fb);
  } else {
    Bounds neg = log_atanh((Rat(1) - y) / (Rat(1) + y), fb);
    core = -neg;
  }
  if (m != 0) {
    unsigned long am = static_cast<unsigned long>(m < 0 ? -m : m);
    long mbits = static_cast<long>(mpz_sizeinbase(Int(am).get_mpz_t(), 2));
    Bounds l3 = log3_enclosure(level + mbits + 4);
    core = core + l3.scale(Rat(m));
  }
  return core.round_out_abs(level + 8);
}

namespace {

// e^x for exact x >= 0 via u = x / 2^s <= 1/2, power series with factorial
// tail bound 2 u^J / J!, then s interval squarings. Rounding uses
// significant bits because the squarings reach magnitudes near 2^(2^s).
Bounds exp_core(const Rat& x, long level) {
  if (x.is_zero()) return Bounds(Rat(1));
  long e2 = floor_log2_abs(x);
  long s = std::max(0L, e2 + 2);
  long B = level + s + 12;
  mpq_class uq;
  mpq_div_2exp(uq.get_mpq_t(), x.raw().get_mpq_t(), static_cast<mp_bitcnt_t>(s));
  Rat u(uq);
  Rat u_lo = dyadic_floor(u, B);
  Rat u_hi = dyadic_ceil(u, B);
  Rat sum_lo(1), sum_hi(1);
  Rat term_lo(1), term_hi(1);
  Rat tail_cut = Rat(1, pow_int(2, static_cast<unsigned long>(level + s + 8)));
  unsigned long j = 1;
  while (true) {
    term_lo = dyadic_floor(term_lo * u_lo / Rat(static_cast<long>(j)), B);
    term_hi = dyadic_ceil(term_hi * u_hi / Rat(static_cast<long>(j)), B);
    sum_lo += term_lo;
    sum_hi += term_hi;
    ++j;
    Rat next_hi = term_hi * u_hi / Rat(static_cast<long>(j));
    Rat rem = next_hi * Rat(2);
    if (rem <= tail_cut) {
      sum_hi += rem;
      break;
    }
  }
  Rat lo = sum_lo, hi = sum_hi;
  for (long i = 0; i < s; ++i) {
    lo = sig_floor(lo * lo, B);
    hi = sig_ceil(hi * hi, B);
  }
  return Bounds(lo, hi);
}

}  // namespace

Bounds enclose_exp(const Rat& x, Precision p) {
  long level = std::max(p.level, 4L);
  if (x.is_zero()) return Bounds(Rat(1));
  if (x.sign() > 0) return exp_core(x, level);
  Bounds pos = exp_core(-x, level + 2);
  long B = level + 12;
  return Bounds(sig_floor(pos.hi().inverse(), B), sig_ceil(pos.lo().inverse(), B));
}

Bounds enclose_log(const Bounds& x, Precision p) {
  return Bounds(enclose_log(x.lo(), p).lo(), enclose_log(x.hi(), p).hi());
}

Bounds enclose_exp(const Bounds& x, Precision p) {
  return Bounds(enclose_exp(x.lo(), p).lo(), enclose_exp(x.hi(), p).hi());
}

Cert certify_leq(const Bounds& a, const Bounds& b) {
  if (a.hi() <= b.lo()) return Cert::Yes;
  if (a.lo() > b.hi()) return Cert::No;
  return Cert::Undecided;
}

Decision decide_leq(const std::function<Bounds(Precision)>& lhs,
                    const std::function<Bounds(Precision)>& rhs,
                    long start_level, long max_level) {
  long L = std::max(4L, start_level);
  max_level = std::max(max_level, L);
  while (true) {
    Decision d;
    d.level = L;
    d.lhs = lhs(Precision{L});
    d.rhs = rhs(Precision{L});
    d.cert = certify_leq(d.lhs, d.rhs);
    if (d.cert != Cert::Undecided || L >= max_level) return d;
    L = std::min(L * 2, max_level);
  }
}

}  // namespace triadic
