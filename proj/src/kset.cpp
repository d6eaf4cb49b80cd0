#include "triadic/kset.hpp"

#include <algorithm>

#include "triadic/measure.hpp"

namespace triadic {

void validate_spec(const KSetSpec& spec) {
  if (spec.n < 1) throw std::domain_error("kset: n must be >= 1");
  if (spec.delta.sign() <= 0 || spec.delta > Rat(1, 3)) {
    throw std::domain_error("kset: delta must lie in (0, 1/3]");
  }
}

bool strict_regime(const KSetSpec& spec) {
  Rat k(static_cast<long>(spec.k));
  Rat n(static_cast<long>(spec.n));
  return Rat(2) * spec.delta * n <= k && Rat(3) * k <= Rat(2) * n;
}

bool member(const Int& i, const KSetSpec& spec) {
  if (sgn(i) < 0 || i >= pow3(spec.n)) {
    throw std::domain_error("member: index out of [0, 3^n)");
  }
  return spec.n - digit_one_count(i, spec.n) <= spec.k;
}

namespace {

inline unsigned long digit_cost(int d) { return d == 1 ? 0 : 1; }

}  // namespace

KMemberStream::KMemberStream(const KSetSpec& spec) : n_(spec.n), k_(spec.k) {
  validate_spec(spec);
  unsigned long k0 = std::min(k_, n_);
  digits_.assign(n_, 1);
  for (unsigned long j = 0; j < k0; ++j) digits_[j] = 0;
  used_ = k0;
  load_value();
}

void KMemberStream::load_value() {
  Int v(0);
  for (unsigned long j = 0; j < n_; ++j) {
    v = v * 3 + digits_[j];
  }
  value_ = v;
}

void KMemberStream::next() {
  if (done_) return;
  // Successor in numeric order: bump the rightmost digit that can grow
  // within budget, then fill the suffix with cost-free 1s.
  unsigned long used_prefix = used_;
  for (unsigned long p = n_; p > 0; --p) {
    used_prefix -= digit_cost(digits_[p - 1]);
    for (int v = digits_[p - 1] + 1; v <= 2; ++v) {
      if (used_prefix + digit_cost(v) <= k_) {
        digits_[p - 1] = v;
        // Smallest completion: spend leftover budget on leading 0s, then 1s.
        unsigned long rem = k_ - used_prefix - digit_cost(v);
        unsigned long zeros = std::min(rem, n_ - p);
        for (unsigned long q = p; q < n_; ++q) {
          digits_[q] = (q - p < zeros) ? 0 : 1;
        }
        used_ = used_prefix + digit_cost(v) + zeros;
        load_value();
        return;
      }
    }
  }
  done_ = true;
}

std::vector<Int> members(const KSetSpec& spec, unsigned long cap) {
  if (count_k(spec) > Int(cap)) {
    throw resource_error("members: cardinality exceeds enumeration cap");
  }
  std::vector<Int> out;
  for (KMemberStream s(spec); !s.done(); s.next()) out.push_back(s.value());
  return out;
}

Int count_k(const KSetSpec& spec) {
  validate_spec(spec);
  unsigned long k0 = std::min(spec.k, spec.n);
  Int term(1), total(1);  // m = 0
  for (unsigned long m = 0; m < k0; ++m) {
    term *= Int(spec.n - m) * 2;
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), m + 1);
    total += term;
  }
  return total;
}

Rat mu_k(const KSetSpec& spec) {
  validate_spec(spec);
  unsigned long k0 = std::min(spec.k, spec.n);
  const Int& a = spec.delta.num();
  const Int& b = spec.delta.den();
  Int c = b - 2 * a;  // positive since delta <= 1/3 means b >= 3a
  Int term = pow_int(c, spec.n);  // m = 0 numerator over b^n
  Int total = term;
  for (unsigned long m = 0; m < k0; ++m) {
    term *= Int(spec.n - m) * 2 * a;
    Int divisor = Int(m + 1) * c;
    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), divisor.get_mpz_t());
    total += term;
  }
  return Rat(total, pow_int(b, spec.n));
}

Int first_member(const KSetSpec& spec) {
  validate_spec(spec);
  unsigned long k0 = std::min(spec.k, spec.n);
  return (pow3(spec.n - k0) - 1) / 2;
}

Int last_member(const KSetSpec& spec) {
  validate_spec(spec);
  unsigned long k0 = std::min(spec.k, spec.n);
  return pow3(spec.n) - pow3(spec.n - k0) + (pow3(spec.n - k0) - 1) / 2;
}

Int component_count(const KSetSpec& spec) {
  validate_spec(spec);
  if (spec.k >= spec.n) return Int(1);
  // Runs start at members whose lowest nonzero digit is 1 with non-1 count
  // exactly k: suffix 1 0^t, prefix of length n-1-t with k-t non-1 digits.
  Int total(0);
  for (unsigned long t = 0; t <= spec.k; ++t) {
    total += binomial(spec.n - 1 - t, spec.k - t) *
             pow_int(2, spec.k - t);
  }
  return total;
}

Int gap_count(const KSetSpec& spec) {
  return component_count(spec) - 1;
}

Rat gap_total_length(const KSetSpec& spec) {
  if (spec.k >= spec.n) return Rat(0);
  Int covered_span = last_member(spec) - first_member(spec) + 1;
  return Rat(covered_span - count_k(spec), pow3(spec.n));
}

std::vector<IndexRun> components(const KSetSpec& spec, unsigned long cap) {
  if (count_k(spec) > Int(cap)) {
    throw resource_error("components: cardinality exceeds enumeration cap");
  }
  std::vector<IndexRun> runs;
  for (KMemberStream s(spec); !s.done(); s.next()) {
    if (!runs.empty() && runs.back().last + 1 == s.value()) {
      runs.back().last = s.value();
    } else {
      runs.push_back(IndexRun{s.value(), s.value()});
    }
  }
  return runs;
}

GapList gaps(const KSetSpec& spec, unsigned long cap) {
  validate_spec(spec);
  if (spec.k >= spec.n) return {};
  auto runs = components(spec, cap);
  GapList out;
  Rat scale(Int(1), pow3(spec.n));
  for (size_t i = 0; i + 1 < runs.size(); ++i) {
    out.push_back(HalfOpenInterval{Rat(Int(runs[i].last + 1)) * scale,
                                   Rat(runs[i + 1].first) * scale});
  }
  return out;
}

GapList complement_components(const KSetSpec& spec, unsigned long cap) {
  validate_spec(spec);
  if (spec.k >= spec.n) return {};
  auto runs = components(spec, cap);
  GapList out;
  Rat scale(Int(1), pow3(spec.n));
  if (sgn(runs.front().first) > 0) {
    out.push_back(HalfOpenInterval{Rat(0), Rat(runs.front().first) * scale});
  }
  for (size_t i = 0; i + 1 < runs.size(); ++i) {
    out.push_back(HalfOpenInterval{Rat(Int(runs[i].last + 1)) * scale,
                                   Rat(runs[i + 1].first) * scale});
  }
  if (runs.back().last + 1 < pow3(spec.n)) {
    out.push_back(HalfOpenInterval{Rat(Int(runs.back().last + 1)) * scale, Rat(1)});
  }
  return out;
}

Bounds entropy_H(const Rat& a, const Rat& p, Precision prec) {
  if (p.sign() <= 0 || p > a || a >= Rat(1)) {
    throw std::domain_error("entropy_H: need 0 < p <= a < 1");
  }
  Bounds t1 = enclose_log(a / p, prec).scale(a);
  Bounds t2 = enclose_log((Rat(1) - a) / (Rat(1) - p), prec).scale(Rat(1) - a);
  return t1 + t2;
}

Rat binomial_tail(unsigned long n, const Rat& a, const Rat& p) {
  if (a.sign() < 0 || a > Rat(1)) {
    throw std::domain_error("binomial_tail: threshold outside [0, 1]");
  }
  if (p.sign() <= 0 || p > Rat(1)) {
    throw std::domain_error("binomial_tail: p outside (0, 1]");
  }
  if (p == Rat(1)) return Rat(1);  // the m = n term alone, probability 1
  Int m0i = (a * Rat(static_cast<long>(n))).ceil();
  unsigned long m0 = static_cast<unsigned long>(m0i.get_ui());
  if (m0 > n) return Rat(0);
  const Int& r = p.num();
  const Int& q = p.den();
  Int c = q - r;
  Int term = binomial(n, m0) * pow_int(r, m0) * pow_int(c, n - m0);
  Int total = term;
  for (unsigned long m = m0; m < n; ++m) {
    term *= Int(n - m) * r;
    Int divisor = Int(m + 1) * c;
    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), divisor.get_mpz_t());
    total += term;
  }
  return Rat(total, pow_int(q, n));
}

TailReport check_tail_bounds(const KSetSpec& spec, long start_level,
                             long max_level) {
  validate_spec(spec);
  if (!strict_regime(spec)) {
    throw std::domain_error(
        "check_tail_bounds: requires 2*delta*n <= k <= (2/3)*n");
  }
  TailReport rep;
  rep.spec = spec;
  Rat n(static_cast<long>(spec.n));
  Rat k(static_cast<long>(spec.k));
  Rat excess = k / n - Rat(2) * spec.delta;
  Rat mass_arg = -(Rat(2) * n * excess * excess);
  Rat mass_lhs = Rat(1) - mu_k(spec);
  rep.mass = decide_leq(
      [mass_lhs](Precision) { return Bounds(mass_lhs); },
      [mass_arg](Precision p) { return enclose_exp(mass_arg, p); },
      start_level, max_level);

  Rat inv_delta = spec.delta.inverse();
  auto growth_rhs = [inv_delta, k](Precision p) {
    Bounds log_term = enclose_log(inv_delta, p) + Bounds(Rat(1));
    return enclose_exp(log_term.scale(k), p);
  };
  Rat scale3(Int(1), pow3(spec.n));
  Rat length_lhs = Rat(count_k(spec)) * scale3;
  rep.length = decide_leq(
      [length_lhs](Precision) { return Bounds(length_lhs); },
      [growth_rhs, scale3](Precision p) { return growth_rhs(p).scale(scale3); },
      start_level, max_level);

  Rat gaps_lhs(gap_count(spec));
  rep.gaps = decide_leq(
      [gaps_lhs](Precision) { return Bounds(gaps_lhs); },
      [growth_rhs](Precision p) { return growth_rhs(p); },
      start_level, max_level);
  return rep;
}

}  // namespace triadic
