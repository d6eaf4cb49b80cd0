#include "triadic/rational.hpp"

#include <cctype>

namespace triadic {

Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Int pow3(unsigned long n) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 3, n);
  return r;
}

Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rat::Rat(const Int& num, const Int& den) {
  if (sgn(den) == 0) throw std::domain_error("Rat: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

namespace {

bool parse_signed_digits(const std::string& s, size_t begin, size_t end) {
  size_t i = begin;
  if (i < end && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == end) return false;
  for (; i < end; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rat> Rat::parse(const std::string& text) {
  size_t slash = text.find('/');
  if (slash == std::string::npos) {
    if (!parse_signed_digits(text, 0, text.size())) return std::nullopt;
    return Rat(Int(text));
  }
  if (!parse_signed_digits(text, 0, slash) ||
      !parse_signed_digits(text, slash + 1, text.size())) {
    return std::nullopt;
  }
  Int num(text.substr(0, slash));
  Int den(text.substr(slash + 1));
  if (sgn(den) == 0) return std::nullopt;
  return Rat(num, den);
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::inverse() const {
  if (is_zero()) throw std::domain_error("Rat: inverse of zero");
  return Rat(num(), den()).pow(-1);
}

Rat Rat::pow(long e) const {
  if (e == 0) return Rat(1);
  if (e < 0) {
    if (is_zero()) throw std::domain_error("Rat: zero to negative power");
    Rat base(den(), num());
    return base.pow(-e);
  }
  // num/den already coprime, so the powers are coprime too.
  Int n = pow_int(num(), static_cast<unsigned long>(e));
  Int d = pow_int(den(), static_cast<unsigned long>(e));
  mpq_class r(n, d);
  return Rat(r);
}

Int Rat::floor() const {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return q;
}

Int Rat::ceil() const {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return q;
}

std::optional<unsigned long> Rat::triadic_level() const {
  Int rest;
  mp_bitcnt_t m = mpz_remove(rest.get_mpz_t(), den().get_mpz_t(), Int(3).get_mpz_t());
  if (rest != 1) return std::nullopt;
  return static_cast<unsigned long>(m);
}

std::string Rat::str() const { return v_.get_str(); }

std::string Rat::decimal(size_t places) const {
  Int scale = pow_int(10, places);
  Int n = ::abs(num()) * scale;
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), den().get_mpz_t());
  if (2 * r >= den()) q += 1;
  std::string pre = (sign() < 0 && q != 0) ? "-" : "";
  if (places == 0) return pre + q.get_str();
  Int ip = q / scale;
  Int fp = q % scale;
  std::string frac = fp.get_str();
  frac.insert(0, places - frac.size(), '0');
  return pre + ip.get_str() + "." + frac;
}

std::string Rat::scientific(size_t sig_digits) const {
  if (sig_digits == 0) sig_digits = 1;
  if (is_zero()) {
    std::string m = "0";
    if (sig_digits > 1) m += "." + std::string(sig_digits - 1, '0');
    return m + "e+00";
  }
  Int n = ::abs(num());
  const Int& d = den();
  // Decimal exponent E with 10^E <= |x| < 10^(E+1), by exact comparison.
  long E = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 10));
  auto cmp_pow10 = [&](long e) {
    // sign of |x| - 10^e
    if (e >= 0) return cmp(n, d * pow_int(10, static_cast<unsigned long>(e)));
    return cmp(n * pow_int(10, static_cast<unsigned long>(-e)), d);
  };
  while (cmp_pow10(E) < 0) --E;
  while (cmp_pow10(E + 1) >= 0) ++E;
  // Mantissa with sig_digits digits, round half away from zero.
  long shift = static_cast<long>(sig_digits) - 1 - E;
  Int mn = n, md = d;
  if (shift >= 0) {
    mn *= pow_int(10, static_cast<unsigned long>(shift));
  } else {
    md *= pow_int(10, static_cast<unsigned long>(-shift));
  }
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), mn.get_mpz_t(), md.get_mpz_t());
  if (2 * r >= md) q += 1;
  Int cap = pow_int(10, sig_digits);
  if (q >= cap) {
    q /= 10;
    ++E;
  }
  std::string digits = q.get_str();
  std::string m = digits.substr(0, 1);
  if (sig_digits > 1) m += "." + digits.substr(1);
  std::string es = (E < 0) ? "-" : "+";
  std::string ev = Int(E < 0 ? -E : E).get_str();
  if (ev.size() < 2) ev.insert(0, 2 - ev.size(), '0');
  return (sign() < 0 ? "-" : "") + m + "e" + es + ev;
}

Rat dyadic_floor(const Rat& x, long frac_bits) {
  mpq_class scaled;
  if (frac_bits >= 0) {
    mpq_mul_2exp(scaled.get_mpq_t(), x.raw().get_mpq_t(),
                 static_cast<mp_bitcnt_t>(frac_bits));
  } else {
    mpq_div_2exp(scaled.get_mpq_t(), x.raw().get_mpq_t(),
                 static_cast<mp_bitcnt_t>(-frac_bits));
  }
  Int f = Rat(scaled).floor();
  mpq_class back(f);
  if (frac_bits >= 0) {
    mpq_div_2exp(back.get_mpq_t(), mpq_class(f).get_mpq_t(),
                 static_cast<mp_bitcnt_t>(frac_bits));
  } else {
    mpq_mul_2exp(back.get_mpq_t(), mpq_class(f).get_mpq_t(),
                 static_cast<mp_bitcnt_t>(-frac_bits));
  }
  return Rat(back);
}

Rat dyadic_ceil(const Rat& x, long frac_bits) {
  return -dyadic_floor(-x, frac_bits);
}

long floor_log2_abs(const Rat& x) {
  if (x.is_zero()) throw std::domain_error("floor_log2_abs: zero");
  Int n = ::abs(x.num());
  const Int& d = x.den();
  long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
  // e is floor(log2(n/d)) or one above; settle by exact comparison.
  auto geq_pow2 = [&](long k) {
    if (k >= 0) {
      Int rhs = d << static_cast<mp_bitcnt_t>(k);
      return n >= rhs;
    }
    Int lhs = n << static_cast<mp_bitcnt_t>(-k);
    return lhs >= d;
  };
  if (!geq_pow2(e)) --e;
  while (geq_pow2(e + 1)) ++e;
  return e;
}

Rat sig_floor(const Rat& x, long sig_bits) {
  if (x.is_zero()) return Rat(0);
  if (sig_bits < 1) sig_bits = 1;
  long e = floor_log2_abs(x);
  return dyadic_floor(x, sig_bits - 1 - e);
}

Rat sig_ceil(const Rat& x, long sig_bits) { return -sig_floor(-x, sig_bits); }

}  // namespace triadic
