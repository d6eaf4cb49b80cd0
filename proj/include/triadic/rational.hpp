#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace triadic {

using Int = mpz_class;

Int pow_int(const Int& base, unsigned long exp);
Int pow3(unsigned long n);
Int binomial(unsigned long n, unsigned long k);

// Exact rational, always in lowest terms with a positive denominator.
// All arithmetic is exact; nothing here ever rounds.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(int n) : v_(n) {}
  Rat(long n) : v_(static_cast<signed long>(n)) {}
  Rat(const Int& n) : v_(n) {}
  Rat(const Int& num, const Int& den);
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Accepts "p/q", "p", optional leading minus. Returns nullopt on malformed
  // input or zero denominator.
  static std::optional<Rat> parse(const std::string& text);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  Rat abs() const { return Rat(mpq_class(::abs(v_))); }
  Rat inverse() const;          // 1/x, x != 0
  Rat pow(long e) const;        // integer exponent, negative allowed for x != 0

  Int floor() const;            // largest integer <= x
  Int ceil() const;             // smallest integer >= x

  // Smallest m >= 0 with x * 3^m an integer, or nullopt if the reduced
  // denominator has a prime factor other than 3.
  std::optional<unsigned long> triadic_level() const;
  bool is_triadic() const { return triadic_level().has_value(); }

  std::string str() const;                       // "p/q" or "p"
  std::string decimal(size_t places) const;      // fixed-point, round half away
  std::string scientific(size_t sig_digits) const;  // "m.mmme+EE", exact-integer math

 private:
  mpq_class v_;
};

inline Rat operator*(long a, const Rat& b) { return Rat(a) * b; }

// floor(x * 2^frac_bits) / 2^frac_bits; frac_bits may be negative (coarse grid).
Rat dyadic_floor(const Rat& x, long frac_bits);
Rat dyadic_ceil(const Rat& x, long frac_bits);

// Exponent e with 2^e <= |x| < 2^(e+1); x must be nonzero.
long floor_log2_abs(const Rat& x);

// Directed rounding onto the set of rationals with at most sig_bits
// significant bits (software floating point, exact). sig_floor(x) <= x,
// sig_ceil(x) >= x; both are monotone in x and refine as sig_bits grows.
Rat sig_floor(const Rat& x, long sig_bits);
Rat sig_ceil(const Rat& x, long sig_bits);

}  // namespace triadic
