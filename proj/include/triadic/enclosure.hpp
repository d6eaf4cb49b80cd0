#pragma once

#include <functional>
#include <string>

#include "triadic/rational.hpp"

namespace triadic {

// Width target for enclosures: width <= 2^(-level) on bounded inputs
// (absolute for log on [3^-level, 3^level], relative for exp).
struct Precision {
  long level = 64;
};

inline constexpr long kDefaultLevel = 64;
inline constexpr long kMaxLevel = 256;

enum class Cert { Yes, No, Undecided };

std::string cert_str(Cert c);  // "True" / "False" / "Undecided"

// Certified enclosure [lo, hi] of a real number. lo <= hi always; the
// represented value lies inside. Interval arithmetic here never rounds unless
// asked to (round_out_*), so results stay valid enclosures.
class Bounds {
 public:
  Bounds() : lo_(0), hi_(0) {}
  explicit Bounds(const Rat& point) : lo_(point), hi_(point) {}
  Bounds(const Rat& lo, const Rat& hi);

  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  Rat width() const { return hi_ - lo_; }
  bool contains(const Rat& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Bounds& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool is_point() const { return lo_ == hi_; }

  Bounds operator-() const { return Bounds(-hi_, -lo_); }
  friend Bounds operator+(const Bounds& a, const Bounds& b);
  friend Bounds operator-(const Bounds& a, const Bounds& b);
  friend Bounds operator*(const Bounds& a, const Bounds& b);
  friend Bounds operator/(const Bounds& a, const Bounds& b);  // 0 not in b

  Bounds scale(const Rat& c) const;   // exact scalar multiple
  Bounds shift(const Rat& c) const { return Bounds(lo_ + c, hi_ + c); }
  Bounds recip() const;               // requires 0 strictly outside
  Bounds pow_u(unsigned long e) const;

  // Outward rounding onto dyadic grids, to keep numerators from growing
  // across long interval computations. Both return supersets.
  Bounds round_out_abs(long frac_bits) const;
  Bounds round_out_sig(long sig_bits) const;

  Bounds intersect(const Bounds& o) const;  // intervals must overlap

 private:
  Rat lo_, hi_;
};

// Natural log, certified: result contains ln(x), width <= 2^(-p.level)
// for x in [3^(-p.level), 3^(p.level)]. x <= 0 is a domain error.
Bounds enclose_log(const Rat& x, Precision p);

// e^x, certified: result contains e^x with positive lower endpoint;
// relative width <= 2^(-p.level).
Bounds enclose_exp(const Rat& x, Precision p);

// Monotone extensions to interval arguments.
Bounds enclose_log(const Bounds& x, Precision p);
Bounds enclose_exp(const Bounds& x, Precision p);

// Yes iff a.hi <= b.lo, No iff a.lo > b.hi, Undecided otherwise.
Cert certify_leq(const Bounds& a, const Bounds& b);

// Retries certify_leq with doubled precision until decided or max_level is
// passed. Callables must return valid enclosures at every level.
struct Decision {
  Cert cert = Cert::Undecided;
  long level = 0;  // level at which the verdict was reached (or the cap)
  Bounds lhs, rhs;
};

Decision decide_leq(const std::function<Bounds(Precision)>& lhs,
                    const std::function<Bounds(Precision)>& rhs,
                    long start_level = kDefaultLevel,
                    long max_level = kMaxLevel);

}  // namespace triadic
