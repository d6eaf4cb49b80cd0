#pragma once

#include <vector>

#include "triadic/enclosure.hpp"
#include "triadic/errors.hpp"
#include "triadic/rational.hpp"

namespace triadic {

inline constexpr unsigned long kDefaultAtomCap = 1000000;

// K(n, k): union of the level-n atoms whose index has at most k non-1
// ternary digits. k >= n degenerates to all of [0, 1).
struct KSetSpec {
  unsigned long n = 1;
  unsigned long k = 0;
  Rat delta;
};

void validate_spec(const KSetSpec& spec);

// 2*delta*n <= k <= (2/3)*n, the regime where all three tail bounds apply.
bool strict_regime(const KSetSpec& spec);

struct HalfOpenInterval {
  Rat lo, hi;
  Rat length() const { return hi - lo; }
};

using GapList = std::vector<HalfOpenInterval>;

// Maximal run of consecutive member indices (one connected component of K).
struct IndexRun {
  Int first, last;
};

// True iff index i (0 <= i < 3^n) has at most k non-1 digits.
bool member(const Int& i, const KSetSpec& spec);

// Member indices in strictly increasing order, generated digit-wise
// (never a scan over all 3^n indices). Restartable by construction.
class KMemberStream {
 public:
  explicit KMemberStream(const KSetSpec& spec);
  bool done() const { return done_; }
  const Int& value() const { return value_; }
  void next();

 private:
  void load_value();
  unsigned long n_, k_;
  std::vector<int> digits_;
  unsigned long used_ = 0;  // non-1 digits currently placed
  Int value_;
  bool done_ = false;
};

// Explicit member list; resource error when count_k exceeds cap.
std::vector<Int> members(const KSetSpec& spec, unsigned long cap = kDefaultAtomCap);

// Exact cardinality: sum_{m<=k} C(n,m) 2^m.
Int count_k(const KSetSpec& spec);

// Exact mu(K(n,k)) = sum_{m<=k} C(n,m) (2 delta)^m (1-2 delta)^(n-m).
Rat mu_k(const KSetSpec& spec);

// Smallest / largest member index: 0^k0 1^(n-k0) and 2^k0 1^(n-k0) digitwise,
// k0 = min(k, n).
Int first_member(const KSetSpec& spec);
Int last_member(const KSetSpec& spec);

// Closed-form component count: a component starts at index 0 or at a member
// whose lowest nonzero digit is 1 and whose non-1 digit count is exactly k.
Int component_count(const KSetSpec& spec);
Int gap_count(const KSetSpec& spec);

// Exact total length of the interior gaps:
// (last - first + 1 - count) * 3^-n.
Rat gap_total_length(const KSetSpec& spec);

// Member index runs in increasing order; resource error above cap.
std::vector<IndexRun> components(const KSetSpec& spec,
                                 unsigned long cap = kDefaultAtomCap);

// The bounded components of R \ K(n,k) inside [0, 1): intervals strictly
// between consecutive components of K.
GapList gaps(const KSetSpec& spec, unsigned long cap = kDefaultAtomCap);

// All components of [0,1) \ K(n,k): the interior gaps plus the leading
// [0, first) and trailing [last+1, 1) pieces when nonempty.
GapList complement_components(const KSetSpec& spec,
                              unsigned long cap = kDefaultAtomCap);

// H(a, p) = a log(a/p) + (1-a) log((1-a)/(1-p)), certified.
// Requires 0 < p <= a < 1.
Bounds entropy_H(const Rat& a, const Rat& p, Precision prec);

// Exact tail sum_{m >= ceil(a n)} C(n,m) p^m (1-p)^(n-m).
// Requires 0 <= a <= 1 and 0 < p <= 1.
Rat binomial_tail(unsigned long n, const Rat& a, const Rat& p);

// The three certified tail bounds for a strict-regime spec:
//   mass:   1 - mu_k            <= exp{-2n (k/n - 2 delta)^2}
//   length: 3^-n count_k        <= 3^-n e^{k [1 + log(1/delta)]}
//   gaps:   gap_count           <= e^{k [1 + log(1/delta)]}
struct TailReport {
  KSetSpec spec;
  Decision mass;
  Decision length;
  Decision gaps;
};

TailReport check_tail_bounds(const KSetSpec& spec,
                             long start_level = kDefaultLevel,
                             long max_level = kMaxLevel);

}  // namespace triadic
