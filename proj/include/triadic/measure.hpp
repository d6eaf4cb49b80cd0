#pragma once

#include <vector>

#include "triadic/rational.hpp"

namespace triadic {

// delta in (0, 1/3]; dim >= 1 (>= 2 required by the curve constructions).
struct MeasureParams {
  Rat delta;
  unsigned dim = 1;
};

void validate_params(const MeasureParams& mp);

// Half-open [i*3^-n, (i+1)*3^-n); index may be any integer (the measure is
// invariant under integer translation, so only index mod 3^n matters).
struct TriadicInterval {
  unsigned long level = 0;
  Int index;
};

struct TriadicBox {
  std::vector<TriadicInterval> axes;
};

Rat interval_lo(const TriadicInterval& I);
Rat interval_hi(const TriadicInterval& I);

// Most-significant-first base-3 digits of i, zero-padded to length n.
// Requires 0 <= i < 3^n.
std::vector<int> ternary_digits(const Int& i, unsigned long n);

// Number of 1-digits among the n base-3 digits of (i mod 3^n).
unsigned long digit_one_count(const Int& i, unsigned long n);

// mu(I) = delta^(n - k) * (1 - 2 delta)^k where k counts the digit 1.
Rat mu(const MeasureParams& mp, const TriadicInterval& I);

// Exact mu([a, b)) for triadic rationals a <= b, by greedy decomposition
// into maximal triadic intervals. Endpoints may lie outside [0, 1).
Rat mu_interval(const MeasureParams& mp, const Rat& a, const Rat& b);

// Product measure of a box; box axis count must equal mp.dim.
Rat nu(const MeasureParams& mp, const TriadicBox& B);

// Product density prod_{j=0}^{n-1} [1 + (1 - 3 delta) h(3^j x)] at x, with
// h = 2 on [1/3, 2/3) + Z and -1 elsewhere. Equals mu(I) * 3^n on the
// interior of every level-n atom I.
Rat density_oracle(const MeasureParams& mp, unsigned long n, const Rat& x);

// Max over adjacent level-n atom pairs (i, i+1), i in [i_begin, i_end - 1),
// of the two-sided mass ratio. Always <= (1 - 2 delta) / delta.
Rat adjacent_ratio_max(const MeasureParams& mp, unsigned long n,
                       const Int& i_begin, const Int& i_end);

// The certified doubling constant on triadic atoms.
Rat atom_ratio_bound(const MeasureParams& mp);

// mu([x - 2r, x + 2r)) / mu([x - r, x + r)) for triadic x, r > 0.
// A sampled estimate of the ball-doubling constant, not a certified bound.
Rat ball_ratio_estimate(const MeasureParams& mp, const Rat& center,
                        const Rat& radius);

}  // namespace triadic
