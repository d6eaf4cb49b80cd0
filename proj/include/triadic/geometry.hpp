#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "triadic/enclosure.hpp"
#include "triadic/errors.hpp"
#include "triadic/kset.hpp"
#include "triadic/measure.hpp"

namespace triadic {

inline constexpr unsigned long kDefaultSegmentCap = 1000000;

// Axis-aligned closed segment in R^d: runs along `axis` over [lo, hi],
// pinned at `fixed` on the other axes (in increasing axis order).
struct Segment {
  unsigned axis = 0;
  std::vector<Rat> fixed;
  Rat lo, hi;

  // Coordinate of this segment's line on `other` (other != axis).
  const Rat& fixed_on(unsigned other) const {
    return fixed[other < axis ? other : other - 1];
  }

  friend bool operator==(const Segment& a, const Segment& b) {
    return a.axis == b.axis && a.fixed == b.fixed && a.lo == b.lo &&
           a.hi == b.hi;
  }
};

// Closed box: one [lo, hi] interval per axis, each non-degenerate.
using Box = std::vector<std::pair<Rat, Rat>>;

// Finite union of axis-aligned segments in canonical form: sorted by
// (axis, fixed, lo); collinear segments with positive-length overlap are
// merged, so H^1 of the union is exactly the sum of span lengths.
// Segments that merely touch stay separate.
class SegmentSet {
 public:
  SegmentSet(unsigned dim, std::vector<Segment> segments);

  unsigned dim() const { return dim_; }
  size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }
  const std::vector<Segment>& segments() const { return segments_; }

  // Sum of span lengths = H^1 of the union, exact.
  Rat length() const;

  // Union of two canonical sets (re-canonicalizes).
  SegmentSet merge(const SegmentSet& other) const;

  // Canonical forms coincide exactly when the unions are equal.
  friend bool operator==(const SegmentSet& a, const SegmentSet& b) {
    return a.dim_ == b.dim_ && a.segments_ == b.segments_;
  }

 private:
  unsigned dim_;
  std::vector<Segment> segments_;
};

// Every point where two segments of the set meet: collinear touching pairs
// and crossing/touching perpendicular pairs. Invokes cb(i, j, point) once
// per incident pair, i < j. Exact rational predicates throughout.
void for_each_incidence(
    const SegmentSet& s,
    const std::function<void(size_t, size_t, const std::vector<Rat>&)>& cb);

// The d 2^(d-1) edges of a closed box (d >= 2): along each axis j, one
// translate of [lo_j, hi_j] per corner of the remaining axes.
SegmentSet skeleton(const Box& box);

// Appends skeleton edges of `box` without canonicalizing (bulk assembly).
void append_skeleton(std::vector<Segment>& out, const Box& box);

// Gamma(n, k): skeletons of all d-fold products of K(n,k) atoms (closed
// cubes) plus skeletons of all d-fold products of interior gaps.
// Resource error if count_k^d + gap_count^d exceeds the cap.
SegmentSet gamma_nk(const MeasureParams& params, unsigned long n,
                    unsigned long k, unsigned long cap = kDefaultSegmentCap);

// True iff the union of closed segments is topologically connected.
bool is_connected(const SegmentSet& s);

// Exact H^1 of the union (merged overlaps counted once).
Rat union_length(const SegmentSet& s);

// The explicit length bound from the curve construction, all rational:
//   d 2^(d-1) 3^-n count_k^d  +  d 2^(d-1) gap_count^(d-1) gap_total.
Rat gamma_length_proof_sum(const MeasureParams& params, unsigned long n,
                           unsigned long k);

// Certified enclosure of the closed-form bound d 2^d e^{d k [1+log(1/delta)]}.
Bounds gamma_length_bound(unsigned dim, unsigned long k, const Rat& delta,
                          Precision prec);

}  // namespace triadic
