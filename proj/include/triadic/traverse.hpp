#pragma once

#include <vector>

#include "triadic/geometry.hpp"

namespace triadic {

using Point = std::vector<Rat>;

// Axis-aligned walk: consecutive points differ in exactly one coordinate.
struct Polyline {
  std::vector<Point> points;

  // Sum of step lengths, exact.
  Rat length() const;
  bool closed() const {
    return points.size() < 2 || points.front() == points.back();
  }
};

// Splits every segment at each point where another segment meets it, so the
// pieces intersect only at shared endpoints. Union and length are unchanged,
// and applying it twice equals applying it once.
SegmentSet planarize(const SegmentSet& s);

// Closed walk whose trace is exactly the union of a connected set. If any
// vertex of the planarized segment graph has odd degree, every edge is
// doubled first, so length(walk) <= 2 * union_length(s); an already-Eulerian
// graph is walked at factor 1. Starts at the lexicographically smallest
// vertex and always continues toward the smallest unused neighbor.
Polyline euler_tour(const SegmentSet& s);

// The walk's steps as a canonical SegmentSet, for coverage comparisons.
SegmentSet walk_segments(const Polyline& walk, unsigned dim);

}  // namespace triadic
