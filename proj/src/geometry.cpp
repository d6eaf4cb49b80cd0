#include "triadic/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace triadic {

namespace {

bool seg_less(const Segment& a, const Segment& b) {
  if (a.axis != b.axis) return a.axis < b.axis;
  if (a.fixed != b.fixed) return a.fixed < b.fixed;
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.hi < b.hi;
}

}  // namespace

SegmentSet::SegmentSet(unsigned dim, std::vector<Segment> segments)
    : dim_(dim) {
  if (dim < 2) throw std::domain_error("SegmentSet: dim must be >= 2");
  for (const auto& s : segments) {
    if (s.axis >= dim) throw std::domain_error("SegmentSet: axis out of range");
    if (s.fixed.size() != dim - 1) {
      throw std::domain_error("SegmentSet: wrong fixed-coordinate count");
    }
    if (!(s.lo < s.hi)) throw std::domain_error("SegmentSet: degenerate segment");
  }
  std::sort(segments.begin(), segments.end(), seg_less);
  for (auto& s : segments) {
    if (!segments_.empty()) {
      Segment& c = segments_.back();
      if (c.axis == s.axis && c.fixed == s.fixed && s.lo < c.hi) {
        if (s.hi > c.hi) c.hi = s.hi;  // positive overlap: extend in place
        continue;
      }
    }
    segments_.push_back(std::move(s));
  }
}

Rat SegmentSet::length() const {
  Rat total(0);
  for (const auto& s : segments_) total += s.hi - s.lo;
  return total;
}

SegmentSet SegmentSet::merge(const SegmentSet& other) const {
  if (dim_ != other.dim_) throw std::domain_error("merge: dimension mismatch");
  std::vector<Segment> all = segments_;
  all.insert(all.end(), other.segments_.begin(), other.segments_.end());
  return SegmentSet(dim_, std::move(all));
}

void for_each_incidence(
    const SegmentSet& set,
    const std::function<void(size_t, size_t, const std::vector<Rat>&)>& cb) {
  const auto& segs = set.segments();
  const unsigned d = set.dim();

  // Collinear contacts: canonical spans on one line are disjoint and sorted,
  // so only sort-consecutive segments can touch.
  for (size_t i = 0; i + 1 < segs.size(); ++i) {
    const Segment& a = segs[i];
    const Segment& b = segs[i + 1];
    if (a.axis == b.axis && a.fixed == b.fixed && b.lo == a.hi) {
      std::vector<Rat> pt(d);
      for (unsigned ax = 0; ax < d; ++ax) {
        pt[ax] = (ax == a.axis) ? a.hi : a.fixed_on(ax);
      }
      cb(i, i + 1, pt);
    }
  }

  // Perpendicular contacts: only segments that agree on every axis outside
  // {a, b} can meet, so bucket by those shared coordinates first.
  for (unsigned a = 0; a < d; ++a) {
    for (unsigned b = a + 1; b < d; ++b) {
      std::map<std::vector<Rat>,
               std::pair<std::vector<size_t>, std::vector<size_t>>>
          buckets;
      for (size_t i = 0; i < segs.size(); ++i) {
        if (segs[i].axis != a && segs[i].axis != b) continue;
        std::vector<Rat> key;
        key.reserve(d - 2);
        for (unsigned ax = 0; ax < d; ++ax) {
          if (ax == a || ax == b) continue;
          key.push_back(segs[i].fixed_on(ax));
        }
        auto& bucket = buckets[key];
        (segs[i].axis == a ? bucket.first : bucket.second).push_back(i);
      }
      for (auto& [key, bucket] : buckets) {
        if (bucket.first.empty() || bucket.second.empty()) continue;
        // b-axis segments grouped by their coordinate on axis a; within a
        // group the canonical order already sorts spans by lo.
        std::map<Rat, std::vector<size_t>> by_a_coord;
        for (size_t j : bucket.second) {
          by_a_coord[segs[j].fixed_on(a)].push_back(j);
        }
        for (size_t i : bucket.first) {
          const Segment& h = segs[i];
          const Rat& cb_coord = h.fixed_on(b);
          auto lo_it = by_a_coord.lower_bound(h.lo);
          auto hi_it = by_a_coord.upper_bound(h.hi);
          for (auto it = lo_it; it != hi_it; ++it) {
            const std::vector<size_t>& vec = it->second;
            // Last span with lo <= cb_coord; its predecessor can only
            // contain cb_coord as a shared touching endpoint.
            auto pos = std::upper_bound(
                vec.begin(), vec.end(), cb_coord,
                [&](const Rat& v, size_t idx) { return v < segs[idx].lo; });
            for (int back = 1; back <= 2; ++back) {
              if (std::distance(vec.begin(), pos) < back) break;
              size_t j = *(pos - back);
              if (segs[j].hi < cb_coord) break;
              std::vector<Rat> pt(d);
              for (unsigned ax = 0; ax < d; ++ax) {
                if (ax == a) {
                  pt[ax] = it->first;
                } else if (ax == b) {
                  pt[ax] = cb_coord;
                } else {
                  pt[ax] = h.fixed_on(ax);
                }
              }
              cb(std::min(i, j), std::max(i, j), pt);
            }
          }
        }
      }
    }
  }
}

void append_skeleton(std::vector<Segment>& out, const Box& box) {
  const unsigned d = static_cast<unsigned>(box.size());
  if (d < 2) throw std::domain_error("skeleton: dimension must be >= 2");
  for (const auto& side : box) {
    if (!(side.first < side.second)) {
      throw std::domain_error("skeleton: degenerate box side");
    }
  }
  for (unsigned j = 0; j < d; ++j) {
    for (unsigned long mask = 0; mask < (1ul << (d - 1)); ++mask) {
      Segment s;
      s.axis = j;
      s.lo = box[j].first;
      s.hi = box[j].second;
      s.fixed.reserve(d - 1);
      unsigned bit = 0;
      for (unsigned ax = 0; ax < d; ++ax) {
        if (ax == j) continue;
        s.fixed.push_back(((mask >> bit) & 1) ? box[ax].second
                                              : box[ax].first);
        ++bit;
      }
      out.push_back(std::move(s));
    }
  }
}

SegmentSet skeleton(const Box& box) {
  std::vector<Segment> segs;
  append_skeleton(segs, box);
  return SegmentSet(static_cast<unsigned>(box.size()), std::move(segs));
}

namespace {

// Appends skeletons of all d-fold products of the given sides.
void append_product_skeletons(
    std::vector<Segment>& out, unsigned d, size_t count,
    const std::function<std::pair<Rat, Rat>(size_t)>& side) {
  if (count == 0) return;
  std::vector<size_t> idx(d, 0);
  while (true) {
    Box box(d);
    for (unsigned ax = 0; ax < d; ++ax) box[ax] = side(idx[ax]);
    append_skeleton(out, box);
    unsigned ax = 0;
    while (ax < d && ++idx[ax] == count) {
      idx[ax] = 0;
      ++ax;
    }
    if (ax == d) break;
  }
}

}  // namespace

SegmentSet gamma_nk(const MeasureParams& params, unsigned long n,
                    unsigned long k, unsigned long cap) {
  validate_params(params);
  if (params.dim < 2) throw std::domain_error("gamma_nk: dim must be >= 2");
  KSetSpec spec{n, k, params.delta};
  const unsigned d = params.dim;
  Int cubes = pow_int(count_k(spec), d);
  Int gap_boxes = pow_int(gap_count(spec), d);
  if (cubes + gap_boxes > Int(cap)) {
    throw resource_error("gamma_nk: " + cubes.get_str() + " cubes + " +
                         gap_boxes.get_str() + " gap boxes exceed cap " +
                         std::to_string(cap));
  }
  auto atoms = members(spec, cap);
  auto gap_list = gaps(spec, cap);
  Rat w(Int(1), pow3(n));
  std::vector<Segment> segs;
  append_product_skeletons(segs, d, atoms.size(), [&](size_t i) {
    Rat lo = Rat(atoms[i]) * w;
    return std::make_pair(lo, lo + w);
  });
  append_product_skeletons(segs, d, gap_list.size(), [&](size_t i) {
    return std::make_pair(gap_list[i].lo, gap_list[i].hi);
  });
  return SegmentSet(d, std::move(segs));
}

bool is_connected(const SegmentSet& s) {
  if (s.size() <= 1) return true;
  std::vector<size_t> parent(s.size());
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&](size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  size_t comps = s.size();
  for_each_incidence(s, [&](size_t i, size_t j, const std::vector<Rat>&) {
    size_t ri = find(i), rj = find(j);
    if (ri != rj) {
      parent[ri] = rj;
      --comps;
    }
  });
  return comps == 1;
}

Rat union_length(const SegmentSet& s) { return s.length(); }

Rat gamma_length_proof_sum(const MeasureParams& params, unsigned long n,
                           unsigned long k) {
  validate_params(params);
  KSetSpec spec{n, k, params.delta};
  const unsigned d = params.dim;
  Rat lead = Rat(Int(Int(d) * pow_int(2, d - 1)));
  Rat cube_part = Rat(pow_int(count_k(spec), d), pow3(n));
  Rat gap_part = Rat(pow_int(gap_count(spec), d - 1)) * gap_total_length(spec);
  return lead * (cube_part + gap_part);
}

Bounds gamma_length_bound(unsigned dim, unsigned long k, const Rat& delta,
                          Precision prec) {
  if (dim < 2) throw std::domain_error("gamma_length_bound: dim must be >= 2");
  if (delta.sign() <= 0 || delta > Rat(1, 3)) {
    throw std::domain_error("gamma_length_bound: delta must lie in (0, 1/3]");
  }
  Rat lead = Rat(Int(Int(dim) * pow_int(2, dim)));
  Bounds arg =
      (enclose_log(delta.inverse(), prec) + Bounds(Rat(1)))
          .scale(Rat(Int(Int(dim) * Int(k))));
  return enclose_exp(arg, prec).scale(lead);
}

}  // namespace triadic
