#include "triadic/traverse.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace triadic {

Rat Polyline::length() const {
  Rat total(0);
  for (size_t i = 1; i < points.size(); ++i) {
    for (size_t ax = 0; ax < points[i].size(); ++ax) {
      total += (points[i][ax] - points[i - 1][ax]).abs();
    }
  }
  return total;
}

SegmentSet planarize(const SegmentSet& s) {
  const auto& segs = s.segments();
  std::vector<std::set<Rat>> cuts(segs.size());
  for_each_incidence(s, [&](size_t i, size_t j, const std::vector<Rat>& pt) {
    const Rat& ci = pt[segs[i].axis];
    if (segs[i].lo < ci && ci < segs[i].hi) cuts[i].insert(ci);
    const Rat& cj = pt[segs[j].axis];
    if (segs[j].lo < cj && cj < segs[j].hi) cuts[j].insert(cj);
  });
  std::vector<Segment> out;
  out.reserve(segs.size());
  for (size_t i = 0; i < segs.size(); ++i) {
    Rat prev = segs[i].lo;
    for (const Rat& c : cuts[i]) {
      out.push_back({segs[i].axis, segs[i].fixed, prev, c});
      prev = c;
    }
    out.push_back({segs[i].axis, segs[i].fixed, prev, segs[i].hi});
  }
  return SegmentSet(s.dim(), std::move(out));
}

namespace {

std::string point_str(const Point& p) {
  std::string out = "(";
  for (size_t ax = 0; ax < p.size(); ++ax) {
    if (ax) out += ", ";
    out += p[ax].str();
  }
  return out + ")";
}

struct Dsu {
  std::vector<size_t> parent;
  explicit Dsu(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = i;
  }
  size_t find(size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Polyline euler_tour(const SegmentSet& s) {
  SegmentSet flat = planarize(s);
  if (flat.empty()) return {};
  const unsigned d = flat.dim();

  // Vertices in lexicographic order; the map's order fixes ids.
  std::map<Point, size_t> vid;
  for (const auto& seg : flat.segments()) {
    Point a(d), b(d);
    for (unsigned ax = 0; ax < d; ++ax) {
      if (ax == seg.axis) {
        a[ax] = seg.lo;
        b[ax] = seg.hi;
      } else {
        a[ax] = b[ax] = seg.fixed_on(ax);
      }
    }
    vid.emplace(std::move(a), 0);
    vid.emplace(std::move(b), 0);
  }
  std::vector<const Point*> verts;
  verts.reserve(vid.size());
  for (auto& [pt, id] : vid) {
    id = verts.size();
    verts.push_back(&pt);
  }

  struct Edge {
    size_t u, v;
  };
  std::vector<Edge> edges;
  edges.reserve(flat.size());
  std::vector<size_t> degree(verts.size(), 0);
  for (const auto& seg : flat.segments()) {
    Point a(d), b(d);
    for (unsigned ax = 0; ax < d; ++ax) {
      if (ax == seg.axis) {
        a[ax] = seg.lo;
        b[ax] = seg.hi;
      } else {
        a[ax] = b[ax] = seg.fixed_on(ax);
      }
    }
    size_t u = vid.at(a), v = vid.at(b);
    edges.push_back({u, v});
    ++degree[u];
    ++degree[v];
  }

  Dsu dsu(verts.size());
  for (const auto& e : edges) dsu.unite(e.u, e.v);
  size_t root0 = dsu.find(0);
  for (size_t v = 1; v < verts.size(); ++v) {
    if (dsu.find(v) != root0) {
      throw std::domain_error(
          "euler_tour: input is disconnected; one component contains " +
          point_str(*verts[0]) + " and another contains " +
          point_str(*verts[v]));
    }
  }

  bool any_odd = false;
  for (size_t v = 0; v < verts.size(); ++v) {
    if (degree[v] % 2 != 0) any_odd = true;
  }
  if (any_odd) {
    size_t m = edges.size();
    for (size_t e = 0; e < m; ++e) edges.push_back(edges[e]);
  }

  // adj entries sorted by (neighbor point, edge id): deterministic tour.
  std::vector<std::vector<std::pair<size_t, size_t>>> adj(verts.size());
  for (size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].u].emplace_back(edges[e].v, e);
    adj[edges[e].v].emplace_back(edges[e].u, e);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end(),
              [&](const std::pair<size_t, size_t>& x,
                  const std::pair<size_t, size_t>& y) {
                if (x.first != y.first) return *verts[x.first] < *verts[y.first];
                return x.second < y.second;
              });
  }

  std::vector<size_t> cursor(verts.size(), 0);
  std::vector<char> used(edges.size(), 0);
  std::vector<size_t> stack{0}, circuit;  // vertex 0 is lexicographically least
  while (!stack.empty()) {
    size_t v = stack.back();
    size_t& cur = cursor[v];
    while (cur < adj[v].size() && used[adj[v][cur].second]) ++cur;
    if (cur == adj[v].size()) {
      circuit.push_back(v);
      stack.pop_back();
    } else {
      used[adj[v][cur].second] = 1;
      stack.push_back(adj[v][cur].first);
    }
  }
  std::reverse(circuit.begin(), circuit.end());

  Polyline walk;
  walk.points.reserve(circuit.size());
  for (size_t v : circuit) walk.points.push_back(*verts[v]);
  return walk;
}

SegmentSet walk_segments(const Polyline& walk, unsigned dim) {
  std::vector<Segment> segs;
  for (size_t i = 1; i < walk.points.size(); ++i) {
    const Point& p = walk.points[i - 1];
    const Point& q = walk.points[i];
    if (p.size() != dim || q.size() != dim) {
      throw std::domain_error("walk_segments: point dimension mismatch");
    }
    unsigned changed = dim;
    for (unsigned ax = 0; ax < dim; ++ax) {
      if (p[ax] != q[ax]) {
        if (changed != dim) {
          throw std::domain_error("walk_segments: step is not axis-aligned");
        }
        changed = ax;
      }
    }
    if (changed == dim) {
      throw std::domain_error("walk_segments: zero-length step");
    }
    Segment s;
    s.axis = changed;
    s.fixed.reserve(dim - 1);
    for (unsigned ax = 0; ax < dim; ++ax) {
      if (ax != changed) s.fixed.push_back(p[ax]);
    }
    s.lo = std::min(p[changed], q[changed]);
    s.hi = std::max(p[changed], q[changed]);
    segs.push_back(std::move(s));
  }
  return SegmentSet(dim, std::move(segs));
}

}  // namespace triadic
