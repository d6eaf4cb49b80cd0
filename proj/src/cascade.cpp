#include "triadic/cascade.hpp"

#include <algorithm>

#include "triadic/measure.hpp"

namespace triadic {

std::optional<unsigned long> derive_k1(const Rat& delta, unsigned long n1) {
  Rat k1 = Rat(3) * delta * Rat(Int(n1));
  if (!k1.is_integer() || k1 < Rat(1)) return std::nullopt;
  return static_cast<unsigned long>(k1.floor().get_ui());
}

namespace {

// Structural requirements shared by every cascade operation. The identity
// k1 = 3*delta*n1 and the strict inequality are classification matters for
// validate_cascade, not hard preconditions of the combinatorics.
void check_structure(const CascadeParams& p) {
  if (p.dim < 2) throw std::domain_error("cascade: dim must be >= 2");
  if (p.delta.sign() <= 0 || p.delta > Rat(1, 3)) {
    throw std::domain_error("cascade: delta must lie in (0, 1/3]");
  }
  if (p.n1 < 1) throw std::domain_error("cascade: n1 must be >= 1");
  if (p.k1 < 1) throw std::domain_error("cascade: k1 must be >= 1");
}

}  // namespace

ValidationResult validate_cascade(const CascadeParams& p, long start_level,
                                  long max_level) {
  ValidationResult r;
  r.kind = ValidationResult::Kind::Invalid;
  if (p.dim < 2) {
    r.reason = "dim must be >= 2";
    return r;
  }
  if (p.delta.sign() <= 0 || p.delta > Rat(1, 3)) {
    r.reason = "delta must lie in (0, 1/3]";
    return r;
  }
  if (p.n1 < 1) {
    r.reason = "n1 must be >= 1";
    return r;
  }
  if (p.k1 < 1) {
    r.reason = "k1 must be >= 1";
    return r;
  }
  Rat k1_exact = Rat(3) * p.delta * Rat(Int(p.n1));
  if (Rat(Int(p.k1)) != k1_exact) {
    std::string why = !k1_exact.is_integer()
                          ? "3*delta*n1 = " + k1_exact.str() +
                                " is not an integer"
                          : "k1 = " + std::to_string(p.k1) +
                                " but 3*delta*n1 = " + k1_exact.str();
    if (p.mode == CascadeMode::Toy) {
      // The schedule is still usable for geometry and exact cross-checks;
      // only the closed-form bounds lose their hypotheses.
      r.kind = ValidationResult::Kind::ToyOnly;
      r.reason = why;
      return r;
    }
    r.reason = why;
    return r;
  }
  Rat lead = Rat(Int(Int(18) * Int(p.dim))) * p.delta;
  Rat inv_delta = p.delta.inverse();
  r.checked_inequality = true;
  r.inequality = decide_leq(
      [&](Precision pr) {
        return (Bounds(Rat(1)) + enclose_log(inv_delta, pr)).scale(lead);
      },
      [&](Precision pr) { return enclose_log(Rat(3), pr); }, start_level,
      max_level);
  switch (r.inequality.cert) {
    case Cert::Yes:
      r.kind = ValidationResult::Kind::StrictValid;
      break;
    case Cert::No:
      r.kind = ValidationResult::Kind::ToyOnly;
      break;
    default:
      r.reason = "strict inequality undecided at precision cap";
      break;
  }
  return r;
}

bool stage_membership(const CascadeParams& p, const StageCube& cube,
                      unsigned long l) {
  check_structure(p);
  if (cube.level != composite_level(p, l)) {
    throw std::domain_error("stage_membership: cube level is not N_l");
  }
  if (cube.index.size() != p.dim) {
    throw std::domain_error("stage_membership: axis count does not match dim");
  }
  Int side = pow3(cube.level);
  for (const Int& idx : cube.index) {
    if (sgn(idx) < 0 || idx >= side) {
      throw std::domain_error("stage_membership: index out of range");
    }
    Int t = idx;
    // Blocks peel off least-significant-first: block l, then l-1, ... 1.
    for (unsigned long j = l; j >= 1; --j) {
      unsigned long nj = stage_n(p, j);
      Int block;
      mpz_fdiv_r(block.get_mpz_t(), t.get_mpz_t(), pow3(nj).get_mpz_t());
      mpz_fdiv_q(t.get_mpz_t(), t.get_mpz_t(), pow3(nj).get_mpz_t());
      if (nj - digit_one_count(block, nj) > stage_k(p, j)) return false;
    }
  }
  return true;
}

Rat nu_stage(const CascadeParams& p, unsigned long l) {
  check_structure(p);
  Rat total(1);
  for (unsigned long j = 1; j <= l; ++j) {
    KSetSpec sj{stage_n(p, j), stage_k(p, j), p.delta};
    total *= mu_k(sj).pow(static_cast<long>(p.dim));
  }
  return total;
}

Int stage_cube_count(const CascadeParams& p, unsigned long l) {
  check_structure(p);
  Int total(1);
  for (unsigned long j = 1; j <= l; ++j) {
    KSetSpec sj{stage_n(p, j), stage_k(p, j), p.delta};
    total *= pow_int(count_k(sj), p.dim);
  }
  return total;
}

SegmentSet stage_curve(const CascadeParams& p, unsigned long L,
                       unsigned long cap) {
  check_structure(p);
  const unsigned d = p.dim;
  const Int edges_per_box = Int(d) * pow_int(2, d - 1);
  std::vector<Segment> segs;
  Box unit(d, {Rat(0), Rat(1)});
  append_skeleton(segs, unit);
  Int seg_budget = edges_per_box;

  std::vector<Rat> parent_lo{Rat(0)};  // per-axis offsets of stage-(l-1) cubes
  Rat parent_w(1);                     // their side length 3^(-N_{l-1})

  auto for_each_combo = [&](size_t count, auto&& body) {
    if (count == 0) return;
    std::vector<size_t> idx(d, 0);
    while (true) {
      body(idx);
      unsigned ax = 0;
      while (ax < d && ++idx[ax] == count) {
        idx[ax] = 0;
        ++ax;
      }
      if (ax == d) break;
    }
  };

  for (unsigned long l = 1; l <= L; ++l) {
    KSetSpec sl{stage_n(p, l), stage_k(p, l), p.delta};
    Int atom_count = count_k(sl);
    Int comp_count = (sl.k >= sl.n) ? Int(0) : gap_count(sl) + 2;
    Int parents = pow_int(Int(parent_lo.size()), d);
    Int boxes = parents * (pow_int(atom_count, d) + pow_int(comp_count, d));
    seg_budget += boxes * edges_per_box;
    if (seg_budget > Int(cap)) {
      throw resource_error("stage_curve: level " + std::to_string(l) +
                           " needs " + seg_budget.get_str() +
                           " segments, cap " + std::to_string(cap));
    }
    auto atoms = members(sl, cap);
    auto comps = complement_components(sl, cap);
    Rat w(Int(1), pow3(sl.n));
    std::vector<std::pair<Rat, Rat>> atom_sides;
    atom_sides.reserve(atoms.size());
    for (const Int& a : atoms) {
      Rat lo = Rat(a) * w;
      atom_sides.emplace_back(lo, lo + w);
    }
    std::vector<std::pair<Rat, Rat>> comp_sides;
    comp_sides.reserve(comps.size());
    for (const auto& c : comps) comp_sides.emplace_back(c.lo, c.hi);

    for_each_combo(parent_lo.size(), [&](const std::vector<size_t>& pc) {
      auto emit = [&](const std::vector<std::pair<Rat, Rat>>& sides,
                      const std::vector<size_t>& cc) {
        Box box(d);
        for (unsigned ax = 0; ax < d; ++ax) {
          const Rat& base = parent_lo[pc[ax]];
          box[ax] = {base + parent_w * sides[cc[ax]].first,
                     base + parent_w * sides[cc[ax]].second};
        }
        append_skeleton(segs, box);
      };
      for_each_combo(atom_sides.size(),
                     [&](const std::vector<size_t>& cc) { emit(atom_sides, cc); });
      for_each_combo(comp_sides.size(),
                     [&](const std::vector<size_t>& cc) { emit(comp_sides, cc); });
    });

    // Stage-l cubes: every parent refined by every atom, per axis.
    std::vector<Rat> next_lo;
    next_lo.reserve(parent_lo.size() * atom_sides.size());
    for (const Rat& base : parent_lo) {
      for (const auto& side : atom_sides) {
        next_lo.push_back(base + parent_w * side.first);
      }
    }
    parent_lo = std::move(next_lo);
    parent_w *= w;
  }
  return SegmentSet(d, std::move(segs));
}

Bounds length_bound(const CascadeParams& p, std::optional<unsigned long> L,
                    Precision prec) {
  check_structure(p);
  Bounds log1 = Bounds(Rat(1)) + enclose_log(p.delta.inverse(), prec);
  if (!L) {
    auto v = validate_cascade(p);
    if (v.kind != ValidationResult::Kind::StrictValid) {
      throw std::domain_error(
          "length_bound: the closed-form total requires StrictValid "
          "parameters");
    }
    Rat coef(Int(Int(3) * Int(p.dim) * pow_int(2, p.dim)));
    Rat factor = p.delta * Rat(Int(Int(3) * Int(p.dim) * Int(p.n1)));
    return enclose_exp(log1.scale(factor), prec).scale(coef);
  }
  Bounds total(Rat(Int(Int(p.dim) * pow_int(2, p.dim - 1))));
  Rat d2d(Int(Int(p.dim) * pow_int(2, p.dim)));
  for (unsigned long l = 1; l <= *L; ++l) {
    Int k_sum = Int(p.k1) * Int(l) * Int(l + 1) / 2;
    Rat coeff = d2d * Rat(Int(1), pow3(composite_level(p, l - 1)));
    Bounds term =
        enclose_exp(log1.scale(Rat(Int(k_sum * Int(p.dim)))), prec).scale(coeff);
    total = (total + term).round_out_sig(prec.level + 16);
  }
  return total;
}

Bounds measure_bound(const CascadeParams& p, std::optional<unsigned long> l,
                     Precision prec) {
  check_structure(p);
  Rat coef = -(Rat(2) * p.delta * p.delta);
  if (!l) {
    Bounds Z = enclose_exp(coef * Rat(Int(p.n1)), prec);
    if (!(Z.hi() < Rat(1))) {
      throw undecided_error(
          "measure_bound: Z is not certified below 1 at this precision");
    }
    Bounds q = Z.scale(Rat(Int(p.dim))) / (Bounds(Rat(1)) - Z).pow_u(2);
    return enclose_exp(-q, prec);
  }
  Bounds prod(Rat(1));
  for (unsigned long j = 1; j <= *l; ++j) {
    Bounds Zj = enclose_exp(coef * Rat(Int(stage_n(p, j))), prec);
    Bounds factor = (Bounds(Rat(1)) - Zj).pow_u(p.dim);
    prod = (prod * factor).round_out_sig(prec.level + 16);
  }
  return prod;
}

bool covers(const SegmentSet& outer, const SegmentSet& inner) {
  if (outer.dim() != inner.dim()) {
    throw std::domain_error("covers: dimension mismatch");
  }
  const auto& out = outer.segments();
  for (const auto& s : inner.segments()) {
    // First outer segment on s's line; canonical order groups lines.
    auto it = std::lower_bound(
        out.begin(), out.end(), s, [](const Segment& a, const Segment& b) {
          if (a.axis != b.axis) return a.axis < b.axis;
          return a.fixed < b.fixed;
        });
    Rat cur = s.lo;
    for (; it != out.end() && it->axis == s.axis && it->fixed == s.fixed;
         ++it) {
      if (it->lo > cur) break;       // gap before cur; cannot be covered later
      if (it->hi > cur) cur = it->hi;
      if (cur >= s.hi) break;
    }
    if (cur < s.hi) return false;
  }
  return true;
}

}  // namespace triadic
