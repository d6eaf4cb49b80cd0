#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triadic/enclosure.hpp"
#include "triadic/errors.hpp"
#include "triadic/geometry.hpp"
#include "triadic/kset.hpp"

namespace triadic {

enum class CascadeMode { Strict, Toy };

// Schedule is fixed: n_l = l*n1, k_l = l*k1. Strict mode requires the exact
// identity k1 = 3*delta*n1; Toy mode accepts any positive k1 so geometry and
// cross-checks can run on parameters the closed-form bounds do not cover.
struct CascadeParams {
  Rat delta;
  unsigned dim = 2;
  unsigned long n1 = 1;
  unsigned long k1 = 1;
  CascadeMode mode = CascadeMode::Strict;
};

inline unsigned long stage_n(const CascadeParams& p, unsigned long l) {
  return l * p.n1;
}
inline unsigned long stage_k(const CascadeParams& p, unsigned long l) {
  return l * p.k1;
}
// N_l = n1 + 2 n1 + ... + l n1.
inline unsigned long composite_level(const CascadeParams& p, unsigned long l) {
  return p.n1 * l * (l + 1) / 2;
}

// Smallest integer k1 = 3*delta*n1 if it exists and is >= 1.
std::optional<unsigned long> derive_k1(const Rat& delta, unsigned long n1);

struct ValidationResult {
  enum class Kind { StrictValid, ToyOnly, Invalid };
  Kind kind = Kind::Invalid;
  std::string reason;      // nonempty for Invalid
  bool checked_inequality = false;
  Decision inequality;     // 18 d [delta + delta log(1/delta)] <= log 3
};

// StrictValid iff k1 = 3*delta*n1 holds exactly, k1 >= 1, and the strict
// inequality certifies True. ToyOnly when the inequality is certified False,
// or in Toy mode when k1 differs from 3*delta*n1. Invalid otherwise,
// including Undecided at max_level.
ValidationResult validate_cascade(const CascadeParams& p,
                                  long start_level = kDefaultLevel,
                                  long max_level = kMaxLevel);

// Cube of side 3^-level with one index per axis.
struct StageCube {
  unsigned long level = 0;
  std::vector<Int> index;
};

// True iff every axis index, split MSB-first into digit blocks of sizes
// n_1, ..., n_l, has at most k_j non-1 digits in block j.
bool stage_membership(const CascadeParams& p, const StageCube& cube,
                      unsigned long l);

// Exact nu of the union of stage-l cubes: prod_{j<=l} mu_k(n_j, k_j)^dim.
Rat nu_stage(const CascadeParams& p, unsigned long l);

// Exact cube count: prod_{j<=l} count_k(n_j, k_j)^dim.
Int stage_cube_count(const CascadeParams& p, unsigned long l);

// Finite curve stage: the unit-cube skeleton, plus for every l <= L and
// every stage-(l-1) cube Q the scaled copy inside Q of the level-l segment
// family. Each copy consists of the cube skeletons of K(n_l,k_l)^dim and
// the skeletons of products of components of [0,1) \ K(n_l,k_l); the
// leading and trailing components anchor the copy to Sk(Q), which makes
// every stage connected and stages nested.
SegmentSet stage_curve(const CascadeParams& p, unsigned long L,
                       unsigned long cap = kDefaultSegmentCap);

// Certified enclosure of the stage length budget
//   d 2^(d-1) + sum_{l<=L} d 2^d 3^(-N_{l-1}) e^{(k_1+...+k_l) d [1+log(1/delta)]}
// or, for L = nullopt (the full curve), of 3 d 2^d e^{3 d n1 [delta + delta log(1/delta)]}.
// The closed form requires StrictValid parameters.
Bounds length_bound(const CascadeParams& p, std::optional<unsigned long> L,
                    Precision prec);

// Certified enclosure of prod_{j<=l} (1 - e^{-2 delta^2 n_j})^dim, or for
// l = nullopt of exp{-d Z / (1-Z)^2} with Z = e^{-2 delta^2 n1}. Throws
// undecided_error if Z is not certified strictly below 1 at this precision.
Bounds measure_bound(const CascadeParams& p, std::optional<unsigned long> l,
                     Precision prec);

// True iff the union of inner's segments is contained in the union of
// outer's segments (pointwise cover by collinear spans).
bool covers(const SegmentSet& outer, const SegmentSet& inner);

}  // namespace triadic
