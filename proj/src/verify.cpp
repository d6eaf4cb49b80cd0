#include "triadic/verify.hpp"

#include <chrono>
#include <utility>

#include "triadic/kset.hpp"
#include "triadic/measure.hpp"
#include "triadic/traverse.hpp"

namespace triadic {

namespace {

long elapsed_ms(const std::chrono::steady_clock::time_point& t0) {
  auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
}

// Runs one check body and records its verdict and wall time.
template <typename Fn>
void run_check(Report& r, std::string name, std::string anchor, Fn&& body) {
  auto t0 = std::chrono::steady_clock::now();
  CheckResult c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  body(c);
  c.ms = elapsed_ms(t0);
  r.checks.push_back(std::move(c));
}

Cert cert_of(bool ok) { return ok ? Cert::Yes : Cert::No; }

void suite_doubling(Report& r, const VerifyOptions& opt) {
  MeasureParams mp{opt.delta, 1};
  Rat bound = atom_ratio_bound(mp);
  for (unsigned long n = 1; n <= opt.max_level; ++n) {
    run_check(r, "doubling.level" + std::to_string(n),
              "every adjacent level-n atom pair has mass ratio at most "
              "(1-2delta)/delta, and some pair attains it",
              [&](CheckResult& c) {
                Rat got = adjacent_ratio_max(mp, n, Int(0), pow3(n) - 1);
                c.lhs = got;
                c.bound = Bounds(bound);
                c.verdict = cert_of(got == bound);
              });
  }
}

void suite_oracle(Report& r, const VerifyOptions& opt) {
  MeasureParams mp{opt.delta, 1};
  for (unsigned long n = 0; n <= opt.max_level; ++n) {
    run_check(r, "oracle.level" + std::to_string(n),
              "mu of each level-n atom equals the independent "
              "density-product oracle divided by 3^n",
              [&](CheckResult& c) {
                Int side = pow3(n);
                Rat scale(Int(1), side);
                bool ok = true;
                for (Int i(0); i < side; ++i) {
                  TriadicInterval I{n, i};
                  if (mu(mp, I) != density_oracle(mp, n, interval_lo(I)) * scale) {
                    ok = false;
                    break;
                  }
                }
                c.lhs = Rat(side);  // number of atoms swept
                c.verdict = cert_of(ok);
              });
  }
}

void suite_tails(Report& r, const VerifyOptions& opt) {
  for (unsigned long n = 10; n <= opt.max_n; n += 5) {
    Rat lo = Rat(2) * opt.delta * Rat(Int(n));
    unsigned long k_lo = static_cast<unsigned long>(lo.ceil().get_ui());
    if (k_lo < 1) k_lo = 1;
    unsigned long k_hi = (2 * n) / 3;
    for (unsigned long k = k_lo; k <= k_hi; ++k) {
      KSetSpec spec{n, k, opt.delta};
      TailReport tr = check_tail_bounds(spec, opt.start_prec, opt.max_prec);
      std::string base = "tails.n" + std::to_string(n) + ".k" + std::to_string(k);
      run_check(r, base + ".mass",
                "1 - mu_k <= exp(-2 n (k/n - 2 delta)^2)",
                [&](CheckResult& c) {
                  c.lhs = Rat(1) - mu_k(spec);
                  c.bound = tr.mass.rhs;
                  c.verdict = tr.mass.cert;
                });
      run_check(r, base + ".length",
                "3^-n count_k <= 3^-n exp(k (1 + log(1/delta)))",
                [&](CheckResult& c) {
                  c.lhs = Rat(count_k(spec), pow3(n));
                  c.bound = tr.length.rhs;
                  c.verdict = tr.length.cert;
                });
      run_check(r, base + ".gaps",
                "gap_count <= exp(k (1 + log(1/delta)))",
                [&](CheckResult& c) {
                  c.lhs = Rat(gap_count(spec));
                  c.bound = tr.gaps.rhs;
                  c.verdict = tr.gaps.cert;
                });
    }
  }
}

constexpr std::pair<unsigned long, unsigned long> kGammaCases[] = {
    {1, 0}, {2, 1}, {3, 1}, {3, 2}, {4, 2}};

void suite_gamma(Report& r, const VerifyOptions& opt) {
  MeasureParams mp{opt.delta, opt.dim};
  for (auto [n, k] : kGammaCases) {
    std::string base = "gamma.n" + std::to_string(n) + "k" + std::to_string(k);
    SegmentSet g = gamma_nk(mp, n, k, opt.cap);
    Rat len = union_length(g);
    run_check(r, base + ".connected",
              "the single-scale segment family is connected",
              [&](CheckResult& c) {
                c.lhs = len;
                c.verdict = cert_of(is_connected(g));
              });
    run_check(r, base + ".proof_sum",
              "union length <= d 2^(d-1) (3^-n count^d + gap_count^(d-1) "
              "gap_total)",
              [&](CheckResult& c) {
                Rat bound = gamma_length_proof_sum(mp, n, k);
                c.lhs = len;
                c.bound = Bounds(bound);
                c.verdict = cert_of(len <= bound);
              });
    run_check(r, base + ".closed_form",
              "union length <= d 2^d exp(d k (1 + log(1/delta)))",
              [&](CheckResult& c) {
                Decision dec = decide_leq(
                    [&](Precision) { return Bounds(len); },
                    [&](Precision pr) {
                      return gamma_length_bound(opt.dim, k, opt.delta, pr);
                    },
                    opt.start_prec, opt.max_prec);
                c.lhs = len;
                c.bound = dec.rhs;
                c.verdict = dec.cert;
              });
  }
}

// Exact nu-mass of stage l by walking every materialized cube, no product
// shortcut. Only called when the cube count is small.
Rat nu_stage_direct(const CascadeParams& p, unsigned long l) {
  MeasureParams mp1{p.delta, 1};
  std::vector<Int> axis_idx{Int(0)};
  for (unsigned long j = 1; j <= l; ++j) {
    KSetSpec sj{stage_n(p, j), stage_k(p, j), p.delta};
    auto atoms = members(sj);
    Int shift = pow3(sj.n);
    std::vector<Int> next;
    next.reserve(axis_idx.size() * atoms.size());
    for (const Int& base : axis_idx) {
      for (const Int& a : atoms) next.push_back(base * shift + a);
    }
    axis_idx = std::move(next);
  }
  unsigned long level = composite_level(p, l);
  std::vector<Rat> axis_mu;
  axis_mu.reserve(axis_idx.size());
  for (const Int& i : axis_idx) axis_mu.push_back(mu(mp1, {level, i}));
  Rat total(0);
  std::vector<size_t> pos(p.dim, 0);
  while (true) {
    Rat cube(1);
    for (unsigned ax = 0; ax < p.dim; ++ax) cube *= axis_mu[pos[ax]];
    total += cube;
    unsigned ax = 0;
    while (ax < p.dim && ++pos[ax] == axis_mu.size()) {
      pos[ax] = 0;
      ++ax;
    }
    if (ax == p.dim) break;
  }
  return total;
}

const char* kind_str(ValidationResult::Kind k) {
  switch (k) {
    case ValidationResult::Kind::StrictValid: return "StrictValid";
    case ValidationResult::Kind::ToyOnly: return "ToyOnly";
    default: return "Invalid";
  }
}

void suite_cascade(Report& r, const VerifyOptions& opt) {
  CascadeParams p{opt.delta, opt.dim, opt.n1, opt.k1, opt.mode};
  ValidationResult v = validate_cascade(p, opt.start_prec, opt.max_prec);
  run_check(r, std::string("cascade.validate:") + kind_str(v.kind),
            "the schedule n_l = l n1, k_l = l k1 is usable; StrictValid "
            "additionally certifies 18 d delta (1 + log(1/delta)) <= log 3",
            [&](CheckResult& c) {
              if (v.checked_inequality) {
                c.lhs = v.inequality.lhs.hi();
                c.bound = v.inequality.rhs;
              }
              c.verdict = cert_of(v.kind != ValidationResult::Kind::Invalid);
            });
  if (v.kind == ValidationResult::Kind::Invalid) return;
  Precision prec{opt.start_prec};

  Bounds mb_inf(Rat(0));
  bool have_inf = true;
  try {
    mb_inf = measure_bound(p, std::nullopt, prec);
  } catch (const undecided_error&) {
    have_inf = false;
  }
  if (have_inf) {
    run_check(r, "cascade.measure_bound.total",
              "the closed-form mass lower bound exp(-d Z / (1-Z)^2) is "
              "certified positive",
              [&](CheckResult& c) {
                c.bound = mb_inf;
                c.verdict = cert_of(mb_inf.lo() > Rat(0));
              });
  }

  Rat prev_nu(1);
  for (unsigned long l = 0; l <= opt.levels; ++l) {
    std::string base = "cascade.l" + std::to_string(l);
    Rat nu_l = nu_stage(p, l);
    run_check(r, base + ".nu_vs_partial",
              "exact stage mass is at least the certified partial product "
              "bound prod_j (1 - exp(-2 delta^2 n_j))^d",
              [&](CheckResult& c) {
                Bounds mb = measure_bound(p, l, prec);
                c.lhs = nu_l;
                c.bound = mb;
                c.verdict = cert_of(nu_l >= mb.lo());
              });
    if (have_inf) {
      run_check(r, base + ".nu_vs_total",
                "exact stage mass is at least the certified closed-form "
                "lower bound",
                [&](CheckResult& c) {
                  c.lhs = nu_l;
                  c.bound = mb_inf;
                  c.verdict = cert_of(nu_l >= mb_inf.lo());
                });
    }
    run_check(r, base + ".nu_monotone",
              "stage masses are non-increasing in l",
              [&](CheckResult& c) {
                c.lhs = nu_l;
                c.verdict = cert_of(nu_l <= prev_nu);
              });
    prev_nu = nu_l;
    if (l >= 1) {
      run_check(r, base + ".cube_count",
                "stage cube count is at most exp((k_1+...+k_l) d "
                "(1 + log(1/delta)))",
                [&](CheckResult& c) {
                  Rat cubes(stage_cube_count(p, l));
                  Int ksum = Int(p.k1) * Int(l) * Int(l + 1) / 2;
                  Rat expo = Rat(Int(ksum * Int(p.dim)));
                  Decision dec = decide_leq(
                      [&](Precision) { return Bounds(cubes); },
                      [&](Precision pr) {
                        return enclose_exp(
                            (Bounds(Rat(1)) +
                             enclose_log(p.delta.inverse(), pr))
                                .scale(expo),
                            pr);
                      },
                      opt.start_prec, opt.max_prec);
                  c.lhs = cubes;
                  c.bound = dec.rhs;
                  c.verdict = dec.cert;
                });
    }
    if (stage_cube_count(p, l) <= 10000) {
      run_check(r, base + ".nu_direct",
                "product formula equals the direct sum of nu over all "
                "materialized stage cubes, exactly",
                [&](CheckResult& c) {
                  c.lhs = nu_l;
                  c.verdict = cert_of(nu_stage_direct(p, l) == nu_l);
                });
    }
  }

  if (v.kind == ValidationResult::Kind::StrictValid) {
    Bounds lb_inf = length_bound(p, std::nullopt, prec);
    run_check(r, "cascade.length_bound.total",
              "partial length budgets are non-decreasing and stay below "
              "the closed-form total 3 d 2^d exp(3 d n1 delta "
              "(1 + log(1/delta)))",
              [&](CheckResult& c) {
                Rat prev(0);
                bool ok = true;
                unsigned long top = opt.levels < 6 ? 6 : opt.levels;
                for (unsigned long L = 0; L <= top; ++L) {
                  Bounds b = length_bound(p, L, prec);
                  if (b.hi() < prev || !(b.hi() <= lb_inf.lo())) ok = false;
                  prev = b.hi();
                }
                c.lhs = prev;
                c.bound = lb_inf;
                c.verdict = cert_of(ok);
              });
  }

  // Geometry only at materializable scale; a cap miss skips, never fakes.
  std::vector<SegmentSet> curves;
  bool materializable = true;
  try {
    for (unsigned long L = 0; L <= opt.levels; ++L) {
      curves.push_back(stage_curve(p, L, opt.cap));
    }
  } catch (const resource_error&) {
    materializable = false;
  }
  if (materializable) {
    for (unsigned long L = 0; L <= opt.levels; ++L) {
      std::string base = "cascade.curve.L" + std::to_string(L);
      Rat len = union_length(curves[L]);
      run_check(r, base + ".connected", "the stage curve is connected",
                [&](CheckResult& c) {
                  c.lhs = len;
                  c.verdict = cert_of(is_connected(curves[L]));
                });
      if (L >= 1) {
        run_check(r, base + ".monotone",
                  "the stage L curve covers the stage L-1 curve",
                  [&](CheckResult& c) {
                    c.verdict = cert_of(covers(curves[L], curves[L - 1]));
                  });
      }
      run_check(r, base + ".length",
                "stage curve union length is at most the partial length "
                "budget",
                [&](CheckResult& c) {
                  Bounds b = length_bound(p, L, prec);
                  c.lhs = len;
                  c.bound = b;
                  c.verdict = cert_of(len <= b.hi());
                });
    }
  }
}

void tour_checks(Report& r, const std::string& base, const SegmentSet& s) {
  SegmentSet flat = planarize(s);
  Polyline walk = euler_tour(s);
  Rat ul = union_length(s);
  Rat wl = walk.length();
  run_check(r, base + ".closed", "the tour is a closed walk",
            [&](CheckResult& c) { c.verdict = cert_of(walk.closed()); });
  run_check(r, base + ".coverage",
            "the tour trace equals the planarized union exactly",
            [&](CheckResult& c) {
              c.verdict = cert_of(walk_segments(walk, s.dim()) == flat);
            });
  run_check(r, base + ".factor",
            "union length <= tour length <= twice the union length",
            [&](CheckResult& c) {
              c.lhs = wl;
              c.bound = Bounds(ul, Rat(2) * ul);
              c.verdict = cert_of(ul <= wl && wl <= Rat(2) * ul);
            });
}

void suite_tour(Report& r, const VerifyOptions& opt) {
  MeasureParams mp{opt.delta, opt.dim};
  for (auto [n, k] : kGammaCases) {
    std::string base = "tour.gamma_n" + std::to_string(n) + "k" + std::to_string(k);
    tour_checks(r, base, gamma_nk(mp, n, k, opt.cap));
  }
  CascadeParams p{opt.delta, opt.dim, opt.n1, opt.k1, opt.mode};
  unsigned long top = opt.levels < 2 ? opt.levels : 2;
  try {
    for (unsigned long L = 1; L <= top; ++L) {
      SegmentSet s = stage_curve(p, L, opt.cap);
      tour_checks(r, "tour.stage_L" + std::to_string(L), s);
    }
  } catch (const resource_error&) {
    // beyond toy scale, nothing to traverse
  }
}

}  // namespace

Report run_suite(const std::string& suite, const VerifyOptions& opt) {
  Report r;
  r.params.delta = opt.delta;
  auto echo_geometry = [&] { r.params.d = opt.dim; };
  auto echo_cascade = [&] {
    r.params.d = opt.dim;
    r.params.n1 = opt.n1;
    r.params.k1 = opt.k1;
    r.params.mode = opt.mode == CascadeMode::Strict ? "strict" : "toy";
  };
  if (suite == "doubling") {
    suite_doubling(r, opt);
  } else if (suite == "oracle") {
    suite_oracle(r, opt);
  } else if (suite == "tails") {
    suite_tails(r, opt);
  } else if (suite == "gamma") {
    echo_geometry();
    suite_gamma(r, opt);
  } else if (suite == "cascade") {
    echo_cascade();
    suite_cascade(r, opt);
  } else if (suite == "tour") {
    echo_cascade();
    suite_tour(r, opt);
  } else if (suite == "all") {
    echo_cascade();
    suite_doubling(r, opt);
    suite_oracle(r, opt);
    suite_tails(r, opt);
    suite_gamma(r, opt);
    suite_cascade(r, opt);
    suite_tour(r, opt);
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  return r;
}

}  // namespace triadic
