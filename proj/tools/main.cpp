#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "triadic/cascade.hpp"
#include "triadic/kset.hpp"
#include "triadic/measure.hpp"
#include "triadic/report.hpp"
#include "triadic/traverse.hpp"
#include "triadic/verify.hpp"

using namespace triadic;

namespace {

// Exit codes: 0 pass, 1 check failed, 2 usage, 3 resource cap, 4 undecided.
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitUndecided = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rat parse_rat(const std::string& s, const std::string& what) {
  auto v = Rat::parse(s);
  if (!v) throw UsageError("malformed " + what + ": '" + s + "'");
  return *v;
}

// "lo:hi" with fraction endpoints.
std::pair<Rat, Rat> parse_span(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) {
    throw UsageError("expected lo:hi, got '" + s + "'");
  }
  return {parse_rat(s.substr(0, colon), "endpoint"),
          parse_rat(s.substr(colon + 1), "endpoint")};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + out_path + "'");
  f << text;
}

struct MeasureArgs {
  std::string delta = "1/5";
  std::string interval, box;
  unsigned dim = 0;  // 0 = infer
  bool approx = false;
  std::string out;
};

int cmd_measure(const MeasureArgs& a) {
  Rat delta = parse_rat(a.delta, "--delta");
  std::vector<std::pair<Rat, Rat>> spans;
  if (!a.interval.empty() && !a.box.empty()) {
    throw UsageError("--interval and --box are mutually exclusive");
  }
  if (!a.interval.empty()) {
    spans.push_back(parse_span(a.interval));
  } else if (!a.box.empty()) {
    for (const auto& part : split(a.box, ',')) spans.push_back(parse_span(part));
  } else {
    throw UsageError("one of --interval or --box is required");
  }
  unsigned dim = a.dim ? a.dim : static_cast<unsigned>(spans.size());
  if (dim != spans.size()) {
    throw UsageError("--d does not match the number of box axes");
  }
  MeasureParams mp{delta, 1};
  validate_params(mp);
  Rat value(1);
  for (const auto& [lo, hi] : spans) value *= mu_interval(mp, lo, hi);
  std::string text = value.str();
  if (a.approx) text += " (approx " + value.decimal(12) + ")";
  emit(text + "\n", a.out);
  return 0;
}

struct KsetArgs {
  std::string delta = "1/5";
  unsigned long n = 1, k = 0;
  bool summary = false, list = false, gaps_flag = false, verify_flag = false;
  unsigned long cap = kDefaultAtomCap;
  long prec = kDefaultLevel, max_prec = kMaxLevel;
  std::string out;
};

int cmd_kset(const KsetArgs& a) {
  KSetSpec spec{a.n, a.k, parse_rat(a.delta, "--delta")};
  validate_spec(spec);
  if (!a.summary && !a.list && !a.gaps_flag && !a.verify_flag) {
    throw UsageError("one of --summary, --list, --gaps, --verify is required");
  }
  std::ostringstream os;
  int code = 0;
  auto print_verdicts = [&]() {
    TailReport tr = check_tail_bounds(spec, a.prec, a.max_prec);
    os << "mass bound: " << verdict_str(tr.mass.cert) << "\n";
    os << "length bound: " << verdict_str(tr.length.cert) << "\n";
    os << "gap bound: " << verdict_str(tr.gaps.cert) << "\n";
    for (Cert c : {tr.mass.cert, tr.length.cert, tr.gaps.cert}) {
      if (c == Cert::No) code = kExitFail;
      if (c == Cert::Undecided && code == 0) code = kExitUndecided;
    }
  };
  if (a.summary) {
    os << "count=" << count_k(spec).get_str() << ", |K|="
       << Rat(count_k(spec), pow3(spec.n)).str() << ", mu=" << mu_k(spec).str()
       << "\n";
    if (strict_regime(spec)) print_verdicts();
  }
  if (a.list) {
    for (const Int& i : members(spec, a.cap)) os << i.get_str() << "\n";
  }
  if (a.gaps_flag) {
    for (const auto& g : gaps(spec, a.cap)) {
      os << g.lo.str() << ":" << g.hi.str() << "\n";
    }
  }
  if (a.verify_flag && !a.summary) print_verdicts();
  emit(os.str(), a.out);
  return code;
}

struct CurveArgs {
  std::string delta = "1/5";
  unsigned dim = 2;
  unsigned long n = 0, k = 0;    // single-scale family when n > 0
  unsigned long n1 = 0, k1 = 0;  // cascade stages when n1 > 0
  unsigned long stages = 1;
  std::string format = "json";
  bool tour = false, approx = false;
  std::string stroke_scale = "1";
  unsigned long cap = kDefaultSegmentCap;
  std::string out;
};

std::string svg_text(const SegmentSet& s, const Rat& stroke) {
  // [0,1]^2 mapped to a 1000-unit viewport, y flipped to screen orientation.
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
  Rat w = stroke < Rat(1, 4) ? Rat(1, 4) : stroke;
  for (const auto& seg : s.segments()) {
    Rat x1, y1, x2, y2;
    if (seg.axis == 0) {
      x1 = seg.lo;
      x2 = seg.hi;
      y1 = y2 = seg.fixed[0];
    } else {
      x1 = x2 = seg.fixed[0];
      y1 = seg.lo;
      y2 = seg.hi;
    }
    auto sx = [](const Rat& v) { return (v * Rat(1000)).decimal(6); };
    auto sy = [](const Rat& v) { return ((Rat(1) - v) * Rat(1000)).decimal(6); };
    os << "<line x1=\"" << sx(x1) << "\" y1=\"" << sy(y1) << "\" x2=\""
       << sx(x2) << "\" y2=\"" << sy(y2)
       << "\" stroke=\"black\" stroke-width=\"" << w.decimal(6)
       << "\" stroke-linecap=\"square\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

int cmd_curve(const CurveArgs& a) {
  Rat delta = parse_rat(a.delta, "--delta");
  if (a.format != "json" && a.format != "svg" && a.format != "csv") {
    throw UsageError("--format must be json, svg, or csv");
  }
  if (a.tour && a.format != "csv") {
    throw UsageError("--tour requires --format csv");
  }
  if (a.format == "csv" && !a.tour) {
    throw UsageError("csv output is the tour polyline; pass --tour");
  }
  if (a.format == "svg" && a.dim != 2) {
    throw UsageError("svg output requires --d 2");
  }
  bool cascade = a.n1 > 0;
  if (cascade == (a.n > 0)) {
    throw UsageError("exactly one of --n (single scale) or --n1 (cascade) is required");
  }
  SegmentSet set(a.dim < 2 ? 2 : a.dim, {});
  unsigned long depth = 0;  // 3^-depth = finest cube side, for stroke width
  ParamEcho echo;
  echo.delta = delta;
  echo.d = a.dim;
  if (cascade) {
    unsigned long k1 = a.k1;
    if (k1 == 0) {
      auto d1 = derive_k1(delta, a.n1);
      k1 = d1 ? *d1 : 1;
    }
    CascadeParams p{delta, a.dim, a.n1, k1, CascadeMode::Toy};
    set = stage_curve(p, a.stages, a.cap);
    depth = composite_level(p, a.stages);
    echo.n1 = a.n1;
    echo.k1 = k1;
    echo.mode = "toy";
  } else {
    MeasureParams mp{delta, a.dim};
    set = gamma_nk(mp, a.n, a.k, a.cap);
    depth = a.n;
    echo.n = a.n;
    echo.k = a.k;
  }
  if (a.format == "json") {
    nlohmann::ordered_json j;
    j["version"] = kToolVersion;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    params["delta"] = echo.delta->str();
    params["d"] = *echo.d;
    if (echo.n) params["n"] = *echo.n;
    if (echo.k) params["k"] = *echo.k;
    if (echo.n1) params["n1"] = *echo.n1;
    if (echo.k1) params["k1"] = *echo.k1;
    if (echo.mode) params["mode"] = *echo.mode;
    j["params"] = std::move(params);
    j["segments"] = segments_json(set);
    emit(j.dump(2) + "\n", a.out);
    return 0;
  }
  if (a.format == "svg") {
    Rat scale = parse_rat(a.stroke_scale, "--stroke-scale");
    Rat stroke = Rat(Int(500), pow3(depth)) * scale;
    emit(svg_text(set, stroke), a.out);
    return 0;
  }
  Polyline walk = euler_tour(set);
  std::ostringstream os;
  for (unsigned ax = 0; ax < set.dim(); ++ax) {
    os << (ax ? "," : "") << char('x' + (ax < 3 ? ax : 2))
       << (a.approx ? "_approx" : "");
  }
  os << "\n";
  for (const auto& pt : walk.points) {
    for (unsigned ax = 0; ax < pt.size(); ++ax) {
      os << (ax ? "," : "") << (a.approx ? pt[ax].decimal(12) : pt[ax].str());
    }
    os << "\n";
  }
  emit(os.str(), a.out);
  return 0;
}

struct ParamsArgs {
  std::string delta = "1/250";
  unsigned dim = 2;
  unsigned long n1 = 0;
  bool search = false;
  unsigned long search_cap = 1000000;
  long prec = kDefaultLevel, max_prec = kMaxLevel;
  std::string out;
};

int cmd_params(const ParamsArgs& a) {
  Rat delta = parse_rat(a.delta, "--delta");
  std::ostringstream os;
  Precision prec{a.prec};
  int code = 0;
  auto report_bounds = [&](const CascadeParams& p) {
    Bounds lb = length_bound(p, std::nullopt, prec);
    os << "length bound: [" << lb.lo().str() << ", " << lb.hi().str()
       << "] (approx " << lb.lo().scientific(6) << " .. "
       << lb.hi().scientific(6) << ")\n";
    Bounds mb = measure_bound(p, std::nullopt, prec);
    os << "mass bound: [" << mb.lo().str() << ", " << mb.hi().str()
       << "] (approx " << mb.lo().scientific(6) << " .. "
       << mb.hi().scientific(6) << ")\n";
  };
  auto classify = [&](unsigned long n1) {
    unsigned long k1 = 1;
    if (auto d1 = derive_k1(delta, n1)) k1 = *d1;
    CascadeParams p{delta, a.dim, n1, k1, CascadeMode::Strict};
    return std::make_pair(p, validate_cascade(p, a.prec, a.max_prec));
  };
  if (a.search) {
    // The inequality depends only on (delta, d); integrality then picks the
    // smallest n1 = denominator(3 delta).
    Rat three_delta = Rat(3) * delta;
    unsigned long n1 = 1;
    if (!three_delta.is_integer()) {
      Int den = three_delta.den();
      if (den > Int(a.search_cap)) {
        os << "no StrictValid n1 at or below " << a.search_cap << "\n";
        emit(os.str(), a.out);
        return 0;
      }
      n1 = static_cast<unsigned long>(den.get_ui());
    }
    auto [p, v] = classify(n1);
    if (v.kind != ValidationResult::Kind::StrictValid) {
      os << "no StrictValid n1 at or below " << a.search_cap
         << " (the strict inequality fails for delta=" << delta.str()
         << ", d=" << a.dim << ")\n";
      emit(os.str(), a.out);
      return v.kind == ValidationResult::Kind::Invalid && v.checked_inequality
                 ? kExitUndecided
                 : 0;
    }
    os << "smallest StrictValid n1: " << n1 << "\n";
    os << "k1: " << p.k1 << "\n";
    report_bounds(p);
    emit(os.str(), a.out);
    return 0;
  }
  if (a.n1 == 0) throw UsageError("--n1 is required unless --search is given");
  auto [p, v] = classify(a.n1);
  switch (v.kind) {
    case ValidationResult::Kind::StrictValid:
      os << "verdict: StrictValid\n";
      os << "k1: " << p.k1 << "\n";
      report_bounds(p);
      break;
    case ValidationResult::Kind::ToyOnly:
      os << "verdict: ToyOnly\n";
      os << "k1: " << p.k1 << "\n";
      break;
    default:
      os << "verdict: Invalid (" << v.reason << ")\n";
      if (v.checked_inequality &&
          v.inequality.cert == Cert::Undecided) {
        code = kExitUndecided;
      }
      break;
  }
  emit(os.str(), a.out);
  return code;
}

struct VerifyArgs {
  std::string suite;
  std::string delta = "1/5";
  unsigned dim = 2;
  unsigned long n1 = 2, k1 = 0;
  std::string mode = "toy";
  unsigned long levels = 2;
  unsigned long max_level = 8;
  unsigned long max_n = 60;
  long prec = kDefaultLevel, max_prec = 128;
  unsigned long cap = kDefaultSegmentCap;
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions opt;
  opt.delta = parse_rat(a.delta, "--delta");
  opt.dim = a.dim;
  opt.n1 = a.n1;
  if (a.k1 > 0) {
    opt.k1 = a.k1;
  } else {
    auto d1 = derive_k1(opt.delta, a.n1);
    opt.k1 = d1 ? *d1 : 1;
  }
  if (a.mode == "strict") {
    opt.mode = CascadeMode::Strict;
  } else if (a.mode == "toy") {
    opt.mode = CascadeMode::Toy;
  } else {
    throw UsageError("--mode must be strict or toy");
  }
  opt.levels = a.levels;
  opt.max_level = a.max_level;
  opt.max_n = a.max_n;
  opt.start_prec = a.prec;
  opt.max_prec = a.max_prec;
  opt.cap = a.cap;
  Report rep;
  try {
    rep = run_suite(a.suite, opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(report_json(rep).dump(2) + "\n", a.out);
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic for a doubling measure that charges a rectifiable curve"};
  app.require_subcommand(1);

  MeasureArgs ma;
  auto* m = app.add_subcommand("measure", "exact mass of triadic intervals and boxes");
  m->add_option("--delta", ma.delta, "delta as a fraction p/q in (0, 1/3]");
  m->add_option("--interval", ma.interval, "1-D half-open interval lo:hi");
  m->add_option("--box", ma.box, "product box lo:hi,lo:hi,...");
  m->add_option("--d", ma.dim, "dimension (defaults to the axis count)");
  m->add_flag("--approx", ma.approx, "append a labeled decimal approximation");
  m->add_option("--out", ma.out, "write to file instead of stdout");

  KsetArgs ka;
  auto* ks = app.add_subcommand("kset", "heavy-set enumeration and tail bounds");
  ks->add_option("--delta", ka.delta, "delta as a fraction");
  ks->add_option("--n", ka.n, "triadic level")->required();
  ks->add_option("--k", ka.k, "non-1 digit budget")->required();
  ks->add_flag("--summary", ka.summary, "count, Lebesgue size, and mass");
  ks->add_flag("--list", ka.list, "stream member indices");
  ks->add_flag("--gaps", ka.gaps_flag, "stream interior gaps as lo:hi");
  ks->add_flag("--verify", ka.verify_flag, "certified tail-bound verdicts");
  ks->add_option("--cap", ka.cap, "enumeration cap");
  ks->add_option("--prec", ka.prec, "starting precision level");
  ks->add_option("--max-prec", ka.max_prec, "precision ladder cap");
  ks->add_option("--out", ka.out, "write to file instead of stdout");

  CurveArgs ca;
  auto* cv = app.add_subcommand("curve", "export curve geometry");
  cv->add_option("--delta", ca.delta, "delta as a fraction");
  cv->add_option("--d", ca.dim, "ambient dimension (>= 2)");
  cv->add_option("--n", ca.n, "single-scale level");
  cv->add_option("--k", ca.k, "single-scale digit budget");
  cv->add_option("--n1", ca.n1, "cascade base level");
  cv->add_option("--k1", ca.k1, "cascade base budget (default: derived, else 1)");
  cv->add_option("--stages", ca.stages, "cascade stages to materialize");
  cv->add_option("--format", ca.format, "json, svg, or csv");
  cv->add_flag("--tour", ca.tour, "emit the covering tour (csv only)");
  cv->add_flag("--approx", ca.approx, "csv decimals instead of fractions");
  cv->add_option("--stroke-scale", ca.stroke_scale, "svg stroke multiplier");
  cv->add_option("--cap", ca.cap, "segment cap");
  cv->add_option("--out", ca.out, "write to file instead of stdout");

  ParamsArgs pa;
  auto* ps = app.add_subcommand("params", "classify parameters and print bounds");
  ps->add_option("--delta", pa.delta, "delta as a fraction");
  ps->add_option("--d", pa.dim, "ambient dimension (>= 2)");
  ps->add_option("--n1", pa.n1, "base level to classify");
  ps->add_flag("--search", pa.search, "find the smallest StrictValid n1");
  ps->add_option("--search-cap", pa.search_cap, "largest n1 to consider");
  ps->add_option("--prec", pa.prec, "starting precision level");
  ps->add_option("--max-prec", pa.max_prec, "precision ladder cap");
  ps->add_option("--out", pa.out, "write to file instead of stdout");

  VerifyArgs va;
  auto* vf = app.add_subcommand("verify", "run a verification suite, JSON report");
  vf->add_option("--suite", va.suite,
                 "doubling, oracle, tails, gamma, cascade, tour, or all")
      ->required();
  vf->add_option("--delta", va.delta, "delta as a fraction");
  vf->add_option("--d", va.dim, "ambient dimension (>= 2)");
  vf->add_option("--n1", va.n1, "cascade base level");
  vf->add_option("--k1", va.k1, "cascade base budget (default: derived, else 1)");
  vf->add_option("--mode", va.mode, "strict or toy");
  vf->add_option("--levels", va.levels, "cascade stages to check");
  vf->add_option("--max-level", va.max_level, "triadic depth for sweeps");
  vf->add_option("--max-n", va.max_n, "largest n in the tail sweep");
  vf->add_option("--prec", va.prec, "starting precision level");
  vf->add_option("--max-prec", va.max_prec, "precision ladder cap");
  vf->add_option("--cap", va.cap, "segment cap");
  vf->add_option("--out", va.out, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*m) return cmd_measure(ma);
    if (*ks) return cmd_kset(ka);
    if (*cv) return cmd_curve(ca);
    if (*ps) return cmd_params(pa);
    if (*vf) return cmd_verify(va);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const undecided_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
