#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "triadic/enclosure.hpp"
#include "triadic/geometry.hpp"

namespace triadic {

inline constexpr const char* kToolVersion = "0.1.0";

// Parameters echoed into every report so verdicts are reproducible from the
// report alone. Unset fields are omitted from the JSON.
struct ParamEcho {
  std::optional<Rat> delta;
  std::optional<unsigned long> d, n, k, n1, k1;
  std::optional<std::string> mode;
};

// One verified statement. Exact quantities are serialized as fraction
// strings; `ms` is the only field allowed to vary between identical runs.
struct CheckResult {
  std::string name;
  std::string anchor;
  std::optional<Rat> lhs;
  std::optional<Bounds> bound;
  Cert verdict = Cert::Undecided;
  long ms = 0;
};

struct Report {
  std::string version = kToolVersion;
  ParamEcho params;
  std::vector<CheckResult> checks;

  bool any_fail() const;
  bool any_undecided() const;
  // 0 all pass, 1 any fail, 4 undecided only.
  int exit_code() const;
};

// "pass" / "fail" / "undecided".
std::string verdict_str(Cert c);

nlohmann::ordered_json report_json(const Report& r);

// [{axis, fixed: [...], span: [lo, hi]}, ...] with fraction strings.
nlohmann::ordered_json segments_json(const SegmentSet& s);

}  // namespace triadic
