#include "triadic/report.hpp"

namespace triadic {

bool Report::any_fail() const {
  for (const auto& c : checks) {
    if (c.verdict == Cert::No) return true;
  }
  return false;
}

bool Report::any_undecided() const {
  for (const auto& c : checks) {
    if (c.verdict == Cert::Undecided) return true;
  }
  return false;
}

int Report::exit_code() const {
  if (any_fail()) return 1;
  if (any_undecided()) return 4;
  return 0;
}

std::string verdict_str(Cert c) {
  switch (c) {
    case Cert::Yes: return "pass";
    case Cert::No: return "fail";
    default: return "undecided";
  }
}

nlohmann::ordered_json report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["version"] = r.version;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  if (r.params.delta) params["delta"] = r.params.delta->str();
  if (r.params.d) params["d"] = *r.params.d;
  if (r.params.n) params["n"] = *r.params.n;
  if (r.params.k) params["k"] = *r.params.k;
  if (r.params.n1) params["n1"] = *r.params.n1;
  if (r.params.k1) params["k1"] = *r.params.k1;
  if (r.params.mode) params["mode"] = *r.params.mode;
  j["params"] = std::move(params);
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["anchor"] = c.anchor;
    if (c.lhs) jc["lhs"] = c.lhs->str();
    if (c.bound) {
      jc["bound"] = {{"lo", c.bound->lo().str()}, {"hi", c.bound->hi().str()}};
    }
    jc["verdict"] = verdict_str(c.verdict);
    jc["ms"] = c.ms;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  return j;
}

nlohmann::ordered_json segments_json(const SegmentSet& s) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& seg : s.segments()) {
    nlohmann::ordered_json js;
    js["axis"] = seg.axis;
    nlohmann::ordered_json fixed = nlohmann::ordered_json::array();
    for (const auto& f : seg.fixed) fixed.push_back(f.str());
    js["fixed"] = std::move(fixed);
    js["span"] = {seg.lo.str(), seg.hi.str()};
    arr.push_back(std::move(js));
  }
  return arr;
}

}  // namespace triadic
