#include "arbor/criterion/json.hpp"

namespace arbor {

using nlohmann::json;

json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return to_string(x);
}

json rational_json(const Rational& x) {
  if (is_integer(x)) return integer_json(x.get_num());
  return to_string(x);
}

json map_json(const UnicriticalMap& f) { return {{"p", f.p}, {"n", f.n}, {"c", rational_json(f.c)}}; }

json orbit_json(const OrbitResult& r) {
  if (const auto* o = std::get_if<CriticalOrbit>(&r)) {
    json pts = json::array();
    for (const auto& z : o->points) pts.push_back(rational_json(z));
    return {{"pcf", true}, {"points", pts}, {"N", o->N}, {"tail", o->tail_length}, {"cycle", o->cycle_length}};
  }
  const auto& n = std::get<NotPCF>(r);
  return {{"pcf", false},
          {"certificate",
           {{"reason", n.reason == NotPCF::Reason::Escape ? "escape" : "denominator"},
            {"index", n.index},
            {"value", rational_json(n.value)},
            {"bound", rational_json(n.bound)}}}};
}

json profile_json(const GaloisProfile& P) {
  json levels = json::array();
  for (const auto& l : P.levels) {
    json lv{{"level", l.level}, {"degree", l.degree}};
    if (P.map.degree() == 2) {
      json classes = json::array();
      for (const auto& x : l.new_square_classes) classes.push_back(x.to_string());
      lv["new_square_classes"] = classes;
    }
    levels.push_back(lv);
  }
  return {{"map", map_json(P.map)}, {"alpha", rational_json(P.alpha)}, {"levels", levels}};
}

json frobenius_json(const std::vector<FrobeniusSample>& s) {
  json out = json::array();
  for (const auto& x : s) out.push_back({{"q", x.q}, {"degrees", x.degrees}, {"lcm", x.lcm()}});
  return out;
}

json bracket_json(const GNBracket& b) {
  json samples = json::array();
  for (const auto& [a, d] : b.samples) samples.push_back({{"alpha", rational_json(a)}, {"degree", d}});
  return {{"N", b.N},
          {"lower", integer_json(b.lower)},
          {"upper", integer_json(b.upper)},
          {"certified", b.certified},
          {"samples", samples}};
}

json candidates_json(const ConstantCandidates& c) {
  json out = json::object();
  for (const auto& r : c) {
    json rec{{"status", to_string(r.status)}};
    if (r.status != CandidateStatus::Untested) rec["depth"] = r.depth;
    if (r.witness) rec["witness"] = rational_json(*r.witness);
    if (r.status == CandidateStatus::Supported) rec["evidence_only"] = true;
    out[std::to_string(r.d)] = rec;
  }
  return out;
}

json evaluation_json(const CriterionEvaluation& e) {
  json out{{"lhs", integer_json(e.lhs)}, {"verdict", to_string(e.verdict)}};
  if (e.verdict == Verdict::Interval) {
    out["rhs"] = {integer_json(e.rhs_lower), integer_json(e.rhs_upper)};
    out["endpoint_verdicts"] = {to_string(e.endpoint_verdicts->first), to_string(e.endpoint_verdicts->second)};
  } else {
    out["rhs"] = integer_json(e.rhs_upper);
  }
  return out;
}

json report_json(const CriterionReport& r) {
  json hyps = json::array();
  json conditions = json::array();
  for (const auto& h : r.hypotheses) {
    json e = evaluation_json(h.evaluation);
    e["basis"] = h.hypothesis.basis;
    e["rank"] = h.hypothesis.rank();
    e["status"] = to_string(h.status);
    hyps.push_back(e);
    if (h.status != HypothesisStatus::Pruned) conditions.push_back(h.hypothesis.to_string() + ": " + e["verdict"].get<std::string>());
  }
  json out{{"schema", kSchema},
           {"map", map_json(r.map)},
           {"alpha", rational_json(r.alpha)},
           {"N", r.N},
           {"bracket", bracket_json(r.bracket)},
           {"constants_depth", r.constants_depth},
           {"constants", candidates_json(r.constants)},
           {"hypotheses", hyps},
           {"evidence_hypothesis", r.evidence_hypothesis.basis},
           {"overall", to_string(r.overall)}};
  if (r.overall == Overall::Conditional) out["conditional_on"] = conditions;
  return out;
}

}  // namespace arbor
