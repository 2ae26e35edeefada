#include "desguard/report.hpp"

#include <json.hpp>

#include "desguard/error.hpp"

namespace desguard {

using nlohmann::ordered_json;

namespace {

ordered_json to_json(const WitnessReport& r) {
  ordered_json j;
  j["staying"] = r.staying;
  j["escaping"] = r.escaping;
  j["event"] = r.event;
  j["staying_attack"] = r.staying_attack;
  j["escaping_attack"] = r.escaping_attack;
  j["shared_output"] = r.shared_output ? ordered_json(*r.shared_output) : ordered_json(nullptr);
  return j;
}

}  // namespace

WitnessReport make_witness_report(const ProblemFile& p, const ObservabilityWitness& w) {
  if (!validate_witness(p.plant, p.spec, p.observation, p.attacks, w))
    throw Error("observability witness failed re-validation");
  WitnessReport r;
  r.staying = p.alphabet.format(w.staying);
  r.escaping = p.alphabet.format(w.escaping);
  r.event = p.alphabet.name(w.event);
  r.staying_attack = p.attack_names.at(w.staying_attack);
  r.escaping_attack = p.attack_names.at(w.escaping_attack);
  if (w.shared_output) r.shared_output = p.outputs.format(*w.shared_output);
  return r;
}

std::string format_controllability(const ProblemFile& p, const ControllabilityVerdict& v) {
  ordered_json j;
  j["property"] = "controllability";
  j["holds"] = v.holds;
  if (v.witness) {
    j["word"] = p.alphabet.format(v.witness->word);
    j["event"] = p.alphabet.name(v.witness->event);
  }
  return j.dump(2) + "\n";
}

std::string format_observability(const ProblemFile& p, const ObservabilityVerdict& v,
                                 const std::vector<WitnessReport>& violations) {
  ordered_json j;
  j["property"] = "observability";
  j["holds"] = v.holds;
  j["method"] = to_string(v.method);
  j["attacks"] = p.attack_names;
  if (!violations.empty()) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : violations) arr.push_back(to_json(r));
    j["violations"] = arr;
  }
  return j.dump(2) + "\n";
}

std::string format_closed_loop(const ProblemFile& p, const ClosedLoopReport& report) {
  ordered_json j;
  j["property"] = "closed-loop";
  j["depth"] = report.depth;
  j["controllable"] = report.controllability.holds;
  j["observable"] = report.observability.holds;
  j["spec_words"] = report.spec_language.size();
  ordered_json loops = ordered_json::array();
  for (const auto& l : report.loops) {
    ordered_json e;
    e["attack"] = p.attack_names.at(l.attack);
    e["lmax_words"] = l.lmax.size();
    e["lmin_words"] = l.lmin.size();
    e["lmax_equals_spec"] = l.lmax == report.spec_language;
    e["lmin_equals_spec"] = l.lmin == report.spec_language;
    loops.push_back(e);
  }
  j["loops"] = loops;
  j["languages_match"] = report.languages_match;
  if (report.discrepancy) {
    ordered_json d;
    d["attack"] = p.attack_names.at(report.discrepancy->attack);
    d["word"] = p.alphabet.format(report.discrepancy->word);
    d["kind"] = report.discrepancy->kind == Discrepancy::Kind::beyond_spec ? "outside-spec" : "blocked-spec";
    j["discrepancy"] = d;
  }
  return j.dump(2) + "\n";
}

}  // namespace desguard
