#include "desguard/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "desguard/error.hpp"

namespace desguard {

using nlohmann::json;

namespace {

class Reader {
 public:
  explicit Reader(std::string_view origin) : origin_(origin) {}

  [[noreturn]] void fail(const std::string& where, const std::string& what) const {
    throw InputError(origin_ + ": " + (where.empty() ? std::string("<root>") : where) + ": " + what);
  }

  const json& field(const json& obj, const std::string& where, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
  }

  std::string string(const json& v, const std::string& where) const {
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
  }

  std::vector<std::string> strings(const json& v, const std::string& where) const {
    if (!v.is_array()) fail(where, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(string(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
  }

  void object(const json& v, const std::string& where) const {
    if (!v.is_object()) fail(where, "expected an object");
  }

  void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool known = false;
      for (const char* k : keys) known |= it.key() == k;
      if (!known) fail(where, "unknown field \"" + it.key() + "\"");
    }
  }

  Output output(const OutputAlphabet& outputs, const json& v, const std::string& where) const {
    auto name = string(v, where);
    if (name.empty()) return std::nullopt;
    auto s = outputs.find(name);
    if (!s) fail(where, "unknown output symbol \"" + name + "\"");
    return *s;
  }

  template <class F>
  auto guard(const std::string& where, F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const InputError& e) {
      fail(where, e.what());
    }
  }

 private:
  std::string origin_;
};

Automaton read_automaton(const Reader& rd, const Alphabet& alphabet, const json& v, const std::string& where) {
  rd.object(v, where);
  rd.only_keys(v, where, {"states", "initial", "transitions"});
  auto states = rd.strings(rd.field(v, where, "states"), where + ".states");
  auto initial = rd.string(rd.field(v, where, "initial"), where + ".initial");
  const json& ts = rd.field(v, where, "transitions");
  if (!ts.is_array()) rd.fail(where + ".transitions", "expected an array of [source, event, target]");
  std::vector<Automaton::NamedTransition> named;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto at = where + ".transitions[" + std::to_string(i) + "]";
    auto t = rd.strings(ts[i], at);
    if (t.size() != 3) rd.fail(at, "expected [source, event, target]");
    named.emplace_back(t[0], t[1], t[2]);
  }
  return rd.guard(where, [&] { return Automaton::from_names(alphabet, std::move(states), initial, named); });
}

json write_automaton(const Automaton& aut) {
  json ts = json::array();
  for (const auto& t : aut.transitions())
    ts.push_back({aut.state_name(t.source), aut.alphabet().name(t.event), aut.state_name(t.target)});
  return json{{"states", aut.state_names()}, {"initial", aut.state_name(aut.initial())}, {"transitions", ts}};
}

AttackModel read_attack(const Reader& rd, const OutputAlphabet& outputs, const json& v, const std::string& where,
                        std::string& name) {
  rd.object(v, where);
  name = rd.string(rd.field(v, where, "name"), where + ".name");
  if (name.empty()) rd.fail(where + ".name", "empty attack name");
  auto kind = rd.string(rd.field(v, where, "kind"), where + ".kind");

  if (kind == "identity") {
    rd.only_keys(v, where, {"name", "kind"});
    return AttackModel::identity();
  }
  if (kind == "replacement-removal") {
    rd.only_keys(v, where, {"name", "kind", "phi"});
    const json& phi = rd.field(v, where, "phi");
    const auto at = where + ".phi";
    rd.object(phi, at);
    std::vector<OutputSet> images(outputs.size());
    std::vector<bool> seen(outputs.size(), false);
    for (auto it = phi.begin(); it != phi.end(); ++it) {
      const auto key_at = at + "." + it.key();
      auto t = outputs.find(it.key());
      if (!t) rd.fail(key_at, "unknown output symbol \"" + it.key() + "\"");
      if (!it.value().is_array()) rd.fail(key_at, "expected an array of output symbols");
      std::vector<Output> image;
      for (std::size_t i = 0; i < it.value().size(); ++i)
        image.push_back(rd.output(outputs, it.value()[i], key_at + "[" + std::to_string(i) + "]"));
      if (image.empty()) rd.fail(key_at, "empty corruption set");
      images[index(*t)] = make_output_set(std::move(image));
      seen[index(*t)] = true;
    }
    for (std::size_t t = 0; t < outputs.size(); ++t)
      if (!seen[t]) rd.fail(at, "no corruption set for output symbol \"" + outputs.table().name(t) + "\"");
    return AttackModel::replacement_removal(ReplacementRemovalMap(std::move(images)));
  }
  if (kind == "insertion-removal") {
    rd.only_keys(v, where, {"name", "kind", "alpha"});
    const auto at = where + ".alpha";
    auto names = rd.strings(rd.field(v, where, "alpha"), at);
    std::vector<Symbol> alpha;
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto t = outputs.find(names[i]);
      if (!t) rd.fail(at + "[" + std::to_string(i) + "]", "unknown output symbol \"" + names[i] + "\"");
      alpha.push_back(*t);
    }
    return AttackModel::insertion_removal(InsertionRemovalSet(std::move(alpha)));
  }
  rd.fail(where + ".kind", "unknown attack kind \"" + kind + "\"");
}

json write_attack(const OutputAlphabet& outputs, const std::string& name, const AttackModel& A) {
  json j{{"name", name}, {"kind", to_string(A.kind())}};
  auto out_name = [&](const Output& o) { return o ? outputs.name(*o) : std::string(); };
  switch (A.kind()) {
    case AttackModel::Kind::identity:
      break;
    case AttackModel::Kind::replacement_removal: {
      json phi = json::object();
      for (Symbol t : outputs.symbols()) {
        json image = json::array();
        for (const auto& o : A.phi()(t)) image.push_back(out_name(o));
        phi[outputs.name(t)] = image;
      }
      j["phi"] = phi;
      break;
    }
    case AttackModel::Kind::insertion_removal: {
      json alpha = json::array();
      const auto set = A.alpha();
      for (Symbol t : set.symbols()) alpha.push_back(outputs.name(t));
      j["alpha"] = alpha;
      break;
    }
  }
  return j;
}

}  // namespace

std::size_t ProblemFile::attack_index(std::string_view name) const {
  for (std::size_t i = 0; i < attack_names.size(); ++i)
    if (attack_names[i] == name) return i;
  throw InputError("unknown attack \"" + std::string(name) + "\"");
}

ProblemFile parse_problem(std::string_view text, std::string_view origin) {
  Reader rd(origin);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    rd.fail("", std::string("malformed JSON: ") + e.what());
  }
  rd.object(doc, "");
  rd.only_keys(doc, "", {"schema", "description", "events", "controllable", "outputs", "observation", "plant",
                         "spec", "attacks"});
  auto schema = rd.string(rd.field(doc, "", "schema"), "schema");
  if (schema != kSchemaVersion)
    rd.fail("schema", "unsupported schema version \"" + schema + "\" (expected \"" + std::string(kSchemaVersion) + "\")");

  ProblemFile p;
  auto events = rd.strings(rd.field(doc, "", "events"), "events");
  auto controllable = rd.strings(rd.field(doc, "", "controllable"), "controllable");
  p.alphabet = rd.guard("events", [&] { return Alphabet(events, controllable); });
  auto outputs = rd.strings(rd.field(doc, "", "outputs"), "outputs");
  p.outputs = rd.guard("outputs", [&] { return OutputAlphabet(outputs); });

  const json& obs = rd.field(doc, "", "observation");
  rd.object(obs, "observation");
  std::vector<Output> table(p.alphabet.size());
  std::vector<bool> seen(p.alphabet.size(), false);
  for (auto it = obs.begin(); it != obs.end(); ++it) {
    const auto at = "observation." + it.key();
    auto e = p.alphabet.find(it.key());
    if (!e) rd.fail(at, "unknown event \"" + it.key() + "\"");
    table[index(*e)] = rd.output(p.outputs, it.value(), at);
    seen[index(*e)] = true;
  }
  for (Event e : p.alphabet.events())
    if (!seen[index(e)]) rd.fail("observation", "no output for event \"" + p.alphabet.name(e) + "\"");
  p.observation = ObservationMap(p.outputs, std::move(table));

  p.plant = read_automaton(rd, p.alphabet, rd.field(doc, "", "plant"), "plant");
  p.spec = read_automaton(rd, p.alphabet, rd.field(doc, "", "spec"), "spec");
  if (auto w = find_sublanguage_violation(p.plant, p.spec))
    rd.fail("spec", "word \"" + p.alphabet.format(*w) + "\" is generated by spec but not by plant");

  const json& attacks = rd.field(doc, "", "attacks");
  if (!attacks.is_array()) rd.fail("attacks", "expected an array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < attacks.size(); ++i) {
    const auto at = "attacks[" + std::to_string(i) + "]";
    std::string name;
    p.attacks.push_back(read_attack(rd, p.outputs, attacks[i], at, name));
    if (!names.insert(name).second) rd.fail(at + ".name", "duplicate attack name \"" + name + "\"");
    p.attack_names.push_back(name);
  }
  return p;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str(), path.string());
}

std::string to_json(const ProblemFile& p) {
  json obs = json::object();
  for (Event e : p.alphabet.events()) {
    const auto& o = p.observation(e);
    obs[p.alphabet.name(e)] = o ? p.outputs.name(*o) : std::string();
  }
  std::vector<std::string> controllable;
  for (Event e : p.alphabet.controllable_events()) controllable.push_back(p.alphabet.name(e));
  json attacks = json::array();
  for (std::size_t i = 0; i < p.attacks.size(); ++i)
    attacks.push_back(write_attack(p.outputs, p.attack_names[i], p.attacks[i]));

  json doc = json::object();
  doc["schema"] = kSchemaVersion;
  doc["events"] = p.alphabet.table().names();
  doc["controllable"] = controllable;
  doc["outputs"] = p.outputs.table().names();
  doc["observation"] = obs;
  doc["plant"] = write_automaton(p.plant);
  doc["spec"] = write_automaton(p.spec);
  doc["attacks"] = attacks;
  return doc.dump(2) + "\n";
}

void save_problem(const ProblemFile& problem, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ": cannot write file");
  out << to_json(problem);
}

bool same_problem(const ProblemFile& a, const ProblemFile& b) {
  auto same_aut = [](const Automaton& x, const Automaton& y) {
    if (!(x.alphabet() == y.alphabet()) || x.state_names() != y.state_names() || x.initial() != y.initial())
      return false;
    auto tx = x.transitions();
    auto ty = y.transitions();
    if (tx.size() != ty.size()) return false;
    for (std::size_t i = 0; i < tx.size(); ++i)
      if (tx[i].source != ty[i].source || tx[i].event != ty[i].event || tx[i].target != ty[i].target) return false;
    return true;
  };
  return a.alphabet == b.alphabet && a.outputs == b.outputs && a.observation == b.observation &&
         same_aut(a.plant, b.plant) && same_aut(a.spec, b.spec) && a.attack_names == b.attack_names &&
         a.attacks == b.attacks;
}

}  // namespace desguard
