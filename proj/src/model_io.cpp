#include "pnts/model_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pnts/error.hpp"

namespace pnts::io {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) {
    // Shortest round-trip decimal of the double, read back exactly.
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), j.get<double>());
    if (ec != std::errc()) throw ModelError("cannot format number");
    return Rational::parse(std::string_view(buf.data(), static_cast<std::size_t>(end - buf.data())));
  }
  throw ModelError("expected a rational, got " + j.dump());
}

Json rational_to_json(const Rational& r, bool as_float) {
  if (as_float) return r.to_double();
  return r.str();
}

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ModelError(std::string("missing field '") + key + "' in " + j.dump());
  return j.at(key);
}

StateId state_by_name(const PntsBuilder& b, const std::string& name) {
  if (auto x = b.find_state(name)) return *x;
  throw ModelError("unknown state '" + name + "'");
}

}  // namespace

Pnts model_from_json(const Json& j) {
  PntsBuilder b;
  for (const auto& s : member(j, "states")) b.add_state(s.get<std::string>());
  const std::size_t n = b.num_states();

  std::vector<std::pair<std::string, std::string>> complements;
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) {
      if (l.is_string()) {
        b.add_label(l.get<std::string>());
        continue;
      }
      const auto name = member(l, "name").get<std::string>();
      const bool co = l.contains("co") && !l.at("co").is_null();
      b.add_label(name, co ? LabelKind::co_name : LabelKind::plain);
      if (co) complements.emplace_back(name, l.at("co").get<std::string>());
    }
  }
  for (const auto& t : member(j, "transitions")) {
    const auto label = member(t, "label").get<std::string>();
    if (!b.find_label(label)) b.add_label(label);
  }
  for (const auto& [a, co] : complements) {
    auto ca = b.find_label(co);
    if (!ca) throw ModelError("label '" + a + "' names unknown complement '" + co + "'");
    b.set_complement(*b.find_label(a), *ca);
  }

  for (const auto& t : member(j, "transitions")) {
    const StateId from = state_by_name(b, member(t, "from").get<std::string>());
    const LabelId a = *b.find_label(member(t, "label").get<std::string>());
    std::vector<Rational> p(n);
    for (const auto& [target, prob] : member(t, "dist").items())
      p[state_by_name(b, target)] += rational_from_json(prob);
    b.add_transition(from, a, Distribution(std::move(p)));
  }

  if (j.contains("props")) {
    for (const auto& [name, values] : j.at("props").items()) {
      std::vector<Rational> v(n);
      bool unit = true;
      for (const auto& [s, val] : values.items()) {
        v[state_by_name(b, s)] = rational_from_json(val);
      }
      for (const auto& r : v)
        if (r.sign() < 0 || r > Rational(1)) unit = false;
      b.set_prop(name, Valuation(std::move(v), unit));
    }
  }
  return b.build();
}

Json model_to_json(const Pnts& m) {
  Json j;
  j["states"] = m.state_names();
  Json labels = Json::array();
  for (const auto& l : m.labels()) {
    Json e;
    e["name"] = l.name;
    if (l.complement && l.kind == LabelKind::co_name) e["co"] = m.label(*l.complement).name;
    labels.push_back(std::move(e));
  }
  j["labels"] = std::move(labels);
  Json trans = Json::array();
  for (StateId x = 0; x < m.num_states(); ++x)
    for (LabelId a = 0; a < m.num_labels(); ++a)
      for (const auto& mu : m.successors(x, a)) {
        Json t;
        t["from"] = m.state_name(x);
        t["label"] = m.label(a).name;
        Json d = Json::object();
        for (StateId y : mu.support()) d[m.state_name(y)] = mu[y].str();
        t["dist"] = std::move(d);
        trans.push_back(std::move(t));
      }
  j["transitions"] = std::move(trans);
  if (!m.props().empty()) {
    Json props = Json::object();
    for (const auto& [name, v] : m.props()) props[name] = valuation_to_json(v, m);
    j["props"] = std::move(props);
  }
  return j;
}

Pnts parse_model(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), e.byte);
  }
  try {
    return model_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("model JSON: ") + e.what());
  }
}

Pnts load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

Partition partition_from_json(const Json& j, const Pnts& m) {
  if (!j.is_array()) throw ModelError("partition must be a list of state-name lists");
  std::vector<std::vector<StateId>> blocks;
  for (const auto& block : j) {
    auto& out = blocks.emplace_back();
    for (const auto& s : block) out.push_back(m.state(s.get<std::string>()));
  }
  return Partition::from_blocks(std::move(blocks), m.num_states());
}

Json partition_to_json(const Partition& p, const Pnts& m) {
  Json j = Json::array();
  for (const auto& block : p.blocks()) {
    Json b = Json::array();
    for (StateId x : block) b.push_back(m.state_name(x));
    j.push_back(std::move(b));
  }
  return j;
}

Valuation valuation_from_json(const Json& j, const Pnts& m, bool unit_interval) {
  if (!j.is_object()) throw ModelError("valuation must be an object mapping states to rationals");
  std::vector<Rational> v(m.num_states());
  for (const auto& [s, val] : j.items()) v[m.state(s)] = rational_from_json(val);
  return Valuation(std::move(v), unit_interval);
}

Json valuation_to_json(const Valuation& f, const Pnts& m, bool as_float) {
  Json j = Json::object();
  for (StateId x = 0; x < f.size(); ++x) j[m.state_name(x)] = rational_to_json(f[x], as_float);
  return j;
}

Json read_json_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
      return Json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw ModelError("cannot open JSON file " + arg);
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON argument: ") + e.what(), e.byte);
  }
}

std::string to_dot(const Pnts& m) {
  std::ostringstream os;
  os << "digraph pnts {\n";
  for (StateId x = 0; x < m.num_states(); ++x)
    os << "  s" << x << " [label=\"" << m.state_name(x) << "\"];\n";
  std::size_t node = 0;
  for (StateId x = 0; x < m.num_states(); ++x)
    for (LabelId a = 0; a < m.num_labels(); ++a)
      for (const auto& mu : m.successors(x, a)) {
        os << "  d" << node << " [shape=point];\n";
        os << "  s" << x << " -> d" << node << " [label=\"" << m.label(a).name << "\"];\n";
        for (StateId y : mu.support())
          os << "  d" << node << " -> s" << y << " [style=dotted,label=\"" << mu[y] << "\"];\n";
        ++node;
      }
  os << "}\n";
  return os.str();
}

}  // namespace pnts::io
