#include "flexbh/serialize.hpp"

#include <stdexcept>
#include <string>

namespace flexbh {

namespace {

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw std::invalid_argument(std::string(what) + " holds a non-integer");
    out.push_back(v.get<int>());
  }
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_key(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw std::invalid_argument("bad index key \"" + s + "\"");
  return v;
}

}  // namespace

Json topology_to_json(const NetworkTopology& t) {
  Json j;
  j["K"] = t.K();
  j["model"] = t.model().name();
  if (t.model().kind == ModelKind::kLocallyConnected)
    j["L"] = t.model().L;
  else
    j["L"] = nullptr;
  return j;
}

NetworkTopology topology_from_json(const Json& j) {
  const Json& k = field(j, "K");
  const Json& m = field(j, "model");
  if (!k.is_number_integer() || !m.is_string()) throw std::invalid_argument("topology needs integer K and string model");
  int L = 0;
  if (j.contains("L") && !j.at("L").is_null()) {
    if (!j.at("L").is_number_integer()) throw std::invalid_argument("L must be an integer");
    L = j.at("L").get<int>();
  }
  return build_topology(k.get<int>(), ModelDescriptor::from_name(m.get<std::string>(), L));
}

Json assignment_to_json(const MessageAssignment& a) {
  Json j;
  j["K"] = a.K();
  j["transmit_sets"] = a.transmit_sets();
  return j;
}

MessageAssignment assignment_from_json(const Json& j) {
  const Json& k = field(j, "K");
  const Json& sets = field(j, "transmit_sets");
  if (!k.is_number_integer() || !sets.is_array()) throw std::invalid_argument("assignment needs integer K and a list of sets");
  std::vector<std::vector<int>> ts;
  for (const auto& s : sets) ts.push_back(int_list(s, "transmit set"));
  return MessageAssignment(k.get<int>(), std::move(ts));
}

Json scheme_to_json(const ZFScheme& s) {
  Json j;
  j["assignment"] = assignment_to_json(s.assignment);
  j["served"] = s.served;
  j["deactivated_tx"] = s.deactivated_tx;
  Json c = Json::object();
  for (const auto& [i, set] : s.cancellation_sets) c[std::to_string(i)] = set;
  j["cancellation_sets"] = c;
  if (!s.beams.empty()) {
    Json b = Json::object();
    for (const auto& [i, beam] : s.beams) {
      Json row = Json::object();
      for (const auto& [tx, v] : beam) row[std::to_string(tx)] = to_string(v);
      b[std::to_string(i)] = row;
    }
    j["beams"] = b;
  }
  return j;
}

ZFScheme scheme_from_json(const Json& j) {
  ZFScheme s{assignment_from_json(field(j, "assignment")), int_list(field(j, "served"), "served"),
             int_list(field(j, "deactivated_tx"), "deactivated_tx"), {}, {}};
  const Json& c = field(j, "cancellation_sets");
  if (!c.is_object()) throw std::invalid_argument("cancellation_sets must be an object");
  for (const auto& [key, v] : c.items()) s.cancellation_sets[int_key(key)] = int_list(v, "cancellation set");
  if (j.contains("beams")) {
    const Json& b = j.at("beams");
    if (!b.is_object()) throw std::invalid_argument("beams must be an object");
    for (const auto& [key, row] : b.items()) {
      if (!row.is_object()) throw std::invalid_argument("beam must be an object");
      auto& beam = s.beams[int_key(key)];
      for (const auto& [tx, v] : row.items()) {
        if (!v.is_string()) throw std::invalid_argument("beam coefficients must be \"p/q\" strings");
        beam[int_key(tx)] = parse_rational(v.get<std::string>());
      }
    }
  }
  s.validate();
  return s;
}

Json dof_to_json(const DoFResult& r) {
  Json j;
  j["sum_dof"] = r.sum_dof;
  j["per_user"] = r.per_user;
  j["fraction"] = to_string(r.fraction);
  return j;
}

Json witness_to_json(const BoundWitness& w) {
  Json j;
  j["M"] = w.M;
  j["S"] = w.S;
  j["A_bar"] = w.A_bar;
  j["bound"] = w.bound;
  return j;
}

Json periodic_to_json(const PeriodicScheme& p) {
  Json j;
  j["period"] = p.period;
  j["model"] = p.model.name();
  j["L"] = p.model.kind == ModelKind::kLocallyConnected ? Json(p.model.L) : Json(nullptr);
  j["isolation"] = p.isolation == Isolation::kSevered ? "severed" : "zero_forced";
  j["served"] = p.served;
  j["transmit_sets"] = p.transmit_sets;
  j["fraction"] = to_string(p.fraction);
  j["backhaul"] = to_string(p.backhaul);
  return j;
}

}  // namespace flexbh
