#include "schelling/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace schelling::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json edges_to_json(const std::vector<std::pair<int, int>>& edges) {
  json arr = json::array();
  for (const auto& [u, v] : edges) arr.push_back(json::array({u, v}));
  return arr;
}

std::vector<std::pair<int, int>> edges_from_json(const json& arr) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2) throw std::runtime_error("malformed edge entry");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return edges;
}

json utility_to_json(const UtilityModel& model) {
  json out;
  if (std::holds_alternative<FractionalUtility>(model)) {
    out["model"] = "fractional";
  } else if (std::holds_alternative<ModifiedFractionalUtility>(model)) {
    out["model"] = "modified";
  } else {
    const auto& lin = std::get<LinearUtility>(model);
    out["model"] = "linear";
    out["alpha"] = lin.alpha.str();
    out["beta"] = lin.beta.str();
  }
  return out;
}

UtilityModel utility_from_json(const json& j) {
  std::string model = j.at("model").get<std::string>();
  if (model == "fractional") return FractionalUtility{};
  if (model == "modified") return ModifiedFractionalUtility{};
  if (model == "linear")
    return LinearUtility{Rational::from_string(j.at("alpha").get<std::string>()),
                         Rational::from_string(j.at("beta").get<std::string>())};
  throw std::runtime_error("unknown utility model '" + model + "'");
}

}  // namespace

std::string instance_to_json(const GameInstance& instance) {
  // nlohmann's default json keeps object keys sorted, which is exactly the
  // canonical form the round-trip tests pin down.
  json doc;
  doc["mode"] = instance.typed_mode() ? "typed" : "social";
  doc["topology"]["node_count"] = instance.topology().node_count;
  doc["topology"]["edges"] = edges_to_json(instance.topology().edges);

  json agents = json::array();
  for (int i = 0; i < instance.agent_count(); ++i) {
    json a;
    a["id"] = i;
    a["kind"] = instance.is_stubborn(i) ? "stubborn" : "strategic";
    if (instance.typed_mode()) a["type"] = instance.type_of(i);
    if (auto p = instance.pin(i)) a["node"] = *p;
    agents.push_back(a);
  }
  doc["agents"] = agents;

  if (!instance.typed_mode())
    doc["social_edges"] =
        edges_to_json(std::get<SocialFriendship>(instance.friendship()).edges);
  doc["utility"] = utility_to_json(instance.utility_model());
  return doc.dump(2) + "\n";
}

GameInstance instance_from_json(const std::string& text) {
  json doc = json::parse(text);
  std::string mode = doc.at("mode").get<std::string>();
  Topology topo(doc.at("topology").at("node_count").get<int>(),
                edges_from_json(doc.at("topology").at("edges")));

  const auto& agents = doc.at("agents");
  int n = static_cast<int>(agents.size());
  std::vector<std::optional<int>> pins(n, std::nullopt);
  std::vector<int> types(n, 0);
  int max_type = -1;
  for (const auto& a : agents) {
    int id = a.at("id").get<int>();
    if (id < 0 || id >= n) throw std::runtime_error("agent ids must be dense 0..n-1");
    bool stubborn = a.at("kind").get<std::string>() == "stubborn";
    if (stubborn) pins[id] = a.at("node").get<int>();
    if (mode == "typed") {
      types[id] = a.at("type").get<int>();
      max_type = std::max(max_type, types[id]);
    }
  }

  FriendshipSpec friendship;
  if (mode == "typed") {
    friendship = TypedFriendship{max_type + 1, std::move(types)};
  } else if (mode == "social") {
    std::vector<std::pair<int, int>> social;
    if (doc.contains("social_edges")) social = edges_from_json(doc.at("social_edges"));
    friendship = SocialFriendship{std::move(social)};
  } else {
    throw std::runtime_error("unknown mode '" + mode + "'");
  }
  return GameInstance(std::move(topo), std::move(pins), std::move(friendship),
                      utility_from_json(doc.at("utility")));
}

GameInstance read_instance_file(const std::string& path) {
  return instance_from_json(slurp(path));
}

void write_instance_file(const GameInstance& instance, const std::string& path) {
  spit(path, instance_to_json(instance));
}

std::string assignment_to_json(const Assignment& assignment) {
  json doc;
  doc["node_of"] = assignment.node_of;
  return doc.dump(2) + "\n";
}

Assignment assignment_from_json(const std::string& text) {
  json doc = json::parse(text);
  Assignment a;
  a.node_of = doc.at("node_of").get<std::vector<int>>();
  return a;
}

Assignment read_assignment_file(const std::string& path) {
  return assignment_from_json(slurp(path));
}

instances::ExternalGraph read_external_graph(const std::string& path) {
  std::istringstream in(slurp(path));
  instances::ExternalGraph g;
  std::string line;
  bool have_count = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream fields(line);
    if (!have_count) {
      if (fields >> g.vertex_count) have_count = true;
      continue;
    }
    int u, v;
    if (!(fields >> u)) continue;
    if (!(fields >> v))
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 'u v'");
    g.edges.push_back({u, v});
  }
  if (!have_count) throw std::runtime_error(path + ": missing vertex count line");
  return g;
}

void write_external_graph(const instances::ExternalGraph& graph, const std::string& path) {
  std::ostringstream out;
  out << graph.vertex_count << "\n";
  for (const auto& [u, v] : graph.edges) out << u << " " << v << "\n";
  spit(path, out.str());
}

std::string trace_to_text(const dynamics::DynamicsTrace& trace) {
  std::ostringstream out;
  int i = 0;
  for (const auto& s : trace.steps) {
    out << "step=" << ++i << " agent=" << s.agent << " from=" << s.from << " to=" << s.to
        << " old=" << s.old_utility.str() << " new=" << s.new_utility.str();
    if (s.potential_before)
      out << " phi_before=" << s.potential_before->str()
          << " phi_after=" << s.potential_after->str();
    out << "\n";
  }
  out << "outcome="
      << (trace.outcome == dynamics::DynamicsTrace::Outcome::Converged ? "converged"
                                                                       : "step-limit")
      << " steps=" << trace.steps.size() << "\n";
  return out.str();
}

}  // namespace schelling::io
