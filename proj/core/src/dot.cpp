#include "cpm/dot.hpp"

#include <map>
#include <sstream>
#include <utility>
#include <vector>

namespace cpm {

namespace {

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string joined(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

using EdgeLabels = std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>>;

void write_edges(std::ostringstream& out, const EdgeLabels& edges, const char* prefix) {
  for (const auto& [e, agents] : edges) {
    out << "  " << prefix << e.first << " -- " << prefix << e.second
        << " [label=" << quoted(joined(agents, ",")) << "];\n";
  }
}

}  // namespace

std::string model_to_dot(const EpistemicModel& model) {
  std::ostringstream out;
  out << "graph model {\n";
  for (WorldIndex w = 0; w < model.size(); ++w) {
    std::vector<std::string> props;
    for (const auto& p : model.world(w).label) props.push_back(p.name());
    out << "  w" << w << " [label=" << quoted(model.world(w).id.str() + "\n" + joined(props, ", "))
        << "];\n";
  }
  EdgeLabels edges;
  for (std::size_t a = 0; a < model.agents().size(); ++a) {
    for (const auto& cls : model.relation(a).classes()) {
      for (std::size_t i = 0; i < cls.size(); ++i) {
        for (std::size_t j = i + 1; j < cls.size(); ++j) edges[{cls[i], cls[j]}].push_back(model.agents()[a]);
      }
    }
  }
  write_edges(out, edges, "w");
  out << "}\n";
  return out.str();
}

std::string graph_to_dot(const CommunicationGraph& graph) {
  std::ostringstream out;
  out << "digraph " << quoted(graph.id()) << " {\n";
  for (const auto& a : graph.roster()) out << "  " << quoted(a) << ";\n";
  for (auto [from, to] : graph.edges()) {
    out << "  " << quoted(graph.roster()[from]) << " -> " << quoted(graph.roster()[to]) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string cpm_to_dot(const CommPatternModel& patterns) {
  const auto& roster = patterns.agents();
  std::ostringstream out;
  out << "graph patterns {\n";
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    const auto& cp = patterns.pattern(p);
    std::vector<std::string> heard;
    for (std::size_t a = 0; a < roster.size(); ++a) {
      if (cp.inneigh[a].empty()) continue;
      std::vector<std::string> senders;
      for (auto s : cp.inneigh[a]) senders.push_back(roster[s]);
      heard.push_back(roster[a] + "<-{" + joined(senders, ",") + "}");
    }
    out << "  p" << p << " [label="
        << quoted(cp.id + "\npre: " + print_formula(cp.pre) +
                  (heard.empty() ? "" : "\n" + joined(heard, " ")))
        << "];\n";
  }
  EdgeLabels edges;
  for (std::size_t a = 0; a < roster.size(); ++a) {
    for (const auto& cls : patterns.relation(a).classes()) {
      for (std::size_t i = 0; i < cls.size(); ++i) {
        for (std::size_t j = i + 1; j < cls.size(); ++j) edges[{cls[i], cls[j]}].push_back(roster[a]);
      }
    }
  }
  write_edges(out, edges, "p");
  out << "}\n";
  return out.str();
}

std::string action_model_to_dot(const ActionModel& action) {
  const auto& roster = action.agents();
  std::ostringstream out;
  out << "graph events {\n";
  for (std::size_t e = 0; e < action.size(); ++e) {
    out << "  e" << e << " [label="
        << quoted(action.event(e).id + "\npre: " + print_formula(action.event(e).pre)) << "];\n";
  }
  EdgeLabels edges;
  for (std::size_t a = 0; a < roster.size(); ++a) {
    for (auto [x, y] : action.relation(a)) {
      if (x == y) continue;
      auto key = std::minmax(x, y);
      auto& agents = edges[{key.first, key.second}];
      if (agents.empty() || agents.back() != roster[a]) agents.push_back(roster[a]);
    }
  }
  write_edges(out, edges, "e");
  out << "}\n";
  return out.str();
}

}  // namespace cpm
