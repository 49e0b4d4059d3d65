#include "ribbon/graph_json.hpp"

#include "ribbon/error.hpp"

namespace ribbon {

std::vector<std::vector<int>> cycles_1based(const Perm& p) {
  std::vector<std::vector<int>> out;
  for (auto c : orbits(p).cycles) {
    for (int& x : c) ++x;
    out.push_back(std::move(c));
  }
  return out;
}

MarkedMetricGraph graph_from_json(const json& j) {
  try {
    int n = j.at("sides").get<int>();
    auto c0 = j.at("sigma0").get<std::vector<std::vector<int>>>();
    auto c1 = j.at("sigma1").get<std::vector<std::vector<int>>>();
    MarkedMetricGraph g{RibbonGraph::from_cycles(n, c0, c1), {}, {}};
    if (j.contains("marking")) {
      for (const auto& [label, t] : j.at("marking").items()) {
        auto kind = t.at("kind").get<std::string>();
        auto orbit = t.at("orbit").get<std::vector<int>>();
        if (orbit.empty()) fail(ErrorKind::BadMarking, "empty orbit for " + label);
        MarkKind k;
        if (kind == "hole") k = MarkKind::Hole;
        else if (kind == "vertex") k = MarkKind::Vertex;
        else fail(ErrorKind::BadMarking, "unknown marking kind " + kind);
        int s = orbit.front() - 1;
        if (s < 0 || s >= n) fail(ErrorKind::BadMarking, "orbit side out of range for " + label);
        // the listed orbit must be the actual orbit
        auto o = k == MarkKind::Hole ? g.graph.holes() : g.graph.vertices();
        const auto& cyc = o.cycles[o.of[s]];
        if (cyc.size() != orbit.size()) fail(ErrorKind::BadMarking, "orbit mismatch for " + label);
        for (int x : orbit)
          if (x < 1 || x > n || o.of[x - 1] != o.of[s]) fail(ErrorKind::BadMarking, "orbit mismatch for " + label);
        g.marking[label] = {k, cyc.front()};
      }
    }
    check_marking(g.graph, g.marking, false);
    g.length.assign(n, Rational(1));
    if (j.contains("lengths")) {
      for (const auto& [id, v] : j.at("lengths").items()) {
        int s = std::stoi(id) - 1;
        if (s < 0 || s >= n) fail(ErrorKind::NoSuchEdge, "length for unknown edge " + id);
        Rational r = parse_rational(v.get<std::string>());
        g.length[s] = r;
        g.length[g.graph.sigma1()[s]] = r;
      }
    }
    check_metric(g);
    return g;
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("graph JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::ParseError, "graph JSON: bad edge id");
  }
}

json graph_to_json(const MarkedGraph& g) {
  json j;
  j["sides"] = g.graph.sides();
  j["sigma0"] = cycles_1based(g.graph.sigma0());
  j["sigma1"] = cycles_1based(g.graph.sigma1());
  json mk = json::object();
  auto ho = g.graph.holes();
  auto vo = g.graph.vertices();
  for (const auto& [label, t] : g.marking) {
    bool hole = t.kind == MarkKind::Hole;
    auto cyc = hole ? ho.cycles[ho.of[t.side]] : vo.cycles[vo.of[t.side]];
    for (int& x : cyc) ++x;
    mk[label] = {{"kind", hole ? "hole" : "vertex"}, {"orbit", cyc}};
  }
  j["marking"] = mk;
  return j;
}

json graph_to_json(const MarkedMetricGraph& g) {
  json j = graph_to_json(MarkedGraph{g.graph, g.marking});
  json len = json::object();
  for (int x = 0; x < g.graph.sides(); ++x)
    if (x < g.graph.sigma1()[x]) len[std::to_string(x + 1)] = to_string(g.length[x]);
  j["lengths"] = len;
  return j;
}

}  // namespace ribbon
