#pragma once

#include "ribbon/graph.hpp"

#include "json.hpp"

namespace ribbon {

using json = nlohmann::json;

// {"sides": n, "sigma0": [[..]], "sigma1": [[..]],
//  "marking": {"p1": {"kind": "hole", "orbit": [..]}},
//  "lengths": {"<smaller side of the edge>": "p/q"}}
// Missing lengths default to 1.
MarkedMetricGraph graph_from_json(const json& j);
json graph_to_json(const MarkedMetricGraph& g);
json graph_to_json(const MarkedGraph& g);

std::vector<std::vector<int>> cycles_1based(const Perm& p);

}  // namespace ribbon
