#pragma once

#include "ribbon/graph.hpp"
#include "ribbon/rational.hpp"

#include "json.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ribbon {

// Exceptional vertices are labeled "~k", exceptional holes "~k.h"; every other
// label comes from P.
struct StableComponent {
  MarkedMetricGraph graph;  // lengths normalized as a stable metric
  int order = 0;
};

struct StableGraphData {
  std::vector<std::string> P;
  std::vector<StableComponent> components;
  std::vector<std::pair<std::string, std::string>> iota;
  // normalized perimeters of the P-holes in order 0 (0 for P-holes of higher order)
  std::map<std::string, Rational> lambda_hat;

  std::vector<int> orders() const;
  // component index and kind of an exceptional point
  std::pair<int, MarkKind> locate(const std::string& point) const;
};

bool is_exceptional_label(const std::string& label);

// Zseq lists Z_1..Z_k as edges of g (any side of each edge); a leading entry
// equal to every edge is read as Z_0 and skipped.
StableGraphData build_stable(const MarkedMetricGraph& g, const std::vector<std::vector<int>>& Zseq);

// empty string when admissible, otherwise the first failed condition
std::string admissibility_failure(const StableGraphData& s, const std::vector<int>& order);
inline bool admissible_order(const StableGraphData& s, const std::vector<int>& order) {
  return admissibility_failure(s, order).empty();
}

// count of admissible order functions with values in 0..components-1
// (searched only up to max_components components; -1 beyond)
long count_admissible_orders(const StableGraphData& s, int max_components = 7);

// circumference vector of the input with Z_1 edges at zero, normalized to total 1
std::map<std::string, Rational> projected_perimeters(const MarkedMetricGraph& g, const std::vector<int>& Z1);

nlohmann::json stable_to_json(const StableGraphData& s);

}  // namespace ribbon
