#pragma once

#include "ribbon/comb.hpp"
#include "ribbon/graph.hpp"
#include "ribbon/subgraph.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ribbon {

struct DualGraph {
  struct Vertex {
    int genus = 0;
    std::vector<std::string> labels;
    bool positive = true;
  };
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;

  int total_genus() const;  // sum g_v + rank H_1
  bool reduced() const;
  std::string str() const;
};

DualGraph reduce_dual_graph(const DualGraph& gamma);

struct HoleTopology {
  enum class Kind { Disk, Cylinder, Surface, ClosedComplement };
  Kind kind = Kind::Disk;
  int genus = 0;                // of the subsurface spanned by the hole
  std::vector<int> valencies;   // per other boundary circle; 0 for a boundary that is itself a hole
  int edges = 0;                // distinct edges bordering the hole
  // 6h - 6 + sum(v_j + 3) = edges - 3 (checked for Surface holes of trivalent graphs)
  bool identity_holds = true;
  std::string str() const;
};

const char* kind_name(HoleTopology::Kind k);

// edges bordering the hole, as first sides
std::vector<int> hole_edges(const RibbonGraph& g, const Marking& m, const std::string& q);
int y_stratum(const MarkedGraph& g, const std::string& q);
HoleTopology hole_topology(const MarkedGraph& g, const std::string& q);
HoleTopology topology_of_edges(const RibbonGraph& g, const std::vector<int>& Z,
                               const std::vector<int>& own_holes);

struct ShrinkResult {
  HoleTopology topology;
  std::vector<MarkedMetricGraph> components;  // positive part G/G_Z, one per component
  // exceptional vertex label -> valency (Cylinder/Surface: node points "~1", "~2", ...)
  std::map<std::string, int> nodes;
  DualGraph dual;
  DualGraph reduced;
};

ShrinkResult shrink(const MarkedMetricGraph& g, const std::string& q);

// every edge bordering q scaled by t
MarkedMetricGraph scale_hole(const MarkedMetricGraph& g, const std::string& q, const Rational& t);

MarkedMetricGraph forget_vertex_marking(const MarkedMetricGraph& g, const std::string& q);

struct ClusterInfo {
  std::vector<std::string> holes;
  HoleTopology topology;
  // for adjacent pairs: true when they share an edge, false when only vertices
  std::map<std::pair<std::string, std::string>, bool> shares_edge;
};

struct ClusterReport {
  SetPartition partition;
  std::vector<ClusterInfo> clusters;
};

ClusterReport detect_clusters(const MarkedGraph& g, const std::vector<std::string>& Q);

}  // namespace ribbon
