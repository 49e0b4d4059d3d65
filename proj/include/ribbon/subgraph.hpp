#pragma once

#include "ribbon/graph.hpp"

#include <utility>
#include <vector>

namespace ribbon {

// Edge subsets are given by sides (either side of each edge, 0-based).
std::vector<char> edge_mask(const RibbonGraph& g, const std::vector<int>& Z);
// smallest side of each edge in the mask, ascending
std::vector<int> mask_edges(const RibbonGraph& g, const std::vector<char>& mask);

struct SubgraphResult {
  RibbonGraph graph;
  std::vector<int> to_old;    // new side -> old side
  std::vector<int> from_old;  // old side -> new side or -1
  std::vector<int> exceptional;  // hole indices (graph.holes()) that are not holes of the parent
};

struct QuotientResult {
  RibbonGraph graph;
  std::vector<int> to_old;
  std::vector<int> from_old;
  std::vector<int> exceptional;  // vertex indices (graph.vertices()) that are not parent vertices
};

SubgraphResult subgraph(const RibbonGraph& g, const std::vector<int>& Z);
// Z = empty gives a copy; the result may be disconnected
QuotientResult quotient(const RibbonGraph& g, const std::vector<int>& Z);

struct Correspondence {
  // (exceptional hole index in the subgraph, exceptional vertex index in the quotient)
  std::vector<std::pair<int, int>> pairs;
  SubgraphResult sub;
  QuotientResult quo;
};

// Builds hole -> vertex and vertex -> hole and fails unless they are inverse bijections.
Correspondence exceptional_correspondence(const RibbonGraph& g, const std::vector<int>& Z);

struct SubsetClass {
  enum class Kind { Contractible, Semistable, StableBearing };
  Kind kind = Kind::Contractible;
  std::vector<int> zst;  // edges of the maximal stable subset
};

const char* kind_name(SubsetClass::Kind k);

// Z must be connected; marked points are vertex markings on Z's vertices
SubsetClass classify_subset(const MarkedGraph& g, const std::vector<int>& Z);
// iterated removal of edges ending at unmarked univalent vertices
std::vector<int> prune_tails(const MarkedGraph& g, const std::vector<int>& Z);

struct Piece {
  RibbonGraph graph;
  std::vector<int> to_old;
};

// connected components with their side maps into the parent
std::vector<Piece> split_components(const RibbonGraph& g);

// Erases the bivalent vertex holding `side`, joining its two edges (lengths add).
// old_to_new receives the side map (-1 for the two erased sides).
MarkedMetricGraph merge_bivalent_vertex(const MarkedMetricGraph& g, int side,
                                        std::vector<int>* old_to_new = nullptr);
// remaps marking targets through old_to_new, moving off erased sides within the orbit
Marking remap_marking(const RibbonGraph& old_graph, const Marking& m, const std::vector<int>& old_to_new);

}  // namespace ribbon
