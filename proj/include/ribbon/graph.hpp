#pragma once

#include "ribbon/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ribbon {

// Sides are 0-based internally; all text and JSON I/O is 1-based.
using Perm = std::vector<int>;

Perm inverse(const Perm& p);
// (a*b)(x) = a(b(x))
Perm compose(const Perm& a, const Perm& b);

struct Orbits {
  // each cycle starts at its smallest element; cycles sorted by that element
  std::vector<std::vector<int>> cycles;
  std::vector<int> of;
  int size() const { return static_cast<int>(cycles.size()); }
};

Orbits orbits(const Perm& p);

class RibbonGraph {
public:
  RibbonGraph() = default;
  RibbonGraph(Perm sigma0, Perm sigma1);

  // cycles in 1-based notation; sides not mentioned are fixed points
  static RibbonGraph from_cycles(int sides, const std::vector<std::vector<int>>& sigma0,
                                 const std::vector<std::vector<int>>& sigma1);

  int sides() const { return static_cast<int>(s0_.size()); }
  const Perm& sigma0() const { return s0_; }
  const Perm& sigma1() const { return s1_; }
  // sigma_inf o sigma1 o sigma0 = id
  Perm sigma_inf() const;

  Orbits vertices() const { return orbits(s0_); }
  Orbits edges() const { return orbits(s1_); }
  Orbits holes() const { return orbits(sigma_inf()); }

  int num_vertices() const { return vertices().size(); }
  int num_edges() const { return sides() / 2; }
  int num_holes() const { return holes().size(); }

  // connected components of the side set under <sigma0, sigma1>
  std::vector<int> component_of() const;
  int num_components() const;
  bool connected() const { return num_components() == 1; }
  int genus() const;

  bool operator==(const RibbonGraph& o) const { return s0_ == o.s0_ && s1_ == o.s1_; }

private:
  Perm s0_, s1_;
};

RibbonGraph dual(const RibbonGraph& g);

// Returns the contracted graph; `side` is either side of the edge.
// old_to_new (optional) receives the index map, -1 for removed sides.
RibbonGraph contract_edge(const RibbonGraph& g, int side, std::vector<int>* old_to_new = nullptr);

enum class MarkKind { Hole, Vertex };

struct MarkTarget {
  MarkKind kind;
  int side;  // any side of the target orbit
};

using Marking = std::map<std::string, MarkTarget>;

struct MarkedGraph {
  RibbonGraph graph;
  Marking marking;
};

// injective, in range; with all_holes also surjective onto holes
void check_marking(const RibbonGraph& g, const Marking& m, bool all_holes = true);
// every unmarked vertex has valency >= 3
bool is_reduced(const RibbonGraph& g, const Marking& m);

std::optional<std::string> hole_label(const RibbonGraph& g, const Marking& m, int hole_index);
int hole_index_of(const RibbonGraph& g, const Marking& m, const std::string& label);

struct MarkedMetricGraph {
  RibbonGraph graph;
  Marking marking;
  std::vector<Rational> length;  // per side, equal on both sides of an edge
};

MarkedMetricGraph with_unit_lengths(const MarkedGraph& g);
void check_metric(const MarkedMetricGraph& g);
// sum of side lengths along the hole (twice l_p)
Rational circumference(const MarkedMetricGraph& g, const std::string& hole);
Rational total_length(const MarkedMetricGraph& g);

struct CanonicalForm {
  std::vector<int> code;
  std::vector<std::string> labels;  // sorted, with kind prefix
  int aut = 0;
  std::vector<int> relabel;  // old side -> new side for one minimal rooting
  bool operator==(const CanonicalForm& o) const { return code == o.code && labels == o.labels; }
  bool operator<(const CanonicalForm& o) const {
    return code != o.code ? code < o.code : labels < o.labels;
  }
};

CanonicalForm canonical_form(const RibbonGraph& g, const Marking& m = {});
MarkedGraph canonical_representative(const MarkedGraph& g);
MarkedGraph relabel(const MarkedGraph& g, const std::vector<int>& old_to_new);

// 1-based cycle strings like "(1 2 3)(4 5 6)"
std::string cycles_to_string(const Perm& p);

}  // namespace ribbon
