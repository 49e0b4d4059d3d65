#pragma once

#include "ribbon/graph.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ribbon {

// m[i] = number of vertices of valency 2i+3
struct Profile {
  std::vector<int> m;

  static Profile parse(const std::string& csv);
  int count(int i) const { return i < static_cast<int>(m.size()) ? m[i] : 0; }
  int weight() const;      // sum i*m_i
  int odd_total() const;   // sum (2i+1)*m_i
  int num_vertices() const;
  std::vector<int> valencies() const;  // ascending
  Profile trimmed() const;
  std::string str() const;
  bool operator==(const Profile& o) const { return trimmed().m == o.trimmed().m; }
};

bool consistent(const Profile& p, int g, int n);

struct EnumOptions {
  int max_sides = 30;
  int jobs = 1;
  bool reverse_search = false;  // explore partners in the opposite order
};

// RIBBONCALC_MAX_SIDES overrides the default bound
int default_max_sides();

struct Cell {
  MarkedGraph graph;  // canonical representative
  int aut = 1;
  CanonicalForm form;
};

// Isomorphism classes of connected unmarked graphs with the given vertex
// valencies and number of holes.
std::vector<Cell> enumerate_unmarked(const std::vector<int>& valencies, int holes,
                                     const EnumOptions& opt = {});

// Marked classes: hole labels are bijectively placed on holes, each entry of
// vertex_marks on a distinct vertex of that valency.
std::vector<Cell> enumerate_marked(const std::vector<int>& valencies,
                                   const std::vector<std::string>& hole_labels,
                                   const std::map<std::string, int>& vertex_marks,
                                   const EnumOptions& opt = {});

// P holds every label; labels in vertex_marks mark vertices, the rest holes.
std::vector<Cell> enumerate(int g, const std::vector<std::string>& P, const Profile& profile,
                            const std::map<std::string, int>& vertex_marks = {},
                            const EnumOptions& opt = {});

// valencies >= 3 with sum(valency - 2) = 4g-4+2n, each sorted ascending
std::vector<std::vector<int>> degree_sequences(int g, int n);

struct CellFamily {
  std::vector<int> valencies;
  std::vector<Cell> cells;
};

// all reduced cells; max_excess bounds sum(valency-3) <= 2*max_excess
std::vector<CellFamily> enumerate_all_cells(int g, const std::vector<std::string>& P,
                                            std::optional<int> max_excess = std::nullopt,
                                            const EnumOptions& opt = {});
// cell dimension (number of edges) -> number of classes
std::map<int, int> cells_by_dimension(const std::vector<CellFamily>& fams);

// sum over labeled reduced cells of (-1)^{|X1|-n}/|Aut|
Rational orbifold_euler(int g, int n, const EnumOptions& opt = {});
// same value from unlabeled classes: n! * sum (-1)^{|X1|-n}/|Aut_unlabeled|
Rational orbifold_euler_unlabeled(int g, int n, const EnumOptions& opt = {});

std::vector<std::string> default_labels(int n, const std::string& prefix = "p");

}  // namespace ribbon
