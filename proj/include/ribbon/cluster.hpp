#pragma once

#include "ribbon/enumerate.hpp"
#include "ribbon/rational.hpp"

#include <string>
#include <vector>

namespace ribbon {

// rho values of q_{i_1} < ... < q_{i_h}; the first may be -1
struct AdmissibleClusterSpec {
  std::vector<int> rho;

  int h() const { return static_cast<int>(rho.size()); }
  int rho_mu() const;
  void validate() const;
  static AdmissibleClusterSpec parse(const std::string& csv);
};

struct BruteForceStats {
  Integer count = 0;
  int cores = 0;       // unlabeled trivalent cores examined
  long candidates = 0;  // marked graphs built before filtering
};

// Holes are labeled "0", "q1".."qh" and the distinguished bivalent vertex "v".
BruteForceStats count_admissible(const AdmissibleClusterSpec& spec, int max_sides = default_max_sides(),
                                 const EnumOptions& opt = {});
// one representative per isomorphism class
std::vector<MarkedGraph> admissible_clusters(const AdmissibleClusterSpec& spec,
                                             int max_sides = default_max_sides(),
                                             const EnumOptions& opt = {});

Integer count_by_recurrence(const AdmissibleClusterSpec& spec);
Integer count_closed(const AdmissibleClusterSpec& spec);

// whether g satisfies every bullet of an admissible cluster for spec
bool is_admissible_cluster(const MarkedGraph& g, const AdmissibleClusterSpec& spec);

}  // namespace ribbon
