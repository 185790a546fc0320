// ============================================================================
// topology.hpp -- bipartite human/sensor connectivity
// ============================================================================
#pragma once
#include <string>
#include <vector>

#include "byzfuse/rng.hpp"

namespace byzfuse {

enum class TopologyKind { partition, random_bipartite };

std::string to_string(TopologyKind kind);
TopologyKind topology_kind_from_string(const std::string& name);

struct TopologySpec {
  TopologyKind kind = TopologyKind::partition;
  /// random_bipartite only: humans per sensor (k_s) and sensors per human
  /// (k_h). human_degree == 0 derives k_h = N * k_s / M.
  int sensor_degree = 3;
  int human_degree = 0;

  friend bool operator==(const TopologySpec&, const TopologySpec&) = default;
};

struct Topology {
  int n_sensors = 0;
  int n_humans = 0;
  std::vector<std::vector<int>> sensors_of_human;  ///< M_m, ascending
  std::vector<std::vector<int>> humans_of_sensor;  ///< N_i, ascending

  std::size_t edge_count() const;
  /// Throws std::invalid_argument when a node is isolated, an index is out
  /// of range, or the two adjacency views disagree.
  void validate() const;
};

/// Throws ConfigError("topology", ...) on infeasible degree constraints,
/// explaining the arithmetic.
Topology build_topology(const TopologySpec& spec, int n_sensors, int n_humans, Rng& rng);

/// Derived k_h for a random bipartite spec; validates divisibility.
int resolved_human_degree(const TopologySpec& spec, int n_sensors, int n_humans);

}  // namespace byzfuse
