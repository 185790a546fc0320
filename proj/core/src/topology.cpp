// ============================================================================
// topology.cpp -- bipartite human/sensor connectivity
// ============================================================================
#include "byzfuse/topology.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "byzfuse/types.hpp"

namespace byzfuse {

std::string to_string(TopologyKind kind) {
  return kind == TopologyKind::partition ? "partition" : "random_bipartite";
}

TopologyKind topology_kind_from_string(const std::string& name) {
  if (name == "partition") return TopologyKind::partition;
  if (name == "random_bipartite") return TopologyKind::random_bipartite;
  throw ConfigError("topology", "unknown topology '" + name +
                                    "' (expected partition or random_bipartite)");
}

std::size_t Topology::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : sensors_of_human) n += s.size();
  return n;
}

void Topology::validate() const {
  if (static_cast<int>(sensors_of_human.size()) != n_humans ||
      static_cast<int>(humans_of_sensor.size()) != n_sensors)
    throw std::invalid_argument("topology: adjacency sizes do not match N and M");
  std::set<std::pair<int, int>> from_humans;
  std::set<std::pair<int, int>> from_sensors;
  for (int m = 0; m < n_humans; ++m) {
    if (sensors_of_human[m].empty())
      throw std::invalid_argument("topology: human " + std::to_string(m) + " has no sensors");
    for (int i : sensors_of_human[m]) {
      if (i < 0 || i >= n_sensors) throw std::invalid_argument("topology: sensor index out of range");
      if (!from_humans.emplace(m, i).second)
        throw std::invalid_argument("topology: duplicate edge");
    }
  }
  for (int i = 0; i < n_sensors; ++i) {
    if (humans_of_sensor[i].empty())
      throw std::invalid_argument("topology: sensor " + std::to_string(i) + " has no humans");
    for (int m : humans_of_sensor[i]) {
      if (m < 0 || m >= n_humans) throw std::invalid_argument("topology: human index out of range");
      from_sensors.emplace(m, i);
    }
  }
  if (from_humans != from_sensors)
    throw std::invalid_argument("topology: human and sensor adjacency views disagree");
}

int resolved_human_degree(const TopologySpec& spec, int n, int m) {
  const int ks = spec.sensor_degree;
  if (ks < 1) throw ConfigError("sensor_degree", "must be at least 1");
  if (ks > m)
    throw ConfigError("sensor_degree", "k_s = " + std::to_string(ks) + " exceeds M = " +
                                           std::to_string(m) + " humans");
  const long long stubs = static_cast<long long>(n) * ks;
  if (stubs % m != 0)
    throw ConfigError("topology", "N * k_s = " + std::to_string(stubs) +
                                      " is not divisible by M = " + std::to_string(m));
  const int kh = static_cast<int>(stubs / m);
  if (spec.human_degree != 0 && spec.human_degree != kh)
    throw ConfigError("human_degree", "N * k_s = M * k_h requires k_h = " + std::to_string(kh) +
                                          ", got " + std::to_string(spec.human_degree));
  if (kh > n)
    throw ConfigError("topology", "k_h = " + std::to_string(kh) + " exceeds N = " +
                                      std::to_string(n) + " sensors");
  return kh;
}

namespace {

Topology from_edges(int n, int m, const std::vector<std::pair<int, int>>& edges) {
  Topology t;
  t.n_sensors = n;
  t.n_humans = m;
  t.sensors_of_human.assign(m, {});
  t.humans_of_sensor.assign(n, {});
  for (auto [h, s] : edges) {
    t.sensors_of_human[h].push_back(s);
    t.humans_of_sensor[s].push_back(h);
  }
  for (auto& v : t.sensors_of_human) std::sort(v.begin(), v.end());
  for (auto& v : t.humans_of_sensor) std::sort(v.begin(), v.end());
  return t;
}

Topology partition(int n, int m) {
  if (n % m != 0)
    throw ConfigError("topology", "partition needs N divisible by M (N = " + std::to_string(n) +
                                      ", M = " + std::to_string(m) + ")");
  const int k = n / m;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n);
  for (int h = 0; h < m; ++h)
    for (int j = 0; j < k; ++j) edges.emplace_back(h, h * k + j);
  return from_edges(n, m, edges);
}

// Start from a round-robin biregular graph and randomize it with
// degree-preserving double-edge swaps that never create a multi-edge.
Topology random_bipartite(const TopologySpec& spec, int n, int m, Rng& rng) {
  resolved_human_degree(spec, n, m);
  const int ks = spec.sensor_degree;
  std::vector<std::pair<int, int>> edges;  // (human, sensor)
  edges.reserve(static_cast<std::size_t>(n) * ks);
  std::set<std::pair<int, int>> present;
  for (int s = 0; s < n; ++s)
    for (int j = 0; j < ks; ++j) {
      const int h = (s * ks + j) % m;
      edges.emplace_back(h, s);
      present.emplace(h, s);
    }
  const std::size_t e = edges.size();
  if (e >= 2) {
    std::uniform_int_distribution<std::size_t> pick(0, e - 1);
    const std::size_t swaps = 20 * e;
    for (std::size_t k = 0; k < swaps; ++k) {
      const std::size_t a = pick(rng);
      const std::size_t b = pick(rng);
      auto [ha, sa] = edges[a];
      auto [hb, sb] = edges[b];
      if (ha == hb || sa == sb) continue;
      if (present.count({ha, sb}) || present.count({hb, sa})) continue;
      present.erase({ha, sa});
      present.erase({hb, sb});
      present.emplace(ha, sb);
      present.emplace(hb, sa);
      edges[a] = {ha, sb};
      edges[b] = {hb, sa};
    }
  }
  return from_edges(n, m, edges);
}

}  // namespace

Topology build_topology(const TopologySpec& spec, int n, int m, Rng& rng) {
  if (n < 1) throw ConfigError("N", "must be at least 1");
  if (m < 1) throw ConfigError("M", "must be at least 1");
  Topology t = spec.kind == TopologyKind::partition ? partition(n, m)
                                                    : random_bipartite(spec, n, m, rng);
  t.validate();
  return t;
}

}  // namespace byzfuse
