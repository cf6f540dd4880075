#pragma once

// Physical network and slice request model for isolation-aware VNF
// placement. A PhysicalTopology is an undirected graph of servers/switches
// with CPU and bandwidth capacities plus the current allocations against
// them; a SliceRequest is a directed VNF graph with per-function CPU
// demands, per-edge bandwidth demands, a delay budget and isolation
// parameters. AllocationScheme captures a solved placement (host per VNF)
// together with the physical route realizing each virtual link.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sliceiso {

struct PhysicalNode {
  std::string id;
  double cpu_capacity_ghz = 0.0;
  double cpu_allocated_ghz = 0.0;
  double node_processing_delay_ms = 0.0;
};

struct PhysicalLink {
  // endpoints are stored in topology insertion order of the nodes (a before b)
  std::string node_a;
  std::string node_b;
  double bw_capacity_mbps = 0.0;
  double bw_allocated_mbps = 0.0;
  double initial_delay_ms = 0.0;
  double max_delay_increase_ms = 0.0;
};

// Utilization-dependent link delay: scales linearly from the idle value to
// idle + max increase as the allocated share approaches capacity.
inline double current_link_delay(const PhysicalLink& link) {
  return link.bw_allocated_mbps / link.bw_capacity_mbps * link.max_delay_increase_ms +
         link.initial_delay_ms;
}

enum class Plane { control, data };

inline const char* to_string(Plane p) { return p == Plane::control ? "control" : "data"; }

struct Vnf {
  std::string id;  // globally unique across all slices of a scenario
  Plane plane = Plane::control;
  double cpu_demand_ghz = 0.0;
  double vnf_processing_delay_ms = 0.0;
};

struct VirtualLink {
  std::string src;
  std::string dst;
  double bw_demand_mbps = 0.0;
};

struct SliceRequest {
  std::string id;
  std::vector<Vnf> vnfs;
  std::vector<VirtualLink> vlinks;
  double e2e_delay_budget_ms = 0.0;
  int intra_isolation_control = 1;   // max control-plane VNFs of this slice per node
  int intra_isolation_data = 1;      // max data-plane VNFs of this slice per node
  int inter_isolation_control = 0;   // 1 = control VNFs demand exclusive, unused hosts
  int inter_isolation_data = 0;
  double allocated_bw_mbps = 0.0;    // slice-level grant used by the simulator

  const Vnf* find_vnf(const std::string& vnf_id) const {
    for (const auto& v : vnfs)
      if (v.id == vnf_id) return &v;
    return nullptr;
  }
};

class MalformedInput : public std::runtime_error {
public:
  explicit MalformedInput(const std::string& what) : std::runtime_error(what) {}
};

class MalformedScheme : public std::runtime_error {
public:
  explicit MalformedScheme(const std::string& what) : std::runtime_error(what) {}
};

class InfeasibleCommit : public std::runtime_error {
public:
  explicit InfeasibleCommit(const std::string& what) : std::runtime_error(what) {}
};

class PhysicalTopology {
public:
  PhysicalTopology() = default;

  void add_node(PhysicalNode node) {
    if (node_index_.count(node.id)) throw MalformedInput("duplicate node id: " + node.id);
    if (node.cpu_capacity_ghz < 0 || node.cpu_allocated_ghz < 0 ||
        node.cpu_allocated_ghz > node.cpu_capacity_ghz)
      throw MalformedInput("node allocation out of range: " + node.id);
    node_index_[node.id] = nodes_.size();
    nodes_.push_back(std::move(node));
  }

  void add_link(PhysicalLink link) {
    auto a = node_index_.find(link.node_a);
    auto b = node_index_.find(link.node_b);
    if (a == node_index_.end() || b == node_index_.end())
      throw MalformedInput("link endpoint unknown: " + link.node_a + "-" + link.node_b);
    if (a->second == b->second) throw MalformedInput("self link on node " + link.node_a);
    if (link.bw_capacity_mbps <= 0) throw MalformedInput("link capacity must be positive");
    if (link.bw_allocated_mbps < 0 || link.bw_allocated_mbps > link.bw_capacity_mbps)
      throw MalformedInput("link allocation out of range");
    if (a->second > b->second) {
      std::swap(link.node_a, link.node_b);
      std::swap(a, b);
    }
    if (link_index_.count({a->second, b->second}))
      throw MalformedInput("duplicate link " + link.node_a + "-" + link.node_b);
    link_index_[{a->second, b->second}] = links_.size();
    links_.push_back(std::move(link));
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t link_count() const { return links_.size(); }

  const std::vector<PhysicalNode>& nodes() const { return nodes_; }
  const std::vector<PhysicalLink>& links() const { return links_; }

  PhysicalNode& node_at(std::size_t i) { return nodes_[i]; }
  const PhysicalNode& node_at(std::size_t i) const { return nodes_[i]; }
  PhysicalLink& link_at(std::size_t i) { return links_[i]; }
  const PhysicalLink& link_at(std::size_t i) const { return links_[i]; }

  std::optional<std::size_t> index_of(const std::string& node_id) const {
    auto it = node_index_.find(node_id);
    if (it == node_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> link_between(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    auto it = link_index_.find({a, b});
    if (it == link_index_.end()) return std::nullopt;
    return it->second;
  }

  std::pair<std::size_t, std::size_t> link_endpoints(std::size_t link) const {
    const auto& l = links_[link];
    return {node_index_.at(l.node_a), node_index_.at(l.node_b)};
  }

  // Links incident to a node, in link insertion order.
  std::vector<std::size_t> links_of(std::size_t node) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < links_.size(); ++i) {
      auto [a, b] = link_endpoints(i);
      if (a == node || b == node) out.push_back(i);
    }
    return out;
  }

  bool connected() const {
    if (nodes_.empty()) return true;
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
      std::size_t n = stack.back();
      stack.pop_back();
      for (std::size_t i = 0; i < links_.size(); ++i) {
        auto [a, b] = link_endpoints(i);
        std::size_t other;
        if (a == n) other = b;
        else if (b == n) other = a;
        else continue;
        if (!seen[other]) {
          seen[other] = 1;
          ++visited;
          stack.push_back(other);
        }
      }
    }
    return visited == nodes_.size();
  }

  void check_invariants() const {
    if (!connected()) throw MalformedInput("topology is not connected");
    for (const auto& n : nodes_)
      if (n.cpu_allocated_ghz < 0 || n.cpu_allocated_ghz > n.cpu_capacity_ghz)
        throw MalformedInput("node allocation out of range: " + n.id);
    for (const auto& l : links_)
      if (l.bw_allocated_mbps < 0 || l.bw_allocated_mbps > l.bw_capacity_mbps)
        throw MalformedInput("link allocation out of range: " + l.node_a + "-" + l.node_b);
  }

private:
  std::vector<PhysicalNode> nodes_;
  std::vector<PhysicalLink> links_;
  std::map<std::string, std::size_t> node_index_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> link_index_;
};

struct AllocationScheme {
  // vnf id -> node id; every VNF of every admitted slice appears exactly once
  std::map<std::string, std::string> assignments;
  // (src vnf, dst vnf) -> ordered physical link indices; empty when co-hosted
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> routes;
  double objective_value = 0.0;
  std::map<std::string, double> per_slice_delay_ms;

  bool operator==(const AllocationScheme& other) const {
    return assignments == other.assignments && routes == other.routes;
  }
};

// Constraint families checked by validate_scheme, named by role. One entry
// per family keeps the report aligned with the model: unique assignment,
// node CPU budget, link bandwidth budget, system-wide CPU budget, route
// connectivity, per-plane intra-slice spreading bounds, per-plane inter-slice
// exclusivity, and the end-to-end delay budget.
enum class ConstraintFamily {
  assign_once,
  node_cpu,
  link_bw,
  system_cpu,
  flow_connectivity,
  intra_iso_control,
  intra_iso_data,
  inter_iso_control,
  inter_iso_data,
  e2e_delay,
};

inline const char* to_string(ConstraintFamily f) {
  switch (f) {
    case ConstraintFamily::assign_once: return "assign_once";
    case ConstraintFamily::node_cpu: return "node_cpu";
    case ConstraintFamily::link_bw: return "link_bw";
    case ConstraintFamily::system_cpu: return "system_cpu";
    case ConstraintFamily::flow_connectivity: return "flow_connectivity";
    case ConstraintFamily::intra_iso_control: return "intra_iso_control";
    case ConstraintFamily::intra_iso_data: return "intra_iso_data";
    case ConstraintFamily::inter_iso_control: return "inter_iso_control";
    case ConstraintFamily::inter_iso_data: return "inter_iso_data";
    case ConstraintFamily::e2e_delay: return "e2e_delay";
  }
  return "?";
}

inline const ConstraintFamily kAllFamilies[] = {
    ConstraintFamily::assign_once,       ConstraintFamily::node_cpu,
    ConstraintFamily::link_bw,           ConstraintFamily::system_cpu,
    ConstraintFamily::flow_connectivity, ConstraintFamily::intra_iso_control,
    ConstraintFamily::intra_iso_data,    ConstraintFamily::inter_iso_control,
    ConstraintFamily::inter_iso_data,    ConstraintFamily::e2e_delay,
};

struct ValidationReport {
  std::map<ConstraintFamily, std::vector<std::string>> violations;

  bool pass() const {
    for (const auto& [f, v] : violations)
      if (!v.empty()) return false;
    return true;
  }

  bool pass(ConstraintFamily f) const {
    auto it = violations.find(f);
    return it == violations.end() || it->second.empty();
  }

  std::string to_string() const {
    std::string out;
    for (ConstraintFamily f : kAllFamilies) {
      out += sliceiso::to_string(f);
      auto it = violations.find(f);
      if (it == violations.end() || it->second.empty()) {
        out += ": PASS\n";
      } else {
        out += ": FAIL";
        for (const auto& v : it->second) {
          out += ' ';
          out += v;
        }
        out += '\n';
      }
    }
    return out;
  }

  void add(ConstraintFamily f, std::string what) { violations[f].push_back(std::move(what)); }
};

namespace detail {

constexpr double kFeasTol = 1e-9;

// Checks that a route is a contiguous walk from `from` to `to` over existing
// links. Returns false on any structural defect.
inline bool route_connects(const PhysicalTopology& topo, std::size_t from, std::size_t to,
                           const std::vector<std::size_t>& route) {
  std::size_t at = from;
  for (std::size_t li : route) {
    if (li >= topo.link_count()) return false;
    auto [a, b] = topo.link_endpoints(li);
    if (a == at) at = b;
    else if (b == at) at = a;
    else return false;
  }
  return at == to;
}

}  // namespace detail

// Full constraint check of a scheme for a batch of slices against the given
// topology state. Link delays for the budget check use the topology as
// passed, i.e. the state before the batch is committed. Unknown VNF, node or
// link references throw MalformedScheme; everything else is reported, never
// thrown.
inline ValidationReport validate_scheme(const PhysicalTopology& topo,
                                        const std::vector<SliceRequest>& slices,
                                        const AllocationScheme& scheme) {
  ValidationReport report;
  for (ConstraintFamily f : kAllFamilies) report.violations[f];  // all families present

  std::map<std::string, const SliceRequest*> slice_of_vnf;
  std::map<std::string, const Vnf*> vnf_by_id;
  for (const auto& s : slices)
    for (const auto& v : s.vnfs) {
      if (vnf_by_id.count(v.id)) throw MalformedScheme("duplicate vnf id: " + v.id);
      slice_of_vnf[v.id] = &s;
      vnf_by_id[v.id] = &v;
    }

  for (const auto& [vnf_id, node_id] : scheme.assignments) {
    if (!vnf_by_id.count(vnf_id)) throw MalformedScheme("unknown vnf in assignments: " + vnf_id);
    if (!topo.index_of(node_id)) throw MalformedScheme("unknown node in assignments: " + node_id);
  }
  for (const auto& [key, route] : scheme.routes) {
    if (!vnf_by_id.count(key.first) || !vnf_by_id.count(key.second))
      throw MalformedScheme("unknown vnf in routes: " + key.first + "->" + key.second);
    for (std::size_t li : route)
      if (li >= topo.link_count()) throw MalformedScheme("unknown link index in route");
  }

  // assign_once: every VNF of every slice placed exactly once.
  for (const auto& s : slices)
    for (const auto& v : s.vnfs)
      if (!scheme.assignments.count(v.id))
        report.add(ConstraintFamily::assign_once, "vnf " + v.id + " unassigned");

  // Host loads and per-(slice, plane, node) placement counts.
  std::vector<double> node_load(topo.node_count(), 0.0);
  std::map<std::tuple<const SliceRequest*, Plane, std::size_t>, int> plane_count;
  std::map<std::size_t, std::set<const SliceRequest*>> node_slices;
  for (const auto& [vnf_id, node_id] : scheme.assignments) {
    const Vnf* v = vnf_by_id.at(vnf_id);
    const SliceRequest* s = slice_of_vnf.at(vnf_id);
    std::size_t k = *topo.index_of(node_id);
    node_load[k] += v->cpu_demand_ghz;
    plane_count[{s, v->plane, k}] += 1;
    node_slices[k].insert(s);
  }

  // node_cpu: allocated plus the batch demands within capacity, per node.
  for (std::size_t k = 0; k < topo.node_count(); ++k) {
    const auto& n = topo.node_at(k);
    if (n.cpu_allocated_ghz + node_load[k] > n.cpu_capacity_ghz + detail::kFeasTol)
      report.add(ConstraintFamily::node_cpu, "node " + n.id + " over capacity");
  }

  // system_cpu: total batch demand within total residual capacity.
  double total_demand = 0.0, total_residual = 0.0;
  for (const auto& s : slices)
    for (const auto& v : s.vnfs) total_demand += v.cpu_demand_ghz;
  for (const auto& n : topo.nodes()) total_residual += n.cpu_capacity_ghz - n.cpu_allocated_ghz;
  if (total_demand > total_residual + detail::kFeasTol)
    report.add(ConstraintFamily::system_cpu, "batch demand exceeds residual capacity");

  // flow_connectivity + link_bw + e2e_delay walk every virtual link's route.
  std::vector<double> link_load(topo.link_count(), 0.0);
  for (const auto& s : slices) {
    double slice_delay = 0.0;
    bool slice_complete = true;
    for (const auto& vl : s.vlinks) {
      auto src_it = scheme.assignments.find(vl.src);
      auto dst_it = scheme.assignments.find(vl.dst);
      if (src_it == scheme.assignments.end() || dst_it == scheme.assignments.end()) {
        slice_complete = false;
        continue;
      }
      std::size_t src_node = *topo.index_of(src_it->second);
      std::size_t dst_node = *topo.index_of(dst_it->second);
      auto route_it = scheme.routes.find({vl.src, vl.dst});
      const std::vector<std::size_t> empty;
      const auto& route = route_it == scheme.routes.end() ? empty : route_it->second;
      if (src_node == dst_node) {
        if (!route.empty())
          report.add(ConstraintFamily::flow_connectivity,
                     "co-hosted " + vl.src + "->" + vl.dst + " has a non-empty route");
        continue;
      }
      if (!detail::route_connects(topo, src_node, dst_node, route)) {
        report.add(ConstraintFamily::flow_connectivity,
                   "route " + vl.src + "->" + vl.dst + " does not connect its hosts");
        slice_complete = false;
        continue;
      }
      for (std::size_t li : route) {
        link_load[li] += vl.bw_demand_mbps;
        slice_delay += current_link_delay(topo.link_at(li));
      }
    }
    for (const auto& v : s.vnfs) {
      slice_delay += v.vnf_processing_delay_ms;
      auto it = scheme.assignments.find(v.id);
      if (it == scheme.assignments.end()) {
        slice_complete = false;
        continue;
      }
      slice_delay += topo.node_at(*topo.index_of(it->second)).node_processing_delay_ms;
    }
    if (slice_complete && slice_delay > s.e2e_delay_budget_ms + detail::kFeasTol)
      report.add(ConstraintFamily::e2e_delay, "slice " + s.id + " exceeds delay budget");
  }
  for (std::size_t li = 0; li < topo.link_count(); ++li) {
    const auto& l = topo.link_at(li);
    if (l.bw_allocated_mbps + link_load[li] > l.bw_capacity_mbps + detail::kFeasTol)
      report.add(ConstraintFamily::link_bw, "link " + l.node_a + "-" + l.node_b + " over capacity");
  }

  // intra_iso: per-plane co-residency bound per node.
  for (const auto& [key, count] : plane_count) {
    const auto& [s, plane, k] = key;
    int bound = plane == Plane::control ? s->intra_isolation_control : s->intra_isolation_data;
    if (count > bound)
      report.add(plane == Plane::control ? ConstraintFamily::intra_iso_control
                                         : ConstraintFamily::intra_iso_data,
                 "slice " + s->id + " places " + std::to_string(count) + " " +
                     sliceiso::to_string(plane) + " vnfs on node " + topo.node_at(k).id);
  }

  // inter_iso: a plane with the exclusivity flag may only use nodes that
  // carry no prior allocation and host nothing from any other slice.
  for (const auto& [vnf_id, node_id] : scheme.assignments) {
    const Vnf* v = vnf_by_id.at(vnf_id);
    const SliceRequest* s = slice_of_vnf.at(vnf_id);
    int flag = v->plane == Plane::control ? s->inter_isolation_control : s->inter_isolation_data;
    if (!flag) continue;
    ConstraintFamily fam = v->plane == Plane::control ? ConstraintFamily::inter_iso_control
                                                      : ConstraintFamily::inter_iso_data;
    std::size_t k = *topo.index_of(node_id);
    if (topo.node_at(k).cpu_allocated_ghz > 0)
      report.add(fam, "vnf " + vnf_id + " on pre-loaded node " + node_id);
    for (const SliceRequest* other : node_slices[k])
      if (other != s)
        report.add(fam, "vnf " + vnf_id + " shares node " + node_id + " with slice " + other->id);
  }

  return report;
}

// Applies one slice's share of a scheme to the topology: host CPU grows by
// each hosted VNF's demand, every physical link on a virtual link's route
// grows by that virtual link's bandwidth demand. Returns the updated copy;
// the input is untouched. Rejects commits that would overflow any capacity.
inline PhysicalTopology commit_allocation(const PhysicalTopology& topo, const SliceRequest& slice,
                                          const AllocationScheme& scheme) {
  PhysicalTopology out = topo;
  for (const auto& v : slice.vnfs) {
    auto it = scheme.assignments.find(v.id);
    if (it == scheme.assignments.end()) throw MalformedScheme("vnf " + v.id + " unassigned");
    auto k = out.index_of(it->second);
    if (!k) throw MalformedScheme("unknown node " + it->second);
    auto& n = out.node_at(*k);
    if (n.cpu_allocated_ghz + v.cpu_demand_ghz > n.cpu_capacity_ghz + detail::kFeasTol)
      throw InfeasibleCommit("node " + n.id + " cannot host " + v.id);
    n.cpu_allocated_ghz += v.cpu_demand_ghz;
  }
  for (const auto& vl : slice.vlinks) {
    auto it = scheme.routes.find({vl.src, vl.dst});
    if (it == scheme.routes.end()) continue;  // co-hosted
    for (std::size_t li : it->second) {
      if (li >= out.link_count()) throw MalformedScheme("unknown link index in route");
      auto& l = out.link_at(li);
      if (l.bw_allocated_mbps + vl.bw_demand_mbps > l.bw_capacity_mbps + detail::kFeasTol)
        throw InfeasibleCommit("link " + l.node_a + "-" + l.node_b + " cannot carry " + vl.src +
                               "->" + vl.dst);
      l.bw_allocated_mbps += vl.bw_demand_mbps;
    }
  }
  return out;
}

// Inverse bookkeeping of commit_allocation. Subtracting the same demands in
// reverse order restores the pre-commit values exactly for grid-snapped
// quantities.
inline PhysicalTopology uncommit_allocation(const PhysicalTopology& topo,
                                            const SliceRequest& slice,
                                            const AllocationScheme& scheme) {
  PhysicalTopology out = topo;
  for (auto it = slice.vlinks.rbegin(); it != slice.vlinks.rend(); ++it) {
    auto route_it = scheme.routes.find({it->src, it->dst});
    if (route_it == scheme.routes.end()) continue;
    for (auto li = route_it->second.rbegin(); li != route_it->second.rend(); ++li)
      out.link_at(*li).bw_allocated_mbps -= it->bw_demand_mbps;
  }
  for (auto it = slice.vnfs.rbegin(); it != slice.vnfs.rend(); ++it) {
    auto k = out.index_of(scheme.assignments.at(it->id));
    out.node_at(*k).cpu_allocated_ghz -= it->cpu_demand_ghz;
  }
  return out;
}

}  // namespace sliceiso
