#pragma once

// Minimum-delay path routing over the physical graph. Link weights are the
// utilization-dependent delays of the topology state handed in, so the same
// routine serves both the solver (pre-batch constant weights) and the
// residual-capacity walk used when realizing a scheme. Ties are broken by
// node index so that equal-delay topologies route identically everywhere.

#include <limits>
#include <optional>
#include <vector>

#include "sliceiso/topology.hpp"

namespace sliceiso {

struct RouteResult {
  std::vector<std::size_t> links;  // empty when src == dst
  double delay_ms = 0.0;
};

// Dijkstra from host_src to host_dst over links whose residual bandwidth
// (capacity minus the supplied load vector) admits bw_demand. `extra_load`
// may be empty, in which case only the topology's own allocations count.
inline std::optional<RouteResult> min_delay_route(const PhysicalTopology& topo,
                                                  std::size_t host_src, std::size_t host_dst,
                                                  double bw_demand,
                                                  const std::vector<double>& extra_load = {}) {
  if (host_src == host_dst) return RouteResult{};

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(topo.node_count(), inf);
  std::vector<char> done(topo.node_count(), 0);
  // predecessor link per node; kNone marks unreached
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pred_link(topo.node_count(), kNone);
  dist[host_src] = 0.0;

  for (;;) {
    // smallest tentative distance, node index breaking ties
    std::size_t u = kNone;
    for (std::size_t n = 0; n < topo.node_count(); ++n)
      if (!done[n] && dist[n] < inf && (u == kNone || dist[n] < dist[u])) u = n;
    if (u == kNone) return std::nullopt;
    if (u == host_dst) break;
    done[u] = 1;
    for (std::size_t li = 0; li < topo.link_count(); ++li) {
      auto [a, b] = topo.link_endpoints(li);
      std::size_t v;
      if (a == u) v = b;
      else if (b == u) v = a;
      else continue;
      if (done[v]) continue;
      const auto& l = topo.link_at(li);
      double load = l.bw_allocated_mbps + (extra_load.empty() ? 0.0 : extra_load[li]);
      if (load + bw_demand > l.bw_capacity_mbps + detail::kFeasTol) continue;
      double nd = dist[u] + current_link_delay(l);
      bool better = nd < dist[v];
      if (!better && nd == dist[v] && pred_link[v] != kNone) {
        // equal delay: prefer the smaller predecessor node index
        auto [pa, pb] = topo.link_endpoints(pred_link[v]);
        std::size_t prev_pred = (pa == v) ? pb : pa;
        better = u < prev_pred;
      }
      if (better) {
        dist[v] = nd;
        pred_link[v] = li;
      }
    }
  }

  RouteResult out;
  out.delay_ms = dist[host_dst];
  std::size_t at = host_dst;
  while (at != host_src) {
    std::size_t li = pred_link[at];
    out.links.push_back(li);
    auto [a, b] = topo.link_endpoints(li);
    at = (a == at) ? b : a;
  }
  std::reverse(out.links.begin(), out.links.end());
  return out;
}

// All-pairs minimum-delay distances with no bandwidth restriction; used as
// an admissible bound inside the exact solver.
inline std::vector<std::vector<double>> all_pairs_min_delay(const PhysicalTopology& topo) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector dist(topo.node_count(), std::vector<double>(topo.node_count(), inf));
  for (std::size_t n = 0; n < topo.node_count(); ++n) dist[n][n] = 0.0;
  for (std::size_t li = 0; li < topo.link_count(); ++li) {
    auto [a, b] = topo.link_endpoints(li);
    double w = current_link_delay(topo.link_at(li));
    dist[a][b] = std::min(dist[a][b], w);
    dist[b][a] = std::min(dist[b][a], w);
  }
  for (std::size_t k = 0; k < topo.node_count(); ++k)
    for (std::size_t i = 0; i < topo.node_count(); ++i)
      for (std::size_t j = 0; j < topo.node_count(); ++j)
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
  return dist;
}

}  // namespace sliceiso
