#ifndef BBTEA_FIBER_HPP
#define BBTEA_FIBER_HPP

#include "bbtea/geometry.hpp"
#include "bbtea/supply.hpp"

#include <string>
#include <vector>

namespace bbtea {

enum class EdgeKind { Core, Regional };

/// New fiber between two settlements (indices into FiberNetwork::settlements).
struct FiberEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    double length_km = 0.0;
    EdgeKind kind = EdgeKind::Regional;
};

struct RegionFiber {
    std::string region_id;
    int existing_core_nodes = 0;
    int new_core_nodes = 0;
    int regional_nodes = 0;
    double core_km = 0.0;
    double regional_km = 0.0;
    bool isolated = false;  // no settlement or no reachable core node

    int fiber_nodes() const { return existing_core_nodes + new_core_nodes + regional_nodes; }
};

struct FiberNetwork {
    std::vector<Settlement> settlements;  // has_core_node updated
    std::vector<FiberEdge> edges;
    std::vector<RegionFiber> regions;     // same order as the region list given
    double total_new_km = 0.0;

    const RegionFiber& region(std::string_view id) const;
};

struct FiberParams {
    double core_pop_threshold = 10000.0;
    double core_edge_buffer_km = 2.0;
};

/// Settlements above the population threshold near an existing core edge
/// become core nodes at no cost. A region without one links its largest
/// settlement to the nearest existing core node. All other settlements join
/// a Euclidean minimum spanning tree rooted at the region's core nodes.
FiberNetwork design_fiber(std::vector<Settlement> settlements,
                          const std::vector<Polyline>& core_edges,
                          const std::vector<std::string>& region_ids, const FiberParams& params);

}  // namespace bbtea

#endif  // BBTEA_FIBER_HPP
