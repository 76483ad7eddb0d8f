#include "bbtea/fiber.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <map>

namespace bbtea {

const RegionFiber& FiberNetwork::region(std::string_view id) const {
    for (const auto& r : regions) {
        if (r.region_id == id) return r;
    }
    throw RuntimeFailure(fmt::format("fiber design has no region '{}'", id));
}

namespace {

Point position_of(const Settlement& s) {
    if (!s.position) {
        throw ValidationError(
            fmt::format("settlement {} has no coordinates; fiber design needs x_km,y_km for "
                        "every area",
                        s.settlement_id));
    }
    return *s.position;
}

// Prim's algorithm with every core node preloaded into the tree.
void span_region(FiberNetwork& net, const std::vector<std::size_t>& members, RegionFiber& rf) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const std::size_t n = members.size();
    std::vector<bool> in_tree(n);
    std::vector<double> key(n, kInf);
    std::vector<std::size_t> parent(n, n);

    auto relax_from = [&](std::size_t u) {
        const Point pu = position_of(net.settlements[members[u]]);
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            const double d = distance(pu, position_of(net.settlements[members[v]]));
            if (d < key[v]) {
                key[v] = d;
                parent[v] = u;
            }
        }
    };

    std::size_t remaining = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (net.settlements[members[i]].has_core_node) {
            in_tree[i] = true;
            --remaining;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (in_tree[i]) relax_from(i);
    }
    while (remaining > 0) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_tree[v] && (best == n || key[v] < key[best])) best = v;
        }
        in_tree[best] = true;
        --remaining;
        net.edges.push_back(
            {members[parent[best]], members[best], key[best], EdgeKind::Regional});
        rf.regional_km += key[best];
        ++rf.regional_nodes;
        relax_from(best);
    }
}

}  // namespace

FiberNetwork design_fiber(std::vector<Settlement> settlements,
                          const std::vector<Polyline>& core_edges,
                          const std::vector<std::string>& region_ids, const FiberParams& params) {
    FiberNetwork net;
    net.settlements = std::move(settlements);

    std::vector<std::size_t> existing_core;
    for (std::size_t i = 0; i < net.settlements.size(); ++i) {
        auto& s = net.settlements[i];
        s.has_core_node = false;
        if (s.population <= params.core_pop_threshold) continue;
        const Point p = position_of(s);
        const bool near_edge = std::any_of(core_edges.begin(), core_edges.end(), [&](const Polyline& e) {
            return distance_to_polyline(p, e) <= params.core_edge_buffer_km;
        });
        if (near_edge) {
            s.has_core_node = true;
            existing_core.push_back(i);
        }
    }

    std::map<std::string, std::vector<std::size_t>, std::less<>> by_region;
    for (std::size_t i = 0; i < net.settlements.size(); ++i) {
        by_region[net.settlements[i].region_id].push_back(i);
    }

    for (const auto& id : region_ids) {
        RegionFiber rf;
        rf.region_id = id;
        const auto it = by_region.find(id);
        if (it == by_region.end()) {
            rf.isolated = true;
            net.regions.push_back(rf);
            continue;
        }
        const auto& members = it->second;
        for (auto i : members) rf.existing_core_nodes += net.settlements[i].has_core_node ? 1 : 0;

        if (rf.existing_core_nodes == 0) {
            if (existing_core.empty()) {
                rf.isolated = true;
                net.regions.push_back(rf);
                continue;
            }
            std::size_t largest = members.front();
            for (auto i : members) {
                if (net.settlements[i].population > net.settlements[largest].population) largest = i;
            }
            const Point p = position_of(net.settlements[largest]);
            std::size_t nearest = existing_core.front();
            double best = std::numeric_limits<double>::infinity();
            for (auto c : existing_core) {
                const double d = distance(p, position_of(net.settlements[c]));
                if (d < best) {
                    best = d;
                    nearest = c;
                }
            }
            net.edges.push_back({nearest, largest, best, EdgeKind::Core});
            net.settlements[largest].has_core_node = true;
            rf.core_km += best;
            rf.new_core_nodes = 1;
        }
        span_region(net, members, rf);
        net.regions.push_back(rf);
    }

    for (const auto& e : net.edges) net.total_new_km += e.length_km;
    return net;
}

}  // namespace bbtea
