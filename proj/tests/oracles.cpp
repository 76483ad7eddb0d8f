#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracle {

namespace {

// Decodes a Pruefer sequence over k vertices into k - 1 edges.
std::vector<std::pair<int, int>> decode(const std::vector<int>& seq, int k) {
    std::vector<int> degree(static_cast<std::size_t>(k), 1);
    for (int v : seq) ++degree[static_cast<std::size_t>(v)];
    std::vector<std::pair<int, int>> edges;
    for (int v : seq) {
        for (int leaf = 0; leaf < k; ++leaf) {
            if (degree[static_cast<std::size_t>(leaf)] == 1) {
                edges.emplace_back(leaf, v);
                --degree[static_cast<std::size_t>(leaf)];
                --degree[static_cast<std::size_t>(v)];
                break;
            }
        }
    }
    int u = -1;
    for (int w = 0; w < k; ++w) {
        if (degree[static_cast<std::size_t>(w)] == 1) {
            if (u < 0) {
                u = w;
            } else {
                edges.emplace_back(u, w);
                break;
            }
        }
    }
    return edges;
}

}  // namespace

double min_rooted_forest_km(std::span<const bbtea::Point> points, const std::vector<bool>& is_root) {
    std::vector<bbtea::Point> roots;
    std::vector<bbtea::Point> others;
    for (std::size_t i = 0; i < points.size(); ++i) {
        (is_root[i] ? roots : others).push_back(points[i]);
    }
    if (roots.empty()) throw std::invalid_argument("oracle needs at least one root");

    // Vertex 0 is the merged root, 1..m the other points.
    const int k = static_cast<int>(others.size()) + 1;
    auto weight = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        if (a == 0) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& r : roots) best = std::min(best, bbtea::distance(r, others[b - 1]));
            return best;
        }
        return bbtea::distance(others[a - 1], others[b - 1]);
    };
    if (k == 1) return 0.0;
    if (k == 2) return weight(0, 1);

    std::vector<int> seq(static_cast<std::size_t>(k - 2), 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        double total = 0.0;
        for (auto [a, b] : decode(seq, k)) total += weight(a, b);
        best = std::min(best, total);
        std::size_t i = 0;
        while (i < seq.size() && ++seq[i] == k) seq[i++] = 0;
        if (i == seq.size()) break;
    }
    return best;
}

double annuity_npv(double c, double rate, int n) {
    if (rate == 0.0) return c * n;
    const double v = 1.0 / (1.0 + rate);
    return c * (1.0 - std::pow(v, n)) / (1.0 - v);
}

std::vector<double> decile_populations(std::span<const double> populations,
                                       std::span<const int> deciles) {
    std::vector<double> out(10, 0.0);
    for (std::size_t i = 0; i < populations.size(); ++i) {
        out[static_cast<std::size_t>(deciles[i] - 1)] += populations[i];
    }
    return out;
}

double invert_curve(std::span<const double> density, std::span<const double> capacity,
                    double demand) {
    if (demand <= 0.0) return 0.0;
    // The sparsest tabulated network is the floor.
    if (demand <= capacity.front()) return density.front();
    auto cap_at = [&](double d) {
        for (std::size_t i = 1; i < density.size(); ++i) {
            if (d <= density[i]) {
                const double t = (d - density[i - 1]) / (density[i] - density[i - 1]);
                return capacity[i - 1] + t * (capacity[i] - capacity[i - 1]);
            }
        }
        return capacity.back();
    };
    if (cap_at(density.back()) < demand) return std::numeric_limits<double>::infinity();
    double lo = density.front();
    double hi = density.back();
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cap_at(mid) >= demand ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace oracle
