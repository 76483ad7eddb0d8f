#include "bbtea/supply.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace bbtea {

LegacyGeneration SitePortfolio::existing_generation() const {
    if (by_generation[0] > 0) return LegacyGeneration::G4;
    if (by_generation[1] > 0) return LegacyGeneration::G3;
    if (by_generation[2] > 0) return LegacyGeneration::G2;
    return LegacyGeneration::None;
}

std::optional<BackhaulType> SitePortfolio::backhaul_type() const {
    if (existing_sites == 0) return std::nullopt;
    const auto it = std::max_element(by_backhaul.begin(), by_backhaul.end());
    return static_cast<BackhaulType>(it - by_backhaul.begin());
}

std::vector<SitePortfolio> disaggregate_towers(std::span<const LocalArea> areas,
                                               std::int64_t towers, double population,
                                               double coverage_pct) {
    if (areas.empty()) throw ValidationError("tower disaggregation needs at least one area");
    if (!(coverage_pct > 0.0 && coverage_pct <= 100.0)) {
        throw ValidationError("invariant violated: coverage_pct in (0, 100]");
    }
    if (towers < 0) throw ValidationError("invariant violated: total_towers >= 0");
    for (std::size_t i = 1; i < areas.size(); ++i) {
        if (areas[i].pop_density > areas[i - 1].pop_density) {
            throw ValidationError("tower disaggregation expects areas sorted by density, densest first");
        }
    }

    std::vector<SitePortfolio> out(areas.size());
    for (std::size_t i = 0; i < areas.size(); ++i) out[i].area_id = areas[i].area_id;
    const double covered = population * coverage_pct / 100.0;
    if (!(covered > 0.0) || towers == 0) return out;

    std::vector<double> quota(areas.size(), 0.0);
    double cumulative = 0.0;
    for (std::size_t i = 0; i < areas.size() && cumulative < covered; ++i) {
        const double take = std::min(areas[i].population, covered - cumulative);
        cumulative += areas[i].population;
        quota[i] = take * static_cast<double>(towers) / covered;
    }

    std::int64_t assigned = 0;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < areas.size(); ++i) {
        out[i].existing_sites = static_cast<std::int64_t>(std::floor(quota[i]));
        assigned += out[i].existing_sites;
        if (quota[i] > 0.0) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return quota[a] - std::floor(quota[a]) > quota[b] - std::floor(quota[b]);
    });
    // Quotas sum to `towers`, so the remainder never exceeds the number of
    // fractional quotas; the modulo only guards against rounding drift.
    for (std::size_t k = 0; assigned < towers && !order.empty(); ++k) {
        ++out[order[k % order.size()]].existing_sites;
        ++assigned;
    }
    return out;
}

std::vector<std::vector<std::int64_t>> split_ranked_sites(std::span<const std::int64_t> counts,
                                                          std::span<const double> fractions) {
    const std::int64_t total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    std::vector<std::int64_t> bounds;
    double cum = 0.0;
    for (std::size_t c = 0; c < fractions.size(); ++c) {
        cum += fractions[c];
        bounds.push_back(c + 1 == fractions.size()
                             ? total
                             : std::min(total, static_cast<std::int64_t>(
                                                   std::llround(cum * static_cast<double>(total)))));
    }
    std::vector<std::vector<std::int64_t>> out(counts.size(),
                                               std::vector<std::int64_t>(fractions.size(), 0));
    std::int64_t start = 0;
    for (std::size_t a = 0; a < counts.size(); ++a) {
        const std::int64_t end = start + counts[a];
        std::int64_t lo = 0;
        for (std::size_t c = 0; c < fractions.size(); ++c) {
            const std::int64_t hi = bounds[c];
            out[a][c] = std::max<std::int64_t>(0, std::min(end, hi) - std::max(start, lo));
            lo = std::max(lo, hi);
        }
        start = end;
    }
    return out;
}

namespace {

std::vector<std::int64_t> site_counts(std::span<const SitePortfolio> portfolios) {
    std::vector<std::int64_t> counts;
    counts.reserve(portfolios.size());
    for (const auto& p : portfolios) counts.push_back(p.existing_sites);
    return counts;
}

template <std::size_t N>
void check_fractions(const std::array<double, N>& f, std::string_view what) {
    double sum = 0.0;
    for (double x : f) {
        if (x < 0.0) throw ValidationError(fmt::format("invariant violated: {} fractions >= 0", what));
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ValidationError(fmt::format("invariant violated: {} fractions sum to 1", what));
    }
}

}  // namespace

void allocate_backhaul(std::span<SitePortfolio> portfolios, const std::array<double, 4>& mix) {
    check_fractions(mix, "backhaul mix");
    const auto split = split_ranked_sites(site_counts(portfolios), mix);
    for (std::size_t a = 0; a < portfolios.size(); ++a) {
        std::copy(split[a].begin(), split[a].end(), portfolios[a].by_backhaul.begin());
    }
}

void allocate_generations(std::span<SitePortfolio> portfolios,
                          const std::array<double, 3>& shares) {
    check_fractions(shares, "legacy generation share");
    const auto split = split_ranked_sites(site_counts(portfolios), shares);
    for (std::size_t a = 0; a < portfolios.size(); ++a) {
        std::copy(split[a].begin(), split[a].end(), portfolios[a].by_generation.begin());
    }
}

std::vector<SitePortfolio> build_site_portfolios(const Country& country,
                                                 const ModelConfig& config) {
    std::vector<std::vector<std::size_t>> members(country.regions.size());
    for (std::size_t i = 0; i < country.areas.size(); ++i) {
        members[country.region_index(country.areas[i].region_id)].push_back(i);
    }
    std::vector<SitePortfolio> out(country.areas.size());
    for (std::size_t r = 0; r < country.regions.size(); ++r) {
        const auto& region = country.regions[r];
        auto& idx = members[r];
        if (idx.empty()) continue;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            const auto& x = country.areas[a];
            const auto& y = country.areas[b];
            if (x.pop_density != y.pop_density) return x.pop_density > y.pop_density;
            return x.area_id < y.area_id;
        });
        std::vector<LocalArea> sorted;
        sorted.reserve(idx.size());
        double population = 0.0;
        for (auto i : idx) {
            sorted.push_back(country.areas[i]);
            population += country.areas[i].population;
        }
        auto portfolios =
            disaggregate_towers(sorted, region.total_towers, population, region.coverage_pct);
        allocate_backhaul(portfolios, region.backhaul_mix);
        allocate_generations(portfolios,
                             region.legacy_shares.value_or(std::array<double, 3>{
                                 config.existing_share_4g, config.existing_share_3g,
                                 config.existing_share_2g}));
        for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] = std::move(portfolios[k]);
    }
    return out;
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;  // smallest index is the root, which keeps ids stable
    }

private:
    std::vector<std::size_t> parent_;
};

template <typename CellThreshold, typename SettlementThreshold>
std::vector<Settlement> settle(const std::vector<LocalArea>& areas, const Adjacency& adjacency,
                               CellThreshold cell_threshold,
                               SettlementThreshold settlement_threshold) {
    std::vector<bool> dense(areas.size());
    for (std::size_t i = 0; i < areas.size(); ++i) {
        dense[i] = areas[i].pop_density >= cell_threshold(areas[i]);
    }
    DisjointSets sets(areas.size());
    for (const auto& [a, b] : adjacency) {
        if (a >= areas.size() || b >= areas.size()) {
            throw ValidationError("adjacency references an unknown area");
        }
        if (dense[a] && dense[b] && areas[a].region_id == areas[b].region_id) sets.unite(a, b);
    }

    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t i = 0; i < areas.size(); ++i) {
        if (dense[i]) components[sets.find(i)].push_back(i);
    }

    std::vector<Settlement> out;
    std::map<std::string, int> per_region;
    for (const auto& [root, cells] : components) {
        Settlement s;
        s.region_id = areas[root].region_id;
        bool positioned = true;
        double wx = 0.0;
        double wy = 0.0;
        for (auto i : cells) {
            const auto& a = areas[i];
            s.population += a.population;
            s.member_area_ids.push_back(a.area_id);
            if (a.position) {
                wx += a.population * a.position->x;
                wy += a.population * a.position->y;
            } else {
                positioned = false;
            }
        }
        if (s.population < settlement_threshold(s.region_id)) continue;
        if (positioned) s.position = Point{wx / s.population, wy / s.population};
        s.settlement_id = fmt::format("{}-s{}", s.region_id, per_region[s.region_id]++);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

std::vector<Settlement> build_settlements(const std::vector<LocalArea>& areas,
                                          double cell_threshold, double settlement_threshold,
                                          const Adjacency& adjacency) {
    return settle(
        areas, adjacency, [&](const LocalArea&) { return cell_threshold; },
        [&](const std::string&) { return settlement_threshold; });
}

std::vector<Settlement> build_settlements(const Country& country, const ModelConfig& config) {
    return settle(
        country.areas, country.adjacency,
        [&](const LocalArea& a) {
            return country.region(a.region_id).cell_threshold.value_or(config.cell_threshold);
        },
        [&](const std::string& region) {
            return country.region(region).settlement_threshold.value_or(
                config.settlement_threshold);
        });
}

double mean_backhaul_distance(double fiber_nodes_per_km2) {
    if (!(fiber_nodes_per_km2 > 0.0)) {
        throw ValidationError("invariant violated: fiber node density > 0");
    }
    return std::sqrt(1.0 / fiber_nodes_per_km2) / 2.0;
}

}  // namespace bbtea
