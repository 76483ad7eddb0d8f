#include "bbtea/types.hpp"

#include <string>

namespace bbtea {

std::string_view to_string(Geotype g) {
    switch (g) {
        case Geotype::Urban: return "urban";
        case Geotype::Suburban: return "suburban";
        case Geotype::Rural: return "rural";
    }
    return "?";
}

std::string_view to_string(Generation g) {
    switch (g) {
        case Generation::G4: return "4G";
        case Generation::G5Nsa: return "5G_NSA";
    }
    return "?";
}

std::string_view to_string(BackhaulFamily b) {
    return b == BackhaulFamily::Wireless ? "wireless" : "fiber";
}

std::string_view to_string(BackhaulType b) {
    switch (b) {
        case BackhaulType::Fiber: return "fiber";
        case BackhaulType::Copper: return "copper";
        case BackhaulType::Microwave: return "microwave";
        case BackhaulType::Satellite: return "satellite";
    }
    return "?";
}

std::string_view to_string(Duplex d) { return d == Duplex::Fdd ? "FDD" : "TDD"; }

std::string_view to_string(ArpuTier t) {
    switch (t) {
        case ArpuTier::Low: return "low";
        case ArpuTier::Mid: return "mid";
        case ArpuTier::High: return "high";
    }
    return "?";
}

std::string_view to_string(LegacyGeneration g) {
    switch (g) {
        case LegacyGeneration::G4: return "4G";
        case LegacyGeneration::G3: return "3G";
        case LegacyGeneration::G2: return "2G";
        case LegacyGeneration::None: return "none";
    }
    return "?";
}

Geotype parse_geotype(std::string_view s) {
    if (s == "urban") return Geotype::Urban;
    if (s == "suburban") return Geotype::Suburban;
    if (s == "rural") return Geotype::Rural;
    throw ValidationError("unknown geotype '" + std::string(s) + "'");
}

Generation parse_generation(std::string_view s) {
    if (s == "4G") return Generation::G4;
    if (s == "5G_NSA" || s == "5G-NSA" || s == "5G") return Generation::G5Nsa;
    throw ValidationError("unknown generation '" + std::string(s) + "'");
}

}  // namespace bbtea
