#ifndef BBTEA_TYPES_HPP
#define BBTEA_TYPES_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bbtea {

/// Raised when an input violates a schema or a documented invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a computation cannot be completed with the configured inputs,
/// e.g. an area whose demand exceeds the densest tabulated network.
class RuntimeFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Geotype { Urban, Suburban, Rural };
enum class Generation { G4, G5Nsa };
enum class BackhaulFamily { Wireless, Fiber };
enum class BackhaulType { Fiber, Copper, Microwave, Satellite };
enum class Duplex { Fdd, Tdd };
enum class ArpuTier { Low, Mid, High };
enum class LegacyGeneration { G4, G3, G2, None };

inline constexpr std::array<Geotype, 3> kGeotypes{Geotype::Urban, Geotype::Suburban,
                                                  Geotype::Rural};
inline constexpr std::array<Generation, 2> kGenerations{Generation::G4, Generation::G5Nsa};

std::string_view to_string(Geotype g);
std::string_view to_string(Generation g);
std::string_view to_string(BackhaulFamily b);
std::string_view to_string(BackhaulType b);
std::string_view to_string(Duplex d);
std::string_view to_string(ArpuTier t);
std::string_view to_string(LegacyGeneration g);

Geotype parse_geotype(std::string_view s);
Generation parse_generation(std::string_view s);

inline constexpr std::size_t index_of(Geotype g) { return static_cast<std::size_t>(g); }
inline constexpr std::size_t index_of(Generation g) { return static_cast<std::size_t>(g); }
inline constexpr std::size_t index_of(BackhaulType b) { return static_cast<std::size_t>(b); }

}  // namespace bbtea

#endif  // BBTEA_TYPES_HPP
