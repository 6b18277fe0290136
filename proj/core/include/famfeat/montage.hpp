#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace famfeat {

/// Familiarity level of the stimulus that produced an epoch.
enum class Familiarity { unfamiliar, familiar, very_familiar };

inline constexpr std::array<Familiarity, 3> kAllFamiliarity = {
    Familiarity::unfamiliar, Familiarity::familiar, Familiarity::very_familiar};

std::string_view to_string(Familiarity f) noexcept;
/// Throws ParameterError for unknown names.
Familiarity parse_familiarity(std::string_view name);

/// Scalp regions used when attributing selected features to electrodes.
enum class Region { prefrontal, frontal, central, temporal, parietal, occipital };

inline constexpr std::array<Region, 6> kAllRegions = {
    Region::prefrontal, Region::frontal,  Region::central,
    Region::temporal,   Region::parietal, Region::occipital};

std::string_view to_string(Region r) noexcept;

/// Electrodes per region. The six lists are disjoint and cover 19 scalp sites.
const std::vector<std::string>& region_electrodes(Region r);

/// Region of a 10-20 electrode, or nullopt for sites outside the region table
/// (the A1/A2 ear references, EOG, unknown labels).
std::optional<Region> region_of(std::string_view electrode);

/// The 21-channel recording montage: the 19 regional scalp sites plus A1/A2.
const std::vector<std::string>& standard_montage();

}  // namespace famfeat
