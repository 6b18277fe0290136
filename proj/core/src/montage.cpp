#include "famfeat/montage.hpp"

#include "famfeat/error.hpp"

namespace famfeat {

std::string_view to_string(Familiarity f) noexcept {
  switch (f) {
    case Familiarity::unfamiliar: return "unfamiliar";
    case Familiarity::familiar: return "familiar";
    case Familiarity::very_familiar: return "very_familiar";
  }
  return "unknown";
}

Familiarity parse_familiarity(std::string_view name) {
  for (auto f : kAllFamiliarity) {
    if (to_string(f) == name) return f;
  }
  throw ParameterError("unknown class label '" + std::string(name) +
                       "' (expected unfamiliar, familiar or very_familiar)");
}

std::string_view to_string(Region r) noexcept {
  switch (r) {
    case Region::prefrontal: return "prefrontal";
    case Region::frontal: return "frontal";
    case Region::central: return "central";
    case Region::temporal: return "temporal";
    case Region::parietal: return "parietal";
    case Region::occipital: return "occipital";
  }
  return "unknown";
}

const std::vector<std::string>& region_electrodes(Region r) {
  static const std::array<std::vector<std::string>, 6> table = {{
      {"Fp1", "Fp2"},
      {"Fz", "F8", "F7", "F4", "F3"},
      {"Cz", "C4", "C3"},
      {"T6", "T5", "T4", "T3"},
      {"Pz", "P4", "P3"},
      {"O1", "O2"},
  }};
  return table[static_cast<std::size_t>(r)];
}

std::optional<Region> region_of(std::string_view electrode) {
  for (auto r : kAllRegions) {
    for (const auto& e : region_electrodes(r)) {
      if (e == electrode) return r;
    }
  }
  return std::nullopt;
}

const std::vector<std::string>& standard_montage() {
  static const std::vector<std::string> montage = {
      "Fp1", "Fp2", "F7", "F3", "Fz", "F4", "F8", "T3", "C3", "Cz", "C4",
      "T4",  "T5",  "P3", "Pz", "P4", "T6", "O1", "O2", "A1", "A2"};
  return montage;
}

}  // namespace famfeat
