#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "prfp/design.hpp"

namespace prfp {

// Type1: DSP+BRAM+CLB, Type2: DSP+CLB, Type3: BRAM+CLB, Type4: CLB only.
enum class RegionType { Type1 = 1, Type2 = 2, Type3 = 3, Type4 = 4 };

std::string_view to_string(RegionType t);

// Throws std::invalid_argument when req.clb <= 0.
RegionType classify(const ResourceVector &req);

struct SortedRegion {
    std::string name;
    std::size_t index = 0; // position in Design::regions
    RegionType type = RegionType::Type4;
    ResourceVector requirement;
};

// Strict weak order: type ascending, then (dsp, bram, clb) descending, then
// name ascending.
bool medal_before(const SortedRegion &a, const SortedRegion &b);

std::vector<SortedRegion> medal_sort(const Design &design);

} // namespace prfp
