#include "prfp/priority.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace prfp {

std::string_view to_string(RegionType t)
{
    switch (t) {
    case RegionType::Type1:
        return "Type1";
    case RegionType::Type2:
        return "Type2";
    case RegionType::Type3:
        return "Type3";
    case RegionType::Type4:
        return "Type4";
    }
    return "?";
}

RegionType classify(const ResourceVector &req)
{
    if (req.clb <= 0)
        throw std::invalid_argument("region requirement without CLBs has no type");
    if (req.dsp > 0)
        return req.bram > 0 ? RegionType::Type1 : RegionType::Type2;
    return req.bram > 0 ? RegionType::Type3 : RegionType::Type4;
}

bool medal_before(const SortedRegion &a, const SortedRegion &b)
{
    // gold = DSP, silver = BRAM, bronze = CLB; more medals rank first
    auto key = [](const SortedRegion &r) {
        return std::make_tuple(static_cast<int>(r.type), -r.requirement.dsp, -r.requirement.bram, -r.requirement.clb);
    };
    if (key(a) != key(b))
        return key(a) < key(b);
    return a.name < b.name;
}

std::vector<SortedRegion> medal_sort(const Design &design)
{
    std::vector<SortedRegion> out;
    out.reserve(design.regions.size());
    for (std::size_t i = 0; i < design.regions.size(); ++i) {
        ResourceVector req = region_requirement(design.regions[i]);
        try {
            out.push_back({design.regions[i].name, i, classify(req), req});
        } catch (const std::invalid_argument &) {
            throw std::invalid_argument("region '" + design.regions[i].name + "' requires no CLBs");
        }
    }
    std::stable_sort(out.begin(), out.end(), medal_before);
    return out;
}

} // namespace prfp
