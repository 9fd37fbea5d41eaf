#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prfp/fabric.hpp"

namespace prfp {

// One loadable variant of a reconfigurable region.
struct ModuleInstance {
    std::string name;
    ResourceVector demand;
};

struct Region {
    std::string name;
    std::vector<ModuleInstance> instances;
};

enum class Edge { Left, Right, Top, Bottom };

std::string_view to_string(Edge edge);
std::optional<Edge> parse_edge(std::string_view token);

// A fixed I/O point on the die boundary. offset counts cells along the edge
// (rows for Left/Right, columns for Top/Bottom).
struct Terminal {
    std::string name;
    Edge edge = Edge::Left;
    int offset = 0;
};

struct Endpoint {
    enum class Kind { Region, Terminal };
    Kind kind = Kind::Region;
    std::size_t index = 0;
    friend bool operator==(const Endpoint &, const Endpoint &) = default;
};

struct Net {
    std::string name;
    std::vector<Endpoint> endpoints;
};

struct Design {
    std::string name = "design";
    std::vector<Region> regions;
    std::vector<Terminal> terminals;
    std::vector<Net> nets;
    ResourceVector static_demand;

    std::optional<std::size_t> region_index(std::string_view name) const;
    std::optional<std::size_t> terminal_index(std::string_view name) const;
    std::string_view endpoint_name(const Endpoint &ep) const;
};

Design parse_design(std::string_view text);
std::string serialize_design(const Design &design);

// Componentwise maximum over the region's instances.
ResourceVector region_requirement(const Region &region);

struct CapacityVerdict {
    bool feasible = true;
    ResourceVector demand;    // static + sum of region requirements
    ResourceVector available; // chip totals
    std::vector<ColumnKind> violated;

    std::string message() const;
};

CapacityVerdict check_capacity(const Design &design, const Fabric &fabric);

// Throws std::invalid_argument when a terminal offset falls off its edge.
void check_terminals(const Design &design, const Fabric &fabric);

} // namespace prfp
