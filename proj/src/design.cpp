#include "prfp/design.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "text_util.hpp"

namespace prfp {

std::string_view to_string(Edge edge)
{
    switch (edge) {
    case Edge::Left:
        return "Left";
    case Edge::Right:
        return "Right";
    case Edge::Top:
        return "Top";
    case Edge::Bottom:
        return "Bottom";
    }
    return "?";
}

std::optional<Edge> parse_edge(std::string_view token)
{
    std::string lower(token);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "left")
        return Edge::Left;
    if (lower == "right")
        return Edge::Right;
    if (lower == "top")
        return Edge::Top;
    if (lower == "bottom")
        return Edge::Bottom;
    return std::nullopt;
}

std::optional<std::size_t> Design::region_index(std::string_view n) const
{
    for (std::size_t i = 0; i < regions.size(); ++i)
        if (regions[i].name == n)
            return i;
    return std::nullopt;
}

std::optional<std::size_t> Design::terminal_index(std::string_view n) const
{
    for (std::size_t i = 0; i < terminals.size(); ++i)
        if (terminals[i].name == n)
            return i;
    return std::nullopt;
}

std::string_view Design::endpoint_name(const Endpoint &ep) const
{
    return ep.kind == Endpoint::Kind::Region ? std::string_view(regions.at(ep.index).name)
                                             : std::string_view(terminals.at(ep.index).name);
}

namespace {

ResourceVector parse_demand(const detail::Line &l, std::size_t first)
{
    // clb <n> bram <n> dsp <n>
    static const char *keys[] = {"clb", "bram", "dsp"};
    ResourceVector rv;
    for (int i = 0; i < 3; ++i) {
        const std::string &key = l.tokens[first + 2 * i];
        if (key != keys[i])
            throw ParseError(l.number, std::string("expected '") + keys[i] + "', got '" + key + "'");
        int v = detail::parse_count(l.tokens[first + 2 * i + 1], l.number, keys[i]);
        (i == 0 ? rv.clb : i == 1 ? rv.bram : rv.dsp) = v;
    }
    return rv;
}

} // namespace

Design parse_design(std::string_view text)
{
    Design d;
    bool named = false, has_static = false;
    std::set<std::string> names;
    std::set<std::string> net_names;
    struct PendingNet {
        int line;
        std::string name;
        std::vector<std::string> endpoints;
    };
    std::vector<PendingNet> pending;
    std::vector<int> region_line;

    auto claim_name = [&](const std::string &n, int line) {
        if (!names.insert(n).second)
            throw ParseError(line, "duplicate name '" + n + "'");
    };

    for (const detail::Line &l : detail::tokenize(text)) {
        const std::string &kw = l.tokens[0];
        if (kw == "design") {
            detail::expect_arity(l, 2, "design <name>");
            if (named)
                throw ParseError(l.number, "duplicate 'design' line");
            d.name = l.tokens[1];
            named = true;
        } else if (kw == "static") {
            detail::expect_arity(l, 7, "static clb <n> bram <n> dsp <n>");
            if (has_static)
                throw ParseError(l.number, "duplicate 'static' line");
            d.static_demand = parse_demand(l, 1);
            has_static = true;
        } else if (kw == "region") {
            detail::expect_arity(l, 2, "region <rname>");
            claim_name(l.tokens[1], l.number);
            d.regions.push_back({l.tokens[1], {}});
            region_line.push_back(l.number);
        } else if (kw == "module") {
            detail::expect_arity(l, 9, "module <rname> <iname> clb <n> bram <n> dsp <n>");
            auto idx = d.region_index(l.tokens[1]);
            if (!idx)
                throw ParseError(l.number, "module refers to undeclared region '" + l.tokens[1] + "'");
            Region &r = d.regions[*idx];
            for (const auto &inst : r.instances)
                if (inst.name == l.tokens[2])
                    throw ParseError(l.number, "duplicate instance '" + l.tokens[2] + "' in region '" + r.name + "'");
            ResourceVector demand = parse_demand(l, 3);
            if (demand.clb < 1 && demand != ResourceVector{})
                throw ParseError(l.number, "instance '" + l.tokens[2] + "' must demand at least one CLB");
            r.instances.push_back({l.tokens[2], demand});
        } else if (kw == "terminal") {
            detail::expect_arity(l, 4, "terminal <tname> <edge> <offset>");
            claim_name(l.tokens[1], l.number);
            auto edge = parse_edge(l.tokens[2]);
            if (!edge)
                throw ParseError(l.number, "unknown edge '" + l.tokens[2] + "'");
            d.terminals.push_back({l.tokens[1], *edge, detail::parse_count(l.tokens[3], l.number, "offset")});
        } else if (kw == "net") {
            if (l.tokens.size() < 3)
                throw ParseError(l.number, "expected 'net <nname> <endpoint>+'");
            if (!net_names.insert(l.tokens[1]).second)
                throw ParseError(l.number, "duplicate net '" + l.tokens[1] + "'");
            pending.push_back({l.number, l.tokens[1], {l.tokens.begin() + 2, l.tokens.end()}});
        } else {
            throw ParseError(l.number, "unknown keyword '" + kw + "'");
        }
    }

    for (std::size_t i = 0; i < d.regions.size(); ++i)
        if (d.regions[i].instances.empty())
            throw ParseError(region_line[i], "region '" + d.regions[i].name + "' has no module instances");

    for (const PendingNet &pn : pending) {
        Net net{pn.name, {}};
        for (const std::string &ep : pn.endpoints) {
            if (auto r = d.region_index(ep))
                net.endpoints.push_back({Endpoint::Kind::Region, *r});
            else if (auto t = d.terminal_index(ep))
                net.endpoints.push_back({Endpoint::Kind::Terminal, *t});
            else
                throw ParseError(pn.line, "net '" + pn.name + "' references unknown endpoint '" + ep + "'");
        }
        d.nets.push_back(std::move(net));
    }
    return d;
}

std::string serialize_design(const Design &d)
{
    std::ostringstream ss;
    ss << "design " << d.name << "\n";
    const auto &s = d.static_demand;
    ss << "static clb " << s.clb << " bram " << s.bram << " dsp " << s.dsp << "\n";
    for (const Region &r : d.regions) {
        ss << "region " << r.name << "\n";
        for (const ModuleInstance &m : r.instances)
            ss << "module " << r.name << " " << m.name << " clb " << m.demand.clb << " bram " << m.demand.bram
               << " dsp " << m.demand.dsp << "\n";
    }
    for (const Terminal &t : d.terminals)
        ss << "terminal " << t.name << " " << to_string(t.edge) << " " << t.offset << "\n";
    for (const Net &n : d.nets) {
        ss << "net " << n.name;
        for (const Endpoint &ep : n.endpoints)
            ss << " " << d.endpoint_name(ep);
        ss << "\n";
    }
    return ss.str();
}

ResourceVector region_requirement(const Region &region)
{
    ResourceVector req;
    for (const ModuleInstance &m : region.instances)
        req = componentwise_max(req, m.demand);
    return req;
}

std::string CapacityVerdict::message() const
{
    if (feasible)
        return "feasible";
    std::ostringstream ss;
    ss << "insufficient";
    for (std::size_t i = 0; i < violated.size(); ++i) {
        ColumnKind k = violated[i];
        ss << (i ? "," : "") << " " << to_string(k) << " (need " << demand[k] << ", device has " << available[k]
           << ")";
    }
    return ss.str();
}

CapacityVerdict check_capacity(const Design &design, const Fabric &fabric)
{
    CapacityVerdict v;
    v.demand = design.static_demand;
    for (const Region &r : design.regions)
        v.demand += region_requirement(r);
    v.available = fabric.chip_total();
    for (ColumnKind k : kAllKinds)
        if (v.demand[k] > v.available[k])
            v.violated.push_back(k);
    v.feasible = v.violated.empty();
    return v;
}

void check_terminals(const Design &design, const Fabric &fabric)
{
    for (const Terminal &t : design.terminals) {
        int len = (t.edge == Edge::Left || t.edge == Edge::Right) ? fabric.grid_height() : fabric.num_columns();
        if (t.offset < 0 || t.offset >= len)
            throw std::invalid_argument("terminal '" + t.name + "' offset " + std::to_string(t.offset) +
                                        " is off the " + std::string(to_string(t.edge)) + " edge (length " +
                                        std::to_string(len) + ")");
    }
}

} // namespace prfp
