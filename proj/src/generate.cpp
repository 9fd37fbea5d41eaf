#include <charconv>
#include <stdexcept>
#include <string>

#include "prfp/cli.hpp"
#include "prfp/rng.hpp"

namespace prfp {

namespace {

int parse_int_strict(std::string_view s, std::string_view what)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

int draw(Rng &rng, const Range &r) { return static_cast<int>(rng.uniform_int(r.lo, r.hi)); }

} // namespace

Range parse_range(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        const int v = parse_int_strict(text, "range");
        return {v, v};
    }
    return {parse_int_strict(text.substr(0, colon), "range"), parse_int_strict(text.substr(colon + 1), "range")};
}

WsWeights parse_ws_weights(std::string_view text)
{
    double v[4];
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        const std::size_t comma = i < 3 ? text.find(',', pos) : text.size();
        if (comma == std::string_view::npos)
            throw std::invalid_argument("expected four comma-separated white-space weights");
        const std::string_view part = text.substr(pos, comma - pos);
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v[i]);
        if (part.empty() || ec != std::errc() || ptr != part.data() + part.size())
            throw std::invalid_argument("bad white-space weight '" + std::string(part) + "'");
        pos = comma + 1;
    }
    WsWeights w{v[0], v[1], v[2], v[3]};
    w.validate();
    return w;
}

Design generate_design(const GenOptions &o, const Fabric &fabric)
{
    auto check_range = [](const Range &r, int min_lo, const char *what) {
        if (r.lo > r.hi)
            throw std::invalid_argument(std::string("empty ") + what + " range");
        if (r.lo < min_lo)
            throw std::invalid_argument(std::string(what) + " range must start at " + std::to_string(min_lo) +
                                        " or more");
    };
    if (o.regions < 0)
        throw std::invalid_argument("region count must be >= 0");
    if (o.instances < 1)
        throw std::invalid_argument("instances per region must be >= 1");
    if (!(o.scarce_prob >= 0.0 && o.scarce_prob <= 1.0))
        throw std::invalid_argument("scarce probability must lie in [0, 1]");
    check_range(o.clb, 1, "clb");
    check_range(o.bram, 0, "bram");
    check_range(o.dsp, 0, "dsp");

    Rng rng(o.seed);
    Design d;
    d.name = o.name.empty() ? "gen" + std::to_string(o.regions) + "_s" + std::to_string(o.seed) : o.name;

    for (int i = 0; i < o.regions; ++i) {
        Region r{"r" + std::to_string(i), {}};
        for (int k = 0; k < o.instances; ++k) {
            ResourceVector demand;
            demand.clb = draw(rng, o.clb);
            demand.bram = rng.uniform01() < o.scarce_prob ? draw(rng, o.bram) : 0;
            demand.dsp = rng.uniform01() < o.scarce_prob ? draw(rng, o.dsp) : 0;
            r.instances.push_back({"m" + std::to_string(k), demand});
        }
        d.regions.push_back(std::move(r));
    }

    const int last = fabric.num_columns() - 1;
    d.terminals = {{"t_bl", Edge::Bottom, 0}, {"t_br", Edge::Bottom, last}, {"t_tl", Edge::Top, 0}, {"t_tr", Edge::Top, last}};
    if (o.regions == 0)
        return d;

    // Nodes in random region order, terminals last; every node after the
    // first joins a net with one to three earlier nodes, which keeps the
    // hypergraph connected.
    std::vector<Endpoint> nodes;
    for (int i = 0; i < o.regions; ++i)
        nodes.push_back({Endpoint::Kind::Region, static_cast<std::size_t>(i)});
    rng.shuffle(nodes);
    for (std::size_t t = 0; t < d.terminals.size(); ++t)
        nodes.push_back({Endpoint::Kind::Terminal, t});

    auto add_net = [&](std::vector<Endpoint> eps) {
        d.nets.push_back({"n" + std::to_string(d.nets.size()), std::move(eps)});
    };
    for (std::size_t k = 1; k < nodes.size(); ++k) {
        std::vector<std::size_t> earlier(k);
        for (std::size_t i = 0; i < k; ++i)
            earlier[i] = i;
        rng.shuffle(earlier);
        const auto extra = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(std::min<std::size_t>(3, k))));
        std::vector<Endpoint> eps{nodes[k]};
        for (std::size_t i = 0; i < extra; ++i)
            eps.push_back(nodes[earlier[i]]);
        add_net(std::move(eps));
    }
    for (int e = 0; e < o.regions / 2; ++e) {
        std::vector<std::size_t> pick(nodes.size());
        for (std::size_t i = 0; i < pick.size(); ++i)
            pick[i] = i;
        rng.shuffle(pick);
        const auto size = static_cast<std::size_t>(rng.uniform_int(2, static_cast<std::int64_t>(std::min<std::size_t>(4, nodes.size()))));
        std::vector<Endpoint> eps;
        for (std::size_t i = 0; i < size; ++i)
            eps.push_back(nodes[pick[i]]);
        add_net(std::move(eps));
    }
    return d;
}

} // namespace prfp
