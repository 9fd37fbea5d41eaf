#include <json.hpp>

#include "prfp/cli.hpp"

namespace prfp {

Report make_report(const Design &design, const Fabric &fabric, const AnnealResult &result, const AnnealParams &params,
                   int restarts, double runtime_ms)
{
    Report r;
    r.design = design.name;
    r.device = fabric.name();
    r.cost = result.best.cost;
    r.initial_total_cost = result.initial.cost.total;
    for (const Placement &p : result.best.placements)
        r.waste += p.waste;
    const ResourceVector totals = fabric.chip_total();
    for (ColumnKind k : kAllKinds)
        r.waste_pct[static_cast<int>(k)] = totals[k] > 0 ? 100.0 * r.waste[k] / totals[k] : 0.0;
    r.weights = result.weights;
    r.ws_weights = params.ws_weights;
    r.seed = result.best.seed;
    r.iterations = result.best.iterations;
    r.restarts = restarts;
    r.runtime_ms = runtime_ms;
    return r;
}

std::string report_json(const Report &r)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["design"] = r.design;
    j["device"] = r.device;
    j["hpwl"] = r.cost.wl;
    j["area"] = r.cost.area;
    j["wr"] = r.cost.wr;
    j["total_cost"] = r.cost.total;
    j["initial_total_cost"] = r.initial_total_cost;
    j["waste"] = {{"clb", r.waste.clb}, {"bram", r.waste.bram}, {"dsp", r.waste.dsp}};
    j["waste_pct"] = {{"clb", r.waste_pct[0]}, {"bram", r.waste_pct[1]}, {"dsp", r.waste_pct[2]}};
    j["normalizers"] = {{"wl", r.weights.norm_wl}, {"area", r.weights.norm_area}, {"wr", r.weights.norm_wr}};
    j["weights"] = {{"alpha", r.weights.alpha}, {"beta", r.weights.beta}, {"gamma", r.weights.gamma}};
    j["ws_weights"] = {{"alpha", r.ws_weights.alpha},
                       {"beta", r.ws_weights.beta},
                       {"gamma", r.ws_weights.gamma},
                       {"delta", r.ws_weights.delta}};
    j["seed"] = r.seed;
    j["restarts"] = r.restarts;
    j["iterations"] = r.iterations;
    j["runtime_ms"] = r.runtime_ms;
    return j.dump(2) + "\n";
}

} // namespace prfp
