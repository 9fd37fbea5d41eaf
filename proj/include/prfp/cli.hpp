#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prfp/anneal.hpp"
#include "prfp/design.hpp"
#include "prfp/fabric.hpp"

namespace prfp {

enum ExitCode : int {
    kExitOk = 0,
    kExitViolations = 1,
    kExitParse = 2,
    kExitInfeasible = 3,
    kExitIo = 4,
};

// ---- constraint files -------------------------------------------------

struct PlanRecord {
    std::string region;
    Rect rect;
    std::optional<ResourceVector> frames; // per-kind frame counts, when given
};

struct PlanDoc {
    std::string name;
    std::vector<PlanRecord> records;
};

struct EmitOptions {
    // Vendor-flavoured pblock commands with X<x>Y<y> grid names.
    bool xdc_style = false;
};

// `plan <name>`, then per region `pblock`, `rect x1 y1 x2 y2` and
// `frames CLB n BRAM n DSP n`, regions in medal-sort order.
std::string emit_constraints(const Floorplan &fp, const Fabric &fabric, std::string_view plan_name,
                             const EmitOptions &opts = {});

// Reads the neutral grammar. Throws ParseError.
PlanDoc parse_plan(std::string_view text);

struct Violation {
    std::string kind; // missing, unknown, duplicate, bounds, alignment, overlap,
                      // frame-share, reserved, coverage, capacity, frames
    std::vector<std::string> regions;
    std::string message;
};

// Every legality check the planner guarantees; empty for a legal plan.
std::vector<Violation> validate_plan(const PlanDoc &plan, const Design &design, const Fabric &fabric);

// ---- report and drawing -----------------------------------------------

struct Report {
    std::string design;
    std::string device;
    CostBreakdown cost;
    double initial_total_cost = 0.0;
    ResourceVector waste;
    double waste_pct[3] = {0, 0, 0}; // clb, bram, dsp
    CostWeights weights;
    WsWeights ws_weights;
    std::uint64_t seed = 0;
    std::size_t iterations = 0;
    int restarts = 1;
    double runtime_ms = 0.0;
};

Report make_report(const Design &design, const Fabric &fabric, const AnnealResult &result, const AnnealParams &params,
                   int restarts, double runtime_ms);
std::string report_json(const Report &r);

// Standalone SVG at 10 px per cell, row 0 at the bottom.
std::string emit_svg(const Floorplan &fp, const Fabric &fabric);

// ---- instance generator -----------------------------------------------

struct Range {
    int lo = 0, hi = 0;
};

struct GenOptions {
    int regions = 8;
    std::uint64_t seed = 1;
    Range clb{4, 16};
    Range bram{0, 2};
    Range dsp{0, 2};
    int instances = 2;       // module instances per region
    double scarce_prob = 1.0; // chance an instance draws BRAM (and, separately, DSP)
    std::string name;        // default derived from seed and size
};

// Seeded synthetic design: demands uniform in the ranges, a connected
// hypergraph of 2-4 endpoint nets, and one terminal at each die corner.
// Throws std::invalid_argument on bad options.
Design generate_design(const GenOptions &opts, const Fabric &fabric);

// "lo:hi" or "n". Throws std::invalid_argument.
Range parse_range(std::string_view text);
// "a,b,g,d". Throws std::invalid_argument.
WsWeights parse_ws_weights(std::string_view text);

// ---- commands -----------------------------------------------------------

struct PlanOptions {
    std::string device, design;
    std::string out, svg, report, params;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha, beta, gamma;
    std::optional<std::string> ws_weights;
    int restarts = 1;
    bool xdc_style = false;
};

struct ValidateOptions {
    std::string device, design, plan;
};

struct GenCommandOptions {
    std::string device, out;
    GenOptions gen;
};

struct RenderOptions {
    std::string device, plan, svg;
};

// Each command reports through out/err and returns an ExitCode.
int cmd_plan(const PlanOptions &opts, std::ostream &out, std::ostream &err);
int cmd_validate(const ValidateOptions &opts, std::ostream &out, std::ostream &err);
int cmd_gen(const GenCommandOptions &opts, std::ostream &out, std::ostream &err);
int cmd_render(const RenderOptions &opts, std::ostream &out, std::ostream &err);

} // namespace prfp
