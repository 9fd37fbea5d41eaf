#include "prfp/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "prfp/errors.hpp"

namespace prfp {

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parse error tagged with the file it came from.
struct FileParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush())
        throw IoError("cannot write '" + path + "'");
}

template <class F> auto parse_file(const std::string &path, F &&parse)
{
    const std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const ParseError &e) {
        throw FileParseError(path + ": " + e.what());
    }
}

// Runs body and maps the library's exceptions onto exit codes.
template <class F> int guarded(std::ostream &err, F &&body)
{
    try {
        return body();
    } catch (const FileParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const InfeasibleError &e) {
        err << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const IoError &e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument &e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitParse;
    }
}

} // namespace

int cmd_plan(const PlanOptions &o, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const Fabric fabric = parse_file(o.device, parse_device);
        const Design design = parse_file(o.design, parse_design);
        check_terminals(design, fabric);

        AnnealParams params;
        if (!o.params.empty())
            params = parse_file(o.params, [](const std::string &t) { return parse_anneal_params(t); });
        if (o.seed)
            params.seed = *o.seed;
        if (o.alpha)
            params.weights.alpha = *o.alpha;
        if (o.beta)
            params.weights.beta = *o.beta;
        if (o.gamma)
            params.weights.gamma = *o.gamma;
        if (o.ws_weights)
            params.ws_weights = parse_ws_weights(*o.ws_weights);
        params.validate();

        const auto start = std::chrono::steady_clock::now();
        const AnnealResult result = anneal_multistart(design, fabric, params, o.restarts);
        const double runtime_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

        const std::string plan = emit_constraints(result.best, fabric, design.name, {o.xdc_style});
        if (o.out.empty())
            out << plan;
        else
            write_file(o.out, plan);
        if (!o.svg.empty())
            write_file(o.svg, emit_svg(result.best, fabric));
        const Report report = make_report(design, fabric, result, params, o.restarts, runtime_ms);
        if (!o.report.empty())
            write_file(o.report, report_json(report));
        if (!o.out.empty())
            out << design.name << ": " << design.regions.size() << " regions, total cost " << report.cost.total
                << " (initial " << report.initial_total_cost << "), seed " << report.seed << ", "
                << report.iterations << " moves\n";
        return int(kExitOk);
    });
}

int cmd_validate(const ValidateOptions &o, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const Fabric fabric = parse_file(o.device, parse_device);
        const Design design = parse_file(o.design, parse_design);
        const PlanDoc plan = parse_file(o.plan, parse_plan);
        const std::vector<Violation> vs = validate_plan(plan, design, fabric);
        for (const Violation &v : vs)
            out << v.kind << ": " << v.message << "\n";
        if (!vs.empty())
            return int(kExitViolations);
        out << "ok: " << plan.records.size() << " regions, no violations\n";
        return int(kExitOk);
    });
}

int cmd_gen(const GenCommandOptions &o, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const Fabric fabric = parse_file(o.device, parse_device);
        const std::string text = serialize_design(generate_design(o.gen, fabric));
        if (o.out.empty())
            out << text;
        else
            write_file(o.out, text);
        return int(kExitOk);
    });
}

int cmd_render(const RenderOptions &o, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const Fabric fabric = parse_file(o.device, parse_device);
        const PlanDoc plan = parse_file(o.plan, parse_plan);
        Floorplan fp;
        for (const PlanRecord &rec : plan.records) {
            Placement p;
            p.region = rec.region;
            p.rect = rec.rect;
            fp.placements.push_back(std::move(p));
        }
        const std::string svg = emit_svg(fp, fabric);
        if (o.svg.empty())
            out << svg;
        else
            write_file(o.svg, svg);
        return int(kExitOk);
    });
}

} // namespace prfp
