// prfp: floorplanner for partially reconfigurable regions.
//
//   prfp plan     --device d.txt --design s.txt [--seed N] [--out p.txt] [--svg f.svg] [--report r.json]
//   prfp validate --device d.txt --design s.txt --plan p.txt
//   prfp gen      --device d.txt --regions N --seed N [--clb lo:hi] [--bram lo:hi] [--dsp lo:hi]
//   prfp render   --device d.txt --plan p.txt --svg f.svg

#include <iostream>

#include <CLI11.hpp>

#include "prfp/cli.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"Floorplanner for partially reconfigurable regions on column-heterogeneous FPGAs"};
    app.require_subcommand(1);

    prfp::PlanOptions plan;
    auto *p = app.add_subcommand("plan", "place the design's regions and optimize the floorplan");
    p->add_option("--device", plan.device, "device description")->required();
    p->add_option("--design", plan.design, "design description")->required();
    p->add_option("--seed", plan.seed, "RNG seed");
    p->add_option("--alpha", plan.alpha, "wirelength weight");
    p->add_option("--beta", plan.beta, "bounding-area weight");
    p->add_option("--gamma", plan.gamma, "wasted-resource weight");
    p->add_option("--ws-weights", plan.ws_weights, "white-space weights a,b,g,d");
    p->add_option("--params", plan.params, "annealing parameters file");
    p->add_option("--restarts", plan.restarts, "independent seeded runs; the best is kept")->check(CLI::PositiveNumber);
    p->add_option("--out", plan.out, "constraint file (stdout when omitted)");
    p->add_option("--svg", plan.svg, "SVG drawing");
    p->add_option("--report", plan.report, "JSON report");
    p->add_flag("--xdc-style", plan.xdc_style, "emit pblock commands with X<x>Y<y> grid names");

    prfp::ValidateOptions val;
    auto *v = app.add_subcommand("validate", "check a constraint file against device and design");
    v->add_option("--device", val.device, "device description")->required();
    v->add_option("--design", val.design, "design description")->required();
    v->add_option("--plan", val.plan, "constraint file")->required();

    prfp::GenCommandOptions gen;
    std::string clb = "4:16", bram = "0:2", dsp = "0:2";
    auto *g = app.add_subcommand("gen", "generate a seeded synthetic design");
    g->add_option("--device", gen.device, "device description (for terminal positions)")->required();
    g->add_option("--regions", gen.gen.regions, "number of regions")->check(CLI::NonNegativeNumber);
    g->add_option("--seed", gen.gen.seed, "RNG seed");
    g->add_option("--clb", clb, "CLB demand range lo:hi");
    g->add_option("--bram", bram, "BRAM demand range lo:hi");
    g->add_option("--dsp", dsp, "DSP demand range lo:hi");
    g->add_option("--instances", gen.gen.instances, "module instances per region")->check(CLI::PositiveNumber);
    g->add_option("--scarce-prob", gen.gen.scarce_prob, "chance an instance demands BRAM or DSP at all");
    g->add_option("--name", gen.gen.name, "design name");
    g->add_option("--out", gen.out, "output file (stdout when omitted)");

    prfp::RenderOptions ren;
    auto *r = app.add_subcommand("render", "draw a constraint file as SVG");
    r->add_option("--device", ren.device, "device description")->required();
    r->add_option("--plan", ren.plan, "constraint file")->required();
    r->add_option("--svg", ren.svg, "output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : prfp::kExitParse;
    }

    if (p->parsed())
        return prfp::cmd_plan(plan, std::cout, std::cerr);
    if (v->parsed())
        return prfp::cmd_validate(val, std::cout, std::cerr);
    if (g->parsed()) {
        try {
            gen.gen.clb = prfp::parse_range(clb);
            gen.gen.bram = prfp::parse_range(bram);
            gen.gen.dsp = prfp::parse_range(dsp);
        } catch (const std::invalid_argument &e) {
            std::cerr << "invalid input: " << e.what() << "\n";
            return prfp::kExitParse;
        }
        return prfp::cmd_gen(gen, std::cout, std::cerr);
    }
    return prfp::cmd_render(ren, std::cout, std::cerr);
}
