#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "prfp/cli.hpp"
#include "prfp/priority.hpp"
#include "text_util.hpp"

namespace prfp {

std::string emit_constraints(const Floorplan &fp, const Fabric &fabric, std::string_view plan_name,
                             const EmitOptions &opts)
{
    std::vector<SortedRegion> order;
    for (std::size_t i = 0; i < fp.placements.size(); ++i) {
        const Placement &p = fp.placements[i];
        const ResourceVector req = capacity(fabric, p.rect) - p.waste;
        order.push_back({p.region, i, classify(req), req});
    }
    std::stable_sort(order.begin(), order.end(), medal_before);

    std::ostringstream ss;
    if (opts.xdc_style) {
        ss << "# WARNING: X<x>Y<y> below are fabric grid coordinates (column, CLB row), not vendor site names.\n"
           << "# plan " << plan_name << "\n";
        for (const SortedRegion &r : order) {
            const Rect &rect = fp.placements[r.index].rect;
            ss << "create_pblock " << r.name << "\n"
               << "resize_pblock [get_pblocks " << r.name << "] -add {X" << rect.x1 << "Y" << rect.y1 << ":X" << rect.x2
               << "Y" << rect.y2 << "}\n";
        }
        return ss.str();
    }

    ss << "plan " << plan_name << "\n";
    for (const SortedRegion &r : order) {
        const Placement &p = fp.placements[r.index];
        const ResourceVector fc = frame_counts(fabric, p.frames);
        ss << "pblock " << r.name << "\n"
           << "rect " << p.rect.x1 << " " << p.rect.y1 << " " << p.rect.x2 << " " << p.rect.y2 << "\n"
           << "frames CLB " << fc.clb << " BRAM " << fc.bram << " DSP " << fc.dsp << "\n";
    }
    return ss.str();
}

PlanDoc parse_plan(std::string_view text)
{
    PlanDoc doc;
    bool have_header = false;
    std::vector<int> record_line;
    std::vector<bool> has_rect;
    for (const detail::Line &l : detail::tokenize(text)) {
        const std::string &kw = l.tokens[0];
        if (kw == "plan") {
            detail::expect_arity(l, 2, "plan <name>");
            if (have_header)
                throw ParseError(l.number, "second 'plan' header");
            have_header = true;
            doc.name = l.tokens[1];
            continue;
        }
        if (!have_header)
            throw ParseError(l.number, "expected 'plan <name>' before '" + kw + "'");
        if (kw == "pblock") {
            detail::expect_arity(l, 2, "pblock <rname>");
            doc.records.push_back({l.tokens[1], {}, std::nullopt});
            record_line.push_back(l.number);
            has_rect.push_back(false);
        } else if (kw == "rect") {
            detail::expect_arity(l, 5, "rect <x1> <y1> <x2> <y2>");
            if (doc.records.empty())
                throw ParseError(l.number, "'rect' before any 'pblock'");
            if (has_rect.back())
                throw ParseError(l.number, "second 'rect' for pblock '" + doc.records.back().region + "'");
            Rect r{detail::parse_int(l.tokens[1], l.number, "x1"), detail::parse_int(l.tokens[2], l.number, "y1"),
                   detail::parse_int(l.tokens[3], l.number, "x2"), detail::parse_int(l.tokens[4], l.number, "y2")};
            if (r.x1 > r.x2 || r.y1 > r.y2)
                throw ParseError(l.number, "rect corners out of order");
            doc.records.back().rect = r;
            has_rect.back() = true;
        } else if (kw == "frames") {
            detail::expect_arity(l, 7, "frames CLB <n> BRAM <n> DSP <n>");
            if (doc.records.empty())
                throw ParseError(l.number, "'frames' before any 'pblock'");
            ResourceVector fc;
            std::set<ColumnKind> seen;
            for (int i = 1; i < 7; i += 2) {
                auto kind = parse_column_kind(l.tokens[i]);
                if (!kind || !seen.insert(*kind).second)
                    throw ParseError(l.number, "bad frame kind '" + l.tokens[i] + "'");
                fc[*kind] = detail::parse_count(l.tokens[i + 1], l.number, "frame count");
            }
            doc.records.back().frames = fc;
        } else {
            throw ParseError(l.number, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_header)
        throw ParseError(0, "missing 'plan <name>' header");
    for (std::size_t i = 0; i < doc.records.size(); ++i)
        if (!has_rect[i])
            throw ParseError(record_line[i], "pblock '" + doc.records[i].region + "' has no rect");
    return doc;
}

namespace {

std::string str(const Rect &r)
{
    std::ostringstream ss;
    ss << r;
    return ss.str();
}

} // namespace

std::vector<Violation> validate_plan(const PlanDoc &plan, const Design &design, const Fabric &fabric)
{
    std::vector<Violation> out;
    const int h = fabric.row_height();

    // Records that can be checked geometrically, one per design region.
    std::vector<const PlanRecord *> usable;
    std::map<std::string, int> seen;
    for (const PlanRecord &rec : plan.records) {
        if (!design.region_index(rec.region)) {
            out.push_back({"unknown", {rec.region}, "pblock '" + rec.region + "' is not a region of the design"});
            continue;
        }
        if (seen[rec.region]++ > 0) {
            out.push_back({"duplicate", {rec.region}, "region '" + rec.region + "' has more than one pblock"});
            continue;
        }
        if (!fabric.in_bounds(rec.rect)) {
            out.push_back({"bounds", {rec.region}, "rect " + str(rec.rect) + " of '" + rec.region + "' leaves the fabric"});
            continue;
        }
        usable.push_back(&rec);
    }
    for (const Region &r : design.regions)
        if (!seen.count(r.name))
            out.push_back({"missing", {r.name}, "region '" + r.name + "' has no pblock"});

    std::vector<std::vector<FrameId>> frames;
    for (const PlanRecord *rec : usable) {
        const Rect &r = rec->rect;
        frames.push_back(frames_in(fabric, r));
        if (r.y1 % h != 0 || (r.y2 + 1) % h != 0)
            out.push_back({"alignment", {rec->region},
                           "rect " + str(r) + " of '" + rec->region + "' does not start and end on frame boundaries"});
        for (const FrameId &f : frames.back())
            if (fabric.frame_reserved(f.column, f.device_row)) {
                out.push_back({"reserved", {rec->region}, "'" + rec->region + "' uses a frame of the static region"});
                break;
            }

        const Region &region = design.regions[*design.region_index(rec->region)];
        const ResourceVector req = region_requirement(region);
        const ResourceVector cap = capacity(fabric, r);
        for (ColumnKind k : kAllKinds)
            if (cap[k] < req[k]) {
                std::ostringstream ss;
                ss << "'" << rec->region << "' holds " << cap[k] << " " << to_string(k) << " but needs " << req[k];
                out.push_back({"coverage", {rec->region}, ss.str()});
            }
        if (rec->frames && *rec->frames != frame_counts(fabric, frames.back())) {
            std::ostringstream ss;
            ss << "'" << rec->region << "' declares frames " << *rec->frames << " but its rect spans "
               << frame_counts(fabric, frames.back());
            out.push_back({"frames", {rec->region}, ss.str()});
        }
    }

    for (std::size_t i = 0; i < usable.size(); ++i)
        for (std::size_t j = i + 1; j < usable.size(); ++j) {
            const std::string &a = usable[i]->region, &b = usable[j]->region;
            if (overlaps(usable[i]->rect, usable[j]->rect)) {
                out.push_back({"overlap", {a, b}, "'" + a + "' and '" + b + "' overlap"});
                continue;
            }
            std::vector<FrameId> fa = frames[i], fb = frames[j];
            std::sort(fa.begin(), fa.end());
            std::sort(fb.begin(), fb.end());
            std::vector<FrameId> common;
            std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(common));
            if (!common.empty())
                out.push_back({"frame-share", {a, b}, "'" + a + "' and '" + b + "' share a reconfiguration frame"});
        }

    const CapacityVerdict verdict = check_capacity(design, fabric);
    for (ColumnKind k : verdict.violated) {
        std::ostringstream ss;
        ss << "design needs " << verdict.demand[k] << " " << to_string(k) << " but the chip has "
           << verdict.available[k];
        out.push_back({"capacity", {}, ss.str()});
    }
    return out;
}

} // namespace prfp
