#include "prfp/cost.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace prfp {

void CostWeights::validate() const
{
    if (alpha < 0 || beta < 0 || gamma < 0)
        throw std::invalid_argument("cost weights must be non-negative");
    if (alpha == 0 && beta == 0 && gamma == 0)
        throw std::invalid_argument("at least one cost weight must be positive");
    if (!(norm_wl > 0 && norm_area > 0 && norm_wr > 0))
        throw std::invalid_argument("cost normalizers must be positive");
}

Point terminal_position(const Terminal &t, const Fabric &fabric)
{
    const double along = t.offset + 0.5;
    switch (t.edge) {
    case Edge::Left:
        return {0.0, along};
    case Edge::Right:
        return {static_cast<double>(fabric.num_columns()), along};
    case Edge::Bottom:
        return {along, 0.0};
    case Edge::Top:
        return {along, static_cast<double>(fabric.grid_height())};
    }
    return {};
}

double net_hpwl(std::span<const Point> endpoints)
{
    if (endpoints.size() < 2)
        return 0.0;
    double xmin = endpoints[0].x, xmax = xmin, ymin = endpoints[0].y, ymax = ymin;
    for (const Point &p : endpoints.subspan(1)) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    return (xmax - xmin) + (ymax - ymin);
}

double hpwl(const Design &design, const Fabric &fabric, std::span<const Placement> placements)
{
    if (placements.size() != design.regions.size())
        throw std::invalid_argument("hpwl needs one placement per region");
    std::vector<Point> pts;
    double total = 0.0;
    for (const Net &net : design.nets) {
        pts.clear();
        for (const Endpoint &ep : net.endpoints) {
            if (ep.kind == Endpoint::Kind::Region)
                pts.push_back(placements[ep.index].rect.center());
            else
                pts.push_back(terminal_position(design.terminals.at(ep.index), fabric));
        }
        total += net_hpwl(pts);
    }
    return total;
}

double bounding_area(std::span<const Rect> rects)
{
    if (rects.empty())
        return 0.0;
    int xmin = std::numeric_limits<int>::max(), ymin = xmin;
    int xmax = std::numeric_limits<int>::min(), ymax = xmax;
    for (const Rect &r : rects) {
        xmin = std::min(xmin, r.x1);
        ymin = std::min(ymin, r.y1);
        xmax = std::max(xmax, r.x2 + 1);
        ymax = std::max(ymax, r.y2 + 1);
    }
    return static_cast<double>(xmax - xmin) * static_cast<double>(ymax - ymin);
}

double bounding_area(std::span<const Placement> placements)
{
    std::vector<Rect> rects;
    rects.reserve(placements.size());
    for (const Placement &p : placements)
        rects.push_back(p.rect);
    return bounding_area(rects);
}

double weighted_waste(const ResourceVector &waste, const ResourceVector &totals)
{
    const double t = static_cast<double>(totals.clb) + totals.bram + totals.dsp;
    double out = 0.0;
    for (ColumnKind k : kAllKinds) {
        if (waste[k] == 0)
            continue;
        if (totals[k] == 0)
            throw std::domain_error("waste of " + std::string(to_string(k)) + " on a fabric without any");
        out += t / totals[k] * waste[k];
    }
    return out;
}

double rw_cost(std::span<const Placement> placements, const Fabric &fabric)
{
    ResourceVector sum;
    for (const Placement &p : placements)
        sum += p.waste;
    return weighted_waste(sum, fabric.chip_total());
}

CostBreakdown total_cost(const CostTerms &terms, const CostWeights &w)
{
    CostBreakdown b{terms.wl, terms.area, terms.wr, 0.0};
    b.total = w.alpha * terms.wl / w.norm_wl + w.beta * terms.area / w.norm_area + w.gamma * terms.wr / w.norm_wr;
    return b;
}

CostTerms cost_terms(const Design &design, const Fabric &fabric, std::span<const Placement> placements)
{
    return {hpwl(design, fabric, placements), bounding_area(placements), rw_cost(placements, fabric)};
}

CostWeights self_normalized(CostWeights w, const CostTerms &reference)
{
    w.norm_wl = reference.wl > 0 ? reference.wl : 1.0;
    w.norm_area = reference.area > 0 ? reference.area : 1.0;
    w.norm_wr = reference.wr > 0 ? reference.wr : 1.0;
    return w;
}

Point centroid(std::span<const Placement> placements)
{
    if (placements.empty())
        throw std::invalid_argument("centroid of an empty floorplan");
    double sx = 0, sy = 0, sa = 0;
    for (const Placement &p : placements) {
        const double a = static_cast<double>(p.rect.area());
        const Point c = p.rect.center();
        sx += a * c.x;
        sy += a * c.y;
        sa += a;
    }
    return {sx / sa, sy / sa};
}

} // namespace prfp
