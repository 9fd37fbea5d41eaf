#include "prfp/placer.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "prfp/cost.hpp"
#include "prfp/whitespace.hpp"

namespace prfp {

Placement make_placement(const Fabric &fabric, std::string region, const Rect &rect, const ResourceVector &requirement)
{
    Placement p;
    p.region = std::move(region);
    p.rect = rect;
    p.frames = frames_in(fabric, rect);
    p.waste = capacity(fabric, rect) - requirement;
    return p;
}

FrameWindow full_window(const Fabric &fabric) { return {0, fabric.num_columns() - 1, 0, fabric.num_rows() - 1}; }

Rect frame_rect(const Fabric &fabric, int x1, int x2, int r1, int r2)
{
    const int h = fabric.row_height();
    return {x1, r1 * h, x2, (r2 + 1) * h - 1};
}

OccupancyState::OccupancyState(const Fabric &fabric)
        : fabric_(&fabric), claimed_(static_cast<std::size_t>(fabric.num_columns()) * fabric.num_rows(), 0)
{
    rebuild_prefix();
}

bool OccupancyState::frame_claimed(int column, int device_row) const { return claimed_[index(column, device_row)] != 0; }

bool OccupancyState::frame_available(int column, int device_row) const
{
    return !frame_claimed(column, device_row) && !fabric_->frame_reserved(column, device_row);
}

bool OccupancyState::span_available(int x1, int x2, int r1, int r2) const
{
    const int rows = fabric_->num_rows() + 1;
    auto at = [&](int x, int r) { return blocked_prefix_[static_cast<std::size_t>(x) * rows + r]; };
    return at(x2 + 1, r2 + 1) - at(x1, r2 + 1) - at(x2 + 1, r1) + at(x1, r1) == 0;
}

bool OccupancyState::cell_free(int x, int y) const
{
    return !fabric_->is_reserved(x, y) && !frame_claimed(x, y / fabric_->row_height());
}

void OccupancyState::claim(Placement p)
{
    for (const FrameId &f : p.frames)
        if (!frame_available(f.column, f.device_row)) {
            std::ostringstream ss;
            ss << "frame (" << f.column << "," << f.device_row << ") of region '" << p.region
               << "' is already claimed or reserved";
            throw std::logic_error(ss.str());
        }
    for (const FrameId &f : p.frames)
        claimed_[index(f.column, f.device_row)] = 1;
    placements_.push_back(std::move(p));
    rebuild_prefix();
}

void OccupancyState::rebuild_prefix()
{
    const int w = fabric_->num_columns();
    const int rows = fabric_->num_rows();
    blocked_prefix_.assign(static_cast<std::size_t>(w + 1) * (rows + 1), 0);
    auto at = [&](int x, int r) -> int & { return blocked_prefix_[static_cast<std::size_t>(x) * (rows + 1) + r]; };
    for (int x = 0; x < w; ++x)
        for (int r = 0; r < rows; ++r)
            at(x + 1, r + 1) = (frame_available(x, r) ? 0 : 1) + at(x, r + 1) + at(x + 1, r) - at(x, r);
}

FrameWaste wasted_frames(int n, int per_frame)
{
    if (n < 0 || per_frame < 1)
        throw std::invalid_argument("wasted_frames needs n >= 0 and per_frame >= 1");
    const int frames = (n + per_frame - 1) / per_frame;
    return {frames, frames * per_frame - n};
}

bool overlaps(const Rect &a, const Rect &b)
{
    // Disjoint iff separated along x or along y.
    const bool x_apart = a.x2 < b.x1 || b.x2 < a.x1;
    const bool y_apart = a.y2 < b.y1 || b.y2 < a.y1;
    return !(x_apart || y_apart);
}

namespace {

struct Extent {
    int x1, x2, r1, r2;
};

std::optional<Extent> anchored_search(const OccupancyState &st, const ResourceVector &req, const FrameWindow &w,
                                      ColumnKind anchor_kind)
{
    const Fabric &f = st.fabric();
    const ResourceVector totals = f.chip_total();
    if (w.empty())
        return std::nullopt;

    for (int xa = w.x1; xa <= w.x2; ++xa) {
        if (f.column_kind(xa) != anchor_kind)
            continue;
        for (int span = 1; span <= w.row2 - w.row1 + 1; ++span) {
            bool anchor_fits = false;
            for (int r0 = w.row1; r0 + span - 1 <= w.row2; ++r0) {
                const int r1 = r0 + span - 1;
                if (!st.span_available(xa, xa, r0, r1))
                    continue;
                anchor_fits = true;

                int lo = xa, hi = xa;
                while (lo - 1 >= w.x1 && st.span_available(lo - 1, lo - 1, r0, r1))
                    --lo;
                while (hi + 1 <= w.x2 && st.span_available(hi + 1, hi + 1, r0, r1))
                    ++hi;
                if (!req.fits_in(f.frame_span_capacity(lo, hi, r0, r1)))
                    continue;

                auto fits = [&](int a, int b) { return req.fits_in(f.frame_span_capacity(a, b, r0, r1)); };
                std::optional<Extent> best;
                std::tuple<double, int, int> best_key{};
                int x2 = xa;
                for (int x1 = xa; x1 >= lo; --x1) {
                    while (x2 < hi && !fits(x1, x2))
                        ++x2;
                    if (!fits(x1, x2))
                        continue;
                    while (x2 > xa && fits(x1, x2 - 1))
                        --x2;
                    const ResourceVector waste = f.frame_span_capacity(x1, x2, r0, r1) - req;
                    std::tuple<double, int, int> key{weighted_waste(waste, totals), x2 - x1, x1};
                    if (!best || key < best_key) {
                        best = Extent{x1, x2, r0, r1};
                        best_key = key;
                    }
                }
                if (best)
                    return best;
            }
            // A taller span cannot fit where a shorter one does not.
            if (!anchor_fits)
                break;
        }
    }
    return std::nullopt;
}

std::optional<Placement> to_placement(const OccupancyState &st, std::string_view region, const ResourceVector &req,
                                      const std::optional<Extent> &e)
{
    if (!e)
        return std::nullopt;
    const Fabric &f = st.fabric();
    return make_placement(f, std::string(region), frame_rect(f, e->x1, e->x2, e->r1, e->r2), req);
}

} // namespace

std::optional<Placement> allocate_scheme1(const OccupancyState &state, std::string_view region,
                                          const ResourceVector &req, const FrameWindow &window)
{
    if (!(req.clb > 0 && req.bram > 0 && req.dsp > 0))
        throw std::invalid_argument("scheme 1 places Type1 requirements only");
    return to_placement(state, region, req, anchored_search(state, req, window, ColumnKind::DSP));
}

std::optional<Placement> allocate_scheme2(const OccupancyState &state, std::string_view region,
                                          const ResourceVector &req, const FrameWindow &window)
{
    if (req.clb <= 0 || (req.dsp > 0) == (req.bram > 0))
        throw std::invalid_argument("scheme 2 places Type2 or Type3 requirements only");
    const ColumnKind anchor = req.dsp > 0 ? ColumnKind::DSP : ColumnKind::BRAM;
    return to_placement(state, region, req, anchored_search(state, req, window, anchor));
}

std::optional<Placement> allocate_scheme3(const OccupancyState &state, std::string_view region,
                                          const ResourceVector &req, const std::vector<WhiteSpace> &ws_sorted,
                                          Point centroid)
{
    if (req.clb <= 0 || req.bram != 0 || req.dsp != 0)
        throw std::invalid_argument("scheme 3 places Type4 requirements only");
    const Fabric &f = state.fabric();
    const ResourceVector totals = f.chip_total();
    const int h = f.row_height();

    for (const WhiteSpace &ws : ws_sorted) {
        if (ws.free.clb < req.clb)
            continue;
        const int ra = (ws.rect.y1 + h - 1) / h;
        const int rb = (ws.rect.y2 + 1) / h - 1;
        if (ra > rb)
            continue;
        const int wx1 = ws.rect.x1, wx2 = ws.rect.x2;

        // Corners in boundary coordinates: bottom-left, bottom-right, top-left, top-right.
        const Point corners[4] = {{double(wx1), double(ra * h)},
                                  {double(wx2 + 1), double(ra * h)},
                                  {double(wx1), double((rb + 1) * h)},
                                  {double(wx2 + 1), double((rb + 1) * h)}};
        int corner = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int c = 0; c < 4; ++c) {
            const double d = std::hypot(corners[c].x - centroid.x, corners[c].y - centroid.y);
            if (d < best_d) {
                best_d = d;
                corner = c;
            }
        }
        const bool from_right = corner == 1 || corner == 3;
        const bool from_top = corner == 2 || corner == 3;

        std::optional<Extent> best;
        std::tuple<double, int, int> best_key{};
        for (int rows = 1; rows <= rb - ra + 1; ++rows) {
            const int r1 = from_top ? rb - rows + 1 : ra;
            const int r2 = from_top ? rb : ra + rows - 1;
            for (int cols = 1; cols <= wx2 - wx1 + 1; ++cols) {
                const int x1 = from_right ? wx2 - cols + 1 : wx1;
                const int x2 = from_right ? wx2 : wx1 + cols - 1;
                if (!state.span_available(x1, x2, r1, r2))
                    break;
                const ResourceVector cap = f.frame_span_capacity(x1, x2, r1, r2);
                if (!req.fits_in(cap))
                    continue;
                std::tuple<double, int, int> key{weighted_waste(cap - req, totals), rows, cols};
                if (!best || key < best_key) {
                    best = Extent{x1, x2, r1, r2};
                    best_key = key;
                }
                break; // wider shapes only add waste
            }
        }
        if (best)
            return to_placement(state, region, req, best);
    }
    return std::nullopt;
}

} // namespace prfp
