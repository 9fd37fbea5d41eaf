#pragma once

// Fixture loading, random instance generators and brute-force oracles
// shared by the unit tests and the acceptance runner. The oracles are
// deliberately naive: they enumerate instead of reusing library shortcuts.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "prfp/anneal.hpp"
#include "prfp/cli.hpp"
#include "prfp/cost.hpp"
#include "prfp/design.hpp"
#include "prfp/fabric.hpp"
#include "prfp/placer.hpp"
#include "prfp/priority.hpp"
#include "prfp/rng.hpp"
#include "prfp/whitespace.hpp"

namespace prfp::test {

inline std::string read_text(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string data_path(const std::string &rel) { return std::string(PRFP_DATA_DIR) + "/" + rel; }

inline Fabric load_device(const std::string &name) { return parse_device(read_text(data_path("devices/" + name + ".dev"))); }

inline Design load_design(const std::string &name) { return parse_design(read_text(data_path("designs/" + name + ".des"))); }

inline Fabric user10x23() { return load_device("user10x23"); }

// One cell per block everywhere.
inline Fabric unit_fabric(std::vector<ColumnKind> cols, int rows, std::vector<Rect> reserved = {})
{
    return Fabric("unit", rows, 1, std::move(cols), {1, 1, 1}, std::move(reserved));
}

inline Fabric clb_grid(int cols, int rows) { return unit_fabric(std::vector<ColumnKind>(cols, ColumnKind::CLB), rows); }

// ---- random generation ---------------------------------------------------

struct Gen {
    Rng rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    int uniform(int lo, int hi) { return static_cast<int>(rng.uniform_int(lo, hi)); }
    double real(double lo, double hi) { return lo + (hi - lo) * rng.uniform01(); }
    bool coin(double p = 0.5) { return rng.uniform01() < p; }
};

inline ColumnKind random_kind(Gen &g, double p_clb = 0.6)
{
    if (g.coin(p_clb))
        return ColumnKind::CLB;
    return g.coin() ? ColumnKind::BRAM : ColumnKind::DSP;
}

// Random fabric with at most max_cols columns and max_height cell rows.
inline Fabric random_fabric(Gen &g, int max_cols, int max_height, bool with_reserved = true)
{
    const int cols = g.uniform(1, max_cols);
    const int h = g.uniform(1, std::min(3, max_height));
    const int rows = g.uniform(1, std::max(1, max_height / h));
    std::vector<ColumnKind> kinds;
    for (int i = 0; i < cols; ++i)
        kinds.push_back(random_kind(g));
    const ResourceVector spf{g.uniform(1, 4) * h, g.uniform(1, 3), g.uniform(1, 4)};
    std::vector<Rect> reserved;
    if (with_reserved && g.coin(0.4)) {
        const int n = g.uniform(1, 2);
        for (int i = 0; i < n; ++i) {
            const int x1 = g.uniform(0, cols - 1), x2 = g.uniform(x1, std::min(cols - 1, x1 + 2));
            const int y1 = g.uniform(0, rows * h - 1), y2 = g.uniform(y1, std::min(rows * h - 1, y1 + 2));
            reserved.push_back({x1, y1, x2, y2});
        }
    }
    return Fabric("rnd", rows, h, kinds, spf, reserved);
}

// Claims random frame-aligned rectangles on state until attempts run out.
inline void claim_random(Gen &g, OccupancyState &state, int attempts)
{
    const Fabric &f = state.fabric();
    for (int i = 0; i < attempts; ++i) {
        const int x1 = g.uniform(0, f.num_columns() - 1);
        const int x2 = g.uniform(x1, std::min(f.num_columns() - 1, x1 + 3));
        const int r1 = g.uniform(0, f.num_rows() - 1);
        const int r2 = g.uniform(r1, std::min(f.num_rows() - 1, r1 + 2));
        if (!state.span_available(x1, x2, r1, r2))
            continue;
        const Rect r = frame_rect(f, x1, x2, r1, r2);
        state.claim(make_placement(f, "c" + std::to_string(i), r, {}));
    }
}

// ---- oracles --------------------------------------------------------------

// Smallest frame count covering n blocks, found by counting up.
inline FrameWaste frames_by_enumeration(int n, int per_frame)
{
    for (int f = 0;; ++f)
        if (f * per_frame >= n)
            return {f, f * per_frame - n};
}

// Cell is free: not reserved and not inside any claimed frame.
inline std::vector<std::vector<bool>> free_map(const Fabric &f, const std::vector<Placement> &claimed)
{
    const int w = f.num_columns(), hgt = f.grid_height(), h = f.row_height();
    std::vector<std::vector<bool>> free(w, std::vector<bool>(hgt, true));
    for (const Rect &r : f.reserved())
        for (int x = r.x1; x <= r.x2; ++x)
            for (int y = r.y1; y <= r.y2; ++y)
                free[x][y] = false;
    for (const Placement &p : claimed)
        for (const FrameId &fr : p.frames)
            for (int y = fr.device_row * h; y < (fr.device_row + 1) * h; ++y)
                free[fr.column][y] = false;
    return free;
}

// All maximal all-free rectangles inside [x_lo,x_hi] x [y_lo,y_hi]: enumerate
// every rectangle, keep the free ones that cannot grow by one in any direction.
inline std::set<Rect> mer_oracle(const std::vector<std::vector<bool>> &free, int x_lo, int x_hi, int y_lo, int y_hi)
{
    auto all_free = [&](int x1, int y1, int x2, int y2) {
        if (x1 < x_lo || y1 < y_lo || x2 > x_hi || y2 > y_hi)
            return false;
        for (int x = x1; x <= x2; ++x)
            for (int y = y1; y <= y2; ++y)
                if (!free[x][y])
                    return false;
        return true;
    };
    std::set<Rect> out;
    for (int x1 = x_lo; x1 <= x_hi; ++x1)
        for (int x2 = x1; x2 <= x_hi; ++x2)
            for (int y1 = y_lo; y1 <= y_hi; ++y1)
                for (int y2 = y1; y2 <= y_hi; ++y2) {
                    if (!all_free(x1, y1, x2, y2))
                        continue;
                    if (all_free(x1 - 1, y1, x2, y2) || all_free(x1, y1 - 1, x2, y2) || all_free(x1, y1, x2 + 1, y2) ||
                        all_free(x1, y1, x2, y2 + 1))
                        continue;
                    out.insert({x1, y1, x2, y2});
                }
    return out;
}

inline std::set<Rect> rect_set(const std::vector<WhiteSpace> &ws)
{
    std::set<Rect> s;
    for (const WhiteSpace &w : ws)
        s.insert(w.rect);
    return s;
}

// Blocks in whole frames, summed frame by frame.
inline ResourceVector frames_capacity(const Fabric &f, int x1, int x2, int r1, int r2)
{
    ResourceVector c;
    for (int x = x1; x <= x2; ++x)
        for (int r = r1; r <= r2; ++r)
            c[f.column_kind(x)] += f.frame_blocks(x, r);
    return c;
}

inline double weighted_waste_oracle(const ResourceVector &w, const ResourceVector &totals)
{
    const double t = double(totals.clb) + totals.bram + totals.dsp;
    double s = 0.0;
    if (w.clb)
        s += w.clb * (t / totals.clb);
    if (w.bram)
        s += w.bram * (t / totals.bram);
    if (w.dsp)
        s += w.dsp * (t / totals.dsp);
    return s;
}

// Anchored placement by exhaustion: every frame-aligned rect in window
// whose frames are all available and whose capacity covers req, ranked by
// (anchor column, row span, start row, weighted waste, width, x1) over the
// anchor columns it contains.
inline std::optional<Rect> anchored_oracle(const OccupancyState &st, const ResourceVector &req, const FrameWindow &w,
                                           ColumnKind anchor)
{
    const Fabric &f = st.fabric();
    const ResourceVector totals = f.chip_total();
    std::optional<std::tuple<int, int, int, double, int, int>> best;
    std::optional<Rect> out;
    for (int x1 = w.x1; x1 <= w.x2; ++x1)
        for (int x2 = x1; x2 <= w.x2; ++x2)
            for (int r1 = w.row1; r1 <= w.row2; ++r1)
                for (int r2 = r1; r2 <= w.row2; ++r2) {
                    bool ok = true;
                    for (int x = x1; x <= x2 && ok; ++x)
                        for (int r = r1; r <= r2 && ok; ++r)
                            ok = st.frame_available(x, r);
                    if (!ok)
                        continue;
                    const ResourceVector cap = frames_capacity(f, x1, x2, r1, r2);
                    if (!req.fits_in(cap))
                        continue;
                    for (int xa = x1; xa <= x2; ++xa) {
                        if (f.column_kind(xa) != anchor)
                            continue;
                        std::tuple<int, int, int, double, int, int> key{
                                xa, r2 - r1 + 1, r1, weighted_waste_oracle(cap - req, totals), x2 - x1, x1};
                        if (!best || key < *best) {
                            best = key;
                            out = frame_rect(f, x1, x2, r1, r2);
                        }
                    }
                }
    return out;
}

// Scheme 3 by exhaustion over the given ordered white spaces: first one
// whose frame-aligned interior holds a covering rect anchored at the interior
// corner nearest centroid; best by (weighted waste, rows, cols).
inline std::optional<Rect> scheme3_oracle(const OccupancyState &st, const ResourceVector &req,
                                          const std::vector<WhiteSpace> &ws, Point c)
{
    const Fabric &f = st.fabric();
    const int h = f.row_height();
    const ResourceVector totals = f.chip_total();
    for (const WhiteSpace &s : ws) {
        if (s.free.clb < req.clb)
            continue;
        int ra = 0;
        while (ra * h < s.rect.y1)
            ++ra;
        int rb = -1;
        while ((rb + 2) * h - 1 <= s.rect.y2)
            ++rb;
        if (ra > rb)
            continue;
        const double xs[2] = {double(s.rect.x1), double(s.rect.x2 + 1)};
        const double ys[2] = {double(ra * h), double((rb + 1) * h)};
        // Corners in order bottom-left, bottom-right, top-left, top-right; first nearest wins.
        int corner = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 4; ++k) {
            const double d = std::hypot(xs[k % 2] - c.x, ys[k / 2] - c.y);
            if (d < best_d) {
                best_d = d;
                corner = k;
            }
        }
        std::optional<std::tuple<double, int, int>> best;
        std::optional<Rect> out;
        for (int rows = 1; rows <= rb - ra + 1; ++rows)
            for (int cols = 1; cols <= s.rect.x2 - s.rect.x1 + 1; ++cols) {
                const int x1 = corner % 2 ? s.rect.x2 - cols + 1 : s.rect.x1;
                const int r1 = corner / 2 ? rb - rows + 1 : ra;
                const ResourceVector cap = frames_capacity(f, x1, x1 + cols - 1, r1, r1 + rows - 1);
                if (!req.fits_in(cap))
                    continue;
                std::tuple<double, int, int> key{weighted_waste_oracle(cap - req, totals), rows, cols};
                if (!best || key < *best) {
                    best = key;
                    out = frame_rect(f, x1, x1 + cols - 1, r1, r1 + rows - 1);
                }
            }
        if (out)
            return out;
    }
    return std::nullopt;
}

// Sequence-pair relation between regions p and q, checked on rects.
inline bool relation_holds(const SequencePair &sp, std::size_t p, std::size_t q, const Rect &rp, const Rect &rq)
{
    auto pos = [](const std::vector<std::size_t> &s, std::size_t r) { return std::find(s.begin(), s.end(), r) - s.begin(); };
    const bool a = pos(sp.seq_a, p) < pos(sp.seq_a, q);
    const bool b = pos(sp.seq_b, p) < pos(sp.seq_b, q);
    if (a && b)
        return rp.x2 < rq.x1; // p left of q
    if (!a && !b)
        return rq.x2 < rp.x1; // q left of p
    if (a && !b)
        return rp.y1 > rq.y2; // p above q
    return rq.y1 > rp.y2;     // q above p
}

// Whether any frame-aligned rect covering req exists for region q given
// the regions already placed: it must avoid unavailable frames and keep
// every relation sp implies with them; extra narrows the column range.
inline bool any_rect_exists(const OccupancyState &st, const SequencePair &sp, std::size_t q,
                            const std::vector<std::pair<std::size_t, Rect>> &placed, const ResourceVector &req,
                            int min_x1 = 0, int max_x2 = std::numeric_limits<int>::max())
{
    const Fabric &f = st.fabric();
    for (int x1 = std::max(0, min_x1); x1 < f.num_columns(); ++x1)
        for (int x2 = x1; x2 < f.num_columns() && x2 <= max_x2; ++x2)
            for (int r1 = 0; r1 < f.num_rows(); ++r1)
                for (int r2 = r1; r2 < f.num_rows(); ++r2) {
                    bool ok = true;
                    for (int x = x1; x <= x2 && ok; ++x)
                        for (int r = r1; r <= r2 && ok; ++r)
                            ok = st.frame_available(x, r);
                    if (!ok || !req.fits_in(frames_capacity(f, x1, x2, r1, r2)))
                        continue;
                    const Rect cand = frame_rect(f, x1, x2, r1, r2);
                    bool rel = true;
                    for (const auto &[p, rp] : placed)
                        rel = rel && relation_holds(sp, p, q, rp, cand);
                    if (rel)
                        return true;
                }
    return false;
}

// Random sequence pair over n regions with small offsets.
inline SequencePair random_sp(Gen &g, std::size_t n, int max_offset)
{
    SequencePair sp;
    for (std::size_t i = 0; i < n; ++i) {
        sp.seq_a.push_back(i);
        sp.seq_b.push_back(i);
        sp.offsets.push_back(max_offset ? g.uniform(-max_offset, max_offset) : 0);
    }
    g.rng.shuffle(sp.seq_a);
    g.rng.shuffle(sp.seq_b);
    return sp;
}

// HPWL computed from scratch: positions recomputed from the definitions.
inline double hpwl_oracle(const Design &d, const Fabric &f, const std::vector<Placement> &pl)
{
    double total = 0.0;
    for (const Net &n : d.nets) {
        std::vector<double> xs, ys;
        for (const Endpoint &e : n.endpoints) {
            if (e.kind == Endpoint::Kind::Region) {
                const Rect &r = pl[e.index].rect;
                xs.push_back((r.x1 + (r.x2 + 1)) / 2.0);
                ys.push_back((r.y1 + (r.y2 + 1)) / 2.0);
                continue;
            }
            const Terminal &t = d.terminals[e.index];
            const double along = t.offset + 0.5;
            switch (t.edge) {
            case Edge::Left: xs.push_back(0); ys.push_back(along); break;
            case Edge::Right: xs.push_back(f.num_columns()); ys.push_back(along); break;
            case Edge::Bottom: xs.push_back(along); ys.push_back(0); break;
            case Edge::Top: xs.push_back(along); ys.push_back(f.grid_height()); break;
            }
        }
        if (xs.size() < 2)
            continue;
        std::sort(xs.begin(), xs.end());
        std::sort(ys.begin(), ys.end());
        total += (xs.back() - xs.front()) + (ys.back() - ys.front());
    }
    return total;
}

// Bounding area from the union of covered cells.
inline double area_oracle(const std::vector<Rect> &rects)
{
    if (rects.empty())
        return 0.0;
    int xmin = rects[0].x1, xmax = rects[0].x2, ymin = rects[0].y1, ymax = rects[0].y2;
    for (const Rect &r : rects)
        for (int x = r.x1; x <= r.x2; ++x)
            for (int y = r.y1; y <= r.y2; ++y) {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
    return double(xmax + 1 - xmin) * double(ymax + 1 - ymin);
}

inline bool close(double a, double b, double rel = 1e-9)
{
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace prfp::test
