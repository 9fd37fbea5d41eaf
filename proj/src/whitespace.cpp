#include "prfp/whitespace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace prfp {

void WsWeights::validate() const
{
    if (!(alpha > beta && beta > gamma && gamma > delta && delta > 0))
        throw std::invalid_argument("white-space weights must satisfy alpha > beta > gamma > delta > 0");
}

std::vector<WhiteSpace> detect_whitespace(const OccupancyState &state)
{
    return detect_whitespace(state, full_window(state.fabric()));
}

std::vector<WhiteSpace> detect_whitespace(const OccupancyState &state, const FrameWindow &window)
{
    const Fabric &f = state.fabric();
    std::vector<WhiteSpace> out;
    if (window.empty())
        return out;
    const int x0 = window.x1;
    const int width = window.x2 - window.x1 + 1;
    const int y0 = window.row1 * f.row_height();
    const int y1 = (window.row2 + 1) * f.row_height() - 1;

    // Adjacent cell rows with the same free pattern are merged; a maximal
    // rectangle either spans all of such a run or none of it.
    struct Run {
        int ylo, yhi;
        std::vector<std::uint8_t> free;
    };
    std::vector<Run> runs;
    std::vector<std::uint8_t> pattern(width);
    for (int y = y0; y <= y1; ++y) {
        for (int i = 0; i < width; ++i)
            pattern[i] = state.cell_free(x0 + i, y) ? 1 : 0;
        if (!runs.empty() && runs.back().free == pattern)
            runs.back().yhi = y;
        else
            runs.push_back({y, y, pattern});
    }

    auto all_free = [&](const std::vector<std::uint8_t> &p, int a, int b) {
        for (int i = a; i <= b; ++i)
            if (!p[i])
                return false;
        return true;
    };

    const int n = static_cast<int>(runs.size());
    std::vector<std::uint8_t> common(width);
    for (int a = 0; a < n; ++a) {
        common = runs[a].free;
        for (int b = a; b < n; ++b) {
            bool any = false;
            for (int i = 0; i < width; ++i) {
                common[i] = common[i] & runs[b].free[i];
                any = any || common[i];
            }
            if (!any)
                break;
            for (int i = 0; i < width;) {
                if (!common[i]) {
                    ++i;
                    continue;
                }
                int j = i;
                while (j + 1 < width && common[j + 1])
                    ++j;
                const bool grows_down = a > 0 && all_free(runs[a - 1].free, i, j);
                const bool grows_up = b + 1 < n && all_free(runs[b + 1].free, i, j);
                if (!grows_down && !grows_up) {
                    Rect r{x0 + i, runs[a].ylo, x0 + j, runs[b].yhi};
                    out.push_back({r, capacity(f, r), 0.0});
                }
                i = j + 1;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const WhiteSpace &p, const WhiteSpace &q) {
        return std::tie(p.rect.x1, p.rect.y1, p.rect.x2, p.rect.y2) < std::tie(q.rect.x1, q.rect.y1, q.rect.x2, q.rect.y2);
    });
    return out;
}

double whitespace_cost(const ResourceVector &free, double normalized_distance, const WsWeights &w)
{
    return w.alpha * free.dsp + w.beta * free.bram + w.gamma * free.clb + w.delta * normalized_distance;
}

double normalized_centroid_distance(const Fabric &fabric, const Rect &rect, Point centroid)
{
    const Point c = rect.center();
    const double half_perimeter = static_cast<double>(fabric.num_columns()) + fabric.grid_height();
    return std::hypot(c.x - centroid.x, c.y - centroid.y) / half_perimeter;
}

void score_whitespace(std::vector<WhiteSpace> &list, const Fabric &fabric, Point centroid, const WsWeights &w)
{
    for (WhiteSpace &ws : list)
        ws.cost = whitespace_cost(ws.free, normalized_centroid_distance(fabric, ws.rect, centroid), w);
    std::stable_sort(list.begin(), list.end(), [](const WhiteSpace &p, const WhiteSpace &q) {
        if (p.cost != q.cost)
            return p.cost < q.cost;
        return p.rect < q.rect;
    });
}

} // namespace prfp
