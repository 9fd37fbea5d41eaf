#pragma once

#include <vector>

#include "prfp/fabric.hpp"
#include "prfp/placer.hpp"

namespace prfp {

// A maximal rectangle of free cells.
struct WhiteSpace {
    Rect rect;
    ResourceVector free;
    double cost = 0.0;
};

// Weights of the white-space score. Must satisfy alpha > beta > gamma > delta > 0.
struct WsWeights {
    double alpha = 27.0; // free DSP
    double beta = 9.0;   // free BRAM
    double gamma = 3.0;  // free CLB
    double delta = 1.0;  // normalized centroid distance

    // Throws std::invalid_argument on a violated ordering.
    void validate() const;
};

// All maximal free rectangles, restricted to the cells of window. Returned
// in scan order (bottom edge, then left edge); cost left at zero.
std::vector<WhiteSpace> detect_whitespace(const OccupancyState &state);
std::vector<WhiteSpace> detect_whitespace(const OccupancyState &state, const FrameWindow &window);

double whitespace_cost(const ResourceVector &free, double normalized_distance, const WsWeights &w);

// Distance from the white space's center to centroid over the fabric
// half-perimeter (columns + grid height).
double normalized_centroid_distance(const Fabric &fabric, const Rect &rect, Point centroid);

// Fills in costs and sorts ascending (ties broken by rect).
void score_whitespace(std::vector<WhiteSpace> &list, const Fabric &fabric, Point centroid, const WsWeights &w);

} // namespace prfp
