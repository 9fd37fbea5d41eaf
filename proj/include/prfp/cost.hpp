#pragma once

#include <span>
#include <vector>

#include "prfp/design.hpp"
#include "prfp/fabric.hpp"
#include "prfp/placer.hpp"

namespace prfp {

// Annealing objective weights. Each term is divided by its normalizer
// before weighting.
struct CostWeights {
    double alpha = 0.5; // wirelength
    double beta = 0.2;  // bounding-box area
    double gamma = 0.3; // wasted resources
    double norm_wl = 1.0;
    double norm_area = 1.0;
    double norm_wr = 1.0;

    // Throws std::invalid_argument unless weights are >= 0 with one > 0 and
    // normalizers are > 0.
    void validate() const;
};

struct CostTerms {
    double wl = 0.0;
    double area = 0.0;
    double wr = 0.0;
};

struct CostBreakdown {
    double wl = 0.0;
    double area = 0.0;
    double wr = 0.0;
    double total = 0.0;
    friend bool operator==(const CostBreakdown &, const CostBreakdown &) = default;
};

// Edge point of a terminal in boundary coordinates.
Point terminal_position(const Terminal &t, const Fabric &fabric);

// Half-perimeter of the endpoints' bounding box; 0 for fewer than two.
double net_hpwl(std::span<const Point> endpoints);

// Sum of net HPWLs. placements[i] belongs to design.regions[i]; region
// endpoints sit at their rect centers.
double hpwl(const Design &design, const Fabric &fabric, std::span<const Placement> placements);

// Bounding box area of all rects in boundary coordinates; 0 when empty.
double bounding_area(std::span<const Rect> rects);
double bounding_area(std::span<const Placement> placements);

// Scarcity-weighted waste: sum over kinds of (T / T_k) * waste_k, with
// T = T_clb + T_bram + T_dsp. Throws std::domain_error if a kind with
// waste has a zero total.
double weighted_waste(const ResourceVector &waste, const ResourceVector &totals);
double rw_cost(std::span<const Placement> placements, const Fabric &fabric);

CostBreakdown total_cost(const CostTerms &terms, const CostWeights &w);

CostTerms cost_terms(const Design &design, const Fabric &fabric, std::span<const Placement> placements);

// Weights with normalizers set to the given terms (1 where a term is 0).
CostWeights self_normalized(CostWeights w, const CostTerms &reference);

// Area-weighted mean of rect centers. Throws std::invalid_argument when empty.
Point centroid(std::span<const Placement> placements);

} // namespace prfp
