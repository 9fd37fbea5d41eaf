#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "prfp/cost.hpp"
#include "prfp/design.hpp"
#include "prfp/fabric.hpp"
#include "prfp/placer.hpp"
#include "prfp/priority.hpp"
#include "prfp/rng.hpp"
#include "prfp/whitespace.hpp"

namespace prfp {

// Two permutations of region indices plus per-region horizontal offset
// hints. For regions p and q:
//   p before q in both sequences          => p is left of q
//   p before q in seq_a, after in seq_b   => p is above q
struct SequencePair {
    std::vector<std::size_t> seq_a;
    std::vector<std::size_t> seq_b;
    std::vector<int> offsets;

    bool is_valid(std::size_t regions) const;
    friend bool operator==(const SequencePair &, const SequencePair &) = default;
};

// A sequence pair consistent with non-overlapping rects: every pairwise
// relation it implies holds on them. Throws std::invalid_argument on
// overlapping input.
SequencePair sequence_pair_from(const std::vector<Rect> &rects);

enum class MoveKind { Shuffle = 0, Swap = 1, RemoveReplace = 2, Shift = 3 };

struct MoveConfig {
    double shuffle_max = 0.4; // shuffle probability at T = t0
    int max_shift = 4;        // Move 3 shifts by 1..max_shift columns
    int offset_limit = 1 << 16;
};

void apply_shuffle(SequencePair &sp, Rng &rng);
void apply_swap(SequencePair &sp, std::size_t region_u, std::size_t region_v);
void apply_remove_replace(SequencePair &sp, std::size_t region);
void apply_shift(SequencePair &sp, std::size_t region, int delta, int offset_limit);

// Probability of each move kind at temperature ratio T/t0.
std::vector<double> move_mix(std::size_t regions, double temp_ratio, const MoveConfig &cfg);

std::pair<MoveKind, SequencePair> propose_move(const SequencePair &sp, Rng &rng, double temp_ratio,
                                               const MoveConfig &cfg = {});

struct Floorplan {
    std::vector<Placement> placements; // placements[i] is Design::regions[i]
    CostBreakdown cost;
    std::uint64_t seed = 0;
    std::size_t iterations = 0;
};

// Places one region with the scheme its type calls for, searching only
// window. Type4 regions use the white spaces inside window, scored against
// the centroid of the placements so far (fabric center when none).
std::optional<Placement> place_region(const OccupancyState &state, const std::string &name,
                                      const ResourceVector &req, RegionType type, const FrameWindow &window,
                                      const WsWeights &ws_weights);

// Medal-sorted greedy allocation. Throws InfeasibleError when the design
// exceeds the chip or a region finds no room.
Floorplan initial_floorplan(const Design &design, const Fabric &fabric, const WsWeights &ws_weights,
                            const CostWeights &weights = {});

struct Realization {
    bool ok = false;
    std::vector<Placement> placements;        // by region index, when ok
    std::vector<Placement> placed_in_order;   // seq_b order, up to any failure
    std::optional<std::size_t> failed_region; // region with no surviving anchor
};

// Decodes sequence pairs onto the fabric. Regions are allocated in seq_b
// order; each one may only use the part of the die that keeps its
// sequence-pair relations with the regions already placed (right of those
// it must follow, above those it must sit over). With a reference
// floorplan, a region keeps its reference rect when that rect lies in its
// window and is still free; otherwise its type's scheme searches the
// window. A nonzero offset hint then re-runs the scheme with the region
// pushed that many columns right (positive) or its right edge pulled left
// (negative) from that default. The result depends only on the sequence
// pair and the fixed reference.
class Realizer
{
  public:
    // reference, when non-empty, holds one placement per region.
    Realizer(const Design &design, const Fabric &fabric, WsWeights ws_weights, std::vector<Placement> reference = {});

    Realization run(const SequencePair &sp) const;

    // Equals run(sp), reusing the placements of the seq_b prefix that sp
    // shares with base_sp. base must come from run(base_sp) on this realizer.
    Realization run_incremental(const SequencePair &sp, const SequencePair &base_sp, const Realization &base) const;

  private:
    Realization decode(const SequencePair &sp, std::size_t reuse, const Realization *base) const;

    const Design *design_;
    const Fabric *fabric_;
    WsWeights ws_weights_;
    std::vector<Placement> reference_;
    std::vector<ResourceVector> req_;
    std::vector<RegionType> type_;
};

Realization realize(const SequencePair &sp, const Design &design, const Fabric &fabric, const WsWeights &ws_weights,
                    const std::vector<Placement> &reference = {});

struct AnnealParams {
    double t0 = 0.0; // 0 calibrates from probe moves
    double cooling = 0.95;
    int moves_per_temp = -1; // -1: 10 * regions^2, capped at max_moves_per_temp
    int max_moves_per_temp = 400;
    double min_temp_ratio = 1e-4;
    int stagnation_levels = 5;
    int calibration_probes = 100;
    double target_uphill_acceptance = 0.8;
    std::uint64_t seed = 1;
    MoveConfig moves;
    CostWeights weights;
    WsWeights ws_weights;

    void validate() const;
    int effective_moves_per_temp(std::size_t regions) const;
};

struct AnnealResult {
    Floorplan best;
    Floorplan initial;
    CostWeights weights; // with the normalizers actually used
    double t0 = 0.0;
    std::vector<double> best_trajectory;    // best total after each temperature level
    std::vector<double> current_trajectory; // chain's total after each level
    std::size_t accepted = 0;
    std::size_t infeasible = 0;
};

// Temperature at which the mean Metropolis acceptance of the given uphill
// deltas equals target; 1e-3 when there are none.
double calibrate_t0(const std::vector<double> &uphill, double target);

// Parameters file: one `key value...` per line, '#' comments. Keys: t0,
// cooling, moves_per_temp, max_moves_per_temp, min_temp_ratio,
// stagnation_levels, calibration_probes, target_uphill_acceptance,
// shuffle_max, max_shift, seed, weights <a> <b> <g>, ws_weights <a> <b> <g> <d>.
// Unlisted keys keep their value from base. Throws ParseError.
AnnealParams parse_anneal_params(std::string_view text, AnnealParams base = {});

AnnealResult anneal(const Design &design, const Fabric &fabric, const AnnealParams &params);

// Runs seeds params.seed .. params.seed + restarts - 1 concurrently and
// keeps the lowest total (lower seed on ties).
AnnealResult anneal_multistart(const Design &design, const Fabric &fabric, const AnnealParams &params,
                               int restarts);

} // namespace prfp
