#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prfp/fabric.hpp"

namespace prfp {

struct WhiteSpace;

// A region's rectangle together with the frames it owns and the blocks it
// holds beyond its requirement.
struct Placement {
    std::string region;
    Rect rect;
    std::vector<FrameId> frames;
    ResourceVector waste;

    friend bool operator==(const Placement &, const Placement &) = default;
};

// Builds a placement for rect; waste = capacity(rect) - requirement.
Placement make_placement(const Fabric &fabric, std::string region, const Rect &rect, const ResourceVector &requirement);

// Columns [x1,x2] by device rows [row1,row2], inclusive.
struct FrameWindow {
    int x1 = 0, x2 = -1;
    int row1 = 0, row2 = -1;
    bool empty() const { return x1 > x2 || row1 > row2; }
};

FrameWindow full_window(const Fabric &fabric);

// Cell rect covering whole frames in columns [x1,x2] and device rows [r1,r2].
Rect frame_rect(const Fabric &fabric, int x1, int x2, int r1, int r2);

// Frames claimed so far in one allocation pass. Frames touching a reserved
// cell are never available.
class OccupancyState
{
  public:
    explicit OccupancyState(const Fabric &fabric);

    const Fabric &fabric() const { return *fabric_; }
    const std::vector<Placement> &placements() const { return placements_; }

    bool frame_claimed(int column, int device_row) const;
    bool frame_available(int column, int device_row) const;
    // Every frame in columns [x1,x2] x rows [r1,r2] is available. O(1).
    bool span_available(int x1, int x2, int r1, int r2) const;
    // Not reserved and not inside a claimed frame.
    bool cell_free(int x, int y) const;

    // Throws std::logic_error when a frame of p is unavailable.
    void claim(Placement p);

  private:
    std::size_t index(int c, int r) const { return static_cast<std::size_t>(c) * fabric_->num_rows() + r; }
    void rebuild_prefix();

    const Fabric *fabric_;
    std::vector<std::uint8_t> claimed_;
    std::vector<int> blocked_prefix_;
    std::vector<Placement> placements_;
};

struct FrameWaste {
    int frames = 0;
    int waste = 0;
    friend bool operator==(const FrameWaste &, const FrameWaste &) = default;
};

// Frames needed for n blocks at per_frame blocks each, and the remainder
// wasted by the last one: frames = ceil(n / per_frame).
FrameWaste wasted_frames(int n, int per_frame);

// Inclusive cell sets intersect.
bool overlaps(const Rect &a, const Rect &b);

// Scheme 1 (Type1 requirements) and scheme 2 (Type2/Type3). The scarce
// column (DSP, or BRAM for Type3) anchors the search: anchor columns are
// scanned left to right, then the row span grows from one device row
// upward, then the start row moves bottom to top. For the first anchor and
// span that admit a rectangle, the extent around the anchor column with the
// least scarcity-weighted waste wins (ties: narrower, then further left).
// The search is exhaustive over rectangles containing an anchor column, so
// nullopt means no frame-disjoint covering rectangle exists in window.
// Returns a candidate; the caller claims it.
std::optional<Placement> allocate_scheme1(const OccupancyState &state, std::string_view region,
                                          const ResourceVector &req, const FrameWindow &window);
std::optional<Placement> allocate_scheme2(const OccupancyState &state, std::string_view region,
                                          const ResourceVector &req, const FrameWindow &window);

// Scheme 3 (Type4): first white space in ws_sorted with enough free CLBs
// whose frame-aligned interior can host req. The rectangle grows from the
// interior corner nearest centroid; among shapes the least waste wins, then
// fewer rows, then fewer columns.
std::optional<Placement> allocate_scheme3(const OccupancyState &state, std::string_view region,
                                          const ResourceVector &req, const std::vector<WhiteSpace> &ws_sorted,
                                          Point centroid);

} // namespace prfp
