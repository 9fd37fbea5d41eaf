#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prfp/errors.hpp"

namespace prfp {

enum class ColumnKind : std::uint8_t { CLB = 0, BRAM = 1, DSP = 2 };

inline constexpr std::array<ColumnKind, 3> kAllKinds{ColumnKind::CLB, ColumnKind::BRAM, ColumnKind::DSP};

std::string_view to_string(ColumnKind kind);
std::optional<ColumnKind> parse_column_kind(std::string_view token);

// Block counts per resource kind. Used for demands, capacities, waste and
// per-frame block counts alike.
struct ResourceVector {
    int clb = 0;
    int bram = 0;
    int dsp = 0;

    int &operator[](ColumnKind kind);
    int operator[](ColumnKind kind) const;

    ResourceVector &operator+=(const ResourceVector &o);
    ResourceVector &operator-=(const ResourceVector &o);
    friend ResourceVector operator+(ResourceVector a, const ResourceVector &b) { return a += b; }
    friend ResourceVector operator-(ResourceVector a, const ResourceVector &b) { return a -= b; }
    friend bool operator==(const ResourceVector &, const ResourceVector &) = default;

    // Componentwise <=, the feasibility order.
    bool fits_in(const ResourceVector &cap) const { return clb <= cap.clb && bram <= cap.bram && dsp <= cap.dsp; }
    bool non_negative() const { return clb >= 0 && bram >= 0 && dsp >= 0; }
};

ResourceVector componentwise_max(const ResourceVector &a, const ResourceVector &b);
std::ostream &operator<<(std::ostream &os, const ResourceVector &rv);

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point &, const Point &) = default;
};

// Inclusive cell coordinates: x is the column index, y the CLB-row index
// counted from the bottom of the die.
struct Rect {
    int x1 = 0, y1 = 0, x2 = 0, y2 = 0;

    int width() const { return x2 - x1 + 1; }
    int height() const { return y2 - y1 + 1; }
    long area() const { return static_cast<long>(width()) * height(); }
    bool contains(int x, int y) const { return x >= x1 && x <= x2 && y >= y1 && y <= y2; }
    bool contains(const Rect &o) const { return o.x1 >= x1 && o.x2 <= x2 && o.y1 >= y1 && o.y2 <= y2; }
    // Center in boundary coordinates (cell x spans [x, x+1)).
    Point center() const { return {(x1 + x2 + 1) / 2.0, (y1 + y2 + 1) / 2.0}; }

    friend bool operator==(const Rect &, const Rect &) = default;
    friend auto operator<=>(const Rect &, const Rect &) = default;
};

std::ostream &operator<<(std::ostream &os, const Rect &r);

struct FrameId {
    int column = 0;
    int device_row = 0;
    friend auto operator<=>(const FrameId &, const FrameId &) = default;
};

class Fabric
{
  public:
    static constexpr ResourceVector kDefaultSlicesPerFrame{20, 2, 4};

    // Throws std::invalid_argument when an invariant is violated.
    Fabric(std::string name, int num_rows, int row_height, std::vector<ColumnKind> columns,
           ResourceVector slices_per_frame = kDefaultSlicesPerFrame, std::vector<Rect> reserved = {});

    const std::string &name() const { return name_; }
    int num_rows() const { return num_rows_; }
    int row_height() const { return row_height_; }
    int num_columns() const { return static_cast<int>(columns_.size()); }
    int grid_height() const { return num_rows_ * row_height_; }
    const std::vector<ColumnKind> &columns() const { return columns_; }
    ColumnKind column_kind(int x) const { return columns_[x]; }
    const ResourceVector &slices_per_frame() const { return slices_per_frame_; }
    const std::vector<Rect> &reserved() const { return reserved_; }

    Rect bounds() const { return {0, 0, num_columns() - 1, grid_height() - 1}; }
    bool in_bounds(const Rect &r) const;
    bool is_reserved(int x, int y) const { return reserved_cell_[cell_index(x, y)] != 0; }

    // A frame holding any reserved cell belongs to the static region.
    bool frame_reserved(int column, int device_row) const { return frame_reserved_[frame_index(column, device_row)] != 0; }
    // Blocks held by the non-reserved part of one frame.
    int frame_blocks(int column, int device_row) const { return frame_blocks_[frame_index(column, device_row)]; }

    // Capacity of whole frames in columns [x1,x2] and device rows [r1,r2]. O(1).
    ResourceVector frame_span_capacity(int x1, int x2, int r1, int r2) const;

    // Total blocks on the chip, reserved cells included (the FPGA_* totals).
    ResourceVector chip_total() const;

    // Cells in column x within [y1,y2] that are not reserved.
    int free_cells_in_column(int x, int y1, int y2) const;

  private:
    std::size_t cell_index(int x, int y) const { return static_cast<std::size_t>(x) * grid_height() + y; }
    std::size_t frame_index(int c, int r) const { return static_cast<std::size_t>(c) * num_rows_ + r; }

    std::string name_;
    int num_rows_;
    int row_height_;
    std::vector<ColumnKind> columns_;
    ResourceVector slices_per_frame_;
    std::vector<Rect> reserved_;

    std::vector<std::uint8_t> reserved_cell_;
    std::vector<int> column_free_prefix_; // per column, grid_height()+1 entries
    std::vector<std::uint8_t> frame_reserved_;
    std::vector<int> frame_blocks_;
    // (num_columns+1) x (num_rows+1) prefix sums, one table per kind
    std::array<std::vector<int>, 3> frame_prefix_;
};

bool operator==(const Fabric &a, const Fabric &b);

// Blocks of each kind inside rect, reserved cells excluded. A frame that is
// only partly covered contributes floor(slices * covered_cells / row_height).
// Throws std::out_of_range when rect leaves the grid.
ResourceVector capacity(const Fabric &fabric, const Rect &rect);

// Every frame whose column lies in rect and whose device row intersects it.
std::vector<FrameId> frames_in(const Fabric &fabric, const Rect &rect);

// Per-kind frame counts over a set of frames.
ResourceVector frame_counts(const Fabric &fabric, const std::vector<FrameId> &frames);

Fabric parse_device(std::string_view text);
std::string serialize_device(const Fabric &fabric);

} // namespace prfp
