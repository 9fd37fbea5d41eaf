#include "prfp/fabric.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "text_util.hpp"

namespace prfp {

std::string_view to_string(ColumnKind kind)
{
    switch (kind) {
    case ColumnKind::CLB:
        return "CLB";
    case ColumnKind::BRAM:
        return "BRAM";
    case ColumnKind::DSP:
        return "DSP";
    }
    return "?";
}

std::optional<ColumnKind> parse_column_kind(std::string_view token)
{
    if (token == "CLB")
        return ColumnKind::CLB;
    if (token == "BRAM")
        return ColumnKind::BRAM;
    if (token == "DSP")
        return ColumnKind::DSP;
    return std::nullopt;
}

int &ResourceVector::operator[](ColumnKind kind)
{
    switch (kind) {
    case ColumnKind::CLB:
        return clb;
    case ColumnKind::BRAM:
        return bram;
    case ColumnKind::DSP:
        return dsp;
    }
    return clb;
}

int ResourceVector::operator[](ColumnKind kind) const { return const_cast<ResourceVector &>(*this)[kind]; }

ResourceVector &ResourceVector::operator+=(const ResourceVector &o)
{
    clb += o.clb;
    bram += o.bram;
    dsp += o.dsp;
    return *this;
}

ResourceVector &ResourceVector::operator-=(const ResourceVector &o)
{
    clb -= o.clb;
    bram -= o.bram;
    dsp -= o.dsp;
    return *this;
}

ResourceVector componentwise_max(const ResourceVector &a, const ResourceVector &b)
{
    return {std::max(a.clb, b.clb), std::max(a.bram, b.bram), std::max(a.dsp, b.dsp)};
}

std::ostream &operator<<(std::ostream &os, const ResourceVector &rv)
{
    return os << "{clb " << rv.clb << ", bram " << rv.bram << ", dsp " << rv.dsp << "}";
}

std::ostream &operator<<(std::ostream &os, const Rect &r)
{
    return os << "(" << r.x1 << "," << r.y1 << "," << r.x2 << "," << r.y2 << ")";
}

Fabric::Fabric(std::string name, int num_rows, int row_height, std::vector<ColumnKind> columns,
               ResourceVector slices_per_frame, std::vector<Rect> reserved)
        : name_(std::move(name)), num_rows_(num_rows), row_height_(row_height), columns_(std::move(columns)),
          slices_per_frame_(slices_per_frame), reserved_(std::move(reserved))
{
    if (columns_.empty())
        throw std::invalid_argument("fabric needs at least one column");
    if (num_rows_ < 1)
        throw std::invalid_argument("fabric needs at least one device row");
    if (row_height_ < 1)
        throw std::invalid_argument("row_height must be >= 1");
    for (ColumnKind k : kAllKinds)
        if (slices_per_frame_[k] < 1)
            throw std::invalid_argument("slices per frame must be >= 1 for " + std::string(to_string(k)));
    for (const Rect &r : reserved_)
        if (!in_bounds(r)) {
            std::ostringstream ss;
            ss << "reserved rect " << r << " lies outside the grid";
            throw std::invalid_argument(ss.str());
        }

    const int w = num_columns();
    const int h = grid_height();
    reserved_cell_.assign(static_cast<std::size_t>(w) * h, 0);
    for (const Rect &r : reserved_)
        for (int x = r.x1; x <= r.x2; ++x)
            for (int y = r.y1; y <= r.y2; ++y)
                reserved_cell_[cell_index(x, y)] = 1;

    column_free_prefix_.assign(static_cast<std::size_t>(w) * (h + 1), 0);
    for (int x = 0; x < w; ++x) {
        int *p = &column_free_prefix_[static_cast<std::size_t>(x) * (h + 1)];
        for (int y = 0; y < h; ++y)
            p[y + 1] = p[y] + (reserved_cell_[cell_index(x, y)] ? 0 : 1);
    }

    frame_reserved_.assign(static_cast<std::size_t>(w) * num_rows_, 0);
    frame_blocks_.assign(static_cast<std::size_t>(w) * num_rows_, 0);
    for (int x = 0; x < w; ++x)
        for (int r = 0; r < num_rows_; ++r) {
            int free = free_cells_in_column(x, r * row_height_, (r + 1) * row_height_ - 1);
            frame_reserved_[frame_index(x, r)] = free < row_height_ ? 1 : 0;
            frame_blocks_[frame_index(x, r)] = slices_per_frame_[columns_[x]] * free / row_height_;
        }

    for (ColumnKind k : kAllKinds) {
        auto &pre = frame_prefix_[static_cast<int>(k)];
        pre.assign(static_cast<std::size_t>(w + 1) * (num_rows_ + 1), 0);
        auto at = [&](int x, int r) -> int & { return pre[static_cast<std::size_t>(x) * (num_rows_ + 1) + r]; };
        for (int x = 0; x < w; ++x)
            for (int r = 0; r < num_rows_; ++r) {
                int v = columns_[x] == k ? frame_blocks(x, r) : 0;
                at(x + 1, r + 1) = v + at(x, r + 1) + at(x + 1, r) - at(x, r);
            }
    }
}

bool Fabric::in_bounds(const Rect &r) const
{
    return r.x1 >= 0 && r.y1 >= 0 && r.x1 <= r.x2 && r.y1 <= r.y2 && r.x2 < num_columns() && r.y2 < grid_height();
}

int Fabric::free_cells_in_column(int x, int y1, int y2) const
{
    const int *p = &column_free_prefix_[static_cast<std::size_t>(x) * (grid_height() + 1)];
    return p[y2 + 1] - p[y1];
}

ResourceVector Fabric::frame_span_capacity(int x1, int x2, int r1, int r2) const
{
    ResourceVector out;
    for (ColumnKind k : kAllKinds) {
        const auto &pre = frame_prefix_[static_cast<int>(k)];
        auto at = [&](int x, int r) { return pre[static_cast<std::size_t>(x) * (num_rows_ + 1) + r]; };
        out[k] = at(x2 + 1, r2 + 1) - at(x1, r2 + 1) - at(x2 + 1, r1) + at(x1, r1);
    }
    return out;
}

ResourceVector Fabric::chip_total() const
{
    ResourceVector out;
    for (ColumnKind k : columns_)
        out[k] += slices_per_frame_[k] * num_rows_;
    return out;
}

bool operator==(const Fabric &a, const Fabric &b)
{
    return a.name() == b.name() && a.num_rows() == b.num_rows() && a.row_height() == b.row_height() &&
           a.columns() == b.columns() && a.slices_per_frame() == b.slices_per_frame() && a.reserved() == b.reserved();
}

ResourceVector capacity(const Fabric &fabric, const Rect &rect)
{
    if (!fabric.in_bounds(rect)) {
        std::ostringstream ss;
        ss << "rect " << rect << " out of bounds";
        throw std::out_of_range(ss.str());
    }
    const int h = fabric.row_height();
    ResourceVector out;
    for (int x = rect.x1; x <= rect.x2; ++x) {
        ColumnKind k = fabric.column_kind(x);
        const int s = fabric.slices_per_frame()[k];
        for (int r = rect.y1 / h; r <= rect.y2 / h; ++r) {
            int lo = std::max(rect.y1, r * h);
            int hi = std::min(rect.y2, (r + 1) * h - 1);
            out[k] += s * fabric.free_cells_in_column(x, lo, hi) / h;
        }
    }
    return out;
}

std::vector<FrameId> frames_in(const Fabric &fabric, const Rect &rect)
{
    if (!fabric.in_bounds(rect)) {
        std::ostringstream ss;
        ss << "rect " << rect << " out of bounds";
        throw std::out_of_range(ss.str());
    }
    const int h = fabric.row_height();
    std::vector<FrameId> out;
    for (int x = rect.x1; x <= rect.x2; ++x)
        for (int r = rect.y1 / h; r <= rect.y2 / h; ++r)
            out.push_back({x, r});
    return out;
}

ResourceVector frame_counts(const Fabric &fabric, const std::vector<FrameId> &frames)
{
    ResourceVector out;
    for (const FrameId &f : frames)
        out[fabric.column_kind(f.column)] += 1;
    return out;
}

Fabric parse_device(std::string_view text)
{
    using detail::parse_count;
    using detail::parse_int;

    std::optional<std::string> name;
    std::optional<int> rows, row_height;
    std::optional<std::vector<ColumnKind>> cols;
    ResourceVector spf = Fabric::kDefaultSlicesPerFrame;
    std::vector<std::pair<int, Rect>> reserved;

    for (const detail::Line &l : detail::tokenize(text)) {
        const std::string &kw = l.tokens[0];
        if (kw == "device") {
            detail::expect_arity(l, 2, "device <name>");
            if (name)
                throw ParseError(l.number, "duplicate 'device' line");
            name = l.tokens[1];
        } else if (kw == "rows") {
            detail::expect_arity(l, 2, "rows <R>");
            rows = parse_int(l.tokens[1], l.number, "rows");
            if (*rows < 1)
                throw ParseError(l.number, "rows must be >= 1");
        } else if (kw == "row_height") {
            detail::expect_arity(l, 2, "row_height <H>");
            row_height = parse_int(l.tokens[1], l.number, "row_height");
            if (*row_height < 1)
                throw ParseError(l.number, "row_height must be >= 1");
        } else if (kw == "cols") {
            if (l.tokens.size() < 2)
                throw ParseError(l.number, "expected 'cols <kind>{,<kind>}*'");
            if (cols)
                throw ParseError(l.number, "duplicate 'cols' line");
            std::string joined;
            for (std::size_t i = 1; i < l.tokens.size(); ++i)
                joined += l.tokens[i];
            std::vector<ColumnKind> kinds;
            std::size_t pos = 0;
            while (pos <= joined.size()) {
                std::size_t comma = joined.find(',', pos);
                if (comma == std::string::npos)
                    comma = joined.size();
                std::string tok = joined.substr(pos, comma - pos);
                auto kind = parse_column_kind(tok);
                if (!kind)
                    throw ParseError(l.number, "unknown column kind '" + tok + "'");
                kinds.push_back(*kind);
                pos = comma + 1;
            }
            cols = std::move(kinds);
        } else if (kw == "frame") {
            detail::expect_arity(l, 3, "frame <kind> <slices>");
            auto kind = parse_column_kind(l.tokens[1]);
            if (!kind)
                throw ParseError(l.number, "unknown column kind '" + l.tokens[1] + "'");
            int s = parse_int(l.tokens[2], l.number, "slices");
            if (s < 1)
                throw ParseError(l.number, "slices per frame must be >= 1");
            spf[*kind] = s;
        } else if (kw == "reserved") {
            detail::expect_arity(l, 5, "reserved <x1> <y1> <x2> <y2>");
            Rect r{parse_count(l.tokens[1], l.number, "x1"), parse_count(l.tokens[2], l.number, "y1"),
                   parse_count(l.tokens[3], l.number, "x2"), parse_count(l.tokens[4], l.number, "y2")};
            reserved.emplace_back(l.number, r);
        } else {
            throw ParseError(l.number, "unknown keyword '" + kw + "'");
        }
    }

    if (!name)
        throw ParseError(0, "missing 'device <name>' line");
    if (!rows)
        throw ParseError(0, "missing 'rows' line");
    if (!row_height)
        throw ParseError(0, "missing 'row_height' line");
    if (!cols)
        throw ParseError(0, "missing 'cols' line");

    const Rect grid{0, 0, static_cast<int>(cols->size()) - 1, *rows * *row_height - 1};
    std::vector<Rect> rects;
    for (const auto &[line, r] : reserved) {
        if (!(r.x1 <= r.x2 && r.y1 <= r.y2 && grid.contains(r))) {
            std::ostringstream ss;
            ss << "reserved rect " << r << " out of bounds for a " << grid.width() << "x" << grid.height() << " grid";
            throw ParseError(line, ss.str());
        }
        rects.push_back(r);
    }
    return Fabric(*name, *rows, *row_height, std::move(*cols), spf, std::move(rects));
}

std::string serialize_device(const Fabric &fabric)
{
    std::ostringstream ss;
    ss << "device " << fabric.name() << "\n";
    ss << "rows " << fabric.num_rows() << "\n";
    ss << "row_height " << fabric.row_height() << "\n";
    ss << "cols ";
    for (int x = 0; x < fabric.num_columns(); ++x)
        ss << (x ? "," : "") << to_string(fabric.column_kind(x));
    ss << "\n";
    for (ColumnKind k : kAllKinds)
        ss << "frame " << to_string(k) << " " << fabric.slices_per_frame()[k] << "\n";
    for (const Rect &r : fabric.reserved())
        ss << "reserved " << r.x1 << " " << r.y1 << " " << r.x2 << " " << r.y2 << "\n";
    return ss.str();
}

} // namespace prfp
