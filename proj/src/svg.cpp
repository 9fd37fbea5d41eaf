#include <sstream>

#include "prfp/cli.hpp"

namespace prfp {

namespace {

constexpr int kCell = 10;

const char *fill_for(ColumnKind k)
{
    switch (k) {
    case ColumnKind::CLB:
        return "#dfe8f2";
    case ColumnKind::BRAM:
        return "#f6dfb4";
    case ColumnKind::DSP:
        return "#d8ecd2";
    }
    return "#ffffff";
}

// Escapes the characters XML reserves in text and attribute values.
std::string xml_escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string emit_svg(const Floorplan &fp, const Fabric &fabric)
{
    const int w = fabric.num_columns() * kCell;
    const int h = fabric.grid_height() * kCell;
    // Cell (x, y) occupies [x*10, x*10+10) horizontally; y grows upward on the die.
    auto top = [&](int y2) { return h - (y2 + 1) * kCell; };

    std::ostringstream ss;
    ss << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
       << " " << h << "\">\n";

    ss << "<g class=\"fabric\">\n";
    for (int x = 0; x < fabric.num_columns(); ++x)
        ss << "<rect class=\"column\" x=\"" << x * kCell << "\" y=\"0\" width=\"" << kCell << "\" height=\"" << h
           << "\" fill=\"" << fill_for(fabric.column_kind(x)) << "\"/>\n";
    for (const Rect &r : fabric.reserved())
        ss << "<rect class=\"reserved\" x=\"" << r.x1 * kCell << "\" y=\"" << top(r.y2) << "\" width=\""
           << r.width() * kCell << "\" height=\"" << r.height() * kCell << "\" fill=\"#9a9a9a\"/>\n";
    ss << "<g stroke=\"#ffffff\" stroke-width=\"0.5\">\n";
    for (int x = 1; x < fabric.num_columns(); ++x)
        ss << "<line x1=\"" << x * kCell << "\" y1=\"0\" x2=\"" << x * kCell << "\" y2=\"" << h << "\"/>\n";
    for (int y = 1; y < fabric.grid_height(); ++y) {
        const bool frame_edge = y % fabric.row_height() == 0;
        ss << "<line x1=\"0\" y1=\"" << h - y * kCell << "\" x2=\"" << w << "\" y2=\"" << h - y * kCell << "\""
           << (frame_edge ? " stroke=\"#555555\"" : "") << "/>\n";
    }
    ss << "</g>\n</g>\n";

    ss << "<g class=\"regions\">\n";
    for (const Placement &p : fp.placements) {
        const Rect &r = p.rect;
        const std::string name = xml_escape(p.region);
        const double cx = (r.x1 + r.width() / 2.0) * kCell;
        const double cy = top(r.y2) + r.height() * kCell / 2.0;
        ss << "<g class=\"region\" id=\"" << name << "\">\n"
           << "<rect x=\"" << r.x1 * kCell << "\" y=\"" << top(r.y2) << "\" width=\"" << r.width() * kCell
           << "\" height=\"" << r.height() * kCell
           << "\" fill=\"#3b6fb6\" fill-opacity=\"0.45\" stroke=\"#1d3d6b\" stroke-width=\"1.5\"/>\n"
           << "<text x=\"" << cx << "\" y=\"" << cy
           << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\" dominant-baseline=\"middle\">"
           << name << "</text>\n</g>\n";
    }
    ss << "</g>\n</svg>\n";
    return ss.str();
}

} // namespace prfp
