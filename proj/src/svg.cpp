#include "subtile/svg.hpp"

#include <algorithm>
#include <cmath>

namespace subtile {

void write_patch_svg(std::ostream& os, const Window& window, const Box& region, double cell_px) {
    const Substitution& sub = window.sub();
    double w = (region.hi[0] - region.lo[0]) * cell_px;
    double h = (sub.dim == 2 ? region.hi[1] - region.lo[1] : 1.0) * cell_px;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    window.for_each_tile(region, [&](int type, Vec2 anchor) {
        Vec2 size = sub.tile_size(type);
        double x = (anchor[0] - region.lo[0]) * cell_px;
        double tw = size[0] * cell_px;
        double th = (sub.dim == 2 ? size[1] : 1.0) * cell_px;
        // SVG y axis points down; flip so the rule's origin is bottom-left.
        double y = sub.dim == 2 ? h - (anchor[1] + size[1] - region.lo[1]) * cell_px : 0.0;
        os << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << tw << "\" height=\"" << th
           << "\" fill=\"" << sub.prototiles[type].color
           << "\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
    });
    os << "</svg>\n";
}

}  // namespace subtile
