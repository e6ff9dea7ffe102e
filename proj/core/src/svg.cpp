#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "equitile/io.hpp"

namespace equitile {

void RenderStyle::validate() const {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorKind::InvalidInput, "scale must be positive");
    if (palette.empty()) throw Error(ErrorKind::InvalidInput, "palette must not be empty");
    if (!(stroke_width >= 0.0) || !(margin >= 0.0)) {
        throw Error(ErrorKind::InvalidInput, "stroke width and margin must be nonnegative");
    }
}

const std::string& RenderStyle::fill(int ring, bool reflected) const {
    const std::size_t slot = 2 * static_cast<std::size_t>(std::max(ring, 0)) + (reflected ? 1 : 0);
    return palette[slot % palette.size()];
}

namespace {

// Fixed six decimals; rounding first keeps "-0.000000" out of the output.
std::string num(double v) {
    double r = std::round(v * 1e6) / 1e6;
    if (r == 0.0) r = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", r);
    return buf;
}

}  // namespace

std::string to_svg(const Patch& patch, const RenderStyle& style) {
    style.validate();
    if (patch.tiles.empty()) throw Error(ErrorKind::EmptyPatch, "nothing to render");

    std::vector<std::vector<Point2>> polys;
    double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
    for (std::size_t t = 0; t < patch.tiles.size(); ++t) {
        auto pts = placed_polygon_ccw(patch, t);
        for (Point2& p : pts) {
            p.y = -p.y;
            min_x = std::min(min_x, p.x);
            min_y = std::min(min_y, p.y);
            max_x = std::max(max_x, p.x);
            max_y = std::max(max_y, p.y);
        }
        polys.push_back(std::move(pts));
    }
    const double vx = min_x - style.margin;
    const double vy = min_y - style.margin;
    const double vw = max_x - min_x + 2 * style.margin;
    const double vh = max_y - min_y + 2 * style.margin;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(vw * style.scale) << "\" height=\""
       << num(vh * style.scale) << "\" viewBox=\"" << num(vx) << ' ' << num(vy) << ' ' << num(vw) << ' '
       << num(vh) << "\">\n"
       << "<g stroke=\"#1b1b1b\" stroke-width=\"" << num(style.stroke_width) << "\" stroke-linejoin=\"round\">\n";
    for (std::size_t t = 0; t < polys.size(); ++t) {
        os << "<path d=\"";
        for (std::size_t k = 0; k < polys[t].size(); ++k) {
            os << (k == 0 ? "M" : " L") << num(polys[t][k].x) << ' ' << num(polys[t][k].y);
        }
        os << " Z\" fill=\"" << style.fill(patch.tiles[t].ring, patch.tiles[t].reflected) << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace equitile
