#include "gstlink/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace gstlink {

namespace {

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

const char* colour(Role r, int k)
{
    static const char* companions[] = {"#c0392b", "#2e86c1", "#27ae60", "#8e44ad", "#d68910", "#17a589"};
    if (r == Role::knot_q) return "#1b1b1b";
    return companions[k % 6];
}

}  // namespace

std::string render_svg(const PlanarDiagram& pd)
{
    if (!pd.layout) throw std::invalid_argument("diagram has no layout to draw");
    Layout L = *pd.layout;
    {
        double xa = 1e300, xb = -1e300, ya = 1e300, yb = -1e300;
        for (auto& c : L.curves)
            for (auto& p : c) {
                xa = std::min(xa, p.x), xb = std::max(xb, p.x);
                ya = std::min(ya, p.y), yb = std::max(yb, p.y);
            }
        // quarter turn for tall drawings
        if (yb - ya > xb - xa) {
            auto turn = [](Vec2& v) { v = {v.y, -v.x}; };
            for (auto& c : L.curves)
                for (auto& p : c) turn(p);
            for (auto& g : L.crossings) turn(g.at), turn(g.over_dir);
        }
    }
    double x0 = std::numeric_limits<double>::max(), y0 = x0, x1 = -x0, y1 = -x0;
    for (auto& c : L.curves)
        for (auto& p : c) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
    const double width = 900, margin = 20;
    const double s = (width - 2 * margin) / std::max(x1 - x0, 1e-9);
    const double height = std::ceil((y1 - y0) * s + 2 * margin);
    auto X = [&](double x) { return margin + (x - x0) * s; };
    auto Y = [&](double y) { return margin + (y1 - y) * s; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) + "\" height=\"" +
           num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    std::vector<std::string> stroke(L.curves.size());
    int companion = 0;
    for (size_t c = 0; c < L.curves.size(); ++c) {
        Role r = c < pd.components.size() ? pd.components[c].role : Role::unknown;
        stroke[c] = colour(r, r == Role::knot_q ? 0 : companion++);
        std::string d;
        double lx = 0, ly = 0;
        for (size_t i = 0; i < L.curves[c].size(); ++i) {
            double x = X(L.curves[c][i].x), y = Y(L.curves[c][i].y);
            if (i && std::hypot(x - lx, y - ly) < 0.75) continue;
            d += (i ? " L" : "M") + num(x) + " " + num(y);
            lx = x;
            ly = y;
        }
        d += " Z";
        std::string name = c < pd.components.size() ? pd.components[c].name : "C" + std::to_string(c + 1);
        out += "<path class=\"component\" data-name=\"" + name + "\" fill=\"none\" stroke=\"" + stroke[c] +
               "\" stroke-width=\"1.20\" stroke-linejoin=\"round\" d=\"" + d + "\"/>\n";
    }
    out += "<g class=\"crossings\">\n";
    for (auto& g : L.crossings) {
        double cx = X(g.at.x), cy = Y(g.at.y), dx = 4 * g.over_dir.x, dy = -4 * g.over_dir.y;
        std::string seg = "M" + num(cx - dx) + " " + num(cy - dy) + " L" + num(cx + dx) + " " + num(cy + dy);
        out += "<path fill=\"none\" stroke=\"#ffffff\" stroke-width=\"4.00\" d=\"" + seg + "\"/>\n";
        out += "<path fill=\"none\" stroke=\"" + stroke[g.over] + "\" stroke-width=\"1.20\" d=\"" + seg + "\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace gstlink
