#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "reform/svg.hpp"

namespace reform {

namespace {

constexpr double kPxPerMeter = 60.0;
constexpr double kWedgeRadius = 0.35;  // m
constexpr double kWedgeHalfAngle = kPi / 6.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
                          "#e377c2", "#17becf"};

double cross(const Point2& o, const Point2& a, const Point2& b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

struct View {
    double min_x;
    double max_y;
    double width_px;
    double height_px;

    double px(double x) const { return (x - min_x) * kPxPerMeter; }
    double py(double y) const { return (max_y - y) * kPxPerMeter; }
};

}  // namespace

std::vector<Point2> convex_hull(std::vector<Point2> pts)
{
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) {
        return pts;
    }
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) {
            --k;
        }
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) {
            --k;
        }
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

std::string render_frame_svg(const Frame& frame, const GroupSet& groups)
{
    double min_x = -1.0, max_x = 1.0, min_y = -1.0, max_y = 1.0;
    if (!frame.agents.empty()) {
        min_x = max_x = frame.agents.front().x;
        min_y = max_y = frame.agents.front().y;
        for (const auto& a : frame.agents) {
            min_x = std::min(min_x, a.x);
            max_x = std::max(max_x, a.x);
            min_y = std::min(min_y, a.y);
            max_y = std::max(max_y, a.y);
        }
    }
    min_x -= 1.0;
    max_x += 1.0;
    min_y -= 1.0;
    max_y += 1.0;
    const View v{min_x, max_y, (max_x - min_x) * kPxPerMeter, (max_y - min_y) * kPxPerMeter};

    std::ostringstream s;
    s << fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.1f}\" height=\"{:.1f}\" "
                     "viewBox=\"0 0 {:.1f} {:.1f}\">\n",
                     v.width_px, v.height_px, v.width_px, v.height_px);
    s << fmt::format("<title>frame {}</title>\n", frame.frame_id);
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Axes through the world origin, clamped to the view.
    const double ax = std::clamp(v.px(0.0), 0.0, v.width_px);
    const double ay = std::clamp(v.py(0.0), 0.0, v.height_px);
    s << fmt::format("<line class=\"axis\" x1=\"0\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                     "stroke=\"#999\" stroke-width=\"1\"/>\n",
                     ay, v.width_px, ay);
    s << fmt::format("<line class=\"axis\" x1=\"{:.2f}\" y1=\"0\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                     "stroke=\"#999\" stroke-width=\"1\"/>\n",
                     ax, ax, v.height_px);

    for (std::size_t g = 0; g < groups.groups.size(); ++g) {
        std::vector<Point2> pts;
        for (AgentId id : groups.groups[g]) {
            if (const AgentPose* p = frame.find(id)) {
                pts.push_back({p->x, p->y});
            }
        }
        if (pts.size() < 2) {
            continue;
        }
        const char* color = kPalette[g % std::size(kPalette)];
        const auto hull = convex_hull(pts);
        std::string d;
        for (std::size_t i = 0; i < hull.size(); ++i) {
            d += fmt::format("{}{:.2f},{:.2f} ", i == 0 ? "M" : "L", v.px(hull[i].x), v.py(hull[i].y));
        }
        d += "Z";
        s << fmt::format("<path class=\"hull\" d=\"{}\" fill=\"{}\" fill-opacity=\"0.12\" "
                         "stroke=\"{}\" stroke-width=\"2\"/>\n",
                         d, color, color);
        Point2 c{0.0, 0.0};
        for (const auto& p : pts) {
            c.x += p.x;
            c.y += p.y;
        }
        c.x /= static_cast<double>(pts.size());
        c.y /= static_cast<double>(pts.size());
        s << fmt::format("<circle class=\"centroid\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"{}\"/>\n",
                         v.px(c.x), v.py(c.y), color);
    }

    for (const auto& a : frame.agents) {
        const double r = kWedgeRadius;
        const double t0 = a.body_theta - kWedgeHalfAngle;
        const double t1 = a.body_theta + kWedgeHalfAngle;
        s << fmt::format(
            "<path class=\"agent\" data-id=\"{}\" d=\"M{:.2f},{:.2f} L{:.2f},{:.2f} "
            "A{:.2f},{:.2f} 0 0 0 {:.2f},{:.2f} Z\" fill=\"#444\" fill-opacity=\"0.8\"/>\n",
            a.agent_id, v.px(a.x), v.py(a.y), v.px(a.x + r * std::cos(t0)), v.py(a.y + r * std::sin(t0)),
            r * kPxPerMeter, r * kPxPerMeter, v.px(a.x + r * std::cos(t1)), v.py(a.y + r * std::sin(t1)));
        s << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\">{}</text>\n",
                         v.px(a.x) + 6, v.py(a.y) - 6, a.agent_id);
    }
    s << "</svg>\n";
    return s.str();
}

std::string render_characterization_svg(const std::vector<SizeStats>& stats)
{
    constexpr double kPanelW = 360.0;
    constexpr double kPanelH = 240.0;
    constexpr double kPad = 40.0;
    const double width = 2 * kPanelW + 3 * kPad;
    const double height = kPanelH + 2 * kPad;

    std::ostringstream s;
    s << fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\">\n",
                     width, height);
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    auto panel = [&](double x0, const char* title, auto value) {
        double top = 0.0;
        for (const auto& st : stats) {
            top = std::max(top, value(st));
        }
        if (!(top > 0.0)) {
            top = 1.0;
        }
        s << fmt::format("<text x=\"{:.0f}\" y=\"{:.0f}\" font-size=\"14\">{}</text>\n", x0,
                         kPad - 12, title);
        s << fmt::format("<line class=\"axis\" x1=\"{0:.0f}\" y1=\"{1:.0f}\" x2=\"{0:.0f}\" y2=\"{2:.0f}\" stroke=\"#333\"/>\n",
                         x0, kPad, kPad + kPanelH);
        s << fmt::format("<line class=\"axis\" x1=\"{0:.0f}\" y1=\"{2:.0f}\" x2=\"{1:.0f}\" y2=\"{2:.0f}\" stroke=\"#333\"/>\n",
                         x0, x0 + kPanelW, kPad + kPanelH);
        if (stats.empty()) {
            return;
        }
        const double slot = kPanelW / static_cast<double>(stats.size());
        for (std::size_t i = 0; i < stats.size(); ++i) {
            const double h = value(stats[i]) / top * (kPanelH - 20.0);
            const double bx = x0 + slot * static_cast<double>(i) + slot * 0.15;
            s << fmt::format("<rect class=\"bar\" x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" "
                             "height=\"{:.1f}\" fill=\"#4c72b0\"/>\n",
                             bx, kPad + kPanelH - h, slot * 0.7, h);
            s << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\">{:.2f}</text>\n", bx,
                             kPad + kPanelH - h - 3, value(stats[i]));
            s << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"11\">f{}</text>\n", bx,
                             kPad + kPanelH + 14, stats[i].size);
        }
    };
    panel(kPad, "Mean symmetry (deg)", [](const SizeStats& st) { return st.mean_symmetry; });
    panel(2 * kPad + kPanelW, "Mean tightness (m)",
          [](const SizeStats& st) { return st.mean_tightness; });
    s << "</svg>\n";
    return s.str();
}

}  // namespace reform
