#include <string>

#include <doctest.h>

#include "reform/svg.hpp"

using namespace reform;

namespace {

std::size_t count(const std::string& hay, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("convex hull of a square with an interior point")
{
    const auto hull = convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
    CHECK(hull.size() == 4);
    CHECK(convex_hull({{0, 0}, {1, 1}}).size() == 2);
}

TEST_CASE("scene drawing of a square group")
{
    Frame f;
    f.agents = {make_pose(1, 0, 0, 0.785), make_pose(2, 1, 0, 2.356), make_pose(3, 1, 1, 3.927),
                make_pose(4, 0, 1, 5.498)};
    const auto svg = render_frame_svg(f, GroupSet{{{1, 2, 3, 4}}});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count(svg, "class=\"agent\"") == 4);
    CHECK(count(svg, "class=\"hull\"") == 1);
    CHECK(count(svg, "class=\"centroid\"") == 1);
}

TEST_CASE("empty scene still draws axes")
{
    const auto svg = render_frame_svg(Frame{}, GroupSet{});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count(svg, "class=\"axis\"") >= 2);
    CHECK(count(svg, "class=\"agent\"") == 0);
}

TEST_CASE("characterization chart has one bar per size")
{
    std::vector<SizeStats> stats(3);
    stats[0].size = 2;
    stats[1].size = 3;
    stats[2].size = 4;
    for (auto& s : stats) {
        s.count = 1;
        s.mean_tightness = 0.8;
        s.mean_symmetry = 10;
        s.symmetry_count = 1;
    }
    const auto svg = render_characterization_svg(stats);
    CHECK(count(svg, "class=\"bar\"") >= 3);
}
