#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "reform/characterization.hpp"

using namespace reform;

namespace {

std::vector<AgentPose> at(std::initializer_list<std::pair<double, double>> pts)
{
    std::vector<AgentPose> out;
    AgentId id = 1;
    for (auto [x, y] : pts) {
        out.push_back(make_pose(id++, x, y, 0.0));
    }
    return out;
}

std::vector<AgentPose> polygon(int n, double r, double cx = 0, double cy = 0, double phase = 0)
{
    std::vector<AgentPose> out;
    for (int i = 0; i < n; ++i) {
        const double a = phase + kTwoPi * i / n;
        out.push_back(make_pose(i + 1, cx + r * std::cos(a), cy + r * std::sin(a), 0.0));
    }
    return out;
}

std::vector<std::array<double, 2>> points(const std::vector<AgentPose>& poses)
{
    std::vector<std::array<double, 2>> out;
    for (const auto& p : poses) {
        out.push_back({p.x, p.y});
    }
    return out;
}

}  // namespace

TEST_CASE("group center examples")
{
    auto c = group_center(at({{0, 0}, {2, 0}}));
    CHECK(c.x == 1.0);
    CHECK(c.y == 0.0);
    c = group_center(at({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    CHECK(c.x == 0.5);
    CHECK(c.y == 0.5);
    c = group_center(at({{0, 0}, {3, 0}, {0, 3}}));
    CHECK(c.x == 1.0);
    CHECK(c.y == 1.0);
    CHECK_THROWS_AS(group_center(at({{0, 0}})), ValidationError);
}

TEST_CASE("symmetry examples")
{
    const auto square = at({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    for (double g : adjacent_gaps(square)) {
        CHECK(g == doctest::Approx(90.0).epsilon(1e-12));
    }
    CHECK(symmetry(square) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(symmetry(at({{0, 0}, {5, 1}})) == 0.0);

    CHECK(perfect_gap(4) == 90.0);
    CHECK(perfect_gap(3) == 120.0);
    const std::vector<double> uneven{90.0, 90.0, 180.0};
    CHECK(symmetry_from_gaps(uneven) == doctest::Approx(120.0));
}

TEST_CASE("symmetry rejects a member on the center")
{
    CHECK_THROWS_AS(symmetry(at({{-1, 0}, {0, 0}, {1, 0}})), ValidationError);
}

TEST_CASE("regular polygons are perfectly symmetric with tightness equal to radius")
{
    for (int n = 3; n <= 9; ++n) {
        for (double r : {0.5, 1.0, 1.5}) {
            const auto g = polygon(n, r, 3.0, -2.0, 0.3);
            REQUIRE(std::abs(symmetry(g)) <= 1e-9);
            REQUIRE(std::abs(tightness(g) - r) <= 1e-9);
        }
    }
}

TEST_CASE("tangential perturbation breaks symmetry monotonically")
{
    double previous = 0.0;
    for (double deg : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        auto g = polygon(5, 1.0);
        const double a = deg_to_rad(deg);
        g[0] = make_pose(1, std::cos(a), std::sin(a), 0.0);
        const double s = symmetry(g);
        CHECK(s > previous);
        previous = s;
    }
}

TEST_CASE("tightness examples")
{
    CHECK(tightness(at({{0, 0}, {2, 0}})) == 1.0);
    const auto tri = at({{0, 0}, {2, 0}, {0, 2}});
    CHECK(tightness(tri) == doctest::Approx(oracle::direct_tightness(points(tri))).epsilon(1e-12));
    CHECK(tightness(tri) == doctest::Approx(1.308078).epsilon(1e-6));
}

TEST_CASE("scaling, translation and rotation")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-3, 3), ang(0, kTwoPi), scale(0.2, 5.0);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<AgentPose> g;
        const int n = 3 + trial % 5;
        for (int i = 0; i < n; ++i) {
            g.push_back(make_pose(i + 1, u(rng), u(rng), 0.0));
        }
        const double s = scale(rng), rot = ang(rng), tx = u(rng), ty = u(rng);
        std::vector<AgentPose> scaled, moved;
        for (const auto& p : g) {
            scaled.push_back(make_pose(p.agent_id, s * p.x, s * p.y, 0.0));
            const double x = std::cos(rot) * p.x - std::sin(rot) * p.y + tx;
            const double y = std::sin(rot) * p.x + std::cos(rot) * p.y + ty;
            moved.push_back(make_pose(p.agent_id, x, y, 0.0));
        }
        REQUIRE(symmetry(scaled) == doctest::Approx(symmetry(g)).epsilon(1e-7));
        REQUIRE(tightness(scaled) == doctest::Approx(s * tightness(g)).epsilon(1e-12));
        REQUIRE(symmetry(moved) == doctest::Approx(symmetry(g)).epsilon(1e-7));
        REQUIRE(tightness(moved) == doctest::Approx(tightness(g)).epsilon(1e-9));
        REQUIRE(tightness(g) == doctest::Approx(oracle::direct_tightness(points(g))).epsilon(1e-12));
    }
}

TEST_CASE("describe_group")
{
    Frame f;
    f.frame_id = 3;
    f.agents = {make_pose(1, -1, 0, 0), make_pose(2, 0, 0, 0), make_pose(3, 1, 0, 0),
                make_pose(4, 0, 1, 0)};
    const std::vector<AgentId> line{1, 2, 3};
    const auto shape = describe_group(f, line);
    CHECK_FALSE(shape.symmetry.has_value());
    CHECK(shape.tightness == doctest::Approx(2.0 / 3.0));
    const std::vector<AgentId> missing{1, 9};
    CHECK_THROWS_WITH_AS(describe_group(f, missing), doctest::Contains("unknown agent 9"),
                         ValidationError);
}

TEST_CASE("corpus table groups by size")
{
    Frame a;
    a.frame_id = 1;
    a.agents = polygon(4, 1.0);
    for (int i = 0; i < 2; ++i) {
        a.agents.push_back(make_pose(10 + i, 10.0 + 2.0 * i, 0.0, 0.0));
    }
    a.truth = GroupSet{{{1, 2, 3, 4}, {10, 11}}};
    Frame b;
    b.frame_id = 2;
    b.agents = polygon(4, 0.5);
    b.truth = GroupSet{{{1, 2, 3, 4}}};
    const auto stats = characterize_corpus({a, b});
    REQUIRE(stats.size() == 2);
    CHECK(stats[0].size == 2);
    CHECK(stats[0].count == 1);
    CHECK(stats[0].mean_tightness == doctest::Approx(1.0));
    CHECK(stats[0].mean_symmetry == 0.0);
    CHECK(stats[1].size == 4);
    CHECK(stats[1].count == 2);
    CHECK(stats[1].symmetry_count == 2);
    CHECK(stats[1].mean_tightness == doctest::Approx(0.75));
    CHECK(std::abs(stats[1].mean_symmetry) < 1e-9);

    CHECK_THROWS_AS(characterize_corpus({a}, {{7, GroupSet{}}}), ValidationError);
}
