#include <cmath>
#include <filesystem>
#include <random>

#include <doctest.h>

#include "reform/io.hpp"

using namespace reform;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;

    TempDir()
    {
        std::random_device rd;
        path = fs::temp_directory_path() / ("reform_io_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Frame sample_frame()
{
    Frame f;
    f.frame_id = 4;
    f.timestamp = 2.0;
    f.agents = {make_pose(1, 0.1, -0.2, 1.0, 1.1), make_pose(2, 1.0 / 3.0, 2.5, 6.0),
                make_pose(7, -4.0, 1e-9, 0.0)};
    f.truth = GroupSet{{{1, 2}}};
    return f;
}

void write_salsa(const fs::path& dir, bool truncated)
{
    fs::create_directories(dir / "geometryGT");
    write_text_file(dir / "fformationGT.csv", "0.0,1 2,3\n0.5,1 2 3\n");
    write_text_file(dir / "geometryGT" / "1.csv", "0.0,0,0,0.1,0.0\n0.5,0,0,0.1,7.0\n");
    write_text_file(dir / "geometryGT" / "2.csv", "0.0,1,0,3.0,3.14\n0.5,1,0,3.0,3.14\n");
    write_text_file(dir / "geometryGT" / "3.csv",
                    truncated ? "0.0,5,5,0,0\n" : "0.0,5,5,0,0\n0.5,0.5,0.9,4.7,-1.57\n");
}

}  // namespace

TEST_CASE("canonical documents round trip")
{
    Frame bare;
    bare.frame_id = 1;
    bare.agents = {make_pose(3, 0, 0, 0)};
    const auto ds = make_dataset({sample_frame(), bare});
    CHECK(ds.frames.front().frame_id == 1);
    const auto back = parse_canonical(write_canonical(ds));
    CHECK(back == ds);
    CHECK_FALSE(back.frames[0].timestamp.has_value());
    CHECK_FALSE(back.frames[0].truth.has_value());
    CHECK(back.frames[1].agents[0].head_theta == ds.frames[1].agents[0].head_theta);

    TempDir tmp;
    save_canonical(ds, tmp.path / "d.json");
    CHECK(load_canonical(tmp.path / "d.json") == ds);
}

TEST_CASE("canonical parse errors name the location")
{
    CHECK_THROWS_WITH_AS(parse_canonical("{\n\"schema_version\": 1,\n\"frames\": [\n"),
                         doctest::Contains("line"), ParseError);
    CHECK_THROWS_WITH_AS(parse_canonical(R"({"schema_version": 2, "frames": []})"),
                         doctest::Contains("schema_version"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_canonical(R"({"schema_version": 1, "frames": [{"frame_id": 0, "agents": [{"id": 1, "x": "a", "y": 0, "body_theta": 0}]}]})"),
        doctest::Contains("$.frames[0].agents[0].x"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_canonical(R"({"schema_version": 1, "frames": [{"frame_id": 5, "agents": [{"id": 1, "x": 0, "y": 0, "body_theta": 0}, {"id": 1, "x": 1, "y": 0, "body_theta": 0}]}]})"),
        doctest::Contains("frame 5"), ValidationError);
    CHECK_THROWS_AS(
        parse_canonical(R"({"schema_version": 1, "frames": [{"frame_id": 0, "agents": []}, {"frame_id": 0, "agents": []}]})"),
        ValidationError);
}

TEST_CASE("canonical parsing normalizes angles")
{
    const auto ds = parse_canonical(
        R"({"schema_version": 1, "frames": [{"frame_id": 0, "agents": [{"id": 1, "x": 0, "y": 0, "body_theta": -1.5707963267948966}]}]})");
    CHECK(ds.frames[0].agents[0].body_theta == doctest::Approx(1.5 * kPi));
}

TEST_CASE("SALSA-style directory")
{
    TempDir tmp;
    write_salsa(tmp.path, false);
    const auto ds = load_dataset(tmp.path, "salsa");
    REQUIRE(ds.frames.size() == 2);
    CHECK(ds.frames[0].agents.size() == 3);
    CHECK(ds.frames[0].truth->groups == std::vector<std::vector<AgentId>>{{1, 2}});
    CHECK(ds.frames[1].truth->groups == std::vector<std::vector<AgentId>>{{1, 2, 3}});
    const auto* a1 = ds.frames[1].find(1);
    REQUIRE(a1 != nullptr);
    CHECK(a1->body_theta == doctest::Approx(7.0 - kTwoPi));
    CHECK(*a1->head_theta == doctest::Approx(0.1));
    CHECK(ds.frames[1].find(3)->body_theta == doctest::Approx(kTwoPi - 1.57));

    TempDir bad;
    write_salsa(bad.path, true);
    CHECK_THROWS_WITH_AS(load_salsa(bad.path), doctest::Contains("rows"), ParseError);
}

TEST_CASE("Babble-style directory")
{
    TempDir tmp;
    write_text_file(tmp.path / "tracking.csv",
                    "frame,timestamp,participant,x,y,body_theta,head_theta\n"
                    "0,0.0,1,0,0,0,\n0,0.0,2,1,0,3.14,3.0\n0,0.0,3,0,1,4.7,\n"
                    "0,0.0,4,9,9,0,\n0,0.0,5,1,1,3.9,\n"
                    "1,0.1,1,0,0,0,\n1,0.1,2,1,0,3.14,\n");
    write_text_file(tmp.path / "annotations.csv",
                    "frame,groups\n0,\"{2,3,5},{1,4}\"\n1,\n");
    const auto ds = load_dataset(tmp.path, "babble");
    REQUIRE(ds.frames.size() == 2);
    CHECK(ds.frames[0].truth->canonical().groups ==
          std::vector<std::vector<AgentId>>{{1, 4}, {2, 3, 5}});
    CHECK(ds.frames[1].truth->empty());
    CHECK(ds.frames[0].find(2)->head_theta.has_value());
    CHECK_FALSE(ds.frames[0].find(1)->head_theta.has_value());

    write_text_file(tmp.path / "annotations.csv", "frame,groups\n0,\"{1,2}\"\n");
    CHECK_THROWS_AS(load_babble(tmp.path), ParseError);
}

TEST_CASE("group annotation notation")
{
    CHECK(parse_group_annotation("{2,3,5},{1,4}").groups ==
          std::vector<std::vector<AgentId>>{{2, 3, 5}, {1, 4}});
    CHECK(parse_group_annotation("").empty());
    CHECK(parse_group_annotation(" { 1 , 2 } ").groups == std::vector<std::vector<AgentId>>{{1, 2}});
    CHECK_THROWS_AS(parse_group_annotation("{1,2"), ParseError);
    CHECK_THROWS_AS(parse_group_annotation("1,2"), ParseError);
}

TEST_CASE("unknown dataset format")
{
    CHECK_THROWS_AS(load_dataset(".", "mystery"), Error);
}
