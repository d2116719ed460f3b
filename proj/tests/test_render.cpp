#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "voxelsmith/render.hpp"
#include "voxelsmith/world.hpp"

#include <unistd.h>

using namespace voxelsmith;

namespace {

const View& view_named(const ViewSet& vs, const std::string& label) {
    for (const View& v : vs.views) {
        if (v.label == label) return v;
    }
    REQUIRE(false);
    return vs.views.front();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("render_views: single block fills every projection") {
    World w;
    w.set_block({0, 1, 0}, "stone");
    const BoundingBox bbox{{0, 1, 0}, {0, 1, 0}};
    const ViewSet vs = render_views(w, bbox);

    // four sides, one top, one layer per y level
    REQUIRE(vs.views.size() == 6);
    CHECK(vs.views[0].label == "north");
    CHECK(vs.views[1].label == "south");
    CHECK(vs.views[2].label == "east");
    CHECK(vs.views[3].label == "west");
    CHECK(vs.views[4].label == "top");
    CHECK(vs.views[5].label == "layer_1");
    for (const View& v : vs.views) {
        REQUIRE(v.grid.size() == 1);
        REQUIRE(v.grid[0].size() == 1);
        CHECK(v.grid[0][0] == "stone");
    }
}

TEST_CASE("render_views: grid dimensions follow the box") {
    World w;
    w.set_block({0, 1, 0}, "stone");
    const BoundingBox bbox{{0, 1, 0}, {1, 3, 3}};  // 2 wide, 3 tall, 4 deep
    const ViewSet vs = render_views(w, bbox);

    REQUIRE(vs.views.size() == 4 + 1 + 3);
    const View& north = view_named(vs, "north");
    REQUIRE(north.grid.size() == 3);        // rows span y
    REQUIRE(north.grid[0].size() == 2);     // columns span x
    const View& east = view_named(vs, "east");
    REQUIRE(east.grid.size() == 3);         // rows span y
    REQUIRE(east.grid[0].size() == 4);      // columns span z
    const View& top = view_named(vs, "top");
    REQUIRE(top.grid.size() == 4);          // rows span z
    REQUIRE(top.grid[0].size() == 2);       // columns span x
    CHECK(vs.views[5].label == "layer_1");
    CHECK(vs.views[6].label == "layer_2");
    CHECK(vs.views[7].label == "layer_3");

    // rows run top-down, so the lone block lands in the bottom row
    CHECK(north.grid[2][0] == "stone");
    CHECK(north.grid[0][0] == ".");
    CHECK(top.grid[0][0] == "stone");
}

TEST_CASE("render_views: side views occlude along their ray") {
    World w;
    w.set_block({0, 1, 0}, "stone");
    w.set_block({0, 1, 1}, "dirt");
    const BoundingBox bbox{{0, 1, 0}, {0, 1, 1}};
    const ViewSet vs = render_views(w, bbox);

    // the north face sees the low-z block, the south face the high-z one
    CHECK(view_named(vs, "north").grid[0][0] == "stone");
    CHECK(view_named(vs, "south").grid[0][0] == "dirt");

    // east and west list columns in ascending z either way
    const View& east = view_named(vs, "east");
    const View& west = view_named(vs, "west");
    REQUIRE(east.grid[0].size() == 2);
    CHECK(east.grid[0][0] == "stone");
    CHECK(east.grid[0][1] == "dirt");
    CHECK(west.grid == east.grid);  // single x slice, both faces see the same

    const View& top = view_named(vs, "top");
    REQUIRE(top.grid.size() == 2);
    CHECK(top.grid[0][0] == "stone");
    CHECK(top.grid[1][0] == "dirt");
}

TEST_CASE("render_views: east and west occlude across x") {
    World w;
    w.set_block({0, 1, 0}, "stone");
    w.set_block({1, 1, 0}, "dirt");
    const BoundingBox bbox{{0, 1, 0}, {1, 1, 0}};
    const ViewSet vs = render_views(w, bbox);

    CHECK(view_named(vs, "west").grid[0][0] == "stone");   // scans x ascending
    CHECK(view_named(vs, "east").grid[0][0] == "dirt");    // scans x descending
    CHECK(view_named(vs, "north").grid[0] == std::vector<std::string>{"stone", "dirt"});
}

TEST_CASE("render_views: top view shows the highest block, layers the exact cell") {
    World w;
    w.set_block({0, 1, 0}, "stone");
    w.set_block({0, 2, 0}, "glass");
    const BoundingBox bbox{{0, 1, 0}, {0, 2, 0}};
    const ViewSet vs = render_views(w, bbox);

    CHECK(view_named(vs, "top").grid[0][0] == "glass");
    CHECK(view_named(vs, "layer_1").grid[0][0] == "stone");
    CHECK(view_named(vs, "layer_2").grid[0][0] == "glass");

    const View& north = view_named(vs, "north");
    CHECK(north.grid[0][0] == "glass");  // y descends row by row
    CHECK(north.grid[1][0] == "stone");
}

TEST_CASE("render_views: degenerate box is refused") {
    World w;
    CHECK_THROWS_AS(render_views(w, BoundingBox{{0, 0, 0}, {-1, 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(render_views(w, BoundingBox{{0, 0, 0}, {0, -1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(render_views(w, BoundingBox{{0, 0, 0}, {0, 0, -1}}), std::invalid_argument);
}

TEST_CASE("views_to_text: fenced blocks with space-separated ids") {
    World w;
    w.set_block({0, 1, 0}, "stone");
    w.set_block({1, 1, 0}, "dirt");
    const ViewSet vs = render_views(w, BoundingBox{{0, 1, 0}, {1, 1, 0}});
    const std::string text = views_to_text(vs);

    const std::string expected =
        "```north\n"
        "stone dirt\n"
        "```\n\n"
        "```south\n"
        "stone dirt\n"
        "```\n\n"
        "```east\n"
        "dirt\n"
        "```\n\n"
        "```west\n"
        "stone\n"
        "```\n\n"
        "```top\n"
        "stone dirt\n"
        "```\n\n"
        "```layer_1\n"
        "stone dirt\n"
        "```\n\n";
    CHECK(text == expected);
}

TEST_CASE("render_isometric_png: writes a deterministic PNG file") {
    World w;
    w.set_block({0, 1, 0}, "stone");
    w.set_block({1, 1, 0}, "oak_planks");
    w.set_block({0, 2, 0}, "glass");
    const BoundingBox bbox{{0, 1, 0}, {1, 2, 0}};

    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / ("vs_render_a_" + std::to_string(::getpid()) + ".png");
    const auto b = dir / ("vs_render_b_" + std::to_string(::getpid()) + ".png");
    render_isometric_png(w, bbox, a.string());
    render_isometric_png(w, bbox, b.string());

    const std::string bytes_a = slurp(a);
    const std::string bytes_b = slurp(b);
    REQUIRE(bytes_a.size() > 8);
    CHECK(bytes_a.substr(0, 8) == std::string("\x89PNG\r\n\x1a\n", 8));
    CHECK(bytes_a.find("IHDR") != std::string::npos);
    CHECK(bytes_a.find("IEND") != std::string::npos);
    CHECK(bytes_a == bytes_b);

    std::filesystem::remove(a);
    std::filesystem::remove(b);
}
