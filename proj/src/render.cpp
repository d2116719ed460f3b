#include "voxelsmith/render.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <zlib.h>

namespace voxelsmith {

namespace {

std::string cell_id(const World& w, const Coord& c) {
    const PlacedBlock* b = w.block_at(c);
    return b ? b->id : ".";
}

}  // namespace

ViewSet render_views(const World& world, const BoundingBox& bbox) {
    if (YxzLess{}(bbox.max, bbox.min) || bbox.max.x < bbox.min.x || bbox.max.y < bbox.min.y ||
        bbox.max.z < bbox.min.z) {
        throw std::invalid_argument("render_views: degenerate bounding box");
    }
    ViewSet vs;
    vs.bbox = bbox;

    auto side_view = [&](const std::string& label, bool columns_are_x, bool scan_forward) {
        View v;
        v.label = label;
        const int cols = columns_are_x ? bbox.size_x() : bbox.size_z();
        for (int y = bbox.max.y; y >= bbox.min.y; --y) {
            std::vector<std::string> row;
            row.reserve(cols);
            for (int c = 0; c < cols; ++c) {
                std::string hit = ".";
                const int depth = columns_are_x ? bbox.size_z() : bbox.size_x();
                for (int d = 0; d < depth; ++d) {
                    const int along = scan_forward
                                          ? (columns_are_x ? bbox.min.z + d : bbox.min.x + d)
                                          : (columns_are_x ? bbox.max.z - d : bbox.max.x - d);
                    const Coord cell = columns_are_x
                                           ? Coord{bbox.min.x + c, y, along}
                                           : Coord{along, y, bbox.min.z + c};
                    const std::string id = cell_id(world, cell);
                    if (id != ".") {
                        hit = id;
                        break;
                    }
                }
                row.push_back(std::move(hit));
            }
            v.grid.push_back(std::move(row));
        }
        vs.views.push_back(std::move(v));
    };

    side_view("north", true, true);
    side_view("south", true, false);
    side_view("east", false, false);
    side_view("west", false, true);

    View top;
    top.label = "top";
    for (int z = bbox.min.z; z <= bbox.max.z; ++z) {
        std::vector<std::string> row;
        for (int x = bbox.min.x; x <= bbox.max.x; ++x) {
            std::string hit = ".";
            for (int y = bbox.max.y; y >= bbox.min.y; --y) {
                const std::string id = cell_id(world, {x, y, z});
                if (id != ".") {
                    hit = id;
                    break;
                }
            }
            row.push_back(std::move(hit));
        }
        top.grid.push_back(std::move(row));
    }
    vs.views.push_back(std::move(top));

    for (int y = bbox.min.y; y <= bbox.max.y; ++y) {
        View layer;
        layer.label = "layer_" + std::to_string(y);
        for (int z = bbox.min.z; z <= bbox.max.z; ++z) {
            std::vector<std::string> row;
            for (int x = bbox.min.x; x <= bbox.max.x; ++x) {
                row.push_back(cell_id(world, {x, y, z}));
            }
            layer.grid.push_back(std::move(row));
        }
        vs.views.push_back(std::move(layer));
    }
    return vs;
}

std::string views_to_text(const ViewSet& vs) {
    std::string out;
    for (const View& v : vs.views) {
        out += "```";
        out += v.label;
        out += '\n';
        for (const auto& row : v.grid) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ' ';
                out += row[i];
            }
            out += '\n';
        }
        out += "```\n\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// PNG writer (RGBA8, zlib-deflated, filter 0 on every scanline)

namespace {

void put_u32(std::string& s, std::uint32_t v) {
    s.push_back(char((v >> 24) & 0xff));
    s.push_back(char((v >> 16) & 0xff));
    s.push_back(char((v >> 8) & 0xff));
    s.push_back(char(v & 0xff));
}

void put_chunk(std::string& s, const char type[4], const std::string& data) {
    put_u32(s, std::uint32_t(data.size()));
    std::string body(type, 4);
    body += data;
    s += body;
    put_u32(s, std::uint32_t(crc32(0, reinterpret_cast<const Bytef*>(body.data()),
                                   uInt(body.size()))));
}

void write_png(const std::string& path, int w, int h, const std::vector<std::uint8_t>& rgba) {
    std::string raw;
    raw.reserve(std::size_t(h) * (std::size_t(w) * 4 + 1));
    for (int y = 0; y < h; ++y) {
        raw.push_back('\0');  // filter type 0
        raw.append(reinterpret_cast<const char*>(&rgba[std::size_t(y) * w * 4]),
                   std::size_t(w) * 4);
    }
    uLongf zlen = compressBound(uLong(raw.size()));
    std::string z(zlen, '\0');
    if (compress2(reinterpret_cast<Bytef*>(z.data()), &zlen,
                  reinterpret_cast<const Bytef*>(raw.data()), uLong(raw.size()),
                  Z_BEST_COMPRESSION) != Z_OK) {
        throw std::runtime_error("png: deflate failed");
    }
    z.resize(zlen);

    std::string png("\x89PNG\r\n\x1a\n", 8);
    std::string ihdr;
    put_u32(ihdr, std::uint32_t(w));
    put_u32(ihdr, std::uint32_t(h));
    ihdr += '\x08';  // bit depth
    ihdr += '\x06';  // RGBA
    ihdr += '\x00';
    ihdr += '\x00';
    ihdr += '\x00';
    put_chunk(png, "IHDR", ihdr);
    put_chunk(png, "IDAT", z);
    put_chunk(png, "IEND", "");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(png.data(), std::streamsize(png.size()));
}

struct Rgb {
    std::uint8_t r, g, b;
};

Rgb id_color(const std::string& id) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : id) {
        h ^= c;
        h *= 1099511628211ull;
    }
    // keep channels away from full black/white so shading stays visible
    auto chan = [&](int shift) { return std::uint8_t(64 + ((h >> shift) & 0xff) * 3 / 4); };
    return {chan(0), chan(16), chan(32)};
}

Rgb scale(Rgb c, int pct) {
    auto s = [&](std::uint8_t v) { return std::uint8_t(int(v) * pct / 100); };
    return {s(c.r), s(c.g), s(c.b)};
}

}  // namespace

void render_isometric_png(const World& world, const BoundingBox& bbox, const std::string& path) {
    constexpr int kHalfW = 8;  // half tile width in pixels
    constexpr int kHalfH = 4;  // half tile height
    constexpr int kRise = 8;   // vertical pixels per y level

    auto iso_u = [&](const Coord& c) { return (c.x - c.z) * kHalfW; };
    auto iso_v = [&](const Coord& c) { return (c.x + c.z) * kHalfH - c.y * kRise; };

    int min_u = 0, max_u = 0, min_v = 0, max_v = 0;
    bool first = true;
    std::vector<std::pair<Coord, std::string>> cells;
    for (const auto& [c, b] : world.blocks()) {
        if (!bbox.contains(c)) continue;
        cells.emplace_back(c, b.id);
        const int u = iso_u(c);
        const int v = iso_v(c);
        if (first) {
            min_u = max_u = u;
            min_v = max_v = v;
            first = false;
        }
        min_u = std::min(min_u, u - kHalfW);
        max_u = std::max(max_u, u + kHalfW);
        min_v = std::min(min_v, v - kHalfH);
        max_v = std::max(max_v, v + kHalfH + kRise);
    }
    const int margin = 8;
    const int width = (max_u - min_u) + 2 * margin + 1;
    const int height = (max_v - min_v) + 2 * margin + 1;
    std::vector<std::uint8_t> img(std::size_t(width) * height * 4, 0);
    for (std::size_t i = 3; i < img.size(); i += 4) img[i] = 255;  // opaque background
    for (std::size_t i = 0; i + 3 < img.size(); i += 4) {
        img[i] = 24;
        img[i + 1] = 24;
        img[i + 2] = 32;
    }

    auto put = [&](int px, int py, Rgb c) {
        if (px < 0 || py < 0 || px >= width || py >= height) return;
        std::uint8_t* p = &img[(std::size_t(py) * width + px) * 4];
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
        p[3] = 255;
    };

    // painter order: back to front, bottom to top
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
        const int da = a.first.x + a.first.z;
        const int db = b.first.x + b.first.z;
        if (da != db) return da < db;
        if (a.first.y != b.first.y) return a.first.y < b.first.y;
        return YxzLess{}(a.first, b.first);
    });

    for (const auto& [c, id] : cells) {
        const Rgb base = id_color(id);
        const int cu = iso_u(c) - min_u + margin;
        const int cv = iso_v(c) - min_v + margin;
        // top face: rhombus centered at (cu, cv)
        for (int dy = -kHalfH; dy <= kHalfH; ++dy) {
            const int span = kHalfW - std::abs(dy) * kHalfW / kHalfH;
            for (int dx = -span; dx <= span; ++dx) put(cu + dx, cv + dy, scale(base, 100));
        }
        // left and right faces hang below the rhombus edges
        for (int dy = 0; dy < kRise; ++dy) {
            for (int dx = -kHalfW; dx <= 0; ++dx) {
                const int edge = kHalfH * (kHalfW + dx) / kHalfW;
                put(cu + dx, cv + edge + dy, scale(base, 70));
            }
            for (int dx = 0; dx <= kHalfW; ++dx) {
                const int edge = kHalfH * (kHalfW - dx) / kHalfW;
                put(cu + dx, cv + edge + dy, scale(base, 50));
            }
        }
    }
    write_png(path, width, height, img);
}

}  // namespace voxelsmith
