#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>

namespace voxelsmith {

/// Block-grid coordinate. y is vertical.
struct Coord {
    int x = 0;
    int y = 0;
    int z = 0;

    friend bool operator==(const Coord&, const Coord&) = default;

    Coord offset(int dx, int dy, int dz) const { return {x + dx, y + dy, z + dz}; }
    Coord up() const { return {x, y + 1, z}; }
    Coord down() const { return {x, y - 1, z}; }

    std::string to_string() const {
        return "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
    }

    friend Coord operator+(const Coord& a, const Coord& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Coord operator-(const Coord& a, const Coord& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
};

inline int chebyshev(const Coord& a, const Coord& b) {
    int dx = std::abs(a.x - b.x);
    int dy = std::abs(a.y - b.y);
    int dz = std::abs(a.z - b.z);
    return std::max(dx, std::max(dy, dz));
}

inline int manhattan(const Coord& a, const Coord& b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}

/// Ordering used everywhere a stable block order is needed: ascending (y, x, z).
struct YxzLess {
    bool operator()(const Coord& a, const Coord& b) const {
        if (a.y != b.y) return a.y < b.y;
        if (a.x != b.x) return a.x < b.x;
        return a.z < b.z;
    }
};

struct CoordHash {
    std::size_t operator()(const Coord& c) const {
        // FNV-1a over the three components, stable across platforms
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t v : {std::int64_t(c.x), std::int64_t(c.y), std::int64_t(c.z)}) {
            for (int i = 0; i < 8; ++i) {
                h ^= std::uint64_t((v >> (i * 8)) & 0xff);
                h *= 1099511628211ull;
            }
        }
        return std::size_t(h);
    }
};

/// The six face-neighbor offsets, in (y,x,z) order.
inline const std::array<Coord, 6>& face_neighbors() {
    static const std::array<Coord, 6> n = {{
        {0, -1, 0}, {-1, 0, 0}, {0, 0, -1}, {0, 0, 1}, {1, 0, 0}, {0, 1, 0},
    }};
    return n;
}

enum class Facing { north, south, east, west };

inline const char* to_string(Facing f) {
    switch (f) {
        case Facing::north: return "north";
        case Facing::south: return "south";
        case Facing::east: return "east";
        case Facing::west: return "west";
    }
    return "north";
}

inline std::optional<Facing> facing_from_string(const std::string& s) {
    if (s == "north") return Facing::north;
    if (s == "south") return Facing::south;
    if (s == "east") return Facing::east;
    if (s == "west") return Facing::west;
    return std::nullopt;
}

/// Inclusive axis-aligned box.
struct BoundingBox {
    Coord min;
    Coord max;

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

    bool contains(const Coord& c) const {
        return c.x >= min.x && c.x <= max.x && c.y >= min.y && c.y <= max.y && c.z >= min.z &&
               c.z <= max.z;
    }

    int size_x() const { return max.x - min.x + 1; }
    int size_y() const { return max.y - min.y + 1; }
    int size_z() const { return max.z - min.z + 1; }

    /// Smallest box containing both.
    BoundingBox merged(const Coord& c) const {
        BoundingBox b = *this;
        b.min.x = std::min(b.min.x, c.x);
        b.min.y = std::min(b.min.y, c.y);
        b.min.z = std::min(b.min.z, c.z);
        b.max.x = std::max(b.max.x, c.x);
        b.max.y = std::max(b.max.y, c.y);
        b.max.z = std::max(b.max.z, c.z);
        return b;
    }

    BoundingBox expanded(int dx, int dy, int dz) const {
        return {{min.x - dx, min.y - dy, min.z - dz}, {max.x + dx, max.y + dy, max.z + dz}};
    }
};

}  // namespace voxelsmith
