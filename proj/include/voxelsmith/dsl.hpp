#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "voxelsmith/blueprint.hpp"
#include "voxelsmith/geometry.hpp"

namespace voxelsmith {
namespace dsl {

// Statement grammar:
//   place ID (x,y,z) [facing DIR]
//   fill ID (x,y,z) (x,y,z)
//   shell ID (x,y,z) (x,y,z)
//   line ID (x,y,z) (x,y,z)
//   pyramid ID (x,y,z) SIZE [step N]
// Coordinates are offsets from the build origin; '#' starts a comment.
// Later statements override earlier cells; 'air' erases a cell, which is how a
// program carves doorways out of filled walls.

struct Place {
    std::string block;
    Coord at;
    std::optional<Facing> facing;
};
struct Fill {
    std::string block;
    Coord from, to;
};
struct Shell {
    std::string block;
    Coord from, to;
};
struct Line {
    std::string block;
    Coord from, to;
};
struct Pyramid {
    std::string block;
    Coord base_corner;
    int base_size = 1;
    int step = 1;
};

using Statement = std::variant<Place, Fill, Shell, Line, Pyramid>;

struct Program {
    std::vector<Statement> statements;
};

/// Parse or compile failure; line/column are 1-based (0 when not positional).
class Error : public std::runtime_error {
public:
    explicit Error(std::string message) : std::runtime_error(std::move(message)) {}
    Error(std::string message, int line, int column)
        : std::runtime_error(message + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_ = 0;
    int column_ = 0;
};

/// Parses DSL text; block ids are resolved against the registry here, so an
/// unknown id fails with its source position. Throws dsl::Error.
Program parse(const std::string& text, const BlockRegistry& registry = default_registry());

/// Expands the program into a placement list. Deterministic: identical
/// programs compile to identical blueprints. Throws dsl::Error for
/// non-aligned lines; reversed cuboid corners are normalized, never an error.
Blueprint compile(const Program& prog, const std::string& name = "");

}  // namespace dsl
}  // namespace voxelsmith
