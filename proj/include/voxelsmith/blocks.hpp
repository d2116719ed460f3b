#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace voxelsmith {

/// Static properties of a block type.
struct BlockDef {
    std::string id;            // lowercase token, e.g. "oak_planks"
    bool solid = true;         // blocks movement and provides support
    bool orientable = false;   // accepts a facing (doors, beds, ...)
    bool power_source = false; // emits redstone power at night (inverted daylight sensor)
    bool lamp = false;         // lights up next to an active power source
    bool scaffold = false;     // temporary build material, ignored by blueprint diff
    bool furniture = false;    // interior/furnishing phase in build ordering
};

/// Immutable lookup table of known block types. `air` is a registered id but is
/// never stored in a world; absence of an entry means air.
class BlockRegistry {
public:
    void add(BlockDef def);

    const BlockDef* find(std::string_view id) const;
    bool known(std::string_view id) const { return find(id) != nullptr; }

    const std::vector<BlockDef>& all() const { return defs_; }

private:
    std::vector<BlockDef> defs_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Registry with the block vocabulary used by the benchmark tasks.
const BlockRegistry& default_registry();

inline constexpr std::string_view kAirId = "air";
inline constexpr std::string_view kScaffoldId = "dirt";

}  // namespace voxelsmith
