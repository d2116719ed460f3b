#include "voxelsmith/blocks.hpp"

#include <stdexcept>

namespace voxelsmith {

void BlockRegistry::add(BlockDef def) {
    if (index_.count(def.id)) {
        throw std::invalid_argument("duplicate block id in registry: " + def.id);
    }
    index_.emplace(def.id, defs_.size());
    defs_.push_back(std::move(def));
}

const BlockDef* BlockRegistry::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return nullptr;
    return &defs_[it->second];
}

namespace {

BlockRegistry build_default() {
    BlockRegistry r;
    auto solid = [&](std::string id) { r.add({std::move(id), true, false, false, false, false, false}); };

    // air is a known id so parsers can resolve it; it is never stored
    r.add({"air", false, false, false, false, false, false});

    // structural
    solid("stone");
    solid("cobblestone");
    solid("stone_bricks");
    solid("bricks");
    solid("oak_planks");
    solid("spruce_planks");
    solid("oak_log");
    solid("spruce_log");
    solid("glass");
    solid("sandstone");
    solid("snow_block");
    solid("ice");
    solid("packed_ice");
    solid("blue_ice");
    r.add({"glass_pane", true, false, false, false, false, false});
    r.add({"snow", false, false, false, false, false, false});

    // scaffold material
    r.add({"dirt", true, false, false, false, true, false});

    // redstone
    r.add({"redstone_lamp", true, false, false, true, false, false});
    r.add({"daylight_detector_inverted", true, false, true, false, false, false});

    // furnishing
    r.add({"oak_door", false, true, false, false, false, true});
    r.add({"bed", true, true, false, false, false, true});
    r.add({"crafting_table", true, false, false, false, false, true});
    r.add({"furnace", true, true, false, false, false, true});
    r.add({"chest", true, true, false, false, false, true});
    r.add({"torch", false, false, false, false, false, true});
    r.add({"campfire", false, false, false, false, false, false});
    r.add({"poppy", false, false, false, false, false, true});
    r.add({"dandelion", false, false, false, false, false, true});

    return r;
}

}  // namespace

const BlockRegistry& default_registry() {
    static const BlockRegistry r = build_default();
    return r;
}

}  // namespace voxelsmith
