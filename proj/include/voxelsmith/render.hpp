#pragma once

#include <string>
#include <vector>

#include "voxelsmith/world.hpp"

namespace voxelsmith {

/// One labelled projection; cells hold block ids, `.` for air.
struct View {
    std::string label;  // north | south | east | west | top | layer_<y>
    std::vector<std::vector<std::string>> grid;
};

struct ViewSet {
    BoundingBox bbox;
    std::vector<View> views;
};

/// Orthographic projections of the boxed world region: four side elevations
/// (nearest stored block along the viewing ray wins), a top-down plan, and one
/// slice per y level. The ground plane is implicit and never drawn. Axis
/// conventions, fixed for byte-stable output:
///   north/south: rows y descending, columns x ascending; rays scan z
///   east/west:   rows y descending, columns z ascending; rays scan x
///   top:         rows z ascending, columns x ascending; rays scan y downward
///   layer_<y>:   rows z ascending, columns x ascending
ViewSet render_views(const World& world, const BoundingBox& bbox);

/// Canonical serialization: one fenced block per view, rows of space-joined
/// cell tokens. Suitable both for prompts and for golden-file comparison.
std::string views_to_text(const ViewSet& vs);

/// Painter-order isometric render for humans; never parsed by the pipeline.
void render_isometric_png(const World& world, const BoundingBox& bbox, const std::string& path);

}  // namespace voxelsmith
