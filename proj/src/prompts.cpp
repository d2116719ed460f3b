#include "voxelsmith/prompts.hpp"

namespace voxelsmith::prompts {

const char* const kLayoutSynopsisTemplate =
    R"(Please translate the structure in the provided text with the following Minecraft details:

1. Components and Positioning: List all individual elements (e.g., blocks, materials, windows, doors, etc.) used in the structure and describe the position of each component relative to the entire structure.
2. Dimensional Layout: Provide the overall dimensions of the structure (length, width, height).
3. Description: Summarize the purpose and design of the structure (e.g., a house, tower, etc.), and outline the most logical construction sequence, taking into account how building certain parts first could obstruct access to other areas.

Please ensure the description is clear, precise, and professional, making it easy to recreate the structure programmatically.

Here is the provided text description: {text}
)";

// The code-format sections describe the layout language the agent must emit;
// everything around them keeps the original phrasing.
const char* const kBlueprintSystemPrompt =
    R"(You are an expert in both Minecraft and layout scripting. Your task is to generate layout code that creates layouts for Minecraft structures as a list of placements.

The structure layout should be represented in the following way:

- Each placement contains:
  1. The block type (e.g., 'oak_planks', 'glass_pane', 'oak_door').
  2. The exact 3D position of the block, represented by an (x, y, z) offset from the starting position.

The layout should follow this format:

place block_type (x,y,z)
place block_type (x,y,z) facing north|south|east|west
fill block_type (x1,y1,z1) (x2,y2,z2)
shell block_type (x1,y1,z1) (x2,y2,z2)
line block_type (x1,y1,z1) (x2,y2,z2)
pyramid block_type (x,y,z) base_size
pyramid block_type (x,y,z) base_size step 2

Important Notes:
- You do not need to manually define every block's coordinates. Instead, provide efficient and reusable statements that generate the layout dynamically, based on the starting position.
- A statement written later overrides an earlier statement at a shared coordinate.
- Do not append 'air' to the layout; writing air at a coordinate only carves away an earlier placement there (e.g., a doorway out of a filled wall).
- A line beginning with # is a comment.

# All coordinates are offsets from the agent's starting position.
)";

const char* const kBlueprintUserTemplate =
    R"(Here is a possibly relevant plan from past experiences that were effective under their contexts (could be None). If the task described isn't relevant, don't reference it. If it is highly relevant, then reference it:
{retrievedPlans}

Please provide the code for this structure: {structure}.

1. Do not use anything outside the layout language
2. Do not miss any components
Ensure the generated code is properly indented and formatted as a complete layout script.

Only include the code and output the code into a compact JSON format on a single line without whitespace. The key is 'code' and the value is the actual code.
)";

const char* const kSelfReflectionTemplate =
    R"(You are an expert in both Minecraft structure generation and layout scripting. Below is the current imperfect blueprint code used to generate a Minecraft structure, along with a description of the intended structure and an image of what was generated by the current code.

Structure Description:
{structure}

Image:
{Image}

Current Blueprint Code:
{blueprint}

Task: Generate the following features:
1. Reflection: Analyze why the current blueprint code does not successfully generate the structure as described. Compare the structure description with both the image and the code itself. Issues may arise either from discrepancies in the visual appearance of the generated structure compared to the description, or from errors in the code's syntax that prevent it from running. Keep this concise.
2. Code: Provide an improved, optimized version of the blueprint code that accurately aligns with the structure description and resolves any issues in the current code.

Ensure the generated code is properly indented and formatted as a complete layout script. Include the code and reasoning into a compact JSON format on a single line without whitespace where we have two keys "reflection" and "code" and the value is the corresponding output.
)";

const char* const kEvaluationTemplate =
    R"(Your task is to evaluate the building across four key aspects:

1. Correctness: How accurately does the building adhere to the provided instructions, accounting for the inclusion of all specified components, block placements, and overall structure shape?
2. Complexity: How intricate and detailed is the structure?
3. Creativity: How unique and imaginative is the design?
4. Functionality: How well does the building serve its intended purpose or function?

Please provide a score (out of 10) for each of these aspects. Additionally, provide an overall total score based on the individual aspect ratings.

Instruction: {INSTRUCTION}
Image of the building: {IMAGE}
)";

namespace {

std::string replace_slot(std::string text, const std::string& slot, const std::string& value) {
    const auto pos = text.find(slot);
    if (pos != std::string::npos) text.replace(pos, slot.size(), value);
    return text;
}

}  // namespace

std::string render_layout_synopsis(const std::string& text) {
    return replace_slot(kLayoutSynopsisTemplate, "{text}", text);
}

std::string render_blueprint_user(const std::string& retrieved_plans,
                                  const std::string& structure) {
    std::string s = replace_slot(kBlueprintUserTemplate, "{retrievedPlans}", retrieved_plans);
    return replace_slot(std::move(s), "{structure}", structure);
}

std::string render_self_reflection(const std::string& structure, const std::string& image_text,
                                   const std::string& blueprint) {
    std::string s = replace_slot(kSelfReflectionTemplate, "{structure}", structure);
    s = replace_slot(std::move(s), "{Image}", image_text);
    return replace_slot(std::move(s), "{blueprint}", blueprint);
}

std::string render_evaluation(const std::string& instruction, const std::string& image_text) {
    std::string s = replace_slot(kEvaluationTemplate, "{INSTRUCTION}", instruction);
    return replace_slot(std::move(s), "{IMAGE}", image_text);
}

}  // namespace voxelsmith::prompts
