#pragma once

#include <string>

namespace voxelsmith::prompts {

// Templates carry literal {slot} markers; render_* substitute them.
extern const char* const kLayoutSynopsisTemplate;  // {text}
extern const char* const kBlueprintSystemPrompt;   // no slots
extern const char* const kBlueprintUserTemplate;   // {retrievedPlans}, {structure}
extern const char* const kSelfReflectionTemplate;  // {structure}, {Image}, {blueprint}
extern const char* const kEvaluationTemplate;      // {INSTRUCTION}, {IMAGE}

std::string render_layout_synopsis(const std::string& text);
std::string render_blueprint_user(const std::string& retrieved_plans, const std::string& structure);
std::string render_self_reflection(const std::string& structure, const std::string& image_text,
                                   const std::string& blueprint);
std::string render_evaluation(const std::string& instruction, const std::string& image_text);

}  // namespace voxelsmith::prompts
