#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace oertopics {

inline constexpr int kFormatVersion = 1;

std::string read_text_file(const std::filesystem::path& path);

/// Writes via a temporary file + rename so partially written artifacts never
/// appear under the final name.
void atomic_write_file(const std::filesystem::path& path, std::string_view bytes);

/// Parses a persisted artifact and checks its "type" tag and format_version.
/// Artifacts written by a newer version fail loudly instead of being
/// misread.
nlohmann::json load_artifact(const std::filesystem::path& path, std::string_view expected_type);

/// Stamps format_version/type and writes the artifact.
void save_artifact(const std::filesystem::path& path, std::string_view type, nlohmann::json body);

}  // namespace oertopics
