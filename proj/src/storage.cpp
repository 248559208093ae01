#include "oertopics/storage.hpp"

#include <fstream>
#include <system_error>

#include "oertopics/errors.hpp"

namespace oertopics {

using nlohmann::json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MissingFile, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::IoError, "read failed for " + path.string());
  return bytes;
}

void atomic_write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::error_code ec;
  const auto parent = path.parent_path();
  if (!parent.empty()) {
    std::filesystem::create_directories(parent, ec);
    if (ec) fail(ErrorCode::IoError, "cannot create " + parent.string() + ": " + ec.message());
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) fail(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::IoError, "cannot rename " + tmp.string() + ": " + ec.message());
}

json load_artifact(const std::filesystem::path& path, std::string_view expected_type) {
  const std::string bytes = read_text_file(path);
  json body;
  try {
    body = json::parse(bytes);
  } catch (const json::exception& e) {
    fail(ErrorCode::MalformedRecord, path.string() + ": " + e.what());
  }
  if (!body.is_object() || !body.contains("format_version") || !body.contains("type")) {
    fail(ErrorCode::MalformedRecord, path.string() + ": missing format_version/type tags");
  }
  const int version = body.at("format_version").get<int>();
  if (version > kFormatVersion) {
    fail(ErrorCode::FormatVersionMismatch,
         path.string() + ": format_version " + std::to_string(version) +
             " is newer than supported " + std::to_string(kFormatVersion));
  }
  const std::string type = body.at("type").get<std::string>();
  if (type != expected_type) {
    fail(ErrorCode::MalformedRecord, path.string() + ": artifact type \"" + type +
                                         "\" where \"" + std::string(expected_type) +
                                         "\" was expected");
  }
  return body;
}

void save_artifact(const std::filesystem::path& path, std::string_view type, json body) {
  body["format_version"] = kFormatVersion;
  body["type"] = std::string(type);
  atomic_write_file(path, body.dump(2) + "\n");
}

}  // namespace oertopics
