#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace testutil {

namespace fs = std::filesystem;

/// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    const auto base = fs::temp_directory_path();
    for (;;) {
      path_ = base / ("oertopics-test-" + std::to_string(rd()));
      if (fs::create_directory(path_)) break;
    }
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs a shell command, capturing stdout/stderr through scratch files.
inline CommandResult run(const std::string& command, const fs::path& scratch) {
  const fs::path out_path = scratch / "cmd.out";
  const fs::path err_path = scratch / "cmd.err";
  const std::string full =
      command + " >" + out_path.string() + " 2>" + err_path.string();
  const int status = std::system(full.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

#ifdef OERTOPICS_CLI_PATH
inline std::string cli() { return OERTOPICS_CLI_PATH; }
#endif
#ifdef OERTOPICS_DATA_DIR
inline std::string data_dir() { return OERTOPICS_DATA_DIR; }
#endif

}  // namespace testutil
