#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace pillow::testing {

inline std::string test_path(const std::string& rel) { return std::string(PILLOW_TEST_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Compares against tests/golden/<name>; PILLOW_UPDATE_GOLDEN=1 rewrites it.
inline bool matches_golden(const std::string& name, const std::string& actual, std::string* expected = nullptr) {
  const std::string path = test_path("golden/" + name);
  const char* update = std::getenv("PILLOW_UPDATE_GOLDEN");
  if (update != nullptr && std::string(update) == "1") {
    std::ofstream(path, std::ios::binary) << actual;
  }
  const std::string want = slurp(path);
  if (expected != nullptr) *expected = want;
  return !want.empty() && want == actual;
}

// Fresh directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("pillow_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace pillow::testing
