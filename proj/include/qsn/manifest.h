#ifndef QSN_MANIFEST_H_
#define QSN_MANIFEST_H_

#include <string>
#include <vector>

#include <json.hpp>

namespace qsn {

inline constexpr const char* kToolVersion = "0.1.0";

/// Reproducibility record written next to every command's outputs: the
/// resolved configuration, seed, tool version and produced files.
/// Re-running the recorded command reproduces the outputs byte for byte.
struct RunManifest {
  std::string command;
  nlohmann::ordered_json config;
  uint64_t seed = 0;
  std::string version = kToolVersion;
  std::vector<std::string> outputs;

  nlohmann::ordered_json to_json() const;
  static RunManifest from_json(const nlohmann::ordered_json& j);

  void save(const std::string& path) const;
  static RunManifest load(const std::string& path);
};

/// Locale-independent text for a double (shortest round-trip form).
std::string format_double(double value);

/// Write with a trailing newline, creating parent directories.
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace qsn

#endif  // QSN_MANIFEST_H_
