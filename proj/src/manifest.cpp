#include "qsn/manifest.h"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace qsn {

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["version"] = version;
  j["seed"] = seed;
  j["config"] = config;
  j["outputs"] = outputs;
  return j;
}

RunManifest RunManifest::from_json(const nlohmann::ordered_json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.seed = j.at("seed").get<uint64_t>();
  m.config = j.at("config");
  if (j.contains("outputs")) m.outputs = j.at("outputs").get<std::vector<std::string>>();
  return m;
}

void RunManifest::save(const std::string& path) const { write_text_file(path, to_json().dump(2)); }

RunManifest RunManifest::load(const std::string& path) {
  return from_json(nlohmann::ordered_json::parse(read_text_file(path)));
}

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

void write_text_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!contents.empty() && contents.back() != '\n') out << '\n';
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace qsn
