#include "qsn/catalog.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qsn::model {

const std::vector<CatalogEntry>& default_catalog() {
  static const std::vector<CatalogEntry> entries = {
      {{"NV- (optical)", 6.6e-4, 3.5e-6, 1e-3}, {33, 4225, 12.7e3, 7.3e1, false}},
      {{"trapped ions", 1.5e-3, 1.0e-4, 1e-5}, {11, 441, 32e3, 1.9e2, false}},
      {{"transmons", 3.0e-4, 4.0e-8, 1e-5}, {13, 625, 2.4e6, 1.4e4, false}},
      {{"quantum dots", 1.0e-6, 3.2e-8, 1e-3}, {36, 5041, 2.8e12, 1.6e10, false}},
      // Published bandwidth 1.6e12 Hz does not follow from the published
      // capacity (200 TEb) with a 10^4 TEU ship and 20-day transit; the
      // formula gives ~1.2e12 Hz. Reported as a mismatch, not matched.
      {{"NV- (dense)", 3.0e-7, 1.0e-3, 1e-3}, {29, 3249, 200e12, 1.6e12, true}},
      {{"silicon", 2.0e-7, 5.0e-8, 1e-3}, {36, 5041, 350e12, 2.0e12, false}},
  };
  return entries;
}

PlatformReference reference_for(const std::string& name) {
  for (const auto& entry : default_catalog())
    if (entry.platform.name == name) return entry.reference;
  return {};
}

static std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<PlatformSpec> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog file: " + path);
  std::vector<PlatformSpec> out;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header_seen) {
      if (t != "name,pitch_m,gate_time_s,error_rate")
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": expected header 'name,pitch_m,gate_time_s,error_rate'");
      header_seen = true;
      continue;
    }
    std::istringstream fields(t);
    std::string name, pitch_s, gate_s, err_s;
    if (!std::getline(fields, name, ',') || !std::getline(fields, pitch_s, ',') ||
        !std::getline(fields, gate_s, ',') || !std::getline(fields, err_s))
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 4 comma-separated fields");
    PlatformSpec p;
    p.name = trim(name);
    try {
      size_t used = 0;
      p.pitch = std::stod(trim(pitch_s), &used);
      p.gate_time = std::stod(trim(gate_s), &used);
      p.error_rate = std::stod(trim(err_s), &used);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed numeric field");
    }
    try {
      p.validate();
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(std::move(p));
  }
  if (!header_seen) throw std::runtime_error(path + ": empty catalog (missing header)");
  return out;
}

void save_catalog(const std::string& path, const std::vector<PlatformSpec>& platforms) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write catalog file: " + path);
  out << "name,pitch_m,gate_time_s,error_rate\n";
  char buf[160];
  for (const auto& p : platforms) {
    std::snprintf(buf, sizeof buf, "%s,%.12g,%.12g,%.12g\n", p.name.c_str(), p.pitch, p.gate_time,
                  p.error_rate);
    out << buf;
  }
}

}  // namespace qsn::model
