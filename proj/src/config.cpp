#include "gi/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gi {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse(std::istream& in) {
  Config cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": empty key");
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config: " + path);
  return parse(f);
}

Config Config::parse_string(const std::string& text) {
  std::istringstream ss(text);
  return parse(ss);
}

bool Config::has_section(const std::string& section) const {
  return sections_.count(section) > 0;
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::string Config::get(const std::string& section,
                        const std::string& key) const {
  const auto it = sections_.find(section);
  if (it != sections_.end()) {
    const auto kit = it->second.find(key);
    if (kit != it->second.end()) return kit->second;
  }
  throw std::runtime_error("config: missing [" + section + "] " + key);
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double Config::get_double(const std::string& section,
                          const std::string& key) const {
  const std::string v = get(section, key);
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::runtime_error("config: [" + section + "] " + key +
                             " is not a number: " + v);
  }
}

double Config::get_double_or(const std::string& section,
                             const std::string& key, double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_long_or(const std::string& section, const std::string& key,
                         long fallback) const {
  if (!has(section, key)) return fallback;
  const double d = get_double(section, key);
  return static_cast<long>(d);
}

ExperimentParams params_from_config(const Config& cfg) {
  const std::string kind = cfg.get_or("source", "kind", "twin");
  SourceKind source;
  if (kind == "twin" || kind == "twin-beam" || kind == "twinbeam")
    source = SourceKind::TwinBeam;
  else if (kind == "thermal")
    source = SourceKind::Thermal;
  else
    throw std::runtime_error("config: unknown source kind: " + kind);

  const double mu = cfg.get_double("source", "mu");
  const long frames = cfg.get_long_or("source", "frames", 2);
  const double pump_var =
      cfg.get_double_or("source", "pump_mu_variance", 0.0);

  if (cfg.has_section("statistics")) {
    ExperimentParams p;
    p.source = source;
    p.mu = mu;
    p.modes_per_pixel = cfg.get_long_or("statistics", "modes", 1);
    p.eta1 = cfg.get_double_or("statistics", "eta1", 1.0);
    p.eta2 = cfg.get_double_or("statistics", "eta2", 1.0);
    p.resolution_cells = cfg.get_long_or("statistics", "cells", 1);
    p.frames = frames;
    p.pump_mu_variance = pump_var;
    p.validate();
    return p;
  }
  if (cfg.has_section("geometry")) {
    DetectionGeometry g;
    g.pixel_area = cfg.get_double("geometry", "pixel_area");
    g.coherence_area = cfg.get_double("geometry", "coherence_area");
    g.detection_time = cfg.get_double("geometry", "detection_time");
    g.coherence_time = cfg.get_double("geometry", "coherence_time");
    g.object_area = cfg.get_double("geometry", "object_area");
    g.base_efficiency_1 = cfg.get_double_or("geometry", "base_efficiency_1", 1);
    g.base_efficiency_2 = cfg.get_double_or("geometry", "base_efficiency_2", 1);
    return derive_params(g, source, mu, frames, pump_var);
  }
  throw std::runtime_error(
      "config: needs a [statistics] or [geometry] section");
}

MaskSpec mask_from_config(const Config& cfg, const ExperimentParams& params) {
  if (!cfg.has_section("mask")) {
    const int r = static_cast<int>(params.resolution_cells);
    return MaskSpec::blocks(r, std::max(r, 2));
  }
  const long in_cells =
      cfg.get_long_or("mask", "in_cells", params.resolution_cells);
  const long rows = cfg.get_long_or("mask", "rows", 1);
  const long cols = cfg.get_long_or("mask", "cols", 0);
  MaskSpec m;
  if (cols > 0) {
    m.rows = static_cast<int>(rows);
    m.cols = static_cast<int>(cols);
    m.transmission.assign(static_cast<std::size_t>(rows * cols), 0);
    for (long i = 0; i < std::min(in_cells, rows * cols); ++i)
      m.transmission[i] = 1;
  } else {
    m = MaskSpec::blocks(static_cast<int>(in_cells),
                         std::max(static_cast<int>(in_cells), 2));
  }
  m.validate();
  return m;
}

std::optional<std::uint64_t> seed_from_config(const Config& cfg) {
  if (!cfg.has("source", "seed")) return std::nullopt;
  return static_cast<std::uint64_t>(
      std::stoull(cfg.get("source", "seed")));
}

}  // namespace gi
