#pragma once

#include <map>
#include <optional>
#include <string>

#include "gi/simulator.hpp"

namespace gi {

/// Sectioned key=value configuration ('#' and ';' start comments).
class Config {
 public:
  static Config parse(std::istream& in);
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  long get_long_or(const std::string& section, const std::string& key,
                   long fallback) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Builds experiment parameters from a config: [source] plus either raw
/// [statistics] or physical [geometry] (statistics wins when both appear).
ExperimentParams params_from_config(const Config& cfg);

/// Mask from [mask] (rows/cols/in_cells, leading cells transmitting), or a
/// single-row R-in / R-out default when the section is absent.
MaskSpec mask_from_config(const Config& cfg, const ExperimentParams& params);

std::optional<std::uint64_t> seed_from_config(const Config& cfg);

}  // namespace gi
