#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace wxsp {

// mAP grid: one row per extractor/model, one column per superpixel setting.
// Rows keep insertion order; every row holds the same settings.
class ResultsTable {
 public:
  explicit ResultsTable(std::vector<int> settings);

  const std::vector<int>& settings() const { return settings_; }
  const std::vector<std::string>& models() const { return models_; }

  // Errors: kInvalidArgument for an unknown setting or a value outside [0, 1].
  void set(const std::string& model, int setting, double map_value);
  double get(const std::string& model, int setting) const;
  bool has(const std::string& model, int setting) const;

  // "model,setting,map" with one line per filled cell, rows then settings.
  std::string to_csv() const;
  // Fixed-width table: models down, "<K> SP" across, 4 decimal places.
  std::string to_text() const;

  void write_csv(const std::filesystem::path& path) const;
  void write_text(const std::filesystem::path& path) const;

 private:
  std::vector<int> settings_;
  std::vector<std::string> models_;
  std::map<std::string, std::map<int, double>> cells_;
};

// Formats a double in shortest round-trip form.
std::string format_double(double v);

// Overwrites `path` with `text`. Errors: kIoFailure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace wxsp
