#include "wxsp/results.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>

#include "wxsp/error.hpp"

namespace wxsp {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path.string());
}

ResultsTable::ResultsTable(std::vector<int> settings) : settings_(std::move(settings)) {
  if (settings_.empty()) throw Error(ErrorCode::kInvalidArgument, "no settings");
}

void ResultsTable::set(const std::string& model, int setting, double map_value) {
  if (std::find(settings_.begin(), settings_.end(), setting) == settings_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "setting " + std::to_string(setting) +
                                                 " is not a table column");
  }
  if (!(map_value >= 0.0 && map_value <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mAP outside [0, 1]");
  }
  if (!cells_.contains(model)) models_.push_back(model);
  cells_[model][setting] = map_value;
}

bool ResultsTable::has(const std::string& model, int setting) const {
  const auto row = cells_.find(model);
  return row != cells_.end() && row->second.contains(setting);
}

double ResultsTable::get(const std::string& model, int setting) const {
  if (!has(model, setting)) {
    throw Error(ErrorCode::kInvalidArgument,
                "no cell (" + model + ", " + std::to_string(setting) + ")");
  }
  return cells_.at(model).at(setting);
}

std::string ResultsTable::to_csv() const {
  std::string out = "model,setting,map\n";
  for (const auto& model : models_) {
    for (const int setting : settings_) {
      if (!has(model, setting)) continue;
      out += model + "," + std::to_string(setting) + "," + format_double(get(model, setting)) +
             "\n";
    }
  }
  return out;
}

std::string ResultsTable::to_text() const {
  std::size_t name_width = std::string("Model").size();
  for (const auto& m : models_) name_width = std::max(name_width, m.size());

  std::vector<std::string> headers;
  for (const int s : settings_) headers.push_back(std::to_string(s) + " SP");
  std::size_t col_width = 6;  // "0.0000"
  for (const auto& h : headers) col_width = std::max(col_width, h.size());

  auto pad = [](std::string s, std::size_t width) {
    s.resize(std::max(width, s.size()), ' ');
    return s;
  };
  auto end_line = [](std::string& text) {
    text.erase(text.find_last_not_of(' ') + 1);
    text += "\n";
  };
  std::string out = pad("Model", name_width);
  for (const auto& h : headers) out += " | " + pad(h, col_width);
  end_line(out);
  out += std::string(name_width, '-');
  for (std::size_t i = 0; i < headers.size(); ++i) out += "-+-" + std::string(col_width, '-');
  out += "\n";
  for (const auto& model : models_) {
    out += pad(model, name_width);
    for (const int setting : settings_) {
      std::string cell = "-";
      if (has(model, setting)) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", get(model, setting));
        cell = buf;
      }
      out += " | " + pad(cell, col_width);
    }
    end_line(out);
  }
  return out;
}

void ResultsTable::write_csv(const std::filesystem::path& path) const {
  write_text_file(path, to_csv());
}

void ResultsTable::write_text(const std::filesystem::path& path) const {
  write_text_file(path, to_text());
}

}  // namespace wxsp
