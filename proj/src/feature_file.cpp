#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wxsp/error.hpp"
#include "wxsp/features.hpp"

namespace wxsp {
namespace {

constexpr std::string_view kMagic = "WXFEAT";
constexpr int kVersion = 1;

void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

bool parse_double(std::string_view text, double& value) {
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

}  // namespace

void write_feature_file(const FeatureSet& set, const std::filesystem::path& path) {
  if (set.extractor_name.empty() ||
      set.extractor_name.find_first_of(" \t\r\n") != std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "extractor name must be non-empty without whitespace");
  }
  std::string text;
  text += std::string(kMagic) + " " + std::to_string(kVersion) + " " + set.extractor_name +
          " " + std::to_string(set.dimension) + "\n";
  for (const auto& [id, vec] : set.entries) {
    if (id.empty() || id.find_first_of(",\r\n") != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "image id '" + id + "' is not writable");
    }
    if (vec.values.size() != set.dimension) {
      throw Error(ErrorCode::kDimensionInconsistency, id);
    }
    text += id;
    for (const double v : vec.values) {
      if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteInput, id);
      text += ',';
      append_double(text, v);
    }
    text += '\n';
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path.string());
}

FeatureSet read_feature_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kMalformedHeader, path.string() + ": empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::istringstream header(line);
  std::string magic, name, extra;
  int version = 0;
  long long dimension = -1;
  if (!(header >> magic >> version >> name >> dimension) || (header >> extra) ||
      magic != kMagic || version != kVersion || dimension < 0) {
    throw Error(ErrorCode::kMalformedHeader, path.string() + ": '" + line + "'");
  }

  FeatureSet set;
  set.extractor_name = name;
  set.dimension = static_cast<std::size_t>(dimension);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);

    std::string_view rest(line);
    const auto comma = rest.find(',');
    FeatureVector vec;
    vec.image_id = std::string(rest.substr(0, comma));
    if (vec.image_id.empty()) throw Error(ErrorCode::kMalformedRow, where + ": empty id");
    rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
    if (comma != std::string_view::npos) {
      while (true) {
        const auto next = rest.find(',');
        double value = 0.0;
        if (!parse_double(rest.substr(0, next), value) || !std::isfinite(value)) {
          throw Error(ErrorCode::kMalformedRow,
                      where + ": bad value '" + std::string(rest.substr(0, next)) + "'");
        }
        vec.values.push_back(value);
        if (next == std::string_view::npos) break;
        rest = rest.substr(next + 1);
      }
    }
    if (vec.values.size() != set.dimension) {
      throw Error(ErrorCode::kDimensionInconsistency,
                  where + ": " + std::to_string(vec.values.size()) + " values, header says " +
                      std::to_string(set.dimension));
    }
    if (set.entries.contains(vec.image_id)) {
      throw Error(ErrorCode::kDuplicateId, where + ": " + vec.image_id);
    }
    set.entries.emplace(vec.image_id, std::move(vec));
  }
  return set;
}

}  // namespace wxsp
