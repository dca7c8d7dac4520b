#include "wxsp/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wxsp/error.hpp"

namespace wxsp {

void FeatureSet::add(FeatureVector v) {
  if (v.values.size() != dimension) {
    throw Error(ErrorCode::kDimensionInconsistency,
                v.image_id + " has " + std::to_string(v.values.size()) +
                    " values, expected " + std::to_string(dimension));
  }
  const std::string id = v.image_id;
  if (!entries.emplace(id, std::move(v)).second) {
    throw Error(ErrorCode::kDuplicateId, id);
  }
}

const FeatureVector& FeatureSet::at(const std::string& image_id) const {
  const auto it = entries.find(image_id);
  if (it == entries.end()) {
    throw Error(ErrorCode::kMissingFile,
                "no features for image '" + image_id + "' in " + extractor_name);
  }
  return it->second;
}

FeatureVector extract_color_histogram(const Image& img, int bins_per_channel) {
  if (bins_per_channel < 2) {
    throw Error(ErrorCode::kInvalidArgument, "bins_per_channel must be >= 2");
  }
  const std::size_t bins = static_cast<std::size_t>(bins_per_channel);
  std::vector<std::size_t> counts(bins * bins * bins, 0);
  const auto data = img.data();
  for (std::size_t i = 0; i < data.size(); i += 3) {
    const std::size_t r = data[i] * bins / 256;
    const std::size_t g = data[i + 1] * bins / 256;
    const std::size_t b = data[i + 2] * bins / 256;
    ++counts[(r * bins + g) * bins + b];
  }
  FeatureVector out;
  out.values.resize(counts.size());
  const double total = static_cast<double>(img.pixel_count());
  for (std::size_t i = 0; i < counts.size(); ++i) out.values[i] = counts[i] / total;
  return out;
}

FeatureVector extract_gradient_histogram(const Image& img, int orientation_bins, int grid) {
  if (orientation_bins < 1 || grid < 1) {
    throw Error(ErrorCode::kInvalidArgument, "orientation_bins and grid must be >= 1");
  }
  const int w = img.width();
  const int h = img.height();
  if (w < 8 || h < 8) {
    throw Error(ErrorCode::kImageTooSmall,
                std::to_string(w) + "x" + std::to_string(h) + " (needs at least 8x8)");
  }
  if (w < grid || h < grid) {
    throw Error(ErrorCode::kImageTooSmall, "fewer pixels than grid cells");
  }

  std::vector<double> luma(img.pixel_count());
  const auto data = img.data();
  for (std::size_t p = 0; p < luma.size(); ++p) {
    luma[p] = 0.299 * data[3 * p] + 0.587 * data[3 * p + 1] + 0.114 * data[3 * p + 2];
  }
  auto lum = [&](int x, int y) {
    x = std::clamp(x, 0, w - 1);
    y = std::clamp(y, 0, h - 1);
    return luma[static_cast<std::size_t>(y) * w + x];
  };

  const std::size_t nbins = static_cast<std::size_t>(orientation_bins);
  const std::size_t cells = static_cast<std::size_t>(grid) * grid;
  FeatureVector out;
  out.values.assign(cells * nbins, 0.0);
  for (int y = 0; y < h; ++y) {
    const int cy = static_cast<int>(static_cast<long>(y) * grid / h);
    for (int x = 0; x < w; ++x) {
      const double gx = lum(x + 1, y) - lum(x - 1, y);
      const double gy = lum(x, y + 1) - lum(x, y - 1);
      const double magnitude = std::hypot(gx, gy);
      if (magnitude == 0.0) continue;
      double theta = std::atan2(gy, gx);
      if (theta < 0.0) theta += std::numbers::pi;
      if (theta >= std::numbers::pi) theta -= std::numbers::pi;
      const std::size_t bin = std::min(
          nbins - 1, static_cast<std::size_t>(theta / std::numbers::pi * orientation_bins));
      const int cx = static_cast<int>(static_cast<long>(x) * grid / w);
      const std::size_t cell = static_cast<std::size_t>(cy) * grid + cx;
      out.values[cell * nbins + bin] += magnitude;
    }
  }
  for (std::size_t c = 0; c < cells; ++c) {
    double mass = 0.0;
    for (std::size_t b = 0; b < nbins; ++b) mass += out.values[c * nbins + b];
    if (mass == 0.0) continue;
    for (std::size_t b = 0; b < nbins; ++b) out.values[c * nbins + b] /= mass;
  }
  return out;
}

FeatureVector l2_normalize(const FeatureVector& v) {
  double sq = 0.0;
  for (const double x : v.values) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kNonFiniteInput, "feature vector " + v.image_id);
    }
    sq += x * x;
  }
  FeatureVector out = v;
  if (sq == 0.0) {
    out.normalized = false;
    return out;
  }
  const double norm = std::sqrt(sq);
  for (double& x : out.values) x /= norm;
  out.normalized = true;
  return out;
}

bool is_builtin_extractor(const std::string& name) {
  return name == "color_histogram" || name == "gradient_histogram";
}

FeatureVector extract_builtin(const std::string& name, const Image& img) {
  if (name == "color_histogram") return extract_color_histogram(img);
  if (name == "gradient_histogram") return extract_gradient_histogram(img);
  throw Error(ErrorCode::kInvalidArgument, "unknown extractor '" + name + "'");
}

}  // namespace wxsp
