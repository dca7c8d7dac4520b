#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wxsp/rng.hpp"

namespace wxsp::synthetic {

Rgb dominant_color(Category category) {
  switch (category) {
    case Category::kCloudy: return {128, 128, 136};
    case Category::kFoggy: return {200, 196, 170};
    case Category::kRainy: return {30, 50, 110};
    case Category::kSnowy: return {248, 248, 252};
    case Category::kSunny: return {80, 170, 240};
  }
  return {0, 0, 0};
}

Image make_image(Category category, int width, int height, std::uint64_t seed) {
  Rng rng(seed);
  const Rgb base = dominant_color(category);
  Image img(width, height);
  auto jitter = [&](std::uint8_t v) {
    const int d = static_cast<int>(uniform_below(rng, 21)) - 10;
    return static_cast<std::uint8_t>(std::clamp(static_cast<int>(v) + d, 0, 255));
  };
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      img.set(x, y, {jitter(base[0]), jitter(base[1]), jitter(base[2])});
    }
  }
  // Up to three rectangles of arbitrary color, each at most a quarter of each
  // side, so the dominant color keeps the clear majority.
  const int blobs = static_cast<int>(uniform_below(rng, 4));
  for (int i = 0; i < blobs; ++i) {
    const Rgb color = {static_cast<std::uint8_t>(uniform_below(rng, 256)),
                       static_cast<std::uint8_t>(uniform_below(rng, 256)),
                       static_cast<std::uint8_t>(uniform_below(rng, 256))};
    const int bw = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(std::max(1, width / 4))));
    const int bh = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(std::max(1, height / 4))));
    const int x0 = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(width - bw + 1)));
    const int y0 = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(height - bh + 1)));
    for (int y = y0; y < y0 + bh; ++y) {
      for (int x = x0; x < x0 + bw; ++x) img.set(x, y, color);
    }
  }
  return img;
}

std::filesystem::path write_dataset(const std::filesystem::path& dir, int per_class,
                                    int width, int height, std::uint64_t seed) {
  const auto image_dir = dir / "images";
  std::filesystem::create_directories(image_dir);
  std::vector<ImageRecord> records;
  for (const Category c : kAllCategories) {
    const std::string name(category_name(c));
    for (int i = 0; i < per_class; ++i) {
      ImageRecord rec;
      rec.image_id = name + "_" + std::to_string(i);
      rec.path = image_dir / (rec.image_id + ".png");
      rec.category = c;
      rec.author = "synthetic";
      rec.license = "CC0-1.0";
      rec.source_url = "";
      save_image(make_image(c, width, height,
                            derive_seed(seed, "synthetic/" + rec.image_id)),
                 rec.path);
      records.push_back(std::move(rec));
    }
  }
  const auto manifest = dir / "manifest.csv";
  write_manifest(records, manifest);
  return manifest;
}

Image noise_image(int width, int height, std::uint64_t seed) {
  Rng rng(seed);
  Image img(width, height);
  for (auto& byte : img.mutable_data()) byte = static_cast<std::uint8_t>(rng() >> 56);
  return img;
}

Blobs gaussian_blobs(int per_class, std::uint64_t seed) {
  Rng rng(seed);
  auto unit = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
  auto normal_pair = [&] {
    const double r = std::sqrt(-2.0 * std::log(unit()));
    const double phi = 2.0 * std::numbers::pi * unit();
    return std::pair{r * std::cos(phi), r * std::sin(phi)};
  };
  Blobs blobs;
  for (int i = 0; i < per_class; ++i) {
    const auto [a, b] = normal_pair();
    blobs.positives.push_back({"p" + std::to_string(i), {2.0 + 0.5 * a, 2.0 + 0.5 * b}, false});
    const auto [c, d] = normal_pair();
    blobs.negatives.push_back(
        {"n" + std::to_string(i), {-2.0 + 0.5 * c, -2.0 + 0.5 * d}, false});
  }
  return blobs;
}

double best_separation_gap(const Blobs& blobs, int steps) {
  double best = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < steps; ++s) {
    const double angle = 2.0 * std::numbers::pi * s / steps;
    const double ux = std::cos(angle);
    const double uy = std::sin(angle);
    double min_pos = std::numeric_limits<double>::infinity();
    double max_neg = -std::numeric_limits<double>::infinity();
    for (const auto& p : blobs.positives) {
      min_pos = std::min(min_pos, ux * p.values[0] + uy * p.values[1]);
    }
    for (const auto& n : blobs.negatives) {
      max_neg = std::max(max_neg, ux * n.values[0] + uy * n.values[1]);
    }
    best = std::max(best, min_pos - max_neg);
  }
  return best;
}

}  // namespace wxsp::synthetic
