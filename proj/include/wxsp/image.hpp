#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace wxsp {

using Rgb = std::array<std::uint8_t, 3>;

// Row-major interleaved RGB raster, 8 bits per channel.
class Image {
 public:
  Image() = default;
  // Fills with `fill`. Throws kInvalidArgument on a zero dimension.
  Image(int width, int height, Rgb fill = {0, 0, 0});
  // Takes ownership of `data`, which must hold width*height*3 bytes.
  Image(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb color);

  std::span<const std::uint8_t> data() const { return data_; }
  std::span<std::uint8_t> mutable_data() { return data_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

struct Lab {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
};

// CIELAB counterpart of an Image, same dimensions, row-major.
struct LabImage {
  int width = 0;
  int height = 0;
  std::vector<Lab> data;

  const Lab& at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
};

// Decodes a PNG or baseline JPEG file; the format is sniffed from the file's
// leading bytes. Errors: kFileNotFound, kUnsupportedFormat, kCorruptData.
Image load_image(const std::filesystem::path& path);

// Writes an 8-bit RGB PNG. Errors: kIoFailure.
void save_image(const Image& img, const std::filesystem::path& path);

// sRGB (D65, piecewise gamma) -> CIE XYZ -> CIELAB, per pixel.
Lab srgb_to_lab(Rgb pixel);
LabImage rgb_to_lab(const Image& img);

}  // namespace wxsp
