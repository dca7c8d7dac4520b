#include "wxsp/image.hpp"

#include <png.h>
// jpeglib.h needs FILE and size_t declared first.
#include <cstdio>
#include <jpeglib.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <fstream>
#include <iterator>
#include <string>

#include "wxsp/error.hpp"

namespace wxsp {

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be >= 1");
  }
  data_.resize(pixel_count() * 3);
  for (std::size_t i = 0; i < data_.size(); i += 3) {
    std::copy(fill.begin(), fill.end(), data_.begin() + static_cast<long>(i));
  }
}

Image::Image(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be >= 1");
  }
  if (data_.size() != pixel_count() * 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "pixel buffer holds " + std::to_string(data_.size()) +
                    " bytes, expected " + std::to_string(pixel_count() * 3));
  }
}

Rgb Image::at(int x, int y) const {
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  return {data_[i], data_[i + 1], data_[i + 2]};
}

void Image::set(int x, int y, Rgb color) {
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  data_[i] = color[0];
  data_[i + 1] = color[1];
  data_[i + 2] = color[2];
}

namespace {

enum class Format { kPng, kJpeg, kUnknown };

constexpr std::uint8_t kPngMagic[] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
constexpr std::uint8_t kJpegMagic[] = {0xff, 0xd8, 0xff};

template <std::size_t N>
bool has_prefix(const std::vector<std::uint8_t>& bytes, const std::uint8_t (&magic)[N]) {
  return bytes.size() >= N && std::equal(magic, magic + N, bytes.begin());
}

// A file cut short inside the signature itself.
template <std::size_t N>
bool is_truncated_prefix(const std::vector<std::uint8_t>& bytes,
                         const std::uint8_t (&magic)[N]) {
  return bytes.size() < N && std::equal(bytes.begin(), bytes.end(), magic);
}

Format sniff(const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path) {
  if (has_prefix(bytes, kPngMagic)) return Format::kPng;
  if (has_prefix(bytes, kJpegMagic)) return Format::kJpeg;
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const bool png_ext = ext == ".png";
  const bool jpeg_ext = ext == ".jpg" || ext == ".jpeg";
  if ((png_ext && is_truncated_prefix(bytes, kPngMagic)) ||
      (jpeg_ext && is_truncated_prefix(bytes, kJpegMagic))) {
    throw Error(ErrorCode::kCorruptData, path.string() + ": truncated signature");
  }
  return Format::kUnknown;
}

Image decode_png(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kCorruptData, name + ": " + msg);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kCorruptData, name + ": " + msg);
  }
  return Image(static_cast<int>(image.width), static_cast<int>(image.height),
               std::move(pixels));
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

[[noreturn]] void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// libjpeg only warns on premature end of data and pads the rest of the image;
// treat every warning as corruption.
void jpeg_emit_message(j_common_ptr cinfo, int msg_level) {
  if (msg_level < 0) jpeg_error_exit(cinfo);
}

// The two setjmp-guarded phases live in their own functions holding only
// trivially destructible locals, so a longjmp never skips a destructor.
bool jpeg_begin(jpeg_decompress_struct& cinfo, JpegErrorManager& err,
                const std::uint8_t* bytes, std::size_t size) {
  if (setjmp(err.jump)) return false;
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes, static_cast<unsigned long>(size));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  return true;
}

bool jpeg_read_rows(jpeg_decompress_struct& cinfo, JpegErrorManager& err,
                    std::uint8_t* base) {
  if (setjmp(err.jump)) return false;
  const std::size_t stride = static_cast<std::size_t>(cinfo.output_width) * 3;
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = base + static_cast<std::size_t>(cinfo.output_scanline) * stride;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  return true;
}

Image decode_jpeg(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  err.base.emit_message = jpeg_emit_message;

  if (!jpeg_begin(cinfo, err, bytes.data(), bytes.size())) {
    jpeg_destroy_decompress(&cinfo);
    throw Error(ErrorCode::kCorruptData, name + ": " + err.message);
  }
  const int width = static_cast<int>(cinfo.output_width);
  const int height = static_cast<int>(cinfo.output_height);
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * height * 3);
  if (!jpeg_read_rows(cinfo, err, pixels.data())) {
    jpeg_destroy_decompress(&cinfo);
    throw Error(ErrorCode::kCorruptData, name + ": " + err.message);
  }
  jpeg_destroy_decompress(&cinfo);
  return Image(width, height, std::move(pixels));
}

double srgb_to_linear(std::uint8_t value) {
  const double c = value / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

}  // namespace

Image load_image(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kFileNotFound, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  switch (sniff(bytes, path)) {
    case Format::kPng: return decode_png(bytes, path.string());
    case Format::kJpeg: return decode_jpeg(bytes, path.string());
    case Format::kUnknown: break;
  }
  throw Error(ErrorCode::kUnsupportedFormat, path.string() + ": not a PNG or JPEG file");
}

void save_image(const Image& img, const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGB;
  const int ok = png_image_write_to_file(&image, path.c_str(), 0, img.data().data(),
                                         0, nullptr);
  if (!ok) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kIoFailure, path.string() + ": " + msg);
  }
}

Lab srgb_to_lab(Rgb pixel) {
  // D65 reference white.
  constexpr double kXn = 0.95047;
  constexpr double kYn = 1.0;
  constexpr double kZn = 1.08883;
  const double r = srgb_to_linear(pixel[0]);
  const double g = srgb_to_linear(pixel[1]);
  const double b = srgb_to_linear(pixel[2]);
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
  const double fx = lab_f(x / kXn);
  const double fy = lab_f(y / kYn);
  const double fz = lab_f(z / kZn);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LabImage rgb_to_lab(const Image& img) {
  LabImage lab{img.width(), img.height(), {}};
  lab.data.reserve(img.pixel_count());
  const auto bytes = img.data();
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    lab.data.push_back(srgb_to_lab({bytes[i], bytes[i + 1], bytes[i + 2]}));
  }
  return lab;
}

}  // namespace wxsp
