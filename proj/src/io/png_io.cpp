#include <png.h>

#include <cstring>
#include <string>

#include "baltic/error.hpp"
#include "baltic/io.hpp"

namespace baltic::io {

namespace {

constexpr std::size_t kMaxImageBytes = std::size_t{1} << 30;

// Releases libpng state on every exit path.
struct PngImage {
  png_image image;
  PngImage() {
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;

  std::string message() const { return image.message; }
};

}  // namespace

Image8 read_png_bytes(std::span<const std::uint8_t> bytes) {
  PngImage png;
  if (png_image_begin_read_from_memory(&png.image, bytes.data(), bytes.size()) == 0) {
    throw ParseError("PNG: " + png.message());
  }
  const auto format = png.image.format;
  if ((format & PNG_FORMAT_FLAG_COLORMAP) != 0 || (format & PNG_FORMAT_FLAG_LINEAR) != 0 ||
      (format & PNG_FORMAT_FLAG_ALPHA) != 0) {
    throw ParseError("PNG: unsupported bit depth/format (expected 8-bit gray or RGB without alpha)");
  }
  const bool color = (format & PNG_FORMAT_FLAG_COLOR) != 0;
  png.image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

  const int channels = color ? 3 : 1;
  const auto width = png.image.width;
  const auto height = png.image.height;
  const std::size_t size = static_cast<std::size_t>(width) * height * static_cast<std::size_t>(channels);
  if (width == 0 || height == 0 || size > kMaxImageBytes) throw ParseError("PNG: unsupported image dimensions");

  std::vector<std::uint8_t> data(size);
  if (png_image_finish_read(&png.image, nullptr, data.data(), 0, nullptr) == 0) {
    throw ParseError("PNG: " + png.message());
  }
  return Image8(static_cast<int>(width), static_cast<int>(height), channels, std::move(data));
}

Image8 read_png(const std::filesystem::path& path) {
  const auto bytes = read_binary_file(path);
  try {
    return read_png_bytes(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_png(const Image8& img) {
  if (img.empty()) throw InvalidArgument("cannot encode an empty image");
  PngImage png;
  png.image.width = static_cast<png_uint_32>(img.width());
  png.image.height = static_cast<png_uint_32>(img.height());
  png.image.format = img.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

  png_alloc_size_t size = 0;
  if (png_image_write_to_memory(&png.image, nullptr, &size, 0, img.data().data(), 0, nullptr) == 0) {
    throw Error("PNG encode: " + png.message());
  }
  std::vector<std::uint8_t> out(size);
  if (png_image_write_to_memory(&png.image, out.data(), &size, 0, img.data().data(), 0, nullptr) == 0) {
    throw Error("PNG encode: " + png.message());
  }
  out.resize(size);
  return out;
}

void write_png(const Image8& img, const std::filesystem::path& path) { write_binary_file(path, encode_png(img)); }

}  // namespace baltic::io
