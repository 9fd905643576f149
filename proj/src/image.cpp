#include "baltic/image.hpp"

#include <string>

#include "baltic/error.hpp"

namespace baltic {

namespace {

void check_shape(int width, int height, int channels) {
  if (width <= 0 || height <= 0) throw InvalidArgument("image dimensions must be positive");
  if (channels != 1 && channels != 3) {
    throw InvalidArgument("image must have 1 or 3 channels, got " + std::to_string(channels));
  }
}

}  // namespace

Image8::Image8(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  check_shape(width, height, channels);
  data_.assign(pixel_count() * static_cast<std::size_t>(channels), fill);
}

Image8::Image8(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_shape(width, height, channels);
  if (data_.size() != pixel_count() * static_cast<std::size_t>(channels)) {
    throw InvalidArgument("image data length " + std::to_string(data_.size()) + " does not match " +
                          std::to_string(width) + "x" + std::to_string(height) + "x" + std::to_string(channels));
  }
}

}  // namespace baltic
