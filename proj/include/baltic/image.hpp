#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace baltic {

/// 8-bit row-major image with 1 (gray) or 3 (sRGB) interleaved channels.
class Image8 {
 public:
  Image8() = default;
  Image8(int width, int height, int channels, std::uint8_t fill = 0);
  Image8(int width, int height, int channels, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_); }
  bool empty() const { return data_.empty(); }

  std::uint8_t& at(int x, int y, int c = 0) { return data_[offset(x, y, c)]; }
  std::uint8_t at(int x, int y, int c = 0) const { return data_[offset(x, y, c)]; }

  std::span<std::uint8_t> data() { return data_; }
  std::span<const std::uint8_t> data() const { return data_; }

  bool same_shape(const Image8& o) const {
    return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
  }

  friend bool operator==(const Image8&, const Image8&) = default;

 private:
  std::size_t offset(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }

  int width_ = 0, height_ = 0, channels_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace baltic
