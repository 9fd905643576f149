#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "baltic/geometry.hpp"
#include "baltic/image.hpp"

namespace baltic {

struct LabPixel {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;
};

class LabImage {
 public:
  LabImage() = default;
  LabImage(int width, int height, std::vector<LabPixel> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return pixels_.size(); }
  const LabPixel& at(int x, int y) const { return pixels_[index(x, y)]; }
  LabPixel& at(int x, int y) { return pixels_[index(x, y)]; }
  const std::vector<LabPixel>& pixels() const { return pixels_; }

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }
  int width_ = 0, height_ = 0;
  std::vector<LabPixel> pixels_;
};

// sRGB transfer curve on [0,1].
double srgb_decode(double encoded);
double srgb_encode(double linear);
/// Linear value of an 8-bit sRGB code (table lookup).
double srgb8_to_linear(std::uint8_t v);
/// Rounded, clamped 8-bit code of a linear value.
std::uint8_t linear_to_srgb8(double linear);

/// Linear sRGB (D65) to CIE Lab with the D65 reference white.
LabPixel linear_rgb_to_lab(const Vec3& rgb);
Vec3 lab_to_linear_rgb(const LabPixel& lab);
LabPixel srgb8_to_lab(const Rgb8& rgb);
Rgb8 lab_to_srgb8(const LabPixel& lab);

/// Throws InvalidArgument "expected 3 channels" for non-RGB input.
LabImage srgb_to_lab(const Image8& img);
Image8 lab_to_srgb(const LabImage& lab);

struct DeltaEStats {
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mean_L_diff = 0.0;
  double mean_a_diff = 0.0;
  double mean_b_diff = 0.0;
  std::size_t pixels = 0;
};

/// CIE76 colour difference over the pixels where `mask` is non-zero (all pixels
/// when null). Channel differences are reconstruction minus ground truth.
DeltaEStats delta_e_stats(const LabImage& reconstruction, const LabImage& ground_truth,
                          const Image8* mask = nullptr);
DeltaEStats delta_e_stats(const Image8& reconstruction, const Image8& ground_truth, const Image8* mask = nullptr);

/// Peak signal-to-noise ratio in dB over all channels; +infinity for identical images.
double psnr(const Image8& a, const Image8& b);

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;

/// Mean SSIM over all valid 11x11 Gaussian windows, computed on BT.601 luma.
double ssim(const Image8& a, const Image8& b);
/// BT.601 luma of a gray or RGB image, unrounded, row-major.
std::vector<double> luma(const Image8& img);
/// Normalized 1-D Gaussian taps used by ssim().
std::array<double, kSsimWindow> ssim_gaussian_taps();

struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

Image8 crop(const Image8& img, const Rect& rect);

struct ClaheParams {
  /// Multiple of the mean bin count at which histograms are clipped; infinity disables clipping.
  double clip_limit = 2.0;
  int tiles_x = 8;
  int tiles_y = 8;
};

/// Contrast-limited adaptive histogram equalization. RGB input is equalized on
/// the BT.601 luma channel with chroma held fixed.
Image8 clahe(const Image8& img, const ClaheParams& params = {});

/// Gray-world gains (R, G, B) in linear RGB, clamped to [0.25, 4].
std::array<double, 3> grayworld_gains(const Image8& img);
Image8 white_balance_grayworld(const Image8& img);

/// Rescales linear intensities by reference_exposure / exposure, clipping at 1.
Image8 exposure_normalize(const Image8& img, double exposure, double reference_exposure);

}  // namespace baltic
