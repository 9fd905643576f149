#include "baltic/radiometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "baltic/error.hpp"
#include "baltic/numeric.hpp"

namespace baltic {

namespace {

// sRGB primaries (IEC 61966-2-1), linear RGB -> XYZ.
const Mat3& rgb_to_xyz() {
  static const Mat3 m = (Mat3() << 0.4124, 0.3576, 0.1805,
                                   0.2126, 0.7152, 0.0722,
                                   0.0193, 0.1192, 0.9505).finished();
  return m;
}

const Mat3& xyz_to_rgb() {
  static const Mat3 m = rgb_to_xyz().inverse();
  return m;
}

// Reference white as the image of RGB (1,1,1), so neutral greys have a = b = 0.
const Vec3& white_xyz() {
  static const Vec3 w = rgb_to_xyz() * Vec3::Ones();
  return w;
}

constexpr double kDelta = 6.0 / 29.0;

double lab_f(double t) {
  return t > kDelta * kDelta * kDelta ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_f_inv(double f) { return f > kDelta ? f * f * f : 3.0 * kDelta * kDelta * (f - 4.0 / 29.0); }

void require_rgb(const Image8& img, const char* what) {
  if (img.channels() != 3) throw InvalidArgument(std::string(what) + ": expected 3 channels");
}

void require_same_shape(const Image8& a, const Image8& b, const char* what) {
  if (!a.same_shape(b)) {
    throw InvalidArgument(std::string(what) + ": image dimensions differ (" + std::to_string(a.width()) + "x" +
                          std::to_string(a.height()) + "x" + std::to_string(a.channels()) + " vs " +
                          std::to_string(b.width()) + "x" + std::to_string(b.height()) + "x" +
                          std::to_string(b.channels()) + ")");
  }
}

constexpr double kLumaR = 0.299, kLumaG = 0.587, kLumaB = 0.114;

std::uint8_t clamp_round(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

LabImage::LabImage(int width, int height, std::vector<LabPixel> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 0 || height < 0 ||
      pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw InvalidArgument("LabImage: pixel count does not match dimensions");
  }
}

double srgb_decode(double c) { return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4); }

double srgb_encode(double l) { return l <= 0.0031308 ? 12.92 * l : 1.055 * std::pow(l, 1.0 / 2.4) - 0.055; }

double srgb8_to_linear(std::uint8_t v) {
  static const auto table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) t[i] = srgb_decode(i / 255.0);
    return t;
  }();
  return table[v];
}

std::uint8_t linear_to_srgb8(double linear) {
  return clamp_round(255.0 * srgb_encode(std::clamp(linear, 0.0, 1.0)));
}

LabPixel linear_rgb_to_lab(const Vec3& rgb) {
  const Vec3 xyz = rgb_to_xyz() * rgb;
  const Vec3& w = white_xyz();
  const double fx = lab_f(xyz.x() / w.x()), fy = lab_f(xyz.y() / w.y()), fz = lab_f(xyz.z() / w.z());
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

Vec3 lab_to_linear_rgb(const LabPixel& lab) {
  const double fy = (lab.L + 16.0) / 116.0;
  const double fx = fy + lab.a / 500.0;
  const double fz = fy - lab.b / 200.0;
  const Vec3& w = white_xyz();
  const Vec3 xyz(w.x() * lab_f_inv(fx), w.y() * lab_f_inv(fy), w.z() * lab_f_inv(fz));
  return xyz_to_rgb() * xyz;
}

LabPixel srgb8_to_lab(const Rgb8& rgb) {
  return linear_rgb_to_lab(Vec3(srgb8_to_linear(rgb[0]), srgb8_to_linear(rgb[1]), srgb8_to_linear(rgb[2])));
}

Rgb8 lab_to_srgb8(const LabPixel& lab) {
  const Vec3 rgb = lab_to_linear_rgb(lab);
  return {linear_to_srgb8(rgb.x()), linear_to_srgb8(rgb.y()), linear_to_srgb8(rgb.z())};
}

LabImage srgb_to_lab(const Image8& img) {
  require_rgb(img, "srgb_to_lab");
  std::vector<LabPixel> out(img.pixel_count());
  const auto data = img.data();
  parallel_for(out.size(), [&](std::size_t i) {
    out[i] = srgb8_to_lab({data[3 * i], data[3 * i + 1], data[3 * i + 2]});
  });
  return LabImage(img.width(), img.height(), std::move(out));
}

Image8 lab_to_srgb(const LabImage& lab) {
  Image8 out(lab.width(), lab.height(), 3);
  auto data = out.data();
  parallel_for(lab.pixel_count(), [&](std::size_t i) {
    const Rgb8 p = lab_to_srgb8(lab.pixels()[i]);
    std::copy(p.begin(), p.end(), data.begin() + static_cast<std::ptrdiff_t>(3 * i));
  });
  return out;
}

DeltaEStats delta_e_stats(const LabImage& recon, const LabImage& gt, const Image8* mask) {
  if (recon.width() != gt.width() || recon.height() != gt.height()) {
    throw InvalidArgument("delta_e_stats: image dimensions differ");
  }
  if (mask && (mask->width() != gt.width() || mask->height() != gt.height() || mask->channels() != 1)) {
    throw InvalidArgument("delta_e_stats: mask must be a single-channel image of the same size");
  }
  CompensatedSum sum, sum_l, sum_a, sum_b;
  std::vector<double> de;
  de.reserve(gt.pixel_count());
  DeltaEStats s;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < gt.pixel_count(); ++i) {
    if (mask && mask->data()[i] == 0) continue;
    const LabPixel& r = recon.pixels()[i];
    const LabPixel& g = gt.pixels()[i];
    const double dl = r.L - g.L, da = r.a - g.a, db = r.b - g.b;
    const double e = std::sqrt(dl * dl + da * da + db * db);
    de.push_back(e);
    sum.add(e);
    sum_l.add(dl);
    sum_a.add(da);
    sum_b.add(db);
    s.min = std::min(s.min, e);
    s.max = std::max(s.max, e);
  }
  if (de.empty()) throw InvalidArgument("delta_e_stats: no pixels selected");
  const double n = static_cast<double>(de.size());
  s.pixels = de.size();
  s.mean = sum.value() / n;
  CompensatedSum var;
  for (double e : de) var.add((e - s.mean) * (e - s.mean));
  s.std = std::sqrt(var.value() / n);
  s.mean_L_diff = sum_l.value() / n;
  s.mean_a_diff = sum_a.value() / n;
  s.mean_b_diff = sum_b.value() / n;
  return s;
}

DeltaEStats delta_e_stats(const Image8& recon, const Image8& gt, const Image8* mask) {
  require_same_shape(recon, gt, "delta_e_stats");
  return delta_e_stats(srgb_to_lab(recon), srgb_to_lab(gt), mask);
}

double psnr(const Image8& a, const Image8& b) {
  require_same_shape(a, b, "psnr");
  if (a.empty()) throw InvalidArgument("psnr: empty image");
  CompensatedSum sq;
  const auto da = a.data(), db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = static_cast<double>(da[i]) - static_cast<double>(db[i]);
    sq.add(d * d);
  }
  const double mse = sq.value() / static_cast<double>(da.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::vector<double> luma(const Image8& img) {
  std::vector<double> y(img.pixel_count());
  const auto d = img.data();
  if (img.channels() == 1) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = d[i];
  } else {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = kLumaR * d[3 * i] + kLumaG * d[3 * i + 1] + kLumaB * d[3 * i + 2];
  }
  return y;
}

std::array<double, kSsimWindow> ssim_gaussian_taps() {
  std::array<double, kSsimWindow> taps{};
  double total = 0.0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double x = i - kSsimWindow / 2;
    taps[i] = std::exp(-x * x / (2.0 * kSsimSigma * kSsimSigma));
    total += taps[i];
  }
  for (double& t : taps) t /= total;
  return taps;
}

namespace {

// Valid-region separable Gaussian filter: output is (w-10) x (h-10).
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h,
                                 const std::array<double, kSsimWindow>& taps) {
  const int ow = w - kSsimWindow + 1, oh = h - kSsimWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) acc += taps[k] * src[static_cast<std::size_t>(y) * w + x + k];
      rows[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) acc += taps[k] * rows[static_cast<std::size_t>(y + k) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

double ssim(const Image8& a, const Image8& b) {
  require_same_shape(a, b, "ssim");
  const int w = a.width(), h = a.height();
  if (w < kSsimWindow || h < kSsimWindow) {
    throw InvalidArgument("ssim: image smaller than the 11x11 window");
  }
  const auto taps = ssim_gaussian_taps();
  const std::vector<double> x = luma(a), y = luma(b);
  std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mx = filter_valid(x, w, h, taps), my = filter_valid(y, w, h, taps);
  const auto mxx = filter_valid(xx, w, h, taps), myy = filter_valid(yy, w, h, taps),
             mxy = filter_valid(xy, w, h, taps);

  constexpr double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  constexpr double c2 = (0.03 * 255.0) * (0.03 * 255.0);
  CompensatedSum total;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = mxx[i] - mx[i] * mx[i];
    const double vy = myy[i] - my[i] * my[i];
    const double cov = mxy[i] - mx[i] * my[i];
    total.add(((2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2)) /
              ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2)));
  }
  return total.value() / static_cast<double>(mx.size());
}

Image8 crop(const Image8& img, const Rect& r) {
  if (r.width <= 0 || r.height <= 0 || r.x < 0 || r.y < 0 || r.x > img.width() - r.width ||
      r.y > img.height() - r.height) {
    throw InvalidArgument("crop: rectangle " + std::to_string(r.width) + "x" + std::to_string(r.height) + "+" +
                          std::to_string(r.x) + "+" + std::to_string(r.y) + " is outside the " +
                          std::to_string(img.width()) + "x" + std::to_string(img.height()) + " image");
  }
  Image8 out(r.width, r.height, img.channels());
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      for (int c = 0; c < img.channels(); ++c) out.at(x, y, c) = img.at(r.x + x, r.y + y, c);
    }
  }
  return out;
}

namespace {

using Lut = std::array<std::uint8_t, 256>;

// For each coordinate: the lower tile, the upper tile and the weight of the upper one.
struct AxisInterp {
  std::vector<int> lo, hi;
  std::vector<double> w;
};

AxisInterp axis_interp(int size, int tiles) {
  std::vector<double> centers(tiles);
  for (int t = 0; t < tiles; ++t) {
    const long begin = static_cast<long>(t) * size / tiles, end = static_cast<long>(t + 1) * size / tiles;
    centers[t] = 0.5 * static_cast<double>(begin + end - 1);
  }
  AxisInterp a;
  a.lo.resize(size);
  a.hi.resize(size);
  a.w.resize(size);
  int t = 0;
  for (int p = 0; p < size; ++p) {
    while (t + 1 < tiles && centers[t + 1] <= p) ++t;
    if (p <= centers[0]) {
      a.lo[p] = a.hi[p] = 0;
      a.w[p] = 0.0;
    } else if (t + 1 >= tiles) {
      a.lo[p] = a.hi[p] = tiles - 1;
      a.w[p] = 0.0;
    } else {
      a.lo[p] = t;
      a.hi[p] = t + 1;
      a.w[p] = (p - centers[t]) / (centers[t + 1] - centers[t]);
    }
  }
  return a;
}

Lut tile_lut(const std::vector<std::uint8_t>& plane, int width, int x0, int x1, int y0, int y1, double clip_limit) {
  std::array<double, 256> hist{};
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) hist[plane[static_cast<std::size_t>(y) * width + x]] += 1.0;
  }
  const double n = static_cast<double>(x1 - x0) * static_cast<double>(y1 - y0);
  if (std::isfinite(clip_limit)) {
    const double clip = std::max(1.0, clip_limit * n / 256.0);
    double excess = 0.0;
    for (double& h : hist) {
      if (h > clip) {
        excess += h - clip;
        h = clip;
      }
    }
    const double share = excess / 256.0;
    for (double& h : hist) h += share;
  }
  Lut lut{};
  double cdf = 0.0;
  for (int b = 0; b < 256; ++b) {
    cdf += hist[b];
    lut[b] = clamp_round(255.0 * cdf / n);
  }
  return lut;
}

std::vector<std::uint8_t> clahe_plane(const std::vector<std::uint8_t>& plane, int w, int h, const ClaheParams& p) {
  std::vector<Lut> luts(static_cast<std::size_t>(p.tiles_x) * p.tiles_y);
  parallel_for(luts.size(), [&](std::size_t i) {
    const int tx = static_cast<int>(i % p.tiles_x), ty = static_cast<int>(i / p.tiles_x);
    luts[i] = tile_lut(plane, w, static_cast<int>(static_cast<long>(tx) * w / p.tiles_x),
                       static_cast<int>(static_cast<long>(tx + 1) * w / p.tiles_x),
                       static_cast<int>(static_cast<long>(ty) * h / p.tiles_y),
                       static_cast<int>(static_cast<long>(ty + 1) * h / p.tiles_y), p.clip_limit);
  });
  const AxisInterp ax = axis_interp(w, p.tiles_x), ay = axis_interp(h, p.tiles_y);
  std::vector<std::uint8_t> out(plane.size());
  parallel_for(static_cast<std::size_t>(h), [&](std::size_t yi) {
    const int y = static_cast<int>(yi);
    for (int x = 0; x < w; ++x) {
      const std::uint8_t v = plane[yi * w + x];
      auto lut = [&](int tx, int ty) { return static_cast<double>(luts[static_cast<std::size_t>(ty) * p.tiles_x + tx][v]); };
      const double top = (1.0 - ax.w[x]) * lut(ax.lo[x], ay.lo[y]) + ax.w[x] * lut(ax.hi[x], ay.lo[y]);
      const double bottom = (1.0 - ax.w[x]) * lut(ax.lo[x], ay.hi[y]) + ax.w[x] * lut(ax.hi[x], ay.hi[y]);
      out[yi * w + x] = clamp_round((1.0 - ay.w[y]) * top + ay.w[y] * bottom);
    }
  });
  return out;
}

}  // namespace

Image8 clahe(const Image8& img, const ClaheParams& p) {
  if (img.empty()) throw InvalidArgument("clahe: empty image");
  if (!(p.clip_limit >= 1.0)) throw InvalidArgument("clahe: clip limit must be at least 1");
  if (p.tiles_x < 1 || p.tiles_y < 1) throw InvalidArgument("clahe: tile grid must be at least 1x1");
  if (p.tiles_x > img.width() || p.tiles_y > img.height()) {
    throw InvalidArgument("clahe: tile grid " + std::to_string(p.tiles_x) + "x" + std::to_string(p.tiles_y) +
                          " exceeds the " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                          " image");
  }
  const int w = img.width(), h = img.height();
  if (img.channels() == 1) {
    const auto d = img.data();
    return Image8(w, h, 1, clahe_plane(std::vector<std::uint8_t>(d.begin(), d.end()), w, h, p));
  }

  const std::vector<double> y = luma(img);
  std::vector<std::uint8_t> y8(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) y8[i] = clamp_round(y[i]);
  const std::vector<std::uint8_t> eq = clahe_plane(y8, w, h, p);

  // Full-range YCbCr keeps Cb/Cr fixed, so every channel shifts by the luma change.
  Image8 out(w, h, 3);
  const auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double shift = static_cast<double>(eq[i]) - y[i];
    for (int c = 0; c < 3; ++c) dst[3 * i + c] = clamp_round(src[3 * i + c] + shift);
  }
  return out;
}

std::array<double, 3> grayworld_gains(const Image8& img) {
  require_rgb(img, "white_balance_grayworld");
  if (img.empty()) throw InvalidArgument("white_balance_grayworld: empty image");
  std::array<CompensatedSum, 3> sums;
  const auto d = img.data();
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    for (int c = 0; c < 3; ++c) sums[c].add(srgb8_to_linear(d[3 * i + c]));
  }
  std::array<double, 3> mean{};
  for (int c = 0; c < 3; ++c) {
    mean[c] = sums[c].value() / static_cast<double>(img.pixel_count());
    if (!(mean[c] > 0.0)) throw InvalidArgument("white_balance_grayworld: zero-mean channel");
  }
  std::array<double, 3> gains{};
  for (int c = 0; c < 3; ++c) gains[c] = std::clamp(mean[1] / mean[c], 0.25, 4.0);
  return gains;
}

Image8 white_balance_grayworld(const Image8& img) {
  const auto gains = grayworld_gains(img);
  Image8 out(img.width(), img.height(), 3);
  const auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = linear_to_srgb8(gains[i % 3] * srgb8_to_linear(src[i]));
  return out;
}

Image8 exposure_normalize(const Image8& img, double exposure, double reference_exposure) {
  if (!(exposure > 0.0) || !(reference_exposure > 0.0) || !std::isfinite(exposure) ||
      !std::isfinite(reference_exposure)) {
    throw InvalidArgument("exposure_normalize: exposures must be positive");
  }
  const double factor = reference_exposure / exposure;
  Image8 out(img.width(), img.height(), img.channels());
  const auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = linear_to_srgb8(factor * srgb8_to_linear(src[i]));
  return out;
}

}  // namespace baltic
