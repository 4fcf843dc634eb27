#include "softthresh/local.hpp"

#include <algorithm>
#include <cmath>

namespace softthresh {

ThresholdMap::ThresholdMap(int width, int height, std::uint8_t threshold)
    : ThresholdMap(width, height,
                   std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                                 static_cast<std::size_t>(std::max(height, 0)),
                                             threshold)) {}

ThresholdMap::ThresholdMap(int width, int height, std::vector<std::uint8_t> thresholds)
    : width_(width), height_(height), data_(std::move(thresholds)) {
  if (width < 1 || height < 1) {
    throw ParameterError("threshold map dimensions must be at least 1x1");
  }
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw DimensionMismatch("threshold map data length does not match its dimensions");
  }
}

GreyImage shading_subtraction(const GreyImage& img, WindowSpec window) {
  return subtract_clamped(img, max_filter_fast(img, window), kMaxGrey);
}

SoftResult soft_shading_subtraction_detailed(const GreyImage& img, WindowSpec window,
                                             const SoftOptions& options) {
  return soft_threshold_detailed(shading_subtraction(img, window), options);
}

GreyImage soft_shading_subtraction(const GreyImage& img, WindowSpec window, Distribution dist,
                                   const AutoParams& params) {
  SoftOptions options;
  options.dist = dist;
  options.params = params;
  return soft_shading_subtraction_detailed(img, window, options).image;
}

GreyImage local_soft_threshold(const GreyImage& img, const ThresholdMap& thresholds,
                               WindowSpec window, Distribution dist, const AutoParams& params) {
  if (!thresholds.matches(img)) {
    throw DimensionMismatch("threshold map and image differ in size");
  }
  const int r = window.radius();
  GreyImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    const int y0 = std::max(0, y - r);
    const int y1 = std::min(img.height() - 1, y + r);
    for (int x = 0; x < img.width(); ++x) {
      const int t = thresholds(x, y);
      const int x0 = std::max(0, x - r);
      const int x1 = std::min(img.width() - 1, x + r);
      std::uint64_t count = 0;
      std::uint64_t sum = 0;
      for (int yy = y0; yy <= y1; ++yy) {
        for (const int v : img.row(yy).subspan(static_cast<std::size_t>(x0),
                                               static_cast<std::size_t>(x1 - x0 + 1))) {
          if (v > t) {
            ++count;
            sum += static_cast<std::uint64_t>(v);
          }
        }
      }
      const int v = img(x, y);
      if (count == 0) {
        out(x, y) = static_cast<std::uint8_t>(v <= t ? 0 : kMaxGrey);
        continue;
      }
      const double white = static_cast<double>(sum) / static_cast<double>(count);
      const TransferSpec spec(dist, t, band_from_alpha(dist, t, white, params));
      const double g = std::round(transfer_value(spec, v));
      out(x, y) = static_cast<std::uint8_t>(std::clamp(g, 0.0, 255.0));
    }
  }
  return out;
}

double white_class_vw(const GreyImage& img, const ThresholdMap& thresholds) {
  if (!thresholds.matches(img)) {
    throw DimensionMismatch("threshold map and image differ in size");
  }
  std::uint64_t count = 0;
  std::uint64_t sum = 0;
  const auto pixels = img.pixels();
  const auto ts = thresholds.values();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (pixels[i] > ts[i]) {
      ++count;
      sum += pixels[i];
    }
  }
  if (count == 0) {
    throw NoWhiteClass("no pixel lies above its local threshold");
  }
  return static_cast<double>(sum) / static_cast<double>(count);
}

}  // namespace softthresh
