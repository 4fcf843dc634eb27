#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "softthresh/filters.hpp"
#include "softthresh/thresholding.hpp"

namespace softthresh {

/// Per-pixel threshold t(x, y) in [0, 255].
class ThresholdMap {
 public:
  ThresholdMap(int width, int height, std::uint8_t threshold);
  ThresholdMap(int width, int height, std::vector<std::uint8_t> thresholds);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int operator()(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                 static_cast<std::size_t>(x)];
  }
  std::span<const std::uint8_t> values() const noexcept { return data_; }

  bool matches(const GreyImage& img) const noexcept {
    return width_ == img.width() && height_ == img.height();
  }

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

/// 255 + f(x,y) - max of the k x k neighbourhood, clamped to [0, 255].
/// Background (pixels equal to their local maximum) becomes white. k must be
/// large enough that every window contains background.
GreyImage shading_subtraction(const GreyImage& img, WindowSpec window);

/// Global soft thresholding of the shading-subtracted image.
SoftResult soft_shading_subtraction_detailed(const GreyImage& img, WindowSpec window,
                                             const SoftOptions& options);
GreyImage soft_shading_subtraction(const GreyImage& img, WindowSpec window,
                                   Distribution dist = Distribution::Logistic,
                                   const AutoParams& params = AutoParams());

/// Soft thresholding with a local threshold map. The white mean, and from it
/// the band, is computed per pixel over the same k x k window (clamped to the
/// image). Pixels whose window has nothing above t(x,y) are hard thresholded.
GreyImage local_soft_threshold(const GreyImage& img, const ThresholdMap& thresholds,
                               WindowSpec window, Distribution dist = Distribution::Logistic,
                               const AutoParams& params = AutoParams());

/// Mean grey value of all pixels with img(x,y) > t(x,y); gives a single
/// global white mean for a locally thresholded image.
double white_class_vw(const GreyImage& img, const ThresholdMap& thresholds);

}  // namespace softthresh
