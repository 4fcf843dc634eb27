#pragma once

#include "softthresh/image.hpp"

namespace softthresh {

class InvalidWindow : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Side length of a square window centred on a pixel. Always odd and >= 1.
class WindowSpec {
 public:
  explicit WindowSpec(int k);

  int size() const noexcept { return k_; }
  int radius() const noexcept { return k_ / 2; }

 private:
  int k_;
};

// All filters clamp the window to the image bounds; no values outside the
// image take part.

/// Reference k x k maximum filter, O(k^2) per pixel.
GreyImage max_filter_naive(const GreyImage& img, WindowSpec window);
GreyImage min_filter_naive(const GreyImage& img, WindowSpec window);

/// Separable k x k maximum filter with a van Herk / Gil-Werman running max
/// in each direction. Costs about three comparisons per pixel and pass,
/// whatever k is.
GreyImage max_filter_fast(const GreyImage& img, WindowSpec window);
GreyImage min_filter_fast(const GreyImage& img, WindowSpec window);

}  // namespace softthresh
