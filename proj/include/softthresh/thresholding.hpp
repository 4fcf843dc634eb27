#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "softthresh/image.hpp"

namespace softthresh {

class DegenerateHistogram : public Error {
 public:
  using Error::Error;
};

/// No pixel lies above the threshold, so the white-class mean is undefined.
class NoWhiteClass : public Error {
 public:
  using Error::Error;
};

class InvalidWhiteMean : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Probability distribution whose CDF shapes the transfer function.
enum class Distribution { Uniform, Logistic, Normal };

std::string_view to_string(Distribution dist);
std::optional<Distribution> parse_distribution(std::string_view name);

/// A soft-threshold transfer function g(v) = 255 * F(v - t).
///
/// `band` is in the native unit of the distribution: the width h of the
/// uniform distribution, the scale theta of the logistic distribution, or the
/// standard deviation sigma of the normal distribution.
class TransferSpec {
 public:
  TransferSpec(Distribution dist, int threshold, double band);

  Distribution distribution() const noexcept { return dist_; }
  int threshold() const noexcept { return threshold_; }
  double band() const noexcept { return band_; }

 private:
  Distribution dist_;
  int threshold_;
  double band_;
};

/// Calibration target for the band width: the white-class mean is mapped
/// to alpha * 255. z_alpha is the alpha-quantile of the normal CDF used by
/// the Normal transfer function and is always derived from alpha.
class AutoParams {
 public:
  static constexpr double kDefaultAlpha = 0.99;

  AutoParams() : AutoParams(kDefaultAlpha) {}
  explicit AutoParams(double alpha);

  double alpha() const noexcept { return alpha_; }
  double z_alpha() const noexcept { return z_alpha_; }

 private:
  double alpha_;
  double z_alpha_;
};

/// Greyscale lookup table; always nondecreasing.
class TransferLUT {
 public:
  explicit TransferLUT(const std::array<std::uint8_t, kMaxGrey + 1>& table);

  std::uint8_t operator[](int v) const { return table_[static_cast<std::size_t>(v)]; }
  const std::array<std::uint8_t, kMaxGrey + 1>& table() const noexcept { return table_; }

  GreyImage apply(const GreyImage& img) const;

 private:
  std::array<std::uint8_t, kMaxGrey + 1> table_;
};

/// Otsu's threshold: the t in [0, 254] maximising the between-class variance
/// of the classes v <= t and v > t. Ties go to the smallest t. Comparisons
/// are exact, so the result does not depend on floating-point rounding.
int otsu_threshold(const Histogram& hist);

/// 0 where v <= t, 255 where v > t.
GreyImage hard_threshold(const GreyImage& img, int threshold);

/// Unrounded g(v) in [0, 255]; g(t) == 127.5 for every distribution.
double transfer_value(const TransferSpec& spec, double v);

/// table[v] = round-half-away-from-zero(transfer_value(spec, v)).
TransferLUT build_lut(const TransferSpec& spec);

/// Mean grey value of the pixels above t.
double mean_white(const Histogram& hist, int threshold);

/// Band width for which g(v_w) == alpha * 255.
double band_from_alpha(Distribution dist, int threshold, double white_mean, const AutoParams& params);

/// Uniform width h and logistic scale theta with the same variance as a
/// normal distribution of standard deviation sigma.
struct EquivalentBands {
  double uniform_width;
  double logistic_scale;
};
EquivalentBands band_convert(double sigma);

/// Settings for a global soft threshold. Unset fields are determined
/// automatically: the threshold by Otsu's method, the band by band_from_alpha().
struct SoftOptions {
  Distribution dist = Distribution::Logistic;
  std::optional<int> threshold;
  std::optional<double> band;
  AutoParams params;
};

struct SoftResult {
  GreyImage image;
  int threshold = 0;
  std::optional<double> white_mean;
  /// Empty when the image fell back to hard thresholding.
  std::optional<TransferSpec> spec;
  bool hard_fallback = false;
};

/// Soft thresholding with parameter report. When no pixel exceeds the
/// threshold and no band is given, the band is undefined and the image is
/// hard thresholded instead (hard_fallback is set).
SoftResult soft_threshold_detailed(const GreyImage& img, const SoftOptions& options);

GreyImage soft_threshold(const GreyImage& img, std::optional<int> threshold = std::nullopt,
                         Distribution dist = Distribution::Logistic,
                         const AutoParams& params = AutoParams());

}  // namespace softthresh
