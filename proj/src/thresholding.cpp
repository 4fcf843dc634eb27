#include "softthresh/thresholding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "softthresh/special.hpp"

namespace softthresh {

namespace {

void check_threshold(int threshold) {
  if (threshold < 0 || threshold > kMaxGrey) {
    throw ParameterError("threshold must be in [0, 255], got " + std::to_string(threshold));
  }
}

}  // namespace

std::string_view to_string(Distribution dist) {
  switch (dist) {
    case Distribution::Uniform:
      return "uniform";
    case Distribution::Logistic:
      return "logistic";
    case Distribution::Normal:
      return "normal";
  }
  return "unknown";
}

std::optional<Distribution> parse_distribution(std::string_view name) {
  if (name == "uniform") return Distribution::Uniform;
  if (name == "logistic") return Distribution::Logistic;
  if (name == "normal") return Distribution::Normal;
  return std::nullopt;
}

TransferSpec::TransferSpec(Distribution dist, int threshold, double band)
    : dist_(dist), threshold_(threshold), band_(band) {
  check_threshold(threshold);
  if (!(band > 0.0) || !std::isfinite(band)) {
    throw ParameterError("band width must be positive and finite");
  }
}

AutoParams::AutoParams(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.5 && alpha < 1.0)) {
    throw ParameterError("alpha must lie in (0.5, 1), got " + std::to_string(alpha));
  }
  z_alpha_ = normal_quantile(alpha);
}

TransferLUT::TransferLUT(const std::array<std::uint8_t, kMaxGrey + 1>& table) : table_(table) {
  if (!std::is_sorted(table_.begin(), table_.end())) {
    throw ParameterError("transfer table must be nondecreasing");
  }
}

GreyImage TransferLUT::apply(const GreyImage& img) const {
  GreyImage out(img.width(), img.height());
  std::transform(img.pixels().begin(), img.pixels().end(), out.pixels().begin(),
                 [this](std::uint8_t v) { return table_[v]; });
  return out;
}

int otsu_threshold(const Histogram& hist) {
  using boost::multiprecision::int256_t;

  const auto nonzero = std::count_if(hist.counts.begin(), hist.counts.end(),
                                     [](std::uint64_t c) { return c > 0; });
  if (nonzero < 2) {
    throw DegenerateHistogram("Otsu's method needs at least two distinct grey values");
  }

  int256_t total = 0;
  int256_t total_sum = 0;
  for (int v = 0; v <= kMaxGrey; ++v) {
    total += hist[v];
    total_sum += int256_t(hist[v]) * v;
  }

  // With n0, s0 the count and grey sum of class 0, the between-class variance
  // equals (s0*N - S*n0)^2 / (n0 * n1 * N^2). Candidates are compared by
  // cross-multiplying numerator and n0*n1, dropping the common N^2.
  int best = -1;
  int256_t best_num = 0;
  int256_t best_den = 1;
  int256_t n0 = 0;
  int256_t s0 = 0;
  for (int t = 0; t < kMaxGrey; ++t) {
    n0 += hist[t];
    s0 += int256_t(hist[t]) * t;
    const int256_t n1 = total - n0;
    if (n0 == 0 || n1 == 0) continue;
    const int256_t d = s0 * total - total_sum * n0;
    const int256_t num = d * d;
    const int256_t den = n0 * n1;
    if (best < 0 || num * best_den > best_num * den) {
      best = t;
      best_num = num;
      best_den = den;
    }
  }
  return best;
}

GreyImage hard_threshold(const GreyImage& img, int threshold) {
  check_threshold(threshold);
  GreyImage out(img.width(), img.height());
  std::transform(img.pixels().begin(), img.pixels().end(), out.pixels().begin(),
                 [threshold](int v) { return static_cast<std::uint8_t>(v <= threshold ? 0 : kMaxGrey); });
  return out;
}

double transfer_value(const TransferSpec& spec, double v) {
  const double z = v - spec.threshold();
  const double band = spec.band();
  switch (spec.distribution()) {
    case Distribution::Uniform:
      if (z <= -band / 2) return 0.0;
      if (z >= band / 2) return kMaxGrey;
      return kMaxGrey * (z / band + 0.5);
    case Distribution::Logistic:
      return kMaxGrey / (1.0 + std::exp(-z / band));
    case Distribution::Normal:
      return kMaxGrey / 2.0 * (1.0 + error_function(z / (band * std::numbers::sqrt2)));
  }
  return 0.0;
}

TransferLUT build_lut(const TransferSpec& spec) {
  std::array<std::uint8_t, kMaxGrey + 1> table{};
  for (int v = 0; v <= kMaxGrey; ++v) {
    const double g = std::round(transfer_value(spec, v));
    table[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(std::clamp(g, 0.0, 255.0));
  }
  return TransferLUT(table);
}

double mean_white(const Histogram& hist, int threshold) {
  check_threshold(threshold);
  std::uint64_t count = 0;
  std::uint64_t sum = 0;
  for (int v = threshold + 1; v <= kMaxGrey; ++v) {
    count += hist[v];
    sum += hist[v] * static_cast<std::uint64_t>(v);
  }
  if (count == 0) {
    throw NoWhiteClass("no pixel above threshold " + std::to_string(threshold));
  }
  return static_cast<double>(sum) / static_cast<double>(count);
}

double band_from_alpha(Distribution dist, int threshold, double white_mean, const AutoParams& params) {
  check_threshold(threshold);
  const double spread = white_mean - threshold;
  if (!(spread > 0.0) || !std::isfinite(spread)) {
    throw InvalidWhiteMean("white mean must exceed the threshold");
  }
  const double alpha = params.alpha();
  switch (dist) {
    case Distribution::Uniform:
      return spread / (alpha - 0.5);
    case Distribution::Logistic:
      return -spread / std::log(-1.0 + 1.0 / alpha);
    case Distribution::Normal:
      return spread / params.z_alpha();
  }
  return 0.0;
}

EquivalentBands band_convert(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("sigma must be positive and finite");
  }
  return {sigma * std::sqrt(12.0), sigma * std::numbers::sqrt3 / std::numbers::pi};
}

SoftResult soft_threshold_detailed(const GreyImage& img, const SoftOptions& options) {
  const Histogram hist = histogram(img);
  const int t = options.threshold ? *options.threshold : otsu_threshold(hist);
  check_threshold(t);

  std::optional<double> white;
  try {
    white = mean_white(hist, t);
  } catch (const NoWhiteClass&) {
  }

  std::optional<TransferSpec> spec;
  if (options.band) {
    spec.emplace(options.dist, t, *options.band);
  } else if (white) {
    spec.emplace(options.dist, t, band_from_alpha(options.dist, t, *white, options.params));
  }

  if (!spec) {
    return SoftResult{hard_threshold(img, t), t, white, std::nullopt, true};
  }
  return SoftResult{build_lut(*spec).apply(img), t, white, spec, false};
}

GreyImage soft_threshold(const GreyImage& img, std::optional<int> threshold, Distribution dist,
                         const AutoParams& params) {
  SoftOptions options;
  options.dist = dist;
  options.threshold = threshold;
  options.params = params;
  return soft_threshold_detailed(img, options).image;
}

}  // namespace softthresh
