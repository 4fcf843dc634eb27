#include "softthresh/filters.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

namespace softthresh {

WindowSpec::WindowSpec(int k) : k_(k) {
  if (k < 1 || k % 2 == 0) {
    throw InvalidWindow("window size must be odd and >= 1, got " + std::to_string(k));
  }
}

namespace {

struct Max {
  static constexpr std::uint8_t identity = 0;
  std::uint8_t operator()(std::uint8_t a, std::uint8_t b) const { return a < b ? b : a; }
};

struct Min {
  static constexpr std::uint8_t identity = kMaxGrey;
  std::uint8_t operator()(std::uint8_t a, std::uint8_t b) const { return b < a ? b : a; }
};

template <class Op>
GreyImage naive_filter(const GreyImage& img, WindowSpec window, Op op) {
  const int r = window.radius();
  GreyImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    const int y0 = std::max(0, y - r);
    const int y1 = std::min(img.height() - 1, y + r);
    for (int x = 0; x < img.width(); ++x) {
      const int x0 = std::max(0, x - r);
      const int x1 = std::min(img.width() - 1, x + r);
      std::uint8_t acc = Op::identity;
      for (int yy = y0; yy <= y1; ++yy) {
        for (int xx = x0; xx <= x1; ++xx) acc = op(acc, img(xx, yy));
      }
      out(x, y) = acc;
    }
  }
  return out;
}

// One-dimensional running filter over a row padded by r identity elements
// on both sides (padding with the identity is the same as clamping the
// window). The padded row is cut into blocks of length k; within each block
// `prefix` holds running values from the block start and `suffix` running
// values to the block end. Any window of length k spans at most two blocks,
// so its result is op(suffix[i], prefix[i + k - 1]).
template <class Op>
class RunningFilter {
 public:
  RunningFilter(int length, WindowSpec window)
      : n_(length),
        k_(window.size()),
        r_(window.radius()),
        padded_(static_cast<std::size_t>(length + 2 * r_), Op::identity),
        prefix_(padded_.size()),
        suffix_(padded_.size()) {}

  void apply(std::span<const std::uint8_t> in, std::span<std::uint8_t> out) {
    Op op;
    std::copy(in.begin(), in.end(), padded_.begin() + r_);
    const std::size_t m = padded_.size();
    const std::size_t k = static_cast<std::size_t>(k_);

    for (std::size_t j = 0; j < m; ++j) {
      prefix_[j] = (j % k == 0) ? padded_[j] : op(prefix_[j - 1], padded_[j]);
    }
    for (std::size_t j = m; j-- > 0;) {
      const bool block_end = (j % k == k - 1) || (j == m - 1);
      suffix_[j] = block_end ? padded_[j] : op(suffix_[j + 1], padded_[j]);
    }
    for (int i = 0; i < n_; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      out[ui] = op(suffix_[ui], prefix_[ui + k - 1]);
    }
  }

 private:
  int n_;
  int k_;
  int r_;
  std::vector<std::uint8_t> padded_;
  std::vector<std::uint8_t> prefix_;
  std::vector<std::uint8_t> suffix_;
};

GreyImage transpose(const GreyImage& img) {
  GreyImage out(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out(y, x) = img(x, y);
  }
  return out;
}

template <class Op>
GreyImage filter_rows(const GreyImage& img, WindowSpec window) {
  GreyImage out(img.width(), img.height());
  RunningFilter<Op> pass(img.width(), window);
  for (int y = 0; y < img.height(); ++y) pass.apply(img.row(y), out.row(y));
  return out;
}

// max over a k x k window is the row-wise max followed by the column-wise max.
template <class Op>
GreyImage fast_filter(const GreyImage& img, WindowSpec window) {
  if (window.size() == 1) return img;
  const GreyImage rows = filter_rows<Op>(img, window);
  const GreyImage cols = filter_rows<Op>(transpose(rows), window);
  return transpose(cols);
}

}  // namespace

GreyImage max_filter_naive(const GreyImage& img, WindowSpec window) {
  return naive_filter(img, window, Max{});
}

GreyImage min_filter_naive(const GreyImage& img, WindowSpec window) {
  return naive_filter(img, window, Min{});
}

GreyImage max_filter_fast(const GreyImage& img, WindowSpec window) {
  return fast_filter<Max>(img, window);
}

GreyImage min_filter_fast(const GreyImage& img, WindowSpec window) {
  return fast_filter<Min>(img, window);
}

}  // namespace softthresh
