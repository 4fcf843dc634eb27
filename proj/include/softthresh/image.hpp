#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace softthresh {

/// Highest grey value of an 8-bit image (white).
inline constexpr int kMaxGrey = 255;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

enum class PgmErrorKind {
  BadMagic,          // not "P5" or "P2"
  BadHeader,         // missing or non-numeric width/height/maxval
  ZeroDimension,     // width or height is zero
  UnsupportedMaxval, // maxval is 0 or above 255
  Truncated,         // fewer samples than width*height
  BadSample,         // sample above maxval or not a number
};

class PgmError : public Error {
 public:
  PgmError(PgmErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  PgmErrorKind kind() const noexcept { return kind_; }

 private:
  PgmErrorKind kind_;
};

/// Row-major 8-bit greyscale image; 0 is black, 255 is white.
class GreyImage {
 public:
  GreyImage(int width, int height, std::uint8_t fill = 0);
  GreyImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::uint8_t operator()(int x, int y) const { return data_[index(x, y)]; }
  std::uint8_t& operator()(int x, int y) { return data_[index(x, y)]; }

  std::span<const std::uint8_t> pixels() const noexcept { return data_; }
  std::span<std::uint8_t> pixels() noexcept { return data_; }
  std::span<const std::uint8_t> row(int y) const {
    return std::span<const std::uint8_t>(data_).subspan(index(0, y), width_);
  }
  std::span<std::uint8_t> row(int y) {
    return std::span<std::uint8_t>(data_).subspan(index(0, y), width_);
  }

  bool same_shape(const GreyImage& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const GreyImage&, const GreyImage&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

/// Intermediate image of signed samples, e.g. the difference of two images
/// before it is brought back into the grey range.
class SignedImage {
 public:
  SignedImage(int width, int height, std::vector<int> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::span<const int> pixels() const noexcept { return data_; }

  friend bool operator==(const SignedImage&, const SignedImage&) = default;

 private:
  int width_;
  int height_;
  std::vector<int> data_;
};

/// Grey-level histogram: counts[v] is the number of pixels with value v.
struct Histogram {
  std::array<std::uint64_t, kMaxGrey + 1> counts{};

  std::uint64_t operator[](int v) const { return counts[static_cast<std::size_t>(v)]; }
  std::uint64_t total() const noexcept;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

// PGM (netpbm greyscale) codec. P5 is binary, P2 is plain ASCII.
GreyImage read_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_pgm(const GreyImage& img, bool ascii = false);

GreyImage load_pgm(const std::filesystem::path& path);
void save_pgm(const std::filesystem::path& path, const GreyImage& img, bool ascii = false);

Histogram histogram(const GreyImage& img);

/// Pixelwise a - b, unclamped.
SignedImage subtract(const GreyImage& a, const GreyImage& b);

/// clamp(offset + d, 0, 255) for every sample d.
GreyImage clamp_to_grey(const SignedImage& diff, int offset);

/// clamp(offset + a - b, 0, 255).
GreyImage subtract_clamped(const GreyImage& a, const GreyImage& b, int offset);

}  // namespace softthresh
